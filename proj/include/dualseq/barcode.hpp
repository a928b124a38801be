#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <string>

#include "dualseq/graded.hpp"
#include "dualseq/hom.hpp"
#include "dualseq/seq.hpp"

namespace dualseq {

/// [a, b] with a possibly kNegInf and b possibly kPosInf.
struct Interval {
  int a = 0;
  int b = 0;

  Interval() = default;
  /// Throws ValidationError unless a <= b with a != +inf and b != -inf.
  Interval(int a, int b);

  bool contains(int i) const { return a <= i && i <= b; }
  std::string to_string() const;
  auto operator<=>(const Interval&) const = default;
};

/// "-inf", "inf" or the integer.
std::string endpoint_to_string(int e);

struct Barcode {
  std::map<Interval, std::size_t> bars;
  /// Type-1 isomorphism assemble(bars) -> V, when produced by decompose.
  std::optional<GradedHomElement> certificate;

  std::size_t total() const;
  std::string to_string() const;
  /// Multisets only; certificates are ignored.
  friend bool operator==(const Barcode& x, const Barcode& y) { return x.bars == y.bars; }
};

/// Rank of d^{a,b}: V^a -> V^b; infinite endpoints are read at tail degrees.
std::size_t rank_pairing(const Seq& v, int a, int b);

/// m_{a,b} = r(a,b) - r(a-1,b) - r(a,b+1) + r(a-1,b+1), dropping terms that
/// involve an infinite endpoint shifted past itself.
std::size_t multiplicity(const Seq& v, const Interval& j);

/// All multiplicities computed by rank inclusion-exclusion.
Barcode barcode_by_ranks(const Seq& v);

/// Interval decomposition with an explicit certificate.
Barcode decompose(const Seq& v);

/// Direct sum of the S_{a,b}, in increasing interval order.
Seq assemble(const Field& field, const std::map<Interval, std::size_t>& bars);

/// Checks that g is a degreewise invertible sequence morphism.
bool is_isomorphism(const GradedHomElement& g);

enum class BoundedClass { sb, b, plus, minus, unbounded };
const char* to_string(BoundedClass c);

struct Classification {
  bool injective = false;
  bool acyclic = false;
  bool h_projective = false;
  BoundedClass bounded_class = BoundedClass::unbounded;
  bool finitely_generated_degreewise = true;
  bool indecomposable = false;
  /// h-projective with V^i = 0 for i << 0.
  bool compact = false;
};

Classification classify(const Seq& v);

struct Subobject {
  Seq object;
  HatMorphism inclusion;
};

/// Images of the bi-infinite compatible families: the largest injective
/// subobject.
Subobject max_injective_subobject(const Seq& v);

}  // namespace dualseq
