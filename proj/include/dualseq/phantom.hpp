#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dualseq/graded.hpp"
#include "dualseq/hom.hpp"
#include "dualseq/seq.hpp"

namespace dualseq {

/// Dimension of the phantom candidate space after each truncation level.
struct PhantomCertificate {
  int depth = 0;
  /// Levels n examined, highest first, with the dimension after imposing n.
  std::vector<std::pair<int, std::size_t>> dims;
  /// Lowest level examined; three consecutive levels ending here agree.
  int stable_level = 0;
};

struct PhantomBasis {
  std::size_t eps_dim = 0;
  /// Canonical representatives of a basis of the phantom subspace of Hom^eps.
  std::vector<GradedHomElement> basis;
  PhantomCertificate certificate;
};

/// Span of both windows plus 4.
int default_phantom_depth(const Seq& v, const Seq& w);

/// f o beta_{V,n} = 0 in the enlarged category.
bool vanishes_on_truncation(const HatMorphism& f, int n);

/// Subspace of Hom^eps(v, w) killed by every beta_{V,n}. Levels run from
/// v.hi() downwards until three consecutive levels below both windows agree.
/// Throws StabilizationDepthExceeded when that needs more than `depth` levels
/// below min(v.lo(), w.lo()) - 1.
PhantomBasis phantom_basis(const Seq& v, const Seq& w, int depth);

struct PhantomVerdict {
  bool phantom = false;
  std::string reason;
  std::optional<PhantomCertificate> certificate;
};

/// Throws ValidationError unless source and target are h-projective.
PhantomVerdict is_phantom(const HatMorphism& f, int depth);

struct ScanEntry {
  std::size_t source = 0;
  std::size_t target = 0;
  std::size_t eps_dim = 0;
  std::size_t phantom_dim = 0;
  int stable_level = 0;
  std::string error;

  friend bool operator==(const ScanEntry&, const ScanEntry&) = default;
};

/// phantom_basis over all ordered pairs, in row-major pair order. Errors are
/// recorded per entry.
std::vector<ScanEntry> phantom_scan(const std::vector<Seq>& objects, int depth);
std::vector<ScanEntry> phantom_scan_serial(const std::vector<Seq>& objects, int depth);

/// Objects, named generators and relations between paths. A path lists
/// generator names in composition order: {"g", "f"} is g o f.
struct Diagram {
  struct Generator {
    std::string source;
    std::string target;
    HatMorphism morphism;
  };
  struct Relation {
    std::vector<std::string> lhs;
    std::vector<std::string> rhs;
  };

  std::map<std::string, Seq> objects;
  std::map<std::string, Generator> generators;
  std::vector<Relation> relations;
};

/// Throws ValidationError on unknown names, mismatched shapes, broken paths
/// or a relation that does not hold under compose_hat.
void validate(const Diagram& d);

/// Composite of a path.
HatMorphism evaluate(const Diagram& d, const std::vector<std::string>& path);

/// Generator name -> degree-0 element source -> target. Missing entries are 0.
using Derivation = std::map<std::string, GradedHomElement>;

/// D(path) = sum_k p_m ... D(p_k) ... p_1, a type-eps morphism.
HatMorphism apply_derivation(const Diagram& d, const Derivation& der, const std::vector<std::string>& path);

struct DerivationCheck {
  bool ok = true;
  /// Index into relations, or relations.size() + k for the k-th identity
  /// generator (whose implicit relation is id o id = id).
  std::size_t relation = 0;
  std::string message;
};

/// D(lhs) = D(rhs) on every relation, plus id o id = id for identity generators.
DerivationCheck check_derivation(const Diagram& d, const Derivation& der);

/// Object name -> theta in Hom^eps(V, V).
using InnerData = std::map<std::string, GradedHomElement>;

/// D(f) = f theta_V - theta_W f.
Derivation inner_derivation(const Diagram& d, const InnerData& theta);

/// theta with inner_derivation(d, theta) = der in Hom^eps, canonical
/// representatives, or nullopt. Throws ValidationError if der fails
/// check_derivation.
std::optional<InnerData> solve_inner(const Diagram& d, const Derivation& der);

/// Equal classes in Hom^eps on every generator.
bool same_derivation(const Diagram& d, const Derivation& a, const Derivation& b);

}  // namespace dualseq
