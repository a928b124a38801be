#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "dualseq/graded.hpp"
#include "dualseq/linalg.hpp"
#include "dualseq/seq.hpp"

namespace dualseq {

/// Dimensions of the cycle and quotient spaces at consecutive window margins.
struct StabilizationCertificate {
  int depth = 0;
  /// First margin from which three consecutive margins agree.
  int margin = 0;
  /// (dim cycles, dim quotient) for margins 0, 1, ..., margin + 2.
  std::vector<std::pair<std::size_t, std::size_t>> dims;
};

struct HomOptions {
  /// Largest margin that may be examined; defaults to default_depth().
  std::optional<int> depth;
  bool certify = true;
};

/// 3 * (window span) + |n| + 4.
int default_depth(const Seq& v, const Seq& w, int degree);

/// Finite model of degree n of the graded Hom complex Hom^*(V, W):
/// cycles Z^n = ker d^n and the quotient Hom^n / im d^{n-1}.
/// Degree 0 gives Hom_S (cycles) and Hom^eps (quotient).
class HomSpace {
 public:
  /// Builds the model on the window widened by `margin` without certification.
  HomSpace(const Seq& v, const Seq& w, int degree, int margin = kCanonicalMargin);

  static constexpr int kCanonicalMargin = 1;

  const Seq& source() const { return v_; }
  const Seq& target() const { return w_; }
  int degree() const { return n_; }
  /// Window [lo, hi] on which coordinates live.
  int lo() const { return lo_; }
  int hi() const { return hi_; }
  /// Number of scalar coordinates of Hom^n on the window.
  std::size_t coordinate_dim() const { return offsets_.back(); }

  const std::vector<GradedHomElement>& cycles() const { return cycles_; }
  /// Canonical representatives of a basis of the quotient.
  const std::vector<GradedHomElement>& quotient_basis() const { return quotient_; }
  std::size_t cycles_dim() const { return cycles_.size(); }
  std::size_t quotient_dim() const { return quotient_.size(); }

  /// d^n from window coordinates of Hom^n to those of Hom^{n+1} on [lo, hi-1].
  const Matrix& differential_matrix() const { return d_; }
  /// d^{n-1} from Hom^{n-1} on [lo, hi+1] to Hom^n on [lo, hi].
  const Matrix& boundary_matrix() const { return boundary_; }

  /// Stacked components of g on the window.
  Matrix coordinates(const GradedHomElement& g) const;
  /// Element supported on the window with the given coordinates.
  GradedHomElement element(const Matrix& coords) const;

  /// Unique representative of g + im d^{n-1} supported on the window.
  GradedHomElement canonical(const GradedHomElement& g) const;
  /// Coordinates of the class of g against quotient_basis().
  Matrix quotient_coordinates(const GradedHomElement& g) const;
  GradedHomElement from_quotient_coordinates(const Matrix& c) const;
  bool in_boundaries(const GradedHomElement& g) const;

  bool is_cycle(const GradedHomElement& g) const;
  /// Coordinates of a cycle against cycles(); throws ValidationError otherwise.
  Matrix cycle_coordinates(const GradedHomElement& g) const;

  const std::optional<StabilizationCertificate>& certificate() const { return certificate_; }

 private:
  friend HomSpace hom_complex(const Seq&, const Seq&, int, const HomOptions&);

  void check_element(const GradedHomElement& g) const;

  Seq v_;
  Seq w_;
  int n_ = 0;
  int lo_ = 0;
  int hi_ = 0;
  std::vector<std::size_t> offsets_;
  Matrix d_;
  Matrix boundary_;
  Matrix cycle_basis_;
  SubspaceReducer reducer_;
  std::vector<GradedHomElement> cycles_;
  std::vector<GradedHomElement> quotient_;
  std::optional<StabilizationCertificate> certificate_;
};

/// Window dimensions (dim cycles, dim quotient) at a given margin.
std::pair<std::size_t, std::size_t> hom_dims_at_margin(const Seq& v, const Seq& w, int degree, int margin);

/// Certified model of Hom^*(V, W) in degree n. Throws StabilizationDepthExceeded
/// when the dimensions have not settled by the configured depth.
HomSpace hom_complex(const Seq& v, const Seq& w, int degree = 0, const HomOptions& options = {});

/// Some h in Hom^{n-1}(V, W) with d(h) = g, tails included, or nullopt when
/// g is not a boundary. g must have degree n.
std::optional<GradedHomElement> solve_differential(const GradedHomElement& g);

/// A morphism of the enlarged category: a sequence morphism f1 plus a class
/// [feps] in Hom^eps, stored as its canonical representative.
class HatMorphism {
 public:
  HatMorphism() = default;
  /// Throws ValidationError unless one is a degree-0 cycle; eps is reduced.
  HatMorphism(GradedHomElement one, GradedHomElement eps);

  static HatMorphism type_one(GradedHomElement one);
  static HatMorphism type_eps(GradedHomElement eps);
  static HatMorphism zero(const Seq& v, const Seq& w);
  static HatMorphism identity(const Seq& v);
  /// [id] as a type-eps endomorphism.
  static HatMorphism eps_identity(const Seq& v);

  const Seq& source() const { return one_.source(); }
  const Seq& target() const { return one_.target(); }
  const GradedHomElement& one() const { return one_; }
  const GradedHomElement& eps() const { return eps_; }

  bool is_zero() const { return one_.is_zero() && eps_.is_zero(); }
  bool is_type_eps() const { return one_.is_zero(); }

  HatMorphism operator+(const HatMorphism& o) const;
  HatMorphism operator-(const HatMorphism& o) const;
  HatMorphism scaled(const Scalar& c) const;
  HatMorphism scaled(long long c) const;

  friend bool operator==(const HatMorphism& a, const HatMorphism& b);

 private:
  HatMorphism(GradedHomElement one, GradedHomElement eps, bool reduced);

  GradedHomElement one_;
  GradedHomElement eps_;
};

/// g o f = g1 f1 + [g1 feps + geps f1].
HatMorphism compose_hat(const HatMorphism& g, const HatMorphism& f);

/// Hom space of degree 0 used for canonical reduction in the enlarged category.
HomSpace eps_space(const Seq& v, const Seq& w);

/// V (+) W with the inclusions and projections (all of type 1).
struct Biproduct {
  Seq sum;
  HatMorphism in1, in2, pr1, pr2;
};
Biproduct biproduct(const Seq& v, const Seq& w);

}  // namespace dualseq
