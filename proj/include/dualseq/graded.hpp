#pragma once

#include <functional>
#include <string>
#include <vector>

#include "dualseq/seq.hpp"

namespace dualseq {

/// Components outside the window, chosen by the parity of the degree.
struct TailPattern {
  Matrix even;
  Matrix odd;
  const Matrix& at(int i) const { return (i % 2 == 0) ? even : odd; }
};

/// An element of Hom^n(V, W) = prod_i Hom(V^i, W^{n+i}) with components
/// explicit on [lo, hi] and period-2 patterns beyond.
///
/// The window always covers both sequences' windows, so tail components have
/// constant shape.
class GradedHomElement {
 public:
  GradedHomElement() = default;
  /// Zero element with the minimal admissible window.
  GradedHomElement(Seq source, Seq target, int degree);
  /// components[k] is f^{lo+k}. Throws ShapeMismatch when shapes disagree or
  /// the window does not cover the admissible range.
  GradedHomElement(Seq source, Seq target, int degree, int lo, std::vector<Matrix> components,
                   TailPattern left, TailPattern right);

  /// Element with f^i = fn(i) on [lo, hi], tails read off by evaluating fn at
  /// degrees far outside the window. The window is widened to the admissible
  /// range when needed.
  static GradedHomElement from_function(const Seq& source, const Seq& target, int degree, int lo, int hi,
                                        const std::function<Matrix(int)>& fn);
  /// Element supported on [lo, hi] with zero tails.
  static GradedHomElement supported(const Seq& source, const Seq& target, int degree, int lo,
                                    std::vector<Matrix> components);
  static GradedHomElement identity(const Seq& v);

  const Seq& source() const { return source_; }
  const Seq& target() const { return target_; }
  int degree() const { return degree_; }
  int lo() const { return lo_; }
  int hi() const { return hi_; }
  const Field& field() const { return source_.field(); }

  /// f^i for any i.
  Matrix at(int i) const;

  bool is_zero() const;
  /// Zero outside [lo, hi].
  bool has_zero_tails() const;

  GradedHomElement operator+(const GradedHomElement& o) const;
  GradedHomElement operator-(const GradedHomElement& o) const;
  GradedHomElement operator-() const;
  GradedHomElement scaled(const Scalar& c) const;
  GradedHomElement scaled(long long c) const;

  /// Same element with window widened to [lo, hi] (must contain the current one).
  GradedHomElement widened(int lo, int hi) const;

  std::string to_string() const;

  friend bool operator==(const GradedHomElement& a, const GradedHomElement& b);

 private:
  Seq source_;
  Seq target_;
  int degree_ = 0;
  int lo_ = 0;
  int hi_ = 0;
  std::vector<Matrix> comps_;
  TailPattern left_;
  TailPattern right_;
};

/// Least lo and greatest hi an element of Hom^n(v, w) may use.
int admissible_lo(const Seq& v, const Seq& w, int n);
int admissible_hi(const Seq& v, const Seq& w, int n);

/// (g f)^i = g^{m+i} f^i for f of degree m and g of degree n.
GradedHomElement compose(const GradedHomElement& g, const GradedHomElement& f);

/// d^n(f)^i = d_W^{n+i} f^i - (-1)^n f^{i+1} d_V^i.
GradedHomElement differential(const GradedHomElement& f);

}  // namespace dualseq
