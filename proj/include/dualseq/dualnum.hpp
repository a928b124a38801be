#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "dualseq/matrix.hpp"
#include "dualseq/seq.hpp"

namespace dualseq {

/// A k[eps]-linear map between free modules, written one + eps * eps.
struct EpsMap {
  Matrix one;
  Matrix eps;

  static EpsMap zero(const Field& f, std::size_t rows, std::size_t cols);
  static EpsMap identity(const Field& f, std::size_t n);

  std::size_t rows() const { return one.rows(); }
  std::size_t cols() const { return one.cols(); }
  bool is_zero() const { return one.is_zero() && eps.is_zero(); }

  friend EpsMap operator+(const EpsMap& a, const EpsMap& b) { return {a.one + b.one, a.eps + b.eps}; }
  friend EpsMap operator-(const EpsMap& a, const EpsMap& b) { return {a.one - b.one, a.eps - b.eps}; }
  friend bool operator==(const EpsMap& a, const EpsMap& b) = default;
};

/// (g f)_1 = g_1 f_1, (g f)_eps = g_1 f_eps + g_eps f_1.
EpsMap compose(const EpsMap& g, const EpsMap& f);

/// Bounded complex of free k[eps]-modules M^i = V^i (x) k[eps] with
/// d^i = d1^i + eps * deps^i. An Iso tail continues the boundary rank with
/// d1 = 0 and deps^i = (-1)^i I; a Zero tail is 0.
class EpsComplex {
 public:
  explicit EpsComplex(const Field& field);
  /// d1[k], deps[k] are the maps out of degree lo + k. Throws ShapeMismatch.
  EpsComplex(const Field& field, int lo, std::vector<std::size_t> ranks, std::vector<Matrix> d1,
             std::vector<Matrix> deps, Tail left = Tail::Zero, Tail right = Tail::Zero);

  const Field& field() const { return field_; }
  int lo() const { return lo_; }
  int hi() const { return hi_; }
  Tail left() const { return left_; }
  Tail right() const { return right_; }

  std::size_t rank(int i) const;
  Matrix d1(int i) const;
  Matrix deps(int i) const;
  EpsMap d(int i) const { return {d1(i), deps(i)}; }

  bool is_minimal() const;
  std::string to_string() const;

  /// Equal in every degree, tails included.
  friend bool operator==(const EpsComplex& a, const EpsComplex& b);

 private:
  Field field_;
  int lo_ = 0;
  int hi_ = 0;
  std::vector<std::size_t> ranks_;
  std::vector<Matrix> d1_;
  std::vector<Matrix> deps_;
  Tail left_ = Tail::Zero;
  Tail right_ = Tail::Zero;
};

struct ValidationReport {
  bool ok = true;
  int degree = 0;
  std::string message;
};

/// Checks d1 d1 = 0 and d1 deps + deps d1 = 0 in every degree; reports the
/// first failing degree.
ValidationReport validate(const EpsComplex& c);

/// Maps f: M -> N, g: N -> M and k^i: M^i -> M^{i-1}, given on [lo, hi];
/// outside, f and g are the identity on Iso tails and k is zero.
struct HomotopyEquivalence {
  int lo = 0;
  int hi = 0;
  std::vector<EpsMap> f;
  std::vector<EpsMap> g;
  std::vector<EpsMap> k;

  EpsMap f_at(const EpsComplex& m, const EpsComplex& n, int i) const;
  EpsMap g_at(const EpsComplex& m, const EpsComplex& n, int i) const;
  EpsMap k_at(const EpsComplex& m, int i) const;
};

/// f and g are chain maps, f g = id_N and g f - id_M = d k + k d.
bool verify(const EpsComplex& m, const EpsComplex& n, const HomotopyEquivalence& he);

struct MinimalModel {
  EpsComplex complex;
  HomotopyEquivalence equivalence;
};

/// Splits V^i = B^i + H^i + B^{i+1} and keeps the H-blocks of deps. Throws
/// ValidationError when validate(c) fails.
MinimalModel minimize(const EpsComplex& c);

/// Minimal complex -> sequence with d_V = deps. Throws ValidationError if c
/// is not minimal.
Seq to_seq(const EpsComplex& c);
EpsComplex from_seq(const Seq& v);

/// Nonzero dims of H^i(M) as k-spaces.
std::map<int, std::size_t> cohomology(const EpsComplex& c);
/// dim ker d^i + dim cok d^{i-1}, nonzero degrees only.
std::map<int, std::size_t> cohomology(const Seq& v);

/// "H^0: 1, H^1: 1", or "0" when all vanish.
std::string cohomology_to_string(const std::map<int, std::size_t>& h);

}  // namespace dualseq
