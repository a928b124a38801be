#pragma once

#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "dualseq/matrix.hpp"

namespace dualseq {

inline constexpr int kNegInf = std::numeric_limits<int>::min();
inline constexpr int kPosInf = std::numeric_limits<int>::max();

/// Behaviour of a sequence beyond its window. Iso: the boundary dimension
/// repeats forever and d^i = (-1)^i * I there.
enum class Tail { Zero, Iso };

const char* to_string(Tail t);

/// Explicit dims and maps of a sequence on a finite range [lo, hi].
struct Window {
  int lo = 0;
  int hi = 0;
  std::vector<std::size_t> dims;
  std::vector<Matrix> maps;  // maps[k] = d^{lo+k}, k < hi - lo
};

/// A Z-indexed sequence of finite-dimensional spaces V^i with maps
/// d^i: V^i -> V^{i+1}, given by a finite window plus tails.
class Seq {
 public:
  /// The zero object over F_2.
  Seq() : Seq(Field{}) {}
  /// The zero object.
  explicit Seq(const Field& field);
  /// maps[k] is d^{lo+k}. Throws ShapeMismatch on inconsistent data. The
  /// window is trimmed to its canonical extent, and an Iso tail over a
  /// zero-dimensional boundary is stored as Zero.
  Seq(const Field& field, int lo, std::vector<std::size_t> dims, std::vector<Matrix> maps,
      Tail left = Tail::Zero, Tail right = Tail::Zero);

  /// S_{a,b}; a may be kNegInf and b may be kPosInf.
  static Seq interval(const Field& field, int a, int b);

  const Field& field() const { return field_; }
  int lo() const { return lo_; }
  int hi() const { return hi_; }
  const std::vector<std::size_t>& window_dims() const { return dims_; }
  const std::vector<Matrix>& window_maps() const { return maps_; }
  Tail left() const { return left_; }
  Tail right() const { return right_; }

  /// Dimension of V^i for any i.
  std::size_t dim(int i) const;
  /// d^i for any i.
  Matrix map(int i) const;
  /// d^{i,j} = d^{j-1} ... d^i : V^i -> V^j (identity when i == j).
  Matrix composite(int i, int j) const;

  /// Stable dimension of the tail, 0 for Zero tails.
  std::size_t left_dim() const { return left_ == Tail::Iso ? dims_.front() : 0; }
  std::size_t right_dim() const { return right_ == Tail::Iso ? dims_.back() : 0; }

  bool is_zero() const;
  std::string to_string() const;

  /// Equal as sequences: same V^i and d^i in every degree.
  friend bool operator==(const Seq& a, const Seq& b);

 private:
  void normalize();

  Field field_;
  int lo_ = 0;
  int hi_ = 0;
  std::vector<std::size_t> dims_;
  std::vector<Matrix> maps_;
  Tail left_ = Tail::Zero;
  Tail right_ = Tail::Zero;
};

/// (-1)^i * I_n.
Matrix signed_identity(const Field& field, std::size_t n, long long i);

Window materialize(const Seq& v, int lo, int hi);

/// V[n]: V[n]^i = V^{n+i}, d^i = (-1)^n d^{n+i}.
Seq shift(const Seq& v, int n);

Seq direct_sum(const Seq& v, const Seq& w);

/// Smallest window containing both windows.
int common_lo(const Seq& v, const Seq& w);
int common_hi(const Seq& v, const Seq& w);

}  // namespace dualseq
