#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "dualseq/matrix.hpp"

namespace dualseq {

/// Result of Gauss-Jordan elimination: transform * input == rref.
struct EchelonData {
  Matrix rref;
  std::size_t rank = 0;
  std::vector<std::size_t> pivots;  // pivot column of each nonzero rref row
  Matrix transform;                 // invertible, rows x rows

  /// Replays the recorded row operations on a matrix with the same row count.
  Matrix apply(const Matrix& m) const { return transform * m; }
};

/// Reduced row echelon form with an OpenMP-parallel elimination step for large
/// inputs. Output is identical to reduce_serial.
EchelonData reduce(const Matrix& m);
/// Single-threaded reference implementation.
EchelonData reduce_serial(const Matrix& m);

std::size_t rank(const Matrix& m);

struct Subspaces {
  Matrix kernel;      // cols x dim ker, columns span ker(m)
  Matrix image;       // rows x rank, columns span im(m)
  Matrix cokernel;    // (rows - rank) x rows, surjective with kernel im(m)
};

Subspaces subspaces(const Matrix& m);
/// Basis of ker(m) as columns; free variables get identity entries.
Matrix kernel(const Matrix& m);
/// Pivot columns of m: a basis of the column space.
Matrix image(const Matrix& m);

/// Columns completing span(sub) to a basis of the ambient space; they are
/// standard basis vectors at the non-pivot positions of the row space of sub^T.
Matrix complement(const Matrix& sub, std::size_t ambient_dim);

/// Some X with a * X == b, or nullopt.
std::optional<Matrix> solve(const Matrix& a, const Matrix& b);
/// Throws ValidationError if m is not invertible.
Matrix inverse(const Matrix& m);

/// Canonical reduction of vectors modulo a fixed subspace. The echelon basis
/// of the subspace is in reduced form, so reduce(v) is the unique
/// representative of v + span with zeros at every pivot coordinate.
class SubspaceReducer {
 public:
  SubspaceReducer() = default;
  /// Columns of `spanning` span the subspace.
  explicit SubspaceReducer(const Matrix& spanning);

  std::size_t ambient_dim() const { return ambient_; }
  std::size_t dim() const { return pivots_.size(); }
  const std::vector<std::size_t>& pivots() const { return pivots_; }
  /// Coordinates that survive in reduced vectors, in increasing order.
  const std::vector<std::size_t>& free_coordinates() const { return free_; }
  /// Echelon basis as rows (dim x ambient).
  const Matrix& basis_rows() const { return basis_; }

  Matrix reduce(const Matrix& v) const;
  bool contains(const Matrix& v) const { return reduce(v).is_zero(); }
  /// Entries of reduce(v) at the free coordinates: coordinates of the coset of
  /// v in the quotient.
  Matrix quotient_coordinates(const Matrix& v) const;
  /// The quotient projection as a matrix ((ambient - dim) x ambient).
  Matrix quotient_map() const;

 private:
  std::size_t ambient_ = 0;
  Matrix basis_;
  std::vector<std::size_t> pivots_;
  std::vector<std::size_t> free_;
};

}  // namespace dualseq
