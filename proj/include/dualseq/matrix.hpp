#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <variant>
#include <vector>

#include <gmpxx.h>

#include "dualseq/field.hpp"

namespace dualseq {

/// Dense row-major matrix over a Field. Shapes with zero rows or columns are
/// valid and represent maps to or from the zero space.
class Matrix {
 public:
  Matrix() : Matrix(Field{}, 0, 0) {}
  Matrix(const Field& field, std::size_t rows, std::size_t cols);

  static Matrix zero(const Field& field, std::size_t rows, std::size_t cols) {
    return Matrix(field, rows, cols);
  }
  static Matrix identity(const Field& field, std::size_t n);
  /// Row-major integer entries, reduced into the field.
  static Matrix from_ints(const Field& field, std::size_t rows, std::size_t cols,
                          const std::vector<long long>& entries);
  /// Nested rows; every row must have the same length. `cols` disambiguates
  /// the shape when there are no rows.
  static Matrix from_rows(const Field& field, std::initializer_list<std::initializer_list<long long>> rows,
                          std::size_t cols = 0);

  const Field& field() const { return field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  Scalar at(std::size_t r, std::size_t c) const;
  void set(std::size_t r, std::size_t c, const Scalar& value);
  void set(std::size_t r, std::size_t c, long long value);

  bool is_zero() const;
  bool is_identity() const;

  Matrix operator+(const Matrix& other) const;
  Matrix operator-(const Matrix& other) const;
  Matrix operator-() const;
  Matrix operator*(const Matrix& other) const;
  Matrix& operator+=(const Matrix& other);
  Matrix& operator-=(const Matrix& other);
  Matrix scaled(long long factor) const;
  Matrix scaled(const Scalar& factor) const;

  Matrix transpose() const;
  Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
  void set_block(std::size_t r0, std::size_t c0, const Matrix& b);
  Matrix column(std::size_t c) const { return block(0, c, rows_, 1); }
  Matrix select_columns(const std::vector<std::size_t>& cols) const;
  Matrix select_rows(const std::vector<std::size_t>& rows) const;

  /// Column-vector view of a row-major flattening (rows*cols x 1).
  Matrix flattened() const;
  /// Inverse of flattened(): reshapes a rows*cols x 1 column.
  static Matrix unflatten(const Matrix& column, std::size_t rows, std::size_t cols);

  std::string to_string() const;

  friend bool operator==(const Matrix& a, const Matrix& b);

  // Raw storage for kernels (src/ only); the alternative matches field().
  using Storage = std::variant<std::vector<std::uint32_t>, std::vector<mpq_class>>;
  const Storage& storage() const { return data_; }
  Storage& storage() { return data_; }

 private:
  void check_same_shape(const Matrix& other, const char* op) const;

  Field field_;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  Storage data_;
};

Matrix hstack(const Matrix& a, const Matrix& b);
Matrix vstack(const Matrix& a, const Matrix& b);
Matrix block_diag(const Matrix& a, const Matrix& b);
/// Kronecker product; vec(A X B) = kron(A, B^T) vec(X) for row-major vec.
Matrix kron(const Matrix& a, const Matrix& b);
/// [[a, b], [c, d]] with shapes checked.
Matrix block2x2(const Matrix& a, const Matrix& b, const Matrix& c, const Matrix& d);

}  // namespace dualseq
