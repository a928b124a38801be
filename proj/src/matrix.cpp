#include "dualseq/matrix.hpp"

#include <sstream>

#include "dualseq/errors.hpp"
#include "field_ops.hpp"
#include "storage.hpp"

namespace dualseq {

using detail::entries;
using detail::with_ops;

Matrix::Matrix(const Field& field, std::size_t rows, std::size_t cols)
    : field_(field), rows_(rows), cols_(cols) {
  if (field.is_rational())
    data_ = std::vector<mpq_class>(rows * cols);
  else
    data_ = std::vector<std::uint32_t>(rows * cols, 0);
}

Matrix Matrix::identity(const Field& field, std::size_t n) {
  Matrix m(field, n, n);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i, 1);
  return m;
}

Matrix Matrix::from_ints(const Field& field, std::size_t rows, std::size_t cols,
                         const std::vector<long long>& values) {
  if (values.size() != rows * cols)
    throw ShapeMismatch("from_ints: expected " + std::to_string(rows * cols) + " entries, got " +
                        std::to_string(values.size()));
  Matrix m(field, rows, cols);
  with_ops(field, [&](auto ops) {
    auto& e = entries(ops, m.data_);
    for (std::size_t i = 0; i < values.size(); ++i) e[i] = ops.from_int(values[i]);
  });
  return m;
}

Matrix Matrix::from_rows(const Field& field,
                         std::initializer_list<std::initializer_list<long long>> rows,
                         std::size_t cols) {
  std::size_t r = rows.size();
  std::size_t c = r == 0 ? cols : rows.begin()->size();
  std::vector<long long> flat;
  flat.reserve(r * c);
  for (const auto& row : rows) {
    if (row.size() != c) throw ShapeMismatch("from_rows: ragged rows");
    flat.insert(flat.end(), row.begin(), row.end());
  }
  return from_ints(field, r, c, flat);
}

Scalar Matrix::at(std::size_t r, std::size_t c) const {
  if (r >= rows_ || c >= cols_) throw std::out_of_range("Matrix::at");
  return with_ops(field_, [&](auto ops) { return ops.to_scalar(entries(ops, data_)[r * cols_ + c]); });
}

void Matrix::set(std::size_t r, std::size_t c, const Scalar& value) {
  if (r >= rows_ || c >= cols_) throw std::out_of_range("Matrix::set");
  if (value.is_residue() == field_.is_rational())
    throw std::invalid_argument("scalar does not belong to " + field_.name());
  with_ops(field_, [&](auto ops) { entries(ops, data_)[r * cols_ + c] = ops.from_scalar(value); });
}

void Matrix::set(std::size_t r, std::size_t c, long long value) {
  set(r, c, Scalar::from_int(field_, value));
}

bool Matrix::is_zero() const {
  return with_ops(field_, [&](auto ops) {
    for (const auto& x : entries(ops, data_))
      if (!ops.is_zero(x)) return false;
    return true;
  });
}

bool Matrix::is_identity() const {
  if (rows_ != cols_) return false;
  return *this == identity(field_, rows_);
}

void Matrix::check_same_shape(const Matrix& other, const char* op) const {
  if (!(field_ == other.field_)) throw ShapeMismatch(std::string(op) + ": field mismatch");
  if (rows_ != other.rows_ || cols_ != other.cols_)
    throw ShapeMismatch(std::string(op) + ": shape " + std::to_string(rows_) + "x" + std::to_string(cols_) +
                        " vs " + std::to_string(other.rows_) + "x" + std::to_string(other.cols_));
}

Matrix& Matrix::operator+=(const Matrix& other) {
  check_same_shape(other, "operator+");
  with_ops(field_, [&](auto ops) {
    auto& a = entries(ops, data_);
    const auto& b = entries(ops, other.data_);
    for (std::size_t i = 0; i < a.size(); ++i) a[i] = ops.add(a[i], b[i]);
  });
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& other) {
  check_same_shape(other, "operator-");
  with_ops(field_, [&](auto ops) {
    auto& a = entries(ops, data_);
    const auto& b = entries(ops, other.data_);
    for (std::size_t i = 0; i < a.size(); ++i) a[i] = ops.sub(a[i], b[i]);
  });
  return *this;
}

Matrix Matrix::operator+(const Matrix& other) const {
  Matrix r = *this;
  r += other;
  return r;
}

Matrix Matrix::operator-(const Matrix& other) const {
  Matrix r = *this;
  r -= other;
  return r;
}

Matrix Matrix::operator-() const {
  Matrix r = *this;
  with_ops(field_, [&](auto ops) {
    for (auto& x : entries(ops, r.data_)) x = ops.neg(x);
  });
  return r;
}

Matrix Matrix::operator*(const Matrix& other) const {
  if (!(field_ == other.field_)) throw ShapeMismatch("operator*: field mismatch");
  if (cols_ != other.rows_)
    throw ShapeMismatch("operator*: " + std::to_string(rows_) + "x" + std::to_string(cols_) + " times " +
                        std::to_string(other.rows_) + "x" + std::to_string(other.cols_));
  Matrix r(field_, rows_, other.cols_);
  with_ops(field_, [&](auto ops) {
    const auto& a = entries(ops, data_);
    const auto& b = entries(ops, other.data_);
    auto& c = entries(ops, r.data_);
    const std::size_t n = other.cols_;
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t k = 0; k < cols_; ++k) {
        const auto& aik = a[i * cols_ + k];
        if (ops.is_zero(aik)) continue;
        for (std::size_t j = 0; j < n; ++j) {
          const auto& bkj = b[k * n + j];
          if (!ops.is_zero(bkj)) c[i * n + j] = ops.add(c[i * n + j], ops.mul(aik, bkj));
        }
      }
  });
  return r;
}

Matrix Matrix::scaled(long long factor) const { return scaled(Scalar::from_int(field_, factor)); }

Matrix Matrix::scaled(const Scalar& factor) const {
  Matrix r = *this;
  with_ops(field_, [&](auto ops) {
    auto f = ops.from_scalar(factor);
    for (auto& x : entries(ops, r.data_)) x = ops.mul(x, f);
  });
  return r;
}

Matrix Matrix::transpose() const {
  Matrix r(field_, cols_, rows_);
  with_ops(field_, [&](auto ops) {
    const auto& a = entries(ops, data_);
    auto& t = entries(ops, r.data_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t[j * rows_ + i] = a[i * cols_ + j];
  });
  return r;
}

Matrix Matrix::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
  if (r0 + nr > rows_ || c0 + nc > cols_) throw std::out_of_range("Matrix::block");
  Matrix r(field_, nr, nc);
  with_ops(field_, [&](auto ops) {
    const auto& a = entries(ops, data_);
    auto& b = entries(ops, r.data_);
    for (std::size_t i = 0; i < nr; ++i)
      for (std::size_t j = 0; j < nc; ++j) b[i * nc + j] = a[(r0 + i) * cols_ + c0 + j];
  });
  return r;
}

void Matrix::set_block(std::size_t r0, std::size_t c0, const Matrix& blk) {
  if (!(field_ == blk.field_)) throw ShapeMismatch("set_block: field mismatch");
  if (r0 + blk.rows_ > rows_ || c0 + blk.cols_ > cols_) throw std::out_of_range("Matrix::set_block");
  with_ops(field_, [&](auto ops) {
    auto& a = entries(ops, data_);
    const auto& b = entries(ops, blk.data_);
    for (std::size_t i = 0; i < blk.rows_; ++i)
      for (std::size_t j = 0; j < blk.cols_; ++j) a[(r0 + i) * cols_ + c0 + j] = b[i * blk.cols_ + j];
  });
}

Matrix Matrix::select_columns(const std::vector<std::size_t>& cols) const {
  Matrix r(field_, rows_, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) r.set_block(0, j, column(cols[j]));
  return r;
}

Matrix Matrix::select_rows(const std::vector<std::size_t>& rows) const {
  Matrix r(field_, rows.size(), cols_);
  for (std::size_t i = 0; i < rows.size(); ++i) r.set_block(i, 0, block(rows[i], 0, 1, cols_));
  return r;
}

Matrix Matrix::flattened() const {
  Matrix r = *this;
  r.rows_ = rows_ * cols_;
  r.cols_ = 1;
  return r;
}

Matrix Matrix::unflatten(const Matrix& column, std::size_t rows, std::size_t cols) {
  if (column.cols_ != 1 || column.rows_ != rows * cols) throw ShapeMismatch("unflatten: wrong length");
  Matrix r = column;
  r.rows_ = rows;
  r.cols_ = cols;
  return r;
}

std::string Matrix::to_string() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < rows_; ++i) {
    if (i) os << "; ";
    for (std::size_t j = 0; j < cols_; ++j) {
      if (j) os << ' ';
      os << at(i, j).to_string();
    }
  }
  os << ']';
  return os.str();
}

bool operator==(const Matrix& a, const Matrix& b) {
  return a.field_ == b.field_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

Matrix hstack(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows()) throw ShapeMismatch("hstack: row counts differ");
  Matrix r(a.field(), a.rows(), a.cols() + b.cols());
  r.set_block(0, 0, a);
  r.set_block(0, a.cols(), b);
  return r;
}

Matrix vstack(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.cols()) throw ShapeMismatch("vstack: column counts differ");
  Matrix r(a.field(), a.rows() + b.rows(), a.cols());
  r.set_block(0, 0, a);
  r.set_block(a.rows(), 0, b);
  return r;
}

Matrix block_diag(const Matrix& a, const Matrix& b) {
  Matrix r(a.field(), a.rows() + b.rows(), a.cols() + b.cols());
  r.set_block(0, 0, a);
  r.set_block(a.rows(), a.cols(), b);
  return r;
}

Matrix kron(const Matrix& a, const Matrix& b) {
  if (!(a.field() == b.field())) throw ShapeMismatch("kron: field mismatch");
  Matrix r(a.field(), a.rows() * b.rows(), a.cols() * b.cols());
  with_ops(a.field(), [&](auto ops) {
    const auto& x = entries(ops, a.storage());
    const auto& y = entries(ops, b.storage());
    auto& z = entries(ops, r.storage());
    const std::size_t rc = r.cols();
    for (std::size_t i = 0; i < a.rows(); ++i)
      for (std::size_t j = 0; j < a.cols(); ++j) {
        const auto& aij = x[i * a.cols() + j];
        if (ops.is_zero(aij)) continue;
        for (std::size_t k = 0; k < b.rows(); ++k)
          for (std::size_t l = 0; l < b.cols(); ++l)
            z[(i * b.rows() + k) * rc + j * b.cols() + l] = ops.mul(aij, y[k * b.cols() + l]);
      }
  });
  return r;
}

Matrix block2x2(const Matrix& a, const Matrix& b, const Matrix& c, const Matrix& d) {
  if (a.rows() != b.rows() || c.rows() != d.rows() || a.cols() != c.cols() || b.cols() != d.cols())
    throw ShapeMismatch("block2x2: incompatible blocks");
  return vstack(hstack(a, b), hstack(c, d));
}

}  // namespace dualseq
