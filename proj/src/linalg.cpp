#include "dualseq/linalg.hpp"

#include <omp.h>

#include "dualseq/errors.hpp"
#include "field_ops.hpp"
#include "storage.hpp"

namespace dualseq {

using detail::entries;
using detail::with_ops;

namespace {

// Below this many row-entries per elimination step the OpenMP region costs
// more than it saves.
constexpr std::size_t kParallelWork = 1 << 14;

// Gauss-Jordan on the first `reduce_cols` columns of a row-major rows x width
// array. Row operations are applied across the full width.
template <bool Parallel, class Ops>
std::vector<std::size_t> gauss_jordan(Ops ops, std::vector<typename Ops::T>& a, std::size_t rows,
                                      std::size_t width, std::size_t reduce_cols) {
  using T = typename Ops::T;
  std::vector<std::size_t> pivots;
  std::vector<std::size_t> support;
  std::size_t prow = 0;
  for (std::size_t col = 0; col < reduce_cols && prow < rows; ++col) {
    std::size_t sel = rows;
    for (std::size_t r = prow; r < rows; ++r)
      if (!ops.is_zero(a[r * width + col])) {
        sel = r;
        break;
      }
    if (sel == rows) continue;
    if (sel != prow)
      for (std::size_t j = 0; j < width; ++j) std::swap(a[sel * width + j], a[prow * width + j]);

    T inv = ops.inv(a[prow * width + col]);
    support.clear();
    for (std::size_t j = col; j < width; ++j) {
      T& x = a[prow * width + j];
      if (ops.is_zero(x)) continue;
      x = ops.mul(x, inv);
      support.push_back(j);
    }

    auto eliminate = [&](std::size_t r) {
      if (r == prow) return;
      T f = a[r * width + col];
      if (ops.is_zero(f)) return;
      for (std::size_t j : support) ops.sub_mul(a[r * width + j], f, a[prow * width + j]);
    };
    const auto n = static_cast<std::ptrdiff_t>(rows);
    if constexpr (Parallel) {
#pragma omp parallel for schedule(static) if (rows * support.size() >= kParallelWork)
      for (std::ptrdiff_t r = 0; r < n; ++r) eliminate(static_cast<std::size_t>(r));
    } else {
      for (std::ptrdiff_t r = 0; r < n; ++r) eliminate(static_cast<std::size_t>(r));
    }
    pivots.push_back(col);
    ++prow;
  }
  return pivots;
}

template <bool Parallel>
EchelonData reduce_impl(const Matrix& m) {
  const std::size_t rows = m.rows(), cols = m.cols(), width = cols + rows;
  Matrix aug = hstack(m, Matrix::identity(m.field(), rows));
  EchelonData out;
  with_ops(m.field(), [&](auto ops) {
    out.pivots = gauss_jordan<Parallel>(ops, entries(ops, aug.storage()), rows, width, cols);
  });
  out.rank = out.pivots.size();
  out.rref = aug.block(0, 0, rows, cols);
  out.transform = aug.block(0, cols, rows, rows);
  return out;
}

// Pivots and rref only; skips the transform columns.
template <bool Parallel = true>
std::pair<Matrix, std::vector<std::size_t>> rref_only(const Matrix& m) {
  Matrix a = m;
  std::vector<std::size_t> pivots;
  with_ops(m.field(), [&](auto ops) {
    pivots = gauss_jordan<Parallel>(ops, entries(ops, a.storage()), m.rows(), m.cols(), m.cols());
  });
  return {std::move(a), std::move(pivots)};
}

}  // namespace

EchelonData reduce(const Matrix& m) { return reduce_impl<true>(m); }
EchelonData reduce_serial(const Matrix& m) { return reduce_impl<false>(m); }

std::size_t rank(const Matrix& m) { return rref_only(m).second.size(); }

Matrix kernel(const Matrix& m) {
  auto [r, pivots] = rref_only(m);
  const std::size_t cols = m.cols();
  std::vector<bool> is_pivot(cols, false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<std::size_t> free;
  for (std::size_t j = 0; j < cols; ++j)
    if (!is_pivot[j]) free.push_back(j);
  Matrix k(m.field(), cols, free.size());
  with_ops(m.field(), [&](auto ops) {
    const auto& a = entries(ops, r.storage());
    auto& out = entries(ops, k.storage());
    const std::size_t nf = free.size();
    for (std::size_t f = 0; f < nf; ++f) {
      out[free[f] * nf + f] = ops.one();
      for (std::size_t i = 0; i < pivots.size(); ++i) out[pivots[i] * nf + f] = ops.neg(a[i * cols + free[f]]);
    }
  });
  return k;
}

Matrix image(const Matrix& m) { return m.select_columns(rref_only(m).second); }

Subspaces subspaces(const Matrix& m) {
  Subspaces s;
  s.kernel = kernel(m);
  s.image = image(m);
  s.cokernel = SubspaceReducer(s.image).quotient_map();
  return s;
}

Matrix complement(const Matrix& sub, std::size_t ambient_dim) {
  if (sub.rows() != ambient_dim) throw ShapeMismatch("complement: vectors do not live in the ambient space");
  SubspaceReducer red(sub);
  const auto& free = red.free_coordinates();
  Matrix c(sub.field(), ambient_dim, free.size());
  for (std::size_t j = 0; j < free.size(); ++j) c.set(free[j], j, 1);
  return c;
}

std::optional<Matrix> solve(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows()) throw ShapeMismatch("solve: row counts differ");
  auto [r, pivots] = rref_only(hstack(a, b));
  const std::size_t n = a.cols();
  Matrix x(a.field(), n, b.cols());
  for (std::size_t i = 0; i < pivots.size(); ++i) {
    if (pivots[i] >= n) return std::nullopt;  // inconsistent row
    x.set_block(pivots[i], 0, r.block(i, n, 1, b.cols()));
  }
  return x;
}

Matrix inverse(const Matrix& m) {
  if (m.rows() != m.cols()) throw ValidationError("inverse: matrix is not square");
  EchelonData e = reduce(m);
  if (e.rank != m.rows()) throw ValidationError("inverse: matrix is singular");
  return e.transform;
}

SubspaceReducer::SubspaceReducer(const Matrix& spanning) : ambient_(spanning.rows()) {
  auto [r, pivots] = rref_only(spanning.transpose());
  pivots_ = pivots;
  basis_ = r.block(0, 0, pivots.size(), ambient_);
  std::vector<bool> is_pivot(ambient_, false);
  for (auto p : pivots_) is_pivot[p] = true;
  for (std::size_t j = 0; j < ambient_; ++j)
    if (!is_pivot[j]) free_.push_back(j);
}

Matrix SubspaceReducer::reduce(const Matrix& v) const {
  if (v.rows() != ambient_ || v.cols() != 1) throw ShapeMismatch("SubspaceReducer::reduce: expected a column");
  Matrix out = v;
  with_ops(v.field(), [&](auto ops) {
    auto& x = entries(ops, out.storage());
    const auto& b = entries(ops, basis_.storage());
    for (std::size_t i = 0; i < pivots_.size(); ++i) {
      auto f = x[pivots_[i]];
      if (ops.is_zero(f)) continue;
      for (std::size_t j = pivots_[i]; j < ambient_; ++j) {
        const auto& bij = b[i * ambient_ + j];
        if (!ops.is_zero(bij)) ops.sub_mul(x[j], f, bij);
      }
    }
  });
  return out;
}

Matrix SubspaceReducer::quotient_coordinates(const Matrix& v) const {
  return reduce(v).select_rows(free_);
}

Matrix SubspaceReducer::quotient_map() const {
  Field f = basis_.field();
  Matrix q(f, free_.size(), ambient_);
  for (std::size_t j = 0; j < ambient_; ++j) {
    Matrix e(f, ambient_, 1);
    e.set(j, 0, 1);
    q.set_block(0, j, quotient_coordinates(e));
  }
  return q;
}

}  // namespace dualseq
