#pragma once

// Brute-force decomposition of tiny sequences over F_2 with zero tails:
// split along nontrivial idempotent endomorphisms until none remain, then read
// each indecomposable piece's support.

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "support/naive.hpp"

namespace dualseq::testing {

struct TinySeq {
  int lo = 0;
  std::vector<std::size_t> dims;
  std::vector<IntMatrix> maps;  // maps[k]: dims[k+1] x dims[k]
};

using TinyBarcode = std::map<std::pair<int, int>, std::size_t>;

namespace detail {

inline std::vector<IntMatrix> unpack(const std::vector<std::int64_t>& x, const std::vector<std::size_t>& dims) {
  std::vector<IntMatrix> e;
  std::size_t off = 0;
  for (std::size_t d : dims) {
    IntMatrix m = naive_zero(d, d);
    for (std::size_t r = 0; r < d; ++r)
      for (std::size_t c = 0; c < d; ++c) m[r][c] = x[off++];
    e.push_back(m);
  }
  return e;
}

// Basis of End(V): e^{k+1} d^k = d^k e^k.
inline std::vector<std::vector<std::int64_t>> endomorphism_basis(const TinySeq& v) {
  std::vector<std::size_t> off{0};
  for (std::size_t d : v.dims) off.push_back(off.back() + d * d);
  std::size_t n = off.back();
  IntMatrix eqs;
  for (std::size_t k = 0; k + 1 < v.dims.size(); ++k) {
    std::size_t a = v.dims[k], b = v.dims[k + 1];
    const IntMatrix& d = v.maps[k];
    for (std::size_t r = 0; r < b; ++r)
      for (std::size_t c = 0; c < a; ++c) {
        std::vector<std::int64_t> row(n, 0);
        // (e^{k+1} d)[r][c] = sum_t e^{k+1}[r][t] d[t][c]
        for (std::size_t t = 0; t < b; ++t) row[off[k + 1] + r * b + t] += d[t][c];
        // (d e^k)[r][c] = sum_t d[r][t] e^k[t][c]
        for (std::size_t t = 0; t < a; ++t) row[off[k] + t * a + c] -= d[r][t];
        eqs.push_back(row);
      }
  }
  if (eqs.empty()) eqs.push_back(std::vector<std::int64_t>(n, 0));
  return naive_nullspace(eqs, n, 2);
}

inline TinySeq restrict_to_image(const TinySeq& v, const std::vector<IntMatrix>& e) {
  TinySeq out;
  out.lo = v.lo;
  std::vector<IntMatrix> basis;
  for (std::size_t k = 0; k < v.dims.size(); ++k) {
    IntMatrix b = naive_column_basis(e[k], v.dims[k], v.dims[k], 2);
    out.dims.push_back(b.empty() ? 0 : b[0].size());
    basis.push_back(b);
  }
  for (std::size_t k = 0; k + 1 < v.dims.size(); ++k) {
    std::size_t a = out.dims[k], b = out.dims[k + 1];
    if (a == 0 || b == 0) {
      out.maps.push_back(naive_zero(b, a));
      continue;
    }
    IntMatrix y = naive_mul(v.maps[k], basis[k], 2);
    out.maps.push_back(naive_solve(basis[k + 1], b, y, a, 2));
  }
  return out;
}

inline bool is_identity_or_zero(const std::vector<IntMatrix>& e, bool identity) {
  for (const auto& m : e)
    for (std::size_t r = 0; r < m.size(); ++r)
      for (std::size_t c = 0; c < m.size(); ++c)
        if (m[r][c] != ((identity && r == c) ? 1 : 0)) return false;
  return true;
}

}  // namespace detail

/// Multiplicities of the indecomposable summands, each read off as the
/// support interval of a piece. Returns nullopt if some indecomposable piece
/// is not an interval (which would contradict the classification).
inline std::optional<TinyBarcode> summand_search(const TinySeq& v) {
  std::size_t total = 0;
  for (std::size_t d : v.dims) total += d;
  if (total == 0) return TinyBarcode{};
  auto basis = detail::endomorphism_basis(v);
  const std::size_t n = basis.size();
  for (std::uint64_t bits = 1; bits < (std::uint64_t(1) << n); ++bits) {
    std::vector<std::int64_t> x(basis.empty() ? 0 : basis[0].size(), 0);
    for (std::size_t k = 0; k < n; ++k)
      if ((bits >> k) & 1)
        for (std::size_t t = 0; t < x.size(); ++t) x[t] = (x[t] + basis[k][t]) % 2;
    auto e = detail::unpack(x, v.dims);
    bool idem = true;
    for (const auto& m : e)
      if (naive_mul(m, m, 2) != m) idem = false;
    if (!idem || detail::is_identity_or_zero(e, true)) continue;
    std::vector<IntMatrix> f = e;
    for (auto& m : f)
      for (std::size_t r = 0; r < m.size(); ++r) m[r][r] = (m[r][r] + 1) % 2;
    auto left = summand_search(detail::restrict_to_image(v, e));
    auto right = summand_search(detail::restrict_to_image(v, f));
    if (!left || !right) return std::nullopt;
    for (const auto& [j, m] : *right) (*left)[j] += m;
    return left;
  }
  // Indecomposable: expect dimension one on a contiguous range with nonzero maps.
  int a = -1, b = -1;
  for (std::size_t k = 0; k < v.dims.size(); ++k) {
    if (v.dims[k] > 1) return std::nullopt;
    if (v.dims[k] == 1) {
      if (a < 0) a = static_cast<int>(k);
      else if (b != static_cast<int>(k) - 1) return std::nullopt;
      b = static_cast<int>(k);
    }
  }
  for (int k = a; k < b; ++k)
    if (v.maps[k][0][0] == 0) return std::nullopt;
  return TinyBarcode{{{v.lo + a, v.lo + b}, 1}};
}

/// Every sequence over F_2 on [0, 2] with dims <= 2 and zero tails.
inline std::vector<TinySeq> all_tiny_sequences() {
  std::vector<TinySeq> out;
  for (std::size_t d0 = 0; d0 <= 2; ++d0)
    for (std::size_t d1 = 0; d1 <= 2; ++d1)
      for (std::size_t d2 = 0; d2 <= 2; ++d2) {
        std::size_t n0 = d1 * d0, n1 = d2 * d1;
        for (std::uint64_t bits = 0; bits < (std::uint64_t(1) << (n0 + n1)); ++bits) {
          TinySeq v;
          v.dims = {d0, d1, d2};
          IntMatrix m0 = naive_zero(d1, d0), m1 = naive_zero(d2, d1);
          std::size_t k = 0;
          for (std::size_t r = 0; r < d1; ++r)
            for (std::size_t c = 0; c < d0; ++c) m0[r][c] = (bits >> k++) & 1;
          for (std::size_t r = 0; r < d2; ++r)
            for (std::size_t c = 0; c < d1; ++c) m1[r][c] = (bits >> k++) & 1;
          v.maps = {m0, m1};
          out.push_back(v);
        }
      }
  return out;
}

}  // namespace dualseq::testing
