#pragma once

// Element arithmetic for the two supported field kinds. Matrix kernels are
// written once against this interface and dispatched at runtime.

#include <cstdint>
#include <stdexcept>
#include <utility>

#include <gmpxx.h>

#include "dualseq/field.hpp"

namespace dualseq::detail {

struct PrimeOps {
  using T = std::uint32_t;
  std::uint64_t p;

  T zero() const { return 0; }
  T one() const { return 1; }
  T add(T a, T b) const {
    std::uint64_t s = std::uint64_t(a) + b;
    return T(s >= p ? s - p : s);
  }
  T sub(T a, T b) const { return T(a >= b ? a - b : a + p - b); }
  T neg(T a) const { return a == 0 ? 0 : T(p - a); }
  T mul(T a, T b) const { return T((std::uint64_t(a) * b) % p); }
  T inv(T a) const {
    if (a == 0) throw std::domain_error("division by zero in prime field");
    // Extended Euclid on signed 64-bit values; p < 2^31 keeps this exact.
    std::int64_t t = 0, new_t = 1;
    std::int64_t r = std::int64_t(p), new_r = a;
    while (new_r != 0) {
      std::int64_t q = r / new_r;
      t = std::exchange(new_t, t - q * new_t);
      r = std::exchange(new_r, r - q * new_r);
    }
    if (t < 0) t += std::int64_t(p);
    return T(t);
  }
  bool is_zero(const T& a) const { return a == 0; }
  T from_int(long long v) const {
    long long m = v % static_cast<long long>(p);
    if (m < 0) m += static_cast<long long>(p);
    return T(m);
  }
  // a -= f * b
  void sub_mul(T& a, T f, T b) const { a = sub(a, mul(f, b)); }
  Scalar to_scalar(T a) const { return Scalar::residue(a); }
  T from_scalar(const Scalar& s) const { return s.as_residue(); }
};

struct RationalOps {
  using T = mpq_class;

  T zero() const { return T(0); }
  T one() const { return T(1); }
  T add(const T& a, const T& b) const { return a + b; }
  T sub(const T& a, const T& b) const { return a - b; }
  T neg(const T& a) const { return -a; }
  T mul(const T& a, const T& b) const { return a * b; }
  T inv(const T& a) const {
    if (sgn(a) == 0) throw std::domain_error("division by zero in rationals");
    return 1 / a;
  }
  bool is_zero(const T& a) const { return sgn(a) == 0; }
  T from_int(long long v) const { return T(static_cast<long>(v)); }
  void sub_mul(T& a, const T& f, const T& b) const { a -= f * b; }
  Scalar to_scalar(const T& a) const { return Scalar::rational(a); }
  T from_scalar(const Scalar& s) const { return s.as_rational(); }
};

/// Calls fn(PrimeOps) or fn(RationalOps) according to the field.
template <class Fn>
decltype(auto) with_ops(const Field& field, Fn&& fn) {
  if (field.is_rational()) return fn(RationalOps{});
  return fn(PrimeOps{field.characteristic()});
}

}  // namespace dualseq::detail
