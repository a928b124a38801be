#pragma once

#include <cstdint>
#include <string>
#include <variant>

#include <gmpxx.h>

namespace dualseq {

/// Ground field: a prime field F_p (p < 2^31) or the rationals.
class Field {
 public:
  /// F_2.
  Field() = default;

  /// Throws std::invalid_argument unless p is a prime below 2^31.
  static Field prime(std::uint32_t p);
  static Field rationals() { return Field(0); }

  bool is_rational() const { return p_ == 0; }
  /// 0 for the rationals.
  std::uint32_t characteristic() const { return p_; }
  std::string name() const;

  friend bool operator==(const Field&, const Field&) = default;

 private:
  explicit Field(std::uint32_t p) : p_(p) {}
  std::uint32_t p_ = 2;
};

/// A field element detached from its field: a residue in [0, p) or a rational.
class Scalar {
 public:
  Scalar() = default;

  static Scalar residue(std::uint32_t r) { return Scalar(Storage(r)); }
  static Scalar rational(mpq_class q);

  /// Interprets an integer in `field` (reduced mod p for prime fields).
  static Scalar from_int(const Field& field, long long value);
  /// Parses "n" or "n/d"; throws std::invalid_argument on bad syntax or a
  /// denominator that vanishes in `field`.
  static Scalar parse(const Field& field, const std::string& text);

  bool is_zero() const;
  bool is_one() const;
  bool is_residue() const { return std::holds_alternative<std::uint32_t>(v_); }
  std::uint32_t as_residue() const { return std::get<std::uint32_t>(v_); }
  const mpq_class& as_rational() const { return std::get<mpq_class>(v_); }

  /// Residues print in [0,p); rationals as "n" or "n/d".
  std::string to_string() const;

  friend bool operator==(const Scalar& a, const Scalar& b);

 private:
  using Storage = std::variant<std::uint32_t, mpq_class>;
  explicit Scalar(Storage v) : v_(std::move(v)) {}
  Storage v_ = std::uint32_t{0};
};

}  // namespace dualseq
