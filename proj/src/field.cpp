#include "dualseq/field.hpp"

#include <stdexcept>

#include "field_ops.hpp"

namespace dualseq {

namespace {

bool is_prime(std::uint32_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

}  // namespace

Field Field::prime(std::uint32_t p) {
  if (p >= (1u << 31) || !is_prime(p))
    throw std::invalid_argument("field characteristic " + std::to_string(p) +
                                " is not a prime below 2^31");
  return Field(p);
}

std::string Field::name() const {
  return is_rational() ? "Q" : "F_" + std::to_string(p_);
}

Scalar Scalar::rational(mpq_class q) {
  q.canonicalize();
  return Scalar(Storage(std::move(q)));
}

Scalar Scalar::from_int(const Field& field, long long value) {
  return detail::with_ops(field, [&](auto ops) { return ops.to_scalar(ops.from_int(value)); });
}

Scalar Scalar::parse(const Field& field, const std::string& text) {
  auto slash = text.find('/');
  auto parse_int = [&](const std::string& s) -> mpz_class {
    if (s.empty()) throw std::invalid_argument("bad scalar '" + text + "'");
    std::size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (start == s.size()) throw std::invalid_argument("bad scalar '" + text + "'");
    for (std::size_t i = start; i < s.size(); ++i)
      if (s[i] < '0' || s[i] > '9') throw std::invalid_argument("bad scalar '" + text + "'");
    return mpz_class(s[0] == '+' ? s.substr(1) : s, 10);
  };
  mpz_class num = parse_int(text.substr(0, slash));
  mpz_class den = slash == std::string::npos ? mpz_class(1) : parse_int(text.substr(slash + 1));
  if (field.is_rational()) {
    if (den == 0) throw std::invalid_argument("zero denominator in '" + text + "'");
    return rational(mpq_class(num, den));
  }
  mpz_class p = field.characteristic();
  mpz_class n = num % p, d = den % p;
  if (n < 0) n += p;
  if (d < 0) d += p;
  if (d == 0) throw std::invalid_argument("denominator of '" + text + "' vanishes in " + field.name());
  detail::PrimeOps ops{field.characteristic()};
  return residue(ops.mul(std::uint32_t(n.get_ui()), ops.inv(std::uint32_t(d.get_ui()))));
}

bool Scalar::is_zero() const {
  if (is_residue()) return as_residue() == 0;
  return sgn(as_rational()) == 0;
}

bool Scalar::is_one() const {
  if (is_residue()) return as_residue() == 1;
  return as_rational() == 1;
}

std::string Scalar::to_string() const {
  if (is_residue()) return std::to_string(as_residue());
  return as_rational().get_str();
}

bool operator==(const Scalar& a, const Scalar& b) {
  if (a.is_residue() != b.is_residue()) return false;
  if (a.is_residue()) return a.as_residue() == b.as_residue();
  return a.as_rational() == b.as_rational();
}

}  // namespace dualseq
