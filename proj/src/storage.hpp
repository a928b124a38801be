#pragma once

#include "dualseq/matrix.hpp"
#include "field_ops.hpp"

namespace dualseq::detail {

inline std::vector<std::uint32_t>& entries(PrimeOps, Matrix::Storage& s) {
  return std::get<std::vector<std::uint32_t>>(s);
}
inline const std::vector<std::uint32_t>& entries(PrimeOps, const Matrix::Storage& s) {
  return std::get<std::vector<std::uint32_t>>(s);
}
inline std::vector<mpq_class>& entries(RationalOps, Matrix::Storage& s) {
  return std::get<std::vector<mpq_class>>(s);
}
inline const std::vector<mpq_class>& entries(RationalOps, const Matrix::Storage& s) {
  return std::get<std::vector<mpq_class>>(s);
}

}  // namespace dualseq::detail
