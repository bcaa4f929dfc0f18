#ifndef FOLIAGE_RATIONAL_SYSTEM_HPP
#define FOLIAGE_RATIONAL_SYSTEM_HPP

#include <optional>
#include <vector>

#include "foliage/polynomial.hpp"

namespace foliage {

/// Dense row-major matrix over the rationals.
struct RationalMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<Rational> data;

  RationalMatrix() = default;
  RationalMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c) {}
  Rational& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }
};

/// Minimum Euclidean norm solution of A x = b, computed exactly.
/// Returns nullopt when the system is inconsistent.
std::optional<std::vector<Rational>> minimum_norm_solution(const RationalMatrix& A,
                                                           const std::vector<Rational>& b);

}  // namespace foliage

#endif  // FOLIAGE_RATIONAL_SYSTEM_HPP
