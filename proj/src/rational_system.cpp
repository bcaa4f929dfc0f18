#include "foliage/rational_system.hpp"

#include <stdexcept>

namespace foliage {

namespace {

// Gauss-Jordan on [A | b] in place; returns the pivot rows' count.
std::size_t reduce(RationalMatrix& M) {
  const std::size_t m = M.rows;
  const std::size_t u = M.cols - 1;
  std::size_t rank = 0;
  for (std::size_t col = 0; col < u && rank < m; ++col) {
    std::size_t pivot = rank;
    while (pivot < m && sgn(M(pivot, col)) == 0) ++pivot;
    if (pivot == m) continue;
    if (pivot != rank) {
      for (std::size_t j = 0; j < M.cols; ++j) std::swap(M(pivot, j), M(rank, j));
    }
    const Rational inv = 1 / M(rank, col);
    for (std::size_t j = col; j < M.cols; ++j) M(rank, j) *= inv;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == rank || sgn(M(i, col)) == 0) continue;
      const Rational f = M(i, col);
      for (std::size_t j = col; j < M.cols; ++j) {
        if (sgn(M(rank, j)) != 0) M(i, j) -= f * M(rank, j);
      }
    }
    ++rank;
  }
  return rank;
}

}  // namespace

std::optional<std::vector<Rational>> minimum_norm_solution(const RationalMatrix& A,
                                                           const std::vector<Rational>& b) {
  if (b.size() != A.rows) throw std::invalid_argument("minimum_norm_solution: size mismatch");
  const std::size_t u = A.cols;
  RationalMatrix M(A.rows, u + 1);
  for (std::size_t i = 0; i < A.rows; ++i) {
    for (std::size_t j = 0; j < u; ++j) M(i, j) = A(i, j);
    M(i, u) = b[i];
  }
  const std::size_t rank = reduce(M);
  for (std::size_t i = rank; i < M.rows; ++i) {
    if (sgn(M(i, u)) != 0) return std::nullopt;
  }
  std::vector<Rational> x(u);
  if (rank == 0) return x;

  // The minimum-norm solution lies in the row space: x = R^T y with
  // (R R^T) y = b', R the nonzero rows of the reduced system.
  RationalMatrix G(rank, rank + 1);
  for (std::size_t i = 0; i < rank; ++i) {
    for (std::size_t j = i; j < rank; ++j) {
      Rational s = 0;
      for (std::size_t k = 0; k < u; ++k) {
        if (sgn(M(i, k)) != 0 && sgn(M(j, k)) != 0) s += M(i, k) * M(j, k);
      }
      G(i, j) = s;
      G(j, i) = s;
    }
    G(i, rank) = M(i, u);
  }
  if (reduce(G) != rank) throw std::logic_error("minimum_norm_solution: singular Gram matrix");
  for (std::size_t i = 0; i < rank; ++i) {
    const Rational& y = G(i, rank);
    if (sgn(y) == 0) continue;
    for (std::size_t k = 0; k < u; ++k) {
      if (sgn(M(i, k)) != 0) x[k] += y * M(i, k);
    }
  }
  return x;
}

}  // namespace foliage
