#ifndef FOLIAGE_COCYCLE_HPP
#define FOLIAGE_COCYCLE_HPP

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "foliage/flow.hpp"
#include "foliage/module.hpp"

namespace foliage {

/// A trajectory needed by a cocycle computation left the chart box.
class DomainExit : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// exp(A) by scaling and squaring with a degree-18 Taylor polynomial on
/// A / 2^s, ||A / 2^s||_1 <= 1/2.
Eigen::MatrixXd matrix_exponential(const Eigen::MatrixXd& A);

/// Structure coefficients and the flowing field, compiled for evaluation.
class CompiledGamma {
 public:
  explicit CompiledGamma(const GammaMatrix& gamma);

  std::size_t size() const { return size_; }
  const NumericField& field() const { return field_; }
  Eigen::MatrixXd operator()(std::span<const double> p) const;

 private:
  std::size_t size_;
  std::vector<CompiledPolynomial> entries_;  // row-major
  NumericField field_;
};

enum class CocycleMethod { fundamental, naive_exponential };

std::string to_string(CocycleMethod m);

struct CocycleSolution {
  std::vector<double> base_point;
  double horizon = 0;
  Eigen::MatrixXd V;              ///< ((phi^T)_* Y^i)_x = sum_j V(i, j) Y^j_x
  CocycleMethod method = CocycleMethod::fundamental;
  Eigen::MatrixXd integral_of_A;  ///< quadrature of A over [0, T]
  long steps = 0;
};

/// The linear system V' = A(s) V with A(s) = gamma(phi^{-s}(x)) for one base
/// point. The backward trajectory s -> phi^{-s}(x), s in [0, T], is
/// integrated once with dense output; every quantity below reads A from
/// that interpolant. Throws DomainExit if the trajectory leaves the box.
class CocycleProblem {
 public:
  CocycleProblem(const CompiledGamma& gamma, std::span<const double> x, double horizon,
                 const IntegratorConfig& cfg, const ChartBox& box);

  double horizon() const { return horizon_; }
  /// phi^{-s}(x)
  std::vector<double> trajectory(double s) const;
  Eigen::MatrixXd A(double s) const;
  /// 3-point Gauss-Legendre on every step of the trajectory grid.
  Eigen::MatrixXd integral_of_A() const;

  CocycleSolution fundamental() const;
  CocycleSolution naive() const;
  /// max over s, t on a uniform grid of `samples` nodes in [0, T] of
  /// ||A(s)A(t) - A(t)A(s)||_F
  double commutativity_defect(int samples) const;

 private:
  const CompiledGamma& gamma_;
  std::vector<double> x_;
  double horizon_;
  IntegratorConfig cfg_;
  DenseOutput path_;
};

/// gamma evaluated at phi^{-t}(x).
Eigen::MatrixXd gamma_along_flow(const GammaMatrix& gamma, const VectorField& X,
                                 std::span<const double> x, double t,
                                 const IntegratorConfig& cfg, const ChartBox& box);

CocycleSolution fundamental_solution(const GammaMatrix& gamma, const VectorField& X,
                                     std::span<const double> x, double T,
                                     const IntegratorConfig& cfg, const ChartBox& box);

/// exp of the quadrature of A: exact only when the A(s) commute.
CocycleSolution naive_exponential(const GammaMatrix& gamma, const VectorField& X,
                                  std::span<const double> x, double T,
                                  const IntegratorConfig& cfg, const ChartBox& box);

double commutativity_defect(const GammaMatrix& gamma, const VectorField& X,
                            std::span<const double> x, double T, int sample_count,
                            const IntegratorConfig& cfg, const ChartBox& box);

}  // namespace foliage

#endif  // FOLIAGE_COCYCLE_HPP
