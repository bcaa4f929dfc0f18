#ifndef FOLIAGE_FLOW_HPP
#define FOLIAGE_FLOW_HPP

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "foliage/ode.hpp"
#include "foliage/vector_field.hpp"

namespace foliage {

/// Polynomial with double coefficients laid out for fast evaluation.
class CompiledPolynomial {
 public:
  explicit CompiledPolynomial(const Polynomial& p);
  double operator()(std::span<const double> x) const;
  bool is_zero() const { return coeffs_.empty(); }

 private:
  std::size_t dim_;
  std::vector<double> coeffs_;
  std::vector<unsigned> exponents_;  // dim_ entries per term
};

/// A vector field and its exact symbolic Jacobian, compiled for evaluation.
class NumericField {
 public:
  explicit NumericField(const VectorField& X);

  std::size_t dimension() const { return values_.size(); }
  bool is_zero() const { return zero_; }
  void value(std::span<const double> x, std::span<double> out) const;
  /// J(k, m) = dX_k/dx_m at x.
  void jacobian(std::span<const double> x, Eigen::Ref<Eigen::MatrixXd> out) const;

 private:
  std::vector<CompiledPolynomial> values_;
  std::vector<CompiledPolynomial> jacobian_;  // row-major n x n
  bool zero_;
};

struct FlowResult {
  std::vector<double> endpoint;
  Eigen::MatrixXd differential;  ///< D(phi^t) at the start point
  bool left_domain = false;      ///< endpoint/differential are at the exit step and unusable
  long steps_taken = 0;
  double time_reached = 0;
};

/// phi^t_X(x0) and its differential, the latter from the variational
/// equation M' = J_X(phi^s(x0)) M, M(0) = I. Negative t flows backwards.
/// Throws std::invalid_argument when x0 is outside the box and
/// StepLimitExceeded when the step budget runs out.
FlowResult flow(const VectorField& X, std::span<const double> x0, double t,
                const IntegratorConfig& cfg, const ChartBox& box);
FlowResult flow(const NumericField& X, std::span<const double> x0, double t,
                const IntegratorConfig& cfg, const ChartBox& box, bool with_differential = true);

/// Everything needed to push any field forward at x: the base point
/// p = phi^{-t}(x) and D(phi^t) at p.
struct PushforwardMap {
  std::vector<double> base;
  Eigen::MatrixXd differential;
  bool left_domain = false;

  /// D(phi^t)|_p Y(p)
  Eigen::VectorXd apply(const VectorField& Y) const;
};

PushforwardMap pushforward_map(const NumericField& X, std::span<const double> x, double t,
                               const IntegratorConfig& cfg, const ChartBox& box);

struct TangentVector {
  Eigen::VectorXd value;
  bool left_domain = false;
};

/// ((phi^t)_* Y)_x = D(phi^t)|_{phi^{-t}(x)} Y(phi^{-t}(x)): one backward flow
/// to the base point, then one forward flow carrying the variational matrix.
TangentVector pushforward_direct(const VectorField& X, const VectorField& Y,
                                 std::span<const double> x, double t,
                                 const IntegratorConfig& cfg, const ChartBox& box);

}  // namespace foliage

#endif  // FOLIAGE_FLOW_HPP
