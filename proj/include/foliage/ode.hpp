#ifndef FOLIAGE_ODE_HPP
#define FOLIAGE_ODE_HPP

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace foliage {

enum class Method {
  rk4,      ///< classical fixed-step fourth-order Runge-Kutta
  dopri45,  ///< embedded Dormand-Prince 5(4) pair with step-size control
};

std::string to_string(Method m);
std::optional<Method> parse_method(std::string_view name);

struct IntegratorConfig {
  Method method = Method::dopri45;
  double step = 1e-3;  ///< rk4 step size (upper bound; adjusted to hit t1 exactly)
  double abs_tol = 1e-10;
  double rel_tol = 1e-10;
  long max_steps = 1'000'000;

  /// Throws std::invalid_argument for non-positive step/tolerances/max_steps.
  void validate() const;
};

class StepLimitExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using OdeRhs = std::function<void(double t, const Eigen::VectorXd& y, Eigen::VectorXd& dy)>;
using StopPredicate = std::function<bool(const Eigen::VectorXd& y)>;

/// Piecewise interpolant over the accepted steps of one integration.
/// Dormand-Prince steps use the 4th-order continuous extension, rk4 steps
/// cubic Hermite interpolation.
class DenseOutput {
 public:
  bool empty() const { return segments_.empty(); }
  double t_begin() const { return segments_.front().t0; }
  double t_end() const { return segments_.back().t0 + segments_.back().h; }
  /// Step boundaries t_0, t_1, ..., t_end (monotone in the integration direction).
  std::vector<double> grid() const;
  Eigen::VectorXd operator()(double t) const;

 private:
  friend class DenseRecorder;
  struct Segment {
    double t0;
    double h;
    bool hermite;
    Eigen::MatrixXd coeffs;  // one column per interpolation coefficient
  };
  std::vector<Segment> segments_;
};

struct Integration {
  double t = 0;          ///< time reached
  Eigen::VectorXd y;     ///< state at t
  bool stopped = false;  ///< stop predicate fired; t/y describe the exit step
  long steps = 0;        ///< accepted steps
  long rejected = 0;
  DenseOutput dense;     ///< filled when requested
};

/// Integrates y' = f(t, y) from t0 to t1 (either direction). The optional
/// predicate is tested after every accepted step and ends the integration
/// when it returns true.
Integration integrate(const OdeRhs& f, double t0, double t1, Eigen::VectorXd y0,
                      const IntegratorConfig& cfg, const StopPredicate& stop = {},
                      bool record_dense = false);

}  // namespace foliage

#endif  // FOLIAGE_ODE_HPP
