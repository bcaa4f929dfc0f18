#ifndef FOLIAGE_VERIFIER_HPP
#define FOLIAGE_VERIFIER_HPP

#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "foliage/cocycle.hpp"
#include "foliage/execution.hpp"
#include "foliage/module.hpp"

namespace foliage {

struct Tolerances {
  double residual_tol = 1e-6;
  double agreement_tol = 1e-6;
};

/// One chart-local verification problem: a module given by generators, a
/// field X of that module and the sample points where exp(X) is checked.
struct Scenario {
  std::string name;
  ChartBox box;
  VariableNames names;
  GeneratorSet generators;
  VectorField field_x;
  std::optional<int> degree_bound;  ///< nullopt: per-query default_degree_bound
  double horizon = 1.0;
  std::vector<std::vector<double>> samples;
  IntegratorConfig integrator;
  Tolerances tolerances;

  std::size_t dimension() const { return box.dimension(); }
  /// Bound used for [Y^i, Y^j] certificates.
  int involutivity_bound() const;
  /// Bound used for the rows [Y^i, X] of gamma.
  int gamma_bound() const;
};

/// Commutator norms at or below this count as "A(s) commute".
inline constexpr double kCommutingDefect = 1e-10;
/// Number of uniform nodes on [0, T] used for the commutativity defect.
inline constexpr int kDefectSamples = 11;

struct SpanFit {
  double residual = 0;           ///< ||v - G c||
  Eigen::VectorXd coefficients;  ///< minimum-norm least-squares c
};

/// Least-squares fit of v against the columns Y^1(x)..Y^N(x).
SpanFit span_membership_residual(const Eigen::VectorXd& v, const GeneratorSet& gens,
                                 std::span<const double> x);

enum class RecordStatus { pass, fail, skipped };

struct GeneratorRecord {
  std::size_t point_index = 0;
  std::size_t generator = 0;  ///< 0-based; reports print it 1-based
  Eigen::VectorXd direct;
  Eigen::VectorXd cocycle;
  Eigen::VectorXd naive;
  double residual = 0;
  double reconstruction_gap = 0;  ///< ||direct - cocycle||
  double naive_gap = 0;           ///< ||V_naive - V_fundamental||_F at the point
  double defect = 0;
  RecordStatus status = RecordStatus::skipped;
  std::string note;
};

struct PointSummary {
  std::vector<double> point;
  bool completed = false;
  std::string skip_reason;
  Eigen::MatrixXd fundamental;
  Eigen::MatrixXd naive;
  Eigen::MatrixXd integral_of_A;
  double defect = 0;
  double naive_gap = 0;
  double determinant = 0;
  double condition = 0;
};

struct VerificationReport {
  std::optional<InvolutivityTable> involutivity;
  std::optional<std::variant<GammaMatrix, GammaNotFound>> gamma;
  std::vector<PointSummary> points;
  std::vector<GeneratorRecord> records;  ///< ordered by (point, generator)
  std::size_t completed_points = 0;
  std::size_t naive_flagged = 0;  ///< points where the closed form is off by > agreement_tol
  bool involutive = false;
  bool gamma_found = false;
  bool enough_points = false;
  bool records_pass = false;
  bool passed = false;
  std::string diagnostic;
  double seconds = 0;  ///< wall time; never serialized
};

/// Involutivity, gamma, then for every sample point and generator: direct
/// pushforward, fundamental and naive reconstructions, span residual and
/// commutativity defect. Points are processed by an OpenMP loop or the
/// serial reference loop; the result is identical either way.
VerificationReport verify_scenario(const Scenario& s, Execution exec = Execution::parallel);

/// Runs only the cocycle comparison (no involutivity table) for a solved gamma.
VerificationReport compare_exponential(const Scenario& s, Execution exec = Execution::parallel);

struct InverseCheck {
  bool passed = false;
  double max_deviation = 0;
  std::size_t checked = 0;
  std::size_t skipped = 0;
};

/// Pushes each generator forward by -X and then by X and compares with the
/// original value at every sample point.
InverseCheck verify_inverse(const Scenario& s, Execution exec = Execution::parallel);

/// || (phi^T)_*(f Y^i)_x - f(phi^{-T}(x)) ((phi^T)_* Y^i)_x ||.
/// Throws DomainExit if the flows leave the box.
double verify_module_morphism(const Scenario& s, const Polynomial& f, std::size_t i,
                              std::span<const double> x);

/// Machine report: JSON with numbers printed as %.15g.
std::string render_report(const Scenario& s, const VerificationReport& r,
                          const std::optional<InverseCheck>& inverse, const std::string& command);

std::string format_number(double v);

}  // namespace foliage

#endif  // FOLIAGE_VERIFIER_HPP
