#include "foliage/cocycle.hpp"

#include <algorithm>
#include <cmath>

namespace foliage {

Eigen::MatrixXd matrix_exponential(const Eigen::MatrixXd& A) {
  if (A.rows() != A.cols()) throw DimensionError("matrix_exponential: matrix must be square");
  const Eigen::Index n = A.rows();
  if (n == 0) return A;
  if (!A.allFinite()) throw std::invalid_argument("matrix_exponential: non-finite entry");
  const double norm = A.cwiseAbs().colwise().sum().maxCoeff();
  int squarings = 0;
  if (norm > 0.5) squarings = static_cast<int>(std::ceil(std::log2(norm / 0.5)));
  const Eigen::MatrixXd B = A / std::ldexp(1.0, squarings);

  // Horner form of sum_{k<=18} B^k / k!
  constexpr int order = 18;
  Eigen::MatrixXd E = Eigen::MatrixXd::Identity(n, n);
  for (int k = order; k >= 1; --k) {
    E = Eigen::MatrixXd::Identity(n, n) + (B * E) / static_cast<double>(k);
  }
  for (int s = 0; s < squarings; ++s) E = E * E;
  return E;
}

CompiledGamma::CompiledGamma(const GammaMatrix& gamma)
    : size_(gamma.size()), field_(gamma.field()) {
  entries_.reserve(size_ * size_);
  for (std::size_t i = 0; i < size_; ++i) {
    for (std::size_t j = 0; j < size_; ++j) entries_.emplace_back(gamma(i, j));
  }
}

Eigen::MatrixXd CompiledGamma::operator()(std::span<const double> p) const {
  const auto N = static_cast<Eigen::Index>(size_);
  Eigen::MatrixXd A(N, N);
  for (Eigen::Index i = 0; i < N; ++i) {
    for (Eigen::Index j = 0; j < N; ++j) A(i, j) = entries_[static_cast<std::size_t>(i * N + j)](p);
  }
  return A;
}

std::string to_string(CocycleMethod m) {
  return m == CocycleMethod::fundamental ? "fundamental" : "naive_exponential";
}

CocycleProblem::CocycleProblem(const CompiledGamma& gamma, std::span<const double> x,
                               double horizon, const IntegratorConfig& cfg, const ChartBox& box)
    : gamma_(gamma), x_(x.begin(), x.end()), horizon_(horizon), cfg_(cfg) {
  const NumericField& X = gamma.field();
  const std::size_t n = X.dimension();
  require_same_dimension(n, x.size(), "CocycleProblem");
  require_same_dimension(n, box.dimension(), "CocycleProblem");
  if (!std::isfinite(horizon)) throw std::invalid_argument("horizon must be finite");
  if (!box.contains(x)) throw DomainExit("base point outside the chart box");

  // s -> phi^{-s}(x) solves y' = -X(y).
  auto rhs = [&](double, const Eigen::VectorXd& y, Eigen::VectorXd& dy) {
    X.value(std::span<const double>(y.data(), n), std::span<double>(dy.data(), n));
    dy = -dy;
  };
  auto outside = [&](const Eigen::VectorXd& y) {
    return !box.contains(std::span<const double>(y.data(), n));
  };
  Eigen::VectorXd y0 = Eigen::Map<const Eigen::VectorXd>(x.data(), static_cast<Eigen::Index>(n));
  Integration run = integrate(rhs, 0.0, horizon, std::move(y0), cfg, outside, true);
  if (run.stopped) {
    throw DomainExit("backward trajectory left the chart box at s = " + std::to_string(run.t));
  }
  path_ = std::move(run.dense);
}

std::vector<double> CocycleProblem::trajectory(double s) const {
  const Eigen::VectorXd y = path_(s);
  return {y.data(), y.data() + y.size()};
}

Eigen::MatrixXd CocycleProblem::A(double s) const {
  const Eigen::VectorXd y = path_(s);
  return gamma_(std::span<const double>(y.data(), static_cast<std::size_t>(y.size())));
}

Eigen::MatrixXd CocycleProblem::integral_of_A() const {
  const auto N = static_cast<Eigen::Index>(gamma_.size());
  Eigen::MatrixXd sum = Eigen::MatrixXd::Zero(N, N);
  const std::vector<double> grid = path_.grid();
  const double node = std::sqrt(3.0 / 5.0);
  for (std::size_t k = 0; k + 1 < grid.size(); ++k) {
    const double mid = 0.5 * (grid[k] + grid[k + 1]);
    const double half = 0.5 * (grid[k + 1] - grid[k]);
    sum += half * ((5.0 / 9.0) * A(mid - node * half) + (8.0 / 9.0) * A(mid) +
                   (5.0 / 9.0) * A(mid + node * half));
  }
  return sum;
}

CocycleSolution CocycleProblem::fundamental() const {
  const auto N = static_cast<Eigen::Index>(gamma_.size());
  CocycleSolution sol;
  sol.base_point = x_;
  sol.horizon = horizon_;
  sol.method = CocycleMethod::fundamental;
  sol.integral_of_A = integral_of_A();

  Eigen::VectorXd v0(N * N);
  Eigen::Map<Eigen::MatrixXd>(v0.data(), N, N).setIdentity();
  auto rhs = [&](double s, const Eigen::VectorXd& v, Eigen::VectorXd& dv) {
    Eigen::Map<const Eigen::MatrixXd> V(v.data(), N, N);
    Eigen::Map<Eigen::MatrixXd>(dv.data(), N, N).noalias() = A(s) * V;
  };
  Integration run = integrate(rhs, 0.0, horizon_, std::move(v0), cfg_);
  sol.V = Eigen::Map<const Eigen::MatrixXd>(run.y.data(), N, N);
  sol.steps = run.steps;
  return sol;
}

CocycleSolution CocycleProblem::naive() const {
  CocycleSolution sol;
  sol.base_point = x_;
  sol.horizon = horizon_;
  sol.method = CocycleMethod::naive_exponential;
  sol.integral_of_A = integral_of_A();
  sol.V = matrix_exponential(sol.integral_of_A);
  sol.steps = static_cast<long>(path_.grid().size()) - 1;
  return sol;
}

double CocycleProblem::commutativity_defect(int samples) const {
  if (samples < 2) throw std::invalid_argument("commutativity_defect: sample_count must be >= 2");
  std::vector<Eigen::MatrixXd> values;
  values.reserve(static_cast<std::size_t>(samples));
  for (int k = 0; k < samples; ++k) {
    values.push_back(A(horizon_ * static_cast<double>(k) / static_cast<double>(samples - 1)));
  }
  double worst = 0;
  for (std::size_t a = 0; a < values.size(); ++a) {
    for (std::size_t b = a + 1; b < values.size(); ++b) {
      worst = std::max(worst, (values[a] * values[b] - values[b] * values[a]).norm());
    }
  }
  return worst;
}

namespace {

void require_matching_field(const GammaMatrix& gamma, const VectorField& X) {
  if (!(gamma.field() == X)) {
    throw std::invalid_argument("gamma matrix was solved for a different field");
  }
}

}  // namespace

Eigen::MatrixXd gamma_along_flow(const GammaMatrix& gamma, const VectorField& X,
                                 std::span<const double> x, double t,
                                 const IntegratorConfig& cfg, const ChartBox& box) {
  require_matching_field(gamma, X);
  const CompiledGamma compiled(gamma);
  const FlowResult back = flow(compiled.field(), x, -t, cfg, box, false);
  if (back.left_domain) throw DomainExit("backward flow left the chart box");
  return compiled(back.endpoint);
}

CocycleSolution fundamental_solution(const GammaMatrix& gamma, const VectorField& X,
                                     std::span<const double> x, double T,
                                     const IntegratorConfig& cfg, const ChartBox& box) {
  require_matching_field(gamma, X);
  const CompiledGamma compiled(gamma);
  return CocycleProblem(compiled, x, T, cfg, box).fundamental();
}

CocycleSolution naive_exponential(const GammaMatrix& gamma, const VectorField& X,
                                  std::span<const double> x, double T,
                                  const IntegratorConfig& cfg, const ChartBox& box) {
  require_matching_field(gamma, X);
  const CompiledGamma compiled(gamma);
  return CocycleProblem(compiled, x, T, cfg, box).naive();
}

double commutativity_defect(const GammaMatrix& gamma, const VectorField& X,
                            std::span<const double> x, double T, int sample_count,
                            const IntegratorConfig& cfg, const ChartBox& box) {
  require_matching_field(gamma, X);
  if (sample_count < 2) throw std::invalid_argument("commutativity_defect: sample_count must be >= 2");
  const CompiledGamma compiled(gamma);
  return CocycleProblem(compiled, x, T, cfg, box).commutativity_defect(sample_count);
}

}  // namespace foliage
