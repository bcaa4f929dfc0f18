#include "foliage/flow.hpp"

#include <stdexcept>

namespace foliage {

CompiledPolynomial::CompiledPolynomial(const Polynomial& p) : dim_(p.dimension()) {
  coeffs_.reserve(p.terms().size());
  exponents_.reserve(p.terms().size() * dim_);
  for (const auto& [e, c] : p.terms()) {
    coeffs_.push_back(c.get_d());
    exponents_.insert(exponents_.end(), e.begin(), e.end());
  }
}

double CompiledPolynomial::operator()(std::span<const double> x) const {
  double sum = 0;
  const unsigned* e = exponents_.data();
  for (double c : coeffs_) {
    double term = c;
    for (std::size_t k = 0; k < dim_; ++k, ++e) {
      for (unsigned p = 0; p < *e; ++p) term *= x[k];
    }
    sum += term;
  }
  return sum;
}

NumericField::NumericField(const VectorField& X) : zero_(X.is_zero()) {
  const std::size_t n = X.dimension();
  values_.reserve(n);
  jacobian_.reserve(n * n);
  for (std::size_t k = 0; k < n; ++k) {
    values_.emplace_back(X.component(k));
    for (std::size_t m = 0; m < n; ++m) jacobian_.emplace_back(X.component(k).derivative(m));
  }
}

void NumericField::value(std::span<const double> x, std::span<double> out) const {
  for (std::size_t k = 0; k < values_.size(); ++k) out[k] = values_[k](x);
}

void NumericField::jacobian(std::span<const double> x, Eigen::Ref<Eigen::MatrixXd> out) const {
  const std::size_t n = values_.size();
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t m = 0; m < n; ++m) out(k, m) = jacobian_[k * n + m](x);
  }
}

FlowResult flow(const VectorField& X, std::span<const double> x0, double t,
                const IntegratorConfig& cfg, const ChartBox& box) {
  return flow(NumericField(X), x0, t, cfg, box, true);
}

FlowResult flow(const NumericField& X, std::span<const double> x0, double t,
                const IntegratorConfig& cfg, const ChartBox& box, bool with_differential) {
  const std::size_t n = X.dimension();
  require_same_dimension(n, x0.size(), "flow");
  require_same_dimension(n, box.dimension(), "flow");
  if (!box.contains(x0)) throw std::invalid_argument("flow: start point outside the chart box");

  FlowResult result;
  result.endpoint.assign(x0.begin(), x0.end());
  result.differential = Eigen::MatrixXd::Identity(n, n);
  if (X.is_zero() || t == 0) return result;

  const auto nn = static_cast<Eigen::Index>(n);
  const Eigen::Index size = with_differential ? nn + nn * nn : nn;
  Eigen::VectorXd y(size);
  for (std::size_t k = 0; k < n; ++k) y[k] = x0[k];
  if (with_differential) {
    Eigen::Map<Eigen::MatrixXd>(y.data() + nn, nn, nn).setIdentity();
  }

  Eigen::MatrixXd J(nn, nn);
  auto rhs = [&](double, const Eigen::VectorXd& s, Eigen::VectorXd& ds) {
    std::span<const double> p(s.data(), n);
    X.value(p, std::span<double>(ds.data(), n));
    if (with_differential) {
      X.jacobian(p, J);
      Eigen::Map<const Eigen::MatrixXd> M(s.data() + nn, nn, nn);
      Eigen::Map<Eigen::MatrixXd>(ds.data() + nn, nn, nn).noalias() = J * M;
    }
  };
  auto outside = [&](const Eigen::VectorXd& s) {
    return !box.contains(std::span<const double>(s.data(), n));
  };

  Integration run = integrate(rhs, 0.0, t, std::move(y), cfg, outside);
  for (std::size_t k = 0; k < n; ++k) result.endpoint[k] = run.y[k];
  if (with_differential) {
    result.differential = Eigen::Map<const Eigen::MatrixXd>(run.y.data() + nn, nn, nn);
  }
  result.left_domain = run.stopped;
  result.steps_taken = run.steps;
  result.time_reached = run.t;
  return result;
}

Eigen::VectorXd PushforwardMap::apply(const VectorField& Y) const {
  const std::vector<double> y = Y.evaluate(base);
  return differential * Eigen::Map<const Eigen::VectorXd>(y.data(), static_cast<Eigen::Index>(y.size()));
}

PushforwardMap pushforward_map(const NumericField& X, std::span<const double> x, double t,
                               const IntegratorConfig& cfg, const ChartBox& box) {
  PushforwardMap map;
  FlowResult back = flow(X, x, -t, cfg, box, false);
  map.base = back.endpoint;
  if (back.left_domain) {
    map.left_domain = true;
    map.differential = Eigen::MatrixXd::Identity(static_cast<Eigen::Index>(x.size()),
                                                 static_cast<Eigen::Index>(x.size()));
    return map;
  }
  FlowResult forward = flow(X, map.base, t, cfg, box, true);
  map.differential = std::move(forward.differential);
  map.left_domain = forward.left_domain;
  return map;
}

TangentVector pushforward_direct(const VectorField& X, const VectorField& Y,
                                 std::span<const double> x, double t,
                                 const IntegratorConfig& cfg, const ChartBox& box) {
  require_same_dimension(X.dimension(), Y.dimension(), "pushforward_direct");
  PushforwardMap map = pushforward_map(NumericField(X), x, t, cfg, box);
  return {map.apply(Y), map.left_domain};
}

}  // namespace foliage
