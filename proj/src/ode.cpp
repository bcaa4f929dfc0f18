#include "foliage/ode.hpp"

#include <algorithm>
#include <cmath>

namespace foliage {

std::string to_string(Method m) {
  switch (m) {
    case Method::rk4: return "rk4";
    case Method::dopri45: return "dopri45";
  }
  return "unknown";
}

std::optional<Method> parse_method(std::string_view name) {
  if (name == "rk4") return Method::rk4;
  if (name == "dopri45" || name == "rk45" || name == "adaptive") return Method::dopri45;
  return std::nullopt;
}

void IntegratorConfig::validate() const {
  if (method == Method::rk4 && !(step > 0 && std::isfinite(step))) {
    throw std::invalid_argument("integrator step must be > 0");
  }
  if (method == Method::dopri45 && !(abs_tol > 0 && rel_tol > 0)) {
    throw std::invalid_argument("integrator tolerances must be > 0");
  }
  if (max_steps < 1) throw std::invalid_argument("integrator max_steps must be >= 1");
}

std::vector<double> DenseOutput::grid() const {
  std::vector<double> g;
  g.reserve(segments_.size() + 1);
  for (const auto& s : segments_) g.push_back(s.t0);
  if (!segments_.empty()) g.push_back(t_end());
  return g;
}

Eigen::VectorXd DenseOutput::operator()(double t) const {
  if (segments_.empty()) throw std::logic_error("DenseOutput: no data");
  const double dir = segments_.front().h >= 0 ? 1.0 : -1.0;
  // First segment whose end lies at or beyond t in the integration direction.
  auto it = std::lower_bound(segments_.begin(), segments_.end(), t,
                             [dir](const Segment& s, double value) {
                               return dir * (s.t0 + s.h) < dir * value;
                             });
  if (it == segments_.end()) it = std::prev(segments_.end());
  const Segment& s = *it;
  const double theta = s.h == 0 ? 0.0 : (t - s.t0) / s.h;
  const auto& c = s.coeffs;
  if (s.hermite) {
    // columns: y0, y1, h*f0, h*f1
    const double t2 = theta * theta;
    const double t3 = t2 * theta;
    return (2 * t3 - 3 * t2 + 1) * c.col(0) + (-2 * t3 + 3 * t2) * c.col(1) +
           (t3 - 2 * t2 + theta) * c.col(2) + (t3 - t2) * c.col(3);
  }
  const double theta1 = 1.0 - theta;
  return c.col(0) +
         theta * (c.col(1) + theta1 * (c.col(2) + theta * (c.col(3) + theta1 * c.col(4))));
}

class DenseRecorder {
 public:
  explicit DenseRecorder(DenseOutput& out) : out_(out) {}
  void add(double t0, double h, bool hermite, Eigen::MatrixXd coeffs) {
    out_.segments_.push_back({t0, h, hermite, std::move(coeffs)});
  }

 private:
  DenseOutput& out_;
};

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192,
                 a75 = -2187.0 / 6784, a76 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                 e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;
// Continuous extension.
constexpr double d1 = -12715105075.0 / 11282082432.0, d3 = 87487479700.0 / 32700410799.0,
                 d4 = -10690763975.0 / 1880347072.0, d5 = 701980252875.0 / 199316789632.0,
                 d6 = -1453857185.0 / 822651844.0, d7 = 69997945.0 / 29380423.0;

double scaled_norm(const Eigen::VectorXd& v, const Eigen::VectorXd& y0, const Eigen::VectorXd& y1,
                   const IntegratorConfig& cfg) {
  if (v.size() == 0) return 0.0;
  double sum = 0;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double sc = cfg.abs_tol + cfg.rel_tol * std::max(std::abs(y0[i]), std::abs(y1[i]));
    const double r = v[i] / sc;
    sum += r * r;
  }
  return std::sqrt(sum / static_cast<double>(v.size()));
}

double initial_step(const OdeRhs& f, double t0, const Eigen::VectorXd& y0,
                    const Eigen::VectorXd& f0, double span, double dir,
                    const IntegratorConfig& cfg) {
  const double d0 = scaled_norm(y0, y0, y0, cfg);
  const double d1n = scaled_norm(f0, y0, y0, cfg);
  double h0 = (d0 < 1e-5 || d1n < 1e-5) ? 1e-6 : 0.01 * d0 / d1n;
  h0 = std::min(h0, span);
  Eigen::VectorXd y1 = y0 + dir * h0 * f0;
  Eigen::VectorXd f1(y0.size());
  f(t0 + dir * h0, y1, f1);
  const double d2 = scaled_norm(f1 - f0, y0, y0, cfg) / h0;
  const double dm = std::max(d1n, d2);
  const double h1 = dm <= 1e-15 ? std::max(1e-6, h0 * 1e-3) : std::pow(0.01 / dm, 0.2);
  return std::min({100 * h0, h1, span});
}

Integration integrate_dopri(const OdeRhs& f, double t0, double t1, Eigen::VectorXd y,
                            const IntegratorConfig& cfg, const StopPredicate& stop,
                            bool record_dense) {
  Integration out;
  DenseRecorder recorder(out.dense);
  const double dir = t1 >= t0 ? 1.0 : -1.0;
  const double span = std::abs(t1 - t0);
  const Eigen::Index n = y.size();
  double t = t0;
  Eigen::VectorXd k1(n), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n), ytmp(n), ynew(n);
  f(t, y, k1);
  double h = initial_step(f, t0, y, k1, span, dir, cfg);
  long attempts = 0;
  bool last_rejected = false;

  while (dir * (t1 - t) > 0) {
    if (++attempts > cfg.max_steps) {
      throw StepLimitExceeded("integrator exceeded max_steps = " + std::to_string(cfg.max_steps));
    }
    const double remaining = std::abs(t1 - t);
    bool final_step = false;
    if (h >= remaining * (1 - 1e-12)) {
      h = remaining;
      final_step = true;
    }
    if (!final_step && h <= 1e-14 * std::max(1.0, std::abs(t))) {
      throw std::runtime_error("integrator step size underflow");
    }
    const double hs = dir * h;

    ytmp = y + hs * a21 * k1;
    f(t + c2 * hs, ytmp, k2);
    ytmp = y + hs * (a31 * k1 + a32 * k2);
    f(t + c3 * hs, ytmp, k3);
    ytmp = y + hs * (a41 * k1 + a42 * k2 + a43 * k3);
    f(t + c4 * hs, ytmp, k4);
    ytmp = y + hs * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4);
    f(t + c5 * hs, ytmp, k5);
    ytmp = y + hs * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5);
    const double tnew = final_step ? t1 : t + hs;
    f(tnew, ytmp, k6);
    ynew = y + hs * (a71 * k1 + a73 * k3 + a74 * k4 + a75 * k5 + a76 * k6);
    f(tnew, ynew, k7);

    const Eigen::VectorXd err = hs * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
    const double en = scaled_norm(err, y, ynew, cfg);
    if (!std::isfinite(en)) {
      h *= 0.2;
      last_rejected = true;
      ++out.rejected;
      continue;
    }
    double fac = en == 0 ? 10.0 : 0.9 * std::pow(en, -0.2);
    if (en <= 1.0) {
      if (record_dense) {
        Eigen::MatrixXd c(n, 5);
        const Eigen::VectorXd ydiff = ynew - y;
        const Eigen::VectorXd bspl = hs * k1 - ydiff;
        c.col(0) = y;
        c.col(1) = ydiff;
        c.col(2) = bspl;
        c.col(3) = ydiff - hs * k7 - bspl;
        c.col(4) = hs * (d1 * k1 + d3 * k3 + d4 * k4 + d5 * k5 + d6 * k6 + d7 * k7);
        recorder.add(t, tnew - t, false, std::move(c));
      }
      t = tnew;
      y = ynew;
      k1 = k7;
      ++out.steps;
      if (stop && stop(y)) {
        out.stopped = true;
        break;
      }
      fac = std::clamp(fac, 0.2, last_rejected ? 1.0 : 10.0);
      last_rejected = false;
      h *= fac;
    } else {
      ++out.rejected;
      last_rejected = true;
      h *= std::clamp(fac, 0.2, 1.0);
    }
  }
  out.t = t;
  out.y = std::move(y);
  return out;
}

Integration integrate_rk4(const OdeRhs& f, double t0, double t1, Eigen::VectorXd y,
                          const IntegratorConfig& cfg, const StopPredicate& stop,
                          bool record_dense) {
  Integration out;
  DenseRecorder recorder(out.dense);
  const double span = t1 - t0;
  const long count =
      span == 0 ? 0 : static_cast<long>(std::ceil(std::abs(span) / cfg.step - 1e-9));
  if (count > cfg.max_steps) {
    throw StepLimitExceeded("rk4 needs " + std::to_string(count) + " steps > max_steps = " +
                            std::to_string(cfg.max_steps));
  }
  const double h = count == 0 ? 0.0 : span / static_cast<double>(count);
  const Eigen::Index n = y.size();
  Eigen::VectorXd k1(n), k2(n), k3(n), k4(n), ytmp(n), fend(n);
  double t = t0;
  for (long s = 0; s < count; ++s) {
    const double tnew = s + 1 == count ? t1 : t0 + static_cast<double>(s + 1) * h;
    f(t, y, k1);
    ytmp = y + 0.5 * h * k1;
    f(t + 0.5 * h, ytmp, k2);
    ytmp = y + 0.5 * h * k2;
    f(t + 0.5 * h, ytmp, k3);
    ytmp = y + h * k3;
    f(tnew, ytmp, k4);
    Eigen::VectorXd ynew = y + (h / 6.0) * (k1 + 2 * k2 + 2 * k3 + k4);
    if (record_dense) {
      f(tnew, ynew, fend);
      Eigen::MatrixXd c(n, 4);
      c.col(0) = y;
      c.col(1) = ynew;
      c.col(2) = h * k1;
      c.col(3) = h * fend;
      recorder.add(t, tnew - t, true, std::move(c));
    }
    t = tnew;
    y = std::move(ynew);
    ++out.steps;
    if (stop && stop(y)) {
      out.stopped = true;
      break;
    }
  }
  out.t = t;
  out.y = std::move(y);
  return out;
}

}  // namespace

Integration integrate(const OdeRhs& f, double t0, double t1, Eigen::VectorXd y0,
                      const IntegratorConfig& cfg, const StopPredicate& stop, bool record_dense) {
  cfg.validate();
  if (!std::isfinite(t0) || !std::isfinite(t1)) throw std::invalid_argument("non-finite time");
  Integration out;
  if (t0 == t1) {
    out.t = t0;
    out.y = std::move(y0);
    if (record_dense) {
      Eigen::MatrixXd c = Eigen::MatrixXd::Zero(out.y.size(), 4);
      c.col(0) = out.y;
      c.col(1) = out.y;
      DenseRecorder(out.dense).add(t0, 0.0, true, std::move(c));
    }
    return out;
  }
  return cfg.method == Method::rk4 ? integrate_rk4(f, t0, t1, std::move(y0), cfg, stop, record_dense)
                                   : integrate_dopri(f, t0, t1, std::move(y0), cfg, stop, record_dense);
}

}  // namespace foliage
