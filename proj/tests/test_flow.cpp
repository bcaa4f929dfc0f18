#include <doctest.h>

#include <cmath>

#include "foliage/flow.hpp"
#include "support.hpp"

using namespace foliage;
using foliage::testing::field;

namespace {

const ChartBox kLine = ChartBox::cube(1, -10, 10);
const ChartBox kPlane = ChartBox::cube(2, -10, 10);

IntegratorConfig rk4(double h) {
  IntegratorConfig c;
  c.method = Method::rk4;
  c.step = h;
  return c;
}

double distance(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0;
  for (std::size_t k = 0; k < a.size(); ++k) s += (a[k] - b[k]) * (a[k] - b[k]);
  return std::sqrt(s);
}

std::vector<double> v(std::initializer_list<double> xs) { return xs; }

}  // namespace

TEST_CASE("flow examples") {
  const IntegratorConfig cfg;
  {
    const auto r = flow(field("x*dx", 1), v({1.0}), 1.0, cfg, kLine);
    CHECK_FALSE(r.left_domain);
    CHECK(r.endpoint[0] == doctest::Approx(std::exp(1.0)).epsilon(1e-9));
    CHECK(r.differential(0, 0) == doctest::Approx(std::exp(1.0)).epsilon(1e-9));
  }
  {
    const auto r = flow(field("x^2*dx", 1), v({0.5}), -1.0, cfg, kLine);
    CHECK(r.endpoint[0] == doctest::Approx(1.0 / 3).epsilon(1e-9));
    CHECK(r.differential(0, 0) == doctest::Approx(4.0 / 9).epsilon(1e-9));
  }
  {
    const auto r = flow(VectorField::zero(2), v({0.3, -0.7}), 5.0, cfg, kPlane);
    CHECK(r.endpoint == v({0.3, -0.7}));
    CHECK(r.differential.isIdentity(0));
  }
  {
    const auto r = flow(field("x*dy - y*dx", 2), v({1.0, 0.0}), 0.0, cfg, kPlane);
    CHECK(r.endpoint == v({1.0, 0.0}));
    CHECK(r.differential.isIdentity(0));
  }
  CHECK_THROWS_AS(flow(field("dx", 1), v({20.0}), 1.0, cfg, kLine), std::invalid_argument);
}

TEST_CASE("flow matches closed forms") {
  const IntegratorConfig cfg;
  for (double x0 : {-0.8, -0.1, 0.0, 0.4, 0.9}) {
    for (double t : {-1.0, -0.3, 0.5, 1.0}) {
      const auto a = flow(field("x*dx", 1), v({x0}), t, cfg, kLine);
      CHECK(a.endpoint[0] == doctest::Approx(foliage::testing::dilation_flow(x0, t)).epsilon(1e-9));
      const auto b = flow(field("x^2*dx", 1), v({x0}), t, cfg, kLine);
      CHECK(b.endpoint[0] == doctest::Approx(foliage::testing::quadratic_flow(x0, t)).epsilon(1e-9));
      CHECK(b.differential(0, 0) ==
            doctest::Approx(foliage::testing::quadratic_flow_derivative(x0, t)).epsilon(1e-8));
    }
  }
}

TEST_CASE("rk4 converges with order four") {
  struct Case {
    const char* field;
    double x0, t, exact;
  };
  const Case cases[] = {
      {"x*dx", 1.0, 1.0, std::exp(1.0)},
      {"x^2*dx", 0.5, 1.0, 1.0},
      {"x^2*dx", 0.5, -1.0, 1.0 / 3},
  };
  for (const auto& c : cases) {
    const VectorField X = field(c.field, 1);
    const double e1 = std::abs(flow(X, v({c.x0}), c.t, rk4(0.1), kLine).endpoint[0] - c.exact);
    const double e2 = std::abs(flow(X, v({c.x0}), c.t, rk4(0.05), kLine).endpoint[0] - c.exact);
    const double ratio = e1 / e2;
    CAPTURE(c.field);
    CAPTURE(ratio);
    CHECK(ratio >= 8);
    CHECK(ratio <= 32);
  }
}

TEST_CASE("group law, inverse and chain rule") {
  const IntegratorConfig cfg;
  const double tol = 10 * cfg.abs_tol;
  std::mt19937_64 rng(41);
  const VectorField fields[] = {
      field("x*dy - y*dx", 2),
      field("x*dx - 1/2*y*dy", 2),
      field("(1 + y^2/4)*dx + x*y/8*dy", 2),
  };
  for (const auto& X : fields) {
    for (int trial = 0; trial < 5; ++trial) {
      const auto x0 = foliage::testing::random_point(rng, 2);
      const double s = 0.4, t = 0.35;
      const auto whole = flow(X, x0, s + t, cfg, kPlane);
      const auto first = flow(X, x0, s, cfg, kPlane);
      const auto second = flow(X, first.endpoint, t, cfg, kPlane);
      CHECK(distance(whole.endpoint, second.endpoint) <= tol);
      CHECK((whole.differential - second.differential * first.differential).norm() <= tol);

      const auto back = flow(X, first.endpoint, -s, cfg, kPlane);
      CHECK(distance(back.endpoint, x0) <= tol);
      CHECK((back.differential * first.differential - Eigen::Matrix2d::Identity()).norm() <= tol);
    }
  }
}

TEST_CASE("differential matches finite differences of the flow") {
  const IntegratorConfig cfg;
  const VectorField X = field("x*y*dx + (1 - x^2)*dy", 2);
  const std::vector<double> x0{0.3, -0.2};
  const double t = 0.8, h = 1e-5;
  const auto base = flow(X, x0, t, cfg, kPlane);
  for (int m = 0; m < 2; ++m) {
    auto xp = x0, xm = x0;
    xp[m] += h;
    xm[m] -= h;
    const auto fp = flow(X, xp, t, cfg, kPlane), fm = flow(X, xm, t, cfg, kPlane);
    for (int k = 0; k < 2; ++k) {
      CHECK(base.differential(k, m) ==
            doctest::Approx((fp.endpoint[k] - fm.endpoint[k]) / (2 * h)).epsilon(1e-6));
    }
  }
}

TEST_CASE("pushforward examples") {
  const IntegratorConfig cfg;
  for (double x : {-1.0, 0.2, 1.5}) {
    const auto p = pushforward_direct(field("x*dx", 1), field("dx", 1), v({x}), 1.0, cfg, kLine);
    CHECK(p.value(0) == doctest::Approx(std::exp(1.0)).epsilon(1e-9));
  }
  const auto q = pushforward_direct(field("x^2*dx", 1), field("dx", 1), v({0.5}), 1.0, cfg, kLine);
  CHECK(q.value(0) == doctest::Approx(2.25).epsilon(1e-9));

  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 10; ++trial) {
    const VectorField X = foliage::testing::random_field(rng, 2, 2, 2);
    const auto x = foliage::testing::random_point(rng, 2, 0.5);
    const ChartBox box = ChartBox::cube(2, -1e3, 1e3);
    const auto p = pushforward_direct(X, X, x, 0.3, cfg, box);
    if (p.left_domain) continue;
    const auto expect = evaluate(X, x);
    for (int k = 0; k < 2; ++k) CHECK(p.value(k) == doctest::Approx(expect[k]).epsilon(1e-8).scale(1));
  }
}

TEST_CASE("leaving the box is reported") {
  const IntegratorConfig cfg;
  const ChartBox box = ChartBox::cube(1, -0.9, 0.9);
  const auto r = flow(field("x^2*dx", 1), v({0.5}), 1.5, cfg, box);
  CHECK(r.left_domain);
  CHECK(r.time_reached < 1.5);
  CHECK(pushforward_direct(field("x^2*dx", 1), field("dx", 1), v({0.85}), -1.0, cfg, box).left_domain);
}

TEST_CASE("step budget") {
  IntegratorConfig cfg = rk4(1e-3);
  cfg.max_steps = 10;
  CHECK_THROWS_AS(flow(field("x*dx", 1), v({1.0}), 1.0, cfg, kLine), StepLimitExceeded);
  cfg.step = 0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  CHECK(parse_method("rk45") == Method::dopri45);
  CHECK_FALSE(parse_method("euler"));
}

TEST_CASE("dense output interpolates the trajectory") {
  for (Method m : {Method::dopri45, Method::rk4}) {
    IntegratorConfig cfg;
    cfg.method = m;
    cfg.step = 1e-2;
    const OdeRhs f = [](double, const Eigen::VectorXd& y, Eigen::VectorXd& dy) { dy = -y; };
    Eigen::VectorXd y0(1);
    y0 << 2.0;
    const auto run = integrate(f, 0.0, -1.5, y0, cfg, {}, true);
    REQUIRE_FALSE(run.dense.empty());
    CHECK(run.dense.t_begin() == 0.0);
    CHECK(run.dense.t_end() == doctest::Approx(-1.5));
    for (double t = 0; t >= -1.5; t -= 0.0731) {
      CHECK(run.dense(t)(0) == doctest::Approx(2 * std::exp(-t)).epsilon(1e-7));
    }
    const auto g = run.dense.grid();
    for (std::size_t i = 1; i < g.size(); ++i) CHECK(g[i] < g[i - 1]);
  }
}
