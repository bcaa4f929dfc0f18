#include <doctest.h>

#include <cmath>

#include "foliage/cocycle.hpp"
#include "support.hpp"

using namespace foliage;
using foliage::testing::field;

namespace {

GammaMatrix gamma_for(const char* X, std::initializer_list<const char*> gens, std::size_t n,
                      int bound) {
  std::vector<VectorField> v;
  for (const char* t : gens) v.push_back(field(t, n));
  auto r = solve_gamma(field(X, n), GeneratorSet(std::move(v)), bound);
  REQUIRE(std::holds_alternative<GammaMatrix>(r));
  return std::get<GammaMatrix>(r);
}

const IntegratorConfig kCfg;
const std::vector<double> kHalf{0.5};

}  // namespace

TEST_CASE("matrix exponential against closed forms") {
  Eigen::MatrixXd R(2, 2);
  const double th = 1.3;
  R << 0, -th, th, 0;
  Eigen::MatrixXd expect(2, 2);
  expect << std::cos(th), -std::sin(th), std::sin(th), std::cos(th);
  CHECK((matrix_exponential(R) - expect).norm() <= 1e-13);

  Eigen::MatrixXd N = Eigen::MatrixXd::Zero(3, 3);
  N(0, 1) = 2;
  N(1, 2) = 3;
  Eigen::MatrixXd expN = Eigen::MatrixXd::Identity(3, 3) + N + 0.5 * N * N;
  CHECK((matrix_exponential(N) - expN).norm() <= 1e-13);

  Eigen::MatrixXd D = Eigen::MatrixXd::Zero(2, 2);
  D(0, 0) = 7.5;
  D(1, 1) = -4;
  const Eigen::MatrixXd E = matrix_exponential(D);
  CHECK(E(0, 0) == doctest::Approx(std::exp(7.5)).epsilon(1e-13));
  CHECK(E(1, 1) == doctest::Approx(std::exp(-4.0)).epsilon(1e-13));
  CHECK(E(0, 1) == 0);
  CHECK(matrix_exponential(Eigen::MatrixXd::Zero(4, 4)).isIdentity(0));
}

TEST_CASE("gamma_along_flow") {
  const ChartBox box = ChartBox::cube(1, -3, 3);
  const GammaMatrix A = gamma_for("x*dx", {"dx", "x*dx"}, 1, 2);
  const VectorField XA = field("x*dx", 1);
  for (double x : {-1.0, 0.3}) {
    for (double t : {0.0, 0.7, -1.0}) {
      const auto G = gamma_along_flow(A, XA, std::vector<double>{x}, t, kCfg, box);
      CHECK(G(0, 0) == 1);
      CHECK(G(0, 1) == 0);
      CHECK(G(1, 0) == 0);
      CHECK(G(1, 1) == 0);
    }
  }

  const GammaMatrix C = gamma_for("x^2*dx", {"dx", "x*dx"}, 1, 1);
  const VectorField XC = field("x^2*dx", 1);
  const auto G = gamma_along_flow(C, XC, kHalf, 1.0, kCfg, box);
  CHECK(G(0, 1) == doctest::Approx(2.0));
  CHECK(G(1, 1) == doctest::Approx(1.0 / 3).epsilon(1e-10));
  const auto G0 = gamma_along_flow(C, XC, kHalf, 0.0, kCfg, box);
  CHECK(G0(1, 1) == 0.5);
  CHECK_THROWS_AS(gamma_along_flow(C, XA, kHalf, 1.0, kCfg, box), std::invalid_argument);
}

TEST_CASE("fundamental solution examples") {
  const ChartBox box = ChartBox::cube(1, -2, 2);
  const GammaMatrix A = gamma_for("x*dx", {"dx", "x*dx"}, 1, 2);
  for (double x : {-1.0, 0.3, 1.0}) {
    const auto sol = fundamental_solution(A, field("x*dx", 1), std::vector<double>{x}, 1.0, kCfg, box);
    CHECK(sol.V(0, 0) == doctest::Approx(std::exp(1.0)).epsilon(1e-10));
    CHECK(std::abs(sol.V(0, 1)) <= 1e-12);
    CHECK(std::abs(sol.V(1, 0)) <= 1e-12);
    CHECK(sol.V(1, 1) == doctest::Approx(1.0).epsilon(1e-12));
  }
  CHECK(fundamental_solution(A, field("x*dx", 1), kHalf, 0.0, kCfg, box).V.isIdentity(0));

  const GammaMatrix C = gamma_for("x^2*dx", {"dx", "x*dx"}, 1, 1);
  const VectorField XC = field("x^2*dx", 1);
  for (double T : {0.25, 0.5, 1.0}) {
    const auto sol = fundamental_solution(C, XC, kHalf, T, kCfg, box);
    CHECK(sol.V(0, 0) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(sol.V(0, 1) == doctest::Approx(2 * T + T * T * 0.5).epsilon(1e-9));
    CHECK(std::abs(sol.V(1, 0)) <= 1e-12);
    CHECK(sol.V(1, 1) == doctest::Approx(1 + T * 0.5).epsilon(1e-9));
  }
}

TEST_CASE("naive exponential examples") {
  const ChartBox box = ChartBox::cube(1, -2, 2);
  const GammaMatrix A = gamma_for("x*dx", {"dx", "x*dx"}, 1, 2);
  const auto nA = naive_exponential(A, field("x*dx", 1), kHalf, 1.0, kCfg, box);
  const auto fA = fundamental_solution(A, field("x*dx", 1), kHalf, 1.0, kCfg, box);
  CHECK((nA.V - fA.V).norm() <= 1e-9);
  CHECK(naive_exponential(A, field("x*dx", 1), kHalf, 0.0, kCfg, box).V.isIdentity(0));

  const GammaMatrix C = gamma_for("x^2*dx", {"dx", "x*dx"}, 1, 1);
  for (double x : {0.25, 0.5, 0.75}) {
    const auto nC = naive_exponential(C, field("x^2*dx", 1), std::vector<double>{x}, 1.0, kCfg, box);
    // integral of phi^{-s}(x) = x / (1 + s x) over [0, 1] is ln(1 + x)
    CHECK(nC.integral_of_A(1, 1) == doctest::Approx(std::log1p(x)).epsilon(1e-10));
    CHECK(nC.V(0, 1) == doctest::Approx(2 * x / std::log1p(x)).epsilon(1e-9));
    CHECK(nC.V(1, 1) == doctest::Approx(1 + x).epsilon(1e-9));
  }
  const auto nC = naive_exponential(C, field("x^2*dx", 1), kHalf, 1.0, kCfg, box);
  const auto fC = fundamental_solution(C, field("x^2*dx", 1), kHalf, 1.0, kCfg, box);
  CHECK(fC.V(0, 1) - nC.V(0, 1) == doctest::Approx(2.5 - 1.0 / std::log(1.5)).epsilon(1e-8));
  CHECK((nC.V - fC.V).norm() >= 0.03);
}

TEST_CASE("commutativity defect") {
  const ChartBox line = ChartBox::cube(1, -2, 2);
  const GammaMatrix A = gamma_for("x*dx", {"dx", "x*dx"}, 1, 2);
  CHECK(commutativity_defect(A, field("x*dx", 1), kHalf, 1.0, 11, kCfg, line) == 0);

  const ChartBox plane = ChartBox::cube(2, -2, 2);
  const GammaMatrix B =
      gamma_for("x*dy - y*dx", {"x*dx", "x*dy", "y*dx", "y*dy"}, 2, 1);
  CHECK(commutativity_defect(B, field("x*dy - y*dx", 2), std::vector<double>{0.5, -1}, 1.0, 11,
                             kCfg, plane) <= 1e-12);

  const GammaMatrix C = gamma_for("x^2*dx", {"dx", "x*dx"}, 1, 1);
  CHECK(commutativity_defect(C, field("x^2*dx", 1), kHalf, 1.0, 11, kCfg, line) ==
        doctest::Approx(1.0 / 3).epsilon(1e-9));
}

TEST_CASE("cocycle property") {
  // V(T; x) = V(T/2; phi^{-T/2}(x)) * V(T/2; x) in the row convention
  struct Case {
    const char* X;
    std::vector<const char*> gens;
    std::size_t n;
    int bound;
    std::vector<double> x;
  };
  const std::vector<Case> cases = {
      {"x^2*dx", {"dx", "x*dx"}, 1, 1, {0.5}},
      {"x^2*dx", {"dx", "x*dx"}, 1, 1, {-0.7}},
      {"x*dy - y*dx", {"x*dx", "x*dy", "y*dx", "y*dy"}, 2, 1, {0.3, 0.8}},
      {"x*y*dx + y^2*dy", {"x*dx", "x*dy", "y*dx", "y*dy"}, 2, 2, {0.4, 0.6}},
  };
  for (const auto& c : cases) {
    std::vector<VectorField> gv;
    for (const char* t : c.gens) gv.push_back(field(t, c.n));
    const VectorField X = field(c.X, c.n);
    const auto r = solve_gamma(X, GeneratorSet(gv), c.bound);
    REQUIRE(std::holds_alternative<GammaMatrix>(r));
    const auto& G = std::get<GammaMatrix>(r);
    const ChartBox box = ChartBox::cube(c.n, -3, 3);
    const double T = 1.0;
    const auto whole = fundamental_solution(G, X, c.x, T, kCfg, box);
    const auto near = fundamental_solution(G, X, c.x, T / 2, kCfg, box);
    const auto mid = flow(X, c.x, -T / 2, kCfg, box).endpoint;
    const auto far = fundamental_solution(G, X, mid, T / 2, kCfg, box);
    CAPTURE(c.X);
    CHECK((whole.V - far.V * near.V).norm() <= 1e-8);
    CHECK(whole.V.determinant() > 0);
  }
}

TEST_CASE("domain exit") {
  const ChartBox box = ChartBox::cube(1, -0.9, 0.9);
  const GammaMatrix C = gamma_for("x^2*dx", {"dx", "x*dx"}, 1, 1);
  // phi^{-s}(-0.5) = -0.5 / (1 - s/2) reaches -0.9 near s = 0.89
  CHECK_THROWS_AS(fundamental_solution(C, field("x^2*dx", 1), std::vector<double>{-0.5}, 2.0, kCfg, box),
                  DomainExit);
}
