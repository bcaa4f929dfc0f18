#include <doctest.h>

#include <cmath>

#include "foliage/scenario.hpp"
#include "support.hpp"

using namespace foliage;
using foliage::testing::field;
using foliage::testing::poly;

namespace {

Scenario bundled(const std::string& name) {
  return load_scenario(std::string(FOLIAGE_SCENARIO_DIR) + "/" + name + ".yaml");
}

std::string error_of(const std::string& yaml) {
  try {
    parse_scenario(yaml, "inline.yaml");
  } catch (const ScenarioError& e) {
    return e.what();
  }
  return "";
}

const char* kMinimal = R"(dimension: 1
box: [[-2, 2]]
generators: ["dx", "x*dx"]
field_x: "x*dx"
samples: [[0.5]]
)";

}  // namespace

TEST_CASE("span membership residual") {
  const GeneratorSet rot({field("x*dx", 2), field("x*dy", 2), field("y*dx", 2), field("y*dy", 2)});
  const std::vector<double> origin{0, 0};
  Eigen::VectorXd e1(2);
  e1 << 1, 0;
  CHECK(span_membership_residual(e1, rot, origin).residual == doctest::Approx(1.0));

  const std::vector<double> p{0.3, -0.4};
  const auto y1 = evaluate(rot[0], p);
  const auto fit = span_membership_residual(Eigen::Map<const Eigen::VectorXd>(y1.data(), 2), rot, p);
  CHECK(fit.residual <= 1e-15);

  const GeneratorSet affine({field("dx", 1), field("x*dx", 1)});
  const std::vector<double> half{0.5};
  const auto pushed = pushforward_direct(field("x^2*dx", 1), field("dx", 1), half, 1.0,
                                         IntegratorConfig{}, ChartBox::cube(1, -0.9, 0.9));
  const auto c = span_membership_residual(pushed.value, affine, half);
  CHECK(c.residual <= 1e-8);
  // minimum-norm solution of c1 + c2/2 = 2.25 is (1.8, 0.9)
  CHECK(c.coefficients(0) == doctest::Approx(1.8).epsilon(1e-8));
  CHECK(c.coefficients(1) == doctest::Approx(0.9).epsilon(1e-8));
}

TEST_CASE("rotation pushforwards are conjugated linear fields") {
  const Scenario s = bundled("scenario_b");
  const double c = std::cos(1.0), sn = std::sin(1.0);
  Eigen::Matrix2d R;
  R << c, -sn, sn, c;
  const Eigen::Matrix2d E[4] = {
      (Eigen::Matrix2d() << 1, 0, 0, 0).finished(),  // x dx
      (Eigen::Matrix2d() << 0, 0, 1, 0).finished(),  // x dy
      (Eigen::Matrix2d() << 0, 1, 0, 0).finished(),  // y dx
      (Eigen::Matrix2d() << 0, 0, 0, 1).finished(),  // y dy
  };
  for (const auto& p : s.samples) {
    const Eigen::Vector2d x(p[0], p[1]);
    for (int i = 0; i < 4; ++i) {
      const auto v = pushforward_direct(s.field_x, s.generators[i], p, 1.0, s.integrator, s.box);
      const Eigen::Vector2d expect = R * E[i] * R.transpose() * x;
      CHECK((v.value - expect).norm() <= 1e-8);
    }
  }
}

TEST_CASE("bundled scenarios verify") {
  for (const char* name : {"scenario_a", "scenario_b", "scenario_c"}) {
    CAPTURE(name);
    const Scenario s = bundled(name);
    const auto r = verify_scenario(s);
    CHECK(r.passed);
    CHECK(r.involutive);
    CHECK(r.gamma_found);
    CHECK(r.completed_points == s.samples.size());
    for (const auto& g : r.records) {
      CHECK(g.status == RecordStatus::pass);
      CHECK(g.residual <= 1e-6);
      CHECK(g.reconstruction_gap <= 1e-6);
    }
    for (const auto& p : r.points) {
      CHECK(p.determinant > 0);
      if (p.defect <= kCommutingDefect) CHECK(p.naive_gap <= 1e-6);
    }
  }
}

TEST_CASE("scenario A details") {
  const Scenario s = bundled("scenario_a");
  CHECK(s.dimension() == 1);
  CHECK(s.generators.size() == 2);
  const auto r = verify_scenario(s);
  for (const auto& p : r.points) {
    CHECK(std::abs(p.fundamental(0, 0) - std::exp(1.0)) <= 1e-8);
    CHECK(std::abs(p.fundamental(1, 1) - 1) <= 1e-8);
    CHECK(std::abs(p.fundamental(0, 1)) <= 1e-8);
    CHECK(std::abs(p.fundamental(1, 0)) <= 1e-8);
    CHECK(p.defect == 0);
  }
  for (const auto& g : r.records) CHECK(g.residual <= 1e-8);
  const auto inv = verify_inverse(s);
  CHECK(inv.passed);
  CHECK(inv.max_deviation <= 1e-8);
  // f(phi^{-1}(1)) = 1/e against the factor e from pushing dx
  CHECK(verify_module_morphism(s, poly("x", 1), 0, std::vector<double>{1.0}) <= 1e-8);
  CHECK(verify_module_morphism(s, poly("1", 1), 1, std::vector<double>{0.3}) <= 1e-12);
}

TEST_CASE("scenario C flags the naive formula") {
  const Scenario s = bundled("scenario_c");
  const auto r = verify_scenario(s);
  REQUIRE(r.points.size() == 3);
  const auto& mid = r.points[1];
  REQUIRE(mid.point == std::vector<double>{0.5});
  CHECK(std::abs(mid.fundamental(0, 1) - 2.5) <= 1e-6);
  CHECK(std::abs(mid.fundamental(1, 1) - 1.5) <= 1e-6);
  CHECK(mid.naive_gap >= 0.03);
  CHECK(std::abs((mid.fundamental(0, 1) - mid.naive(0, 1)) - (2.5 - 1 / std::log(1.5))) <= 1e-3);
  CHECK(mid.defect == doctest::Approx(1.0 / 3).epsilon(1e-8));
  CHECK(r.naive_flagged == 3);

  const auto inv = verify_inverse(s);
  CHECK(inv.passed);
  CHECK(inv.max_deviation <= 1e-6);
  CHECK(verify_module_morphism(s, poly("x", 1), 0, std::vector<double>{0.5}) <= 1e-6);
  CHECK(verify_module_morphism(s, poly("x^2 - 1", 1), 1, std::vector<double>{0.25}) <= 1e-6);
}

TEST_CASE("zero field is the identity") {
  Scenario s = parse_scenario(R"(dimension: 2
box: [[-1, 1], [-1, 1]]
generators: ["x*dx", "y*dy"]
field_x: "0"
samples: [[0.5, 0.5], [0, 0]]
)", "zero.yaml");
  const auto r = verify_scenario(s);
  CHECK(r.passed);
  for (const auto& p : r.points) CHECK(p.fundamental.isIdentity(0));
  const auto inv = verify_inverse(s);
  CHECK(inv.max_deviation == 0);
}

TEST_CASE("broken involutivity is reported") {
  const auto r = verify_scenario(bundled("broken_involutivity"));
  CHECK_FALSE(r.passed);
  CHECK_FALSE(r.involutive);
  CHECK_FALSE(r.gamma_found);
  CHECK_FALSE(r.diagnostic.empty());
}

TEST_CASE("domain exits skip points") {
  Scenario s = parse_scenario(R"(dimension: 1
box: [[-0.9, 0.9]]
generators: ["dx", "x*dx"]
field_x: "x^2*dx"
degree_bound: 1
samples: [[0.25], [0.5], [-0.5], [-0.8]]
)", "exits.yaml");
  // backward flows from -0.5 and -0.8 leave the box before s = 1
  const auto r = verify_scenario(s);
  CHECK(r.completed_points == 2);
  CHECK_FALSE(r.points[2].completed);
  CHECK_FALSE(r.points[2].skip_reason.empty());
  CHECK(r.enough_points);
  CHECK(r.passed);

  s.samples = {{0.25}, {-0.5}, {-0.8}};
  CHECK_FALSE(verify_scenario(s).passed);
}

TEST_CASE("serial and parallel reports are identical") {
  for (const char* name : {"scenario_a", "scenario_b", "scenario_c", "broken_involutivity"}) {
    const Scenario s = bundled(name);
    const auto par = verify_scenario(s, Execution::parallel);
    const auto ser = verify_scenario(s, Execution::serial);
    const auto inv_p = verify_inverse(s, Execution::parallel);
    const auto inv_s = verify_inverse(s, Execution::serial);
    CHECK(render_report(s, par, inv_p, "all") == render_report(s, ser, inv_s, "all"));
    CHECK(render_report(s, par, inv_p, "all") == render_report(s, verify_scenario(s), inv_p, "all"));
  }
}

TEST_CASE("report format") {
  CHECK(format_number(-0.0) == "0");
  CHECK(format_number(0.1) == "0.1");
  CHECK(format_number(std::nan("")) == "null");
  const Scenario s = bundled("scenario_a");
  const std::string json = render_report(s, verify_scenario(s), std::nullopt, "verify-aut");
  CHECK(json.find("\"records\"") != std::string::npos);
  CHECK(json.find("\"generator\": 1") != std::string::npos);
  CHECK(json.find("\"status\": \"pass\"") != std::string::npos);
  CHECK(json.find("seconds") == std::string::npos);
}

TEST_CASE("scenario files") {
  const Scenario a = bundled("scenario_a");
  CHECK(a.generators.size() == 2);
  CHECK(a.dimension() == 1);
  CHECK(a.samples.size() == 3);
  CHECK(bundled("scenario_b").samples.size() == 9);

  const Scenario m = parse_scenario(kMinimal, "minimal.yaml");
  CHECK(m.name == "minimal");
  CHECK(m.horizon == 1.0);
  CHECK(m.integrator.method == Method::dopri45);
  CHECK_FALSE(m.degree_bound);

  CHECK_THROWS_AS(bundled("malformed"), ScenarioError);
  CHECK_THROWS_AS(bundled("missing_file"), ScenarioError);

  std::string e = error_of(std::string(kMinimal) + "colour: red\n");
  CHECK(e.find("inline.yaml:6:1") != std::string::npos);
  CHECK(e.find("`colour`") != std::string::npos);

  e = error_of(R"(dimension: 2
box: [[-1, 1], [-1, 1]]
generators: ["dx"]
field_x: "dy"
degree_bound: 2
samples: [[0, 0]]
)");
  CHECK(e.find("`field_x`") != std::string::npos);
  CHECK(e.find(":4:") != std::string::npos);

  e = error_of(R"(dimension: 1
box: [[-1, 1]]
generators: ["dx"]
field_x: "dx"
samples: [[0.5], [3]]
)");
  CHECK(e.find("sample point 2") != std::string::npos);
  CHECK(e.find(":5:") != std::string::npos);

  e = error_of(R"(dimension: 1
box: [[-1, 1]]
generators: ["dx", "x*dq"]
field_x: "dx"
samples: [[0.5]]
)");
  CHECK(e.find("generators[2]") != std::string::npos);

  e = error_of(std::string(kMinimal) + "integrator: {method: euler}\n");
  CHECK(e.find("integrator.method") != std::string::npos);

  e = error_of(R"(dimension: 1
generators: ["dx"]
field_x: "dx"
samples: [[0.5]]
)");
  CHECK(e.find("`box`") != std::string::npos);
}

TEST_CASE("grid samples") {
  const Scenario s = parse_scenario(R"(dimension: 2
box: [[-2, 2], [-2, 2]]
generators: ["dx", "dy"]
field_x: "dx"
samples:
  points: [[1.5, 1.5]]
  grid: {counts: [2, 3], lo: [-1, 0], hi: [1, 1]}
)", "grid.yaml");
  REQUIRE(s.samples.size() == 7);
  CHECK(s.samples[0] == std::vector<double>{1.5, 1.5});
  CHECK(s.samples[1] == std::vector<double>{-1, 0});
  CHECK(s.samples[2] == std::vector<double>{-1, 0.5});
  CHECK(s.samples[6] == std::vector<double>{1, 1});
}
