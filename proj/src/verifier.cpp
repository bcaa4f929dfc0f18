#include "foliage/verifier.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>

namespace foliage {

int Scenario::involutivity_bound() const {
  if (degree_bound) return *degree_bound;
  int bound = 0;
  for (std::size_t i = 0; i < generators.size(); ++i) {
    for (std::size_t j = i + 1; j < generators.size(); ++j) {
      bound = std::max(bound, default_degree_bound(lie_bracket(generators[i], generators[j]),
                                                   generators));
    }
  }
  return bound;
}

int Scenario::gamma_bound() const {
  if (degree_bound) return *degree_bound;
  int bound = 0;
  for (std::size_t i = 0; i < generators.size(); ++i) {
    bound = std::max(bound, default_degree_bound(lie_bracket(generators[i], field_x), generators));
  }
  return bound;
}

namespace {

Eigen::MatrixXd generator_values(const GeneratorSet& gens, std::span<const double> x) {
  const auto n = static_cast<Eigen::Index>(gens.dimension());
  const auto N = static_cast<Eigen::Index>(gens.size());
  Eigen::MatrixXd G(n, N);
  for (Eigen::Index j = 0; j < N; ++j) {
    const std::vector<double> v = gens[static_cast<std::size_t>(j)].evaluate(x);
    for (Eigen::Index k = 0; k < n; ++k) G(k, j) = v[static_cast<std::size_t>(k)];
  }
  return G;
}

SpanFit fit_columns(const Eigen::VectorXd& v, const Eigen::MatrixXd& G) {
  SpanFit fit;
  Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(G);
  fit.coefficients = cod.solve(v);
  if (cod.rank() == 0) fit.coefficients.setZero();
  fit.residual = (v - G * fit.coefficients).norm();
  return fit;
}

struct PointResult {
  PointSummary summary;
  std::vector<GeneratorRecord> records;
};

template <typename Kernel>
void for_each_index(std::size_t count, Execution exec, Kernel&& kernel) {
  const long n = static_cast<long>(count);
  if (exec == Execution::parallel) {
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < n; ++i) kernel(static_cast<std::size_t>(i));
  } else {
    for (long i = 0; i < n; ++i) kernel(static_cast<std::size_t>(i));
  }
}

PointResult verify_point(const Scenario& s, const CompiledGamma& gamma, std::size_t index) {
  PointResult out;
  const std::vector<double>& x = s.samples[index];
  const std::size_t N = s.generators.size();
  out.summary.point = x;
  auto skip = [&](const std::string& reason) {
    out.summary.completed = false;
    out.summary.skip_reason = reason;
    out.records.clear();
    for (std::size_t i = 0; i < N; ++i) {
      GeneratorRecord rec;
      rec.point_index = index;
      rec.generator = i;
      rec.status = RecordStatus::skipped;
      rec.note = reason;
      out.records.push_back(std::move(rec));
    }
    return out;
  };

  try {
    const PushforwardMap map = pushforward_map(gamma.field(), x, s.horizon, s.integrator, s.box);
    if (map.left_domain) return skip("flow left the chart box");
    const CocycleProblem problem(gamma, x, s.horizon, s.integrator, s.box);
    const CocycleSolution fund = problem.fundamental();
    const CocycleSolution naive = problem.naive();
    const double defect = problem.commutativity_defect(kDefectSamples);
    const double naive_gap = (naive.V - fund.V).norm();

    PointSummary& sum = out.summary;
    sum.completed = true;
    sum.fundamental = fund.V;
    sum.naive = naive.V;
    sum.integral_of_A = fund.integral_of_A;
    sum.defect = defect;
    sum.naive_gap = naive_gap;
    sum.determinant = fund.V.determinant();
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(fund.V);
    const auto& sv = svd.singularValues();
    sum.condition = sv(sv.size() - 1) > 0 ? sv(0) / sv(sv.size() - 1)
                                          : std::numeric_limits<double>::infinity();

    const Eigen::MatrixXd G = generator_values(s.generators, x);  // n x N
    for (std::size_t i = 0; i < N; ++i) {
      GeneratorRecord rec;
      rec.point_index = index;
      rec.generator = i;
      rec.direct = map.apply(s.generators[i]);
      rec.cocycle = G * fund.V.row(static_cast<Eigen::Index>(i)).transpose();
      rec.naive = G * naive.V.row(static_cast<Eigen::Index>(i)).transpose();
      rec.residual = fit_columns(rec.direct, G).residual;
      rec.reconstruction_gap = (rec.direct - rec.cocycle).norm();
      rec.naive_gap = naive_gap;
      rec.defect = defect;
      const bool commuting_mismatch =
          defect <= kCommutingDefect && naive_gap > s.tolerances.agreement_tol;
      const bool ok = rec.residual <= s.tolerances.residual_tol &&
                      rec.reconstruction_gap <= s.tolerances.agreement_tol && !commuting_mismatch &&
                      sum.determinant > 0;
      rec.status = ok ? RecordStatus::pass : RecordStatus::fail;
      if (!ok) {
        if (rec.residual > s.tolerances.residual_tol) {
          rec.note = "pushed vector outside the generator span";
        } else if (rec.reconstruction_gap > s.tolerances.agreement_tol) {
          rec.note = "cocycle reconstruction disagrees with direct pushforward";
        } else if (commuting_mismatch) {
          rec.note = "closed form disagrees although A(s) commute";
        } else {
          rec.note = "cocycle matrix not orientation preserving";
        }
      }
      out.records.push_back(std::move(rec));
    }
  } catch (const DomainExit& e) {
    return skip(e.what());
  } catch (const StepLimitExceeded& e) {
    return skip(e.what());
  } catch (const std::runtime_error& e) {
    return skip(e.what());
  }
  return out;
}

void run_points(const Scenario& s, const GammaMatrix& gamma, Execution exec,
                VerificationReport& report) {
  const CompiledGamma compiled(gamma);
  std::vector<PointResult> results(s.samples.size());
  for_each_index(s.samples.size(), exec,
                 [&](std::size_t i) { results[i] = verify_point(s, compiled, i); });

  report.points.clear();
  report.records.clear();
  report.completed_points = 0;
  report.naive_flagged = 0;
  bool records_pass = true;
  for (auto& r : results) {
    if (r.summary.completed) {
      ++report.completed_points;
      if (r.summary.naive_gap > s.tolerances.agreement_tol) ++report.naive_flagged;
    }
    for (auto& rec : r.records) {
      if (rec.status == RecordStatus::fail) records_pass = false;
      report.records.push_back(std::move(rec));
    }
    report.points.push_back(std::move(r.summary));
  }
  report.records_pass = records_pass;
  report.enough_points = 2 * report.completed_points >= s.samples.size();
}

bool solve_gamma_stage(const Scenario& s, Execution exec, VerificationReport& report) {
  report.gamma = solve_gamma(s.field_x, s.generators, s.gamma_bound(), exec);
  if (const auto* missing = std::get_if<GammaNotFound>(&*report.gamma)) {
    report.gamma_found = false;
    report.diagnostic += "gamma row " + std::to_string(missing->row + 1) +
                         ": no certificate for [Y^" + std::to_string(missing->row + 1) +
                         ", X] up to degree " + std::to_string(missing->degree_bound) + "\n";
    return false;
  }
  report.gamma_found = true;
  return true;
}

void finish(VerificationReport& r, std::chrono::steady_clock::time_point start) {
  if (!r.enough_points && r.gamma_found) {
    r.diagnostic += "fewer than half of the sample points completed\n";
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace

SpanFit span_membership_residual(const Eigen::VectorXd& v, const GeneratorSet& gens,
                                 std::span<const double> x) {
  require_same_dimension(static_cast<std::size_t>(v.size()), gens.dimension(),
                         "span_membership_residual");
  require_same_dimension(x.size(), gens.dimension(), "span_membership_residual");
  return fit_columns(v, generator_values(gens, x));
}

VerificationReport verify_scenario(const Scenario& s, Execution exec) {
  const auto start = std::chrono::steady_clock::now();
  VerificationReport report;
  report.involutivity = involutivity_check(s.generators, s.involutivity_bound(), exec);
  report.involutive = report.involutivity->all_certified();
  if (!report.involutive) {
    const auto& t = *report.involutivity;
    for (std::size_t i = 0; i < t.size(); ++i) {
      for (std::size_t j = i + 1; j < t.size(); ++j) {
        if (!t.at(i, j)) {
          report.diagnostic += "[Y^" + std::to_string(i + 1) + ", Y^" + std::to_string(j + 1) +
                               "]: no certificate up to degree " +
                               std::to_string(t.degree_bound()) + "\n";
        }
      }
    }
  }
  if (solve_gamma_stage(s, exec, report)) run_points(s, std::get<GammaMatrix>(*report.gamma), exec, report);
  report.passed = report.involutive && report.gamma_found && report.enough_points && report.records_pass;
  finish(report, start);
  return report;
}

VerificationReport compare_exponential(const Scenario& s, Execution exec) {
  const auto start = std::chrono::steady_clock::now();
  VerificationReport report;
  if (solve_gamma_stage(s, exec, report)) run_points(s, std::get<GammaMatrix>(*report.gamma), exec, report);
  report.passed = report.gamma_found && report.enough_points && report.records_pass;
  finish(report, start);
  return report;
}

InverseCheck verify_inverse(const Scenario& s, Execution exec) {
  const NumericField forward(s.field_x);
  const NumericField backward(-s.field_x);
  const std::size_t N = s.generators.size();
  struct Outcome {
    bool completed = false;
    double deviation = 0;
  };
  std::vector<Outcome> outcomes(s.samples.size());
  for_each_index(s.samples.size(), exec, [&](std::size_t p) {
    const auto& x = s.samples[p];
    try {
      // Outer pushforward by X needs (phi_{-X})_* Y at p = phi^{-T}(x).
      const PushforwardMap outer = pushforward_map(forward, x, s.horizon, s.integrator, s.box);
      if (outer.left_domain) return;
      const PushforwardMap inner =
          pushforward_map(backward, outer.base, s.horizon, s.integrator, s.box);
      if (inner.left_domain) return;
      double worst = 0;
      for (std::size_t i = 0; i < N; ++i) {
        const Eigen::VectorXd round_trip = outer.differential * inner.apply(s.generators[i]);
        const std::vector<double> y = s.generators[i].evaluate(x);
        const Eigen::VectorXd original =
            Eigen::Map<const Eigen::VectorXd>(y.data(), static_cast<Eigen::Index>(y.size()));
        worst = std::max(worst, (round_trip - original).norm());
      }
      outcomes[p] = {true, worst};
    } catch (const std::runtime_error&) {
      // counted as skipped
    }
  });

  InverseCheck check;
  for (const auto& o : outcomes) {
    if (!o.completed) {
      ++check.skipped;
      continue;
    }
    ++check.checked;
    check.max_deviation = std::max(check.max_deviation, o.deviation);
  }
  check.passed = check.max_deviation <= s.tolerances.agreement_tol &&
                 2 * check.checked >= s.samples.size();
  return check;
}

double verify_module_morphism(const Scenario& s, const Polynomial& f, std::size_t i,
                              std::span<const double> x) {
  require_same_dimension(f.dimension(), s.dimension(), "verify_module_morphism");
  if (i >= s.generators.size()) throw std::out_of_range("generator index out of range");
  const NumericField X(s.field_x);
  const PushforwardMap map = pushforward_map(X, x, s.horizon, s.integrator, s.box);
  if (map.left_domain) throw DomainExit("flow left the chart box");
  const Eigen::VectorXd lhs = map.apply(f * s.generators[i]);
  const Eigen::VectorXd rhs = f.evaluate(std::span<const double>(map.base)) * map.apply(s.generators[i]);
  return (lhs - rhs).norm();
}

}  // namespace foliage
