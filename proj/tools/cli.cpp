#include "cli.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "foliage/scenario.hpp"

namespace foliage::cli {

namespace {

struct Options {
  std::string scenario;
  std::string report;
  std::string method;
  double step = 0;
  double abs_tol = 0;
  double rel_tol = 0;
  long max_steps = 0;
  int degree_bound = 0;
  double horizon = 0;
  bool serial = false;
};

std::string short_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string matrix_text(const Eigen::MatrixXd& M) {
  std::string s = "[";
  for (Eigen::Index i = 0; i < M.rows(); ++i) {
    s += i ? ", [" : "[";
    for (Eigen::Index j = 0; j < M.cols(); ++j) s += (j ? ", " : "") + short_number(M(i, j));
    s += "]";
  }
  return s + "]";
}

std::string point_text(const std::vector<double>& p) {
  std::string s = "(";
  for (std::size_t k = 0; k < p.size(); ++k) s += (k ? ", " : "") + short_number(p[k]);
  return s + ")";
}

void apply_overrides(Scenario& s, const Options& o, CLI::App& sub) {
  if (sub.count("--method")) {
    auto m = parse_method(o.method);
    if (!m) throw ScenarioError("--method: expected rk4 or dopri45");
    s.integrator.method = *m;
  }
  if (sub.count("--step")) s.integrator.step = o.step;
  if (sub.count("--abs-tol")) s.integrator.abs_tol = o.abs_tol;
  if (sub.count("--rel-tol")) s.integrator.rel_tol = o.rel_tol;
  if (sub.count("--max-steps")) s.integrator.max_steps = o.max_steps;
  if (sub.count("--degree-bound")) {
    if (o.degree_bound < 0) throw ScenarioError("--degree-bound must be >= 0");
    s.degree_bound = o.degree_bound;
  }
  if (sub.count("--horizon")) s.horizon = o.horizon;
  try {
    s.integrator.validate();
  } catch (const std::invalid_argument& e) {
    throw ScenarioError(std::string("integrator flags: ") + e.what());
  }
}

void print_header(std::ostream& out, const Scenario& s) {
  out << "scenario " << s.name << " (n = " << s.dimension() << ", N = " << s.generators.size()
      << ", " << s.samples.size() << " sample points)\n";
  for (std::size_t i = 0; i < s.generators.size(); ++i) {
    out << "  Y" << i + 1 << " = " << to_string(s.generators[i], s.names) << "\n";
  }
  out << "  X  = " << to_string(s.field_x, s.names) << ", horizon T = " << short_number(s.horizon)
      << ", integrator " << to_string(s.integrator.method) << "\n";
}

void print_involutivity(std::ostream& out, const Scenario& s, const InvolutivityTable& t) {
  out << "involutivity (coefficient degree <= " << t.degree_bound()
      << "): " << (t.all_certified() ? "certified" : "NOT certified") << "\n";
  for (std::size_t i = 0; i < t.size(); ++i) {
    for (std::size_t j = i + 1; j < t.size(); ++j) {
      out << "  [Y" << i + 1 << ", Y" << j + 1 << "] = ";
      if (const auto& cert = t.at(i, j)) {
        bool any = false;
        for (std::size_t k = 0; k < cert->coefficients.size(); ++k) {
          if (cert->coefficients[k].is_zero()) continue;
          out << (any ? " + " : "") << "(" << to_string(cert->coefficients[k], s.names) << ")*Y"
              << k + 1;
          any = true;
        }
        out << (any ? "" : "0") << "\n";
      } else {
        out << "no certificate up to degree " << t.degree_bound() << "\n";
      }
    }
  }
}

void print_gamma(std::ostream& out, const Scenario& s,
                 const std::variant<GammaMatrix, GammaNotFound>& g) {
  if (const auto* gamma = std::get_if<GammaMatrix>(&g)) {
    out << "gamma ([Y^i, X] = sum_j gamma(i,j) Y^j):\n";
    for (std::size_t i = 0; i < gamma->size(); ++i) {
      out << "  row " << i + 1 << ": [";
      for (std::size_t j = 0; j < gamma->size(); ++j) {
        out << (j ? ", " : "") << to_string((*gamma)(i, j), s.names);
      }
      out << "]\n";
    }
  } else {
    const auto& miss = std::get<GammaNotFound>(g);
    out << "gamma: row " << miss.row + 1 << " has no certificate up to degree "
        << miss.degree_bound << "\n";
  }
}

void print_points(std::ostream& out, const VerificationReport& r, bool matrices) {
  for (std::size_t index = 0; index < r.points.size(); ++index) {
    const auto& p = r.points[index];
    out << "point " << point_text(p.point) << ": ";
    if (!p.completed) {
      out << "skipped (" << p.skip_reason << ")\n";
    } else {
      double worst_residual = 0, worst_gap = 0;
      bool ok = true;
      for (const auto& g : r.records) {
        if (g.point_index != index) continue;
        worst_residual = std::max(worst_residual, g.residual);
        worst_gap = std::max(worst_gap, g.reconstruction_gap);
        ok = ok && g.status == RecordStatus::pass;
      }
      out << (ok ? "pass" : "FAIL") << "  residual " << short_number(worst_residual)
          << "  |direct - cocycle| " << short_number(worst_gap) << "  naive_gap "
          << short_number(p.naive_gap) << "  defect " << short_number(p.defect) << "\n";
      if (matrices) {
        out << "    V fundamental = " << matrix_text(p.fundamental) << "\n";
        out << "    V naive       = " << matrix_text(p.naive) << "\n";
      }
    }
  }
  for (const auto& g : r.records) {
    if (g.status == RecordStatus::fail) {
      out << "  failure at point " << g.point_index + 1 << ", generator " << g.generator + 1
          << ": " << g.note << "\n";
    }
  }
}

bool write_report(const std::string& path, const std::string& body, std::ostream& err) {
  std::ofstream f(path, std::ios::binary);
  if (!f) {
    err << "error: cannot write report to " << path << "\n";
    return false;
  }
  f << body;
  return static_cast<bool>(f);
}

int execute(const std::string& command, Scenario s, const Options& o, std::ostream& out,
            std::ostream& err) {
  const Execution exec = o.serial ? Execution::serial : Execution::parallel;
  print_header(out, s);

  VerificationReport report;
  std::optional<InverseCheck> inverse;
  if (command == "check-involutive") {
    report.involutivity = involutivity_check(s.generators, s.involutivity_bound(), exec);
    report.involutive = report.involutivity->all_certified();
    report.passed = report.involutive;
    print_involutivity(out, s, *report.involutivity);
  } else if (command == "solve-gamma") {
    report.gamma = solve_gamma(s.field_x, s.generators, s.gamma_bound(), exec);
    report.gamma_found = std::holds_alternative<GammaMatrix>(*report.gamma);
    report.passed = report.gamma_found;
    print_gamma(out, s, *report.gamma);
  } else if (command == "compare-exponential") {
    report = compare_exponential(s, exec);
    print_gamma(out, s, *report.gamma);
    print_points(out, report, true);
    out << "closed form differs from the fundamental solution at " << report.naive_flagged
        << " of " << report.completed_points << " completed points\n";
  } else {  // verify-aut, all
    report = verify_scenario(s, exec);
    print_involutivity(out, s, *report.involutivity);
    print_gamma(out, s, *report.gamma);
    print_points(out, report, command == "all");
    if (report.gamma_found) {
      inverse = verify_inverse(s, exec);
      out << "inverse check: max deviation " << short_number(inverse->max_deviation) << " ("
          << inverse->checked << " points, " << inverse->skipped << " skipped) "
          << (inverse->passed ? "pass" : "FAIL") << "\n";
      report.passed = report.passed && inverse->passed;
    }
  }

  if (!report.diagnostic.empty()) out << report.diagnostic;
  out << "result: " << (report.passed ? "PASS" : "FAIL");
  if (report.seconds > 0) out << " (" << short_number(report.seconds) << " s)";
  out << "\n";

  if (!o.report.empty()) {
    if (!write_report(o.report, render_report(s, report, inverse, command), err)) {
      return kInputError;
    }
  }
  return report.passed ? kPass : kVerificationFailed;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Verify that time-one flows of module elements preserve a module of "
               "polynomial vector fields."};
  app.name(args.empty() ? "foliage" : args.front());
  app.require_subcommand(1);

  Options o;
  const char* commands[][2] = {
      {"check-involutive", "certify [Y^i, Y^j] in the module for all pairs"},
      {"solve-gamma", "solve [Y^i, X] = sum_j gamma(i,j) Y^j"},
      {"verify-aut", "verify that exp(X) pushes the generators into their span"},
      {"compare-exponential", "compare the fundamental solution with exp of the integral"},
      {"all", "run every check"},
  };
  std::vector<CLI::App*> subs;
  for (const auto& c : commands) {
    CLI::App* sub = app.add_subcommand(c[0], c[1]);
    sub->add_option("scenario", o.scenario, "scenario file (YAML)")->required();
    sub->add_option("--report", o.report, "write the machine-readable report here");
    sub->add_option("--method", o.method, "integrator: rk4 or dopri45");
    sub->add_option("--step", o.step, "rk4 step size");
    sub->add_option("--abs-tol", o.abs_tol, "absolute tolerance (dopri45)");
    sub->add_option("--rel-tol", o.rel_tol, "relative tolerance (dopri45)");
    sub->add_option("--max-steps", o.max_steps, "integrator step budget");
    sub->add_option("--degree-bound", o.degree_bound, "coefficient degree bound for certificates");
    sub->add_option("--horizon", o.horizon, "flow time T");
    sub->add_flag("--serial", o.serial, "use the serial reference loops instead of OpenMP");
    subs.push_back(sub);
  }

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kPass : kInputError;
  }

  CLI::App* chosen = app.get_subcommands().front();
  try {
    Scenario s = load_scenario(o.scenario);
    apply_overrides(s, o, *chosen);
    return execute(chosen->get_name(), std::move(s), o, out, err);
  } catch (const ScenarioError& e) {
    err << "input error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
}

}  // namespace foliage::cli
