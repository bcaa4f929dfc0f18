#include "foliage/scenario.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include <yaml-cpp/yaml.h>

#include "foliage/parse.hpp"

namespace foliage {

namespace {

class Loader {
 public:
  explicit Loader(std::string origin) : origin_(std::move(origin)) {}

  [[noreturn]] void fail(const YAML::Node& node, const std::string& key,
                         const std::string& what) const {
    std::ostringstream msg;
    msg << origin_;
    if (node.IsDefined() && node.Mark().line >= 0) {
      msg << ':' << node.Mark().line + 1 << ':' << node.Mark().column + 1;
    }
    msg << ": key `" << key << "`: " << what;
    throw ScenarioError(msg.str());
  }

  [[noreturn]] void fail_missing(const YAML::Node& parent, const std::string& key) const {
    fail(parent, key, "required key is missing");
  }

  double number(const YAML::Node& node, const std::string& key) const {
    if (!node.IsScalar()) fail(node, key, "expected a number");
    try {
      const double v = node.as<double>();
      if (!std::isfinite(v)) fail(node, key, "number must be finite");
      return v;
    } catch (const YAML::Exception&) {
      fail(node, key, "expected a number, found '" + node.Scalar() + "'");
    }
  }

  long integer(const YAML::Node& node, const std::string& key) const {
    if (!node.IsScalar()) fail(node, key, "expected an integer");
    try {
      return node.as<long>();
    } catch (const YAML::Exception&) {
      fail(node, key, "expected an integer, found '" + node.Scalar() + "'");
    }
  }

  std::string text(const YAML::Node& node, const std::string& key) const {
    if (!node.IsScalar()) fail(node, key, "expected a string");
    return node.Scalar();
  }

  std::vector<double> point(const YAML::Node& node, const std::string& key, std::size_t n) const {
    if (!node.IsSequence()) fail(node, key, "expected a list of " + std::to_string(n) + " numbers");
    if (node.size() != n) {
      fail(node, key, "expected " + std::to_string(n) + " coordinates, found " +
                          std::to_string(node.size()));
    }
    std::vector<double> p;
    for (const auto& c : node) p.push_back(number(c, key));
    return p;
  }

  void check_keys(const YAML::Node& map, const std::string& where,
                  const std::set<std::string>& allowed) const {
    for (const auto& kv : map) {
      const std::string k = kv.first.Scalar();
      if (!allowed.count(k)) fail(kv.first, where.empty() ? k : where + "." + k, "unknown key");
    }
  }

  template <typename F>
  auto expression(const YAML::Node& node, const std::string& key, F&& parse) const {
    const std::string src = text(node, key);
    try {
      return parse(src);
    } catch (const ExpressionError& e) {
      fail(node, key, std::string("in '") + src + "': " + e.what());
    } catch (const DimensionError& e) {
      fail(node, key, e.what());
    }
  }

 private:
  std::string origin_;
};

}  // namespace

Scenario parse_scenario(const std::string& text, const std::string& origin) {
  Loader L(origin);
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::ParserException& e) {
    std::ostringstream msg;
    msg << origin << ':' << e.mark.line + 1 << ':' << e.mark.column + 1
        << ": parse error: " << e.msg;
    throw ScenarioError(msg.str());
  }
  if (!root.IsMap()) throw ScenarioError(origin + ": parse error: expected a mapping at top level");
  L.check_keys(root, "", {"name", "dimension", "variables", "box", "generators", "field_x",
                          "degree_bound", "horizon", "samples", "integrator", "tolerances"});

  std::string name = std::filesystem::path(origin).stem().string();
  if (root["name"]) name = L.text(root["name"], "name");

  if (!root["dimension"]) L.fail_missing(root, "dimension");
  const long dim = L.integer(root["dimension"], "dimension");
  if (dim < 1 || dim > 16) L.fail(root["dimension"], "dimension", "must be between 1 and 16");
  const auto n = static_cast<std::size_t>(dim);

  VariableNames names(n);
  if (const auto v = root["variables"]) {
    if (!v.IsSequence() || v.size() != n) {
      L.fail(v, "variables", "expected a list of " + std::to_string(n) + " names");
    }
    std::vector<std::string> aliases;
    for (const auto& a : v) {
      const std::string s = L.text(a, "variables");
      if (s.empty() || !std::isalpha(static_cast<unsigned char>(s[0]))) {
        L.fail(a, "variables", "variable names must start with a letter");
      }
      aliases.push_back(s);
    }
    names = VariableNames(n, std::move(aliases));
  }

  const auto box_node = root["box"];
  if (!box_node) L.fail_missing(root, "box");
  if (!box_node.IsSequence() || box_node.size() != n) {
    L.fail(box_node, "box", "expected " + std::to_string(n) + " intervals [lo, hi]");
  }
  std::vector<double> lo, hi;
  for (const auto& axis : box_node) {
    const auto iv = L.point(axis, "box", 2);
    if (!(iv[0] < iv[1])) L.fail(axis, "box", "interval needs lo < hi");
    lo.push_back(iv[0]);
    hi.push_back(iv[1]);
  }
  ChartBox box(lo, hi);

  const auto gens_node = root["generators"];
  if (!gens_node) L.fail_missing(root, "generators");
  if (!gens_node.IsSequence() || gens_node.size() == 0) {
    L.fail(gens_node, "generators", "expected a non-empty list of vector fields");
  }
  std::vector<VectorField> gens;
  for (std::size_t i = 0; i < gens_node.size(); ++i) {
    gens.push_back(L.expression(gens_node[i], "generators[" + std::to_string(i + 1) + "]",
                                [&](const std::string& s) { return parse_vector_field(s, names); }));
  }
  GeneratorSet generators(std::move(gens));

  if (!root["field_x"]) L.fail_missing(root, "field_x");
  VectorField X = L.expression(root["field_x"], "field_x",
                               [&](const std::string& s) { return parse_vector_field(s, names); });

  std::optional<int> degree_bound;
  if (const auto d = root["degree_bound"]) {
    const long b = L.integer(d, "degree_bound");
    if (b < 0 || b > 64) L.fail(d, "degree_bound", "must be between 0 and 64");
    degree_bound = static_cast<int>(b);
  }

  double horizon = 1.0;
  if (const auto h = root["horizon"]) horizon = L.number(h, "horizon");

  IntegratorConfig cfg;
  if (const auto in = root["integrator"]) {
    if (!in.IsMap()) L.fail(in, "integrator", "expected a mapping");
    L.check_keys(in, "integrator", {"method", "step", "abs_tol", "rel_tol", "max_steps"});
    if (const auto m = in["method"]) {
      auto method = parse_method(L.text(m, "integrator.method"));
      if (!method) L.fail(m, "integrator.method", "expected rk4 or dopri45");
      cfg.method = *method;
    }
    if (const auto v = in["step"]) cfg.step = L.number(v, "integrator.step");
    if (const auto v = in["abs_tol"]) cfg.abs_tol = L.number(v, "integrator.abs_tol");
    if (const auto v = in["rel_tol"]) cfg.rel_tol = L.number(v, "integrator.rel_tol");
    if (const auto v = in["max_steps"]) cfg.max_steps = L.integer(v, "integrator.max_steps");
    try {
      cfg.validate();
    } catch (const std::invalid_argument& e) {
      L.fail(in, "integrator", e.what());
    }
  }

  Tolerances tol;
  if (const auto t = root["tolerances"]) {
    if (!t.IsMap()) L.fail(t, "tolerances", "expected a mapping");
    L.check_keys(t, "tolerances", {"residual_tol", "agreement_tol"});
    if (const auto v = t["residual_tol"]) tol.residual_tol = L.number(v, "tolerances.residual_tol");
    if (const auto v = t["agreement_tol"]) tol.agreement_tol = L.number(v, "tolerances.agreement_tol");
    if (!(tol.residual_tol > 0 && tol.agreement_tol > 0)) L.fail(t, "tolerances", "must be > 0");
  }

  const auto samples_node = root["samples"];
  if (!samples_node) L.fail_missing(root, "samples");
  std::vector<std::vector<double>> samples;
  std::vector<YAML::Node> sample_nodes;
  auto add_points = [&](const YAML::Node& list, const std::string& key) {
    if (!list.IsSequence()) L.fail(list, key, "expected a list of points");
    for (const auto& p : list) {
      samples.push_back(L.point(p, key, n));
      sample_nodes.push_back(p);
    }
  };
  if (samples_node.IsSequence()) {
    add_points(samples_node, "samples");
  } else if (samples_node.IsMap()) {
    L.check_keys(samples_node, "samples", {"points", "grid"});
    if (const auto pts = samples_node["points"]) add_points(pts, "samples.points");
    if (const auto grid = samples_node["grid"]) {
      if (!grid.IsMap()) L.fail(grid, "samples.grid", "expected a mapping");
      L.check_keys(grid, "samples.grid", {"counts", "lo", "hi"});
      if (!grid["counts"]) L.fail_missing(grid, "samples.grid.counts");
      const auto counts_node = grid["counts"];
      if (!counts_node.IsSequence() || counts_node.size() != n) {
        L.fail(counts_node, "samples.grid.counts", "expected " + std::to_string(n) + " counts");
      }
      std::vector<long> counts;
      for (const auto& c : counts_node) {
        const long k = L.integer(c, "samples.grid.counts");
        if (k < 1 || k > 1000) L.fail(c, "samples.grid.counts", "counts must be in 1..1000");
        counts.push_back(k);
      }
      std::vector<double> glo = lo, ghi = hi;
      if (grid["lo"]) glo = L.point(grid["lo"], "samples.grid.lo", n);
      if (grid["hi"]) ghi = L.point(grid["hi"], "samples.grid.hi", n);
      // Row-major over axes, last axis fastest.
      std::vector<long> idx(n, 0);
      for (;;) {
        std::vector<double> p(n);
        for (std::size_t k = 0; k < n; ++k) {
          p[k] = counts[k] == 1 ? 0.5 * (glo[k] + ghi[k])
                                : glo[k] + (ghi[k] - glo[k]) * static_cast<double>(idx[k]) /
                                               static_cast<double>(counts[k] - 1);
        }
        samples.push_back(std::move(p));
        sample_nodes.push_back(grid);
        std::size_t k = n;
        while (k > 0 && ++idx[k - 1] == counts[k - 1]) idx[--k] = 0;
        if (k == 0) break;
      }
    }
  } else {
    L.fail(samples_node, "samples", "expected a list of points or a mapping");
  }
  if (samples.empty()) L.fail(samples_node, "samples", "no sample points");
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (!box.contains(samples[i])) {
      L.fail(sample_nodes[i], "samples",
             "sample point " + std::to_string(i + 1) + " lies outside the box");
    }
  }

  const int bound = degree_bound.value_or(default_degree_bound(X, generators));
  if (!polynomial_membership(X, generators, bound)) {
    L.fail(root["field_x"], "field_x",
           "no membership certificate up to degree " + std::to_string(bound) +
               " (the flowing field must lie in the module)");
  }

  return Scenario{std::move(name), std::move(box),    std::move(names),
                  std::move(generators), std::move(X), degree_bound,
                  horizon,          std::move(samples), cfg,
                  tol};
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ScenarioError(path + ": cannot open scenario file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str(), path);
}

}  // namespace foliage
