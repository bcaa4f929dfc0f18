// Test-only helpers: seeded random polynomial fields and independent
// numerical oracles (finite differences, closed-form flows).
#ifndef FOLIAGE_TESTS_SUPPORT_HPP
#define FOLIAGE_TESTS_SUPPORT_HPP

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "foliage/parse.hpp"
#include "foliage/vector_field.hpp"

namespace foliage::testing {

inline Polynomial random_polynomial(std::mt19937_64& rng, std::size_t n, unsigned max_degree,
                                    int max_terms = 4) {
  std::uniform_int_distribution<int> terms(0, max_terms);
  std::uniform_int_distribution<unsigned> deg(0, max_degree);
  std::uniform_int_distribution<int> num(-9, 9);
  std::uniform_int_distribution<int> den(1, 5);
  std::uniform_int_distribution<std::size_t> var(0, n - 1);
  Polynomial p(n);
  const int t = terms(rng);
  for (int k = 0; k < t; ++k) {
    Exponent e(n, 0);
    const unsigned d = deg(rng);
    for (unsigned i = 0; i < d; ++i) ++e[var(rng)];
    Rational c(num(rng), den(rng));
    c.canonicalize();
    p.add_term(e, c);
  }
  return p;
}

inline VectorField random_field(std::mt19937_64& rng, std::size_t n, unsigned max_degree,
                                int max_terms = 3) {
  std::vector<Polynomial> comps;
  for (std::size_t k = 0; k < n; ++k) comps.push_back(random_polynomial(rng, n, max_degree, max_terms));
  return VectorField(std::move(comps));
}

inline std::vector<double> random_point(std::mt19937_64& rng, std::size_t n, double r = 1.0) {
  std::uniform_real_distribution<double> u(-r, r);
  std::vector<double> x(n);
  for (auto& v : x) v = u(rng);
  return x;
}

/// [X,Y](x) from central differences of the evaluated components only;
/// never touches the symbolic derivative code.
inline std::vector<double> bracket_by_differences(const VectorField& X, const VectorField& Y,
                                                  const std::vector<double>& x, double h = 1e-5) {
  const std::size_t n = X.dimension();
  const auto Xv = X.evaluate(x);
  const auto Yv = Y.evaluate(x);
  std::vector<double> out(n, 0.0);
  for (std::size_t m = 0; m < n; ++m) {
    auto xp = x, xm = x;
    xp[m] += h;
    xm[m] -= h;
    const auto Xp = X.evaluate(xp), Xm = X.evaluate(xm);
    const auto Yp = Y.evaluate(xp), Ym = Y.evaluate(xm);
    for (std::size_t k = 0; k < n; ++k) {
      const double dY = (Yp[k] - Ym[k]) / (2 * h);
      const double dX = (Xp[k] - Xm[k]) / (2 * h);
      out[k] += Xv[m] * dY - Yv[m] * dX;
    }
  }
  return out;
}

inline VectorField field(const std::string& text, std::size_t n) {
  return parse_vector_field(text, VariableNames(n));
}

inline Polynomial poly(const std::string& text, std::size_t n) {
  return parse_polynomial(text, VariableNames(n));
}

// Closed-form flows used as oracles.
// x d/dx:       phi^t(x) = e^t x,        D phi^t = e^t
// x^2 d/dx:     phi^t(x) = x / (1 - t x), D phi^t = (1 - t x)^-2
inline double dilation_flow(double x, double t) { return std::exp(t) * x; }
inline double quadratic_flow(double x, double t) { return x / (1 - t * x); }
inline double quadratic_flow_derivative(double x, double t) {
  return 1.0 / ((1 - t * x) * (1 - t * x));
}

}  // namespace foliage::testing

#endif  // FOLIAGE_TESTS_SUPPORT_HPP
