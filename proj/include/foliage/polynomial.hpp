#ifndef FOLIAGE_POLYNOMIAL_HPP
#define FOLIAGE_POLYNOMIAL_HPP

#include <cstddef>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace foliage {

using Rational = mpq_class;

/// Exponent multi-index (a_1, ..., a_n) of the monomial x1^a1 * ... * xn^an.
using Exponent = std::vector<unsigned>;

unsigned total_degree(const Exponent& e);

/// Graded lexicographic order: total degree first, ties broken
/// lexicographically with x1 the most significant variable.
struct GradedLexLess {
  bool operator()(const Exponent& a, const Exponent& b) const;
};

/// Raised whenever two objects over different numbers of variables meet.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

void require_same_dimension(std::size_t a, std::size_t b, const char* what);

/// Multivariate polynomial in n variables with exact rational coefficients.
/// Terms are kept in canonical graded-lex order and never hold a zero
/// coefficient, so structural equality is mathematical equality.
class Polynomial {
 public:
  using TermMap = std::map<Exponent, Rational, GradedLexLess>;

  explicit Polynomial(std::size_t dimension);

  static Polynomial constant(std::size_t dimension, const Rational& c);
  static Polynomial variable(std::size_t dimension, std::size_t k);
  static Polynomial monomial(Exponent exponent, const Rational& c);

  std::size_t dimension() const { return dim_; }
  bool is_zero() const { return terms_.empty(); }
  /// Total degree; -1 for the zero polynomial.
  int degree() const;
  const TermMap& terms() const { return terms_; }
  Rational coefficient(const Exponent& e) const;

  /// Adds c * x^e in place.
  void add_term(const Exponent& e, const Rational& c);

  Polynomial operator-() const;
  Polynomial& operator+=(const Polynomial& other);
  Polynomial& operator-=(const Polynomial& other);
  Polynomial& operator*=(const Rational& c);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(Polynomial a, const Rational& c) { return a *= c; }
  friend Polynomial operator*(const Rational& c, Polynomial a) { return a *= c; }
  friend bool operator==(const Polynomial& a, const Polynomial& b);

  Polynomial pow(unsigned k) const;
  /// Exact partial derivative with respect to x_{k+1}.
  Polynomial derivative(std::size_t k) const;

  double evaluate(std::span<const double> x) const;
  Rational evaluate(std::span<const Rational> x) const;

 private:
  std::size_t dim_;
  TermMap terms_;
};

/// Variable names used for printing and parsing. Indices are 0-based.
class VariableNames {
 public:
  /// x, y, z for n <= 3, otherwise x1..xn.
  explicit VariableNames(std::size_t dimension);
  VariableNames(std::size_t dimension, std::vector<std::string> aliases);

  std::size_t dimension() const { return dim_; }
  const std::string& name(std::size_t k) const { return display_[k]; }
  /// Accepts the canonical x1..xn spellings, the x/y/z aliases for n <= 3
  /// and any custom aliases. Returns dimension() when unknown.
  std::size_t index_of(const std::string& token) const;

 private:
  std::size_t dim_;
  std::vector<std::string> display_;
  std::map<std::string, std::size_t> lookup_;
};

/// Canonical text: terms in descending graded-lex order, `p/q` coefficients,
/// e.g. "x^2 - 1/3*x*y + 2".
std::string to_string(const Polynomial& p, const VariableNames& names);
std::string to_string(const Polynomial& p);

}  // namespace foliage

#endif  // FOLIAGE_POLYNOMIAL_HPP
