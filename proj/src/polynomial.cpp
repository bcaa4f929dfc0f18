#include "foliage/polynomial.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace foliage {

unsigned total_degree(const Exponent& e) {
  return std::accumulate(e.begin(), e.end(), 0u);
}

bool GradedLexLess::operator()(const Exponent& a, const Exponent& b) const {
  const unsigned da = total_degree(a);
  const unsigned db = total_degree(b);
  if (da != db) return da < db;
  // Larger power of an earlier variable ranks higher.
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

void require_same_dimension(std::size_t a, std::size_t b, const char* what) {
  if (a != b) {
    throw DimensionError(std::string(what) + ": dimension mismatch (" +
                         std::to_string(a) + " vs " + std::to_string(b) + ")");
  }
}

Polynomial::Polynomial(std::size_t dimension) : dim_(dimension) {
  if (dimension == 0) throw DimensionError("polynomial dimension must be >= 1");
}

Polynomial Polynomial::constant(std::size_t dimension, const Rational& c) {
  Polynomial p(dimension);
  p.add_term(Exponent(dimension, 0), c);
  return p;
}

Polynomial Polynomial::variable(std::size_t dimension, std::size_t k) {
  if (k >= dimension) throw DimensionError("variable index out of range");
  Exponent e(dimension, 0);
  e[k] = 1;
  return monomial(std::move(e), Rational(1));
}

Polynomial Polynomial::monomial(Exponent exponent, const Rational& c) {
  Polynomial p(exponent.size());
  p.add_term(exponent, c);
  return p;
}

int Polynomial::degree() const {
  if (terms_.empty()) return -1;
  // Highest graded-lex term has the highest total degree.
  return static_cast<int>(total_degree(terms_.rbegin()->first));
}

Rational Polynomial::coefficient(const Exponent& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Rational(0) : it->second;
}

void Polynomial::add_term(const Exponent& e, const Rational& c) {
  require_same_dimension(dim_, e.size(), "Polynomial::add_term");
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Polynomial Polynomial::operator-() const {
  Polynomial r(*this);
  for (auto& [e, c] : r.terms_) c = -c;
  return r;
}

Polynomial& Polynomial::operator+=(const Polynomial& other) {
  require_same_dimension(dim_, other.dim_, "Polynomial::operator+");
  for (const auto& [e, c] : other.terms_) add_term(e, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& other) {
  require_same_dimension(dim_, other.dim_, "Polynomial::operator-");
  for (const auto& [e, c] : other.terms_) add_term(e, -c);
  return *this;
}

Polynomial& Polynomial::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, v] : terms_) v *= c;
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  require_same_dimension(a.dim_, b.dim_, "Polynomial::operator*");
  Polynomial r(a.dim_);
  Exponent e(a.dim_);
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      for (std::size_t k = 0; k < e.size(); ++k) e[k] = ea[k] + eb[k];
      r.add_term(e, ca * cb);
    }
  }
  return r;
}

bool operator==(const Polynomial& a, const Polynomial& b) {
  return a.dim_ == b.dim_ && a.terms_ == b.terms_;
}

Polynomial Polynomial::pow(unsigned k) const {
  Polynomial result = constant(dim_, 1);
  Polynomial base = *this;
  while (k > 0) {
    if (k & 1u) result = result * base;
    k >>= 1;
    if (k > 0) base = base * base;
  }
  return result;
}

Polynomial Polynomial::derivative(std::size_t k) const {
  if (k >= dim_) throw DimensionError("derivative index out of range");
  Polynomial r(dim_);
  for (const auto& [e, c] : terms_) {
    if (e[k] == 0) continue;
    Exponent d = e;
    --d[k];
    r.add_term(d, c * e[k]);
  }
  return r;
}

namespace {

template <typename T>
T evaluate_terms(const Polynomial::TermMap& terms, std::span<const T> x,
                 auto&& convert) {
  T sum = 0;
  for (const auto& [e, c] : terms) {
    T term = convert(c);
    for (std::size_t k = 0; k < e.size(); ++k) {
      for (unsigned p = 0; p < e[k]; ++p) term *= x[k];
    }
    sum += term;
  }
  return sum;
}

}  // namespace

double Polynomial::evaluate(std::span<const double> x) const {
  require_same_dimension(dim_, x.size(), "Polynomial::evaluate");
  return evaluate_terms<double>(terms_, x, [](const Rational& c) { return c.get_d(); });
}

Rational Polynomial::evaluate(std::span<const Rational> x) const {
  require_same_dimension(dim_, x.size(), "Polynomial::evaluate");
  return evaluate_terms<Rational>(terms_, x, [](const Rational& c) { return c; });
}

VariableNames::VariableNames(std::size_t dimension) : VariableNames(dimension, {}) {}

VariableNames::VariableNames(std::size_t dimension, std::vector<std::string> aliases)
    : dim_(dimension) {
  if (!aliases.empty() && aliases.size() != dimension) {
    throw DimensionError("variable alias list must name every coordinate");
  }
  static const char* const xyz[] = {"x", "y", "z"};
  for (std::size_t k = 0; k < dimension; ++k) {
    lookup_["x" + std::to_string(k + 1)] = k;
    if (dimension <= 3) lookup_[xyz[k]] = k;
  }
  for (std::size_t k = 0; k < aliases.size(); ++k) lookup_[aliases[k]] = k;

  if (!aliases.empty()) {
    display_ = std::move(aliases);
  } else {
    for (std::size_t k = 0; k < dimension; ++k) {
      display_.push_back(dimension <= 3 ? std::string(xyz[k])
                                        : "x" + std::to_string(k + 1));
    }
  }
}

std::size_t VariableNames::index_of(const std::string& token) const {
  auto it = lookup_.find(token);
  return it == lookup_.end() ? dim_ : it->second;
}

std::string to_string(const Polynomial& p, const VariableNames& names) {
  require_same_dimension(p.dimension(), names.dimension(), "to_string");
  if (p.is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
    const auto& [e, c] = *it;
    const bool negative = sgn(c) < 0;
    const Rational mag = abs(c);
    if (first) {
      if (negative) out << '-';
    } else {
      out << (negative ? " - " : " + ");
    }
    first = false;

    std::string monomial;
    for (std::size_t k = 0; k < e.size(); ++k) {
      if (e[k] == 0) continue;
      if (!monomial.empty()) monomial += '*';
      monomial += names.name(k);
      if (e[k] > 1) monomial += '^' + std::to_string(e[k]);
    }
    if (monomial.empty()) {
      out << mag.get_str();
    } else if (mag == 1) {
      out << monomial;
    } else {
      out << mag.get_str() << '*' << monomial;
    }
  }
  return out.str();
}

std::string to_string(const Polynomial& p) {
  return to_string(p, VariableNames(p.dimension()));
}

}  // namespace foliage
