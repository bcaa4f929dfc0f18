#include "foliage/vector_field.hpp"

#include <algorithm>
#include <cmath>

namespace foliage {

VectorField::VectorField(std::size_t dimension)
    : components_(dimension, Polynomial(std::max<std::size_t>(dimension, 1))) {
  if (dimension == 0) throw DimensionError("vector field dimension must be >= 1");
}

VectorField::VectorField(std::vector<Polynomial> components)
    : components_(std::move(components)) {
  if (components_.empty()) throw DimensionError("vector field needs components");
  for (const auto& c : components_) {
    require_same_dimension(components_.size(), c.dimension(), "VectorField");
  }
}

VectorField VectorField::coordinate(std::size_t dimension, std::size_t k) {
  VectorField X(dimension);
  X.components_.at(k) = Polynomial::constant(dimension, 1);
  return X;
}

bool VectorField::is_zero() const {
  return std::all_of(components_.begin(), components_.end(),
                     [](const Polynomial& p) { return p.is_zero(); });
}

int VectorField::degree() const {
  int d = -1;
  for (const auto& c : components_) d = std::max(d, c.degree());
  return d;
}

VectorField VectorField::operator-() const {
  VectorField r(*this);
  for (auto& c : r.components_) c = -c;
  return r;
}

VectorField& VectorField::operator+=(const VectorField& other) {
  require_same_dimension(dimension(), other.dimension(), "VectorField::operator+");
  for (std::size_t k = 0; k < components_.size(); ++k) components_[k] += other.components_[k];
  return *this;
}

VectorField& VectorField::operator-=(const VectorField& other) {
  require_same_dimension(dimension(), other.dimension(), "VectorField::operator-");
  for (std::size_t k = 0; k < components_.size(); ++k) components_[k] -= other.components_[k];
  return *this;
}

VectorField operator*(const Polynomial& f, const VectorField& X) {
  require_same_dimension(f.dimension(), X.dimension(), "VectorField scaling");
  VectorField r(X);
  for (auto& c : r.components_) c = f * c;
  return r;
}

VectorField operator*(const Rational& c, const VectorField& X) {
  VectorField r(X);
  for (auto& p : r.components_) p *= c;
  return r;
}

Polynomial VectorField::apply(const Polynomial& f) const {
  require_same_dimension(dimension(), f.dimension(), "VectorField::apply");
  Polynomial r(dimension());
  for (std::size_t m = 0; m < dimension(); ++m) {
    if (components_[m].is_zero()) continue;
    r += components_[m] * f.derivative(m);
  }
  return r;
}

std::vector<double> VectorField::evaluate(std::span<const double> x) const {
  require_same_dimension(dimension(), x.size(), "evaluate");
  std::vector<double> v(dimension());
  for (std::size_t k = 0; k < dimension(); ++k) v[k] = components_[k].evaluate(x);
  return v;
}

std::vector<double> evaluate(const VectorField& X, std::span<const double> x) {
  return X.evaluate(x);
}

VectorField lie_bracket(const VectorField& X, const VectorField& Y) {
  require_same_dimension(X.dimension(), Y.dimension(), "lie_bracket");
  std::vector<Polynomial> out;
  out.reserve(X.dimension());
  for (std::size_t k = 0; k < X.dimension(); ++k) {
    out.push_back(X.apply(Y.component(k)) - Y.apply(X.component(k)));
  }
  return VectorField(std::move(out));
}

std::pair<VectorField, VectorField> leibniz_expand(const Polynomial& f,
                                                   const VectorField& X,
                                                   const VectorField& Y) {
  require_same_dimension(X.dimension(), Y.dimension(), "leibniz_expand");
  require_same_dimension(f.dimension(), X.dimension(), "leibniz_expand");
  return {Y.apply(f) * X, f * lie_bracket(Y, X)};
}

std::string to_string(const VectorField& X, const VariableNames& names) {
  require_same_dimension(X.dimension(), names.dimension(), "to_string");
  std::string out;
  for (std::size_t k = 0; k < X.dimension(); ++k) {
    const Polynomial& c = X.component(k);
    if (c.is_zero()) continue;
    const std::string basis = "d" + names.name(k);
    std::string coeff = to_string(c, names);
    // Single terms need no parentheses; "-x" prints as "-x*dy".
    const bool single = c.terms().size() == 1;
    std::string term;
    if (single && coeff == "1") {
      term = basis;
    } else if (single && coeff == "-1") {
      term = "-" + basis;
    } else if (single) {
      term = coeff + "*" + basis;
    } else {
      term = "(" + coeff + ")*" + basis;
    }
    if (out.empty()) {
      out = term;
    } else if (term.front() == '-') {
      out += " - " + term.substr(1);
    } else {
      out += " + " + term;
    }
  }
  return out.empty() ? "0" : out;
}

std::string to_string(const VectorField& X) {
  return to_string(X, VariableNames(X.dimension()));
}

ChartBox::ChartBox(std::vector<double> lo, std::vector<double> hi)
    : lo_(std::move(lo)), hi_(std::move(hi)) {
  require_same_dimension(lo_.size(), hi_.size(), "ChartBox");
  if (lo_.empty()) throw DimensionError("chart box dimension must be >= 1");
  for (std::size_t k = 0; k < lo_.size(); ++k) {
    if (!(lo_[k] < hi_[k]) || !std::isfinite(lo_[k]) || !std::isfinite(hi_[k])) {
      throw std::invalid_argument("chart box axis " + std::to_string(k + 1) +
                                  " needs finite lo < hi");
    }
  }
}

ChartBox ChartBox::cube(std::size_t dimension, double lo, double hi) {
  return ChartBox(std::vector<double>(dimension, lo), std::vector<double>(dimension, hi));
}

bool ChartBox::contains(std::span<const double> x) const {
  require_same_dimension(dimension(), x.size(), "ChartBox::contains");
  for (std::size_t k = 0; k < x.size(); ++k) {
    if (!(x[k] >= lo_[k] && x[k] <= hi_[k])) return false;
  }
  return true;
}

}  // namespace foliage
