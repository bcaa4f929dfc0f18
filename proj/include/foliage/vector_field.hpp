#ifndef FOLIAGE_VECTOR_FIELD_HPP
#define FOLIAGE_VECTOR_FIELD_HPP

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "foliage/polynomial.hpp"

namespace foliage {

/// Polynomial vector field sum_k X_k d/dx_k on a chart of R^n.
class VectorField {
 public:
  explicit VectorField(std::size_t dimension);
  explicit VectorField(std::vector<Polynomial> components);

  static VectorField zero(std::size_t dimension) { return VectorField(dimension); }
  /// The coordinate field d/dx_{k+1}.
  static VectorField coordinate(std::size_t dimension, std::size_t k);

  std::size_t dimension() const { return components_.size(); }
  const Polynomial& component(std::size_t k) const { return components_.at(k); }
  const std::vector<Polynomial>& components() const { return components_; }
  bool is_zero() const;
  /// Maximum component degree; -1 for the zero field.
  int degree() const;

  VectorField operator-() const;
  VectorField& operator+=(const VectorField& other);
  VectorField& operator-=(const VectorField& other);
  friend VectorField operator+(VectorField a, const VectorField& b) { return a += b; }
  friend VectorField operator-(VectorField a, const VectorField& b) { return a -= b; }
  friend VectorField operator*(const Polynomial& f, const VectorField& X);
  friend VectorField operator*(const Rational& c, const VectorField& X);
  friend bool operator==(const VectorField& a, const VectorField& b) = default;

  /// Directional derivative X(f) = sum_m X_m df/dx_m.
  Polynomial apply(const Polynomial& f) const;

  std::vector<double> evaluate(std::span<const double> x) const;

 private:
  std::vector<Polynomial> components_;
};

/// Evaluates X at x. Throws DimensionError if x has the wrong length.
std::vector<double> evaluate(const VectorField& X, std::span<const double> x);

/// [X,Y]_k = sum_m (X_m dY_k/dx_m - Y_m dX_k/dx_m), computed exactly.
VectorField lie_bracket(const VectorField& X, const VectorField& Y);

/// Splits [Y, f X] into (Y(f) X, f [Y,X]); the two parts sum to the bracket.
std::pair<VectorField, VectorField> leibniz_expand(const Polynomial& f,
                                                   const VectorField& X,
                                                   const VectorField& Y);

/// Canonical text such as "x*dy - y*dx"; components listed by coordinate.
std::string to_string(const VectorField& X, const VariableNames& names);
std::string to_string(const VectorField& X);

/// Closed axis-aligned box standing in for the chart domain.
class ChartBox {
 public:
  ChartBox(std::vector<double> lo, std::vector<double> hi);
  /// [lo, hi]^n
  static ChartBox cube(std::size_t dimension, double lo, double hi);

  std::size_t dimension() const { return lo_.size(); }
  double lo(std::size_t k) const { return lo_[k]; }
  double hi(std::size_t k) const { return hi_[k]; }
  bool contains(std::span<const double> x) const;

 private:
  std::vector<double> lo_;
  std::vector<double> hi_;
};

}  // namespace foliage

#endif  // FOLIAGE_VECTOR_FIELD_HPP
