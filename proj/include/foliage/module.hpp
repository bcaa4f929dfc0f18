#ifndef FOLIAGE_MODULE_HPP
#define FOLIAGE_MODULE_HPP

#include <optional>
#include <variant>
#include <vector>

#include "foliage/execution.hpp"
#include "foliage/vector_field.hpp"

namespace foliage {

/// Ordered generators Y^1..Y^N of a module of polynomial vector fields.
/// The order matters: structure coefficients are indexed by it.
class GeneratorSet {
 public:
  explicit GeneratorSet(std::vector<VectorField> generators);

  std::size_t dimension() const { return generators_.front().dimension(); }
  std::size_t size() const { return generators_.size(); }
  const VectorField& operator[](std::size_t i) const { return generators_[i]; }
  const std::vector<VectorField>& generators() const { return generators_; }
  int max_degree() const;

  /// sum_j coefficients[j] * Y^j
  VectorField combine(const std::vector<Polynomial>& coefficients) const;

 private:
  std::vector<VectorField> generators_;
};

/// Polynomial coefficients f_1..f_N with sum_j f_j Y^j equal to the queried
/// field. `degree_bound` is the bound the search was asked for;
/// `degree_used` the smallest coefficient degree at which the system was
/// solvable (the certificate returned is the minimum-norm one at that degree).
struct MembershipCertificate {
  std::vector<Polynomial> coefficients;
  int degree_bound = 0;
  int degree_used = 0;
};

/// Searches coefficient degrees 0, 1, ..., degree_bound and returns the
/// exact minimum-norm solution at the first degree that admits one.
/// nullopt means "no certificate up to degree_bound", nothing more.
std::optional<MembershipCertificate> polynomial_membership(const VectorField& Z,
                                                           const GeneratorSet& gens,
                                                           int degree_bound);

/// True when sum_j f_j Y^j == Z exactly.
bool certifies(const MembershipCertificate& cert, const VectorField& Z, const GeneratorSet& gens);

/// Table of certificates for [Y^i, Y^j], indexed (i, j).
class InvolutivityTable {
 public:
  InvolutivityTable(std::size_t n, int degree_bound);

  std::size_t size() const { return n_; }
  int degree_bound() const { return bound_; }
  const std::optional<MembershipCertificate>& at(std::size_t i, std::size_t j) const {
    return entries_[i * n_ + j];
  }
  std::optional<MembershipCertificate>& at(std::size_t i, std::size_t j) {
    return entries_[i * n_ + j];
  }
  bool all_certified() const;

 private:
  std::size_t n_;
  int bound_;
  std::vector<std::optional<MembershipCertificate>> entries_;
};

/// Solves the pairs i < j (in parallel when asked), mirrors i > j with the
/// negated certificate and fills the diagonal with zero certificates.
InvolutivityTable involutivity_check(const GeneratorSet& gens, int degree_bound,
                                     Execution exec = Execution::parallel);

/// gamma(i, j) with [Y^i, X] = sum_j gamma(i, j) Y^j.
class GammaMatrix {
 public:
  GammaMatrix(std::vector<std::vector<Polynomial>> rows, VectorField field);

  std::size_t size() const { return rows_.size(); }
  const Polynomial& operator()(std::size_t i, std::size_t j) const { return rows_[i][j]; }
  const std::vector<Polynomial>& row(std::size_t i) const { return rows_[i]; }
  const VectorField& field() const { return field_; }
  std::size_t dimension() const { return field_.dimension(); }

 private:
  std::vector<std::vector<Polynomial>> rows_;
  VectorField field_;
};

struct GammaNotFound {
  std::size_t row;  ///< first generator index whose bracket had no certificate
  int degree_bound;
};

/// Structure coefficients of X against the generators. Rows are independent
/// systems; the parallel and serial paths return identical matrices.
std::variant<GammaMatrix, GammaNotFound> solve_gamma(const VectorField& X, const GeneratorSet& gens,
                                                     int degree_bound,
                                                     Execution exec = Execution::parallel);

/// deg(Z) + max generator degree + 2 (with deg 0 == 0).
int default_degree_bound(const VectorField& Z, const GeneratorSet& gens);

}  // namespace foliage

#endif  // FOLIAGE_MODULE_HPP
