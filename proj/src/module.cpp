#include "foliage/module.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "foliage/rational_system.hpp"

namespace foliage {

GeneratorSet::GeneratorSet(std::vector<VectorField> generators)
    : generators_(std::move(generators)) {
  if (generators_.empty()) throw std::invalid_argument("generator set must not be empty");
  for (const auto& Y : generators_) {
    require_same_dimension(generators_.front().dimension(), Y.dimension(), "GeneratorSet");
  }
}

int GeneratorSet::max_degree() const {
  int d = -1;
  for (const auto& Y : generators_) d = std::max(d, Y.degree());
  return d;
}

VectorField GeneratorSet::combine(const std::vector<Polynomial>& coefficients) const {
  if (coefficients.size() != size()) throw DimensionError("coefficient count != generator count");
  VectorField sum(dimension());
  for (std::size_t j = 0; j < size(); ++j) {
    if (!coefficients[j].is_zero()) sum += coefficients[j] * generators_[j];
  }
  return sum;
}

int default_degree_bound(const VectorField& Z, const GeneratorSet& gens) {
  return std::max(Z.degree(), 0) + std::max(gens.max_degree(), 0) + 2;
}

namespace {

// Exponents of total degree <= d in ascending graded-lex order.
std::vector<Exponent> monomials_up_to(std::size_t n, unsigned d) {
  std::vector<Exponent> out;
  Exponent e(n, 0);
  // Enumerate the box [0, d]^n and keep those with total degree <= d.
  for (;;) {
    if (total_degree(e) <= d) out.push_back(e);
    std::size_t k = 0;
    while (k < n && ++e[k] > d) e[k++] = 0;
    if (k == n) break;
  }
  std::sort(out.begin(), out.end(), GradedLexLess{});
  return out;
}

std::optional<std::vector<Polynomial>> solve_at_degree(const VectorField& Z,
                                                       const GeneratorSet& gens, unsigned d) {
  const std::size_t n = gens.dimension();
  const std::size_t N = gens.size();
  const auto basis = monomials_up_to(n, d);

  // Unknown c_{j,alpha}: column alpha_index * N + j (canonical order).
  using RowKey = std::pair<std::size_t, Exponent>;
  std::map<RowKey, std::size_t> row_of;
  auto row_index = [&](std::size_t k, const Exponent& e) {
    auto [it, inserted] = row_of.try_emplace(RowKey{k, e}, row_of.size());
    return it->second;
  };
  struct Entry {
    std::size_t row, col;
    Rational value;
  };
  std::vector<Entry> entries;
  Exponent shifted(n);
  for (std::size_t a = 0; a < basis.size(); ++a) {
    for (std::size_t j = 0; j < N; ++j) {
      for (std::size_t k = 0; k < n; ++k) {
        for (const auto& [e, c] : gens[j].component(k).terms()) {
          for (std::size_t v = 0; v < n; ++v) shifted[v] = e[v] + basis[a][v];
          entries.push_back({row_index(k, shifted), a * N + j, c});
        }
      }
    }
  }
  for (std::size_t k = 0; k < n; ++k) {
    for (const auto& [e, c] : Z.component(k).terms()) row_index(k, e);
  }

  RationalMatrix A(row_of.size(), basis.size() * N);
  for (const auto& en : entries) A(en.row, en.col) += en.value;
  std::vector<Rational> b(row_of.size());
  for (std::size_t k = 0; k < n; ++k) {
    for (const auto& [e, c] : Z.component(k).terms()) b[row_of.at(RowKey{k, e})] = c;
  }

  auto x = minimum_norm_solution(A, b);
  if (!x) return std::nullopt;
  std::vector<Polynomial> coeffs(N, Polynomial(n));
  for (std::size_t a = 0; a < basis.size(); ++a) {
    for (std::size_t j = 0; j < N; ++j) coeffs[j].add_term(basis[a], (*x)[a * N + j]);
  }
  return coeffs;
}

}  // namespace

bool certifies(const MembershipCertificate& cert, const VectorField& Z, const GeneratorSet& gens) {
  return cert.coefficients.size() == gens.size() && gens.combine(cert.coefficients) == Z;
}

std::optional<MembershipCertificate> polynomial_membership(const VectorField& Z,
                                                           const GeneratorSet& gens,
                                                           int degree_bound) {
  require_same_dimension(Z.dimension(), gens.dimension(), "polynomial_membership");
  if (degree_bound < 0) throw std::invalid_argument("degree bound must be >= 0");
  for (int d = 0; d <= degree_bound; ++d) {
    auto coeffs = solve_at_degree(Z, gens, static_cast<unsigned>(d));
    if (!coeffs) continue;
    MembershipCertificate cert{std::move(*coeffs), degree_bound, d};
    if (!certifies(cert, Z, gens)) {
      throw std::logic_error("polynomial_membership: certificate failed to re-expand");
    }
    return cert;
  }
  return std::nullopt;
}

InvolutivityTable::InvolutivityTable(std::size_t n, int degree_bound)
    : n_(n), bound_(degree_bound), entries_(n * n) {}

bool InvolutivityTable::all_certified() const {
  return std::all_of(entries_.begin(), entries_.end(), [](const auto& e) { return e.has_value(); });
}

InvolutivityTable involutivity_check(const GeneratorSet& gens, int degree_bound, Execution exec) {
  if (degree_bound < 0) throw std::invalid_argument("degree bound must be >= 0");
  const std::size_t N = gens.size();
  InvolutivityTable table(N, degree_bound);

  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < N; ++i) {
    for (std::size_t j = i + 1; j < N; ++j) pairs.emplace_back(i, j);
  }
  auto solve_pair = [&](std::size_t p) {
    const auto [i, j] = pairs[p];
    table.at(i, j) = polynomial_membership(lie_bracket(gens[i], gens[j]), gens, degree_bound);
  };
  const long count = static_cast<long>(pairs.size());
  if (exec == Execution::parallel) {
#pragma omp parallel for schedule(dynamic)
    for (long p = 0; p < count; ++p) solve_pair(static_cast<std::size_t>(p));
  } else {
    for (long p = 0; p < count; ++p) solve_pair(static_cast<std::size_t>(p));
  }

  const std::size_t n = gens.dimension();
  for (std::size_t i = 0; i < N; ++i) {
    table.at(i, i) = MembershipCertificate{std::vector<Polynomial>(N, Polynomial(n)), degree_bound, 0};
    for (std::size_t j = 0; j < i; ++j) {
      if (const auto& upper = table.at(j, i)) {
        MembershipCertificate mirrored = *upper;
        for (auto& f : mirrored.coefficients) f = -f;
        table.at(i, j) = std::move(mirrored);
      }
    }
  }
  return table;
}

GammaMatrix::GammaMatrix(std::vector<std::vector<Polynomial>> rows, VectorField field)
    : rows_(std::move(rows)), field_(std::move(field)) {
  for (const auto& r : rows_) {
    if (r.size() != rows_.size()) throw DimensionError("gamma matrix must be square");
  }
}

std::variant<GammaMatrix, GammaNotFound> solve_gamma(const VectorField& X, const GeneratorSet& gens,
                                                     int degree_bound, Execution exec) {
  require_same_dimension(X.dimension(), gens.dimension(), "solve_gamma");
  const std::size_t N = gens.size();
  std::vector<std::optional<MembershipCertificate>> rows(N);
  auto solve_row = [&](std::size_t i) {
    rows[i] = polynomial_membership(lie_bracket(gens[i], X), gens, degree_bound);
  };
  const long count = static_cast<long>(N);
  if (exec == Execution::parallel) {
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < count; ++i) solve_row(static_cast<std::size_t>(i));
  } else {
    for (long i = 0; i < count; ++i) solve_row(static_cast<std::size_t>(i));
  }

  std::vector<std::vector<Polynomial>> gamma;
  gamma.reserve(N);
  for (std::size_t i = 0; i < N; ++i) {
    if (!rows[i]) return GammaNotFound{i, degree_bound};
    gamma.push_back(std::move(rows[i]->coefficients));
  }
  return GammaMatrix(std::move(gamma), X);
}

}  // namespace foliage
