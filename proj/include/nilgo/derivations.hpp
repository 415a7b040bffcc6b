#ifndef NILGO_DERIVATIONS_HPP
#define NILGO_DERIVATIONS_HPP

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "nilgo/algebra.hpp"
#include "nilgo/matrix.hpp"

namespace nilgo {

/// Linear operator on the algebra satisfying the Leibniz rule, optionally
/// also metric-skew.
struct Derivation {
  RatMatrix matrix;
  bool skew = false;
};

inline bool satisfies_leibniz(const MetricNilAlgebra& alg, const RatMatrix& d) {
  const std::size_t n = alg.dim();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      RatVec ei = alg.basis_vector(i), ej = alg.basis_vector(j);
      RatVec lhs = d.apply(alg.bracket(ei, ej));
      RatVec rhs = alg.bracket(d.apply(ei), ej) + alg.bracket(ei, d.apply(ej));
      if (!is_zero(lhs - rhs)) return false;
    }
  return true;
}

inline bool is_metric_skew(const MetricNilAlgebra& alg, const RatMatrix& d) {
  // G·D + Dᵀ·G = 0
  return (alg.metric() * d + d.transpose() * alg.metric()).is_zero();
}

namespace detail {

/// Rows of the Leibniz constraint system in the dim² unknowns D[a][b].
inline RatMatrix leibniz_system(const MetricNilAlgebra& alg) {
  const std::size_t n = alg.dim();
  auto idx = [n](std::size_t a, std::size_t b) { return a * n + b; };
  std::vector<RatVec> rows;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      RatVec bij = alg.bracket(alg.basis_vector(i), alg.basis_vector(j));
      for (std::size_t k = 0; k < n; ++k) {
        RatVec row(n * n);
        for (std::size_t m = 0; m < n; ++m) row[idx(k, m)] += bij[m];
        for (std::size_t a = 0; a < n; ++a) {
          row[idx(a, i)] -= alg.c(a, j, k);
          row[idx(a, j)] -= alg.c(i, a, k);
        }
        rows.push_back(std::move(row));
      }
    }
  RatMatrix m(rows.size(), n * n);
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < n * n; ++c) m(r, c) = rows[r][c];
  return m;
}

/// Rows of the metric-skewness constraints, same unknowns.
inline RatMatrix skew_system(const MetricNilAlgebra& alg) {
  const std::size_t n = alg.dim();
  auto idx = [n](std::size_t a, std::size_t b) { return a * n + b; };
  std::vector<RatVec> rows;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      RatVec row(n * n);
      for (std::size_t a = 0; a < n; ++a) {
        row[idx(a, i)] += alg.metric()(a, j);
        row[idx(a, j)] += alg.metric()(i, a);
      }
      rows.push_back(std::move(row));
    }
  RatMatrix m(rows.size(), n * n);
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < n * n; ++c) m(r, c) = rows[r][c];
  return m;
}

inline RatMatrix stack(const RatMatrix& a, const RatMatrix& b) {
  RatMatrix m(a.rows() + b.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = a(i, j);
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) m(a.rows() + i, j) = b(i, j);
  return m;
}

inline RatMatrix unflatten(const RatVec& v, std::size_t n) {
  RatMatrix m(n, n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) m(a, b) = v[a * n + b];
  return m;
}

inline RatVec flatten(const RatMatrix& m) {
  RatVec v;
  v.reserve(m.rows() * m.cols());
  for (std::size_t a = 0; a < m.rows(); ++a)
    for (std::size_t b = 0; b < m.cols(); ++b) v.push_back(m(a, b));
  return v;
}

}  // namespace detail

/// Basis of Der(n): all operators with the Leibniz property.
inline std::vector<Derivation> derivation_space(const MetricNilAlgebra& alg) {
  std::vector<Derivation> out;
  for (const RatVec& v : nullspace(detail::leibniz_system(alg)))
    out.push_back({detail::unflatten(v, alg.dim()), false});
  return out;
}

/// Der^a(n) with structure constants computed from exact commutators.
class DerivationAlgebra {
public:
  DerivationAlgebra(const MetricNilAlgebra& alg, std::vector<Derivation> basis)
      : alg_(&alg), basis_(std::move(basis)) {
    compute_structure();
  }

  const MetricNilAlgebra& algebra() const { return *alg_; }
  const std::vector<Derivation>& basis() const { return basis_; }
  std::size_t dim() const { return basis_.size(); }

  /// Coordinates of [D_a, D_b] in the basis.
  const RatVec& bracket_coords(std::size_t a, std::size_t b) const {
    return structure_[a * basis_.size() + b];
  }

  /// Element Σ ξ_a D_a as a matrix.
  RatMatrix element(const RatVec& xi) const {
    if (xi.size() != basis_.size())
      throw std::invalid_argument("DerivationAlgebra::element: coordinate length mismatch");
    RatMatrix m(alg_->dim(), alg_->dim());
    for (std::size_t a = 0; a < basis_.size(); ++a)
      if (!xi[a].is_zero()) m = m + xi[a] * basis_[a].matrix;
    return m;
  }

  /// Coordinates of a matrix in the span, or nullopt if outside it.
  std::optional<RatVec> coords_of(const RatMatrix& m) const {
    std::vector<RatVec> cols;
    for (const auto& d : basis_) cols.push_back(detail::flatten(d.matrix));
    SolutionSet s = solve_affine(columns(cols, alg_->dim() * alg_->dim()), detail::flatten(m));
    if (s.kind != SolutionKind::Unique) return std::nullopt;
    return s.particular;
  }

  /// Same span, expressed in a caller-supplied basis (used to align the
  /// computed echelon basis with a reference presentation). Every supplied
  /// matrix must lie in the span and the set must be independent.
  DerivationAlgebra with_basis(const std::vector<RatMatrix>& mats) const {
    if (mats.size() != basis_.size())
      throw std::invalid_argument("with_basis: dimension mismatch");
    std::vector<Derivation> nb;
    for (const auto& m : mats) {
      if (!coords_of(m)) throw std::invalid_argument("with_basis: matrix outside the span");
      nb.push_back({m, true});
    }
    std::vector<RatVec> cols;
    for (const auto& m : mats) cols.push_back(detail::flatten(m));
    if (rank(columns(cols, alg_->dim() * alg_->dim())) != mats.size())
      throw std::invalid_argument("with_basis: matrices are dependent");
    return DerivationAlgebra(*alg_, std::move(nb));
  }

private:
  void compute_structure() {
    const std::size_t m = basis_.size();
    structure_.assign(m * m, RatVec(m));
    for (std::size_t a = 0; a < m; ++a)
      for (std::size_t b = 0; b < m; ++b) {
        RatMatrix comm = basis_[a].matrix * basis_[b].matrix - basis_[b].matrix * basis_[a].matrix;
        auto coords = coords_of(comm);
        if (!coords)
          throw std::logic_error("DerivationAlgebra: basis not closed under commutator");
        structure_[a * m + b] = *coords;
      }
  }

  const MetricNilAlgebra* alg_;
  std::vector<Derivation> basis_;
  std::vector<RatVec> structure_;
};

/// Der^a(n) = {Leibniz} ∩ {metric-skew}, as the null space of the combined
/// linear system.
inline DerivationAlgebra skew_derivation_space(const MetricNilAlgebra& alg) {
  RatMatrix sys = detail::stack(detail::leibniz_system(alg), detail::skew_system(alg));
  std::vector<Derivation> basis;
  for (const RatVec& v : nullspace(sys)) basis.push_back({detail::unflatten(v, alg.dim()), true});
  return DerivationAlgebra(alg, std::move(basis));
}

/// D·z ⊆ z and D·v ⊆ v.
inline bool check_preserves_split(const Derivation& d, const CenterSplit& split) {
  for (const auto& zb : split.z.basis) {
    SolutionSet s = solve_affine(columns(split.z.basis, split.z.ambient_dim), d.matrix.apply(zb));
    if (s.kind == SolutionKind::Empty) return false;
  }
  for (const auto& vb : split.v.basis) {
    SolutionSet s = solve_affine(columns(split.v.basis, split.v.ambient_dim), d.matrix.apply(vb));
    if (s.kind == SolutionKind::Empty) return false;
  }
  return true;
}

}  // namespace nilgo

#endif
