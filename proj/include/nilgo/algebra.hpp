#ifndef NILGO_ALGEBRA_HPP
#define NILGO_ALGEBRA_HPP

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "nilgo/matrix.hpp"
#include "nilgo/rational.hpp"

namespace nilgo {

/// Raised when the metric restricted to the center is singular, which puts
/// the algebra outside the scope of the v ⊕ z machinery.
struct DegenerateCenter : std::runtime_error {
  DegenerateCenter() : std::runtime_error("metric restricted to the center is degenerate") {}
};

/// One sparse structure-constant entry: [e_i, e_j] += c · e_k, stored with i < j.
struct BracketTerm {
  std::size_t i, j, k;
  Rational c;
};

struct Subspace {
  std::size_t ambient_dim = 0;
  std::vector<RatVec> basis;

  std::size_t dim() const { return basis.size(); }

  /// Ambient vector with the given coordinates in this subspace's basis.
  RatVec embed(const RatVec& coords) const {
    if (coords.size() != basis.size())
      throw std::invalid_argument("Subspace::embed: coordinate length mismatch");
    RatVec out(ambient_dim);
    for (std::size_t b = 0; b < basis.size(); ++b)
      for (std::size_t a = 0; a < ambient_dim; ++a) out[a] += coords[b] * basis[b][a];
    return out;
  }

  /// Coordinates of an ambient vector lying in this subspace.
  /// Returns nullopt when the vector is not in the span.
  std::optional<RatVec> coords_of(const RatVec& ambient) const {
    SolutionSet s = solve_affine(columns(basis, ambient_dim), ambient);
    if (s.kind != SolutionKind::Unique) return std::nullopt;
    return s.particular;
  }
};

struct CenterSplit {
  Subspace v;
  Subspace z;
  RatMatrix metric_on_v;  // Gram matrix in the v basis
  RatMatrix metric_on_z;  // Gram matrix in the z basis
};

/// Operator on the algebra (or on v when produced by j_map), in basis coordinates.
struct LinearOperator {
  RatMatrix matrix;
};

struct ValidationReport {
  bool antisymmetry_ok = true;
  bool jacobi_ok = true;
  bool metric_symmetric = true;
  bool metric_nondegenerate = true;
  bool nilpotent = true;
  std::size_t nilpotency_class = 0;
  std::vector<std::string> issues;

  bool ok() const { return issues.empty(); }
};

/// A nilpotent Lie algebra with structure constants and a pseudo-Riemannian
/// metric, both on a fixed basis. Immutable after construction.
class MetricNilAlgebra {
public:
  MetricNilAlgebra(std::size_t dim, std::vector<std::string> basis_names,
                   std::vector<BracketTerm> structure, RatMatrix metric,
                   std::string name = "")
      : name_(std::move(name)),
        dim_(dim),
        basis_names_(std::move(basis_names)),
        structure_(std::move(structure)),
        metric_(std::move(metric)) {
    if (basis_names_.empty())
      for (std::size_t i = 0; i < dim_; ++i) basis_names_.push_back("e" + std::to_string(i + 1));
    if (basis_names_.size() != dim_)
      throw std::invalid_argument("MetricNilAlgebra: basis name count != dim");
    if (metric_.rows() != dim_ || metric_.cols() != dim_)
      throw std::invalid_argument("MetricNilAlgebra: metric shape != dim x dim");
    // Dense antisymmetric tensor c[i][j][k] from the sparse i<j entries.
    c_.assign(dim_ * dim_ * dim_, Rational(0));
    for (const auto& t : structure_) {
      if (t.i >= dim_ || t.j >= dim_ || t.k >= dim_)
        throw std::invalid_argument("MetricNilAlgebra: structure index out of range");
      if (t.i >= t.j)
        throw std::invalid_argument("MetricNilAlgebra: structure entries must have i < j");
      at(t.i, t.j, t.k) += t.c;
      at(t.j, t.i, t.k) -= t.c;
    }
  }

  const std::string& name() const { return name_; }
  std::size_t dim() const { return dim_; }
  const std::vector<std::string>& basis_names() const { return basis_names_; }
  const std::vector<BracketTerm>& structure() const { return structure_; }
  const RatMatrix& metric() const { return metric_; }

  const Rational& c(std::size_t i, std::size_t j, std::size_t k) const {
    return c_[(i * dim_ + j) * dim_ + k];
  }

  RatVec basis_vector(std::size_t i) const {
    RatVec v(dim_);
    v[i] = Rational(1);
    return v;
  }

  /// [x, y] by bilinear expansion of the structure constants.
  RatVec bracket(const RatVec& x, const RatVec& y) const {
    if (x.size() != dim_ || y.size() != dim_)
      throw std::invalid_argument("bracket: coordinate length mismatch");
    RatVec out(dim_);
    for (const auto& t : structure_) {
      const Rational coef = x[t.i] * y[t.j] - x[t.j] * y[t.i];
      if (!coef.is_zero()) out[t.k] += t.c * coef;
    }
    return out;
  }

  Rational inner(const RatVec& x, const RatVec& y) const {
    Rational s;
    for (std::size_t i = 0; i < dim_; ++i) {
      if (x[i].is_zero()) continue;
      for (std::size_t j = 0; j < dim_; ++j)
        if (!metric_(i, j).is_zero()) s += x[i] * metric_(i, j) * y[j];
    }
    return s;
  }

  /// ad_x as a matrix: ad_x(y) = [x, y].
  RatMatrix ad(const RatVec& x) const {
    RatMatrix m(dim_, dim_);
    for (std::size_t j = 0; j < dim_; ++j) {
      RatVec col = bracket(x, basis_vector(j));
      for (std::size_t i = 0; i < dim_; ++i) m(i, j) = col[i];
    }
    return m;
  }

  ValidationReport validate() const {
    ValidationReport rep;
    // Antisymmetry is built into the dense tensor; check the expansion anyway.
    for (std::size_t i = 0; i < dim_; ++i)
      for (std::size_t j = 0; j < dim_; ++j)
        for (std::size_t k = 0; k < dim_; ++k)
          if (c(i, j, k) + c(j, i, k) != Rational(0)) {
            rep.antisymmetry_ok = false;
            rep.issues.push_back("antisymmetry fails at (" + basis_names_[i] + "," +
                                 basis_names_[j] + ")");
          }
    for (std::size_t i = 0; i < dim_; ++i)
      for (std::size_t j = i + 1; j < dim_; ++j)
        for (std::size_t k = j + 1; k < dim_; ++k) {
          RatVec s = bracket(basis_vector(i), bracket(basis_vector(j), basis_vector(k)));
          s = s + bracket(basis_vector(j), bracket(basis_vector(k), basis_vector(i)));
          s = s + bracket(basis_vector(k), bracket(basis_vector(i), basis_vector(j)));
          if (!is_zero(s)) {
            rep.jacobi_ok = false;
            rep.issues.push_back("Jacobi identity fails on (" + basis_names_[i] + "," +
                                 basis_names_[j] + "," + basis_names_[k] + ")");
          }
        }
    if (metric_ != metric_.transpose()) {
      rep.metric_symmetric = false;
      rep.issues.push_back("metric is not symmetric");
    }
    if (rank(metric_) != dim_) {
      rep.metric_nondegenerate = false;
      rep.issues.push_back("metric is degenerate (exact determinant is zero)");
    }
    auto cls = nilpotency_class();
    if (!cls) {
      rep.nilpotent = false;
      rep.issues.push_back("lower central series does not terminate: not nilpotent");
    } else {
      rep.nilpotency_class = *cls;
    }
    return rep;
  }

  /// Number of nonzero terms in the lower central series, or nullopt when it
  /// fails to reach zero (non-nilpotent).
  std::optional<std::size_t> nilpotency_class() const {
    std::vector<RatVec> current;
    for (std::size_t i = 0; i < dim_; ++i) current.push_back(basis_vector(i));
    std::size_t cls = 0;
    std::size_t prev_dim = dim_ + 1;
    while (!current.empty()) {
      ++cls;
      if (cls > dim_ + 1) return std::nullopt;
      std::vector<RatVec> next;
      for (std::size_t i = 0; i < dim_; ++i)
        for (const auto& w : current) {
          RatVec b = bracket(basis_vector(i), w);
          if (!is_zero(b)) next.push_back(std::move(b));
        }
      current = span_basis(next);
      if (current.size() >= prev_dim) return std::nullopt;
      prev_dim = current.size() + 1;
    }
    return cls;
  }

  /// Center as the joint null space of all ad operators, with the canonical
  /// reduced basis coming from the echelon form.
  Subspace center() const {
    RatMatrix stacked(dim_ * dim_, dim_);
    for (std::size_t i = 0; i < dim_; ++i) {
      RatMatrix adi = ad(basis_vector(i));
      for (std::size_t r = 0; r < dim_; ++r)
        for (std::size_t col = 0; col < dim_; ++col) stacked(i * dim_ + r, col) = adi(r, col);
    }
    Subspace s;
    s.ambient_dim = dim_;
    s.basis = nullspace(stacked);
    return s;
  }

  /// Orthogonal splitting n = v ⊕ z. Throws DegenerateCenter when the
  /// restricted metric on the center is singular.
  CenterSplit split_v_z() const {
    CenterSplit cs;
    cs.z = center();
    cs.metric_on_z = gram(cs.z.basis);
    if (rank(cs.metric_on_z) != cs.z.dim()) throw DegenerateCenter{};
    // v = orthogonal complement: <X, z_b> = 0 for every center basis vector.
    RatMatrix cond(cs.z.dim(), dim_);
    for (std::size_t b = 0; b < cs.z.dim(); ++b) {
      for (std::size_t j = 0; j < dim_; ++j) {
        Rational s;
        for (std::size_t i = 0; i < dim_; ++i) s += cs.z.basis[b][i] * metric_(i, j);
        cond(b, j) = s;
      }
    }
    cs.v.ambient_dim = dim_;
    cs.v.basis = nullspace(cond);
    cs.metric_on_v = gram(cs.v.basis);
    if (rank(cs.metric_on_v) != cs.v.dim() || cs.v.dim() + cs.z.dim() != dim_)
      throw DegenerateCenter{};
    return cs;
  }

  /// Decomposes an ambient vector as X + Z along the split.
  /// Returns {v-coords, z-coords} in the split's bases.
  std::pair<RatVec, RatVec> decompose(const CenterSplit& split, const RatVec& y) const {
    std::vector<RatVec> all = split.v.basis;
    all.insert(all.end(), split.z.basis.begin(), split.z.basis.end());
    SolutionSet s = solve_affine(columns(all, dim_), y);
    if (s.kind != SolutionKind::Unique)
      throw std::logic_error("decompose: split bases do not span the algebra");
    RatVec xv(s.particular.begin(), s.particular.begin() + split.v.dim());
    RatVec zz(s.particular.begin() + split.v.dim(), s.particular.end());
    return {xv, zz};
  }

  /// j(Z) on v, defined by <j(Z)X, X'> = <Z, [X, X']>. Z in z-coordinates.
  LinearOperator j_map(const CenterSplit& split, const RatVec& z_coords) const {
    const std::size_t dv = split.v.dim();
    RatVec Z = split.z.embed(z_coords);
    RatMatrix m(dv, dv);
    for (std::size_t b = 0; b < dv; ++b) {
      RatVec rhs(dv);
      for (std::size_t a = 0; a < dv; ++a)
        rhs[a] = inner(Z, bracket(split.v.basis[b], split.v.basis[a]));
      SolutionSet s = solve_affine(split.metric_on_v.transpose(), rhs);
      if (s.kind != SolutionKind::Unique)
        throw std::logic_error("j_map: metric on v is singular");
      for (std::size_t a = 0; a < dv; ++a) m(a, b) = s.particular[a];
    }
    return {std::move(m)};
  }

  /// ad-invariance of the metric, decided on all basis triples; on failure
  /// returns the first violating triple (i, j, k).
  struct AdInvarianceResult {
    bool invariant = true;
    std::size_t i = 0, j = 0, k = 0;
    Rational value;
  };
  AdInvarianceResult is_ad_invariant() const {
    for (std::size_t i = 0; i < dim_; ++i)
      for (std::size_t j = 0; j < dim_; ++j)
        for (std::size_t k = 0; k < dim_; ++k) {
          Rational s = inner(bracket(basis_vector(i), basis_vector(j)), basis_vector(k)) +
                       inner(basis_vector(j), bracket(basis_vector(i), basis_vector(k)));
          if (!s.is_zero()) return {false, i, j, k, s};
        }
    return {};
  }

  /// Polarized pseudo-H-type identity on all z-basis pairs:
  /// j(Zi)j(Zj) + j(Zj)j(Zi) = −2<Zi,Zj>·Id.
  bool is_pseudo_H_type(const CenterSplit& split) const {
    const std::size_t dz = split.z.dim(), dv = split.v.dim();
    std::vector<RatMatrix> js;
    for (std::size_t a = 0; a < dz; ++a) {
      RatVec za(dz);
      za[a] = Rational(1);
      js.push_back(j_map(split, za).matrix);
    }
    for (std::size_t a = 0; a < dz; ++a)
      for (std::size_t b = a; b < dz; ++b) {
        RatMatrix lhs = js[a] * js[b] + js[b] * js[a];
        RatMatrix rhs = (Rational(-2) * split.metric_on_z(a, b)) * RatMatrix::identity(dv);
        if (lhs != rhs) return false;
      }
    return true;
  }

  /// Gram matrix of a list of ambient vectors.
  RatMatrix gram(const std::vector<RatVec>& vs) const {
    RatMatrix g(vs.size(), vs.size());
    for (std::size_t a = 0; a < vs.size(); ++a)
      for (std::size_t b = 0; b < vs.size(); ++b) g(a, b) = inner(vs[a], vs[b]);
    return g;
  }

private:
  Rational& at(std::size_t i, std::size_t j, std::size_t k) {
    return c_[(i * dim_ + j) * dim_ + k];
  }

  static std::vector<RatVec> span_basis(const std::vector<RatVec>& vs) {
    if (vs.empty()) return {};
    RatMatrix m(vs.size(), vs[0].size());
    for (std::size_t i = 0; i < vs.size(); ++i)
      for (std::size_t j = 0; j < vs[0].size(); ++j) m(i, j) = vs[i][j];
    RrefResult r = rref(std::move(m));
    std::vector<RatVec> out;
    for (std::size_t i = 0; i < r.rank; ++i) {
      RatVec row(vs[0].size());
      for (std::size_t j = 0; j < vs[0].size(); ++j) row[j] = r.reduced(i, j);
      out.push_back(std::move(row));
    }
    return out;
  }

  std::string name_;
  std::size_t dim_;
  std::vector<std::string> basis_names_;
  std::vector<BracketTerm> structure_;
  RatMatrix metric_;
  std::vector<Rational> c_;
};

/// Re-expresses the algebra in a new basis. Columns of `p` are the new basis
/// vectors in old coordinates: new structure constants come from
/// P⁻¹[P f_a, P f_b], the new metric is Pᵀ G P.
inline MetricNilAlgebra change_basis(const MetricNilAlgebra& alg, const RatMatrix& p,
                                     std::vector<std::string> new_names = {},
                                     std::string new_name = "") {
  const std::size_t n = alg.dim();
  RatMatrix pinv = inverse(p);
  std::vector<BracketTerm> terms;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b) {
      RatVec fa(n), fb(n);
      for (std::size_t i = 0; i < n; ++i) {
        fa[i] = p(i, a);
        fb[i] = p(i, b);
      }
      RatVec br = pinv.apply(alg.bracket(fa, fb));
      for (std::size_t k = 0; k < n; ++k)
        if (!br[k].is_zero()) terms.push_back({a, b, k, br[k]});
    }
  return MetricNilAlgebra(n, std::move(new_names), std::move(terms),
                          p.transpose() * alg.metric() * p, std::move(new_name));
}

}  // namespace nilgo

#endif
