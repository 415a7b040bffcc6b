#ifndef NILGO_FIXTURES_HPP
#define NILGO_FIXTURES_HPP

#include <stdexcept>
#include <string>
#include <vector>

#include "nilgo/algebra.hpp"
#include "nilgo/io.hpp"
#include "nilgo/matrix.hpp"
#include "nilgo/rational.hpp"

namespace nilgo::fixtures {

namespace detail {
inline RatMatrix metric_from(std::size_t n,
                             std::initializer_list<std::tuple<std::size_t, std::size_t, Rational>> sym) {
  RatMatrix g(n, n);
  for (const auto& [i, j, v] : sym) {
    g(i, j) = v;
    g(j, i) = v;
  }
  return g;
}
}  // namespace detail

/// 6-dim pseudo-H-type algebra, X-presentation:
/// [X1,X3] = X5, [X2,X4] = X6; g(X1,X4) = −1, g(X2,X3) = 1, g(X5,X6) = 2.
inline MetricNilAlgebra paper6_X() {
  std::vector<BracketTerm> terms = {
      {0, 2, 4, Rational(1)},
      {1, 3, 5, Rational(1)},
  };
  RatMatrix g = detail::metric_from(6, {{0, 3, Rational(-1)},
                                        {1, 2, Rational(1)},
                                        {4, 5, Rational(2)}});
  return MetricNilAlgebra(6, {"X1", "X2", "X3", "X4", "X5", "X6"}, std::move(terms),
                          std::move(g), "paper6_X");
}

/// Same algebra in the pseudo-orthonormal central basis:
/// e_i = X_i for i ≤ 4, e5 = X5 + ¼X6, e6 = −X5 + ¼X6, so
/// [e1,e3] = ½(e5−e6), [e2,e4] = 2(e5+e6), <e5,e5> = 1 = −<e6,e6>.
inline MetricNilAlgebra paper6_e() {
  std::vector<BracketTerm> terms = {
      {0, 2, 4, Rational(1, 2)},
      {0, 2, 5, Rational(-1, 2)},
      {1, 3, 4, Rational(2)},
      {1, 3, 5, Rational(2)},
  };
  RatMatrix g = detail::metric_from(6, {{0, 3, Rational(-1)},
                                        {1, 2, Rational(1)},
                                        {4, 4, Rational(1)},
                                        {5, 5, Rational(-1)}});
  return MetricNilAlgebra(6, {"e1", "e2", "e3", "e4", "e5", "e6"}, std::move(terms),
                          std::move(g), "paper6_e");
}

/// Columns are the e-basis vectors in X-coordinates; change_basis(paper6_X, ·)
/// reproduces paper6_e exactly.
inline RatMatrix paper6_e_in_X() {
  RatMatrix p = RatMatrix::identity(6);
  p(4, 4) = Rational(1);
  p(5, 4) = Rational(1, 4);
  p(4, 5) = Rational(-1);
  p(5, 5) = Rational(1, 4);
  return p;
}

/// Heisenberg h3 with the definite metric.
inline MetricNilAlgebra heis3_riem() {
  return MetricNilAlgebra(3, {"e1", "e2", "e3"}, {{0, 1, 2, Rational(1)}},
                          RatMatrix::identity(3), "heis3_riem");
}

/// Heisenberg h3 with a metric making the center null: <e2,e3> = 1,
/// <e3,e3> = 0. Exercises the DegenerateCenter path.
inline MetricNilAlgebra heis3_lorentz_degenerate() {
  RatMatrix g = detail::metric_from(3, {{0, 0, Rational(1)}, {1, 2, Rational(1)}});
  return MetricNilAlgebra(3, {"e1", "e2", "e3"}, {{0, 1, 2, Rational(1)}},
                          std::move(g), "heis3_lorentz_degenerate");
}

/// Abelian R^{2,1}: flat, signature (2,1).
inline MetricNilAlgebra abelian_rpq() {
  RatMatrix g = RatMatrix::identity(3);
  g(2, 2) = Rational(-1);
  return MetricNilAlgebra(3, {"e1", "e2", "e3"}, {}, std::move(g), "abelian_rpq");
}

/// Cotangent algebra T*h3 = h3 ⋉ h3* (coadjoint action) with the canonical
/// pairing metric: e1..e3 span h3 with [e1,e2] = e3, e4..e6 the dual basis,
/// [e1,e6] = −e5, [e2,e6] = e4, <e_i, e_{i+3}> = 1. The pairing metric is
/// ad-invariant, so this is the bi-invariant (g.o. with trivial isotropy)
/// fixture; its center is totally isotropic.
inline MetricNilAlgebra cotangent_h3() {
  std::vector<BracketTerm> terms = {
      {0, 1, 2, Rational(1)},
      {0, 5, 4, Rational(-1)},
      {1, 5, 3, Rational(1)},
  };
  RatMatrix g = detail::metric_from(6, {{0, 3, Rational(1)},
                                        {1, 4, Rational(1)},
                                        {2, 5, Rational(1)}});
  return MetricNilAlgebra(6, {"e1", "e2", "e3", "e4", "e5", "e6"}, std::move(terms),
                          std::move(g), "cotangent_h3");
}

/// Isometric automorphism A_τ of paper6_X for an invertible rational 2×2
/// matrix τ. Matrix acts on X-coordinates.
inline RatMatrix a_tau(const Rational& t11, const Rational& t12, const Rational& t21,
                       const Rational& t22) {
  const Rational det = t11 * t22 - t12 * t21;
  if (det.is_zero()) throw std::invalid_argument("a_tau: tau must be invertible");
  RatMatrix a(6, 6);
  a(0, 0) = t11;
  a(2, 0) = t21;
  a(1, 1) = t11 / det;
  a(3, 1) = t21 / det;
  a(0, 2) = t12;
  a(2, 2) = t22;
  a(1, 3) = t12 / det;
  a(3, 3) = t22 / det;
  a(4, 4) = det;
  a(5, 5) = Rational(1) / det;
  return a;
}

/// Representatives B1, B2, B3 of the non-identity components of the isometric
/// automorphism group of paper6_X (X-coordinates).
inline RatMatrix b_fixture(int which) {
  RatMatrix b(6, 6);
  switch (which) {
    case 1:
      b(0, 2) = Rational(1);
      b(1, 3) = Rational(1);
      b(2, 0) = Rational(-1);
      b(3, 1) = Rational(-1);
      b(4, 4) = Rational(1);
      b(5, 5) = Rational(1);
      break;
    case 2:
      b(0, 1) = Rational(1);
      b(0, 3) = Rational(1);
      b(1, 0) = Rational(1);
      b(1, 2) = Rational(1);
      b(2, 1) = Rational(1);
      b(3, 0) = Rational(1);
      b(4, 5) = Rational(-1);
      b(5, 4) = Rational(-1);
      break;
    case 3:
      b(0, 3) = Rational(1);
      b(1, 2) = Rational(1);
      b(2, 1) = Rational(1);
      b(3, 0) = Rational(1);
      b(4, 5) = Rational(-1);
      b(5, 4) = Rational(-1);
      break;
    default:
      throw std::invalid_argument("b_fixture: which must be 1, 2 or 3");
  }
  return b;
}

/// Skew-symmetric derivation basis {T, H, E, F} of paper6 in e-coordinates.
/// Nonzero brackets: [E,F] = H, [H,E] = 2E, [H,F] = −2F; T is central.
inline std::vector<RatMatrix> thef_basis() {
  RatMatrix t(6, 6), h(6, 6), e(6, 6), f(6, 6);
  t(0, 0) = Rational(1);
  t(1, 1) = Rational(-1);
  t(2, 2) = Rational(1);
  t(3, 3) = Rational(-1);
  t(4, 5) = Rational(-2);
  t(5, 4) = Rational(-2);
  h(0, 0) = Rational(1);
  h(1, 1) = Rational(1);
  h(2, 2) = Rational(-1);
  h(3, 3) = Rational(-1);
  e(0, 2) = Rational(1);
  e(1, 3) = Rational(1);
  f(2, 0) = Rational(1);
  f(3, 1) = Rational(1);
  return {t, h, e, f};
}

/// Built-in catalog as serializable descriptions.
inline std::vector<AlgebraFile> catalog() {
  std::vector<AlgebraFile> out;
  for (const MetricNilAlgebra& alg :
       {paper6_X(), paper6_e(), heis3_riem(), heis3_lorentz_degenerate(), abelian_rpq(),
        cotangent_h3()})
    out.push_back(AlgebraFile::from_algebra(alg));
  return out;
}

inline AlgebraFile catalog_entry(const std::string& name) {
  for (auto& f : catalog())
    if (f.name == name) return f;
  throw std::invalid_argument("catalog: no fixture named '" + name + "'");
}

}  // namespace nilgo::fixtures

#endif
