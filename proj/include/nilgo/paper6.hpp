#ifndef NILGO_PAPER6_HPP
#define NILGO_PAPER6_HPP

#include <stdexcept>
#include <vector>

#include "nilgo/geodesic.hpp"
#include "nilgo/matrix.hpp"
#include "nilgo/rational.hpp"

// Closed forms specific to the 6-dimensional pseudo-H-type fixture
// (catalog entries paper6_X / paper6_e). Everything here takes coordinates
// in the e-basis: Y = (x1, x2, x3, x4, z5, z6) with
// [e1,e3] = ½(e5−e6), [e2,e4] = 2(e5+e6),
// <e1,e4> = −1, <e2,e3> = 1, <e5,e5> = 1, <e6,e6> = −1.
// These formulas are used as independent oracles against the generic solver.

namespace nilgo::paper6 {

struct ZeroDenominator : std::domain_error {
  ZeroDenominator() : std::domain_error("closed form needs <X,X> != 0; use the generic solver") {}
};

inline void require_dim6(const RatVec& y) {
  if (y.size() != 6) throw std::invalid_argument("paper6: expected 6 coordinates");
}

/// <X,X> = 2(x3·x2 − x1·x4) for the v-part.
inline Rational v_norm(const RatVec& y) {
  require_dim6(y);
  return Rational(2) * (y[2] * y[1] - y[0] * y[3]);
}

/// <Z,Z> = z5² − z6² for the central part.
inline Rational z_norm(const RatVec& y) {
  require_dim6(y);
  return y[4] * y[4] - y[5] * y[5];
}

/// The three rank conditions deciding solvability on the <X,X> = 0 stratum.
inline bool rank_conditions_hold(const RatVec& y) {
  require_dim6(y);
  const Rational &x1 = y[0], &x2 = y[1], &x3 = y[2], &x4 = y[3], &z5 = y[4], &z6 = y[5];
  Rational r1 = z6 * (x3 * x3 - Rational(4) * x4 * x4) + z5 * (Rational(4) * x4 * x4 + x3 * x3);
  Rational r2 = z6 * (x1 * x1 - Rational(4) * x2 * x2) + z5 * (Rational(4) * x2 * x2 + x1 * x1);
  Rational r3 = z6 * (x3 * x1 - Rational(4) * x2 * x4) + z5 * (x3 * x1 + Rational(4) * x2 * x4);
  return r1.is_zero() && r2.is_zero() && r3.is_zero();
}

/// Unique geodesic-graph value (ξ, k=0) on the open dense set <X,X> ≠ 0,
/// in the {T, H, E, F} basis.
inline GeodesicSolution closed_form_graph(const RatVec& y) {
  require_dim6(y);
  const Rational &x1 = y[0], &x2 = y[1], &x3 = y[2], &x4 = y[3], &z5 = y[4], &z6 = y[5];
  const Rational nx = v_norm(y);
  if (nx.is_zero()) throw ZeroDenominator{};
  GeodesicSolution s;
  s.status = GeodesicStatus::Unique;
  s.k = Rational(0);
  s.xi.assign(4, Rational(0));
  s.xi[1] = (z5 * (Rational(4) * x4 * x2 + x1 * x3) + z6 * (x1 * x3 - Rational(4) * x4 * x2)) / nx;
  s.xi[2] = -(z5 * (Rational(4) * x2 * x2 + x1 * x1) + z6 * (x1 * x1 - Rational(4) * x2 * x2)) / nx;
  s.xi[3] = (z5 * (Rational(4) * x4 * x4 + x3 * x3) + z6 * (x3 * x3 - Rational(4) * x4 * x4)) / nx;
  return s;
}

enum class Membership { U, V0, V1, V2_W, V2_other };

inline const char* to_string(Membership m) {
  switch (m) {
    case Membership::U: return "U";
    case Membership::V0: return "V0";
    case Membership::V1: return "V1";
    case Membership::V2_W: return "V2_W";
    case Membership::V2_other: return "V2_other";
  }
  return "?";
}

/// Exact stratum membership: U (dense, unique solution), V0 (no solution),
/// V1 (solution family), V2 = doubly null with the W subset carrying k ≠ 0.
inline Membership classify_membership(const RatVec& y) {
  require_dim6(y);
  if (!v_norm(y).is_zero()) return Membership::U;
  if (!z_norm(y).is_zero())
    return rank_conditions_hold(y) ? Membership::V1 : Membership::V0;
  const Rational &x1 = y[0], &x2 = y[1], &z5 = y[4], &z6 = y[5];
  if (z5 == z6 && !z5.is_zero() && !(x1 * x2).is_zero()) return Membership::V2_W;
  return Membership::V2_other;
}

/// The W-set solution family: k = −x1·z5/x2 ≠ 0, ξ₁ = k/2, ξ₃ free.
/// Representative has ξ₃ = 0; the family direction is the ξ₃-derivative.
inline GeodesicSolution w_family(const RatVec& y) {
  require_dim6(y);
  if (classify_membership(y) != Membership::V2_W)
    throw std::invalid_argument("w_family: vector is not in the W set");
  const Rational &x1 = y[0], &x2 = y[1], &x3 = y[2], &z5 = y[4];
  GeodesicSolution s;
  s.status = GeodesicStatus::Family;
  s.k = -(x1 * z5) / x2;
  s.xi.assign(4, Rational(0));
  s.xi[0] = s.k / Rational(2);
  s.xi[1] = Rational(3, 2) * (x1 * z5) / x2;
  s.xi[3] = Rational(3) * (x3 * z5) / x2;
  RatVec dir(5, Rational(0));  // (ξ, k)-direction for ξ₃ → ξ₃ + 1
  dir[1] = -x3 / x1;
  dir[2] = Rational(1);
  dir[3] = -(x3 * x3) / (x1 * x1);
  s.family_basis.push_back(std::move(dir));
  return s;
}

/// The curve γ(t) = (x1+t², x2, x3, x4+t⁴, z5+t, z6) leaving the singular
/// stratum V into U.
inline RatVec divergence_curve(const RatVec& y, const Rational& t) {
  require_dim6(y);
  RatVec g = y;
  g[0] = y[0] + t * t;
  g[3] = y[3] + t * t * t * t;
  g[4] = y[4] + t;
  return g;
}

/// ξ₃ along the divergence curve, in the closed form
/// ½ [ (y1+t²)² (y5+t+y6) + 4 y2² (y5+t−y6) ] / (t⁶ + t⁴ y1 + t² y4).
inline Rational xi3_on_curve(const RatVec& y, const Rational& t) {
  require_dim6(y);
  if (!v_norm(y).is_zero())
    throw std::invalid_argument("xi3_on_curve: base point must lie in V (<X,X> = 0)");
  const Rational &y1 = y[0], &y2 = y[1], &y4 = y[3], &y5 = y[4], &y6 = y[5];
  const Rational t2 = t * t;
  Rational num = (y1 + t2) * (y1 + t2) * (y5 + t + y6) +
                 Rational(4) * y2 * y2 * (y5 + t - y6);
  Rational den = t2 * t2 * t2 + t2 * t2 * y1 + t2 * y4;
  if (den.is_zero()) throw ZeroDenominator{};
  return Rational(1, 2) * num / den;
}

/// Samples ξ₃(γ(t)) for a list of parameters.
inline std::vector<Rational> xi3_limit_scan(const RatVec& y, const std::vector<Rational>& ts) {
  std::vector<Rational> out;
  out.reserve(ts.size());
  for (const auto& t : ts) out.push_back(xi3_on_curve(y, t));
  return out;
}

}  // namespace nilgo::paper6

#endif
