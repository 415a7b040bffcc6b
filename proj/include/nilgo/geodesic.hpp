#ifndef NILGO_GEODESIC_HPP
#define NILGO_GEODESIC_HPP

#include <algorithm>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "nilgo/algebra.hpp"
#include "nilgo/derivations.hpp"
#include "nilgo/matrix.hpp"
#include "nilgo/sampler.hpp"

namespace nilgo {

struct GeodesicCandidate {
  RatVec y;                       // algebra coordinates
  std::optional<RatMatrix> d;     // derivation, when present
  std::optional<Rational> k;
};

enum class GeodesicStatus { NotGeodesic, Unique, Family };

/// Solution set of the linear system in (ξ₁…ξ_m, k). `xi`/`k` is the
/// canonical representative (free variables zero); `family_basis` holds
/// homogeneous directions in (ξ, k)-space when the status is Family.
struct GeodesicSolution {
  GeodesicStatus status = GeodesicStatus::NotGeodesic;
  RatVec xi;
  Rational k;
  std::vector<RatVec> family_basis;   // length m+1 each, last entry the k-direction
  bool family_shares_k = true;        // true iff every family direction has k-component 0
};

/// Evaluates the geodesic lemma <[D+Y, U]_n, Y> = k<Y, U> on every basis
/// vector U. D acts as the isotropy part: [D+Y, U] = D(U) + [Y, U].
inline bool geodesic_lemma_check(const MetricNilAlgebra& alg, const RatVec& y,
                                 const std::optional<RatMatrix>& d, const Rational& k) {
  for (std::size_t u = 0; u < alg.dim(); ++u) {
    RatVec uu = alg.basis_vector(u);
    RatVec br = alg.bracket(y, uu);
    if (d) br = br + d->apply(uu);
    if (alg.inner(br, y) != k * alg.inner(y, uu)) return false;
  }
  return true;
}

/// Assembles and solves the system D(Z) + kZ = 0, D(X) + kX − j(Z)X = 0 with
/// D = Σ ξ_a D_a, jointly linear in (ξ, k). One exact affine solve; the split
/// guarantees the two conditions combine into a single ambient equation.
inline std::pair<RatMatrix, RatVec> geodesic_system(const MetricNilAlgebra& alg,
                                                    const CenterSplit& split,
                                                    const DerivationAlgebra& dera,
                                                    const RatVec& y) {
  const std::size_t n = alg.dim(), m = dera.dim();
  auto [xv, zc] = alg.decompose(split, y);
  RatVec jx = split.v.embed(alg.j_map(split, zc).matrix.apply(xv));

  RatMatrix a(n, m + 1);
  for (std::size_t col = 0; col < m; ++col) {
    RatVec dy = dera.basis()[col].matrix.apply(y);
    for (std::size_t r = 0; r < n; ++r) a(r, col) = dy[r];
  }
  for (std::size_t r = 0; r < n; ++r) a(r, m) = y[r];
  return {std::move(a), std::move(jx)};
}

inline GeodesicSolution solve_geodesic_system(const MetricNilAlgebra& alg,
                                              const CenterSplit& split,
                                              const DerivationAlgebra& dera, const RatVec& y) {
  const std::size_t m = dera.dim();
  auto [a, jx] = geodesic_system(alg, split, dera, y);
  SolutionSet s = solve_affine(a, jx);
  GeodesicSolution out;
  if (s.kind == SolutionKind::Empty) return out;
  out.status = s.kind == SolutionKind::Unique ? GeodesicStatus::Unique : GeodesicStatus::Family;
  out.xi.assign(s.particular.begin(), s.particular.begin() + m);
  out.k = s.particular[m];
  out.family_basis = s.nullspace_basis;
  for (const auto& dir : out.family_basis)
    if (!dir[m].is_zero()) out.family_shares_k = false;
  return out;
}

/// With trivial isotropy a vector is geodesic iff j(Z)X = 0; nilpotency
/// forces k = 0.
struct TrivialCheck {
  bool geodesic = false;
  Rational k;  // always 0 here
};
inline TrivialCheck trivial_isotropy_check(const MetricNilAlgebra& alg, const CenterSplit& split,
                                           const RatVec& y) {
  auto [xv, zc] = alg.decompose(split, y);
  return {is_zero(alg.j_map(split, zc).matrix.apply(xv)), Rational(0)};
}

/// Split-free version of the trivial-isotropy test, straight from the
/// geodesic lemma: solve the 1-unknown system <[Y,U],Y> = k<Y,U> over all
/// basis U. Works on algebras with degenerate center too.
inline std::optional<Rational> trivial_geodesic_constant(const MetricNilAlgebra& alg,
                                                         const RatVec& y) {
  const std::size_t n = alg.dim();
  RatMatrix a(n, 1);
  RatVec b(n);
  for (std::size_t u = 0; u < n; ++u) {
    RatVec uu = alg.basis_vector(u);
    a(u, 0) = alg.inner(y, uu);
    b[u] = alg.inner(alg.bracket(y, uu), y);
  }
  SolutionSet s = solve_affine(a, b);
  if (s.kind == SolutionKind::Empty) return std::nullopt;
  return s.kind == SolutionKind::Unique ? s.particular[0] : Rational(0);
}

/// N is a g.o. Lie group (trivial isotropy) iff the metric is ad-invariant.
inline bool go_lie_group_check(const MetricNilAlgebra& alg) {
  return alg.is_ad_invariant().invariant;
}

/// Augmenting a geodesic vector by A ∈ Der^a: A+D+Y stays geodesic iff
/// A(Y) = λY, and λ = 0 whenever <Y,Y> ≠ 0.
struct AugmentResult {
  bool geodesic = false;
  std::optional<Rational> lambda;
};
inline AugmentResult augment_check(const MetricNilAlgebra& alg, const GeodesicCandidate& cand,
                                   const Derivation& a) {
  RatVec ay = a.matrix.apply(cand.y);
  if (is_zero(cand.y)) return {is_zero(ay), Rational(0)};
  std::size_t pivot = 0;
  while (pivot < cand.y.size() && cand.y[pivot].is_zero()) ++pivot;
  Rational lambda = ay[pivot] / cand.y[pivot];
  if (!is_zero(ay - lambda * cand.y)) return {false, std::nullopt};
  if (!alg.inner(cand.y, cand.y).is_zero() && !lambda.is_zero()) return {false, std::nullopt};
  return {true, lambda};
}

enum class Verdict { GO, AlmostGO, NGOOnly, NotNGO, NotGO, GOLieGroup, BiInvariant };

enum class NullVerdict { NGO, NotNGO, EmptyNullCone, NotApplicable };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::GO: return "GO";
    case Verdict::AlmostGO: return "AlmostGO";
    case Verdict::NGOOnly: return "NGO_only";
    case Verdict::NotNGO: return "NotNGO";
    case Verdict::NotGO: return "NotGO";
    case Verdict::GOLieGroup: return "GO_LieGroup";
    case Verdict::BiInvariant: return "BiInvariant";
  }
  return "?";
}
inline const char* to_string(NullVerdict v) {
  switch (v) {
    case NullVerdict::NGO: return "NGO";
    case NullVerdict::NotNGO: return "NotNGO";
    case NullVerdict::EmptyNullCone: return "EmptyNullCone";
    case NullVerdict::NotApplicable: return "NotApplicable";
  }
  return "?";
}

struct SamplerConfig {
  std::size_t generic_samples = 1000;
  std::size_t null_samples = 500;
  std::uint64_t seed = 0;
};

struct SampleStats {
  std::size_t generic_total = 0, generic_solved = 0;
  std::size_t boundary_total = 0, boundary_solved = 0;  // <X,X> = 0 stratum
  std::size_t null_total = 0, null_solved = 0;
};

/// Sampling-based classification. The verdict is certified only through its
/// witnesses: every witness stored here re-checks exactly.
struct SpaceVerdict {
  Verdict verdict = Verdict::GO;
  NullVerdict null_verdict = NullVerdict::NotApplicable;
  std::vector<GeodesicCandidate> solvable_witnesses;
  std::vector<RatVec> unsolvable_witnesses;
  SampleStats stats;
  std::uint64_t seed = 0;
};

namespace detail {

inline std::string vec_key(const RatVec& v) {
  std::ostringstream os;
  for (const auto& x : v) os << x << ",";
  return os.str();
}

}  // namespace detail

/// Classifies the isotropy presentation N ⋊ Aut(N) by seeded sampling.
/// "Generic" means the sample lies on the open dense stratum where the
/// system matrix [D₁Y … D_mY | Y] attains its maximal rank; rational draws
/// hit the lower-rank strata with positive probability, so rank — not the
/// draw — decides the bucket. Extra draws with <X,X> = 0 and doubly-null
/// draws probe the singular strata where solvability can fail.
inline SpaceVerdict classify_space(const MetricNilAlgebra& alg, const CenterSplit& split,
                                   const DerivationAlgebra& dera, const SamplerConfig& cfg) {
  Rng rng(cfg.seed);
  SpaceVerdict out;
  out.seed = cfg.seed;
  const std::size_t max_witnesses = 8;

  enum class Bucket { Generic, Boundary, Null };
  struct Sample {
    RatVec y;
    Bucket bucket;
    std::size_t sys_rank;
  };
  std::vector<Sample> samples;
  std::size_t max_rank = 0;
  auto draw = [&](RatVec y, Bucket b) {
    std::size_t r = rank(geodesic_system(alg, split, dera, y).first);
    max_rank = std::max(max_rank, r);
    samples.push_back({std::move(y), b, r});
  };

  for (std::size_t i = 0; i < cfg.generic_samples; ++i)
    draw(rng.nonzero_vector(alg.dim()), Bucket::Generic);

  // Boundary stratum <X,X> = 0, <Z,Z> unconstrained.
  for (std::size_t i = 0; i < cfg.generic_samples / 4; ++i) {
    try {
      draw(sample_vnull(alg, split, rng), Bucket::Boundary);
    } catch (const SamplerExhausted&) {
      break;  // v-metric definite: stratum is {Z only}, covered by generic draws
    }
  }

  bool null_cone_empty = false;
  std::size_t null_draws = 0;
  for (std::size_t i = 0; i < cfg.null_samples; ++i) {
    try {
      RatVec y = i % 2 == 0 ? sample_null(alg, rng) : sample_doubly_null(alg, split, rng);
      draw(std::move(y), Bucket::Null);
      ++null_draws;
    } catch (const SamplerExhausted&) {
      if (i % 2 == 0) {
        null_cone_empty = null_draws == 0;
        break;
      }
      // doubly-null stratum may be empty while the null cone is not
    }
  }

  for (const Sample& s : samples) {
    // A draw below the maximal system rank sits on a singular stratum no
    // matter which sampler produced it.
    Bucket b = s.bucket;
    if (b == Bucket::Generic && s.sys_rank < max_rank) b = Bucket::Boundary;
    auto& total = b == Bucket::Generic   ? out.stats.generic_total
                  : b == Bucket::Boundary ? out.stats.boundary_total
                                          : out.stats.null_total;
    auto& solved = b == Bucket::Generic   ? out.stats.generic_solved
                   : b == Bucket::Boundary ? out.stats.boundary_solved
                                           : out.stats.null_solved;
    ++total;
    GeodesicSolution sol = solve_geodesic_system(alg, split, dera, s.y);
    if (sol.status == GeodesicStatus::NotGeodesic) {
      if (out.unsolvable_witnesses.size() < max_witnesses)
        out.unsolvable_witnesses.push_back(s.y);
      continue;
    }
    ++solved;
    if (out.solvable_witnesses.size() < max_witnesses)
      out.solvable_witnesses.push_back({s.y, dera.element(sol.xi), sol.k});
  }

  // Witnesses must re-check exactly before the verdict is emitted.
  for (const auto& w : out.solvable_witnesses)
    if (!geodesic_lemma_check(alg, w.y, w.d, *w.k))
      throw std::logic_error("classify_space: solvable witness failed re-check");
  for (const auto& w : out.unsolvable_witnesses)
    if (solve_geodesic_system(alg, split, dera, w).status != GeodesicStatus::NotGeodesic)
      throw std::logic_error("classify_space: unsolvable witness failed re-check");

  std::sort(out.unsolvable_witnesses.begin(), out.unsolvable_witnesses.end(),
            [](const RatVec& a, const RatVec& b) {
              return detail::vec_key(a) < detail::vec_key(b);
            });

  const bool generic_ok = out.stats.generic_solved == out.stats.generic_total;
  const bool boundary_ok = out.stats.boundary_solved == out.stats.boundary_total;
  const bool null_ok = out.stats.null_solved == out.stats.null_total;

  if (out.stats.null_total == 0 || null_cone_empty)
    out.null_verdict = NullVerdict::EmptyNullCone;
  else
    out.null_verdict = null_ok ? NullVerdict::NGO : NullVerdict::NotNGO;

  if (generic_ok && boundary_ok && null_ok)
    out.verdict = Verdict::GO;
  else if (generic_ok)
    out.verdict = Verdict::AlmostGO;
  else if (null_ok && out.stats.null_total > 0)
    out.verdict = Verdict::NGOOnly;
  else
    out.verdict = Verdict::NotGO;
  return out;
}

/// Trivial-isotropy classification: bi-invariant metrics are exactly the
/// g.o. Lie groups.
inline SpaceVerdict classify_trivial(const MetricNilAlgebra& alg, const SamplerConfig& cfg) {
  Rng rng(cfg.seed);
  SpaceVerdict out;
  out.seed = cfg.seed;
  auto inv = alg.is_ad_invariant();
  for (std::size_t i = 0; i < cfg.generic_samples; ++i) {
    RatVec y = rng.nonzero_vector(alg.dim());
    ++out.stats.generic_total;
    if (auto k = trivial_geodesic_constant(alg, y)) {
      ++out.stats.generic_solved;
      if (out.solvable_witnesses.size() < 8) out.solvable_witnesses.push_back({y, std::nullopt, *k});
    } else if (out.unsolvable_witnesses.size() < 8) {
      out.unsolvable_witnesses.push_back(y);
    }
  }
  out.verdict = inv.invariant ? Verdict::BiInvariant : Verdict::NotGO;
  out.null_verdict = NullVerdict::NotApplicable;
  return out;
}

}  // namespace nilgo

#endif
