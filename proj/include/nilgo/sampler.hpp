#ifndef NILGO_SAMPLER_HPP
#define NILGO_SAMPLER_HPP

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "nilgo/algebra.hpp"
#include "nilgo/matrix.hpp"
#include "nilgo/rational.hpp"

namespace nilgo {

struct SamplerExhausted : std::runtime_error {
  SamplerExhausted(const char* what) : std::runtime_error(what) {}
};

/// Deterministic splitmix64 stream. Not std::uniform_int_distribution: its
/// output is implementation-defined and the report contract requires
/// byte-identical reproducibility.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform in [lo, hi], inclusive.
  long range(long lo, long hi) {
    return lo + static_cast<long>(next() % static_cast<std::uint64_t>(hi - lo + 1));
  }

  /// Numerator in [−9, 9], denominator in [1, 9].
  Rational rational() { return Rational(range(-9, 9), range(1, 9)); }

  RatVec vector(std::size_t n) {
    RatVec v(n);
    for (auto& x : v) x = rational();
    return v;
  }

  /// Nonzero vector; resamples the all-zero draw.
  RatVec nonzero_vector(std::size_t n) {
    for (int tries = 0; tries < 1000; ++tries) {
      RatVec v = vector(n);
      if (!is_zero(v)) return v;
    }
    throw SamplerExhausted("nonzero_vector: no nonzero draw");
  }

private:
  std::uint64_t state_;
};

namespace detail {

/// Solves g(y,y) = 0 for coordinate `i` of y, keeping the other coordinates.
/// The restriction is the scalar quadratic a·t² + b·t + c; only exact
/// rational roots are accepted. Returns false when none exists.
inline bool solve_null_coordinate(const RatMatrix& g, RatVec& y, std::size_t i, bool plus_root) {
  const std::size_t n = y.size();
  Rational a = g(i, i), b, c;
  for (std::size_t j = 0; j < n; ++j) {
    if (j == i) continue;
    b += (g(i, j) + g(j, i)) * y[j];
    for (std::size_t k = 0; k < n; ++k)
      if (k != i) c += g(j, k) * y[j] * y[k];
  }
  if (a.is_zero()) {
    if (b.is_zero()) return c.is_zero();  // keep the drawn value
    y[i] = -c / b;
    return true;
  }
  Rational disc = b * b - Rational(4) * a * c, root;
  if (!disc.sqrt_exact(root)) return false;
  y[i] = ((plus_root ? root : -root) - b) / (Rational(2) * a);
  return true;
}

}  // namespace detail

/// Exact nonzero null vector for the quadratic form g (in the coordinates g
/// acts on). Rejection-resamples up to `max_tries` times; throws
/// SamplerExhausted when the null cone cannot be hit (e.g. definite g).
inline RatVec sample_null_vector(const RatMatrix& g, Rng& rng, int max_tries = 200) {
  const std::size_t n = g.rows();
  if (n == 0) throw SamplerExhausted("sample_null_vector: zero-dimensional form");
  for (int t = 0; t < max_tries; ++t) {
    RatVec y = rng.vector(n);
    std::size_t i = static_cast<std::size_t>(rng.range(0, static_cast<long>(n) - 1));
    bool plus = rng.range(0, 1) == 1;
    if (!detail::solve_null_coordinate(g, y, i, plus)) continue;
    if (is_zero(y)) continue;
    return y;
  }
  throw SamplerExhausted("sample_null_vector: null cone appears empty");
}

/// Random vector on the full null cone of the algebra's metric.
inline RatVec sample_null(const MetricNilAlgebra& alg, Rng& rng, int max_tries = 200) {
  return sample_null_vector(alg.metric(), rng, max_tries);
}

/// Y = X + Z with <X,X> = 0 (X exact null in v), Z random.
inline RatVec sample_vnull(const MetricNilAlgebra& alg, const CenterSplit& split, Rng& rng,
                           int max_tries = 200) {
  RatVec x = sample_null_vector(split.metric_on_v, rng, max_tries);
  RatVec z = rng.vector(split.z.dim());
  return split.v.embed(x) + split.z.embed(z);
}

/// Y = X + Z with <X,X> = 0 and <Z,Z> = 0 (doubly null).
inline RatVec sample_doubly_null(const MetricNilAlgebra& alg, const CenterSplit& split, Rng& rng,
                                 int max_tries = 200) {
  RatVec x = sample_null_vector(split.metric_on_v, rng, max_tries);
  RatVec z = sample_null_vector(split.metric_on_z, rng, max_tries);
  return split.v.embed(x) + split.z.embed(z);
}

}  // namespace nilgo

#endif
