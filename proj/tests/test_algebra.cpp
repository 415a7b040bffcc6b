#include <catch2/catch_amalgamated.hpp>

#include "nilgo/algebra.hpp"
#include "nilgo/fixtures.hpp"
#include "nilgo/sampler.hpp"

using namespace nilgo;

TEST_CASE("validation accepts the whole catalog") {
  for (const MetricNilAlgebra& alg :
       {fixtures::paper6_X(), fixtures::paper6_e(), fixtures::heis3_riem(),
        fixtures::heis3_lorentz_degenerate(), fixtures::abelian_rpq(), fixtures::cotangent_h3()}) {
    ValidationReport rep = alg.validate();
    INFO(alg.name());
    CHECK(rep.ok());
  }
}

TEST_CASE("validation: nilpotency classes") {
  CHECK(fixtures::abelian_rpq().validate().nilpotency_class == 1);
  CHECK(fixtures::heis3_riem().validate().nilpotency_class == 2);
  CHECK(fixtures::paper6_X().validate().nilpotency_class == 2);
  CHECK(fixtures::cotangent_h3().validate().nilpotency_class == 2);
}

TEST_CASE("validation rejects bad input") {
  // [e1,e2] = e3, [e1,e3] = e1 violates Jacobi
  MetricNilAlgebra bad_jacobi(3, {}, {{0, 1, 2, Rational(1)}, {0, 2, 0, Rational(1)}},
                              RatMatrix::identity(3));
  CHECK_FALSE(bad_jacobi.validate().jacobi_ok);

  // [e1,e2] = e2 is solvable but not nilpotent
  MetricNilAlgebra affine(2, {}, {{0, 1, 1, Rational(1)}}, RatMatrix::identity(2));
  ValidationReport rep = affine.validate();
  CHECK(rep.jacobi_ok);
  CHECK_FALSE(rep.nilpotent);

  MetricNilAlgebra degenerate(2, {}, {}, RatMatrix(2, 2));
  CHECK_FALSE(degenerate.validate().metric_nondegenerate);

  CHECK_THROWS_AS(MetricNilAlgebra(2, {}, {{1, 0, 0, Rational(1)}}, RatMatrix::identity(2)),
                  std::invalid_argument);
}

TEST_CASE("bracket and inner product on paper6_X") {
  MetricNilAlgebra alg = fixtures::paper6_X();
  RatVec x1 = alg.basis_vector(0), x3 = alg.basis_vector(2);
  CHECK(alg.bracket(x1, x3) == alg.basis_vector(4));
  CHECK(is_zero(alg.bracket(x1, alg.basis_vector(1))));
  CHECK(alg.inner(x1, alg.basis_vector(3)) == Rational(-1));
  CHECK(alg.inner(alg.basis_vector(4), alg.basis_vector(5)) == Rational(2));
  CHECK(alg.inner(x1, x1) == Rational(0));
}

TEST_CASE("center") {
  MetricNilAlgebra p6 = fixtures::paper6_X();
  Subspace z = p6.center();
  REQUIRE(z.dim() == 2);
  CHECK(z.coords_of(p6.basis_vector(4)).has_value());
  CHECK(z.coords_of(p6.basis_vector(5)).has_value());
  CHECK_FALSE(z.coords_of(p6.basis_vector(0)).has_value());

  CHECK(fixtures::abelian_rpq().center().dim() == 3);
  Subspace hz = fixtures::heis3_riem().center();
  REQUIRE(hz.dim() == 1);
  CHECK(hz.coords_of(fixtures::heis3_riem().basis_vector(2)).has_value());
}

TEST_CASE("split v + z") {
  MetricNilAlgebra p6 = fixtures::paper6_X();
  CenterSplit cs = p6.split_v_z();
  CHECK(cs.v.dim() == 4);
  CHECK(cs.z.dim() == 2);
  // orthogonality of the split
  for (const auto& vb : cs.v.basis)
    for (const auto& zb : cs.z.basis) CHECK(p6.inner(vb, zb) == Rational(0));
  CHECK(rank(cs.metric_on_v) == 4);
  CHECK(rank(cs.metric_on_z) == 2);

  // abelian with definite metric: v = 0, z = everything
  CenterSplit ab = fixtures::abelian_rpq().split_v_z();
  CHECK(ab.v.dim() == 0);
  CHECK(ab.z.dim() == 3);
}

TEST_CASE("degenerate centers throw") {
  CHECK_THROWS_AS(fixtures::heis3_lorentz_degenerate().split_v_z(), DegenerateCenter);
  CHECK_THROWS_AS(fixtures::cotangent_h3().split_v_z(), DegenerateCenter);
}

TEST_CASE("decompose splits exactly") {
  MetricNilAlgebra p6 = fixtures::paper6_X();
  CenterSplit cs = p6.split_v_z();
  Rng rng(21);
  for (int t = 0; t < 50; ++t) {
    RatVec y = rng.vector(6);
    auto [xv, zc] = p6.decompose(cs, y);
    CHECK(cs.v.embed(xv) + cs.z.embed(zc) == y);
  }
}

TEST_CASE("j-maps on paper6_X match the closed form") {
  MetricNilAlgebra p6 = fixtures::paper6_X();
  CenterSplit cs = p6.split_v_z();
  auto zc_of = [&](const RatVec& ambient) { return *cs.z.coords_of(ambient); };

  RatMatrix j5 = p6.j_map(cs, zc_of(p6.basis_vector(4))).matrix;
  RatMatrix j6 = p6.j_map(cs, zc_of(p6.basis_vector(5))).matrix;

  // The split basis of v is X1..X4 in order; express the expected matrices there.
  RatMatrix e5(4, 4), e6(4, 4);
  e5(0, 1) = Rational(-2);
  e5(2, 3) = Rational(-2);
  e6(1, 0) = Rational(2);
  e6(3, 2) = Rational(2);
  CHECK(j5 == e5);
  CHECK(j6 == e6);
}

TEST_CASE("j-map defining identity <j(Z)X, X'> = <Z, [X, X']>") {
  for (const MetricNilAlgebra& alg : {fixtures::paper6_X(), fixtures::paper6_e(),
                                      fixtures::heis3_riem()}) {
    CenterSplit cs = alg.split_v_z();
    Rng rng(22);
    for (int t = 0; t < 20; ++t) {
      RatVec zc = rng.vector(cs.z.dim());
      RatMatrix j = alg.j_map(cs, zc).matrix;
      RatVec z = cs.z.embed(zc);
      for (std::size_t a = 0; a < cs.v.dim(); ++a)
        for (std::size_t b = 0; b < cs.v.dim(); ++b) {
          RatVec jx = cs.v.embed(j.apply(*cs.v.coords_of(cs.v.basis[a])));
          CHECK(alg.inner(jx, cs.v.basis[b]) ==
                alg.inner(z, alg.bracket(cs.v.basis[a], cs.v.basis[b])));
        }
    }
  }
}

TEST_CASE("pseudo-H-type: paper6 yes, heis3 no") {
  MetricNilAlgebra p6 = fixtures::paper6_X();
  CenterSplit cs = p6.split_v_z();
  CHECK(p6.is_pseudo_H_type(cs));
  CHECK(fixtures::paper6_e().is_pseudo_H_type(fixtures::paper6_e().split_v_z()));
  // h3 with identity metric: j(e3)^2 = -Id on the 2-dim v, so it IS H-type;
  // scale the metric on the center to break it.
  RatMatrix g = RatMatrix::identity(3);
  g(2, 2) = Rational(4);
  MetricNilAlgebra scaled(3, {}, {{0, 1, 2, Rational(1)}}, std::move(g));
  CHECK_FALSE(scaled.is_pseudo_H_type(scaled.split_v_z()));
  CHECK(fixtures::heis3_riem().is_pseudo_H_type(fixtures::heis3_riem().split_v_z()));
}

TEST_CASE("j(Z)^2 = -<Z,Z> Id for 100 random central Z (both presentations)") {
  for (const MetricNilAlgebra& alg : {fixtures::paper6_X(), fixtures::paper6_e()}) {
    CenterSplit cs = alg.split_v_z();
    Rng rng(23);
    for (int t = 0; t < 100; ++t) {
      RatVec zc = rng.vector(2);
      RatMatrix j = alg.j_map(cs, zc).matrix;
      RatVec z = cs.z.embed(zc);
      CHECK(j * j == (-alg.inner(z, z)) * RatMatrix::identity(4));
    }
  }
}

TEST_CASE("ad-invariance") {
  CHECK(fixtures::abelian_rpq().is_ad_invariant().invariant);
  CHECK(fixtures::cotangent_h3().is_ad_invariant().invariant);
  auto r = fixtures::heis3_riem().is_ad_invariant();
  CHECK_FALSE(r.invariant);
  // the witness triple really violates invariance
  MetricNilAlgebra h3 = fixtures::heis3_riem();
  Rational s = h3.inner(h3.bracket(h3.basis_vector(r.i), h3.basis_vector(r.j)), h3.basis_vector(r.k)) +
               h3.inner(h3.basis_vector(r.j), h3.bracket(h3.basis_vector(r.i), h3.basis_vector(r.k)));
  CHECK(s == r.value);
  CHECK_FALSE(s.is_zero());
  CHECK_FALSE(fixtures::paper6_X().is_ad_invariant().invariant);
  CHECK_FALSE(fixtures::heis3_lorentz_degenerate().is_ad_invariant().invariant);
}

TEST_CASE("change of basis maps paper6_X onto paper6_e") {
  MetricNilAlgebra x = fixtures::paper6_X();
  MetricNilAlgebra e = fixtures::paper6_e();
  MetricNilAlgebra mapped = change_basis(x, fixtures::paper6_e_in_X(),
                                         e.basis_names(), e.name());
  CHECK(mapped.metric() == e.metric());
  for (std::size_t i = 0; i < 6; ++i)
    for (std::size_t j = i + 1; j < 6; ++j)
      CHECK(mapped.bracket(mapped.basis_vector(i), mapped.basis_vector(j)) ==
            e.bracket(e.basis_vector(i), e.basis_vector(j)));
}

TEST_CASE("change of basis is inverse-compatible") {
  MetricNilAlgebra x = fixtures::paper6_X();
  RatMatrix p = fixtures::paper6_e_in_X();
  MetricNilAlgebra back = change_basis(change_basis(x, p), inverse(p), x.basis_names(), x.name());
  CHECK(back.metric() == x.metric());
  for (std::size_t i = 0; i < 6; ++i)
    for (std::size_t j = i + 1; j < 6; ++j)
      CHECK(back.bracket(back.basis_vector(i), back.basis_vector(j)) ==
            x.bracket(x.basis_vector(i), x.basis_vector(j)));
}
