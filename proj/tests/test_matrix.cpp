#include <catch2/catch_amalgamated.hpp>

#include "nilgo/matrix.hpp"
#include "nilgo/sampler.hpp"

using namespace nilgo;

namespace {

RatMatrix random_matrix(Rng& rng, std::size_t r, std::size_t c) {
  RatMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = rng.rational();
  return m;
}

}  // namespace

TEST_CASE("basic operations") {
  RatMatrix a(2, 2, {Rational(1), Rational(2), Rational(3), Rational(4)});
  RatMatrix b(2, 2, {Rational(0), Rational(1), Rational(1), Rational(0)});
  CHECK((a * b) == RatMatrix(2, 2, {Rational(2), Rational(1), Rational(4), Rational(3)}));
  CHECK((a + b - b) == a);
  CHECK((Rational(2) * a)(1, 1) == Rational(8));
  CHECK(a.transpose().transpose() == a);
  CHECK(RatMatrix::identity(3) * RatMatrix::identity(3) == RatMatrix::identity(3));
  CHECK(a.apply({Rational(1), Rational(1)}) == RatVec{Rational(3), Rational(7)});
}

TEST_CASE("rref on a known system") {
  // x + y = 3, 2x + 2y = 6 → rank 1
  RatMatrix m(2, 3, {Rational(1), Rational(1), Rational(3), Rational(2), Rational(2), Rational(6)});
  RrefResult r = rref(m);
  CHECK(r.rank == 1);
  CHECK(r.pivot_columns == std::vector<std::size_t>{0});
  CHECK(r.reduced(0, 0) == Rational(1));
  CHECK(r.reduced(1, 0) == Rational(0));
}

TEST_CASE("solve_affine: unique, family, empty") {
  RatMatrix a(2, 2, {Rational(1), Rational(1), Rational(1), Rational(-1)});
  SolutionSet s = solve_affine(a, {Rational(3), Rational(1)});
  REQUIRE(s.kind == SolutionKind::Unique);
  CHECK(s.particular == RatVec{Rational(2), Rational(1)});

  RatMatrix b(1, 2, {Rational(1), Rational(1)});
  s = solve_affine(b, {Rational(5)});
  REQUIRE(s.kind == SolutionKind::Family);
  CHECK(s.particular == RatVec{Rational(5), Rational(0)});  // free vars are zero
  REQUIRE(s.nullspace_basis.size() == 1);
  CHECK(s.nullspace_basis[0] == RatVec{Rational(-1), Rational(1)});

  RatMatrix c(2, 1, {Rational(1), Rational(1)});
  s = solve_affine(c, {Rational(1), Rational(2)});
  CHECK(s.kind == SolutionKind::Empty);
}

TEST_CASE("property: rref is idempotent and rank bounded") {
  Rng rng(11);
  for (int t = 0; t < 50; ++t) {
    std::size_t r = 1 + rng.range(0, 4), c = 1 + rng.range(0, 4);
    RatMatrix m = random_matrix(rng, r, c);
    RrefResult once = rref(m);
    RrefResult twice = rref(once.reduced);
    CHECK(once.reduced == twice.reduced);
    CHECK(once.rank <= std::min(r, c));
    CHECK(once.rank == rank(m.transpose()));  // row rank == column rank
  }
}

TEST_CASE("property: solutions of solve_affine actually solve the system") {
  Rng rng(12);
  for (int t = 0; t < 100; ++t) {
    std::size_t r = 1 + rng.range(0, 4), c = 1 + rng.range(0, 4);
    RatMatrix a = random_matrix(rng, r, c);
    RatVec b = rng.vector(r);
    SolutionSet s = solve_affine(a, b);
    if (s.kind == SolutionKind::Empty) {
      CHECK(rank(a) < r);  // full row rank systems are always consistent
      continue;
    }
    CHECK(is_zero(a.apply(s.particular) - b));
    for (const auto& h : s.nullspace_basis) {
      CHECK(is_zero(a.apply(h)));
      CHECK(is_zero(a.apply(s.particular + h) - b));
    }
    CHECK(s.nullspace_basis.size() == c - rank(a));
  }
}

TEST_CASE("property: consistency matches the Frobenius rank criterion") {
  Rng rng(13);
  for (int t = 0; t < 100; ++t) {
    std::size_t r = 1 + rng.range(0, 3), c = 1 + rng.range(0, 3);
    RatMatrix a = random_matrix(rng, r, c);
    RatVec b = rng.vector(r);
    RatMatrix aug(r, c + 1);
    for (std::size_t i = 0; i < r; ++i) {
      for (std::size_t j = 0; j < c; ++j) aug(i, j) = a(i, j);
      aug(i, c) = b[i];
    }
    bool consistent = solve_affine(a, b).kind != SolutionKind::Empty;
    CHECK(consistent == (rank(a) == rank(aug)));
  }
}

TEST_CASE("nullspace dimension and correctness") {
  RatMatrix a(1, 3, {Rational(1), Rational(2), Rational(3)});
  auto ns = nullspace(a);
  REQUIRE(ns.size() == 2);
  for (const auto& v : ns) CHECK(is_zero(a.apply(v)));
}

TEST_CASE("inverse") {
  Rng rng(14);
  for (int t = 0; t < 30; ++t) {
    RatMatrix m = random_matrix(rng, 4, 4);
    if (rank(m) < 4) {
      CHECK_THROWS_AS(inverse(m), std::invalid_argument);
      continue;
    }
    CHECK(m * inverse(m) == RatMatrix::identity(4));
    CHECK(inverse(m) * m == RatMatrix::identity(4));
  }
  CHECK_THROWS_AS(inverse(RatMatrix(2, 3)), std::invalid_argument);
  CHECK_THROWS_AS(inverse(RatMatrix(2, 2)), std::invalid_argument);  // zero matrix
}

TEST_CASE("columns helper") {
  RatMatrix m = columns({{Rational(1), Rational(2)}, {Rational(3), Rational(4)}}, 2);
  CHECK(m(0, 0) == Rational(1));
  CHECK(m(1, 0) == Rational(2));
  CHECK(m(0, 1) == Rational(3));
  CHECK(m(1, 1) == Rational(4));
}
