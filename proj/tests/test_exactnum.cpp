#include <catch2/catch_amalgamated.hpp>

#include "einstab/matrix.hpp"
#include "einstab/rational.hpp"
#include "support/charpoly_oracle.hpp"
#include "support/generators.hpp"

using namespace einstab;
using einstab::testing::charpoly_inertia;
using einstab::testing::rand_sym;
using einstab::testing::rand_unimodular;

TEST_CASE("rational parsing and formatting") {
  CHECK(parse_rational("4/3") == Rational(4, 3));
  CHECK(parse_rational("-8") == Rational(-8));
  CHECK(parse_rational("0.25") == Rational(1, 4));
  CHECK(to_string(Rational(4, 6)) == "2/3");
  CHECK(to_string(Rational(-8)) == "-8");
  CHECK_THROWS_AS(parse_rational("1/0"), ParseError);
  CHECK_THROWS_AS(parse_rational("abc"), ParseError);
}

TEST_CASE("inertia of small diagonal and dense matrices") {
  const auto d = SymMatrix<Rational>::diagonal(
      {Rational(1), Rational(-1), Rational(0)});
  CHECK(inertia(d) == Inertia{1, 1, 1});

  const auto m2 = SymMatrix<Rational>::from_rows(
      {{Rational(2), Rational(1)}, {Rational(1), Rational(2)}});
  CHECK(inertia(m2) == Inertia{0, 0, 2});

  const auto hyper = SymMatrix<Rational>::from_rows(
      {{Rational(0), Rational(1)}, {Rational(1), Rational(0)}});
  CHECK(inertia(hyper) == Inertia{1, 0, 1});

  const auto zero = SymMatrix<Rational>(3);
  CHECK(inertia(zero) == Inertia{0, 3, 0});
}

TEST_CASE("float inertia counts near-zero eigenvalues as zero") {
  const auto m = SymMatrix<double>::from_rows(
      {{1.0, 0.0, 0.0}, {0.0, -2.0, 0.0}, {0.0, 0.0, 1e-13}});
  CHECK(inertia(m, default_zero_tol(m)) == Inertia{1, 1, 1});
  CHECK(inertia(m, 0.0) == Inertia{1, 0, 2});
  CHECK_THROWS_AS(inertia(m, -1.0), InvalidParams);
}

TEST_CASE("exact inertia requires zero tolerance") {
  const auto m = SymMatrix<Rational>::diagonal({Rational(1)});
  CHECK_THROWS_AS(inertia(m, Rational(1, 10)), InvalidParams);
}

TEST_CASE("symmetry is enforced at construction") {
  CHECK_THROWS_AS(SymMatrix<Rational>::from_rows(
                      {{Rational(0), Rational(1)}, {Rational(2), Rational(0)}}),
                  InvalidParams);
}

TEST_CASE("inertia agrees with the characteristic polynomial oracle") {
  Rng rng(20240517);
  for (int trial = 0; trial < 300; ++trial) {
    const int dim = static_cast<int>(rng.int_in(1, 4));
    const auto m = rand_sym(rng, dim);
    CHECK(inertia(m) == charpoly_inertia(m));
  }
}

TEST_CASE("inertia is invariant under congruence") {
  Rng rng(911);
  for (int trial = 0; trial < 100; ++trial) {
    const int dim = static_cast<int>(rng.int_in(1, 5));
    const auto m = rand_sym(rng, dim);
    const auto p = rand_unimodular(rng, dim);
    CHECK(inertia(congruence(p, m)) == inertia(m));
  }
}

TEST_CASE("exact inverse and rank") {
  const auto m = Mat<Rational>::from_rows({{Rational(2), Rational(1)},
                                           {Rational(1), Rational(1)}});
  const auto inv = inverse(m);
  CHECK(inv * m == Mat<Rational>::identity(2));

  Mat<Rational> singular(2, 2);
  singular.at(0, 0) = Rational(1);
  singular.at(1, 0) = Rational(2);
  CHECK_THROWS_AS(inverse(singular), SingularMatrix);
  CHECK(rank(singular) == 1);
}
