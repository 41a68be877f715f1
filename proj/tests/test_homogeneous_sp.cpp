#include <catch2/catch_amalgamated.hpp>

#include "einstab/homogeneous_sp.hpp"

using namespace einstab;

TEST_CASE("invariants of the (3,1,2) member") {
  const auto inv = sp_family_invariants(SpFamilyParams::make(3, 1, 2));
  CHECK(inv.r == 4);
  CHECK(inv.n == 8);
  CHECK(inv.fiber_scal == Rational(3, 2));
  CHECK(inv.base_scal == Rational(4));
  CHECK(inv.fiber_einstein == Rational(3, 8));
  CHECK(inv.ricci_eig_mixed == Rational(1, 2));
  CHECK(inv.ricci_eig_small == Rational(7, 16));
  CHECK(inv.quantity == Rational(-8));
}

TEST_CASE("base scalar curvature equals the weighted summand sum") {
  // (m-k) summands of dimension 4kq^2 at the mixed eigenvalue plus
  // (m-k)(m-k-1)/2 summands of dimension 4q^2 at the small eigenvalue.
  for (int m = 3; m <= 10; ++m)
    for (int q = 1; q <= 4; ++q)
      for (int k = 2; k < m; ++k) {
        const auto inv = sp_family_invariants(SpFamilyParams::make(m, q, k));
        const long long q2 = static_cast<long long>(q) * q;
        const Rational weighted =
            Rational(m - k) * Rational(4 * k * q2) * inv.ricci_eig_mixed +
            Rational(static_cast<long long>(m - k) * (m - k - 1), 2) *
                Rational(4 * q2) * inv.ricci_eig_small;
        CHECK(inv.base_scal == weighted);
      }
}

TEST_CASE("fiber scalar curvature equals r times the fiber constant") {
  for (int m = 3; m <= 10; ++m)
    for (int q = 1; q <= 4; ++q)
      for (int k = 2; k < m; ++k) {
        const auto inv = sp_family_invariants(SpFamilyParams::make(m, q, k));
        CHECK(inv.fiber_scal == Rational(inv.r) * inv.fiber_einstein);
      }
}

TEST_CASE("quantity on the named members") {
  const auto base = sp_family_quantity(SpFamilyParams::make(3, 1, 2));
  CHECK(base.value == Rational(-8));
  CHECK(base.verdict == Verdict::Unstable);

  // k = m - 4 with the threshold satisfied: 10(q+1)/(q+4) = 4 < 6.
  const auto six = sp_family_quantity(SpFamilyParams::make(6, 1, 2));
  CHECK(six.bracket == Rational(-5));
  CHECK(six.verdict == Verdict::Unstable);

  // k = m - 4 with the threshold failing: 10*17/20 = 8.5 >= 8.
  const auto eight = sp_family_quantity(SpFamilyParams::make(8, 16, 4));
  CHECK(eight.bracket == Rational(5));
  CHECK(eight.verdict == Verdict::Inconclusive);
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(SpFamilyParams::make(3, 1, 1), InvalidParams);
  CHECK_THROWS_AS(SpFamilyParams::make(3, 1, 3), InvalidParams);
  CHECK_THROWS_AS(SpFamilyParams::make(2, 1, 1), InvalidParams);
  CHECK_THROWS_AS(SpFamilyParams::make(3, 0, 2), InvalidParams);
}

TEST_CASE("scan verifies both stated verdict criteria") {
  const auto scan = sp_family_scan(12, 8);
  CHECK(scan.near_top_always_unstable);
  CHECK(scan.threshold_matches);

  const auto tiny = sp_family_scan(3, 1);
  REQUIRE(tiny.rows.size() == 1);
  CHECK(tiny.rows[0].m == 3);
  CHECK(tiny.rows[0].q == 1);
  CHECK(tiny.rows[0].k == 2);
  CHECK(tiny.rows[0].verdict == Verdict::Unstable);
}

TEST_CASE("direct and factored routes cannot diverge silently") {
  // sp_family_quantity asserts the equality internally; a sweep over a
  // wide parameter box exercises it.
  for (int m = 3; m <= 14; ++m)
    for (int q = 1; q <= 6; ++q)
      for (int k = 2; k < m; ++k)
        CHECK_NOTHROW(sp_family_quantity(SpFamilyParams::make(m, q, k)));
}
