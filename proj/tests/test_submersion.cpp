#include <catch2/catch_amalgamated.hpp>

#include "einstab/submersion.hpp"
#include "support/generators.hpp"

using namespace einstab;
using einstab::testing::rand_nonneg_rational;
using einstab::testing::rand_positive_rational;

namespace {

/// Admissible invariants from free data (n, r, E, |A|^2): the two
/// constraint identities then determine the fiber and base scalar
/// curvatures.
SubmersionInvariants<Rational> invariants_from_free_data(int n, int r,
                                                         const Rational& E,
                                                         const Rational& a2) {
  const Rational fiber = E * Rational(r) - a2;
  const Rational base = E * Rational(n) + Rational(2) * a2;
  return check_einstein_invariants(n, r, E, fiber, base, a2);
}

}  // namespace

TEST_CASE("constraint check accepts the Hopf-type circle bundle") {
  const auto inv = check_einstein_invariants(2, 1, Rational(1), Rational(0),
                                             Rational(4), Rational(1));
  CHECK(inv.total_scal() == Rational(3));
}

TEST_CASE("constraint check accepts trivial products") {
  for (int n = 1; n <= 4; ++n)
    for (int r = 1; r <= 4; ++r) {
      const Rational E(3, 2);
      CHECK_NOTHROW(check_einstein_invariants(
          n, r, E, E * Rational(r), E * Rational(n), Rational(0)));
    }
}

TEST_CASE("constraint check rejects a violated base identity") {
  CHECK_THROWS_AS(check_einstein_invariants(2, 1, Rational(1), Rational(0),
                                            Rational(5), Rational(1)),
                  ConstraintViolation);
  CHECK_THROWS_MATCHES(
      check_einstein_invariants(2, 1, Rational(1), Rational(0), Rational(5),
                                Rational(1)),
      ConstraintViolation,
      Catch::Matchers::MessageMatches(
          Catch::Matchers::ContainsSubstring("base constraint")));
}

TEST_CASE("instability value on the named examples") {
  SECTION("Hopf-type bundle is inconclusive") {
    const auto inv = check_einstein_invariants(2, 1, Rational(1), Rational(0),
                                               Rational(4), Rational(1));
    const auto res = submersion_instability(inv);
    CHECK(res.value == Rational(6));
    CHECK(res.verdict == Verdict::Inconclusive);
  }
  SECTION("trivial product is unstable") {
    const auto inv = check_einstein_invariants(2, 1, Rational(1), Rational(1),
                                               Rational(2), Rational(0));
    const auto res = submersion_instability(inv);
    CHECK(res.value == Rational(-3));
    CHECK(res.verdict == Verdict::Unstable);
    CHECK(res.direction == "g - ((n+r)/n) pi*(g_base)");
  }
  SECTION("Sp family member (m=3, q=1, k=2)") {
    // E and |A|^2 are pinned by the constraint identities at these
    // scalar curvatures: E = 7/16, |A|^2 = 1/4.
    const auto inv = check_einstein_invariants(
        8, 4, Rational(7, 16), Rational(3, 2), Rational(4), Rational(1, 4));
    const Rational core = Rational(4) * inv.base_scal -
                          Rational(2 * 8) * inv.fiber_scal;
    CHECK(core == Rational(-8));
    CHECK(submersion_instability(inv).verdict == Verdict::Unstable);
  }
}

TEST_CASE("long-form second variation equals the factored value") {
  // -2s + 4(n+r)E + ((n+r)/n)^2 2|A|^2 - 2((n+r)/n)^2 (s_check - 3|A|^2)
  // with s = E(n+r) collapses to (2(n+r)/n^2)(r s_check - 2 n s_hat).
  Rng rng(42);
  for (int trial = 0; trial < 400; ++trial) {
    const int n = static_cast<int>(rng.int_in(1, 9));
    const int r = static_cast<int>(rng.int_in(1, 9));
    const Rational E = rand_positive_rational(rng);
    const Rational a2 = rand_nonneg_rational(rng);
    const auto inv = invariants_from_free_data(n, r, E, a2);

    const Rational ratio_nr = Rational(n + r, n);
    const Rational long_form =
        Rational(-2) * inv.total_scal() + Rational(4 * (n + r)) * E +
        ratio_nr * ratio_nr * Rational(2) * a2 -
        Rational(2) * ratio_nr * ratio_nr *
            (inv.base_scal - Rational(3) * a2);
    CHECK(long_form == submersion_instability(inv).value);
  }
}

TEST_CASE("vanishing A-tensor reduces to the product formula") {
  Rng rng(7);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = static_cast<int>(rng.int_in(1, 9));
    const int r = static_cast<int>(rng.int_in(1, 9));
    const Rational E = rand_positive_rational(rng);
    const auto inv = invariants_from_free_data(n, r, E, Rational(0));
    CHECK(submersion_instability(inv).value ==
          Rational(2 * (n + r), static_cast<long long>(n) * n) *
              (-Rational(n) * Rational(r) * E));
  }
}

TEST_CASE("canonical variation criterion") {
  CHECK(canonical_variation_value(2, 1, Rational(1), Rational(1)).value ==
        Rational(-2));
  CHECK(canonical_variation_value(2, 1, Rational(1), Rational(1)).verdict ==
        Verdict::Unstable);
  CHECK(canonical_variation_value(3, 2, Rational(1), Rational(2)).value ==
        Rational(0));
  CHECK(canonical_variation_value(3, 2, Rational(1), Rational(2)).verdict ==
        Verdict::Inconclusive);
  CHECK(canonical_variation_value(4, 3, Rational(1), Rational(5)).value ==
        Rational(36));
  CHECK(canonical_variation_value(4, 3, Rational(1), Rational(5)).verdict ==
        Verdict::Inconclusive);
}

TEST_CASE("canonical variation matches the general value on Einstein data") {
  // With s_hat = r E_fiber and s_check = n E_base the general quantity
  // reduces to r n (E_base - 2 E_fiber).
  Rng rng(99);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = static_cast<int>(rng.int_in(1, 8));
    const int r = static_cast<int>(rng.int_in(1, 8));
    const Rational e_fiber = rand_positive_rational(rng);
    const Rational e_base = e_fiber + rand_nonneg_rational(rng);
    // Realizable submersion data with Einstein fiber and base.
    const Rational E =
        (Rational(n) * e_base + Rational(2 * r) * e_fiber) / Rational(n + 2 * r);
    const Rational a2 = Rational(r) * (E - e_fiber);
    REQUIRE(a2 >= 0);
    const auto inv = check_einstein_invariants(
        n, r, E, Rational(r) * e_fiber, Rational(n) * e_base, a2);
    const auto general = submersion_instability(inv);
    const auto canonical = canonical_variation_value(n, r, e_fiber, e_base);
    CHECK(general.value ==
          Rational(2 * (n + r), static_cast<long long>(n) * n) *
              canonical.value);
    if (canonical.value < 0) CHECK(general.verdict == Verdict::Unstable);
  }
}

TEST_CASE("float mode accepts residuals within tolerance") {
  CHECK_NOTHROW(check_einstein_invariants<double>(2, 1, 1.0, 0.0, 4.0 + 5e-11,
                                                  1.0, 1e-10));
  CHECK_THROWS_AS(
      check_einstein_invariants<double>(2, 1, 1.0, 0.0, 4.001, 1.0, 1e-10),
      ConstraintViolation);
}
