#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "einstab/product_base.hpp"
#include "einstab/torus_bundle.hpp"
#include "support/generators.hpp"

using namespace einstab;
using einstab::testing::rand_classifying_matrix;
using einstab::testing::rand_positive_rational;

namespace {

TorusBundleConfig<Rational> two_factor_exact() {
  // Solved two-factor configuration at E = 4/3.
  auto topo = TorusTopology<Rational>::make(
      {2, 2}, {Rational(2), Rational(2)}, Mat<int>::from_rows({{1, 1}}));
  return TorusBundleConfig<Rational>::make(
      topo, {Rational(1), Rational(1)},
      SymMatrix<Rational>::from_rows({{Rational(4, 3)}}));
}

/// Random Einstein configuration generated in reverse: scalings and
/// gauge are drawn, the fiber metric and Fano constants follow.
TorusBundleConfig<Rational> rand_einstein_config(Rng& rng, int m, int r) {
  const Mat<int> b = rand_classifying_matrix(rng, r, m);
  std::vector<int> n;
  std::vector<Rational> x;
  for (int i = 0; i < m; ++i) {
    n.push_back(2 * static_cast<int>(rng.int_in(1, 3)));
    x.push_back(rand_positive_rational(rng, 6, 3));
  }
  const Rational E = rand_positive_rational(rng, 4, 2);
  return einstein_config_from_scalings(n, b, x, E);
}

}  // namespace

TEST_CASE("column gram matrix") {
  CHECK(column_gram(two_factor_exact()) ==
        SymMatrix<Rational>::from_rows({{Rational(4, 3), Rational(4, 3)},
                                        {Rational(4, 3), Rational(4, 3)}}));

  auto eye = TorusBundleConfig<Rational>::make(
      TorusTopology<Rational>::make({2, 2}, {Rational(3), Rational(3)},
                                    Mat<int>::from_rows({{1, 0}, {0, 1}})),
      {Rational(1), Rational(1)},
      SymMatrix<Rational>::from_rows(
          {{Rational(1), Rational(0)}, {Rational(0), Rational(1)}}));
  CHECK(column_gram(eye) == SymMatrix<Rational>::from_rows(
                                {{Rational(1), Rational(0)},
                                 {Rational(0), Rational(1)}}));

  auto skewed = TorusBundleConfig<Rational>::make(
      TorusTopology<Rational>::make({2, 2}, {Rational(3), Rational(3)},
                                    Mat<int>::from_rows({{1, 0}, {1, 1}})),
      {Rational(1), Rational(1)},
      SymMatrix<Rational>::from_rows(
          {{Rational(1), Rational(0)}, {Rational(0), Rational(1)}}));
  CHECK(column_gram(skewed) == SymMatrix<Rational>::from_rows(
                                   {{Rational(2), Rational(1)},
                                    {Rational(1), Rational(1)}}));
}

TEST_CASE("A-tensor norms from the gram matrix") {
  const auto cfg = two_factor_exact();
  const auto gram = column_gram(cfg);
  CHECK(a_norm_sq(cfg, gram, 0) == Rational(2, 3));

  // Monotone decay in the scaling.
  auto topo = TorusTopology<Rational>::make(
      {4}, {Rational(9)}, Mat<int>::from_rows({{1}}));
  auto mk = [&](const Rational& x) {
    return TorusBundleConfig<Rational>::make(
        topo, {x}, SymMatrix<Rational>::from_rows({{Rational(1)}}));
  };
  const auto g1 = mk(Rational(1));
  const auto g2 = mk(Rational(2));
  CHECK(a_norm_sq(g1, column_gram(g1), 0) >
        a_norm_sq(g2, column_gram(g2), 0));
  const auto half = mk(Rational(1, 2));
  CHECK(a_norm_sq(half, column_gram(half), 0) == Rational(4));
}

TEST_CASE("einstein system residuals on the named configurations") {
  SECTION("scalar Hopf-type solution") {
    auto cfg = TorusBundleConfig<Rational>::make(
        TorusTopology<Rational>::make({2}, {Rational(2)},
                                      Mat<int>::from_rows({{1}})),
        {Rational(1)}, SymMatrix<Rational>::from_rows({{Rational(2)}}));
    const auto res = einstein_system_residual(cfg);
    CHECK(res.E == Rational(1));
    CHECK(res.horizontal[0] == Rational(0));
    CHECK(res.vertical.at(0, 0) == Rational(0));
  }
  SECTION("two symmetric factors") {
    const auto res = einstein_system_residual(two_factor_exact());
    CHECK(res.E == Rational(4, 3));
    CHECK(res.inf_norm() == Rational(0));
  }
  SECTION("detuned fiber metric") {
    auto cfg = TorusBundleConfig<Rational>::make(
        TorusTopology<Rational>::make({2, 2}, {Rational(2), Rational(2)},
                                      Mat<int>::from_rows({{1, 1}})),
        {Rational(1), Rational(1)},
        SymMatrix<Rational>::from_rows({{Rational(1)}}));
    const auto res = einstein_system_residual(cfg);
    // Trace formula gives E = 1; each horizontal equation misses by 1/2.
    CHECK(res.E == Rational(1));
    CHECK(res.horizontal[0] == Rational(1, 2));
    CHECK(res.horizontal[1] == Rational(1, 2));
    // For r = 1 the vertical equation is the trace itself.
    CHECK(res.vertical.at(0, 0) == Rational(0));
  }
}

TEST_CASE("topology validation") {
  CHECK_THROWS_AS(TorusTopology<Rational>::make(
                      {2, 2}, {Rational(2), Rational(2)},
                      Mat<int>::from_rows({{1, 0}})),
                  InvalidParams);  // zero column
  CHECK_THROWS_AS(TorusTopology<Rational>::make(
                      {2, 2}, {Rational(2), Rational(2)},
                      Mat<int>::from_rows({{1, 1}, {1, 1}})),
                  InvalidParams);  // rank deficient
  CHECK_THROWS_AS(TorusTopology<Rational>::make(
                      {3, 2}, {Rational(2), Rational(2)},
                      Mat<int>::from_rows({{1, 1}})),
                  InvalidParams);  // odd dimension
}

TEST_CASE("solver finds the two-factor solution") {
  auto topo = TorusTopology<double>::make({2, 2}, {2.0, 2.0},
                                          Mat<int>::from_rows({{1, 1}}));
  TorusSolveOptions opt;
  opt.seed = 5;
  const auto result = solve_einstein(topo, opt);
  REQUIRE(!result.solutions.empty());
  const auto& sol = result.solutions.front();
  CHECK(sol.residual_norm <= 1e-10);
  CHECK(std::abs(sol.config.x[0] - 4.0 / 3.0) < 1e-8);
  CHECK(std::abs(sol.config.x[1] - 4.0 / 3.0) < 1e-8);
  CHECK(std::abs(sol.config.ghat.at(0, 0) - 16.0 / 9.0) < 1e-8);
}

TEST_CASE("solver handles the scalar bundle") {
  auto topo = TorusTopology<double>::make({2}, {2.0},
                                          Mat<int>::from_rows({{1}}));
  TorusSolveOptions opt;
  opt.starts = 8;
  const auto result = solve_einstein(topo, opt);
  REQUIRE(!result.solutions.empty());
  CHECK(std::abs(result.solutions.front().config.x[0] - 1.0) < 1e-8);
  CHECK(std::abs(result.solutions.front().config.ghat.at(0, 0) - 2.0) < 1e-8);
}

TEST_CASE("gauge rescaling maps solutions as expected") {
  auto topo = TorusTopology<double>::make({2, 2}, {2.0, 2.0},
                                          Mat<int>::from_rows({{1, 1}}));
  TorusSolveOptions opt;
  opt.seed = 7;
  const double c = 4.0 / 3.0;
  TorusSolveOptions scaled = opt;
  scaled.gauge_E = opt.gauge_E / c;
  const auto base = solve_einstein(topo, opt);
  const auto other = solve_einstein(topo, scaled);
  REQUIRE(!base.solutions.empty());
  REQUIRE(!other.solutions.empty());
  CHECK(std::abs(other.solutions.front().config.x[0] -
                 c * base.solutions.front().config.x[0]) < 1e-7);
  CHECK(std::abs(other.solutions.front().config.ghat.at(0, 0) -
                 c * base.solutions.front().config.ghat.at(0, 0)) < 1e-7);
}

TEST_CASE("difference form values") {
  SECTION("exact two-factor configuration") {
    const auto cfg = two_factor_exact();
    CHECK(difference_form_value(cfg, {Rational(1)}) == Rational(-4, 3));
    CHECK(difference_form_value(cfg, {Rational(0)}) == Rational(0));
  }
  SECTION("solved gauge-one configuration") {
    auto topo = TorusTopology<double>::make({2, 2}, {2.0, 2.0},
                                            Mat<int>::from_rows({{1, 1}}));
    const auto sol = solve_einstein(topo, {}).solutions.front();
    CHECK(std::abs(difference_form_value(sol.config, {1.0}) + 1.0) < 1e-9);
  }
  SECTION("three factors at a hand-checked gauge") {
    auto cfg = TorusBundleConfig<Rational>::make(
        TorusTopology<Rational>::make(
            {2, 2, 2},
            {Rational(4, 5), Rational(4, 5), Rational(4, 5)},
            Mat<int>::from_rows({{1, 1, 1}})),
        {Rational(1), Rational(1), Rational(1)},
        SymMatrix<Rational>::from_rows({{Rational(2, 5)}}));
    const auto res = einstein_system_residual(cfg);
    REQUIRE(res.E == Rational(3, 5));
    REQUIRE(res.inf_norm() == Rational(0));
    CHECK(difference_form_value(cfg, {Rational(1), Rational(1)}) ==
          Rational(-4, 5));
  }
  SECTION("non-Einstein input is rejected") {
    auto cfg = TorusBundleConfig<Rational>::make(
        TorusTopology<Rational>::make({2, 2}, {Rational(2), Rational(2)},
                                      Mat<int>::from_rows({{1, 1}})),
        {Rational(1), Rational(1)},
        SymMatrix<Rational>::from_rows({{Rational(1)}}));
    CHECK_THROWS_AS(difference_form_value(cfg, {Rational(1)}), NotEinstein);
  }
}

TEST_CASE("difference form equals the product-base diagonal route") {
  Rng rng(808);
  for (int trial = 0; trial < 60; ++trial) {
    const int m = static_cast<int>(rng.int_in(2, 6));
    const int r = static_cast<int>(rng.int_in(1, m - 1 > 0 ? m - 1 : 1));
    const auto cfg = rand_einstein_config(rng, m, r);
    const auto gram = column_gram(cfg);

    // Factor data seen by the product-base module.
    std::vector<int> n = cfg.topology.n;
    std::vector<Rational> scal, a2;
    for (int i = 0; i < m; ++i) {
      scal.push_back(Rational(n[static_cast<std::size_t>(i)]) *
                     cfg.topology.q[static_cast<std::size_t>(i)] /
                     cfg.x[static_cast<std::size_t>(i)]);
      a2.push_back(a_norm_sq(cfg, gram, i));
    }
    const auto d = diagonal_coefficients(
        BaseFactorData<Rational>::make(n, scal, a2));

    std::vector<Rational> mu;
    for (int i = 0; i < m - r; ++i)
      mu.push_back(Rational(rng.int_in(-5, 5)));
    const Rational direct = difference_form_value(cfg, mu);

    Rational telescoped(0);
    Rational prev(0);
    for (int i = 0; i <= m - r; ++i) {
      const Rational cur =
          i < m - r ? mu[static_cast<std::size_t>(i)] : Rational(0);
      const Rational diff = cur - prev;
      telescoped += diff * diff * d[static_cast<std::size_t>(i)];
      prev = cur;
    }
    CHECK(direct == telescoped);
  }
}

TEST_CASE("trace consistency forces |A|^2 = E r") {
  Rng rng(4242);
  for (int trial = 0; trial < 60; ++trial) {
    const int m = static_cast<int>(rng.int_in(2, 6));
    const int r = static_cast<int>(rng.int_in(1, m));
    const auto cfg = rand_einstein_config(rng, m, r);
    const auto gram = column_gram(cfg);
    const auto res = einstein_system_residual(cfg);
    REQUIRE(res.inf_norm() == Rational(0));
    Rational total_a2(0);
    for (int i = 0; i < m; ++i) total_a2 += a_norm_sq(cfg, gram, i);
    CHECK(total_a2 == res.E * Rational(r));
  }
}

TEST_CASE("exact gauge rescaling of reverse-engineered configurations") {
  Rng rng(515);
  const auto base = rand_einstein_config(rng, 3, 1);
  const Rational c(4, 3);
  std::vector<Rational> scaled_x;
  for (const auto& xi : base.x) scaled_x.push_back(c * xi);
  const auto scaled = einstein_config_from_scalings(
      base.topology.n, base.topology.b, scaled_x,
      einstein_system_residual(base).E / c);
  CHECK(scaled.topology.q == base.topology.q);
  for (int a = 0; a < base.r(); ++a)
    for (int b = a; b < base.r(); ++b)
      CHECK(scaled.ghat.at(a, b) == c * base.ghat.at(a, b));
}

TEST_CASE("coindex analysis of the two-factor configuration") {
  const auto analysis = analyze_coindex(two_factor_exact());
  CHECK(analysis.form.dim() == 1);
  CHECK(analysis.form.at(0, 0) == Rational(-4, 3));
  CHECK(analysis.inertia.n_neg == 1);
  CHECK(analysis.coindex_lower_bound == 1);
  CHECK(analysis.proof_bound_ok);
}

TEST_CASE("coindex analysis with full torus rank reports a note") {
  Rng rng(616);
  const auto cfg = rand_einstein_config(rng, 3, 3);
  const auto analysis = analyze_coindex(cfg);
  CHECK(analysis.form.dim() == 0);
  CHECK(analysis.coindex_lower_bound == 0);
  CHECK(analysis.note.find("product Einstein metric") != std::string::npos);
}

TEST_CASE("coindex analysis is permutation invariant") {
  Rng rng(717);
  for (int trial = 0; trial < 20; ++trial) {
    const int m = static_cast<int>(rng.int_in(2, 5));
    const int r = static_cast<int>(rng.int_in(1, m - 1 > 0 ? m - 1 : 1));
    const auto cfg = rand_einstein_config(rng, m, r);

    // Reverse the factor order and rebuild the same geometry.
    std::vector<int> n_rev(cfg.topology.n.rbegin(), cfg.topology.n.rend());
    std::vector<Rational> q_rev(cfg.topology.q.rbegin(),
                                cfg.topology.q.rend());
    std::vector<Rational> x_rev(cfg.x.rbegin(), cfg.x.rend());
    Mat<int> b_rev(r, m);
    for (int a = 0; a < r; ++a)
      for (int j = 0; j < m; ++j)
        b_rev.at(a, j) = cfg.topology.b.at(a, m - 1 - j);
    const auto reversed = TorusBundleConfig<Rational>::make(
        TorusTopology<Rational>::make(n_rev, q_rev, b_rev), x_rev, cfg.ghat);

    CHECK(analyze_coindex(reversed).inertia == analyze_coindex(cfg).inertia);
  }
}

TEST_CASE("random solved configurations have coindex at least m - r") {
  Rng rng(919);
  for (int trial = 0; trial < 40; ++trial) {
    const int m = static_cast<int>(rng.int_in(2, 6));
    const int r = static_cast<int>(rng.int_in(1, m - 1 > 0 ? m - 1 : 1));
    const auto cfg = rand_einstein_config(rng, m, r);
    const auto analysis = analyze_coindex(cfg);
    CHECK(analysis.inertia.n_neg == m - r);
    CHECK(analysis.proof_bound_ok);
  }
}
