#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "einstab/circle_bundle.hpp"
#include "einstab/jsonio.hpp"
#include "einstab/newton.hpp"
#include "einstab/product_base.hpp"
#include "einstab/qk_bundle.hpp"
#include "einstab/rng.hpp"
#include "einstab/submersion.hpp"
#include "einstab/torus_bundle.hpp"

namespace einstab {

struct SuiteResult {
  std::string name;
  int cases = 0;
  int failures = 0;
  std::vector<std::string> notes;  // first few failure descriptions
};

struct VerifyReport {
  std::uint64_t seed = 0;
  int cases = 0;
  std::vector<SuiteResult> suites;
  bool all_passed = true;
};

namespace verify_detail {

inline Rational rand_rational(Rng& rng, long long num_bound = 9,
                              long long den_bound = 9) {
  return Rational(rng.int_in(-num_bound, num_bound), rng.int_in(1, den_bound));
}

inline Rational rand_positive(Rng& rng, long long num_bound = 9,
                              long long den_bound = 9) {
  return Rational(rng.int_in(1, num_bound), rng.int_in(1, den_bound));
}

inline Rational rand_nonneg(Rng& rng, long long num_bound = 9,
                            long long den_bound = 9) {
  return Rational(rng.int_in(0, num_bound), rng.int_in(1, den_bound));
}

inline Mat<int> rand_classifying(Rng& rng, int r, int m) {
  for (int attempt = 0; attempt < 64; ++attempt) {
    Mat<int> b(r, m);
    for (int a = 0; a < r; ++a)
      for (int j = 0; j < m; ++j)
        b.at(a, j) = static_cast<int>(rng.int_in(-2, 2));
    bool nonzero_cols = true;
    for (int j = 0; j < m && nonzero_cols; ++j) {
      bool nz = false;
      for (int a = 0; a < r; ++a) nz = nz || b.at(a, j) != 0;
      nonzero_cols = nz;
    }
    if (nonzero_cols && rank(mat_cast<Rational>(b)) == r) return b;
  }
  Mat<int> b(r, m);
  for (int a = 0; a < r; ++a) b.at(a, a) = 1;
  for (int j = r; j < m; ++j) b.at(0, j) = 1;
  return b;
}

inline TorusBundleConfig<Rational> rand_einstein_torus(Rng& rng, int m,
                                                       int r) {
  const Mat<int> b = rand_classifying(rng, r, m);
  std::vector<int> n;
  std::vector<Rational> x;
  for (int i = 0; i < m; ++i) {
    n.push_back(2 * static_cast<int>(rng.int_in(1, 3)));
    x.push_back(rand_positive(rng, 6, 3));
  }
  return einstein_config_from_scalings(n, b, x, rand_positive(rng, 4, 2));
}

inline QkConfig<Rational> rand_qk(Rng& rng, int m) {
  std::vector<int> N;
  std::vector<Rational> E, x, lam;
  for (int i = 0; i < m; ++i) {
    N.push_back(static_cast<int>(rng.int_in(2, 6)));
    E.push_back(rand_positive(rng, 6, 3));
    x.push_back(rand_positive(rng, 6, 3));
    lam.push_back(rand_positive(rng, 6, 3));
  }
  return QkConfig<Rational>::make(N, E, x, lam);
}

inline Mat<Rational> rand_skew(Rng& rng, int n) {
  Mat<Rational> w(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const Rational v = rand_rational(rng, 9, 4);
      w.at(i, j) = v;
      w.at(j, i) = -v;
    }
  return w;
}

inline SymMatrix<Rational> rand_sym(Rng& rng, int dim) {
  SymMatrix<Rational> m(dim);
  for (int i = 0; i < dim; ++i)
    for (int j = i; j < dim; ++j) m.set(i, j, rand_rational(rng, 9, 4));
  return m;
}

inline Mat<Rational> rand_unimodular(Rng& rng, int n) {
  Mat<Rational> lower = Mat<Rational>::identity(n);
  Mat<Rational> upper = Mat<Rational>::identity(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < i; ++j) {
      lower.at(i, j) = Rational(rng.int_in(-3, 3));
      upper.at(j, i) = Rational(rng.int_in(-3, 3));
    }
  return lower * upper;
}

using CaseFn = std::function<bool(Rng&, std::string&)>;

inline SuiteResult run_suite(const std::string& name, std::uint64_t seed,
                             int cases, const CaseFn& one_case) {
  SuiteResult result;
  result.name = name;
  result.cases = cases;
  Rng rng(seed);
  for (int i = 0; i < cases; ++i) {
    std::string note;
    bool ok = false;
    try {
      ok = one_case(rng, note);
    } catch (const std::exception& e) {
      note = std::string("exception: ") + e.what();
    }
    if (!ok) {
      ++result.failures;
      if (result.notes.size() < 3)
        result.notes.push_back("case " + std::to_string(i) +
                               (note.empty() ? "" : ": " + note));
    }
  }
  return result;
}

}  // namespace verify_detail

/// Runs every identity property suite with deterministic seeding.
inline VerifyReport run_verify(std::uint64_t seed, int cases) {
  using namespace verify_detail;
  if (cases < 1) throw InvalidParams("cases must be >= 1");
  VerifyReport report;
  report.seed = seed;
  report.cases = cases;

  report.suites.push_back(run_suite(
      "submersion-instability-identity", seed ^ 0x01, cases,
      [](Rng& rng, std::string&) {
        const int n = static_cast<int>(rng.int_in(1, 9));
        const int r = static_cast<int>(rng.int_in(1, 9));
        const Rational E = rand_positive(rng);
        const Rational a2 = rand_nonneg(rng);
        const auto inv = check_einstein_invariants(
            n, r, E, E * Rational(r) - a2, E * Rational(n) + Rational(2) * a2,
            a2);
        const Rational ratio_nr(n + r, n);
        const Rational long_form =
            Rational(-2) * inv.total_scal() + Rational(4 * (n + r)) * E +
            ratio_nr * ratio_nr * Rational(2) * a2 -
            Rational(2) * ratio_nr * ratio_nr *
                (inv.base_scal - Rational(3) * a2);
        if (long_form != submersion_instability(inv).value) return false;
        // Product reduction at vanishing A-tensor.
        const auto prod = check_einstein_invariants(
            n, r, E, E * Rational(r), E * Rational(n), Rational(0));
        return submersion_instability(prod).value ==
               Rational(2 * (n + r), static_cast<long long>(n) * n) *
                   (-Rational(n) * Rational(r) * E);
      }));

  report.suites.push_back(run_suite(
      "product-base-assembly", seed ^ 0x02, cases, [](Rng& rng, std::string&) {
        const int m = static_cast<int>(rng.int_in(2, 6));
        std::vector<int> n;
        std::vector<Rational> scal, a2;
        for (int p = 0; p < m; ++p) {
          n.push_back(static_cast<int>(rng.int_in(2, 6)));
          scal.push_back(rand_rational(rng));
          a2.push_back(rand_nonneg(rng));
        }
        const auto data = BaseFactorData<Rational>::make(n, scal, a2);
        const auto d = diagonal_coefficients(data);
        const int p = static_cast<int>(rng.int_in(0, m - 1));
        int q = static_cast<int>(rng.int_in(0, m - 2));
        if (q >= p) ++q;
        const auto v = pairwise_difference_value(data, p, q);
        if (v.value != d[static_cast<std::size_t>(p)] +
                           d[static_cast<std::size_t>(q)])
          return false;
        if (v.value != pairwise_difference_value(data, q, p).value)
          return false;
        // Basis independence of the restricted inertia.
        const auto span = difference_span<Rational>(m, m - 1);
        const auto base = coindex_lower_bound(d, span);
        const auto pmat = rand_unimodular(rng, m - 1);
        std::vector<std::vector<Rational>> rotated(
            static_cast<std::size_t>(m - 1),
            std::vector<Rational>(static_cast<std::size_t>(m), Rational(0)));
        for (int a = 0; a < m - 1; ++a)
          for (int b = 0; b < m - 1; ++b)
            for (int c = 0; c < m; ++c)
              rotated[static_cast<std::size_t>(a)]
                     [static_cast<std::size_t>(c)] +=
                  pmat.at(a, b) * span[static_cast<std::size_t>(b)]
                                      [static_cast<std::size_t>(c)];
        return coindex_lower_bound(d, rotated).inertia == base.inertia;
      }));

  report.suites.push_back(run_suite(
      "torus-einstein-identities", seed ^ 0x03, cases,
      [](Rng& rng, std::string& note) {
        const int m = static_cast<int>(rng.int_in(2, 6));
        const int r = static_cast<int>(rng.int_in(1, m - 1));
        const auto cfg = rand_einstein_torus(rng, m, r);
        const auto res = einstein_system_residual(cfg);
        if (res.inf_norm() != 0) {
          note = "nonzero residual";
          return false;
        }
        const auto gram = column_gram(cfg);
        // Trace consistency: total |A|^2 equals E r.
        Rational total(0);
        for (int i = 0; i < m; ++i) total += a_norm_sq(cfg, gram, i);
        if (total != res.E * Rational(r)) {
          note = "trace consistency failed";
          return false;
        }
        // Difference form equals the diagonal-coefficient route.
        std::vector<Rational> scal, a2;
        for (int i = 0; i < m; ++i) {
          scal.push_back(Rational(cfg.topology.n[static_cast<std::size_t>(i)]) *
                         cfg.topology.q[static_cast<std::size_t>(i)] /
                         cfg.x[static_cast<std::size_t>(i)]);
          a2.push_back(a_norm_sq(cfg, gram, i));
        }
        const auto d = diagonal_coefficients(
            BaseFactorData<Rational>::make(cfg.topology.n, scal, a2));
        std::vector<Rational> mu;
        for (int i = 0; i < m - r; ++i)
          mu.push_back(Rational(rng.int_in(-5, 5)));
        Rational telescoped(0), prev(0);
        for (int i = 0; i <= m - r; ++i) {
          const Rational cur =
              i < m - r ? mu[static_cast<std::size_t>(i)] : Rational(0);
          const Rational diff = cur - prev;
          telescoped += diff * diff * d[static_cast<std::size_t>(i)];
          prev = cur;
        }
        if (difference_form_value(cfg, mu) != telescoped) {
          note = "difference form route mismatch";
          return false;
        }
        const auto analysis = analyze_coindex(cfg);
        if (analysis.inertia.n_neg != m - r) {
          note = "coindex bound not m - r";
          return false;
        }
        if (!analysis.proof_bound_ok) {
          note = "bound chain violated";
          return false;
        }
        // Gauge rescaling by 4/3 preserves the Fano data and scales ghat.
        const Rational c(4, 3);
        std::vector<Rational> xc;
        for (const auto& xi : cfg.x) xc.push_back(c * xi);
        const auto scaled = einstein_config_from_scalings(
            cfg.topology.n, cfg.topology.b, xc, res.E / c);
        if (scaled.topology.q != cfg.topology.q) {
          note = "gauge rescaling changed the topology data";
          return false;
        }
        for (int a = 0; a < r; ++a)
          for (int b2 = a; b2 < r; ++b2)
            if (scaled.ghat.at(a, b2) != c * cfg.ghat.at(a, b2)) {
              note = "gauge rescaling did not scale ghat";
              return false;
            }
        return true;
      }));

  report.suites.push_back(run_suite(
      "qk-sign-properties", seed ^ 0x04, cases, [](Rng& rng, std::string&) {
        const int m = static_cast<int>(rng.int_in(3, 6));
        const auto cfg = rand_qk(rng, m);
        for (int i = 0; i < m; ++i)
          for (int j = i + 1; j < m; ++j)
            if (!(qk_pairwise_value(cfg, i, j).value < 0)) return false;
        // Dominated weights make the difference form strictly negative.
        const Rational lam = cfg.lam_total();
        bool dominated = true;
        for (const auto& li : cfg.lam)
          dominated = dominated && (lam > Rational(2) * li);
        if (dominated) {
          std::vector<Rational> mu;
          bool nonzero = false;
          for (int i = 0; i < m - 1; ++i) {
            mu.push_back(Rational(rng.int_in(-5, 5)));
            nonzero = nonzero || mu.back() != 0;
          }
          if (!nonzero) mu[0] = Rational(1);
          if (!(qk_difference_form_value(cfg, mu) < 0)) return false;
        }
        return true;
      }));

  report.suites.push_back(run_suite(
      "circle-pointwise-identities", seed ^ 0x05, std::max(1, cases / 4),
      [](Rng& rng, std::string&) {
        const int n = static_cast<int>(rng.int_in(2, 8));
        const auto pair = PointwiseTensorPair<Rational>::make(
            rand_skew(rng, n), rand_sym(rng, n).mat());
        const auto corr = pullback_corrections(pair);
        Rational assembled(0);
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j)
            assembled += (corr.laplacian.at(i, j) -
                          Rational(2) * corr.curvature.at(i, j)) *
                         pair.hcheck.at(i, j);
        if (assembled != stability_form_correction(pair)) return false;
        // Against the metric the curvature correction contracts to the
        // -3 |A|^2 constant with |A|^2 = |omega|^2 / 4.
        const auto metric_pair = PointwiseTensorPair<Rational>::make(
            pair.omega, Mat<Rational>::identity(n));
        const auto metric_corr = pullback_corrections(metric_pair);
        return trace(metric_corr.curvature.mat()) ==
               Rational(-3) * pair.omega_norm_sq() / Rational(4);
      }));

  report.suites.push_back(run_suite(
      "circle-simplex-identities", seed ^ 0x06, cases,
      [](Rng& rng, std::string&) {
        const int m = static_cast<int>(rng.int_in(1, 6));
        const int n = 2 * m + static_cast<int>(rng.int_in(0, 1));
        std::vector<Rational> t;
        Rational sum(0);
        for (int i = 0; i < m; ++i) {
          t.push_back(rand_positive(rng, 9, 4));
          sum += t.back();
        }
        for (auto& ti : t) ti = ti / sum;
        if (simplex_cubic_value<Rational>(t, n).factorization_residual != 0)
          return false;
        // Spectrum reduction 2(2E)^3 f(t).
        std::vector<Rational> b;
        Rational total(0);
        for (int i = 0; i < m; ++i) {
          b.push_back(rand_nonneg(rng, 9, 4));
          total += b.back();
        }
        if (total == 0) b[0] = Rational(1);
        const auto spectrum = OmegaSpectrum<Rational>::make(n, b);
        const Rational E = spectrum.omega_norm_sq() / Rational(4);
        std::vector<Rational> ts;
        for (const auto& bi : spectrum.b)
          ts.push_back(bi / (Rational(2) * E));
        const Rational twoE = Rational(2) * E;
        return ricci_deviation_direction_value(spectrum, Rational(0),
                                               Rational(0)) ==
               Rational(2) * twoE * twoE * twoE *
                   simplex_cubic_value<Rational>(ts, n).value;
      }));

  report.suites.push_back(run_suite(
      "kahler-bound", seed ^ 0x07, cases, [](Rng& rng, std::string&) {
        const int n = 2 * static_cast<int>(rng.int_in(1, 6));
        const Rational om2 = rand_positive(rng, 9, 4);
        const Rational h2 = rand_positive(rng, 9, 4);
        const Rational s(rng.int_in(-8, 8), 8);
        const Rational hj = s * h2;
        const auto res = kahler_direction_bound(n, om2, h2, hj);
        if (res.value > res.bound) return false;
        if (hj == h2 && res.value != res.bound) return false;
        if (hj < h2 && !(res.value < res.bound)) return false;
        return true;
      }));

  report.suites.push_back(run_suite(
      "inertia-congruence", seed ^ 0x08, cases, [](Rng& rng, std::string&) {
        const int dim = static_cast<int>(rng.int_in(1, 5));
        const auto m = rand_sym(rng, dim);
        const auto p = rand_unimodular(rng, dim);
        return inertia(congruence(p, m)) == inertia(m);
      }));

  report.suites.push_back(run_suite(
      "newton-residual-contract", seed ^ 0x09, 1, [](Rng&, std::string&) {
        NewtonOptions opt;
        opt.tol = 1e-12;
        const auto sqrt2 = newton_solve(
            [](const VecD& x) { return VecD{x[0] * x[0] - 2.0}; }, {1.0}, opt);
        if (std::abs(sqrt2[0] * sqrt2[0] - 2.0) > 1e-12) return false;
        const auto sys = newton_solve(
            [](const VecD& u) {
              const double x1 = u[0], x2 = u[1], w = u[2];
              return VecD{2.0 / x1 - w / (2 * x1 * x1) - 1.0,
                          2.0 / x2 - w / (2 * x2 * x2) - 1.0,
                          0.25 * (2.0 / (x1 * x1) + 2.0 / (x2 * x2)) -
                              1.0 / w};
            },
            {1.0, 1.0, 1.0}, opt);
        return std::abs(sys[0] - 4.0 / 3.0) < 1e-9 &&
               std::abs(sys[2] - 16.0 / 9.0) < 1e-9;
      }));

  for (const auto& suite : report.suites)
    report.all_passed = report.all_passed && suite.failures == 0;
  return report;
}

inline Json verify_to_json(const VerifyReport& report) {
  Json suites = Json::array();
  for (const auto& s : report.suites) {
    Json js{{"name", s.name},
            {"cases", s.cases},
            {"failures", s.failures}};
    if (!s.notes.empty()) js["notes"] = s.notes;
    suites.push_back(std::move(js));
  }
  return Json{{"seed", report.seed},
              {"cases", report.cases},
              {"suites", suites},
              {"all_passed", report.all_passed}};
}

}  // namespace einstab
