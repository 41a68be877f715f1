#pragma once

#include <optional>
#include <string>
#include <vector>

#include "einstab/circle_bundle.hpp"
#include "einstab/config.hpp"
#include "einstab/homogeneous_sp.hpp"
#include "einstab/jsonio.hpp"
#include "einstab/product_base.hpp"
#include "einstab/qk_bundle.hpp"
#include "einstab/submersion.hpp"
#include "einstab/torus_bundle.hpp"

namespace einstab {

/// Structured analysis result. Every numeric entry is a pure function
/// of the echoed inputs (and the seed), so reports are reproducible
/// byte for byte.
struct Report {
  std::string kind;
  std::string action;
  std::string verdict = "Inconclusive";
  std::string witness;
  Json inputs = Json::object();
  Json quantities = Json::object();
  Json identity_checks = Json::object();
  Json provenance = Json::array();
  std::optional<int> coindex_lower_bound;
  std::vector<std::string> warnings;

  int exit_code() const { return warnings.empty() ? 0 : 2; }
};

inline Json report_to_json(const Report& r) {
  Json j{{"kind", r.kind},
         {"action", r.action},
         {"verdict", r.verdict},
         {"witness", r.witness},
         {"inputs", r.inputs},
         {"quantities", r.quantities},
         {"identity_checks", r.identity_checks},
         {"provenance", r.provenance},
         {"warnings", r.warnings}};
  if (r.coindex_lower_bound) j["coindex_lower_bound"] = *r.coindex_lower_bound;
  return j;
}

namespace detail {

/// Float verdicts require a margin of ten times the tolerance; values
/// inside the margin are reported as inconclusive with a warning.
template <class T>
void apply_verdict(Report& rep, const T& value, Verdict strict,
                   double float_tol) {
  if constexpr (is_exact_v<T>) {
    rep.verdict = to_cstring(strict);
  } else {
    if (strict == Verdict::Unstable && !(value < -10.0 * float_tol)) {
      rep.verdict = to_cstring(Verdict::Inconclusive);
      rep.warnings.push_back(
          "computed value " + format_scalar(value) +
          " is within the 10x roundoff margin of zero; verdict downgraded");
    } else {
      rep.verdict = to_cstring(strict);
    }
  }
}

inline void echo_inputs(Report& rep, const AnalysisConfig& cfg,
                        bool with_solver = false) {
  rep.inputs["kind"] = to_string(cfg.kind);
  rep.inputs["action"] = cfg.action;
  rep.inputs["mode"] = cfg.mode == Mode::Exact ? "exact" : "float";
  rep.inputs["float_tol"] = cfg.float_tol;
  rep.inputs["payload"] = cfg.payload;
  if (with_solver)
    rep.inputs["solver"] = Json{{"gauge_E", cfg.solver.gauge_E},
                                {"starts", cfg.solver.starts},
                                {"seed", cfg.solver.seed}};
}

template <class T>
T payload_scalar(const Json& p, const std::string& field) {
  return scalar_from_json<T>(p.at(field), field);
}

inline Json provenance_entry(const std::string& formula,
                             const std::string& citation) {
  return Json{{"formula", formula}, {"citation", citation}};
}

// ---------------------------------------------------------------- submersion

template <class T>
Report run_submersion(const AnalysisConfig& cfg) {
  Report rep;
  rep.kind = to_string(cfg.kind);
  rep.action = cfg.action.empty() ? "theorem" : cfg.action;
  echo_inputs(rep, cfg);
  const Json& p = cfg.payload;
  const T tol = is_exact_v<T> ? T(0) : T(cfg.float_tol);
  const auto inv = check_einstein_invariants<T>(
      p.at("n").get<int>(), p.at("r").get<int>(), payload_scalar<T>(p, "E"),
      payload_scalar<T>(p, "fiber_scal"), payload_scalar<T>(p, "base_scal"),
      payload_scalar<T>(p, "a_norm_sq"), tol);
  rep.identity_checks["fiber_constraint"] = "holds";
  rep.identity_checks["base_constraint"] = "holds";
  rep.quantities["n"] = inv.n;
  rep.quantities["r"] = inv.r;
  rep.quantities["E"] = scalar_to_json(inv.E);
  rep.quantities["fiber_scal"] = scalar_to_json(inv.fiber_scal);
  rep.quantities["base_scal"] = scalar_to_json(inv.base_scal);
  rep.quantities["a_norm_sq"] = scalar_to_json(inv.a_norm_sq);
  rep.quantities["total_scal"] = scalar_to_json(inv.total_scal());
  rep.provenance.push_back(provenance_entry(
      "fiber_scal + |A|^2 = E r and base_scal - 2 |A|^2 = E n",
      "Einstein conditions for a Riemannian submersion with totally geodesic "
      "fibers"));
  if (rep.action == "check") {
    rep.verdict = to_cstring(Verdict::Inconclusive);
    return rep;
  }
  const auto res = submersion_instability(inv);
  rep.quantities["core_quantity"] = scalar_to_json(
      T(inv.r) * inv.base_scal - T(2 * inv.n) * inv.fiber_scal);
  rep.quantities["value"] = scalar_to_json(res.value);
  rep.witness = res.direction;
  rep.provenance.push_back(provenance_entry(
      "value = (2(n+r)/n^2) (r base_scal - 2 n fiber_scal)",
      "per-unit-volume second variation of the normalized total scalar "
      "curvature along g - ((n+r)/n) pi*(g_base)"));
  apply_verdict(rep, res.value, res.verdict, cfg.float_tol);
  return rep;
}

template <class T>
Report run_canonical(const AnalysisConfig& cfg) {
  Report rep;
  rep.kind = to_string(cfg.kind);
  rep.action = "canonical";
  echo_inputs(rep, cfg);
  const Json& p = cfg.payload;
  const auto res = canonical_variation_value<T>(
      p.at("n").get<int>(), p.at("r").get<int>(),
      payload_scalar<T>(p, "E_fiber"), payload_scalar<T>(p, "E_base"));
  rep.quantities["value"] = scalar_to_json(res.value);
  rep.witness = res.direction;
  rep.provenance.push_back(provenance_entry(
      "value = r n (E_base - 2 E_fiber)",
      "canonical variation of the fiber scaling for Einstein fiber and base; "
      "instability when E_base < 2 E_fiber"));
  apply_verdict(rep, res.value, res.verdict, cfg.float_tol);
  return rep;
}

// -------------------------------------------------------------- product base

template <class T>
Report run_product_base(const AnalysisConfig& cfg) {
  Report rep;
  rep.kind = to_string(cfg.kind);
  rep.action = "analyze";
  echo_inputs(rep, cfg);
  const Json& p = cfg.payload;

  std::vector<int> n;
  for (const auto& d : p.at("n")) n.push_back(d.get<int>());
  const auto data = BaseFactorData<T>::make(
      n, vector_from_json<T>(p.at("scal"), "scal"),
      vector_from_json<T>(p.at("a_norm_sq"), "a_norm_sq"));
  const int m = data.factors();

  const auto d = diagonal_coefficients(data);
  rep.quantities["diagonal_coefficients"] = vector_to_json(d);

  Json pair_values = Json::array();
  T best_value{};
  int best_p = -1, best_q = -1;
  for (int a = 0; a < m; ++a)
    for (int b = a + 1; b < m; ++b) {
      const auto v = pairwise_difference_value(data, a, b);
      pair_values.push_back(Json{{"p", a + 1},
                                 {"q", b + 1},
                                 {"value", scalar_to_json(v.value)}});
      if (best_p < 0 || v.value < best_value) {
        best_value = v.value;
        best_p = a;
        best_q = b;
      }
    }
  rep.quantities["pairwise_values"] = pair_values;

  std::vector<std::vector<T>> span;
  if (p.contains("span")) {
    for (const auto& row : p.at("span"))
      span.push_back(vector_from_json<T>(row, "span"));
  } else {
    span = difference_span<T>(m, m - 1);
  }
  const auto bound = coindex_lower_bound(
      d, span, is_exact_v<T> ? T(0) : T(cfg.float_tol));
  rep.quantities["form"] = matrix_to_json(bound.form.mat());
  rep.quantities["inertia"] = inertia_to_json(bound.inertia);
  rep.coindex_lower_bound = bound.inertia.n_neg;

  rep.provenance.push_back(provenance_entry(
      "d_p = (8 |A^(p)|^2 - 2 s_p) / n_p^2",
      "diagonalization of the second-variation form on trace-free "
      "combinations of pulled-back factor metrics"));
  rep.provenance.push_back(provenance_entry(
      "value(p,q) = d_p + d_q",
      "second variation along pi*(g_p/n_p - g_q/n_q)"));

  const auto pv = pairwise_difference_value(data, best_p, best_q);
  rep.witness = pv.direction;
  apply_verdict(rep, pv.value, pv.verdict, cfg.float_tol);
  return rep;
}

// --------------------------------------------------------------------- torus

template <class T>
Json torus_analysis_json(Report& rep, const TorusBundleConfig<T>& bundle,
                         const AnalysisConfig& cfg) {
  const auto res = einstein_system_residual(bundle);
  const auto gram = column_gram(bundle);
  Json out;
  out["E"] = scalar_to_json(res.E);
  out["residual_norm"] = scalar_to_json(res.inf_norm());
  out["gram"] = matrix_to_json(gram.mat());
  Json a2 = Json::array();
  for (int i = 0; i < bundle.m(); ++i)
    a2.push_back(scalar_to_json(a_norm_sq(bundle, gram, i)));
  out["a_norm_sq"] = a2;

  const T einstein_tol =
      is_exact_v<T> ? T(0) : T(std::max(cfg.float_tol * 100.0, 1e-8));
  AnalyzeOptions aopt;
  aopt.seed = cfg.solver.seed == 0 ? AnalyzeOptions{}.seed : cfg.solver.seed;
  const T zero_tol =
      is_exact_v<T> ? T(0) : T(1e-9);
  const auto analysis = analyze_coindex(bundle, einstein_tol, zero_tol, aopt);
  Json perm = Json::array();
  for (int idx : analysis.permutation) perm.push_back(idx + 1);
  out["sorted_factors"] = perm;
  out["form"] = matrix_to_json(analysis.form.mat());
  out["inertia"] = inertia_to_json(analysis.inertia);
  out["proof_bound_ok"] = analysis.proof_bound_ok;
  if (!analysis.note.empty()) out["note"] = analysis.note;
  rep.coindex_lower_bound = analysis.coindex_lower_bound;
  rep.witness = analysis.witness;
  if (!analysis.proof_bound_ok)
    rep.warnings.push_back("sampled proof bound chain failed");

  if (analysis.form.dim() > 0) {
    apply_verdict(rep, analysis.form.at(0, 0),
                  analysis.inertia.n_neg > 0 ? Verdict::Unstable
                                             : Verdict::Inconclusive,
                  cfg.float_tol);
  } else {
    rep.verdict = to_cstring(Verdict::Inconclusive);
  }
  return out;
}

inline void torus_provenance(Report& rep) {
  rep.provenance.push_back(provenance_entry(
      "C_jk = sum_{a,b} b_aj ghat_ab b_bk",
      "gram matrix of the classifying columns in the fiber metric"));
  rep.provenance.push_back(provenance_entry(
      "q_i/x_i = E + C_ii/(2 x_i^2); (1/4) b diag(n_i/x_i^2) b^T = E ghat^-1; "
      "E = (1/4r) sum_j n_j C_jj / x_j^2",
      "Einstein system for torus bundles over products of Fano "
      "Kaehler-Einstein factors with Ricci-flat fibers"));
  rep.provenance.push_back(provenance_entry(
      "value(mu) = sum_i (mu_i - mu_{i-1})^2 (C_ii/x_i^2 - 2E)/n_i",
      "second variation along pulled-back consecutive difference "
      "directions"));
  rep.provenance.push_back(provenance_entry(
      "value(mu) <= -mu_1^2 C_11/(2r x_1^2) - sum_{i=2}^{m-r} "
      "(mu_i - mu_{i-1})^2 C_ii/(2r x_i^2)",
      "bound chain after sorting factors by n_i C_ii / x_i^2; forces "
      "coindex >= m - r"));
}

template <class T>
TorusBundleConfig<T> torus_config_from_payload(const Json& p) {
  std::vector<int> n;
  for (const auto& d : p.at("n")) n.push_back(d.get<int>());
  Mat<int> b(static_cast<int>(p.at("b").size()), static_cast<int>(n.size()));
  for (int i = 0; i < b.rows(); ++i)
    for (int j = 0; j < b.cols(); ++j)
      b.at(i, j) =
          p.at("b")[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]
              .get<int>();
  auto topo = TorusTopology<T>::make(n, vector_from_json<T>(p.at("q"), "q"),
                                     std::move(b));
  if (!p.contains("x") || !p.contains("ghat"))
    throw SchemaError("torus analyze requires 'x' and 'ghat' in the payload");
  return TorusBundleConfig<T>::make(
      std::move(topo), vector_from_json<T>(p.at("x"), "x"),
      SymMatrix<T>::from_mat(matrix_from_json<T>(p.at("ghat"), "ghat")));
}

template <class T>
Report run_torus_analyze(const AnalysisConfig& cfg) {
  Report rep;
  rep.kind = to_string(cfg.kind);
  rep.action = "analyze";
  echo_inputs(rep, cfg, true);
  const auto bundle = torus_config_from_payload<T>(cfg.payload);
  rep.quantities = torus_analysis_json(rep, bundle, cfg);
  torus_provenance(rep);
  return rep;
}

inline Report run_torus_solve(const AnalysisConfig& cfg) {
  Report rep;
  rep.kind = to_string(cfg.kind);
  rep.action = "solve";
  echo_inputs(rep, cfg, true);
  const Json& p = cfg.payload;
  std::vector<int> n;
  for (const auto& d : p.at("n")) n.push_back(d.get<int>());
  Mat<int> b(static_cast<int>(p.at("b").size()), static_cast<int>(n.size()));
  for (int i = 0; i < b.rows(); ++i)
    for (int j = 0; j < b.cols(); ++j)
      b.at(i, j) =
          p.at("b")[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]
              .get<int>();
  auto topo = TorusTopology<double>::make(
      n, vector_from_json<double>(p.at("q"), "q"), std::move(b));

  TorusSolveOptions opt;
  opt.gauge_E = cfg.solver.gauge_E;
  opt.starts = cfg.solver.starts;
  opt.seed = cfg.solver.seed;
  const auto result = solve_einstein(topo, opt);

  Json sols = Json::array();
  for (const auto& sol : result.solutions) {
    sols.push_back(Json{{"x", vector_to_json(sol.config.x)},
                        {"ghat", matrix_to_json(sol.config.ghat.mat())},
                        {"residual_norm", sol.residual_norm}});
  }
  rep.quantities["solutions"] = sols;
  rep.quantities["solution_count"] = static_cast<int>(result.solutions.size());

  const auto& best = result.solutions.front().config;
  Json analysis = torus_analysis_json(rep, best, cfg);
  rep.quantities.update(analysis);
  rep.quantities["x"] = vector_to_json(best.x);
  rep.quantities["ghat"] = matrix_to_json(best.ghat.mat());
  torus_provenance(rep);
  return rep;
}

// ------------------------------------------------------------------------ qk

template <class T>
Report run_qk(const AnalysisConfig& cfg) {
  Report rep;
  rep.kind = to_string(cfg.kind);
  rep.action = "analyze";
  echo_inputs(rep, cfg);
  const Json& p = cfg.payload;
  std::vector<int> N;
  for (const auto& d : p.at("N")) N.push_back(d.get<int>());
  const auto qk = QkConfig<T>::make(N, vector_from_json<T>(p.at("E"), "E"),
                                    vector_from_json<T>(p.at("x"), "x"),
                                    vector_from_json<T>(p.at("lam"), "lam"));
  const int m = qk.m();
  rep.quantities["lam_total"] = scalar_to_json(qk.lam_total());
  Json a2 = Json::array();
  for (int i = 0; i < m; ++i) a2.push_back(scalar_to_json(qk_a_norm_sq(qk, i)));
  rep.quantities["a_norm_sq"] = a2;

  Json pair_values = Json::array();
  T min_pair{};
  bool have_pair = false;
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) {
      const auto v = qk_pairwise_value(qk, i, j);
      pair_values.push_back(Json{{"i", i + 1},
                                 {"j", j + 1},
                                 {"value", scalar_to_json(v.value)}});
      if (!have_pair || v.value < min_pair) {
        min_pair = v.value;
        have_pair = true;
      }
    }
  rep.quantities["pairwise_values"] = pair_values;

  const T zero_tol = is_exact_v<T> ? T(0) : T(1e-9);
  const auto analysis = qk_analyze(qk, zero_tol);
  rep.quantities["form"] = matrix_to_json(analysis.form.mat());
  rep.quantities["inertia"] = inertia_to_json(analysis.inertia);
  rep.quantities["definite_case"] = analysis.definite_case;
  if (!analysis.note.empty()) rep.quantities["note"] = analysis.note;
  rep.coindex_lower_bound = analysis.coindex_lower_bound;
  rep.witness = analysis.witness.empty()
                    ? "pi*(g_1/4N_1 - g_2/4N_2) (pairwise direction)"
                    : analysis.witness;

  rep.provenance.push_back(provenance_entry(
      "|A^(i)|^2 = (3/2) 4 N_i E_i^2 lam_i (1 - lam_i/lam) / ((N_i+2)^2 "
      "x_i^2)",
      "A-tensor norm for SO(3)-type bundles over quaternionic Kaehler "
      "factors"));
  rep.provenance.push_back(provenance_entry(
      "pairwise and multi-direction difference forms as displayed",
      "second variation along pulled-back factor-difference directions; "
      "negative for all admissible data, coindex >= m - 1 when the fiber "
      "weights are dominated"));

  apply_verdict(rep, min_pair, analysis.verdict, cfg.float_tol);
  return rep;
}

// ------------------------------------------------------------------ homog sp

inline Report run_homog_sp(const AnalysisConfig& cfg) {
  if (cfg.mode != Mode::Exact)
    throw SchemaError(
        "homog-sp analyses are exact by design; use mode 'exact'");
  Report rep;
  rep.kind = to_string(cfg.kind);
  echo_inputs(rep, cfg);
  const Json& p = cfg.payload;

  rep.provenance.push_back(provenance_entry(
      "r = 2k(k-1)q^2, n = 2(m-k)(m+k-1)q^2, with the displayed scalar "
      "curvatures and Ricci eigenvalues",
      "normal homogeneous metrics on Sp(mq) quotients via Casimir "
      "constants"));
  rep.provenance.push_back(provenance_entry(
      "r s_check - 2 n s_hat = (2k(k-1)(m-k)q^4/(mq+1)) * bracket",
      "factored instability quantity; unstable when negative"));

  if (cfg.action == "scan") {
    rep.action = "scan";
    const auto scan =
        sp_family_scan(p.at("m_max").get<int>(), p.at("q_max").get<int>());
    Json rows = Json::array();
    for (const auto& row : scan.rows)
      rows.push_back(Json{{"m", row.m},
                          {"q", row.q},
                          {"k", row.k},
                          {"value", scalar_to_json(row.value)},
                          {"bracket", scalar_to_json(row.bracket)},
                          {"verdict", to_cstring(row.verdict)}});
    rep.quantities["rows"] = rows;
    rep.quantities["row_count"] = static_cast<int>(scan.rows.size());
    rep.identity_checks["near_top_always_unstable"] =
        scan.near_top_always_unstable;
    rep.identity_checks["k_equals_m_minus_4_threshold_matches"] =
        scan.threshold_matches;
    rep.quantities["su_family"] = su_family_threshold_note();
    rep.quantities["so_family"] = so_family_threshold_note();
    rep.verdict = to_cstring(Verdict::Inconclusive);
    if (!scan.near_top_always_unstable || !scan.threshold_matches)
      rep.warnings.push_back("a scan criterion failed");
    return rep;
  }

  rep.action = "sp";
  const auto params = SpFamilyParams::make(
      p.at("m").get<int>(), p.at("q").get<int>(), p.at("k").get<int>());
  const auto inv = sp_family_invariants(params);
  const auto quant = sp_family_quantity(params);
  rep.quantities["r"] = inv.r;
  rep.quantities["n"] = inv.n;
  rep.quantities["fiber_scal"] = scalar_to_json(inv.fiber_scal);
  rep.quantities["base_scal"] = scalar_to_json(inv.base_scal);
  rep.quantities["fiber_einstein"] = scalar_to_json(inv.fiber_einstein);
  rep.quantities["ricci_eigs"] = Json::array(
      {scalar_to_json(inv.ricci_eig_mixed), scalar_to_json(inv.ricci_eig_small)});
  rep.quantities["quantity"] = scalar_to_json(quant.value);
  rep.quantities["bracket"] = scalar_to_json(quant.bracket);
  rep.quantities["prefactor"] = scalar_to_json(quant.prefactor);
  rep.quantities["su_family"] = su_family_threshold_note();
  rep.quantities["so_family"] = so_family_threshold_note();
  rep.identity_checks["direct_equals_factored"] = true;
  rep.identity_checks["fiber_scal_equals_r_times_fiber_einstein"] =
      inv.fiber_scal == Rational(inv.r) * inv.fiber_einstein;
  rep.witness = "g - ((n+r)/n) pi*(g_base)";
  rep.verdict = to_cstring(quant.verdict);
  return rep;
}

// -------------------------------------------------------------------- circle

template <class T>
Report run_circle(const AnalysisConfig& cfg) {
  Report rep;
  rep.kind = to_string(cfg.kind);
  rep.action = cfg.action.empty() ? "pointwise" : cfg.action;
  echo_inputs(rep, cfg);
  const Json& p = cfg.payload;
  const int n = p.at("n").get<int>();

  if (rep.action == "f-scan") {
    const int steps = p.at("grid_steps").get<int>();
    const auto scan = simplex_scan(n, steps);
    rep.quantities["max_value"] = scalar_to_json(scan.max_value);
    rep.quantities["argmax"] = vector_to_json(scan.argmax);
    rep.quantities["max_nonpositive"] = scan.max_nonpositive;
    rep.quantities["equality_only_at_barycenter"] =
        scan.equality_only_at_barycenter;
    rep.provenance.push_back(provenance_entry(
        "f(t) = sum t_i^3 - (1 + 4/n) sum t_i^2 + 2/n + 4/n^2 on the simplex",
        "algebraic part of the second variation along the Ricci-deviation "
        "direction, normalized by 2(2E)^3"));
    rep.verdict = to_cstring(scan.verdict);
    rep.witness =
        scan.verdict == Verdict::Unstable
            ? "pi*(h_check - (|omega|^2/n) g_check), h_check built from the "
              "curvature form"
            : "";
    return rep;
  }

  if (rep.action == "kahler-bound") {
    const auto res = kahler_direction_bound<T>(
        n, payload_scalar<T>(p, "omega_norm_sq"),
        payload_scalar<T>(p, "h_norm_sq"), payload_scalar<T>(p, "hJ_pairing"));
    rep.quantities["value"] = scalar_to_json(res.value);
    rep.quantities["bound"] = scalar_to_json(res.bound);
    rep.identity_checks["value_le_bound"] = true;
    rep.witness = res.witness;
    rep.provenance.push_back(provenance_entry(
        "value = -((n+2)/(2n)) |w|^2 |h|^2 + (|w|^2/n)(|h|^2 + <h(J'.,J'.), "
        "h>) <= -(1/2 - 1/n) |w|^2 |h|^2",
        "second variation along J'-composed harmonic (1,1)-directions on a "
        "Kaehler-Einstein base; unstable for n >= 4"));
    apply_verdict(rep, res.value, res.verdict, cfg.float_tol);
    return rep;
  }

  // Pointwise algebra: spectrum route (preferred) or matrix route.
  if (p.contains("b")) {
    const auto spectrum = OmegaSpectrum<T>::make(
        n, vector_from_json<T>(p.at("b"), "b"));
    const T om2 = spectrum.omega_norm_sq();
    if (!(om2 > T(0)))
      throw InvalidParams("spectrum must not vanish identically");
    if (p.contains("E")) {
      const T tol = is_exact_v<T> ? T(0) : T(cfg.float_tol);
      circle_einstein_check(n, payload_scalar<T>(p, "E"), spectrum, tol);
      rep.identity_checks["einstein_normalization"] = "holds";
    }
    const T E = om2 / T(4);
    const T D1 = p.contains("D1") ? payload_scalar<T>(p, "D1") : T(0);
    const T D2 = p.contains("D2") ? payload_scalar<T>(p, "D2") : T(0);
    const T value = ricci_deviation_direction_value(spectrum, D1, D2);
    std::vector<T> t;
    for (const auto& bi : spectrum.b) t.push_back(bi / (T(2) * E));
    const auto f = simplex_cubic_value<T>(t, n, is_exact_v<T> ? T(0)
                                                              : T(1e-12));
    rep.quantities["E"] = scalar_to_json(E);
    rep.quantities["base_scal"] =
        scalar_to_json((ratio<T>(n, 4) + ratio<T>(1, 2)) * om2);
    rep.quantities["omega_norm_sq"] = scalar_to_json(om2);
    rep.quantities["h_norm_sq"] = scalar_to_json(spectrum.h_norm_sq());
    rep.quantities["value"] = scalar_to_json(value);
    rep.quantities["t"] = vector_to_json(t);
    rep.quantities["f"] = scalar_to_json(f.value);
    rep.identity_checks["factorization_residual_zero"] =
        f.factorization_residual == T(0);
    const T twoE = T(2) * E;
    rep.identity_checks["value_equals_2_8E3_f"] =
        scalar_abs(value - T(2) * twoE * twoE * twoE * f.value) <=
        (is_exact_v<T> ? T(0) : T(1e-9));
    rep.witness = "pi*(h_check - (|omega|^2/n) g_check)";
    rep.provenance.push_back(provenance_entry(
        "value = 2 D1 - D2 + tr h^3 - (1/2 + 2/n) |w|^2 |h|^2 + |w|^6 (1/(2n) "
        "+ 1/n^2)",
        "second variation along the pulled-back Ricci-deviation direction on "
        "an Einstein circle bundle; D1 = 0 and the dropped gradient term make "
        "it an upper bound for harmonic-curvature bases"));
    apply_verdict(rep, value, value < T(0) ? Verdict::Unstable
                                           : Verdict::Inconclusive,
                  cfg.float_tol);
    return rep;
  }

  const Mat<T> omega = matrix_from_json<T>(p.at("omega"), "omega");
  const Mat<T> hcheck = p.contains("hcheck")
                            ? matrix_from_json<T>(p.at("hcheck"), "hcheck")
                            : omega * transpose(omega);
  const auto pair = PointwiseTensorPair<T>::make(omega, hcheck);
  const auto corr = pullback_corrections(pair);
  const T total = stability_form_correction(pair);
  rep.quantities["omega_norm_sq"] = scalar_to_json(pair.omega_norm_sq());
  rep.quantities["laplacian_correction"] =
      matrix_to_json(corr.laplacian.mat());
  rep.quantities["curvature_correction"] =
      matrix_to_json(corr.curvature.mat());
  rep.quantities["stability_form_correction"] = scalar_to_json(total);
  rep.identity_checks["index_sum_routes_agree"] = true;
  T assembled(0);
  for (int i = 0; i < pair.n; ++i)
    for (int j = 0; j < pair.n; ++j)
      assembled += (corr.laplacian.at(i, j) - T(2) * corr.curvature.at(i, j)) *
                   pair.hcheck.at(i, j);
  rep.identity_checks["assembly_matches_total_correction"] =
      scalar_abs(assembled - total) <= (is_exact_v<T> ? T(0) : T(1e-9));
  rep.provenance.push_back(provenance_entry(
      "lap and curvature corrections by literal index sums and closed matrix "
      "products",
      "pullback of the rough Laplacian and curvature action along a circle "
      "fibration"));
  rep.verdict = to_cstring(Verdict::Inconclusive);
  return rep;
}

}  // namespace detail

/// Dispatches a validated configuration to the matching analysis.
inline Report run(const AnalysisConfig& cfg) {
  const bool exact = cfg.mode == Mode::Exact;
  switch (cfg.kind) {
    case AnalysisKind::Submersion:
      return exact ? detail::run_submersion<Rational>(cfg)
                   : detail::run_submersion<double>(cfg);
    case AnalysisKind::Canonical:
      return exact ? detail::run_canonical<Rational>(cfg)
                   : detail::run_canonical<double>(cfg);
    case AnalysisKind::ProductBase:
      return exact ? detail::run_product_base<Rational>(cfg)
                   : detail::run_product_base<double>(cfg);
    case AnalysisKind::Torus:
      if (cfg.action == "solve") {
        if (exact)
          throw SchemaError(
              "torus solve is a floating-point Newton iteration; use mode "
              "'float'");
        return detail::run_torus_solve(cfg);
      }
      return exact ? detail::run_torus_analyze<Rational>(cfg)
                   : detail::run_torus_analyze<double>(cfg);
    case AnalysisKind::Qk:
      return exact ? detail::run_qk<Rational>(cfg)
                   : detail::run_qk<double>(cfg);
    case AnalysisKind::HomogSp:
      return detail::run_homog_sp(cfg);
    case AnalysisKind::Circle:
      return exact ? detail::run_circle<Rational>(cfg)
                   : detail::run_circle<double>(cfg);
  }
  throw Error("unhandled analysis kind");
}

/// Renders a report as canonical JSON or markdown.
inline std::string render_report(const Report& rep, const std::string& format) {
  if (format == "json") return dump_canonical(report_to_json(rep));
  if (format != "md" && format != "markdown")
    throw InvalidParams("unknown report format '" + format +
                        "' (expected 'json' or 'md')");
  std::string out;
  out += "# " + rep.kind +
         (rep.action.empty() ? std::string() : " " + rep.action) +
         " analysis\n\n";
  out += "## Verdict\n\n**" + rep.verdict + "**\n\n";
  if (!rep.witness.empty()) out += "Witness direction: `" + rep.witness + "`\n\n";
  if (rep.coindex_lower_bound)
    out += "Coindex lower bound: " + std::to_string(*rep.coindex_lower_bound) +
           "\n\n";
  if (!rep.warnings.empty()) {
    out += "## Warnings\n\n";
    for (const auto& w : rep.warnings) out += "- " + w + "\n";
    out += "\n";
  }
  out += "## Quantities\n\n```json\n" + dump_canonical(rep.quantities) +
         "```\n\n";
  if (!rep.identity_checks.empty())
    out += "## Identity checks\n\n```json\n" +
           dump_canonical(rep.identity_checks) + "```\n\n";
  out += "## Provenance\n\n";
  for (const auto& entry : rep.provenance)
    out += "- " + entry.at("formula").get<std::string>() + " :: " +
           entry.at("citation").get<std::string>() + "\n";
  out += "\n## Inputs\n\n```json\n" + dump_canonical(rep.inputs) + "```\n";
  return out;
}

}  // namespace einstab
