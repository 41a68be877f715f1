// Command-line front end: loads JSON analysis configurations, runs the
// requested stability analysis, and emits a deterministic report.
//
// Exit codes: 0 on success, 2 when a verdict was computed with
// warnings, 1 on error (an error report is printed as JSON).

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include "einstab/analyses.hpp"
#include "einstab/config.hpp"
#include "einstab/verify.hpp"

namespace {

using namespace einstab;

struct CommonArgs {
  std::string config_path;
  std::string mode;
  std::string format = "json";
  std::optional<double> gauge_E;
  std::optional<int> starts;
  std::optional<std::uint64_t> seed;
};

void add_common(CLI::App* cmd, CommonArgs& args, bool with_solver) {
  cmd->add_option("--config", args.config_path, "JSON configuration file")
      ->required();
  cmd->add_option("--mode", args.mode, "arithmetic mode: exact or float");
  cmd->add_option("--format", args.format, "report format: json or md");
  if (with_solver) {
    cmd->add_option("--gauge-E", args.gauge_E,
                    "prescribed Einstein constant for the solve");
    cmd->add_option("--starts", args.starts, "number of solver starts");
    cmd->add_option("--seed", args.seed, "seed for randomized components");
  }
}

std::uint64_t env_seed_override(std::uint64_t fallback) {
  if (const char* env = std::getenv("EINSTEIN_STABILITY_SEED"))
    return std::strtoull(env, nullptr, 10);
  return fallback;
}

int emit_report(const AnalysisConfig& cfg, const std::string& format) {
  const Report rep = run(cfg);
  std::cout << render_report(rep, format);
  return rep.exit_code();
}

AnalysisConfig load_for(const CommonArgs& args, AnalysisKind kind,
                        const std::string& action) {
  AnalysisConfig cfg = load_config(args.config_path, action);
  if (cfg.kind != kind)
    throw SchemaError("config kind '" + to_string(cfg.kind) +
                      "' does not match the subcommand (expected '" +
                      to_string(kind) + "')");
  if (!action.empty()) cfg.action = action;
  if (!args.mode.empty()) {
    if (args.mode == "exact")
      cfg.mode = Mode::Exact;
    else if (args.mode == "float")
      cfg.mode = Mode::Float;
    else
      throw SchemaError("mode must be 'exact' or 'float'");
  }
  if (args.gauge_E) cfg.solver.gauge_E = *args.gauge_E;
  if (args.starts) cfg.solver.starts = *args.starts;
  if (args.seed) cfg.solver.seed = *args.seed;
  cfg.solver.seed = env_seed_override(cfg.solver.seed);
  detail::check_payload(cfg.kind, cfg.action, cfg.payload);
  return cfg;
}

int error_report(const std::exception& e, const std::string& type) {
  const Json err{{"error", Json{{"type", type}, {"message", e.what()}}}};
  std::cout << dump_canonical(err);
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Linear-stability analysis of Einstein metrics of Riemannian-submersion "
      "type"};
  app.require_subcommand(1);

  CommonArgs check_args, theorem_args, canonical_args, product_args;
  CommonArgs torus_solve_args, torus_analyze_args, qk_args;
  CommonArgs circle_fscan_args, circle_pointwise_args, circle_kahler_args;

  auto* check = app.add_subcommand(
      "check", "validate Einstein constraint identities for a submersion");
  add_common(check, check_args, false);

  auto* theorem1 = app.add_subcommand(
      "theorem1",
      "instability value along the fiber/base rescaling direction");
  add_common(theorem1, theorem_args, false);

  auto* canonical = app.add_subcommand(
      "canonical", "canonical-variation criterion for Einstein fiber/base");
  add_common(canonical, canonical_args, false);

  auto* product = app.add_subcommand(
      "product-base", "difference directions over a product base");
  add_common(product, product_args, false);

  auto* torus = app.add_subcommand(
      "torus", "torus bundles over products of Fano Kaehler-Einstein factors");
  torus->require_subcommand(1);
  auto* torus_solve =
      torus->add_subcommand("solve", "solve the Einstein system and analyze");
  add_common(torus_solve, torus_solve_args, true);
  auto* torus_analyze = torus->add_subcommand(
      "analyze", "analyze a given Einstein configuration");
  add_common(torus_analyze, torus_analyze_args, true);

  auto* qk = app.add_subcommand(
      "qk", "SO(3)-type bundles over quaternionic Kaehler products");
  qk->require_subcommand(1);
  auto* qk_analyze_cmd = qk->add_subcommand("analyze", "coindex analysis");
  add_common(qk_analyze_cmd, qk_args, false);

  auto* homog = app.add_subcommand("homog", "normal homogeneous families");
  homog->require_subcommand(1);
  auto* homog_sp = homog->add_subcommand(
      "sp", "symplectic-group family instability quantity");
  bool sp_scan = false;
  std::optional<int> sp_m, sp_q, sp_k, sp_m_max, sp_q_max;
  std::string sp_config, sp_format = "json";
  homog_sp->add_flag("--scan", sp_scan, "scan all admissible (m, q, k)");
  homog_sp->add_option("--config", sp_config, "JSON configuration file");
  homog_sp->add_option("-m,--m", sp_m, "number of Sp(q) factors");
  homog_sp->add_option("-q,--q", sp_q, "symplectic rank parameter");
  homog_sp->add_option("-k,--k", sp_k, "fiber block size (1 < k < m)");
  homog_sp->add_option("--m-max", sp_m_max, "scan bound for m");
  homog_sp->add_option("--q-max", sp_q_max, "scan bound for q");
  homog_sp->add_option("--format", sp_format, "report format: json or md");

  auto* circle = app.add_subcommand("circle", "Einstein circle bundles");
  circle->require_subcommand(1);
  auto* circle_fscan = circle->add_subcommand(
      "f-scan", "exact grid maximum of the simplex cubic");
  add_common(circle_fscan, circle_fscan_args, false);
  auto* circle_pointwise = circle->add_subcommand(
      "pointwise", "pointwise tensor algebra and the deviation direction");
  add_common(circle_pointwise, circle_pointwise_args, false);
  auto* circle_kahler = circle->add_subcommand(
      "kahler-bound", "Kaehler-Einstein base direction bound");
  add_common(circle_kahler, circle_kahler_args, false);

  auto* verify = app.add_subcommand(
      "verify", "run all identity property suites deterministically");
  std::uint64_t verify_seed = 0;
  int verify_cases = 100;
  std::string verify_format = "json";
  verify->add_option("--seed", verify_seed, "seed for the property suites");
  verify->add_option("--cases", verify_cases, "cases per suite");
  verify->add_option("--format", verify_format, "report format: json or md");

  CLI11_PARSE(app, argc, argv);

  try {
    if (check->parsed())
      return emit_report(load_for(check_args, AnalysisKind::Submersion,
                                  "check"),
                         check_args.format);
    if (theorem1->parsed())
      return emit_report(load_for(theorem_args, AnalysisKind::Submersion,
                                  "theorem"),
                         theorem_args.format);
    if (canonical->parsed())
      return emit_report(load_for(canonical_args, AnalysisKind::Canonical,
                                  "canonical"),
                         canonical_args.format);
    if (product->parsed())
      return emit_report(load_for(product_args, AnalysisKind::ProductBase,
                                  "analyze"),
                         product_args.format);
    if (torus_solve->parsed()) {
      auto cfg = load_for(torus_solve_args, AnalysisKind::Torus, "solve");
      cfg.mode = Mode::Float;
      return emit_report(cfg, torus_solve_args.format);
    }
    if (torus_analyze->parsed())
      return emit_report(load_for(torus_analyze_args, AnalysisKind::Torus,
                                  "analyze"),
                         torus_analyze_args.format);
    if (qk_analyze_cmd->parsed())
      return emit_report(load_for(qk_args, AnalysisKind::Qk, "analyze"),
                         qk_args.format);
    if (homog_sp->parsed()) {
      AnalysisConfig cfg;
      if (!sp_config.empty()) {
        cfg = load_config(sp_config, sp_scan ? "scan" : "sp");
        if (cfg.kind != AnalysisKind::HomogSp)
          throw SchemaError("config kind must be 'homog-sp'");
        if (sp_scan) cfg.action = "scan";
      } else {
        cfg.kind = AnalysisKind::HomogSp;
        cfg.action = sp_scan ? "scan" : "sp";
        cfg.mode = Mode::Exact;
        if (sp_scan) {
          if (!sp_m_max || !sp_q_max)
            throw SchemaError(
                "homog sp --scan needs --m-max and --q-max (or --config)");
          cfg.payload = Json{{"m_max", *sp_m_max}, {"q_max", *sp_q_max}};
        } else {
          if (!sp_m || !sp_q || !sp_k)
            throw SchemaError("homog sp needs -m, -q, -k (or --config)");
          cfg.payload = Json{{"m", *sp_m}, {"q", *sp_q}, {"k", *sp_k}};
        }
      }
      detail::check_payload(cfg.kind, cfg.action, cfg.payload);
      return emit_report(cfg, sp_format);
    }
    if (circle_fscan->parsed())
      return emit_report(load_for(circle_fscan_args, AnalysisKind::Circle,
                                  "f-scan"),
                         circle_fscan_args.format);
    if (circle_pointwise->parsed())
      return emit_report(load_for(circle_pointwise_args, AnalysisKind::Circle,
                                  "pointwise"),
                         circle_pointwise_args.format);
    if (circle_kahler->parsed())
      return emit_report(load_for(circle_kahler_args, AnalysisKind::Circle,
                                  "kahler-bound"),
                         circle_kahler_args.format);
    if (verify->parsed()) {
      const auto report = run_verify(env_seed_override(verify_seed),
                                     verify_cases);
      if (verify_format == "json") {
        std::cout << dump_canonical(verify_to_json(report));
      } else if (verify_format == "md" || verify_format == "markdown") {
        std::cout << "# verify\n\n"
                  << (report.all_passed ? "All suites passed.\n\n"
                                        : "Some suites FAILED.\n\n")
                  << "```json\n"
                  << dump_canonical(verify_to_json(report)) << "```\n";
      } else {
        throw InvalidParams("unknown report format '" + verify_format + "'");
      }
      return report.all_passed ? 0 : 1;
    }
  } catch (const ParseError& e) {
    return error_report(e, "ParseError");
  } catch (const SchemaError& e) {
    return error_report(e, "SchemaError");
  } catch (const ConstraintViolation& e) {
    return error_report(e, "ConstraintViolation");
  } catch (const NotEinstein& e) {
    return error_report(e, "NotEinstein");
  } catch (const NoSolutionFound& e) {
    return error_report(e, "NoSolutionFound");
  } catch (const MaxIterationsExceeded& e) {
    return error_report(e, "MaxIterationsExceeded");
  } catch (const Error& e) {
    return error_report(e, "Error");
  } catch (const std::exception& e) {
    return error_report(e, "InternalError");
  }
  return 0;
}
