#pragma once

#include <cstdint>
#include <fstream>
#include <set>
#include <sstream>
#include <string>

#include "einstab/jsonio.hpp"

namespace einstab {

enum class AnalysisKind {
  Submersion,
  Canonical,
  ProductBase,
  Torus,
  Qk,
  HomogSp,
  Circle,
};

enum class Mode { Exact, Float };

inline std::string to_string(AnalysisKind k) {
  switch (k) {
    case AnalysisKind::Submersion: return "submersion";
    case AnalysisKind::Canonical: return "canonical";
    case AnalysisKind::ProductBase: return "product-base";
    case AnalysisKind::Torus: return "torus";
    case AnalysisKind::Qk: return "qk";
    case AnalysisKind::HomogSp: return "homog-sp";
    case AnalysisKind::Circle: return "circle";
  }
  return "?";
}

inline AnalysisKind kind_from_string(const std::string& s) {
  if (s == "submersion") return AnalysisKind::Submersion;
  if (s == "canonical") return AnalysisKind::Canonical;
  if (s == "product-base") return AnalysisKind::ProductBase;
  if (s == "torus") return AnalysisKind::Torus;
  if (s == "qk") return AnalysisKind::Qk;
  if (s == "homog-sp") return AnalysisKind::HomogSp;
  if (s == "circle") return AnalysisKind::Circle;
  throw SchemaError("unknown analysis kind '" + s + "'");
}

struct SolverConfig {
  double gauge_E = 1.0;
  int starts = 32;
  std::uint64_t seed = 0;
};

struct AnalysisConfig {
  AnalysisKind kind = AnalysisKind::Submersion;
  std::string action;  // kind-specific action, may be set by the CLI
  Mode mode = Mode::Exact;
  double float_tol = 1e-10;
  SolverConfig solver;
  Json payload;
};

namespace detail {

inline void require_fields(const Json& payload,
                           const std::set<std::string>& required,
                           const std::string& kind) {
  for (const auto& f : required)
    if (!payload.contains(f))
      throw SchemaError("missing field '" + f + "' in " + kind + " payload");
}

inline void check_torus_payload(const Json& p) {
  require_fields(p, {"n", "q", "b"}, "torus");
  const Mat<int> b = [&] {
    const Json& bj = p.at("b");
    if (!bj.is_array() || bj.empty() || !bj.front().is_array())
      throw SchemaError("field 'b' must be a row-major array of arrays");
    Mat<int> m(static_cast<int>(bj.size()),
               static_cast<int>(bj.front().size()));
    for (int i = 0; i < m.rows(); ++i) {
      if (static_cast<int>(bj[static_cast<std::size_t>(i)].size()) != m.cols())
        throw SchemaError("field 'b' has ragged rows");
      for (int j = 0; j < m.cols(); ++j) {
        const auto& e =
            bj[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
        if (!e.is_number_integer())
          throw SchemaError("entries of 'b' must be integers");
        m.at(i, j) = e.get<int>();
      }
    }
    return m;
  }();
  if (!p.at("n").is_array() || !p.at("q").is_array())
    throw SchemaError("fields 'n' and 'q' must be arrays");
  const int m = static_cast<int>(p.at("n").size());
  if (b.cols() != m || static_cast<int>(p.at("q").size()) != m)
    throw SchemaError("'n', 'q', and the columns of 'b' must agree in size");
  for (int j = 0; j < m; ++j) {
    bool nonzero = false;
    for (int a = 0; a < b.rows(); ++a) nonzero = nonzero || b.at(a, j) != 0;
    if (!nonzero) throw SchemaError("columns of b must be nonzero");
  }
  if (rank(mat_cast<Rational>(b)) != b.rows())
    throw SchemaError("classifying matrix b must have full rank");
  if (p.contains("x") && static_cast<int>(p.at("x").size()) != m)
    throw SchemaError("'x' must have one entry per factor");
  if (p.contains("ghat") &&
      (static_cast<int>(p.at("ghat").size()) != b.rows()))
    throw SchemaError("'ghat' must be an r x r matrix");
}

inline void check_payload(AnalysisKind kind, const std::string& action,
                          const Json& p) {
  if (!p.is_object()) throw SchemaError("payload must be a JSON object");
  switch (kind) {
    case AnalysisKind::Submersion:
      require_fields(p, {"n", "r", "E", "fiber_scal", "base_scal", "a_norm_sq"},
                     "submersion");
      break;
    case AnalysisKind::Canonical:
      require_fields(p, {"n", "r", "E_fiber", "E_base"}, "canonical");
      break;
    case AnalysisKind::ProductBase: {
      require_fields(p, {"n", "scal", "a_norm_sq"}, "product-base");
      const auto sz = p.at("n").size();
      if (p.at("scal").size() != sz || p.at("a_norm_sq").size() != sz)
        throw SchemaError("per-factor arrays must have equal length");
      break;
    }
    case AnalysisKind::Torus:
      check_torus_payload(p);
      break;
    case AnalysisKind::Qk: {
      require_fields(p, {"N", "E", "x", "lam"}, "qk");
      const auto sz = p.at("N").size();
      if (p.at("E").size() != sz || p.at("x").size() != sz ||
          p.at("lam").size() != sz)
        throw SchemaError("per-factor arrays must have equal length");
      break;
    }
    case AnalysisKind::HomogSp:
      if (action == "scan")
        require_fields(p, {"m_max", "q_max"}, "homog-sp scan");
      else
        require_fields(p, {"m", "q", "k"}, "homog-sp");
      break;
    case AnalysisKind::Circle:
      if (action == "f-scan") {
        require_fields(p, {"n", "grid_steps"}, "circle f-scan");
      } else if (action == "kahler-bound") {
        require_fields(p, {"n", "omega_norm_sq", "h_norm_sq", "hJ_pairing"},
                       "circle kahler-bound");
      } else {
        require_fields(p, {"n"}, "circle pointwise");
        if (!p.contains("b") && !p.contains("omega"))
          throw SchemaError(
              "circle pointwise payload needs a spectrum 'b' or a matrix "
              "'omega'");
      }
      break;
  }
}

}  // namespace detail

inline AnalysisConfig config_from_json(const Json& j,
                                       const std::string& default_action = "") {
  if (!j.is_object()) throw SchemaError("config must be a JSON object");
  AnalysisConfig cfg;
  if (!j.contains("kind")) throw SchemaError("config is missing 'kind'");
  cfg.kind = kind_from_string(j.at("kind").get<std::string>());
  cfg.action = j.value("action", default_action);
  const std::string mode = j.value("mode", "exact");
  if (mode == "exact")
    cfg.mode = Mode::Exact;
  else if (mode == "float")
    cfg.mode = Mode::Float;
  else
    throw SchemaError("mode must be 'exact' or 'float'");
  cfg.float_tol = j.value("float_tol", 1e-10);
  if (cfg.float_tol <= 0) throw SchemaError("float_tol must be positive");
  if (j.contains("solver")) {
    const Json& s = j.at("solver");
    cfg.solver.gauge_E = s.value("gauge_E", 1.0);
    cfg.solver.starts = s.value("starts", 32);
    cfg.solver.seed = s.value("seed", static_cast<std::uint64_t>(0));
    if (cfg.solver.gauge_E <= 0)
      throw SchemaError("solver.gauge_E must be positive");
    if (cfg.solver.starts < 1) throw SchemaError("solver.starts must be >= 1");
  }
  cfg.payload = j.value("payload", Json::object());
  detail::check_payload(cfg.kind, cfg.action, cfg.payload);
  return cfg;
}

inline AnalysisConfig load_config(const std::string& path,
                                  const std::string& default_action = "") {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  Json j;
  try {
    j = Json::parse(buf.str());
  } catch (const Json::parse_error& e) {
    throw ParseError("config '" + path + "': " + e.what());
  }
  return config_from_json(j, default_action);
}

}  // namespace einstab
