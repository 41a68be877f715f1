#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <fstream>

#include "einstab/analyses.hpp"
#include "einstab/config.hpp"
#include "einstab/verify.hpp"

using namespace einstab;

namespace {

std::string write_temp(const std::string& name, const std::string& body) {
  const std::string path = "/tmp/einstab_test_" + name + ".json";
  std::ofstream out(path);
  out << body;
  return path;
}

}  // namespace

TEST_CASE("torus config round trip") {
  const auto path = write_temp("torus_ok", R"({
    "kind": "torus",
    "mode": "exact",
    "payload": {
      "n": [2, 2],
      "q": [2, 2],
      "b": [[1, 1]],
      "x": ["1", "1"],
      "ghat": [["4/3"]]
    }
  })");
  const auto cfg = load_config(path, "analyze");
  CHECK(cfg.kind == AnalysisKind::Torus);
  CHECK(cfg.mode == Mode::Exact);
  const auto report = run(cfg);
  CHECK(report.verdict == "Unstable");
  CHECK(report.coindex_lower_bound == 1);
  std::remove(path.c_str());
}

TEST_CASE("zero classifying column is a schema error") {
  const auto path = write_temp("torus_zero_col", R"({
    "kind": "torus",
    "payload": {
      "n": [2, 2],
      "q": [2, 2],
      "b": [[1, 0]]
    }
  })");
  CHECK_THROWS_MATCHES(
      load_config(path), SchemaError,
      Catch::Matchers::MessageMatches(
          Catch::Matchers::ContainsSubstring("columns of b must be nonzero")));
  std::remove(path.c_str());
}

TEST_CASE("rational strings parse per mode") {
  const Json j = Json::parse(R"("4/3")");
  CHECK(scalar_from_json<Rational>(j, "v") == Rational(4, 3));
  CHECK(scalar_from_json<double>(j, "v") ==
        Catch::Approx(1.3333333333333333).epsilon(1e-15));
}

TEST_CASE("malformed json is a parse error") {
  const auto path = write_temp("broken", "{ not json");
  CHECK_THROWS_AS(load_config(path), ParseError);
  std::remove(path.c_str());
  CHECK_THROWS_AS(load_config("/nonexistent/einstab.json"), ParseError);
}

TEST_CASE("missing fields are schema errors") {
  const auto path = write_temp("missing", R"({
    "kind": "submersion",
    "payload": {"n": 2, "r": 1}
  })");
  CHECK_THROWS_AS(load_config(path), SchemaError);
  std::remove(path.c_str());
}

TEST_CASE("reports serialize deterministically") {
  AnalysisConfig cfg;
  cfg.kind = AnalysisKind::HomogSp;
  cfg.action = "sp";
  cfg.payload = Json{{"m", 3}, {"q", 1}, {"k", 2}};
  const auto a = render_report(run(cfg), "json");
  const auto b = render_report(run(cfg), "json");
  CHECK(a == b);
  CHECK(a.find("\"verdict\": \"Unstable\"") != std::string::npos);
  CHECK(a.find("\"witness\": \"g - ((n+r)/n) pi*(g_base)\"") !=
        std::string::npos);
}

TEST_CASE("markdown reports carry a verdict heading and provenance") {
  AnalysisConfig cfg;
  cfg.kind = AnalysisKind::HomogSp;
  cfg.action = "sp";
  cfg.payload = Json{{"m", 3}, {"q", 1}, {"k", 2}};
  const auto md = render_report(run(cfg), "md");
  CHECK(md.find("## Verdict") != std::string::npos);
  CHECK(md.find("## Provenance") != std::string::npos);
  CHECK_THROWS_AS(render_report(run(cfg), "yaml"), InvalidParams);
}

TEST_CASE("float verdicts require a margin") {
  // A marginally negative value in float mode must downgrade to
  // Inconclusive with a warning (exit code 2).
  AnalysisConfig cfg;
  cfg.kind = AnalysisKind::Canonical;
  cfg.mode = Mode::Float;
  cfg.float_tol = 1e-10;
  cfg.payload = Json{{"n", 2}, {"r", 1}, {"E_fiber", 0.5},
                     {"E_base", 1.0 - 1e-10}};
  const auto rep = run(cfg);
  CHECK(rep.verdict == "Inconclusive");
  CHECK(!rep.warnings.empty());
  CHECK(rep.exit_code() == 2);

  cfg.payload = Json{{"n", 2}, {"r", 1}, {"E_fiber", 0.5}, {"E_base", 0.9}};
  const auto rep2 = run(cfg);
  CHECK(rep2.verdict == "Unstable");
  CHECK(rep2.exit_code() == 0);
}

TEST_CASE("exact torus solve is rejected") {
  AnalysisConfig cfg;
  cfg.kind = AnalysisKind::Torus;
  cfg.action = "solve";
  cfg.mode = Mode::Exact;
  cfg.payload = Json{{"n", Json::array({2, 2})},
                     {"q", Json::array({2, 2})},
                     {"b", Json::array({Json::array({1, 1})})}};
  CHECK_THROWS_AS(run(cfg), SchemaError);
}

TEST_CASE("verify runs deterministically in process") {
  const auto a = verify_to_json(run_verify(7, 20));
  const auto b = verify_to_json(run_verify(7, 20));
  CHECK(dump_canonical(a) == dump_canonical(b));
  CHECK(a.at("all_passed").get<bool>());
}

TEST_CASE("qk float mode matches exact values") {
  AnalysisConfig cfg;
  cfg.kind = AnalysisKind::Qk;
  cfg.mode = Mode::Float;
  cfg.payload = Json{{"N", Json::array({2, 2, 2})},
                     {"E", Json::array({1, 1, 1})},
                     {"x", Json::array({1, 1, 1})},
                     {"lam", Json::array({1, 1, 1})}};
  const auto rep = run(cfg);
  const double v =
      rep.quantities.at("pairwise_values")[0].at("value").get<double>();
  CHECK(v == Catch::Approx(-13.0 / 48.0).epsilon(1e-12));
  CHECK(rep.verdict == "Unstable");
}
