#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "gpnex/report.hpp"

using namespace gpnex;

namespace {

Json sk_doc() {
  return Json::parse(R"({"kind":"radial-sk","dim":3,"params":{"a":1.0,"b":2.0}})");
}

}  // namespace

TEST_CASE("potential document parsing") {
  const PotentialSpec spec = parse_potential_spec(sk_doc());
  CHECK(spec.kind == KernelKind::RadialSK);
  CHECK(spec.dim == 3);
  CHECK(spec.params.at("a") == 1.0);
  CHECK(spec.params.at("b") == 2.0);

  CHECK_THROWS_AS(parse_potential_spec(Json::parse(R"({"kind":"soft-core"})")), ConfigError);
  CHECK_THROWS_AS(parse_potential_spec(Json::parse(R"([1,2,3])")), ConfigError);
  CHECK_THROWS_AS(parse_potential_spec(Json::parse(R"({"kind":"delta","params":{"a":"x"}})")),
                  ConfigError);
  CHECK_THROWS_AS(
      parse_potential_spec(Json::parse(R"({"kind":"custom-radial","table":[[0,1],[1]]})")),
      ConfigError);

  // domain violations surface at build time
  const PotentialSpec bad =
      parse_potential_spec(Json::parse(R"({"kind":"radial-sk","params":{"a":1,"b":-1}})"));
  CHECK_THROWS_AS(build_potential(bad), InvalidParameterError);
  const PotentialSpec dip2 =
      parse_potential_spec(Json::parse(R"({"kind":"dipolar","dim":2,"params":{"a":1,"b_tilde":0.25}})"));
  CHECK_THROWS_AS(build_potential(dip2), UnsupportedDimensionError);
}

TEST_CASE("custom-radial table round-trips through the document") {
  const Json doc =
      Json::parse(R"({"kind":"custom-radial","dim":2,"table":[[0.0,1.0],[1.0,0.5],[2.0,0.25]]})");
  const PotentialSpec spec = parse_potential_spec(doc);
  REQUIRE(spec.table.size() == 3);
  CHECK(spec.table[1].first == 1.0);
  CHECK(spec.table[1].second == 0.5);
  CHECK(build_potential(spec).radial);
}

TEST_CASE("per-command validation") {
  RunConfig config;
  config.potential = parse_potential_spec(sk_doc());

  config.command = Command::Analyze;
  CHECK_THROWS_AS(validate_config(config), ConfigError);  // missing c
  config.c = 1.6;
  CHECK_NOTHROW(validate_config(config));

  config.command = Command::Sweep;
  CHECK_THROWS_AS(validate_config(config), ConfigError);
  config.c_min = 0.0;
  config.c_max = 2.0;
  config.c_steps = 1;
  CHECK_THROWS_AS(validate_config(config), ConfigError);  // steps >= 2
  config.c_steps = 5;
  CHECK_NOTHROW(validate_config(config));
  config.c_min = -1.0;
  CHECK_THROWS_AS(validate_config(config), ConfigError);
  config.c_min = 0.0;

  config.command = Command::Trace;
  config.c = 0.0;
  CHECK_THROWS_AS(validate_config(config), ConfigError);  // c > 0
  config.c = 1.0;
  config.axis = 4;
  CHECK_THROWS_AS(validate_config(config), ConfigError);  // axis <= dim
  config.axis = 3;
  CHECK_NOTHROW(validate_config(config));

  config.formats = {"json", "xml"};
  CHECK_THROWS_AS(validate_config(config), ConfigError);
}

TEST_CASE("verdict JSON carries the contract fields in order") {
  const PotentialModel model = build_potential(parse_potential_spec(sk_doc()));
  const SpeedVerdict verdict = certify_speed(model, 1.6);
  const Json j = verdict_to_json(verdict);
  std::vector<std::string> keys;
  for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
  CHECK(keys == std::vector<std::string>{"c", "status", "route", "sigma", "ell", "grid_margin",
                                         "assumptions"});
  CHECK(j["status"] == "certified-nonexistence");
  CHECK(j["route"] == "corollary-window");
  CHECK(j["sigma"].is_null());
  CHECK(j["ell"].get<double>() == doctest::Approx(0.28));
  CHECK(!j["assumptions"].empty());
}

TEST_CASE("sweep JSON structure and certified intervals") {
  const PotentialSpec spec = parse_potential_spec(sk_doc());
  const PotentialModel model = build_potential(spec);
  const SweepReport report = sweep(model, {1.0, 1.5, 1.6});
  const Json j = sweep_to_json(spec, report);
  CHECK(j.contains("model"));
  CHECK(j.contains("verdicts"));
  CHECK(j.contains("certified_intervals"));
  CHECK(j.contains("hypotheses"));
  CHECK(j["verdicts"].size() == 3);
  CHECK(j["certified_intervals"].size() == 1);
  CHECK(j["certified_intervals"][0][0].get<double>() == 1.5);
  CHECK(j["model"]["kind"] == "radial-sk");
  CHECK(j["hypotheses"]["origin_regular"]["status"] == "pass");
}

TEST_CASE("reports are deterministic") {
  const PotentialSpec spec = parse_potential_spec(sk_doc());
  const PotentialModel model = build_potential(spec);
  const auto run = [&] {
    const SweepReport report = sweep(model, {1.0, 1.5, 1.6, 1.8});
    return sweep_to_json(spec, report).dump(2) + "\n" + sweep_to_markdown(spec, report);
  };
  CHECK(run() == run());
}

TEST_CASE("empty verdict list still emits valid JSON") {
  const PotentialSpec spec = parse_potential_spec(sk_doc());
  SweepReport report;
  const Json j = sweep_to_json(spec, report);
  CHECK(j["verdicts"].is_array());
  CHECK(j["verdicts"].empty());
  CHECK(j["certified_intervals"].empty());
}

TEST_CASE("reproduction cases pass and carry provenance") {
  for (const std::string id : {"delta", "sk", "delta-plus-f", "dipolar"}) {
    const ReproResult result = run_reproduce(id);
    CHECK(result.pass);
    CHECK(!result.checks.empty());
    for (const auto& check : result.checks) {
      INFO(id, ": ", check.name, " computed ", check.computed, " expected ", check.expected);
      CHECK(check.pass);
      CHECK(!check.provenance.empty());
    }
  }
  CHECK_THROWS_AS(run_reproduce("soft-core"), ConfigError);
}

TEST_CASE("reproduction case tables respect parameter overrides") {
  const ReproResult result = run_reproduce("delta", {{"a", 2.0}});
  CHECK(result.pass);
  // sonic speed check must track the rebound parameter
  CHECK(result.checks[0].expected == doctest::Approx(2.0));
}
