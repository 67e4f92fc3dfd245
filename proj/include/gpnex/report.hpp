#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "gpnex/certify.hpp"

namespace gpnex {

using Json = nlohmann::ordered_json;  // deterministic field order

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitHypothesis = 3;
constexpr int kExitMismatch = 4;
constexpr int kExitIo = 5;

enum class Command { Analyze, Sweep, Trace, Reproduce };

struct RunConfig {
  PotentialSpec potential;
  Command command = Command::Analyze;
  std::optional<double> c;
  std::optional<double> c_min, c_max;
  std::optional<int> c_steps;
  int axis = 2;
  std::optional<int> grid_nr, grid_ndir;
  std::string out_path = "report";
  std::vector<std::string> formats = {"json", "md"};
  bool force = false;  // continue despite a nonnegativity failure
};

// Potential document: {"kind": ..., "dim": ..., "params": {...}} or, for
// custom-radial, {"kind": "custom-radial", "dim": ..., "table": [[r, rho]...]}.
PotentialSpec parse_potential_spec(const Json& doc);

// Validates the per-command requirements (analyze needs c; sweep needs a
// range with c_min >= 0 and steps >= 2; trace needs c > 0 and an axis).
void validate_config(const RunConfig& config);

std::vector<double> sweep_grid(const RunConfig& config);

Json potential_to_json(const PotentialSpec& spec);
Json verdict_to_json(const SpeedVerdict& verdict);
Json hypotheses_to_json(const HypothesisReport& report);
Json sweep_to_json(const PotentialSpec& spec, const SweepReport& report);

std::string verdict_to_markdown(const PotentialSpec& spec, const SpeedVerdict& verdict,
                                const HypothesisReport& hypotheses);
std::string sweep_to_markdown(const PotentialSpec& spec, const SweepReport& report);

// Writes `text` to `path`, throwing IoError on failure.
void write_text_file(const std::string& path, const std::string& text);

// ---------------------------------------------------------------------------
// Reproduction cases
// ---------------------------------------------------------------------------

struct ReproCheck {
  std::string name;
  double computed = 0.0;
  double expected = 0.0;
  double tol = 0.0;
  std::string provenance;
  bool pass = false;
};

struct ReproResult {
  std::string case_id;
  std::vector<ReproCheck> checks;
  Json report;
  bool pass = false;
};

// case_id in {delta, sk, delta-plus-f, dipolar}; overrides rebind the case's
// kernel parameters (a, b, epsilon, b_tilde, dim).
ReproResult run_reproduce(const std::string& case_id,
                          const std::map<std::string, double>& overrides = {});

std::string reproduce_to_markdown(const ReproResult& result);

}  // namespace gpnex
