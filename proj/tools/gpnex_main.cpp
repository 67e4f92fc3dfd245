// Command-line front end: analyze a single speed, sweep a speed range, export
// a dispersion-curve trace, or rerun one of the built-in reproduction cases.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "gpnex/dispersion.hpp"
#include "gpnex/report.hpp"

namespace {

using namespace gpnex;

Json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const std::exception& e) {
    throw ConfigError(std::string("malformed JSON: ") + e.what());
  }
}

GridSpec build_grid(const PotentialModel& model, const RunConfig& config) {
  return make_default_grid(model, config.grid_nr.value_or(200),
                           config.grid_ndir.value_or(64));
}

bool wants(const RunConfig& config, const std::string& format) {
  for (const auto& f : config.formats)
    if (f == format) return true;
  return false;
}

// Returns false when the nonnegativity check fails and --force was not given.
bool hypothesis_gate(const HypothesisReport& hyp, const RunConfig& config) {
  if (hyp.nonnegativity.status != CheckStatus::Fail) return true;
  if (config.force) {
    std::cerr << "warning: nonnegativity fails on the sampled grid; continuing (--force)\n";
    return true;
  }
  std::cerr << "error: W_hat < 0 on the sampled grid (value "
            << hyp.nonnegativity.value << "); the certification theory does not apply.\n"
            << "Pass --force to continue anyway.\n";
  return false;
}

int run_analyze(const RunConfig& config) {
  const PotentialModel model = build_potential(config.potential);
  const GridSpec grid = build_grid(model, config);
  const HypothesisReport hyp = check_hypotheses(model, grid);
  if (!hypothesis_gate(hyp, config)) return kExitHypothesis;

  CertifyOptions opts;
  opts.grid = grid;
  const SpeedVerdict verdict = certify_speed(model, *config.c, opts);

  if (wants(config, "json"))
    write_text_file(config.out_path + ".json", verdict_to_json(verdict).dump(2) + "\n");
  if (wants(config, "md"))
    write_text_file(config.out_path + ".md",
                    verdict_to_markdown(config.potential, verdict, hyp));
  if (wants(config, "csv") && *config.c > 0) {
    for (int j = 2; j <= model.dim(); ++j) {
      std::ostringstream os;
      write_trace_csv(os, trace_gamma(model, j, *config.c));
      write_text_file(config.out_path + "_axis" + std::to_string(j) + ".csv", os.str());
    }
  }
  std::cout << verdict_status_name(verdict.status) << " (route " << route_name(verdict.route)
            << ")\n";
  return kExitOk;
}

int run_sweep(const RunConfig& config) {
  const PotentialModel model = build_potential(config.potential);
  const GridSpec grid = build_grid(model, config);
  const HypothesisReport hyp = check_hypotheses(model, grid);
  if (!hypothesis_gate(hyp, config)) return kExitHypothesis;

  CertifyOptions opts;
  opts.grid = grid;
  const SweepReport report = sweep(model, sweep_grid(config), opts);

  if (wants(config, "json"))
    write_text_file(config.out_path + ".json",
                    sweep_to_json(config.potential, report).dump(2) + "\n");
  if (wants(config, "md"))
    write_text_file(config.out_path + ".md", sweep_to_markdown(config.potential, report));

  int certified = 0;
  for (const auto& v : report.verdicts) certified += v.certified();
  std::cout << certified << "/" << report.verdicts.size() << " speeds certified\n";
  return kExitOk;
}

int run_trace(const RunConfig& config) {
  const PotentialModel model = build_potential(config.potential);
  const CurveTrace trace = trace_gamma(model, config.axis, *config.c);
  std::ostringstream os;
  write_trace_csv(os, trace);
  const std::string path = config.out_path + ".csv";
  write_text_file(path, os.str());
  std::cout << "wrote " << trace.samples.size() << " samples to " << path << "\n";
  return kExitOk;
}

int run_repro(const std::string& case_id, const std::map<std::string, double>& overrides,
              const RunConfig& config) {
  const ReproResult result = run_reproduce(case_id, overrides);
  if (wants(config, "json"))
    write_text_file(config.out_path + ".json", result.report.dump(2) + "\n");
  if (wants(config, "md"))
    write_text_file(config.out_path + ".md", reproduce_to_markdown(result));
  std::cout << reproduce_to_markdown(result);
  return result.pass ? kExitOk : kExitMismatch;
}

std::vector<std::string> split_formats(const std::string& csv) {
  std::vector<std::string> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(item);
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "gpnex: certifies speed ranges with no nontrivial finite-energy traveling waves\n"
      "for the nonlocal Gross-Pitaevskii equation, from the Fourier transform of the\n"
      "interaction kernel"};
  app.require_subcommand(1);

  std::string config_path, out_path = "report", formats = "json,md", repro_case;
  double c_value = -1.0, c_min = 0.0, c_max = 0.0;
  int c_steps = 0, axis = 2, grid_nr = 200, grid_ndir = 64;
  bool force = false;
  std::map<std::string, double> repro_overrides;
  double ov_a = 0, ov_b = 0, ov_eps = 0, ov_bt = 0;
  int ov_dim = 0;

  auto add_common = [&](CLI::App* cmd, bool needs_config) {
    if (needs_config)
      cmd->add_option("--config", config_path, "potential configuration JSON file")
          ->required();
    cmd->add_option("--out", out_path, "output path prefix");
    cmd->add_option("--format", formats, "comma-separated subset of json,md,csv");
    cmd->add_option("--grid-nr", grid_nr, "radial grid points");
    cmd->add_option("--grid-ndir", grid_ndir, "direction count");
    cmd->add_flag("--force", force, "continue despite a nonnegativity failure");
  };

  CLI::App* analyze = app.add_subcommand("analyze", "certify a single speed");
  add_common(analyze, true);
  analyze->add_option("--c", c_value, "wave speed")->required();

  CLI::App* sweep_cmd = app.add_subcommand("sweep", "certify a range of speeds");
  add_common(sweep_cmd, true);
  sweep_cmd->add_option("--c-min", c_min, "lowest speed")->required();
  sweep_cmd->add_option("--c-max", c_max, "highest speed")->required();
  sweep_cmd->add_option("--c-steps", c_steps, "number of grid speeds")->required();

  CLI::App* trace_cmd = app.add_subcommand("trace", "export a dispersion-curve trace");
  add_common(trace_cmd, true);
  trace_cmd->add_option("--c", c_value, "wave speed")->required();
  trace_cmd->add_option("--axis", axis, "slice axis j in {2..dim}");

  CLI::App* repro = app.add_subcommand("reproduce", "rerun a built-in case table");
  add_common(repro, false);
  repro->add_option("--case", repro_case, "one of delta, sk, delta-plus-f, dipolar")
      ->required();
  repro->add_option("--a", ov_a, "override parameter a");
  repro->add_option("--b", ov_b, "override parameter b");
  repro->add_option("--epsilon", ov_eps, "override parameter epsilon");
  repro->add_option("--b-tilde", ov_bt, "override parameter b_tilde");
  repro->add_option("--dim", ov_dim, "override dimension");

  CLI11_PARSE(app, argc, argv);

  try {
    RunConfig config;
    config.out_path = out_path;
    config.formats = split_formats(formats);
    config.force = force;
    config.grid_nr = grid_nr;
    config.grid_ndir = grid_ndir;

    if (repro->parsed()) {
      config.command = Command::Reproduce;
      validate_config(config);
      if (repro->count("--a")) repro_overrides["a"] = ov_a;
      if (repro->count("--b")) repro_overrides["b"] = ov_b;
      if (repro->count("--epsilon")) repro_overrides["epsilon"] = ov_eps;
      if (repro->count("--b-tilde")) repro_overrides["b_tilde"] = ov_bt;
      if (repro->count("--dim")) repro_overrides["dim"] = ov_dim;
      return run_repro(repro_case, repro_overrides, config);
    }

    config.potential = parse_potential_spec(load_json(config_path));
    if (analyze->parsed()) {
      config.command = Command::Analyze;
      config.c = c_value;
    } else if (sweep_cmd->parsed()) {
      config.command = Command::Sweep;
      config.c_min = c_min;
      config.c_max = c_max;
      config.c_steps = c_steps;
    } else if (trace_cmd->parsed()) {
      config.command = Command::Trace;
      config.c = c_value;
      config.axis = axis;
    }
    validate_config(config);

    switch (config.command) {
      case Command::Analyze: return run_analyze(config);
      case Command::Sweep: return run_sweep(config);
      case Command::Trace: return run_trace(config);
      default: break;
    }
  } catch (const IoError& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return kExitIo;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const InvalidParameterError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const UnsupportedDimensionError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return kExitOk;
}
