#include <cstdio>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "nomapair.h"

namespace {

int fail(np_status st) {
  std::fprintf(stderr, "error: %s\n", np_last_error());
  return static_cast<int>(st);
}

int apply_set(np_experiment* exp, const std::vector<std::string>& sets) {
  for (const std::string& kv : sets) {
    const std::size_t eq = kv.find('=');
    if (eq == std::string::npos || eq == 0) {
      std::fprintf(stderr, "error: --set expects KEY=VALUE, got '%s'\n", kv.c_str());
      return NP_ERROR_CONFIG;
    }
    const std::string key = kv.substr(0, eq);
    const std::string value = kv.substr(eq + 1);
    if (np_status st = np_experiment_override(exp, key.c_str(), value.c_str()); st != NP_OK) {
      return fail(st);
    }
  }
  return 0;
}

struct CommonOpts {
  std::string out;
  std::string seed;
  long long trials = -1;
  int threads = 0;
  std::vector<std::string> sets;
};

int run_experiment_cmd(const std::string& source, bool preset, const CommonOpts& opts) {
  np_experiment* exp = nullptr;
  np_status st = preset ? np_experiment_from_preset(source.c_str(), &exp)
                        : np_experiment_from_file(source.c_str(), &exp);
  if (st != NP_OK) return fail(st);

  int rc = apply_set(exp, opts.sets);
  if (rc == 0 && !opts.seed.empty()) {
    if ((st = np_experiment_override(exp, "rng_seed", opts.seed.c_str())) != NP_OK) rc = fail(st);
  }
  if (rc == 0 && opts.trials >= 0) {
    const std::string v = std::to_string(opts.trials);
    if ((st = np_experiment_override(exp, "trials", v.c_str())) != NP_OK) rc = fail(st);
  }
  if (rc == 0 && opts.threads > 0) {
    const std::string v = std::to_string(opts.threads);
    if ((st = np_experiment_override(exp, "threads", v.c_str())) != NP_OK) rc = fail(st);
  }
  if (rc == 0 && (st = np_experiment_run(exp)) != NP_OK) rc = fail(st);
  if (rc == 0) {
    const char* path = opts.out.empty() ? nullptr : opts.out.c_str();
    if ((st = np_experiment_write_csv(exp, path)) != NP_OK) rc = fail(st);
  }
  np_experiment_free(exp);
  return rc;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"NOMA uplink user pairing: simulations, bounds, and reference tables"};
  app.require_subcommand(1);

  std::string config_path;
  std::string preset_name;
  std::string table_name;
  std::string scenario_config;
  CommonOpts opts;

  CLI::App* run = app.add_subcommand("run", "Run an experiment config file");
  run->add_option("config", config_path, "key=value experiment config")->required();

  CLI::App* preset = app.add_subcommand("preset", "Run a built-in figure preset");
  preset->add_option("name", preset_name, "fig1..fig8")->required();

  for (CLI::App* cmd : {run, preset}) {
    cmd->add_option("--out", opts.out, "output CSV path (default: config 'out', else stdout)");
    cmd->add_option("--seed", opts.seed, "RNG seed");
    cmd->add_option("--trials", opts.trials, "trials per sweep point");
    cmd->add_option("--threads", opts.threads, "worker threads");
    cmd->add_option("--set", opts.sets, "extra KEY=VALUE config overrides");
  }

  CLI::App* analytic = app.add_subcommand("analytic", "Write a closed-form reference table");
  analytic->add_option("table", table_name, "theorem3 or theorem6")->required();
  analytic->add_option("--out", opts.out, "output CSV path (default stdout)");
  analytic->add_option("--set", opts.sets, "KEY=VALUE config overrides");

  CLI::App* scenario = app.add_subcommand("scenario", "Sample a cell and write user,r,d,P,gamma");
  scenario->add_option("config", scenario_config, "key=value scenario config")->required();
  scenario->add_option("--out", opts.out, "output CSV path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : NP_ERROR_CONFIG;
  }

  if (run->parsed()) return run_experiment_cmd(config_path, false, opts);
  if (preset->parsed()) return run_experiment_cmd(preset_name, true, opts);
  if (analytic->parsed()) {
    std::string overrides;
    for (const std::string& kv : opts.sets) {
      if (kv.find('=') == std::string::npos || kv.front() == '=') {
        std::fprintf(stderr, "error: --set expects KEY=VALUE, got '%s'\n", kv.c_str());
        return NP_ERROR_CONFIG;
      }
      overrides += kv;
      overrides += '\n';
    }
    const np_status st = np_analytic_table(table_name.c_str(),
                                           overrides.empty() ? nullptr : overrides.c_str(),
                                           opts.out.empty() ? nullptr : opts.out.c_str());
    return st == NP_OK ? 0 : fail(st);
  }
  if (scenario->parsed()) {
    const np_status st =
        np_scenario_csv(scenario_config.c_str(), opts.out.empty() ? nullptr : opts.out.c_str());
    return st == NP_OK ? 0 : fail(st);
  }
  return NP_ERROR_CONFIG;
}
