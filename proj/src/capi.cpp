#include "nomapair.h"

#include <cstring>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "nomapair/channel.hpp"
#include "nomapair/errors.hpp"
#include "nomapair/harness.hpp"
#include "nomapair/rng.hpp"

struct np_experiment {
  nomapair::ExperimentSpec spec;
  std::optional<nomapair::ResultTable> result;
};

namespace {

thread_local std::string g_last_error;

np_status to_status(const std::exception& e) {
  g_last_error = e.what();
  if (dynamic_cast<const nomapair::ConfigError*>(&e)) return NP_ERROR_CONFIG;
  if (dynamic_cast<const nomapair::IoError*>(&e)) return NP_ERROR_IO;
  return NP_ERROR_NUMERIC;
}

template <typename Fn>
np_status guarded(Fn&& fn) {
  try {
    fn();
    g_last_error.clear();
    return NP_OK;
  } catch (const std::exception& e) {
    return to_status(e);
  } catch (...) {
    g_last_error = "unknown error";
    return NP_ERROR_NUMERIC;
  }
}

np_status copy_text(const std::string& text, char* dst, size_t cap, const char* what) {
  if (dst == nullptr || cap < text.size() + 1) {
    g_last_error = std::string(what) + " buffer too small";
    return NP_ERROR_CONFIG;
  }
  std::memcpy(dst, text.c_str(), text.size() + 1);
  return NP_OK;
}

np_status require(bool ok, const char* message) {
  if (ok) return NP_OK;
  g_last_error = message;
  return NP_ERROR_CONFIG;
}

}  // namespace

extern "C" {

const char* np_version(void) { return nomapair::kVersion; }

const char* np_rng_algorithm(void) { return nomapair::RngStream::kAlgorithm.data(); }

const char* np_last_error(void) { return g_last_error.c_str(); }

np_status np_experiment_from_file(const char* path, np_experiment** out) {
  if (np_status st = require(path && out, "null argument"); st != NP_OK) return st;
  *out = nullptr;
  return guarded([&] {
    auto* exp = new np_experiment;
    try {
      exp->spec = nomapair::load_experiment_spec(path);
    } catch (...) {
      delete exp;
      throw;
    }
    *out = exp;
  });
}

np_status np_experiment_from_preset(const char* name, np_experiment** out) {
  if (np_status st = require(name && out, "null argument"); st != NP_OK) return st;
  *out = nullptr;
  return guarded([&] {
    auto* exp = new np_experiment;
    try {
      exp->spec = nomapair::preset_spec(name);
    } catch (...) {
      delete exp;
      throw;
    }
    *out = exp;
  });
}

np_status np_experiment_override(np_experiment* exp, const char* key, const char* value) {
  if (np_status st = require(exp && key && value, "null argument"); st != NP_OK) return st;
  return guarded([&] {
    nomapair::apply_spec_override(exp->spec, key, value);
    exp->result.reset();  // stale results must not outlive the config they came from
  });
}

np_status np_experiment_run(np_experiment* exp) {
  if (np_status st = require(exp != nullptr, "null experiment"); st != NP_OK) return st;
  return guarded([&] { exp->result = nomapair::run_experiment(exp->spec); });
}

np_status np_experiment_write_csv(np_experiment* exp, const char* path) {
  if (np_status st = require(exp != nullptr, "null experiment"); st != NP_OK) return st;
  if (np_status st = require(exp->result.has_value(), "experiment has not been run");
      st != NP_OK) {
    return st;
  }
  return guarded([&] {
    const std::string target = path ? path : exp->spec.out_path;
    nomapair::write_table_file(*exp->result, target);
  });
}

np_status np_experiment_row_count(const np_experiment* exp, size_t* count) {
  if (np_status st = require(exp && count, "null argument"); st != NP_OK) return st;
  if (np_status st = require(exp->result.has_value(), "experiment has not been run");
      st != NP_OK) {
    return st;
  }
  *count = exp->result->rows.size();
  g_last_error.clear();
  return NP_OK;
}

np_status np_experiment_row(const np_experiment* exp, size_t index, double* sweep_value,
                            char* method, size_t method_cap, char* power_mode,
                            size_t power_mode_cap, double* mean_metric, double* stderr_metric,
                            long* trials) {
  if (np_status st = require(exp != nullptr, "null experiment"); st != NP_OK) return st;
  if (np_status st = require(exp->result.has_value(), "experiment has not been run");
      st != NP_OK) {
    return st;
  }
  const auto& rows = exp->result->rows;
  if (np_status st = require(index < rows.size(), "row index out of range"); st != NP_OK) {
    return st;
  }
  const nomapair::ResultRow& row = rows[index];
  if (np_status st = copy_text(row.method, method, method_cap, "method"); st != NP_OK) return st;
  if (np_status st = copy_text(row.power_mode, power_mode, power_mode_cap, "power_mode");
      st != NP_OK) {
    return st;
  }
  if (sweep_value) *sweep_value = row.sweep_value;
  if (mean_metric) *mean_metric = row.mean_metric;
  if (stderr_metric) *stderr_metric = row.stderr_metric;
  if (trials) *trials = row.trials;
  g_last_error.clear();
  return NP_OK;
}

void np_experiment_free(np_experiment* exp) { delete exp; }

np_status np_analytic_table(const char* table, const char* overrides, const char* out_path) {
  if (np_status st = require(table != nullptr, "null table name"); st != NP_OK) return st;
  return guarded([&] {
    nomapair::ExperimentSpec spec;
    spec.kind = nomapair::ExperimentKind::AsymptoticTables;
    spec.table = table;
    spec.sweep = nomapair::SweepVariable::GammaDb;
    spec.sweep_values = {0, 5, 10, 15, 20, 25, 30};
    spec.methods.clear();
    if (overrides != nullptr) {
      const nomapair::KvMap kv = nomapair::parse_kv_text(overrides, "overrides");
      for (const auto& [key, value] : kv) nomapair::apply_spec_override(spec, key, value);
    }
    const nomapair::ResultTable result = nomapair::run_experiment(spec);
    nomapair::write_table_file(result, out_path ? out_path : spec.out_path);
  });
}

np_status np_scenario_csv(const char* config_path, const char* out_path) {
  if (np_status st = require(config_path != nullptr, "null config path"); st != NP_OK) return st;
  return guarded([&] {
    const nomapair::ScenarioConfig cfg = nomapair::load_scenario_config(config_path);
    const nomapair::CellScenario scenario = nomapair::sample_scenario(cfg);
    if (out_path == nullptr || out_path[0] == '\0') {
      nomapair::write_scenario_csv(scenario, std::cout);
      return;
    }
    std::ofstream f(out_path);
    if (!f) throw nomapair::IoError(std::string("cannot open '") + out_path + "' for writing");
    nomapair::write_scenario_csv(scenario, f);
    f.flush();
    if (!f) throw nomapair::IoError(std::string("write failed for '") + out_path + "'");
  });
}

}  // extern "C"
