#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "nomapair/channel.hpp"
#include "nomapair/kvconfig.hpp"
#include "nomapair/pairing.hpp"
#include "nomapair/rates.hpp"
#include "nomapair/rng.hpp"

namespace nomapair {

inline constexpr const char* kVersion = "0.1.0";

enum class ExperimentKind {
  SamsSelective,
  SamsFlat,
  MbassSau,
  MbassMau,
  Fairness,
  TdmaPower,
  AsymptoticTables,
};

ExperimentKind parse_experiment_kind(const std::string& text);
std::string to_string(ExperimentKind kind);

enum class SweepVariable { GammaDb, NumPairs, NumAntennas };

SweepVariable parse_sweep_variable(const std::string& text);
std::string to_string(SweepVariable v);

enum class NormalizeMode { None, GammaLog, LogLog };

NormalizeMode parse_normalize_mode(const std::string& text);
std::string to_string(NormalizeMode mode);

struct ExperimentSpec {
  ExperimentKind kind = ExperimentKind::SamsSelective;
  SweepVariable sweep = SweepVariable::GammaDb;
  std::vector<double> sweep_values;  // strictly increasing, nonempty
  long trials = 1000;
  std::uint64_t rng_seed = 1;
  int threads = 1;
  std::string out_path;  // empty: stdout
  std::string table;     // asymptotic_tables: theorem3 | theorem6

  int num_pairs = 10;     // M, when not swept
  int num_antennas = 4;   // N, when not swept
  int num_users_mimo = 0; // K; 0 derives 2N
  int user_paths = 0;     // L; 0 derives (N-1)/2
  double gamma_db = 15.0; // when not swept
  double alpha = 2.0;     // asymptotic eigenvalue tables
  std::vector<PowerMode> power_modes;  // empty: EP
  std::vector<std::string> methods;    // empty: per-experiment defaults
  NormalizeMode normalize = NormalizeMode::None;
  std::string fading = "selective";  // tdma_power only: selective | flat
  double disc_radius = 100.0;
  double r0 = 1.0;
  double noise_variance = 1.0;

  void validate() const;  // ConfigError naming the offending key
};

ExperimentSpec spec_from_kv(const KvMap& kv, const std::string& origin);
ExperimentSpec load_experiment_spec(const std::string& path);
// One config key (same vocabulary as the file format) patched onto a spec.
// Validation runs when the experiment does, not here.
void apply_spec_override(ExperimentSpec& spec, const std::string& key, const std::string& value);
// fig1..fig8; ConfigError on an unknown name.
ExperimentSpec preset_spec(const std::string& name);
std::vector<std::string> preset_names();

struct ResultRow {
  double sweep_value = 0.0;
  std::string method;
  std::string power_mode;  // "EP", "PPC", or "-" for mode-free rows
  double mean_metric = 0.0;
  double stderr_metric = 0.0;
  long trials = 0;  // 0 marks a closed-form row
  double raw_mean = 0.0;
  double raw_stderr = 0.0;
};

struct ResultTable {
  ExperimentSpec spec;
  std::vector<ResultRow> rows;
  bool has_raw = false;  // normalized tables keep the raw rate columns too
};

ResultTable run_experiment(const ExperimentSpec& spec);

// CSV with a '#' metadata block; no timestamps, 17 significant digits, so the
// same spec and seed give byte-identical output.
void write_table(const ResultTable& table, std::ostream& out);
std::string render_table(const ResultTable& table);
void write_table_file(const ResultTable& table, const std::string& path);

// Trial plumbing shared with the test suites. Gains are received SNRs.
Eigen::MatrixXd received_gain_matrix(const CellScenario& scenario,
                                     const Eigen::MatrixXcd& fading);
std::vector<double> flat_received_gains(const CellScenario& scenario,
                                        const Eigen::MatrixXcd& fading);

double sams_total_rate(const Eigen::MatrixXd& gains, const PairingSet& pairing);
std::vector<double> sams_user_rates(const Eigen::MatrixXd& gains, const PairingSet& pairing);
double flat_total_rate(const std::vector<double>& gains, const PairingSet& pairing);
std::vector<double> flat_user_rates(const std::vector<double>& gains, const PairingSet& pairing);

// Received-power MIMO view of a cell: channel = fading, per-user power folded
// with path loss.
MimoSystem mbass_system(const CellScenario& scenario, const Eigen::MatrixXcd& fading);
CostMatrix mbass_pair_costs(const MimoSystem& sys);
double pairing_cost_total(const CostMatrix& costs, const PairingSet& pairing);

struct TdmaTrial {
  double noma_power = 0.0;
  double equal_power = 0.0;  // half/half slots
  double opt_power = 0.0;    // optimized slots
};

TdmaTrial tdma_power_trial(const CellScenario& scenario, const Eigen::MatrixXcd& fading,
                           bool selective);

// Stream id for (sweep point, trial); keeps trials independent and the
// schedule independent of the thread count.
std::uint64_t trial_stream(std::size_t sweep_index, long trial);

}  // namespace nomapair
