#pragma once

#include <Eigen/Core>
#include <complex>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "nomapair/kvconfig.hpp"
#include "nomapair/rng.hpp"

namespace nomapair {

// PPC: per-user power inversely proportional to path loss, so every user is
// received at the same power. EP: every user transmits the same power.
enum class PowerMode { PPC, EP };

PowerMode parse_power_mode(std::string_view text);
std::string_view to_string(PowerMode mode);

struct ScenarioConfig {
  int num_users = 2;
  double disc_radius = 100.0;
  double r0 = 1.0;  // keeps the path loss finite at the cell center
  double target_avg_snr = 1.0;  // linear
  PowerMode power_mode = PowerMode::EP;
  double noise_variance = 1.0;
  std::uint64_t rng_seed = 1;

  void validate() const;  // ConfigError naming the offending field
};

ScenarioConfig scenario_config_from_kv(const KvMap& kv);
ScenarioConfig load_scenario_config(const std::string& path);

struct UserLink {
  double radius = 0.0;     // distance from the base station
  double path_loss = 1.0;  // d = 1 / (r0^2 + r^2)
  double tx_power = 1.0;
};

struct CellScenario {
  ScenarioConfig config;
  std::vector<UserLink> users;

  int num_users() const { return static_cast<int>(users.size()); }
  // P_k d_k / sigma^2; ArgumentError on a bad index.
  double receive_snr(int user) const;
  std::vector<double> receive_snrs() const;
};

// Disc-law expectations, exact: E[d] and E[1/d] for r^2 uniform on [0, R^2].
double disc_mean_path_loss(double disc_radius, double r0);
double disc_mean_inverse_path_loss(double disc_radius, double r0);

// Common transmit power that hits the target average received SNR under EP.
double equal_power_level(const ScenarioConfig& config);
// The single received SNR every user sees under PPC with the same average
// transmit power as EP.
double ppc_received_snr(const ScenarioConfig& config);

// Radii drawn separately so paired comparisons can reuse one placement under
// both power modes.
std::vector<double> sample_disc_radii(const ScenarioConfig& config, RngStream& rng);
CellScenario scenario_from_radii(const ScenarioConfig& config, const std::vector<double>& radii);

CellScenario sample_scenario(const ScenarioConfig& config);
CellScenario sample_scenario(const ScenarioConfig& config, RngStream& rng);

// Columns: user,r,d,P,gamma (0-based user ids, 17 significant digits).
void write_scenario_csv(const CellScenario& scenario, std::ostream& out);

enum class FadingShape { SamsSelective, MbassSingleAntenna, MbassMultiAntenna };

// One fading draw. `matrix` is users x subcarriers for SamsSelective and
// bs_antennas x users for MbassSingleAntenna; MbassMultiAntenna fills
// `per_user` with one bs_antennas x user_antennas block per user.
struct ChannelRealization {
  FadingShape shape;
  double entry_variance = 1.0;
  Eigen::MatrixXcd matrix;
  std::vector<Eigen::MatrixXcd> per_user;
};

ChannelRealization sample_fading_sams(int num_users, int num_subcarriers, double entry_variance,
                                      RngStream& rng);
ChannelRealization sample_fading_mbass(int bs_antennas, int num_users, double entry_variance,
                                       RngStream& rng);
ChannelRealization sample_fading_mbass_mau(int bs_antennas, int num_users, int user_antennas,
                                           double entry_variance, RngStream& rng);

}  // namespace nomapair
