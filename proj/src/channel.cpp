#include "nomapair/channel.hpp"

#include <cmath>
#include <ostream>
#include <set>

#include "nomapair/errors.hpp"

namespace nomapair {

PowerMode parse_power_mode(std::string_view text) {
  if (text == "PPC") return PowerMode::PPC;
  if (text == "EP") return PowerMode::EP;
  throw ConfigError("power_mode must be 'PPC' or 'EP', got '" + std::string(text) + "'");
}

std::string_view to_string(PowerMode mode) {
  return mode == PowerMode::PPC ? "PPC" : "EP";
}

void ScenarioConfig::validate() const {
  if (num_users <= 0 || num_users % 2 != 0)
    throw ConfigError("num_users must be positive and even, got " + std::to_string(num_users));
  if (!(disc_radius > 0.0)) throw ConfigError("disc_radius must be > 0");
  if (!(r0 > 0.0)) throw ConfigError("r0 must be > 0");
  if (!(target_avg_snr > 0.0)) throw ConfigError("target_avg_snr must be > 0 (linear scale)");
  if (!(noise_variance > 0.0)) throw ConfigError("noise_variance must be > 0");
}

ScenarioConfig scenario_config_from_kv(const KvMap& kv) {
  static const std::set<std::string> known = {"num_users",      "disc_radius",    "r0",
                                             "target_avg_snr", "power_mode",     "noise_variance",
                                             "rng_seed"};
  for (const auto& [key, value] : kv) {
    (void)value;
    if (!known.count(key)) throw ConfigError("unknown scenario config key '" + key + "'");
  }
  ScenarioConfig c;
  c.num_users = static_cast<int>(get_int(kv, "num_users", c.num_users));
  c.disc_radius = get_double(kv, "disc_radius", c.disc_radius);
  c.r0 = get_double(kv, "r0", c.r0);
  c.target_avg_snr = get_double(kv, "target_avg_snr", c.target_avg_snr);
  if (kv_has(kv, "power_mode")) c.power_mode = parse_power_mode(require_string(kv, "power_mode"));
  c.noise_variance = get_double(kv, "noise_variance", c.noise_variance);
  c.rng_seed = get_u64(kv, "rng_seed", c.rng_seed);
  c.validate();
  return c;
}

ScenarioConfig load_scenario_config(const std::string& path) {
  return scenario_config_from_kv(parse_kv_file(path));
}

double CellScenario::receive_snr(int user) const {
  if (user < 0 || user >= num_users())
    throw ArgumentError("receive_snr: user index " + std::to_string(user) + " out of range [0, " +
                        std::to_string(num_users()) + ")");
  const UserLink& u = users[user];
  return u.tx_power * u.path_loss / config.noise_variance;
}

std::vector<double> CellScenario::receive_snrs() const {
  std::vector<double> out(users.size());
  for (int k = 0; k < num_users(); ++k) out[k] = receive_snr(k);
  return out;
}

double disc_mean_path_loss(double disc_radius, double r0) {
  const double R2 = disc_radius * disc_radius;
  const double r02 = r0 * r0;
  return std::log((r02 + R2) / r02) / R2;
}

double disc_mean_inverse_path_loss(double disc_radius, double r0) {
  return r0 * r0 + disc_radius * disc_radius / 2.0;
}

double equal_power_level(const ScenarioConfig& config) {
  return config.target_avg_snr * config.noise_variance /
         disc_mean_path_loss(config.disc_radius, config.r0);
}

double ppc_received_snr(const ScenarioConfig& config) {
  return config.target_avg_snr / (disc_mean_path_loss(config.disc_radius, config.r0) *
                                  disc_mean_inverse_path_loss(config.disc_radius, config.r0));
}

std::vector<double> sample_disc_radii(const ScenarioConfig& config, RngStream& rng) {
  config.validate();
  std::vector<double> radii(config.num_users);
  // r = R*sqrt(u) puts users uniformly over the disc area.
  for (double& r : radii) r = config.disc_radius * std::sqrt(rng.uniform());
  return radii;
}

CellScenario scenario_from_radii(const ScenarioConfig& config, const std::vector<double>& radii) {
  config.validate();
  if (static_cast<int>(radii.size()) != config.num_users)
    throw ArgumentError("scenario_from_radii: need one radius per user");
  CellScenario s;
  s.config = config;
  s.users.resize(config.num_users);
  const double p_bar = equal_power_level(config);
  const double ppc_scale = p_bar / disc_mean_inverse_path_loss(config.disc_radius, config.r0);
  for (int k = 0; k < config.num_users; ++k) {
    UserLink& u = s.users[k];
    u.radius = radii[k];
    if (!(u.radius >= 0.0) || u.radius > config.disc_radius)
      throw ArgumentError("scenario_from_radii: radius outside the disc");
    u.path_loss = 1.0 / (config.r0 * config.r0 + u.radius * u.radius);
    u.tx_power = config.power_mode == PowerMode::EP ? p_bar : ppc_scale / u.path_loss;
  }
  return s;
}

CellScenario sample_scenario(const ScenarioConfig& config, RngStream& rng) {
  return scenario_from_radii(config, sample_disc_radii(config, rng));
}

CellScenario sample_scenario(const ScenarioConfig& config) {
  RngStream rng(config.rng_seed, 0);
  return sample_scenario(config, rng);
}

void write_scenario_csv(const CellScenario& scenario, std::ostream& out) {
  char buf[160];
  out << "user,r,d,P,gamma\n";
  for (int k = 0; k < scenario.num_users(); ++k) {
    const UserLink& u = scenario.users[k];
    std::snprintf(buf, sizeof buf, "%d,%.17g,%.17g,%.17g,%.17g\n", k, u.radius, u.path_loss,
                  u.tx_power, scenario.receive_snr(k));
    out << buf;
  }
}

namespace {

void fill_complex(Eigen::MatrixXcd& m, double entry_variance, RngStream& rng) {
  // Row-major fill order; part of the reproducibility contract.
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) m(r, c) = rng.complex_normal(entry_variance);
}

void check_dims(int rows, int cols, const char* what) {
  if (rows <= 0 || cols <= 0)
    throw ArgumentError(std::string(what) + ": dimensions must be positive");
}

}  // namespace

ChannelRealization sample_fading_sams(int num_users, int num_subcarriers, double entry_variance,
                                      RngStream& rng) {
  check_dims(num_users, num_subcarriers, "sample_fading_sams");
  if (!(entry_variance > 0.0)) throw ArgumentError("sample_fading_sams: entry_variance must be > 0");
  ChannelRealization ch;
  ch.shape = FadingShape::SamsSelective;
  ch.entry_variance = entry_variance;
  ch.matrix.resize(num_users, num_subcarriers);
  fill_complex(ch.matrix, entry_variance, rng);
  return ch;
}

ChannelRealization sample_fading_mbass(int bs_antennas, int num_users, double entry_variance,
                                       RngStream& rng) {
  check_dims(bs_antennas, num_users, "sample_fading_mbass");
  if (!(entry_variance > 0.0)) throw ArgumentError("sample_fading_mbass: entry_variance must be > 0");
  ChannelRealization ch;
  ch.shape = FadingShape::MbassSingleAntenna;
  ch.entry_variance = entry_variance;
  ch.matrix.resize(bs_antennas, num_users);
  fill_complex(ch.matrix, entry_variance, rng);
  return ch;
}

ChannelRealization sample_fading_mbass_mau(int bs_antennas, int num_users, int user_antennas,
                                           double entry_variance, RngStream& rng) {
  check_dims(bs_antennas, num_users, "sample_fading_mbass_mau");
  if (user_antennas <= 0)
    throw ArgumentError("sample_fading_mbass_mau: user_antennas must be positive");
  if (!(entry_variance > 0.0))
    throw ArgumentError("sample_fading_mbass_mau: entry_variance must be > 0");
  ChannelRealization ch;
  ch.shape = FadingShape::MbassMultiAntenna;
  ch.entry_variance = entry_variance;
  ch.per_user.resize(num_users);
  for (auto& block : ch.per_user) {
    block.resize(bs_antennas, user_antennas);
    fill_complex(block, entry_variance, rng);
  }
  return ch;
}

}  // namespace nomapair
