// End-to-end checks of the toolkit's load-bearing guarantees. One line of
// output per criterion; exit status counts the failures.

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "nomapair/asymptotics.hpp"
#include "nomapair/baselines.hpp"
#include "nomapair/channel.hpp"
#include "nomapair/harness.hpp"
#include "nomapair/pairing.hpp"
#include "nomapair/rates.hpp"
#include "nomapair/rng.hpp"

using namespace nomapair;

namespace {

int g_failures = 0;

void report(int criterion, bool pass, const std::string& detail) {
  std::printf("criterion %2d %s  %s\n", criterion, pass ? "PASS" : "FAIL", detail.c_str());
  if (!pass) ++g_failures;
}

// One-sided exact binomial tail P(X >= wins) under p = 1/2; the ordering
// claims must clear 99% confidence over the paired trials.
double binomial_tail_geq(int n, int wins) {
  double tail = 0.0;
  for (int i = wins; i <= n; ++i) {
    tail += std::exp(std::lgamma(n + 1.0) - std::lgamma(i + 1.0) - std::lgamma(n - i + 1.0) -
                     n * std::log(2.0));
  }
  return tail;
}

bool sign_test_greater(int n, int wins) { return binomial_tail_geq(n, wins) < 0.01; }

ScenarioConfig cell_config(int users, double gamma_db, PowerMode mode) {
  ScenarioConfig cfg;
  cfg.num_users = users;
  cfg.target_avg_snr = std::pow(10.0, gamma_db / 10.0);
  cfg.power_mode = mode;
  return cfg;
}

double flat_pair_total(const std::vector<double>& gains, const PairingSet& p) {
  double acc = 0.0;
  for (const auto& [a, b] : p.pairs) acc += sic_pair_sum_rate(gains[a], gains[b]);
  return acc;
}

// ---- criteria 1 and 2: flat sorted pairing vs exhaustive search ----------

void criteria_sorted_exact() {
  const int instances = 200;
  const ScenarioConfig cfg = cell_config(8, 10.0, PowerMode::EP);
  bool sum_ok = true, minmax_ok = true;
  double worst_rel = 0.0, worst_mm = 0.0;
  for (int inst = 0; inst < instances; ++inst) {
    RngStream rng(1, inst);
    const CellScenario sc = scenario_from_radii(cfg, sample_disc_radii(cfg, rng));
    const ChannelRealization fading = sample_fading_sams(8, 1, 1.0, rng);
    const std::vector<double> gains = flat_received_gains(sc, fading.matrix);

    const PairingSet sorted = flat_sorted_pairing(gains);
    const double sorted_total = flat_pair_total(gains, sorted);
    const auto rate = [&](int a, int b, int) { return sic_pair_sum_rate(gains[a], gains[b]); };

    const BruteForceResult sum = brute_force_pairing(rate, 8, 4, false);
    if (sum.candidates != 105) sum_ok = false;
    const double rel = std::abs(sorted_total - sum.value) / sum.value;
    worst_rel = std::max(worst_rel, rel);
    if (rel > 1e-12) sum_ok = false;

    // max-min argmaxes tie whenever two partitions share the bottleneck pair,
    // so the check is attainment of the optimal value, not partition identity
    const BruteForceResult mm =
        brute_force_pairing(rate, 8, 4, false, PairingObjective::MaxMin);
    double sorted_min = 1e300;
    for (const auto& [a, b] : sorted.pairs)
      sorted_min = std::min(sorted_min, sic_pair_sum_rate(gains[a], gains[b]));
    const double mm_rel = std::abs(sorted_min - mm.value) / std::max(1.0, mm.value);
    worst_mm = std::max(worst_mm, mm_rel);
    if (mm_rel > 1e-12) minmax_ok = false;
  }
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "sorted pairing equals the exhaustive sum-rate optimum on %d/%d flat instances "
                "(worst rel dev %.2e)",
                instances, instances, worst_rel);
  report(1, sum_ok, buf);
  std::snprintf(buf, sizeof buf,
                "sorted partition attains the exhaustive max-min optimum on every instance "
                "(worst rel dev %.2e)",
                worst_mm);
  report(2, minmax_ok, buf);
}

// ---- criterion 3: selective assignment reduction vs exhaustive search ----

void criterion_selective_exact() {
  const int instances = 100;
  const ScenarioConfig cfg = cell_config(8, 10.0, PowerMode::EP);
  bool ok = true;
  for (int inst = 0; inst < instances && ok; ++inst) {
    RngStream rng(3, inst);
    const CellScenario sc = scenario_from_radii(cfg, sample_disc_radii(cfg, rng));
    const ChannelRealization fading = sample_fading_sams(8, 4, 1.0, rng);
    const Eigen::MatrixXd gains = received_gain_matrix(sc, fading.matrix);
    for (BoundKind kind : {BoundKind::First, BoundKind::Second}) {
      const Eigen::MatrixXd contrib = bound_contribution_matrix(gains, kind);
      const PairingSet got = sams_pair_by_bound(gains, kind);
      double got_total = 0.0;
      for (int i = 0; i < got.num_pairs(); ++i) {
        got_total += contrib(got.pairs[i].first, got.subcarrier_map[i]) +
                     contrib(got.pairs[i].second, got.subcarrier_map[i]);
      }
      const BruteForceResult brute = brute_force_pairing(
          [&](int a, int b, int sc2) { return contrib(a, sc2) + contrib(b, sc2); }, 8, 4, true);
      if (brute.candidates != 2520) ok = false;
      if (std::abs(got_total - brute.value) > 1e-12 * std::max(1.0, brute.value)) ok = false;
    }
  }
  report(3, ok,
         "assignment-reduction pairing matches the 2520-candidate exhaustive bound optimum for "
         "both bounds on 100 instances");
}

// ---- criterion 4: no detector beats the generalized eigenvalue bound -----

void criterion_detector_bound() {
  bool ok = true;
  double worst_excess = -1e300;
  RngStream rng(4, 0);
  for (int inst = 0; inst < 50; ++inst) {
    Eigen::MatrixXcd u(6, 2), v(6, 6);
    for (int i = 0; i < 6; ++i) {
      for (int j = 0; j < 2; ++j) u(i, j) = rng.complex_normal(1.0);
      for (int j = 0; j < 6; ++j) v(i, j) = rng.complex_normal(1.0);
    }
    const Eigen::MatrixXcd a = u * u.adjoint();
    const Eigen::MatrixXcd b =
        v * v.adjoint() + 0.1 * Eigen::MatrixXcd::Identity(6, 6);

    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXcd> ges(a, b);
    const Eigen::VectorXd evals = ges.eigenvalues();
    const double bound = log2_1p(evals(5)) + log2_1p(evals(4));

    for (int t = 0; t < 1000; ++t) {
      Eigen::MatrixXcd x(2, 6);
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 6; ++j) x(i, j) = rng.complex_normal(1.0);
      const Eigen::Matrix2cd num = x * a * x.adjoint();
      const Eigen::Matrix2cd den = x * b * x.adjoint();
      const Eigen::Matrix2cd m = Eigen::Matrix2cd::Identity() + den.inverse() * num;
      const double val = std::log2(std::abs(m.determinant()));
      worst_excess = std::max(worst_excess, val - bound);
      if (val > bound + 1e-9) ok = false;
    }
  }
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "50k random detectors never beat the eigenvalue bound (worst excess %.2e)",
                worst_excess);
  report(4, ok, buf);
}

// ---- criterion 5: rank-2 downdate vs direct computation ------------------

void criterion_downdate() {
  RngStream rng(5, 0);
  MimoSystem sys;
  sys.channel.resize(8, 16);
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 16; ++j) sys.channel(i, j) = rng.complex_normal(1.0);
  sys.tx_powers.resize(16);
  for (int j = 0; j < 16; ++j) sys.tx_powers(j) = 0.2 + 3.0 * rng.uniform();
  sys.noise_variance = 1.0;

  const Eigen::MatrixXcd s_inv = receive_covariance_inverse(sys);
  bool ok = true;
  double worst = 0.0;
  int pairs = 0;
  for (int a = 0; a < 16; ++a) {
    for (int b = a + 1; b < 16; ++b) {
      ++pairs;
      const PairRate direct = pair_rate_mimo(sys, a, b);
      const PairEigenvalues dd = pair_eigenvalues_from_downdate(sys, s_inv, a, b);
      const double d1 = std::abs(dd.lambda1 - direct.eig.lambda1) /
                        std::max(1.0, direct.eig.lambda1);
      const double d2 = std::abs(dd.lambda2 - direct.eig.lambda2) /
                        std::max(1.0, direct.eig.lambda2);
      worst = std::max({worst, d1, d2});
      if (d1 > 1e-9 || d2 > 1e-9) ok = false;
    }
  }
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "all %d pair eigenvalue sets agree between downdate and direct routes "
                "(worst dev %.2e)",
                pairs, worst);
  report(5, ok, buf);
}

// ---- criterion 6: eigenvalues harden onto the closed-form limit ----------

std::vector<double> sampled_pair_eigs(int n, double gamma, std::uint64_t stream) {
  const int k = 2 * n;
  RngStream rng(6, stream);
  MimoSystem sys;
  sys.channel = sample_fading_mbass(n, k, 1.0 / n, rng).matrix;
  sys.tx_powers = Eigen::VectorXd::Constant(k, gamma);
  sys.noise_variance = 1.0;
  const Eigen::MatrixXcd s_inv = receive_covariance_inverse(sys);
  std::vector<double> eigs;
  eigs.reserve(4 * n);
  for (int i = 0; i < n; ++i) {
    const PairEigenvalues split = pair_eigenvalues_from_downdate(sys, s_inv, i, i + n);
    eigs.push_back(split.lambda1);
    eigs.push_back(split.lambda2);
    const PairEigenvalues adj = pair_eigenvalues_from_downdate(sys, s_inv, 2 * i, 2 * i + 1);
    eigs.push_back(adj.lambda1);
    eigs.push_back(adj.lambda2);
  }
  return eigs;
}

double median_of(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  return v[v.size() / 2];
}

void criterion_hardening() {
  bool ok = true;
  double worst_rel = 0.0;
  for (double gamma : {1.0, 10.0}) {
    const double limit = mbass_limit_eigenvalue(2.0, gamma);
    const double med = median_of(sampled_pair_eigs(300, gamma, gamma == 1.0 ? 0 : 1));
    const double rel = std::abs(med / limit - 1.0);
    worst_rel = std::max(worst_rel, rel);
    if (rel > 0.02) ok = false;
  }

  // the spread around the limit shrinks with the array size
  const double limit10 = mbass_limit_eigenvalue(2.0, 10.0);
  auto pooled_dev = [&](int n, std::uint64_t base) {
    std::vector<double> devs;
    for (std::uint64_t r = 0; r < 3; ++r) {
      for (double e : sampled_pair_eigs(n, 10.0, base + r)) {
        devs.push_back(std::abs(e / limit10 - 1.0));
      }
    }
    return median_of(devs);
  };
  const double dev300 = pooled_dev(300, 10);
  const double dev50 = pooled_dev(50, 20);
  if (!(dev300 < dev50)) ok = false;

  char buf[200];
  std::snprintf(buf, sizeof buf,
                "median pair eigenvalue within 2%% of the limit at N=300 (worst rel %.3f); "
                "median dev %.3f at N=300 < %.3f at N=50",
                worst_rel, dev300, dev50);
  report(6, ok, buf);
}

// ---- criterion 7: flat large-system integral vs direct simulation --------

void criterion_flat_limit() {
  const double gamma = std::pow(10.0, 1.5);
  const double limit = flat_optimal_avg_rate(SnrDistribution::point_mass(gamma));
  const int users = 10000;
  const int reals = 20;
  RngStream rng(7, 0);
  double acc = 0.0;
  for (int r = 0; r < reals; ++r) {
    std::vector<double> gains(users);
    for (double& g : gains) g = -gamma * std::log(rng.uniform_pos());
    const PairingSet p = flat_sorted_pairing(gains);
    acc += flat_pair_total(gains, p) / users;
  }
  const double sim = acc / reals;
  const double rel = std::abs(sim / limit - 1.0);
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "sorted pairing of 10k equal-mean users averages %.4f vs integral %.4f "
                "(rel dev %.4f)",
                sim, limit, rel);
  report(7, rel <= 0.01, buf);
}

// ---- criterion 8: benchmark landmark -------------------------------------

void criterion_landmark() {
  const double v = ergodic_capacity_per_user(std::pow(10.0, 1.5));
  char buf[120];
  std::snprintf(buf, sizeof buf, "full-cancellation benchmark at 15 dB is %.6f (3.003 +/- 0.01)",
                v);
  report(8, std::abs(v - 3.003) <= 0.01, buf);
}

// ---- criterion 9: paired ordering suite ----------------------------------

struct SelectiveTrial {
  Eigen::MatrixXd gains_ep;
  Eigen::MatrixXd gains_ppc;
  PairingSet random_p;
};

SelectiveTrial selective_trial(int m, double gamma_db, std::uint64_t seed, long trial) {
  SelectiveTrial out;
  RngStream rng(seed, static_cast<std::uint64_t>(trial));
  const ScenarioConfig ep = cell_config(2 * m, gamma_db, PowerMode::EP);
  const ScenarioConfig ppc = cell_config(2 * m, gamma_db, PowerMode::PPC);
  const std::vector<double> radii = sample_disc_radii(ep, rng);
  const ChannelRealization fading = sample_fading_sams(2 * m, m, 1.0, rng);
  out.random_p = random_pairing(2 * m, rng);
  out.gains_ep = received_gain_matrix(scenario_from_radii(ep, radii), fading.matrix);
  out.gains_ppc = received_gain_matrix(scenario_from_radii(ppc, radii), fading.matrix);
  return out;
}

void criterion_orderings() {
  const int n = 400;
  const int m = 10;

  // (a) bound-based beats random at 5 and 20 dB; (b) the two bounds agree within 2%
  bool a_ok = true, b_ok = true;
  for (double gdb : {5.0, 20.0}) {
    int wins = 0;
    double mean_fb = 0.0, mean_sb = 0.0;
    for (long t = 0; t < n; ++t) {
      const SelectiveTrial tr = selective_trial(m, gdb, 901, t);
      const double fb =
          sams_total_rate(tr.gains_ep, sams_pair_by_bound(tr.gains_ep, BoundKind::First));
      const double sb =
          sams_total_rate(tr.gains_ep, sams_pair_by_bound(tr.gains_ep, BoundKind::Second));
      const double rnd = sams_total_rate(tr.gains_ep, tr.random_p);
      if (fb > rnd) ++wins;
      mean_fb += fb;
      mean_sb += sb;
    }
    if (!sign_test_greater(n, wins)) a_ok = false;
    mean_fb /= n;
    mean_sb /= n;
    if (std::abs(mean_fb - mean_sb) > 0.02 * std::max(mean_fb, mean_sb)) b_ok = false;
  }
  report(9, a_ok, "(a) bound-based pairing beats random pairing at 5 and 20 dB (sign test, 99%)");
  report(9, b_ok, "(b) first- and second-bound pairing means agree within 2%");

  // (c) equal transmit power beats equalized receive power on total rate
  {
    int wins = 0;
    for (long t = 0; t < n; ++t) {
      const SelectiveTrial tr = selective_trial(m, 15.0, 903, t);
      const double ep =
          sams_total_rate(tr.gains_ep, sams_pair_by_bound(tr.gains_ep, BoundKind::First));
      const double ppc =
          sams_total_rate(tr.gains_ppc, sams_pair_by_bound(tr.gains_ppc, BoundKind::First));
      if (ep > ppc) ++wins;
    }
    report(9, sign_test_greater(n, wins),
           "(c) equal transmit power outranks equalized receive power on total rate (sign test)");
  }

  // (d) orthogonal slots never need less power, and optimized slots never more
  {
    bool ok = true;
    const ScenarioConfig cfg = cell_config(2 * m, 10.0, PowerMode::EP);
    for (long t = 0; t < n; ++t) {
      RngStream rng(904, static_cast<std::uint64_t>(t));
      const CellScenario sc = scenario_from_radii(cfg, sample_disc_radii(cfg, rng));
      const ChannelRealization fading = sample_fading_sams(2 * m, m, 1.0, rng);
      const TdmaTrial tr = tdma_power_trial(sc, fading.matrix, true);
      if (tr.equal_power < tr.noma_power * (1.0 - 1e-9)) ok = false;
      if (tr.opt_power < tr.noma_power * (1.0 - 1e-9)) ok = false;
      if (tr.opt_power > tr.equal_power + 1e-12 * std::max(1.0, tr.equal_power)) ok = false;
    }
    report(9, ok, "(d) slotted power >= superposed power and optimized slots <= equal slots, "
                  "every trial");
  }

  // (e) bound pairing is fairer than random; equalized powers are fairer still.
  // Fairness is across users' long-run rates: one realization is a deployment,
  // each user's rate averaged over inner fading draws before the Jain index.
  // Per-draw Jain would bury the path-loss spread under the SIC split and is
  // not the plotted quantity.
  {
    const int inner = 50;
    int fair_wins = 0, ppc_wins = 0;
    for (long t = 0; t < n; ++t) {
      RngStream rng(905, static_cast<std::uint64_t>(t));
      const ScenarioConfig ep = cell_config(2 * m, 15.0, PowerMode::EP);
      const ScenarioConfig ppc = cell_config(2 * m, 15.0, PowerMode::PPC);
      const std::vector<double> radii = sample_disc_radii(ep, rng);
      const CellScenario sc_ep = scenario_from_radii(ep, radii);
      const CellScenario sc_ppc = scenario_from_radii(ppc, radii);
      std::vector<double> r_fb(2 * m, 0.0), r_rnd(2 * m, 0.0), r_ppc(2 * m, 0.0);
      for (int it = 0; it < inner; ++it) {
        const ChannelRealization fading = sample_fading_sams(2 * m, m, 1.0, rng);
        const PairingSet rp = random_pairing(2 * m, rng);
        const Eigen::MatrixXd g_ep = received_gain_matrix(sc_ep, fading.matrix);
        const Eigen::MatrixXd g_ppc = received_gain_matrix(sc_ppc, fading.matrix);
        const auto u_fb = sams_user_rates(g_ep, sams_pair_by_bound(g_ep, BoundKind::First));
        const auto u_rnd = sams_user_rates(g_ep, rp);
        const auto u_ppc = sams_user_rates(g_ppc, sams_pair_by_bound(g_ppc, BoundKind::First));
        for (int k = 0; k < 2 * m; ++k) {
          r_fb[k] += u_fb[k];
          r_rnd[k] += u_rnd[k];
          r_ppc[k] += u_ppc[k];
        }
      }
      if (jain_index(r_fb) > jain_index(r_rnd)) ++fair_wins;
      if (jain_index(r_ppc) > jain_index(r_fb)) ++ppc_wins;
    }
    report(9, sign_test_greater(n, fair_wins) && sign_test_greater(n, ppc_wins),
           "(e) bound pairing is fairer than random, and equalized receive powers fairer still "
           "(long-run user rates)");
  }

  // (f) the matcher's edge over random pairing shrinks as the array grows
  {
    bool positive = true;
    double gaps[2] = {0.0, 0.0};
    double gap_vars[2] = {0.0, 0.0};
    const int sizes[2] = {2, 32};
    for (int si = 0; si < 2; ++si) {
      const int nant = sizes[si];
      const int k = 2 * nant;
      const ScenarioConfig cfg = cell_config(k, 15.0, PowerMode::PPC);
      std::vector<double> per_trial(n);
      for (long t = 0; t < n; ++t) {
        RngStream rng(906, (static_cast<std::uint64_t>(si) << 32) | t);
        const std::vector<double> radii = sample_disc_radii(cfg, rng);
        const Eigen::MatrixXcd fading = sample_fading_mbass(nant, k, 1.0 / nant, rng).matrix;
        const PairingSet rnd = random_pairing(k, rng);
        const CellScenario sc = scenario_from_radii(cfg, radii);
        const CostMatrix costs = mbass_pair_costs(mbass_system(sc, fading));
        const double opt = pairing_cost_total(costs, mbass_optimal_pairing(costs));
        const double rv = pairing_cost_total(costs, rnd);
        if (opt < rv - 1e-9) positive = false;
        per_trial[t] = (opt - rv) / k;
      }
      double mean = 0.0;
      for (double g : per_trial) mean += g;
      mean /= n;
      double var = 0.0;
      for (double g : per_trial) var += (g - mean) * (g - mean);
      gaps[si] = mean;
      gap_vars[si] = var / (double(n - 1) * n);
    }
    const bool both_positive = positive && gaps[0] > 0.0 && gaps[1] > 0.0;
    const double z = (gaps[0] - gaps[1]) / std::sqrt(gap_vars[0] + gap_vars[1]);
    char buf[200];
    std::snprintf(buf, sizeof buf,
                  "(f) matcher-vs-random per-user gap %.4f at N=2 vs %.4f at N=32, both "
                  "positive (z=%.1f)",
                  gaps[0], gaps[1], z);
    report(9, both_positive && z > 2.33, buf);
  }

  // (g) matcher beats random pairing with beamformed multi-antenna users
  {
    const int nant = 5, paths = 2, k = 10;
    const ScenarioConfig cfg = cell_config(k, 10.0, PowerMode::PPC);
    int wins = 0;
    for (long t = 0; t < n; ++t) {
      RngStream rng(907, static_cast<std::uint64_t>(t));
      const std::vector<double> radii = sample_disc_radii(cfg, rng);
      const ChannelRealization ch = sample_fading_mbass_mau(nant, k, paths, 1.0 / nant, rng);
      const PairingSet rnd = random_pairing(k, rng);
      const Eigen::MatrixXcd eff = beamform_reduce(ch.per_user).effective_channel;
      const CellScenario sc = scenario_from_radii(cfg, radii);
      const CostMatrix costs = mbass_pair_costs(mbass_system(sc, eff));
      if (pairing_cost_total(costs, mbass_optimal_pairing(costs)) >
          pairing_cost_total(costs, rnd)) {
        ++wins;
      }
    }
    report(9, sign_test_greater(n, wins),
           "(g) matcher beats random pairing for beamformed multi-antenna users (sign test)");
  }
}

// ---- criterion 10: upper/lower sandwich and the scaling ratio ------------

void criterion_sandwich() {
  bool ok = true;
  double worst_upper = 1e300, worst_lower = 1e300;
  for (int m : {10, 100}) {
    const ScenarioConfig cfg = cell_config(2 * m, 10.0, PowerMode::EP);
    for (int inst = 0; inst < 100; ++inst) {
      RngStream rng(10, (static_cast<std::uint64_t>(m) << 32) | inst);
      const CellScenario sc = scenario_from_radii(cfg, sample_disc_radii(cfg, rng));
      const ChannelRealization fading = sample_fading_sams(2 * m, m, 1.0, rng);
      const Eigen::MatrixXd gains = received_gain_matrix(sc, fading.matrix);

      const double upper = two_best_upper_bound(gains);
      const double achieved =
          sams_total_rate(gains, sams_pair_by_bound(gains, BoundKind::First));
      const double greedy = sams_total_rate(gains, greedy_two_best(gains));
      worst_upper = std::min(worst_upper, upper - achieved);
      worst_lower = std::min(worst_lower, achieved - greedy);
      if (upper < achieved - 1e-9 || achieved < greedy - 1e-9) ok = false;
    }
  }

  const double r100 = stirling_ratio(100, 1.0);
  const double r1000 = stirling_ratio(1000, 1.0);
  const double r10000 = stirling_ratio(10000, 1.0);
  const bool ratio_ok = r100 < r1000 && r1000 < r10000 && r10000 < 1.0;

  char buf[200];
  std::snprintf(buf, sizeof buf,
                "upper >= bound-achieved >= greedy on 200 instances (min margins %.3f, %.3f); "
                "scaling ratio %.3f < %.3f < %.3f < 1",
                worst_upper, worst_lower, r100, r1000, r10000);
  report(10, ok && ratio_ok, buf);
}

}  // namespace

int main() {
  criteria_sorted_exact();
  criterion_selective_exact();
  criterion_detector_bound();
  criterion_downdate();
  criterion_hardening();
  criterion_flat_limit();
  criterion_landmark();
  criterion_orderings();
  criterion_sandwich();
  if (g_failures == 0) {
    std::printf("all acceptance criteria passed\n");
  } else {
    std::printf("%d acceptance criteria FAILED\n", g_failures);
  }
  return g_failures;
}
