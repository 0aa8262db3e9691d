#pragma once

#include <Eigen/Core>
#include <utility>
#include <vector>

#include "nomapair/pairing.hpp"

namespace nomapair {

// log2(1 + x) without cancellation for small x.
double log2_1p(double x);

// One-step SIC sum rate of a pair received at SNRs ga, gb.
double sic_pair_sum_rate(double ga, double gb);

// (stronger, weaker) rates when the stronger user is decoded first against
// the weaker's interference. Requires g_strong >= g_weak >= 0.
std::pair<double, double> sic_individual_rates(double g_strong, double g_weak);

struct RateBounds {
  double lower = 0.0;  // sum of log2(1 + 2g)/2 terms
  double upper = 0.0;  // sum of log2(1 + g) terms
};

RateBounds rate_bounds(double ga, double gb);

// Uplink MIMO cell: channel is bs_antennas x num_users, tx_powers holds the
// per-user transmit powers (the diagonal of the power matrix).
struct MimoSystem {
  Eigen::MatrixXcd channel;
  Eigen::VectorXd tx_powers;
  double noise_variance = 1.0;

  int bs_antennas() const { return static_cast<int>(channel.rows()); }
  int num_users() const { return static_cast<int>(channel.cols()); }
  void validate() const;
};

struct PairEigenvalues {
  double lambda1 = 0.0;  // lambda1 >= lambda2 >= 0
  double lambda2 = 0.0;
};

double pair_rate_from_eigenvalues(const PairEigenvalues& eig);

struct PairRate {
  double rate = 0.0;
  PairEigenvalues eig;
};

// Rate of pair (a, b) when all other users are decoded later (treated as
// noise): eigenvalues of the 2x2 matrix
//   P^(1/2) H_ab^H (S_without_ab)^-1 H_ab P^(1/2).
PairRate pair_rate_mimo(const MimoSystem& sys, int a, int b);

// Same eigenvalues recovered from the full-system inverse covariance via a
// rank-2 downdate: with C = U^H S^-1 U (U = H_ab P^(1/2)), the pair
// eigenvalues are c_i / (1 - c_i). NumericError when I - C is singular.
PairEigenvalues pair_eigenvalues_from_downdate(const Eigen::MatrixXcd& S_inv,
                                               const Eigen::MatrixXcd& H_pair,
                                               const Eigen::Vector2d& pair_powers);
PairEigenvalues pair_eigenvalues_from_downdate(const MimoSystem& sys,
                                               const Eigen::MatrixXcd& S_inv, int a, int b);

// Receive covariance H P H^H + sigma^2 I and its inverse.
Eigen::MatrixXcd receive_covariance(const MimoSystem& sys);
Eigen::MatrixXcd receive_covariance_inverse(const MimoSystem& sys);

// All-pairs rate matrix (symmetric, zero diagonal) via one covariance
// inverse plus a rank-2 downdate per pair.
Eigen::MatrixXd pair_rate_matrix(const MimoSystem& sys);

// Per-user transmit beamforming onto the dominant singular direction of each
// user's block; collapses a multi-antenna-user cell to single effective
// columns. Beams are unit-norm with the first significant component rotated
// real positive.
struct BeamformedSystem {
  Eigen::MatrixXcd effective_channel;
  std::vector<Eigen::VectorXcd> beams;
};

BeamformedSystem beamform_reduce(const std::vector<Eigen::MatrixXcd>& per_user_channels);

// Sum of per-pair rates; sizes must agree with the pairing.
double total_rate(const PairingSet& pairing, const std::vector<double>& per_pair_rates);

}  // namespace nomapair
