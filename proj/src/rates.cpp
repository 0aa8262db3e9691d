#include "nomapair/rates.hpp"

#include <Eigen/Cholesky>
#include <Eigen/SVD>
#include <cmath>
#include <numeric>

#include "nomapair/errors.hpp"

namespace nomapair {

namespace {

constexpr double kLn2 = 0.69314718055994530941723212145818;

void check_snr(double g, const char* name) {
  if (!std::isfinite(g) || g < 0.0)
    throw ArgumentError(std::string(name) + ": SNR must be finite and >= 0");
}

// Eigenvalues of a Hermitian 2x2 [[a, b], [conj(b), d]], descending.
std::pair<double, double> hermitian2_eigenvalues(double a, std::complex<double> b, double d) {
  const double mean = 0.5 * (a + d);
  const double disc = std::hypot(0.5 * (a - d), std::abs(b));
  return {mean + disc, mean - disc};
}

double clamp_psd_eigenvalue(double lambda, const char* what) {
  if (lambda < -1e-12)
    throw NumericError(std::string(what) + ": eigenvalue " + std::to_string(lambda) +
                       " below PSD tolerance");
  return lambda < 0.0 ? 0.0 : lambda;
}

}  // namespace

double log2_1p(double x) { return std::log1p(x) / kLn2; }

double sic_pair_sum_rate(double ga, double gb) {
  check_snr(ga, "sic_pair_sum_rate");
  check_snr(gb, "sic_pair_sum_rate");
  return log2_1p(ga + gb);
}

std::pair<double, double> sic_individual_rates(double g_strong, double g_weak) {
  check_snr(g_strong, "sic_individual_rates");
  check_snr(g_weak, "sic_individual_rates");
  if (g_strong < g_weak)
    throw ArgumentError("sic_individual_rates: expects g_strong >= g_weak");
  const double r_strong = log2_1p(g_strong / (1.0 + g_weak));
  const double r_weak = log2_1p(g_weak);
  return {r_strong, r_weak};
}

RateBounds rate_bounds(double ga, double gb) {
  check_snr(ga, "rate_bounds");
  check_snr(gb, "rate_bounds");
  RateBounds b;
  b.lower = 0.5 * log2_1p(2.0 * ga) + 0.5 * log2_1p(2.0 * gb);
  b.upper = log2_1p(ga) + log2_1p(gb);
  return b;
}

void MimoSystem::validate() const {
  if (channel.rows() < 1 || channel.cols() < 1)
    throw ArgumentError("MimoSystem: channel must be non-empty");
  if (tx_powers.size() != channel.cols())
    throw ArgumentError("MimoSystem: tx_powers size must equal the user count");
  if (!(noise_variance > 0.0)) throw ArgumentError("MimoSystem: noise_variance must be > 0");
  if (!channel.allFinite()) throw ArgumentError("MimoSystem: channel has non-finite entries");
  for (Eigen::Index k = 0; k < tx_powers.size(); ++k)
    if (!(tx_powers[k] > 0.0) || !std::isfinite(tx_powers[k]))
      throw ArgumentError("MimoSystem: tx_powers must be positive and finite");
}

double pair_rate_from_eigenvalues(const PairEigenvalues& eig) {
  return log2_1p(eig.lambda1) + log2_1p(eig.lambda2);
}

namespace {

void check_pair_indices(const MimoSystem& sys, int a, int b, const char* what) {
  const int k = sys.num_users();
  if (a < 0 || a >= k || b < 0 || b >= k)
    throw ArgumentError(std::string(what) + ": user index out of range");
  if (a == b) throw ArgumentError(std::string(what) + ": pair indices must differ");
}

PairEigenvalues eigenvalues_of_quadratic_form(const Eigen::Matrix2cd& m, const char* what) {
  auto [l1, l2] = hermitian2_eigenvalues(m(0, 0).real(), m(0, 1), m(1, 1).real());
  PairEigenvalues eig;
  eig.lambda1 = clamp_psd_eigenvalue(l1, what);
  eig.lambda2 = clamp_psd_eigenvalue(l2, what);
  return eig;
}

}  // namespace

PairRate pair_rate_mimo(const MimoSystem& sys, int a, int b) {
  sys.validate();
  check_pair_indices(sys, a, b, "pair_rate_mimo");
  const int n = sys.bs_antennas();
  Eigen::MatrixXcd s_rest = sys.noise_variance * Eigen::MatrixXcd::Identity(n, n);
  for (int k = 0; k < sys.num_users(); ++k) {
    if (k == a || k == b) continue;
    s_rest.noalias() += sys.tx_powers[k] * sys.channel.col(k) * sys.channel.col(k).adjoint();
  }
  Eigen::MatrixXcd u(n, 2);
  u.col(0) = std::sqrt(sys.tx_powers[a]) * sys.channel.col(a);
  u.col(1) = std::sqrt(sys.tx_powers[b]) * sys.channel.col(b);
  Eigen::LLT<Eigen::MatrixXcd> llt(s_rest);
  if (llt.info() != Eigen::Success)
    throw NumericError("pair_rate_mimo: interference covariance not positive definite");
  const Eigen::Matrix2cd d = u.adjoint() * llt.solve(u);
  PairRate out;
  out.eig = eigenvalues_of_quadratic_form(d, "pair_rate_mimo");
  out.rate = pair_rate_from_eigenvalues(out.eig);
  return out;
}

PairEigenvalues pair_eigenvalues_from_downdate(const Eigen::MatrixXcd& S_inv,
                                               const Eigen::MatrixXcd& H_pair,
                                               const Eigen::Vector2d& pair_powers) {
  if (H_pair.cols() != 2) throw ArgumentError("pair_eigenvalues_from_downdate: H_pair must have 2 columns");
  if (S_inv.rows() != S_inv.cols() || S_inv.rows() != H_pair.rows())
    throw ArgumentError("pair_eigenvalues_from_downdate: dimension mismatch");
  if (!(pair_powers[0] > 0.0) || !(pair_powers[1] > 0.0))
    throw ArgumentError("pair_eigenvalues_from_downdate: powers must be positive");
  Eigen::MatrixXcd u(H_pair.rows(), 2);
  u.col(0) = std::sqrt(pair_powers[0]) * H_pair.col(0);
  u.col(1) = std::sqrt(pair_powers[1]) * H_pair.col(1);
  const Eigen::Matrix2cd c = u.adjoint() * S_inv * u;
  const PairEigenvalues cs = eigenvalues_of_quadratic_form(c, "pair_eigenvalues_from_downdate");
  // Undo the pair's own contribution: eigenvalues of C(I-C)^-1. The map
  // c -> c/(1-c) is increasing on [0, 1), so the ordering survives.
  auto downdated = [](double ci) {
    const double rem = 1.0 - ci;
    if (rem <= 1e-14)
      throw NumericError("pair_eigenvalues_from_downdate: I - C singular, downdate ill-conditioned");
    return ci / rem;
  };
  PairEigenvalues out;
  out.lambda1 = downdated(cs.lambda1);
  out.lambda2 = downdated(cs.lambda2);
  return out;
}

PairEigenvalues pair_eigenvalues_from_downdate(const MimoSystem& sys,
                                               const Eigen::MatrixXcd& S_inv, int a, int b) {
  check_pair_indices(sys, a, b, "pair_eigenvalues_from_downdate");
  Eigen::MatrixXcd h_pair(sys.bs_antennas(), 2);
  h_pair.col(0) = sys.channel.col(a);
  h_pair.col(1) = sys.channel.col(b);
  return pair_eigenvalues_from_downdate(S_inv, h_pair,
                                        Eigen::Vector2d(sys.tx_powers[a], sys.tx_powers[b]));
}

Eigen::MatrixXcd receive_covariance(const MimoSystem& sys) {
  sys.validate();
  const int n = sys.bs_antennas();
  Eigen::MatrixXcd s = sys.channel * sys.tx_powers.asDiagonal() * sys.channel.adjoint() +
                       sys.noise_variance * Eigen::MatrixXcd::Identity(n, n);
  return 0.5 * (s + s.adjoint().eval());
}

Eigen::MatrixXcd receive_covariance_inverse(const MimoSystem& sys) {
  const Eigen::MatrixXcd s = receive_covariance(sys);
  Eigen::LLT<Eigen::MatrixXcd> llt(s);
  if (llt.info() != Eigen::Success)
    throw NumericError("receive_covariance_inverse: covariance not positive definite");
  return llt.solve(Eigen::MatrixXcd::Identity(s.rows(), s.cols()));
}

Eigen::MatrixXd pair_rate_matrix(const MimoSystem& sys) {
  sys.validate();
  const int k = sys.num_users();
  if (k < 2) throw ArgumentError("pair_rate_matrix: need at least two users");
  const Eigen::MatrixXcd s_inv = receive_covariance_inverse(sys);
  Eigen::MatrixXd rates = Eigen::MatrixXd::Zero(k, k);
  for (int a = 0; a < k; ++a) {
    for (int b = a + 1; b < k; ++b) {
      const double r = pair_rate_from_eigenvalues(pair_eigenvalues_from_downdate(sys, s_inv, a, b));
      rates(a, b) = r;
      rates(b, a) = r;
    }
  }
  return rates;
}

BeamformedSystem beamform_reduce(const std::vector<Eigen::MatrixXcd>& per_user_channels) {
  if (per_user_channels.empty()) throw ArgumentError("beamform_reduce: no user blocks");
  const Eigen::Index n = per_user_channels.front().rows();
  BeamformedSystem out;
  out.effective_channel.resize(n, static_cast<Eigen::Index>(per_user_channels.size()));
  out.beams.reserve(per_user_channels.size());
  for (std::size_t k = 0; k < per_user_channels.size(); ++k) {
    const Eigen::MatrixXcd& g = per_user_channels[k];
    if (g.rows() != n) throw ArgumentError("beamform_reduce: inconsistent antenna counts");
    if (g.cols() < 1) throw ArgumentError("beamform_reduce: empty user block");
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(g, Eigen::ComputeThinV);
    Eigen::VectorXcd w = svd.matrixV().col(0);
    // Deterministic phase: first significant component rotated real positive.
    for (Eigen::Index i = 0; i < w.size(); ++i) {
      const double mag = std::abs(w[i]);
      if (mag > 1e-12) {
        w *= std::conj(w[i]) / mag;
        break;
      }
    }
    out.effective_channel.col(static_cast<Eigen::Index>(k)) = g * w;
    out.beams.push_back(std::move(w));
  }
  return out;
}

double total_rate(const PairingSet& pairing, const std::vector<double>& per_pair_rates) {
  if (static_cast<int>(per_pair_rates.size()) != pairing.num_pairs())
    throw ArgumentError("total_rate: rate count does not match the pairing");
  return std::accumulate(per_pair_rates.begin(), per_pair_rates.end(), 0.0);
}

}  // namespace nomapair
