#pragma once

#include <utility>
#include <vector>

namespace nomapair {

// Distribution of the instantaneous received SNR when the per-user average SNR
// follows one of three laws and the fading on top of it is unit Rayleigh:
//   PointMass  every user at the same average SNR (equal received power)
//   Empirical  average SNRs given as a finite sample set
//   DiscEp     equal transmit power, users uniform on a disc annulus model
// cdf/survival are continuous and strictly increasing on [0, inf).
class SnrDistribution {
 public:
  enum class Kind { PointMass, Empirical, DiscEp };

  static SnrDistribution point_mass(double avg_snr);
  static SnrDistribution empirical(std::vector<double> avg_snrs);
  static SnrDistribution disc_ep(double disc_radius, double r0, double tx_power,
                                 double noise_variance);

  Kind kind() const { return kind_; }

  double cdf(double z) const;       // z < 0 rejected
  double survival(double z) const;  // evaluated directly, no 1-cdf cancellation
  double density(double z) const;
  double quantile(double t) const;        // t in [0, 1)
  double upper_quantile(double s) const;  // z with survival(z) = s, s in (0, 1]

 private:
  SnrDistribution() = default;

  double scale_hint() const;  // bracket seed for the quantile searches

  Kind kind_ = Kind::PointMass;
  double avg_snr_ = 1.0;            // PointMass
  std::vector<double> samples_;     // Empirical
  double beta_a_ = 0.0;             // DiscEp: noise_variance * r0^2 / tx_power
  double beta_h_ = 0.0;             // DiscEp: noise_variance * disc_radius^2 / tx_power
};

// Per-user rate limits for flat fading and many users.
double flat_optimal_avg_rate(const SnrDistribution& dist, double rel_tol = 1e-6);
double flat_random_avg_rate(const SnrDistribution& dist, double rel_tol = 1e-5);

// Scaling-law reference curves for the subcarrier-selective sum rate.
// first = M * log2(ln M), second = M * log2(1 + 2 c ln M); M >= 2.
std::pair<double, double> theorem1_normalizers(long M, double c);

// sum_{m=1..M} log2(1 + 2 c ln m) / (M log2(1 + 2 c ln M)); equals 1/2 at M = 2.
double stirling_ratio(long M, double c);

// Large-system limit of the per-pair detection eigenvalues when K = alpha * N
// users at common received SNR gamma are decoded pairwise against Gaussian
// interference, and the matching Stieltjes transform it comes from.
double mbass_limit_eigenvalue(double alpha, double gamma);
double stieltjes_G(double w, double alpha);  // w < 0
double mbass_limit_rate_per_user(double alpha, double gamma);

// Full-interference-cancellation benchmark: 0.5 * log2(1 + 2 gamma).
double ergodic_capacity_per_user(double avg_snr);

}  // namespace nomapair
