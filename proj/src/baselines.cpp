#include "nomapair/baselines.hpp"

#include <cmath>
#include <sstream>

#include "nomapair/errors.hpp"

namespace nomapair {

namespace {

double slot_power(double rate, double gain, double fraction) {
  if (!(rate >= 0.0) || !std::isfinite(rate)) throw ArgumentError("target rate must be >= 0");
  if (!(gain >= 0.0) || !std::isfinite(gain)) throw ArgumentError("gain must be >= 0");
  if (rate == 0.0) return 0.0;
  if (gain == 0.0) throw NumericError("infeasible: positive rate target on a zero gain");
  return std::expm1(rate / fraction * std::log(2.0)) / gain;
}

double average_power(const std::vector<double>& rates, const std::vector<double>& gains,
                     double zeta) {
  return zeta * slot_power(rates[0], gains[0], zeta) +
         (1.0 - zeta) * slot_power(rates[1], gains[1], 1.0 - zeta);
}

}  // namespace

TdmaAllocation tdma_required_power(const std::vector<double>& target_rates,
                                   const std::vector<double>& gains,
                                   const std::vector<double>& fractions) {
  const size_t n = target_rates.size();
  if (n == 0) throw ArgumentError("tdma_required_power: empty allocation");
  if (gains.size() != n || fractions.size() != n) {
    throw ArgumentError("tdma_required_power: rates, gains, fractions must have equal length");
  }
  double sum = 0.0;
  for (double z : fractions) {
    if (!(z > 0.0) || !std::isfinite(z)) throw ArgumentError("time fractions must be positive");
    sum += z;
  }
  if (std::abs(sum - 1.0) > 1e-9) {
    std::ostringstream os;
    os << "time fractions must sum to 1, got " << sum;
    throw ArgumentError(os.str());
  }

  TdmaAllocation out;
  out.fractions = fractions;
  out.slot_powers.resize(n);
  for (size_t k = 0; k < n; ++k) {
    out.slot_powers[k] = slot_power(target_rates[k], gains[k], fractions[k]);
    out.total_average_power += fractions[k] * out.slot_powers[k];
  }
  return out;
}

TdmaAllocation tdma_optimize_fractions(const std::vector<double>& target_rates,
                                       const std::vector<double>& gains) {
  if (target_rates.size() != 2 || gains.size() != 2) {
    throw ArgumentError("tdma_optimize_fractions handles exactly two users");
  }
  const double lo_edge = 1e-9;
  const double hi_edge = 1.0 - 1e-9;
  // objective is convex in zeta; golden-section to |interval| < 1e-9
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo_edge;
  double b = hi_edge;
  double x1 = b - inv_phi * (b - a);
  double x2 = a + inv_phi * (b - a);
  double f1 = average_power(target_rates, gains, x1);
  double f2 = average_power(target_rates, gains, x2);
  while (b - a > 1e-9) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = average_power(target_rates, gains, x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = average_power(target_rates, gains, x2);
    }
  }
  double zeta = 0.5 * (a + b);
  // keep the advertised guarantee exact even at the tolerance floor
  if (average_power(target_rates, gains, 0.5) < average_power(target_rates, gains, zeta)) {
    zeta = 0.5;
  }
  return tdma_required_power(target_rates, gains, {zeta, 1.0 - zeta});
}

double jain_index(const std::vector<double>& values) {
  if (values.empty()) throw ArgumentError("jain_index: empty allocation");
  double sum = 0.0;
  double sum_sq = 0.0;
  for (double v : values) {
    if (!(v >= 0.0) || !std::isfinite(v)) throw ArgumentError("jain_index needs values >= 0");
    sum += v;
    sum_sq += v * v;
  }
  if (sum_sq == 0.0) throw NumericError("jain_index undefined for an all-zero allocation");
  return sum * sum / (static_cast<double>(values.size()) * sum_sq);
}

}  // namespace nomapair
