#pragma once

#include <vector>

namespace nomapair {

struct TdmaAllocation {
  std::vector<double> fractions;    // time share per user, sums to 1
  std::vector<double> slot_powers;  // transmit power while the user's slot is live
  double total_average_power = 0.0;
};

// Power needed to hit per-user target rates over orthogonal time slots on one
// subcarrier. gains are per-unit-power received SNRs; a zero gain with a
// positive rate target is infeasible.
TdmaAllocation tdma_required_power(const std::vector<double>& target_rates,
                                   const std::vector<double>& gains,
                                   const std::vector<double>& fractions);

// Two-user slot split minimizing average power; never worse than the 1/2 split.
TdmaAllocation tdma_optimize_fractions(const std::vector<double>& target_rates,
                                       const std::vector<double>& gains);

// (sum x)^2 / (n sum x^2); rejects an all-zero allocation.
double jain_index(const std::vector<double>& values);

}  // namespace nomapair
