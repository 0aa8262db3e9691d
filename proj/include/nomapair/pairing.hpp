#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "nomapair/rng.hpp"

namespace nomapair {

// A perfect partition of users {0..2M-1} into M unordered pairs. Each pair is
// stored (lo, hi) with lo < hi and pairs are sorted by lo. subcarrier_map[i]
// is the subcarrier carrying pairs[i]; empty when the pairing is
// subcarrier-agnostic, otherwise a bijection onto {0..M-1}.
struct PairingSet {
  std::vector<std::pair<int, int>> pairs;
  std::vector<int> subcarrier_map;

  int num_pairs() const { return static_cast<int>(pairs.size()); }
  int num_users() const { return 2 * num_pairs(); }
  void canonicalize();
  void validate(int num_users) const;
};

// Costs for assignment/matching solvers. `forbidden` has the same shape as
// `entries` when present; forbidden cells never appear in a solution.
struct CostMatrix {
  Eigen::MatrixXd entries;
  Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic> forbidden;

  bool has_mask() const { return forbidden.size() != 0; }
  bool is_forbidden(int r, int c) const { return has_mask() && forbidden(r, c); }
};

void write_cost_matrix_csv(const CostMatrix& m, std::ostream& out);
CostMatrix read_cost_matrix_csv(std::istream& in);

struct Assignment {
  std::vector<int> col_of_row;
  double total_cost = 0.0;
};

// Minimum-cost square assignment, O(n^3) shortest augmenting paths with
// potentials. Entries must be finite.
Assignment hungarian_min_assignment(const Eigen::MatrixXd& cost);

enum class BoundKind { First, Second };

// Per-user additive contribution of each Lemma-style bound on the pair rate:
// first bound log2(1 + 2g)/2, second bound log2(1 + g).
Eigen::MatrixXd bound_contribution_matrix(const Eigen::MatrixXd& received_gains, BoundKind bound);

// Subcarrier-selective pairing that maximizes the summed bound contributions:
// regret matrix relative to per-column maxima, duplicated into a
// 2M x 2M assignment, columns j and j+M merged back onto subcarrier j.
PairingSet sams_pair_from_contributions(const Eigen::MatrixXd& contributions);
PairingSet sams_pair_by_bound(const Eigen::MatrixXd& received_gains, BoundKind bound);

// Sorted pairing for flat fading: rank 1 with rank 2M, 2 with 2M-1, ...
PairingSet flat_sorted_pairing(const std::vector<double>& received_gains);

// Uniformly random perfect partition (shuffle, then consecutive pairs).
PairingSet random_pairing(int num_users, RngStream& rng);

// Maximum-total-entry perfect pairing over a symmetric cost matrix
// (blossom matching). Entries must be symmetric within 1e-9; diagonal must be
// masked forbidden; dimension must be even.
PairingSet mbass_optimal_pairing(const CostMatrix& costs);

// Comparison heuristic: runs the assignment solver on the same symmetric
// costs and repairs its cycle structure into a pairing. Not optimal in
// general; exposed so the gap to the matcher can be measured.
PairingSet mbass_hungarian_pairing(const CostMatrix& costs);

// Greedy per-subcarrier selection of the two best remaining users.
// Ties break toward the lower user index.
PairingSet greedy_two_best(const Eigen::MatrixXd& received_gains);

// Sum over subcarriers of log2(1 + top1 + top2) over the column's gains,
// ignoring the one-pair-per-user constraint. Upper-bounds every pairing's
// one-step SIC total.
double two_best_upper_bound(const Eigen::MatrixXd& received_gains);

enum class PairingObjective { SumRate, MaxMin };

struct BruteForceResult {
  PairingSet best;
  double value = 0.0;
  std::uint64_t candidates = 0;
};

// rate(a, b, subcarrier) for a < b.
using PairRateFn = std::function<double(int, int, int)>;

// Exhaustive search over all perfect partitions (times all subcarrier
// assignments when subcarrier_dependent). Guard: num_users <= 12.
BruteForceResult brute_force_pairing(const PairRateFn& rate, int num_users, int num_subcarriers,
                                     bool subcarrier_dependent,
                                     PairingObjective objective = PairingObjective::SumRate);

}  // namespace nomapair
