#include "nomapair/pairing.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>

#include "nomapair/errors.hpp"
#include "nomapair/matching.hpp"
#include "nomapair/rates.hpp"

namespace nomapair {

void PairingSet::canonicalize() {
  for (auto& [a, b] : pairs)
    if (a > b) std::swap(a, b);
  if (subcarrier_map.empty()) {
    std::sort(pairs.begin(), pairs.end());
    return;
  }
  std::vector<int> order(pairs.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int x, int y) { return pairs[x] < pairs[y]; });
  std::vector<std::pair<int, int>> new_pairs(pairs.size());
  std::vector<int> new_map(pairs.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    new_pairs[i] = pairs[order[i]];
    new_map[i] = subcarrier_map[order[i]];
  }
  pairs = std::move(new_pairs);
  subcarrier_map = std::move(new_map);
}

void PairingSet::validate(int expected_users) const {
  if (expected_users < 2 || expected_users % 2 != 0)
    throw ArgumentError("PairingSet: user count must be even and >= 2");
  if (static_cast<int>(pairs.size()) * 2 != expected_users)
    throw ArgumentError("PairingSet: wrong number of pairs for " +
                        std::to_string(expected_users) + " users");
  std::vector<char> seen(expected_users, 0);
  int prev_lo = -1;
  for (const auto& [a, b] : pairs) {
    if (a < 0 || b < 0 || a >= expected_users || b >= expected_users)
      throw ArgumentError("PairingSet: user index out of range");
    if (a >= b) throw ArgumentError("PairingSet: pairs must be stored (lo, hi)");
    if (a < prev_lo) throw ArgumentError("PairingSet: pairs must be sorted by first member");
    prev_lo = a;
    if (seen[a] || seen[b]) throw ArgumentError("PairingSet: user appears in two pairs");
    seen[a] = seen[b] = 1;
  }
  if (!subcarrier_map.empty()) {
    if (subcarrier_map.size() != pairs.size())
      throw ArgumentError("PairingSet: subcarrier_map size mismatch");
    const int m = num_pairs();
    std::vector<char> used(m, 0);
    for (int sc : subcarrier_map) {
      if (sc < 0 || sc >= m) throw ArgumentError("PairingSet: subcarrier index out of range");
      if (used[sc]) throw ArgumentError("PairingSet: subcarrier used twice");
      used[sc] = 1;
    }
  }
}

void write_cost_matrix_csv(const CostMatrix& m, std::ostream& out) {
  out << m.entries.rows() << "," << m.entries.cols() << "\n";
  char buf[48];
  for (Eigen::Index r = 0; r < m.entries.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.entries.cols(); ++c) {
      std::snprintf(buf, sizeof buf, "%.17g", m.entries(r, c));
      out << (c ? "," : "") << buf;
    }
    out << "\n";
  }
}

CostMatrix read_cost_matrix_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw IoError("cost matrix CSV: missing dimension line");
  long rows = 0, cols = 0;
  {
    std::istringstream head(line);
    char comma = 0;
    if (!(head >> rows >> comma >> cols) || comma != ',' || rows <= 0 || cols <= 0)
      throw IoError("cost matrix CSV: bad dimension line '" + line + "'");
  }
  CostMatrix m;
  m.entries.resize(rows, cols);
  for (long r = 0; r < rows; ++r) {
    if (!std::getline(in, line)) throw IoError("cost matrix CSV: truncated at row " + std::to_string(r));
    std::istringstream row(line);
    std::string cell;
    for (long c = 0; c < cols; ++c) {
      if (!std::getline(row, cell, ','))
        throw IoError("cost matrix CSV: row " + std::to_string(r) + " has too few columns");
      try {
        m.entries(r, c) = std::stod(cell);
      } catch (const std::exception&) {
        throw IoError("cost matrix CSV: bad number '" + cell + "'");
      }
    }
  }
  return m;
}

Eigen::MatrixXd bound_contribution_matrix(const Eigen::MatrixXd& received_gains, BoundKind bound) {
  if (!received_gains.allFinite() || (received_gains.array() < 0.0).any())
    throw ArgumentError("bound_contribution_matrix: gains must be finite and >= 0");
  if (bound == BoundKind::First)
    return received_gains.unaryExpr([](double g) { return 0.5 * log2_1p(2.0 * g); });
  return received_gains.unaryExpr([](double g) { return log2_1p(g); });
}

PairingSet sams_pair_from_contributions(const Eigen::MatrixXd& contributions) {
  const int m = static_cast<int>(contributions.cols());
  const int users = static_cast<int>(contributions.rows());
  if (m < 1 || users != 2 * m)
    throw ArgumentError("sams_pair_from_contributions: need a 2M x M matrix");
  if (!contributions.allFinite())
    throw ArgumentError("sams_pair_from_contributions: contributions must be finite");

  // Regret relative to the per-subcarrier best, duplicated so each subcarrier
  // offers two seats; minimizing total regret maximizes total contribution.
  Eigen::MatrixXd z(users, 2 * m);
  for (int col = 0; col < m; ++col) {
    const double colmax = contributions.col(col).maxCoeff();
    for (int row = 0; row < users; ++row) {
      const double regret = colmax - contributions(row, col);
      z(row, col) = regret;
      z(row, col + m) = regret;
    }
  }
  const Assignment assign = hungarian_min_assignment(z);

  PairingSet out;
  std::vector<std::vector<int>> seat(m);
  for (int user = 0; user < users; ++user) seat[assign.col_of_row[user] % m].push_back(user);
  out.pairs.reserve(m);
  out.subcarrier_map.reserve(m);
  for (int sc = 0; sc < m; ++sc) {
    // Both seats of a subcarrier are always filled: columns sc and sc+m.
    out.pairs.emplace_back(seat[sc][0], seat[sc][1]);
    out.subcarrier_map.push_back(sc);
  }
  out.canonicalize();
  return out;
}

PairingSet sams_pair_by_bound(const Eigen::MatrixXd& received_gains, BoundKind bound) {
  return sams_pair_from_contributions(bound_contribution_matrix(received_gains, bound));
}

PairingSet flat_sorted_pairing(const std::vector<double>& received_gains) {
  const int n = static_cast<int>(received_gains.size());
  if (n < 2 || n % 2 != 0)
    throw ArgumentError("flat_sorted_pairing: need an even number of users");
  for (double g : received_gains)
    if (!std::isfinite(g) || g < 0.0)
      throw ArgumentError("flat_sorted_pairing: gains must be finite and >= 0");
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  // Descending by gain; ties keep the lower user index first.
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return received_gains[a] > received_gains[b]; });
  PairingSet out;
  out.pairs.reserve(n / 2);
  for (int k = 0; k < n / 2; ++k) out.pairs.emplace_back(order[k], order[n - 1 - k]);
  out.canonicalize();
  return out;
}

PairingSet random_pairing(int num_users, RngStream& rng) {
  if (num_users < 2 || num_users % 2 != 0)
    throw ArgumentError("random_pairing: need an even number of users");
  std::vector<int> perm(num_users);
  std::iota(perm.begin(), perm.end(), 0);
  for (int i = num_users - 1; i > 0; --i) {
    const int j = static_cast<int>(rng.uniform_below(static_cast<std::uint64_t>(i) + 1));
    std::swap(perm[i], perm[j]);
  }
  PairingSet out;
  out.pairs.reserve(num_users / 2);
  for (int k = 0; k < num_users; k += 2) out.pairs.emplace_back(perm[k], perm[k + 1]);
  out.canonicalize();
  return out;
}

namespace {

void check_mbass_costs(const CostMatrix& costs) {
  const Eigen::Index n = costs.entries.rows();
  if (n < 2 || costs.entries.cols() != n)
    throw ArgumentError("mbass pairing: cost matrix must be square with n >= 2");
  if (n % 2 != 0) throw ArgumentError("mbass pairing: user count must be even");
  if (!costs.has_mask() || costs.forbidden.rows() != n || costs.forbidden.cols() != n)
    throw ArgumentError("mbass pairing: forbidden mask must match the cost matrix");
  for (Eigen::Index i = 0; i < n; ++i) {
    if (!costs.forbidden(i, i))
      throw ArgumentError("mbass pairing: diagonal cells must be forbidden");
    for (Eigen::Index j = 0; j < n; ++j) {
      if (costs.forbidden(i, j)) continue;
      if (!std::isfinite(costs.entries(i, j)))
        throw ArgumentError("mbass pairing: allowed cells must be finite");
      if (!costs.forbidden(j, i) && std::abs(costs.entries(i, j) - costs.entries(j, i)) > 1e-9)
        throw ArgumentError("mbass pairing: cost matrix must be symmetric within 1e-9");
    }
  }
}

PairingSet pairing_from_mate(const std::vector<int>& mate) {
  PairingSet out;
  for (int v = 0; v < static_cast<int>(mate.size()); ++v) {
    if (mate[v] < 0) throw ArgumentError("mbass pairing: forbidden cells leave no perfect pairing");
    if (v < mate[v]) out.pairs.emplace_back(v, mate[v]);
  }
  out.canonicalize();
  return out;
}

}  // namespace

PairingSet mbass_optimal_pairing(const CostMatrix& costs) {
  check_mbass_costs(costs);
  const int n = static_cast<int>(costs.entries.rows());
  std::vector<WeightedEdge> edges;
  edges.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (!costs.is_forbidden(i, j)) edges.push_back({i, j, costs.entries(i, j)});
  return pairing_from_mate(max_weight_matching(n, edges, true));
}

PairingSet mbass_hungarian_pairing(const CostMatrix& costs) {
  check_mbass_costs(costs);
  const int n = static_cast<int>(costs.entries.rows());
  double lo = 0.0, hi = 0.0;
  bool first = true;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (costs.is_forbidden(i, j)) continue;
      const double v = -costs.entries(i, j);
      lo = first ? v : std::min(lo, v);
      hi = first ? v : std::max(hi, v);
      first = false;
    }
  }
  // Finite deterrent for forbidden cells; any solution containing one would
  // cost more than every mask-free solution.
  const double sentinel = hi + n * (hi - lo) + 1.0;
  Eigen::MatrixXd z(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      z(i, j) = costs.is_forbidden(i, j) ? sentinel : -costs.entries(i, j);
  const Assignment assign = hungarian_min_assignment(z);

  // The permutation is not an involution in general: decompose into cycles,
  // pair along each cycle, then mop up the odd leftovers.
  PairingSet out;
  std::vector<char> used(n, 0);
  std::vector<int> leftovers;
  for (int start = 0; start < n; ++start) {
    if (used[start]) continue;
    std::vector<int> cycle;
    int v = start;
    while (!used[v]) {
      used[v] = 1;
      cycle.push_back(v);
      v = assign.col_of_row[v];
    }
    for (std::size_t i = 0; i + 1 < cycle.size(); i += 2)
      out.pairs.emplace_back(cycle[i], cycle[i + 1]);
    if (cycle.size() % 2 != 0) leftovers.push_back(cycle.back());
  }
  for (std::size_t i = 0; i + 1 < leftovers.size(); i += 2)
    out.pairs.emplace_back(leftovers[i], leftovers[i + 1]);
  out.canonicalize();
  return out;
}

PairingSet greedy_two_best(const Eigen::MatrixXd& received_gains) {
  const int m = static_cast<int>(received_gains.cols());
  const int users = static_cast<int>(received_gains.rows());
  if (m < 1 || users != 2 * m) throw ArgumentError("greedy_two_best: need a 2M x M matrix");
  if (!received_gains.allFinite())
    throw ArgumentError("greedy_two_best: gains must be finite");
  std::vector<char> taken(users, 0);
  PairingSet out;
  for (int sc = 0; sc < m; ++sc) {
    int best = -1, second = -1;
    for (int u = 0; u < users; ++u) {
      if (taken[u]) continue;
      if (best == -1 || received_gains(u, sc) > received_gains(best, sc)) {
        second = best;
        best = u;
      } else if (second == -1 || received_gains(u, sc) > received_gains(second, sc)) {
        second = u;
      }
    }
    taken[best] = taken[second] = 1;
    out.pairs.emplace_back(best, second);
    out.subcarrier_map.push_back(sc);
  }
  out.canonicalize();
  return out;
}

double two_best_upper_bound(const Eigen::MatrixXd& received_gains) {
  const int m = static_cast<int>(received_gains.cols());
  const int users = static_cast<int>(received_gains.rows());
  if (m < 1 || users < 2) throw ArgumentError("two_best_upper_bound: need at least 2 users");
  if (!received_gains.allFinite() || (received_gains.array() < 0.0).any())
    throw ArgumentError("two_best_upper_bound: gains must be finite and >= 0");
  double total = 0.0;
  for (int sc = 0; sc < m; ++sc) {
    double top1 = 0.0, top2 = 0.0;
    for (int u = 0; u < users; ++u) {
      const double g = received_gains(u, sc);
      if (g > top1) {
        top2 = top1;
        top1 = g;
      } else if (g > top2) {
        top2 = g;
      }
    }
    total += log2_1p(top1 + top2);
  }
  return total;
}

namespace {

struct BruteForceState {
  const PairRateFn* rate;
  int num_users = 0;
  bool subcarrier_dependent = false;
  PairingObjective objective = PairingObjective::SumRate;
  std::vector<std::pair<int, int>> current;
  std::vector<std::pair<int, int>> best_pairs;
  std::vector<int> best_slots;
  double best_value = 0.0;
  bool have_best = false;
  std::uint64_t candidates = 0;
};

double score_assignment(const BruteForceState& st, const std::vector<int>& slots) {
  double sum = 0.0;
  double worst = 0.0;
  bool first = true;
  for (std::size_t i = 0; i < st.current.size(); ++i) {
    const double r = (*st.rate)(st.current[i].first, st.current[i].second, slots[i]);
    sum += r;
    worst = first ? r : std::min(worst, r);
    first = false;
  }
  return st.objective == PairingObjective::SumRate ? sum : worst;
}

void evaluate_partition(BruteForceState& st) {
  const int m = static_cast<int>(st.current.size());
  std::vector<int> slots(m);
  std::iota(slots.begin(), slots.end(), 0);
  if (!st.subcarrier_dependent) {
    ++st.candidates;
    const double v = score_assignment(st, slots);
    if (!st.have_best || v > st.best_value) {
      st.have_best = true;
      st.best_value = v;
      st.best_pairs = st.current;
      st.best_slots.clear();
    }
    return;
  }
  do {
    ++st.candidates;
    const double v = score_assignment(st, slots);
    if (!st.have_best || v > st.best_value) {
      st.have_best = true;
      st.best_value = v;
      st.best_pairs = st.current;
      st.best_slots = slots;
    }
  } while (std::next_permutation(slots.begin(), slots.end()));
}

void enumerate_partitions(BruteForceState& st, std::vector<int>& free) {
  if (free.empty()) {
    evaluate_partition(st);
    return;
  }
  // Anchor on the smallest free index so each partition appears exactly once.
  const int anchor = free.front();
  for (std::size_t pick = 1; pick < free.size(); ++pick) {
    const int partner = free[pick];
    std::vector<int> rest;
    rest.reserve(free.size() - 2);
    for (std::size_t i = 1; i < free.size(); ++i)
      if (i != pick) rest.push_back(free[i]);
    st.current.emplace_back(anchor, partner);
    enumerate_partitions(st, rest);
    st.current.pop_back();
  }
}

}  // namespace

BruteForceResult brute_force_pairing(const PairRateFn& rate, int num_users, int num_subcarriers,
                                     bool subcarrier_dependent, PairingObjective objective) {
  if (num_users < 2 || num_users % 2 != 0)
    throw ArgumentError("brute_force_pairing: need an even number of users");
  if (num_users > 12)
    throw ArgumentError("brute_force_pairing: refusing more than 12 users");
  if (subcarrier_dependent && num_subcarriers != num_users / 2)
    throw ArgumentError("brute_force_pairing: need one subcarrier per pair");
  if (!rate) throw ArgumentError("brute_force_pairing: empty rate function");

  BruteForceState st;
  st.rate = &rate;
  st.num_users = num_users;
  st.subcarrier_dependent = subcarrier_dependent;
  st.objective = objective;
  std::vector<int> free(num_users);
  std::iota(free.begin(), free.end(), 0);
  enumerate_partitions(st, free);

  BruteForceResult out;
  out.best.pairs = std::move(st.best_pairs);
  out.best.subcarrier_map = std::move(st.best_slots);
  out.best.canonicalize();
  out.value = st.best_value;
  out.candidates = st.candidates;
  return out;
}

}  // namespace nomapair
