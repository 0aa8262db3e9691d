#include <limits>
#include <vector>

#include "nomapair/errors.hpp"
#include "nomapair/pairing.hpp"

namespace nomapair {

Assignment hungarian_min_assignment(const Eigen::MatrixXd& cost) {
  if (cost.rows() == 0 || cost.rows() != cost.cols())
    throw ArgumentError("hungarian_min_assignment: cost matrix must be square and non-empty");
  if (!cost.allFinite())
    throw ArgumentError("hungarian_min_assignment: cost matrix must be finite");

  const int n = static_cast<int>(cost.rows());
  const double inf = std::numeric_limits<double>::infinity();
  // 1-based with column 0 as the virtual start; p[j] = row matched to column j.
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<int> p(n + 1, 0), way(n + 1, 0);
  for (int i = 1; i <= n; ++i) {
    p[0] = i;
    int j0 = 0;
    std::vector<double> minv(n + 1, inf);
    std::vector<char> used(n + 1, 0);
    do {
      used[j0] = 1;
      const int i0 = p[j0];
      int j1 = -1;
      double delta = inf;
      for (int j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = cost(i0 - 1, j - 1) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const int j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0);
  }

  Assignment out;
  out.col_of_row.assign(n, -1);
  for (int j = 1; j <= n; ++j) out.col_of_row[p[j] - 1] = j - 1;
  for (int i = 0; i < n; ++i) out.total_cost += cost(i, out.col_of_row[i]);
  return out;
}

}  // namespace nomapair
