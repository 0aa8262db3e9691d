#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "doctest.h"
#include "nomapair/matching.hpp"
#include "nomapair/rng.hpp"

using namespace nomapair;

namespace {

// Best perfect matching weight by exhausting all pairings of [0, n).
double brute_best_perfect(int n, const std::vector<std::vector<double>>& w) {
  std::vector<int> verts(n);
  std::iota(verts.begin(), verts.end(), 0);
  double best = -1e300;
  // pair the lowest unpaired vertex with each candidate, recurse
  struct Rec {
    const std::vector<std::vector<double>>& w;
    double best = -1e300;
    void go(std::vector<int>& rest, double acc) {
      if (rest.empty()) {
        best = std::max(best, acc);
        return;
      }
      const int a = rest.front();
      for (size_t i = 1; i < rest.size(); ++i) {
        const int b = rest[i];
        std::vector<int> next;
        for (size_t j = 1; j < rest.size(); ++j) {
          if (j != i) next.push_back(rest[j]);
        }
        go(next, acc + w[a][b]);
      }
    }
  } rec{w};
  rec.go(verts, 0.0);
  return rec.best;
}

double matching_weight(const std::vector<int>& mate, const std::vector<std::vector<double>>& w) {
  double total = 0.0;
  for (int v = 0; v < static_cast<int>(mate.size()); ++v) {
    if (mate[v] > v) total += w[v][mate[v]];
  }
  return total;
}

}  // namespace

TEST_CASE("blossom matches brute force on dense graphs with signed weights") {
  RngStream rng(31, 0);
  for (int n : {4, 6, 8, 10}) {
    for (int rep = 0; rep < 25; ++rep) {
      std::vector<std::vector<double>> w(n, std::vector<double>(n, 0.0));
      std::vector<WeightedEdge> edges;
      for (int a = 0; a < n; ++a) {
        for (int b = a + 1; b < n; ++b) {
          // alternate between small-integer and continuous weights
          const double x = (rep % 2 == 0)
                               ? static_cast<double>(rng.uniform_below(21)) - 10.0
                               : 20.0 * rng.uniform() - 10.0;
          w[a][b] = w[b][a] = x;
          edges.push_back({a, b, x});
        }
      }
      const std::vector<int> mate = max_weight_matching(n, edges, true);
      REQUIRE(static_cast<int>(mate.size()) == n);
      for (int v = 0; v < n; ++v) {
        REQUIRE(mate[v] >= 0);
        REQUIRE(mate[v] != v);
        REQUIRE(mate[mate[v]] == v);
      }
      CHECK(matching_weight(mate, w) == doctest::Approx(brute_best_perfect(n, w)).epsilon(1e-9));
    }
  }
}

TEST_CASE("without the cardinality flag an all-negative graph stays unmatched") {
  std::vector<WeightedEdge> edges{{0, 1, -5.0}, {1, 2, -1.0}, {0, 2, -2.0}, {2, 3, -4.0}};
  const std::vector<int> lazy = max_weight_matching(4, edges, false);
  CHECK(std::all_of(lazy.begin(), lazy.end(), [](int m) { return m == -1; }));

  const std::vector<int> forced = max_weight_matching(4, edges, true);
  int matched = 0;
  for (int v = 0; v < 4; ++v) {
    if (forced[v] >= 0) ++matched;
  }
  CHECK(matched == 4);
}

TEST_CASE("odd components leave exactly one vertex exposed") {
  // triangle plus an isolated path end; perfect matching impossible on 5 vertices
  std::vector<WeightedEdge> edges{{0, 1, 3.0}, {1, 2, 2.0}, {0, 2, 1.0}, {2, 3, 5.0}, {3, 4, 1.0}};
  const std::vector<int> mate = max_weight_matching(5, edges, true);
  int exposed = 0;
  for (int v = 0; v < 5; ++v) {
    if (mate[v] < 0) {
      ++exposed;
    } else {
      CHECK(mate[mate[v]] == v);
    }
  }
  CHECK(exposed == 1);
}

TEST_CASE("sparse graphs with odd cycles match the edge-subset optimum") {
  RngStream rng(32, 0);
  for (int rep = 0; rep < 60; ++rep) {
    const int n = 7 + static_cast<int>(rng.uniform_below(4));
    std::vector<WeightedEdge> edges;
    for (int a = 0; a < n; ++a) {
      for (int b = a + 1; b < n; ++b) {
        if (rng.uniform() < 0.45) {
          edges.push_back({a, b, 12.0 * rng.uniform() - 3.0});
        }
      }
    }
    if (edges.size() > 18) edges.resize(18);

    // exhaustive maximum over edge subsets that form a matching
    double best = 0.0;
    const size_t m = edges.size();
    for (size_t mask = 0; mask < (size_t{1} << m); ++mask) {
      std::vector<char> used(n, 0);
      double acc = 0.0;
      bool ok = true;
      for (size_t i = 0; i < m && ok; ++i) {
        if (!(mask >> i & 1)) continue;
        if (used[edges[i].u] || used[edges[i].v]) {
          ok = false;
        } else {
          used[edges[i].u] = used[edges[i].v] = 1;
          acc += edges[i].weight;
        }
      }
      if (ok) best = std::max(best, acc);
    }

    const std::vector<int> mate = max_weight_matching(n, edges, false);
    std::vector<std::vector<double>> w(n, std::vector<double>(n, 0.0));
    for (const auto& e : edges) w[e.u][e.v] = w[e.v][e.u] = e.weight;
    CHECK(matching_weight(mate, w) == doctest::Approx(best).epsilon(1e-9));
  }
}
