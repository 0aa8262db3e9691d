#pragma once

#include <vector>

namespace nomapair {

struct WeightedEdge {
  int u = 0;
  int v = 0;
  double weight = 0.0;
};

// Maximum-weight matching on a general graph (primal-dual blossom method,
// O(V^3)). Returns mate[v] = matched partner or -1. With max_cardinality set,
// maximizes weight among maximum-cardinality matchings; on a complete graph
// with an even vertex count that is the maximum-weight perfect matching.
std::vector<int> max_weight_matching(int num_vertices, const std::vector<WeightedEdge>& edges,
                                     bool max_cardinality);

}  // namespace nomapair
