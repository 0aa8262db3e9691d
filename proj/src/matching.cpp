#include "nomapair/matching.hpp"

#include <algorithm>
#include <cassert>
#include <vector>

#include "nomapair/errors.hpp"

namespace nomapair {

namespace {

// Primal-dual blossom solver. Vertices 0..n-1 double as trivial blossoms;
// ids n..2n-1 are nontrivial blossoms. Edge k owns endpoint slots 2k and
// 2k+1; p^1 flips to the opposite slot.
class BlossomMatcher {
 public:
  BlossomMatcher(int n, const std::vector<WeightedEdge>& edge_list, bool max_cardinality)
      : nvertex(n), maxcardinality(max_cardinality) {
    edges.reserve(edge_list.size());
    for (const auto& e : edge_list) {
      if (e.u < 0 || e.v < 0 || e.u >= n || e.v >= n)
        throw ArgumentError("max_weight_matching: edge endpoint out of range");
      if (e.u == e.v) throw ArgumentError("max_weight_matching: self-loops not allowed");
      edges.push_back(e);
    }
    nedge = static_cast<int>(edges.size());
    maxweight = 0.0;
    for (const auto& e : edges) maxweight = std::max(maxweight, e.weight);
    endpoint.resize(2 * nedge);
    neighbend.assign(nvertex, {});
    for (int k = 0; k < nedge; ++k) {
      endpoint[2 * k] = edges[k].u;
      endpoint[2 * k + 1] = edges[k].v;
      neighbend[edges[k].u].push_back(2 * k + 1);
      neighbend[edges[k].v].push_back(2 * k);
    }
    mate.assign(nvertex, -1);
    label.assign(2 * nvertex, 0);
    labelend.assign(2 * nvertex, -1);
    inblossom.resize(nvertex);
    for (int v = 0; v < nvertex; ++v) inblossom[v] = v;
    blossomparent.assign(2 * nvertex, -1);
    blossomchilds.assign(2 * nvertex, {});
    blossombase.assign(2 * nvertex, -1);
    for (int v = 0; v < nvertex; ++v) blossombase[v] = v;
    blossomendps.assign(2 * nvertex, {});
    bestedge.assign(2 * nvertex, -1);
    blossombestedges.assign(2 * nvertex, {});
    for (int b = 2 * nvertex - 1; b >= nvertex; --b) unusedblossoms.push_back(b);
    dualvar.assign(2 * nvertex, 0.0);
    for (int v = 0; v < nvertex; ++v) dualvar[v] = maxweight;
    allowedge.assign(nedge, 0);
  }

  std::vector<int> solve();

 private:
  int nvertex;
  bool maxcardinality;
  int nedge = 0;
  double maxweight = 0.0;
  std::vector<WeightedEdge> edges;
  std::vector<int> endpoint;
  std::vector<std::vector<int>> neighbend;
  std::vector<int> mate;  // remote endpoint slot, -1 when single
  std::vector<int> label, labelend, inblossom, blossomparent, blossombase;
  std::vector<std::vector<int>> blossomchilds, blossomendps;
  std::vector<int> bestedge;
  std::vector<std::vector<int>> blossombestedges;
  std::vector<int> unusedblossoms;
  std::vector<double> dualvar;
  std::vector<char> allowedge;
  std::vector<int> queue;

  double slack(int k) const {
    return dualvar[edges[k].u] + dualvar[edges[k].v] - 2.0 * edges[k].weight;
  }

  void blossom_leaves(int b, std::vector<int>& out) const {
    if (b < nvertex) {
      out.push_back(b);
    } else {
      for (int t : blossomchilds[b]) blossom_leaves(t, out);
    }
  }

  static int wrap(int j, int size) {
    j %= size;
    return j < 0 ? j + size : j;
  }

  void assign_label(int w, int t, int p) {
    const int b = inblossom[w];
    assert(label[w] == 0 && label[b] == 0);
    label[w] = label[b] = t;
    labelend[w] = labelend[b] = p;
    bestedge[w] = bestedge[b] = -1;
    if (t == 1) {
      std::vector<int> leaves;
      blossom_leaves(b, leaves);
      queue.insert(queue.end(), leaves.begin(), leaves.end());
    } else if (t == 2) {
      const int base = blossombase[b];
      assert(mate[base] >= 0);
      assign_label(endpoint[mate[base]], 1, mate[base] ^ 1);
    }
  }

  // Trace back from both ends of edge (v, w) looking for a common ancestor;
  // returns its base vertex or -1 when the paths hit two different roots.
  int scan_blossom(int v, int w) {
    std::vector<int> path;
    int base = -1;
    while (v != -1 || w != -1) {
      int b = inblossom[v];
      if (label[b] & 4) {
        base = blossombase[b];
        break;
      }
      assert(label[b] == 1);
      path.push_back(b);
      label[b] = 5;
      assert(labelend[b] == mate[blossombase[b]]);
      if (labelend[b] == -1) {
        v = -1;
      } else {
        v = endpoint[labelend[b]];
        b = inblossom[v];
        assert(label[b] == 2);
        assert(labelend[b] >= 0);
        v = endpoint[labelend[b]];
      }
      if (w != -1) std::swap(v, w);
    }
    for (int b : path) label[b] = 1;
    return base;
  }

  void add_blossom(int base, int k) {
    int v = edges[k].u;
    int w = edges[k].v;
    const int bb = inblossom[base];
    int bv = inblossom[v];
    int bw = inblossom[w];
    const int b = unusedblossoms.back();
    unusedblossoms.pop_back();
    blossombase[b] = base;
    blossomparent[b] = -1;
    blossomparent[bb] = b;
    std::vector<int> path, endps;
    while (bv != bb) {
      blossomparent[bv] = b;
      path.push_back(bv);
      endps.push_back(labelend[bv]);
      assert(label[bv] == 2 || (label[bv] == 1 && labelend[bv] == mate[blossombase[bv]]));
      assert(labelend[bv] >= 0);
      v = endpoint[labelend[bv]];
      bv = inblossom[v];
    }
    path.push_back(bb);
    std::reverse(path.begin(), path.end());
    std::reverse(endps.begin(), endps.end());
    endps.push_back(2 * k);
    while (bw != bb) {
      blossomparent[bw] = b;
      path.push_back(bw);
      endps.push_back(labelend[bw] ^ 1);
      assert(label[bw] == 2 || (label[bw] == 1 && labelend[bw] == mate[blossombase[bw]]));
      assert(labelend[bw] >= 0);
      w = endpoint[labelend[bw]];
      bw = inblossom[w];
    }
    // blossom_leaves(b) below walks blossomchilds, so the child lists must be
    // in place before any leaf traversal of b.
    blossomchilds[b] = std::move(path);
    blossomendps[b] = std::move(endps);
    assert(label[bb] == 1);
    label[b] = 1;
    labelend[b] = labelend[bb];
    dualvar[b] = 0.0;
    std::vector<int> leaves;
    blossom_leaves(b, leaves);
    for (int leaf : leaves) {
      if (label[inblossom[leaf]] == 2) queue.push_back(leaf);
      inblossom[leaf] = b;
    }
    // Merge the children's least-slack edge lists.
    std::vector<int> bestedgeto(2 * nvertex, -1);
    for (int child : blossomchilds[b]) {
      std::vector<std::vector<int>> nblists;
      if (blossombestedges[child].empty()) {
        std::vector<int> child_leaves;
        blossom_leaves(child, child_leaves);
        for (int leaf : child_leaves) {
          std::vector<int> ks;
          ks.reserve(neighbend[leaf].size());
          for (int p : neighbend[leaf]) ks.push_back(p / 2);
          nblists.push_back(std::move(ks));
        }
      } else {
        nblists.push_back(blossombestedges[child]);
      }
      for (const auto& nblist : nblists) {
        for (int ek : nblist) {
          int i = edges[ek].u;
          int j = edges[ek].v;
          if (inblossom[j] == b) std::swap(i, j);
          const int bj = inblossom[j];
          if (bj != b && label[bj] == 1 &&
              (bestedgeto[bj] == -1 || slack(ek) < slack(bestedgeto[bj])))
            bestedgeto[bj] = ek;
        }
      }
      blossombestedges[child].clear();
      bestedge[child] = -1;
    }
    blossombestedges[b].clear();
    for (int ek : bestedgeto)
      if (ek != -1) blossombestedges[b].push_back(ek);
    bestedge[b] = -1;
    for (int ek : blossombestedges[b])
      if (bestedge[b] == -1 || slack(ek) < slack(bestedge[b])) bestedge[b] = ek;
  }

  void expand_blossom(int b, bool endstage) {
    for (int s : blossomchilds[b]) {
      blossomparent[s] = -1;
      if (s < nvertex) {
        inblossom[s] = s;
      } else if (endstage && dualvar[s] == 0.0) {
        expand_blossom(s, endstage);
      } else {
        std::vector<int> leaves;
        blossom_leaves(s, leaves);
        for (int leaf : leaves) inblossom[leaf] = s;
      }
    }
    // A T-blossom expanded mid-stage keeps its alternating-path structure:
    // relabel along the path from the entry child to the base.
    if (!endstage && label[b] == 2) {
      assert(labelend[b] >= 0);
      const int entrychild = inblossom[endpoint[labelend[b] ^ 1]];
      const int len = static_cast<int>(blossomchilds[b].size());
      auto child_at = [&](int j) { return blossomchilds[b][wrap(j, len)]; };
      auto endp_at = [&](int j) { return blossomendps[b][wrap(j, len)]; };
      int j = 0;
      for (; j < len; ++j)
        if (blossomchilds[b][j] == entrychild) break;
      int jstep, endptrick;
      if (j & 1) {
        j -= len;
        jstep = 1;
        endptrick = 0;
      } else {
        jstep = -1;
        endptrick = 1;
      }
      int p = labelend[b];
      while (j != 0) {
        label[endpoint[p ^ 1]] = 0;
        label[endpoint[endp_at(j - endptrick) ^ endptrick ^ 1]] = 0;
        assign_label(endpoint[p ^ 1], 2, p);
        allowedge[endp_at(j - endptrick) / 2] = 1;
        j += jstep;
        p = endp_at(j - endptrick) ^ endptrick;
        allowedge[p / 2] = 1;
        j += jstep;
      }
      const int bv = child_at(0);
      label[endpoint[p ^ 1]] = label[bv] = 2;
      labelend[endpoint[p ^ 1]] = labelend[bv] = p;
      bestedge[bv] = -1;
      j += jstep;
      while (child_at(j) != entrychild) {
        const int bw = child_at(j);
        if (label[bw] == 1) {
          j += jstep;
          continue;
        }
        std::vector<int> leaves;
        blossom_leaves(bw, leaves);
        int reached = -1;
        for (int leaf : leaves) {
          if (label[leaf] != 0) {
            reached = leaf;
            break;
          }
        }
        if (reached >= 0) {
          assert(label[reached] == 2);
          assert(inblossom[reached] == bw);
          label[reached] = 0;
          label[endpoint[mate[blossombase[bw]]]] = 0;
          assign_label(reached, 2, labelend[reached]);
        }
        j += jstep;
      }
    }
    label[b] = -1;
    labelend[b] = -1;
    blossomchilds[b].clear();
    blossomendps[b].clear();
    blossombase[b] = -1;
    blossombestedges[b].clear();
    bestedge[b] = -1;
    unusedblossoms.push_back(b);
  }

  // Swap matched/unmatched edges over the alternating path through blossom b
  // between vertex v and the base.
  void augment_blossom(int b, int v) {
    int t = v;
    while (blossomparent[t] != b) t = blossomparent[t];
    if (t >= nvertex) augment_blossom(t, v);
    const int len = static_cast<int>(blossomchilds[b].size());
    auto child_at = [&](int j) { return blossomchilds[b][wrap(j, len)]; };
    auto endp_at = [&](int j) { return blossomendps[b][wrap(j, len)]; };
    int i = 0;
    for (; i < len; ++i)
      if (blossomchilds[b][i] == t) break;
    int j = i;
    int jstep, endptrick;
    if (i & 1) {
      j -= len;
      jstep = 1;
      endptrick = 0;
    } else {
      jstep = -1;
      endptrick = 1;
    }
    while (j != 0) {
      j += jstep;
      int tt = child_at(j);
      const int p = endp_at(j - endptrick) ^ endptrick;
      if (tt >= nvertex) augment_blossom(tt, endpoint[p]);
      j += jstep;
      tt = child_at(j);
      if (tt >= nvertex) augment_blossom(tt, endpoint[p ^ 1]);
      mate[endpoint[p]] = p ^ 1;
      mate[endpoint[p ^ 1]] = p;
    }
    std::rotate(blossomchilds[b].begin(), blossomchilds[b].begin() + i, blossomchilds[b].end());
    std::rotate(blossomendps[b].begin(), blossomendps[b].begin() + i, blossomendps[b].end());
    blossombase[b] = blossombase[blossomchilds[b][0]];
    assert(blossombase[b] == v);
  }

  void augment_matching(int k) {
    const int v = edges[k].u;
    const int w = edges[k].v;
    const std::pair<int, int> starts[2] = {{v, 2 * k + 1}, {w, 2 * k}};
    for (auto [s, p] : starts) {
      for (;;) {
        const int bs = inblossom[s];
        assert(label[bs] == 1);
        assert(labelend[bs] == mate[blossombase[bs]]);
        if (bs >= nvertex) augment_blossom(bs, s);
        mate[s] = p;
        if (labelend[bs] == -1) break;
        const int t = endpoint[labelend[bs]];
        const int bt = inblossom[t];
        assert(label[bt] == 2);
        assert(labelend[bt] >= 0);
        s = endpoint[labelend[bt]];
        const int j = endpoint[labelend[bt] ^ 1];
        assert(blossombase[bt] == t);
        if (bt >= nvertex) augment_blossom(bt, j);
        mate[j] = labelend[bt];
        p = labelend[bt] ^ 1;
      }
    }
  }
};

std::vector<int> BlossomMatcher::solve() {
  if (nedge == 0) return std::vector<int>(nvertex, -1);
  for (int stage = 0; stage < nvertex; ++stage) {
    std::fill(label.begin(), label.end(), 0);
    std::fill(bestedge.begin(), bestedge.end(), -1);
    for (int b = nvertex; b < 2 * nvertex; ++b) blossombestedges[b].clear();
    std::fill(allowedge.begin(), allowedge.end(), 0);
    queue.clear();
    for (int v = 0; v < nvertex; ++v)
      if (mate[v] == -1 && label[inblossom[v]] == 0) assign_label(v, 1, -1);
    bool augmented = false;
    for (;;) {
      while (!queue.empty() && !augmented) {
        const int v = queue.back();
        queue.pop_back();
        assert(label[inblossom[v]] == 1);
        for (int p : neighbend[v]) {
          const int k = p / 2;
          const int w = endpoint[p];
          if (inblossom[v] == inblossom[w]) continue;
          double kslack = 0.0;
          if (!allowedge[k]) {
            kslack = slack(k);
            if (kslack <= 0.0) allowedge[k] = 1;
          }
          if (allowedge[k]) {
            if (label[inblossom[w]] == 0) {
              assign_label(w, 2, p ^ 1);
            } else if (label[inblossom[w]] == 1) {
              const int base = scan_blossom(v, w);
              if (base >= 0) {
                add_blossom(base, k);
              } else {
                augment_matching(k);
                augmented = true;
                break;
              }
            } else if (label[w] == 0) {
              assert(label[inblossom[w]] == 2);
              label[w] = 2;
              labelend[w] = p ^ 1;
            }
          } else if (label[inblossom[w]] == 1) {
            const int b = inblossom[v];
            if (bestedge[b] == -1 || kslack < slack(bestedge[b])) bestedge[b] = k;
          } else if (label[w] == 0) {
            if (bestedge[w] == -1 || kslack < slack(bestedge[w])) bestedge[w] = k;
          }
        }
      }
      if (augmented) break;

      int deltatype = -1;
      double delta = 0.0;
      int deltaedge = -1, deltablossom = -1;
      if (!maxcardinality) {
        deltatype = 1;
        delta = *std::min_element(dualvar.begin(), dualvar.begin() + nvertex);
      }
      for (int v = 0; v < nvertex; ++v) {
        if (label[inblossom[v]] == 0 && bestedge[v] != -1) {
          const double d = slack(bestedge[v]);
          if (deltatype == -1 || d < delta) {
            delta = d;
            deltatype = 2;
            deltaedge = bestedge[v];
          }
        }
      }
      for (int b = 0; b < 2 * nvertex; ++b) {
        if (blossomparent[b] == -1 && label[b] == 1 && bestedge[b] != -1) {
          const double d = slack(bestedge[b]) / 2.0;
          if (deltatype == -1 || d < delta) {
            delta = d;
            deltatype = 3;
            deltaedge = bestedge[b];
          }
        }
      }
      for (int b = nvertex; b < 2 * nvertex; ++b) {
        if (blossombase[b] >= 0 && blossomparent[b] == -1 && label[b] == 2 &&
            (deltatype == -1 || dualvar[b] < delta)) {
          delta = dualvar[b];
          deltatype = 4;
          deltablossom = b;
        }
      }
      if (deltatype == -1) {
        // No further dual progress possible: maximum cardinality reached.
        deltatype = 1;
        delta = std::max(0.0, *std::min_element(dualvar.begin(), dualvar.begin() + nvertex));
      }

      for (int v = 0; v < nvertex; ++v) {
        if (label[inblossom[v]] == 1)
          dualvar[v] -= delta;
        else if (label[inblossom[v]] == 2)
          dualvar[v] += delta;
      }
      for (int b = nvertex; b < 2 * nvertex; ++b) {
        if (blossombase[b] >= 0 && blossomparent[b] == -1) {
          if (label[b] == 1)
            dualvar[b] += delta;
          else if (label[b] == 2)
            dualvar[b] -= delta;
        }
      }

      if (deltatype == 1) {
        break;
      } else if (deltatype == 2) {
        allowedge[deltaedge] = 1;
        int i = edges[deltaedge].u;
        if (label[inblossom[i]] == 0) i = edges[deltaedge].v;
        assert(label[inblossom[i]] == 1);
        queue.push_back(i);
      } else if (deltatype == 3) {
        allowedge[deltaedge] = 1;
        assert(label[inblossom[edges[deltaedge].u]] == 1);
        queue.push_back(edges[deltaedge].u);
      } else {
        expand_blossom(deltablossom, false);
      }
    }
    if (!augmented) break;
    for (int b = nvertex; b < 2 * nvertex; ++b) {
      if (blossomparent[b] == -1 && blossombase[b] >= 0 && label[b] == 1 && dualvar[b] == 0.0)
        expand_blossom(b, true);
    }
  }
  std::vector<int> result(nvertex, -1);
  for (int v = 0; v < nvertex; ++v)
    if (mate[v] >= 0) result[v] = endpoint[mate[v]];
  return result;
}

}  // namespace

std::vector<int> max_weight_matching(int num_vertices, const std::vector<WeightedEdge>& edges,
                                     bool max_cardinality) {
  if (num_vertices < 0) throw ArgumentError("max_weight_matching: negative vertex count");
  if (num_vertices == 0) return {};
  BlossomMatcher solver(num_vertices, edges, max_cardinality);
  return solver.solve();
}

}  // namespace nomapair
