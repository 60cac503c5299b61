#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <vector>

#include "ctcp/instance.hpp"
#include "ctcp/lpsolve.hpp"

namespace ctcp::testing {

// The random corpus: seeds 0..199 sweep n in 4..8 fastest, then load scale,
// then vertex-load range, then gamma.
inline EuclideanParams corpus_params(std::uint64_t seed) {
  static constexpr std::array<double, 3> kLoadScale{0.0, 0.3, 1.0};
  static constexpr std::array<double, 3> kBMax{0.0, 0.5, 0.9};
  static constexpr std::array<double, 3> kGamma{0.25, 0.6, 1.5};
  EuclideanParams p;
  p.seed = seed;
  p.n = 4 + seed % 5;
  p.load_scale = kLoadScale[(seed / 5) % 3];
  p.b_max = kBMax[(seed / 15) % 3];
  p.gamma = kGamma[(seed / 45) % 3];
  return p;
}

inline constexpr std::uint64_t kCorpusSize = 200;

inline std::vector<Instance> corpus() {
  std::vector<Instance> out;
  for (std::uint64_t s = 0; s < kCorpusSize; ++s) out.push_back(gen_random_euclidean(corpus_params(s)));
  return out;
}

// Plain sequential greedy over edge_order(): the textbook scan with a naive
// union-find, kept deliberately simple.
inline LpSolution reference_lp(const Instance& inst) {
  const std::size_t n = inst.vertex_count();
  std::vector<Vertex> root(n);
  std::vector<double> size(n, 1.0), bsum(n), ysum(n, 0.0);
  for (Vertex v = 0; v < n; ++v) {
    root[v] = v;
    bsum[v] = inst.b(v);
  }
  auto find = [&](Vertex v) {
    while (root[v] != v) v = root[v];
    return v;
  };
  LpSolution lp;
  for (const EdgeId& e : edge_order(inst)) {
    const Vertex a = find(e.i);
    const Vertex b = find(e.j);
    if (a == b) continue;
    const double y = std::min(1.0 + inst.u(e), (size[a] - bsum[a] - ysum[a]) + (size[b] - bsum[b] - ysum[b]));
    if (!(y > kLpTolerance)) continue;
    lp.y.push_back({e, y});
    lp.x.push_back({e, y / (1.0 + inst.u(e))});
    lp.merges.push_back({e, y, a, b});
    // Same size-based union rule as the library so roots are comparable.
    Vertex big = a, small = b;
    if (size[a] < size[b]) std::swap(big, small);
    root[small] = big;
    size[big] += size[small];
    bsum[big] += bsum[small];
    ysum[big] += ysum[small] + y;
  }
  return lp;
}

// Acyclicity by depth-first search on an adjacency list (no union-find).
inline bool is_acyclic(std::size_t n, const std::vector<EdgeId>& edges) {
  std::vector<std::vector<Vertex>> adj(n);
  for (const EdgeId& e : edges) {
    if (e.i == e.j) return false;
    adj[e.i].push_back(e.j);
    adj[e.j].push_back(e.i);
  }
  std::vector<int> parent(n, -2);
  for (Vertex s = 0; s < n; ++s) {
    if (parent[s] != -2) continue;
    parent[s] = -1;
    std::vector<std::pair<Vertex, int>> stack{{s, -1}};
    while (!stack.empty()) {
      auto [v, from] = stack.back();
      stack.pop_back();
      bool skipped_parent_edge = false;
      for (Vertex w : adj[v]) {
        if (static_cast<int>(w) == from && !skipped_parent_edge) {
          skipped_parent_edge = true;
          continue;
        }
        if (parent[w] != -2) return false;
        parent[w] = static_cast<int>(v);
        stack.push_back({w, static_cast<int>(v)});
      }
    }
  }
  return true;
}

inline std::vector<EdgeId> active_edges(const LpSolution& lp) {
  std::vector<EdgeId> out;
  for (const EdgeValue& ev : lp.x) {
    if (ev.value > kLpTolerance) out.push_back(ev.edge);
  }
  return out;
}

using Mask = std::uint32_t;

// sigma over a vertex bitmask, summed from scratch.
inline double mask_slack(const Instance& inst, const std::vector<EdgeValue>& y, Mask set) {
  double s = 0.0;
  for (Vertex v = 0; v < inst.vertex_count(); ++v) {
    if (set & (Mask{1} << v)) s += 1.0 - inst.b(v);
  }
  for (const EdgeValue& ev : y) {
    if ((set >> ev.edge.i & 1) && (set >> ev.edge.j & 1)) s -= ev.value;
  }
  return s;
}

struct InvariantCounts {
  std::size_t merges = 0;
  std::size_t tight_edge = 0;    // non-tight A with a non-tight active edge inside
  std::size_t merge_slack = 0;   // sigma(A) > min(sigma(A1), sigma(A2))
  std::size_t subset_slack = 0;  // some B subset of A with sigma(B) < sigma(A)
  std::size_t subsets = 0;

  std::size_t violations() const { return tight_edge + merge_slack + subset_slack; }
};

// Replays the merge trace as bitmasks (n <= 20) and checks the three
// structural statements on every set of the laminar family.
inline InvariantCounts check_laminar_invariants(const Instance& inst, const LpSolution& lp, double tol = kLpTolerance) {
  const std::size_t n = inst.vertex_count();
  InvariantCounts counts;
  std::vector<Mask> member(n);
  for (Vertex v = 0; v < n; ++v) member[v] = Mask{1} << v;
  std::vector<EdgeValue> y_so_far;

  for (const Merge& m : lp.merges) {
    ++counts.merges;
    const Mask a1 = member[m.edge.i];
    const Mask a2 = member[m.edge.j];
    const double s1 = mask_slack(inst, y_so_far, a1);
    const double s2 = mask_slack(inst, y_so_far, a2);
    y_so_far.push_back({m.edge, m.y});
    const Mask a = a1 | a2;
    for (Vertex v = 0; v < n; ++v) {
      if (a & (Mask{1} << v)) member[v] = a;
    }
    const double sa = mask_slack(inst, y_so_far, a);

    if (sa > std::min(s1, s2) + tol) ++counts.merge_slack;

    if (sa > tol) {
      for (const EdgeValue& ev : y_so_far) {
        if ((a >> ev.edge.i & 1) && (a >> ev.edge.j & 1) && ev.value < 1.0 + inst.u(ev.edge) - tol) {
          ++counts.tight_edge;
          break;
        }
      }
    }

    for (Mask b = a; b != 0; b = (b - 1) & a) {
      ++counts.subsets;
      if (mask_slack(inst, y_so_far, b) < sa - tol) {
        ++counts.subset_slack;
        break;
      }
    }
  }
  return counts;
}

// Same instance with vertex v renamed to perm[v].
inline Instance relabel(const Instance& inst, const std::vector<Vertex>& perm) {
  Instance out(inst.vertex_count(), inst.gamma());
  for (Vertex v = 0; v < inst.vertex_count(); ++v) out.set_b(perm[v], inst.b(v));
  for_each_edge(inst.vertex_count(), [&](EdgeId e) { out.set_edge(make_edge(perm[e.i], perm[e.j]), inst.c(e), inst.u(e)); });
  return out;
}

}  // namespace ctcp::testing
