#include "ctcp/lpsolve.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <sstream>

#include "ctcp/errors.hpp"
#include "text_format.hpp"

namespace ctcp {

SlackForest::SlackForest(const Instance& inst) : components_(inst.vertex_count()) {
  nodes_.reserve(inst.vertex_count());
  for (Vertex v = 0; v < inst.vertex_count(); ++v) nodes_.push_back({v, 1, inst.b(v), 0.0});
}

Vertex SlackForest::find(Vertex v) {
  while (nodes_[v].parent != v) {
    nodes_[v].parent = nodes_[nodes_[v].parent].parent;  // path halving
    v = nodes_[v].parent;
  }
  return v;
}

Vertex SlackForest::unite(Vertex root_a, Vertex root_b, double y) {
  if (nodes_[root_a].size < nodes_[root_b].size) std::swap(root_a, root_b);
  Node& big = nodes_[root_a];
  const Node& small = nodes_[root_b];
  big.size += small.size;
  big.bsum += small.bsum;
  big.ysum += small.ysum + y;
  nodes_[root_b].parent = root_a;
  --components_;
  return root_a;
}

namespace {

constexpr std::size_t kSortCutoff = 256;

struct KeyedEdge {
  double key;
  Vertex i;
  Vertex j;
};

// Total order of the greedy: key, then u, then lexicographic EdgeId. u is
// looked up only on key ties.
struct GreedyOrder {
  const Instance* inst;

  bool operator()(const KeyedEdge& a, const KeyedEdge& b) const {
    if (a.key != b.key) return a.key < b.key;
    if (a.i == b.i && a.j == b.j) return false;
    const double ua = inst->u(EdgeId{a.i, a.j});
    const double ub = inst->u(EdgeId{b.i, b.j});
    if (ua != ub) return ua < ub;
    return a.i != b.i ? a.i < b.i : a.j < b.j;
  }
};

// Keyed edges with c(e) <= gamma whose key passes `keep`.
template <typename Keep>
std::vector<KeyedEdge> keyed_edges(const Instance& inst, Keep&& keep) {
  const double gamma = inst.gamma();
  const auto costs = inst.edge_costs();
  const auto loads = inst.edge_loads();
  std::vector<KeyedEdge> keyed;
  std::size_t idx = 0;
  for_each_edge(inst.vertex_count(), [&](EdgeId e) {
    const double c = costs[idx];
    const double u = loads[idx];
    ++idx;
    if (c > gamma) return;
    const double key = (c - gamma) / (1.0 + u);
    if (keep(key)) keyed.push_back({key, e.i, e.j});
  });
  return keyed;
}

// Key below which roughly kLightEdgesPerVertex * n edges fall, estimated
// from a fixed stride sample. Infinity for small instances, meaning a single
// pass over all edges.
constexpr std::size_t kLightEdgesPerVertex = 16;
constexpr std::size_t kThresholdSamples = 4096;

double light_threshold(const Instance& inst) {
  const std::size_t m = inst.edge_count();
  const std::size_t wanted = kLightEdgesPerVertex * inst.vertex_count();
  if (m <= 4 * wanted || m <= kThresholdSamples) return std::numeric_limits<double>::infinity();

  const auto costs = inst.edge_costs();
  const auto loads = inst.edge_loads();
  const std::size_t stride = m / kThresholdSamples;
  std::vector<double> sample;
  sample.reserve(kThresholdSamples + 1);
  for (std::size_t idx = 0; idx < m; idx += stride) {
    if (costs[idx] <= inst.gamma()) sample.push_back((costs[idx] - inst.gamma()) / (1.0 + loads[idx]));
  }
  const auto rank = static_cast<std::size_t>(static_cast<double>(sample.size()) * wanted / m);
  if (rank >= sample.size()) return std::numeric_limits<double>::infinity();
  std::nth_element(sample.begin(), sample.begin() + static_cast<std::ptrdiff_t>(rank), sample.end());
  return sample[rank];
}

// Runs the greedy over the keyed edges in GreedyOrder without sorting them
// all up front (filter-Kruskal). A range is split around a median-of-three
// pivot; after the lighter side is processed, the heavier side drops edges
// the greedy is bound to skip: both ends already in one component, or both
// components with (near) zero slack. Slack never grows when components merge,
// so the half-tolerance cutoff only removes edges that the sequential scan
// would also reject.
class GreedyRun {
 public:
  explicit GreedyRun(const Instance& inst) : inst_(inst), order_{&inst}, forest_(inst) {}

  void run(std::span<KeyedEdge> edges) {
    while (!edges.empty() && forest_.component_count() > 1) {
      if (edges.size() <= kSortCutoff) {
        std::sort(edges.begin(), edges.end(), order_);
        for (const KeyedEdge& k : edges) {
          if (forest_.component_count() <= 1) break;
          consider(EdgeId{k.i, k.j});
        }
        return;
      }
      const KeyedEdge pivot = median_of_three(edges);
      auto middle = std::partition(edges.begin(), edges.end(),
                                   [&](const KeyedEdge& k) { return !order_(pivot, k); });
      const auto split = static_cast<std::size_t>(middle - edges.begin());
      run(edges.first(split));

      std::span<KeyedEdge> heavy = edges.subspan(split);
      auto kept = std::remove_if(heavy.begin(), heavy.end(), [&](const KeyedEdge& k) { return doomed(k); });
      edges = heavy.first(static_cast<std::size_t>(kept - heavy.begin()));
    }
  }

  bool done() const { return forest_.component_count() <= 1; }

  // Edges heavier than `threshold` that are not already doomed. Component
  // data is flattened per vertex first so most pairs are rejected without
  // touching the edge tables.
  std::vector<KeyedEdge> heavy_survivors(double threshold) {
    const std::size_t n = inst_.vertex_count();
    std::vector<Vertex> root(n);
    std::vector<double> root_slack(n);
    for (Vertex v = 0; v < n; ++v) {
      root[v] = forest_.find(v);
      root_slack[v] = forest_.slack(root[v]);
    }
    const double gamma = inst_.gamma();
    const auto costs = inst_.edge_costs();
    const auto loads = inst_.edge_loads();
    std::vector<KeyedEdge> kept;
    for (Vertex i = 0; i < n; ++i) {
      const std::size_t row = inst_.edge_index(EdgeId{i, i + 1}) - (i + 1);
      for (Vertex j = i + 1; j < n; ++j) {
        if (root[i] == root[j] || root_slack[i] + root_slack[j] <= 0.5 * kLpTolerance) continue;
        const double c = costs[row + j];
        if (c > gamma) continue;
        const double key = (c - gamma) / (1.0 + loads[row + j]);
        if (key > threshold) kept.push_back({key, i, j});
      }
    }
    return kept;
  }

  LpSolution take() { return std::move(lp_); }

 private:
  KeyedEdge median_of_three(std::span<const KeyedEdge> edges) const {
    KeyedEdge a = edges.front();
    KeyedEdge b = edges[edges.size() / 2];
    KeyedEdge c = edges.back();
    if (order_(b, a)) std::swap(a, b);
    if (order_(c, b)) std::swap(b, c);
    if (order_(b, a)) std::swap(a, b);
    return b;
  }

  bool doomed(const KeyedEdge& k) {
    const Vertex ra = forest_.find(k.i);
    const Vertex rb = forest_.find(k.j);
    return ra == rb || forest_.slack(ra) + forest_.slack(rb) <= 0.5 * kLpTolerance;
  }

  void consider(EdgeId e) {
    const Vertex ra = forest_.find(e.i);
    const Vertex rb = forest_.find(e.j);
    if (ra == rb) return;
    const double u = inst_.u(e);
    const double y = std::min(1.0 + u, forest_.slack(ra) + forest_.slack(rb));
    if (y <= kLpTolerance) return;
    forest_.unite(ra, rb, y);
    lp_.y.push_back({e, y});
    lp_.x.push_back({e, y / (1.0 + u)});
    lp_.merges.push_back({e, y, ra, rb});
  }

  const Instance& inst_;
  GreedyOrder order_;
  SlackForest forest_;
  LpSolution lp_;
};

}  // namespace

std::vector<EdgeId> edge_order(const Instance& inst) {
  std::vector<KeyedEdge> keyed = keyed_edges(inst, [](double) { return true; });
  std::sort(keyed.begin(), keyed.end(), GreedyOrder{&inst});
  std::vector<EdgeId> order;
  order.reserve(keyed.size());
  for (const KeyedEdge& k : keyed) order.push_back(EdgeId{k.i, k.j});
  return order;
}

LpSolution solve_lp(const Instance& inst, const LpOptions& options) {
  if (options.validate) {
    if (auto report = validate(inst); !report.ok) {
      throw InvalidInstance("instance failed validation:\n" + format_validation(report));
    }
  }

  // Light edges first, then whatever heavier edges can still matter. Every
  // light edge precedes every heavy one in the greedy order.
  const double threshold = light_threshold(inst);
  GreedyRun greedy(inst);
  std::vector<KeyedEdge> light = keyed_edges(inst, [&](double key) { return key <= threshold; });
  greedy.run(light);
  if (!greedy.done() && threshold < std::numeric_limits<double>::infinity()) {
    std::vector<KeyedEdge> heavy = greedy.heavy_survivors(threshold);
    greedy.run(heavy);
  }
  LpSolution lp = greedy.take();
  lp.objective = lp_objective(inst, lp.y);
  return lp;
}

double lp_objective(const Instance& inst, std::span<const EdgeValue> y) {
  double edge_cost = 0.0;
  double x_total = 0.0;
  for (const EdgeValue& ev : y) {
    const double x = ev.value / (1.0 + inst.u(ev.edge));
    edge_cost += inst.c(ev.edge) * x;
    x_total += x;
  }
  return edge_cost + inst.gamma() * (static_cast<double>(inst.vertex_count()) - x_total);
}

double slack(const Instance& inst, std::span<const EdgeValue> y, std::span<const Vertex> set) {
  if (set.empty()) throw EmptySet("slack of an empty vertex set");
  std::vector<bool> member(inst.vertex_count(), false);
  double result = 0.0;
  for (Vertex v : set) {
    if (member[v]) continue;
    member[v] = true;
    result += 1.0 - inst.b(v);
  }
  for (const EdgeValue& ev : y) {
    if (member[ev.edge.i] && member[ev.edge.j]) result -= ev.value;
  }
  return result;
}

LpFeasibility check_lp_feasible_exhaustive(const Instance& inst, std::span<const EdgeValue> y,
                                           double tol) {
  const std::size_t n = inst.vertex_count();
  if (n > 20) throw TooLarge("exhaustive LP feasibility check needs n <= 20");

  // Accumulate per edge so repeated entries count once, summed.
  std::vector<double> dense(inst.edge_count(), 0.0);
  for (const EdgeValue& ev : y) dense[inst.edge_index(ev.edge)] += ev.value;

  struct Entry {
    std::uint32_t mask;
    double y;
    double x;
  };
  std::vector<Entry> support;
  LpFeasibility result;
  for_each_edge(n, [&](EdgeId e) {
    const double value = dense[inst.edge_index(e)];
    const double cap = 1.0 + inst.u(e);
    if (result.feasible && (value < -tol || value > cap + tol)) {
      result.feasible = false;
      result.violated = LpConstraint::Bounds;
      result.edge = e;
    }
    if (value != 0.0) support.push_back({(1u << e.i) | (1u << e.j), value, value / cap});
  });
  if (!result.feasible) return result;

  const std::uint32_t full = n == 0 ? 0 : ((1u << n) - 1);
  for (std::uint32_t mask = 1; mask <= full && mask != 0; ++mask) {
    double ysum = 0.0;
    double xsum = 0.0;
    for (const Entry& s : support) {
      if ((s.mask & mask) == s.mask) {
        ysum += s.y;
        xsum += s.x;
      }
    }
    const auto size = static_cast<double>(std::popcount(mask));
    double bsum = 0.0;
    for (Vertex v = 0; v < n; ++v) {
      if (mask & (1u << v)) bsum += inst.b(v);
    }
    const bool forest_ok = xsum <= size - 1.0 + tol;
    const bool load_ok = ysum <= size - bsum + tol;
    if (!forest_ok || !load_ok) {
      result.feasible = false;
      result.violated = forest_ok ? LpConstraint::Load : LpConstraint::Forest;
      for (Vertex v = 0; v < n; ++v) {
        if (mask & (1u << v)) result.subset.push_back(v);
      }
      return result;
    }
  }
  return result;
}

std::string format_lp_solution(const LpSolution& lp) {
  std::ostringstream out;
  for (std::size_t k = 0; k < lp.y.size(); ++k) {
    out << "edge " << lp.y[k].edge.i << ' ' << lp.y[k].edge.j << ' ' << detail::fixed6(lp.y[k].value)
        << ' ' << detail::fixed6(lp.x[k].value) << '\n';
  }
  out << "objective " << detail::fixed6(lp.objective) << '\n';
  return out.str();
}

}  // namespace ctcp
