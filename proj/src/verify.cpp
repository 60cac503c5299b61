#include "ctcp/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "ctcp/errors.hpp"
#include "ctcp/lpsolve.hpp"
#include "text_format.hpp"

namespace ctcp {

std::string_view to_string(IssueKind kind) {
  switch (kind) {
    case IssueKind::Overload: return "Overload";
    case IssueKind::NotPartition: return "NotPartition";
    case IssueKind::NotSpanning: return "NotSpanning";
    case IssueKind::Cycle: return "Cycle";
    case IssueKind::EdgeMismatch: return "EdgeMismatch";
    case IssueKind::CostMismatch: return "CostMismatch";
  }
  return "Unknown";
}

VerifyReport check_solution(const Instance& inst, const Solution& sol) {
  const std::size_t n = inst.vertex_count();
  VerifyReport report;
  auto issue = [&](IssueKind kind, std::size_t component, double value = 0.0) {
    report.violations.push_back({kind, component, value});
  };

  std::vector<int> owner(n, -1);
  std::vector<EdgeId> component_edges;
  std::vector<std::vector<Vertex>> adjacent(n);
  std::vector<bool> seen(n, false);
  double cost = 0.0;
  for (std::size_t t = 0; t < sol.forest.components.size(); ++t) {
    const Component& comp = sol.forest.components[t];
    bool ids_ok = !comp.vertices.empty();
    for (Vertex v : comp.vertices) {
      if (v >= n || owner[v] != -1) {
        ids_ok = false;
        continue;
      }
      owner[v] = static_cast<int>(t);
    }
    if (!ids_ok) issue(IssueKind::NotPartition, t);

    // Breadth-first search over the component's own edge list.
    bool edges_inside = true;
    for (const EdgeId& e : comp.edges) {
      component_edges.push_back(e);
      if (e.i >= n || e.j >= n || e.i == e.j) {
        edges_inside = false;
        continue;
      }
      cost += inst.c(e);
      if (owner[e.i] != static_cast<int>(t) || owner[e.j] != static_cast<int>(t)) edges_inside = false;
      adjacent[e.i].push_back(e.j);
      adjacent[e.j].push_back(e.i);
    }
    if (!comp.vertices.empty() && comp.vertices.front() < n) {
      std::vector<Vertex> queue{comp.vertices.front()};
      seen[comp.vertices.front()] = true;
      for (std::size_t head = 0; head < queue.size(); ++head) {
        for (Vertex w : adjacent[queue[head]]) {
          if (!seen[w]) {
            seen[w] = true;
            queue.push_back(w);
          }
        }
      }
      const bool connected = std::all_of(comp.vertices.begin(), comp.vertices.end(),
                                         [&](Vertex v) { return v < n && seen[v]; });
      for (Vertex v : queue) seen[v] = false;
      if (!edges_inside || !connected) issue(IssueKind::NotSpanning, t);
      // A connected graph on |V| vertices with more than |V| - 1 edges has a cycle.
      if (comp.edges.size() + 1 > comp.vertices.size()) issue(IssueKind::Cycle, t);
    }

    for (const EdgeId& e : comp.edges) {
      if (e.i < n && e.j < n) {
        adjacent[e.i].clear();
        adjacent[e.j].clear();
      }
    }

    double load = 0.0;
    for (Vertex v : comp.vertices) {
      if (v < n) load += inst.b(v);
    }
    for (const EdgeId& e : comp.edges) {
      if (e.i < n && e.j < n && e.i != e.j) load += inst.u(make_edge(e.i, e.j));
    }
    if (load > 1.0 + kRoundTolerance) issue(IssueKind::Overload, t, load);
  }
  if (std::find(owner.begin(), owner.end(), -1) != owner.end()) issue(IssueKind::NotPartition, sol.forest.components.size());

  std::vector<EdgeId> listed = sol.forest.edges;
  std::sort(listed.begin(), listed.end());
  std::sort(component_edges.begin(), component_edges.end());
  if (listed != component_edges) issue(IssueKind::EdgeMismatch, 0);

  const auto k = sol.forest.components.size();
  cost += inst.gamma() * static_cast<double>(k);
  if (sol.k != k || std::abs(cost - sol.cost) > 1e-9 * std::max(1.0, std::abs(cost))) {
    issue(IssueKind::CostMismatch, 0, cost);
  }

  report.feasible = report.violations.empty();
  report.alg_cost = cost;
  report.split_overflows = sol.split_overflows;
  return report;
}

namespace {

struct BlockTree {
  bool feasible = false;
  double cost = std::numeric_limits<double>::infinity();
  std::vector<EdgeId> edges;
};

// Decodes a Pruefer sequence over `labels` into the tree's edge list.
std::vector<EdgeId> decode_pruefer(const std::vector<std::size_t>& sequence, const std::vector<Vertex>& labels) {
  const std::size_t s = labels.size();
  std::vector<std::size_t> degree(s, 1);
  for (std::size_t a : sequence) ++degree[a];
  std::vector<EdgeId> edges;
  for (std::size_t a : sequence) {
    std::size_t leaf = 0;
    while (degree[leaf] != 1) ++leaf;
    edges.push_back(make_edge(labels[leaf], labels[a]));
    --degree[leaf];
    --degree[a];
  }
  std::size_t first = s;
  for (std::size_t v = 0; v < s; ++v) {
    if (degree[v] != 1) continue;
    if (first == s) {
      first = v;
    } else {
      edges.push_back(make_edge(labels[first], labels[v]));
    }
  }
  return edges;
}

BlockTree best_block_tree(const Instance& inst, const std::vector<Vertex>& block) {
  BlockTree best;
  double vertex_load = 0.0;
  for (Vertex v : block) vertex_load += inst.b(v);
  auto consider = [&](std::vector<EdgeId> edges) {
    double load = vertex_load;
    double cost = 0.0;
    for (const EdgeId& e : edges) {
      load += inst.u(e);
      cost += inst.c(e);
    }
    if (load <= 1.0 + kRoundTolerance && cost < best.cost) {
      best.feasible = true;
      best.cost = cost;
      best.edges = std::move(edges);
    }
  };

  const std::size_t s = block.size();
  if (s == 1) {
    consider({});
    return best;
  }
  if (s == 2) {
    consider({make_edge(block[0], block[1])});
    return best;
  }
  // All s^(s-2) sequences, counted like an odometer.
  std::vector<std::size_t> sequence(s - 2, 0);
  for (;;) {
    consider(decode_pruefer(sequence, block));
    std::size_t pos = 0;
    while (pos < sequence.size() && ++sequence[pos] == s) sequence[pos++] = 0;
    if (pos == sequence.size()) break;
  }
  return best;
}

}  // namespace

Solution brute_force_opt(const Instance& inst) {
  const std::size_t n = inst.vertex_count();
  if (n > kBruteForceMaxVertices) throw TooLarge("brute force optimum needs n <= 7");

  std::vector<BlockTree> by_mask(std::size_t{1} << n);
  for (std::uint32_t mask = 1; mask < by_mask.size(); ++mask) {
    std::vector<Vertex> block;
    for (Vertex v = 0; v < n; ++v) {
      if (mask & (1u << v)) block.push_back(v);
    }
    by_mask[mask] = best_block_tree(inst, block);
  }

  // Restricted growth strings: label[v] <= 1 + max(label[0..v-1]).
  std::vector<std::size_t> label(n, 0);
  std::vector<std::uint32_t> best_blocks;
  double best_cost = std::numeric_limits<double>::infinity();
  auto evaluate = [&](std::size_t blocks) {
    std::vector<std::uint32_t> masks(blocks, 0);
    for (Vertex v = 0; v < n; ++v) masks[label[v]] |= 1u << v;
    double cost = inst.gamma() * static_cast<double>(blocks);
    for (std::uint32_t mask : masks) {
      if (!by_mask[mask].feasible) return;
      cost += by_mask[mask].cost;
    }
    if (cost < best_cost) {
      best_cost = cost;
      best_blocks = std::move(masks);
    }
  };
  auto recurse = [&](auto&& self, std::size_t v, std::size_t blocks) -> void {
    if (v == n) {
      evaluate(blocks);
      return;
    }
    for (std::size_t b = 0; b <= blocks; ++b) {
      label[v] = b;
      self(self, v + 1, std::max(blocks, b + 1));
    }
  };
  recurse(recurse, 0, 0);

  // Singletons are always legal (b < 1), so a best partition exists for
  // validated input.
  if (best_blocks.empty()) throw InvalidInstance("no feasible partition; vertex loads must lie below 1");
  std::vector<EdgeId> edges;
  for (std::uint32_t mask : best_blocks) {
    edges.insert(edges.end(), by_mask[mask].edges.begin(), by_mask[mask].edges.end());
  }
  Solution sol;
  sol.forest = make_forest(n, std::move(edges));
  sol.k = sol.forest.components.size();
  sol.cost = solution_cost(inst, sol);
  return sol;
}

bool no_usable_edge(const Instance& inst) {
  bool none = true;
  for_each_edge(inst.vertex_count(), [&](EdgeId e) {
    if (none && inst.b(e.i) + inst.b(e.j) + inst.u(e) <= 1.0 + kRoundTolerance) none = false;
  });
  return none;
}

namespace {

double ratio(double num, double den) {
  if (den == 0.0) return num == 0.0 ? 1.0 : std::numeric_limits<double>::infinity();
  return num / den;
}

}  // namespace

VerifyReport ratio_report(const Instance& inst, double alpha) {
  const LpSolution lp = solve_lp(inst);
  const Solution sol = solve(inst, alpha);
  VerifyReport report = check_solution(inst, sol);
  report.lp_objective = lp.objective;
  report.alg_cost = sol.cost;
  report.ratio_alg_lp = ratio(sol.cost, lp.objective);
  if (inst.vertex_count() <= kBruteForceMaxVertices) {
    report.opt_cost = brute_force_opt(inst).cost;
  } else if (no_usable_edge(inst)) {
    report.opt_cost = inst.gamma() * static_cast<double>(inst.vertex_count());
  }
  if (report.opt_cost) report.ratio_alg_opt = ratio(sol.cost, *report.opt_cost);
  return report;
}

std::string format_report(const VerifyReport& report) {
  std::ostringstream out;
  out << "feasible " << (report.feasible ? "true" : "false") << '\n';
  for (const SolutionIssue& v : report.violations) {
    out << "violation " << to_string(v.kind) << ' ' << v.component << ' ' << detail::fixed6(v.value) << '\n';
  }
  out << "lp_objective " << detail::fixed6(report.lp_objective) << '\n';
  out << "alg_cost " << detail::fixed6(report.alg_cost) << '\n';
  out << "opt_cost " << (report.opt_cost ? detail::fixed6(*report.opt_cost) : "NA") << '\n';
  out << "ratio_alg_lp " << detail::fixed6(report.ratio_alg_lp) << '\n';
  out << "ratio_alg_opt " << (report.ratio_alg_opt ? detail::fixed6(*report.ratio_alg_opt) : "NA") << '\n';
  out << "split_overflows " << report.split_overflows << '\n';
  return out.str();
}

std::string_view csv_header() { return "instance,n,lp,alg,opt,ratio_lp,ratio_opt,split_overflows"; }

std::string csv_row(std::string_view name, std::size_t n, const VerifyReport& report) {
  std::string row(name);
  row += ',' + std::to_string(n);
  row += ',' + detail::fixed6(report.lp_objective);
  row += ',' + detail::fixed6(report.alg_cost);
  row += ',' + (report.opt_cost ? detail::fixed6(*report.opt_cost) : std::string("NA"));
  row += ',' + detail::fixed6(report.ratio_alg_lp);
  row += ',' + (report.ratio_alg_opt ? detail::fixed6(*report.ratio_alg_opt) : std::string("NA"));
  row += ',' + std::to_string(report.split_overflows);
  return row;
}

}  // namespace ctcp
