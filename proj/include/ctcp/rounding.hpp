#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "ctcp/instance.hpp"
#include "ctcp/lpsolve.hpp"

namespace ctcp {

// Tolerance on the rounding threshold and on the unit load capacity.
inline constexpr double kRoundTolerance = 1e-9;

inline constexpr double kDefaultAlpha = 2.0 / 3.0;

// A tree of the complete graph: sorted vertex ids and the edges spanning them.
struct Component {
  std::vector<Vertex> vertices;
  std::vector<EdgeId> edges;

  friend bool operator==(const Component&, const Component&) = default;
};

// Edges plus the induced components (ordered by smallest vertex), covering
// every vertex of the instance.
struct Forest {
  std::vector<EdgeId> edges;
  std::vector<Component> components;
};

// Groups `edges` into components over n vertices. Throws MalformedForest if
// the edges contain a cycle, a repeated edge or an out-of-range endpoint.
Forest make_forest(std::size_t n, std::vector<EdgeId> edges);

struct Solution {
  Forest forest;
  std::size_t k = 0;
  double cost = 0.0;
  // Bins whose realized tree came out heavier than 1 and were left unjoined.
  std::size_t split_overflows = 0;
};

// Keeps the active edges with x(e) >= alpha. Throws AlphaRange unless
// alpha lies in (0, 1].
Forest round_edges(const Instance& inst, const LpSolution& lp, double alpha);

// u(E(T)) + b(V(T)).
double tree_load(const Instance& inst, const Component& tree);

struct SplitResult {
  std::vector<Component> parts;
  std::size_t overflows = 0;
};

// Splits an overloaded tree into legal trees by bottom-up first-fit bin
// packing. Trees with load <= 1 come back unchanged.
SplitResult split_tree(const Instance& inst, const Component& tree);

// LP, threshold rounding at alpha, then splitting of every overloaded tree.
Solution solve(const Instance& inst, double alpha = kDefaultAlpha);

// sum of edge costs plus gamma per component, recomputed from the forest.
// Throws MalformedForest when the components do not partition V into trees.
double solution_cost(const Instance& inst, const Solution& sol);

// "k <count>", "cost <value>", then one block per tree:
//   tree <index> load <load>
//   vertices <v...>
//   edge <i> <j>        (one line per edge)
std::string format_solution(const Instance& inst, const Solution& sol);

}  // namespace ctcp
