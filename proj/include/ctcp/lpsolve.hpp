#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ctcp/instance.hpp"

namespace ctcp {

// Absolute tolerance used to classify y(e) > 0, tight edges and tight sets.
inline constexpr double kLpTolerance = 1e-9;

struct EdgeValue {
  EdgeId edge;
  double value = 0.0;
};

// One union performed by the greedy solver. root_a is the component of
// edge.i and root_b the component of edge.j, both taken before the union.
struct Merge {
  EdgeId edge;
  double y = 0.0;
  Vertex root_a = 0;
  Vertex root_b = 0;
};

struct LpSolution {
  // Nonzero y(e) in processing order; x[k] = y[k] / (1 + u) on the same edge.
  std::vector<EdgeValue> y;
  std::vector<EdgeValue> x;
  double objective = 0.0;
  std::vector<Merge> merges;
};

// Union-find whose roots carry |A|, b(A) and y(E(G[A])), so the slack
// |A| - b(A) - y(E(G[A])) of any current component is O(1).
class SlackForest {
 public:
  explicit SlackForest(const Instance& inst);

  Vertex find(Vertex v);

  std::size_t size(Vertex root) const { return nodes_[root].size; }
  double vertex_load(Vertex root) const { return nodes_[root].bsum; }
  double edge_mass(Vertex root) const { return nodes_[root].ysum; }
  double slack(Vertex root) const {
    const Node& node = nodes_[root];
    return static_cast<double>(node.size) - node.bsum - node.ysum;
  }

  // Joins two distinct roots through an edge carrying y; returns the new root.
  Vertex unite(Vertex root_a, Vertex root_b, double y);

  std::size_t component_count() const noexcept { return components_; }

 private:
  struct Node {
    Vertex parent;
    std::size_t size;
    double bsum;
    double ysum;
  };
  std::vector<Node> nodes_;
  std::size_t components_;
};

// Edges with c(e) <= gamma sorted by (c(e) - gamma) / (1 + u(e)); ties by u,
// then lexicographically.
std::vector<EdgeId> edge_order(const Instance& inst);

struct LpOptions {
  // Run validate() first and throw InvalidInstance on hard violations. The
  // triangle checks are cubic; callers holding a pre-validated instance can
  // switch this off to keep the solve at O(m log n).
  bool validate = true;
};

// Greedy optimum of the y-formulation of the tree cover LP.
LpSolution solve_lp(const Instance& inst, const LpOptions& options = {});

// sum_e c(e) y(e)/(1+u(e)) + gamma * (n - sum_e y(e)/(1+u(e)))
double lp_objective(const Instance& inst, std::span<const EdgeValue> y);

// |A| - b(A) - y(E(G[A])). Duplicate vertices are ignored; throws EmptySet.
double slack(const Instance& inst, std::span<const EdgeValue> y, std::span<const Vertex> set);

enum class LpConstraint { None, Forest, Load, Bounds };

struct LpFeasibility {
  bool feasible = true;
  LpConstraint violated = LpConstraint::None;
  std::optional<EdgeId> edge;   // for Bounds
  std::vector<Vertex> subset;   // for Forest and Load
};

// Checks all 2^n subset constraints plus the box constraints. n <= 20,
// otherwise TooLarge.
LpFeasibility check_lp_feasible_exhaustive(const Instance& inst, std::span<const EdgeValue> y,
                                           double tol);

// Optimal LP value from a dense simplex over the explicit constraint list.
// Independent of solve_lp; n <= 10, otherwise TooLarge.
double solve_lp_oracle(const Instance& inst);

// "edge i j y x" per active edge followed by "objective <value>".
std::string format_lp_solution(const LpSolution& lp);

}  // namespace ctcp
