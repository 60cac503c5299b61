#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ctcp/instance.hpp"
#include "ctcp/rounding.hpp"

namespace ctcp {

enum class IssueKind {
  Overload,       // component load above 1
  NotPartition,   // components overlap, miss a vertex or contain a bad id
  NotSpanning,    // edge leaves its component or the edges do not connect it
  Cycle,
  EdgeMismatch,   // forest edge list differs from the union of component edges
  CostMismatch,   // stored cost or k disagrees with a recomputation
};

std::string_view to_string(IssueKind kind);

struct SolutionIssue {
  IssueKind kind;
  std::size_t component = 0;
  double value = 0.0;  // load for Overload, recomputed cost for CostMismatch
};

struct VerifyReport {
  bool feasible = true;
  std::vector<SolutionIssue> violations;
  double lp_objective = 0.0;
  double alg_cost = 0.0;
  std::optional<double> opt_cost;
  double ratio_alg_lp = 1.0;
  std::optional<double> ratio_alg_opt;
  std::size_t split_overflows = 0;
};

// Structural and load checks, written independently of the rounding code.
// Fills feasible, violations and alg_cost.
VerifyReport check_solution(const Instance& inst, const Solution& sol);

inline constexpr std::size_t kBruteForceMaxVertices = 7;

// Exact optimum over all set partitions and all spanning trees of every
// block. n <= 7, otherwise TooLarge.
Solution brute_force_opt(const Instance& inst);

// True when b(i) + b(j) + u(ij) > 1 for every edge, i.e. no tree with two or
// more vertices is legal and the optimum is n * gamma.
bool no_usable_edge(const Instance& inst);

// Runs the LP, the rounding pipeline and, when the instance is small or
// provably edgeless, the exact optimum.
VerifyReport ratio_report(const Instance& inst, double alpha = kDefaultAlpha);

std::string format_report(const VerifyReport& report);

std::string_view csv_header();
// instance,n,lp,alg,opt,ratio_lp,ratio_opt,split_overflows (no newline)
std::string csv_row(std::string_view name, std::size_t n, const VerifyReport& report);

}  // namespace ctcp
