// Reference LP solver for small instances. Builds every subset constraint of
// the y-formulation explicitly and runs a dense primal simplex on it, so it
// shares nothing with the greedy solver beyond the Instance accessors.

#include <bit>
#include <cstdint>
#include <limits>
#include <vector>

#include "ctcp/errors.hpp"
#include "ctcp/lpsolve.hpp"

namespace ctcp {
namespace {

using Real = long double;

constexpr Real kPivotEps = 1e-15L;

// maximize obj.x  s.t.  A x <= rhs, x >= 0, with rhs >= 0 so the slack basis
// is feasible. Condensed (Tucker) tableau: row r holds
//   basic_r = rhs_r - sum_j a_rj * nonbasic_j
// and the objective row holds z = z0 + sum_j d_j * nonbasic_j.
// Bland's rule keeps the degenerate pivots from cycling.
class DenseSimplex {
 public:
  DenseSimplex(std::vector<std::vector<Real>> rows, std::vector<Real> rhs, std::vector<Real> obj)
      : rows_(std::move(rows)), rhs_(std::move(rhs)), d_(std::move(obj)) {
    const std::size_t cols = d_.size();
    for (std::size_t j = 0; j < cols; ++j) nonbasic_.push_back(j);
    for (std::size_t r = 0; r < rows_.size(); ++r) basic_.push_back(cols + r);
  }

  Real maximize() {
    const std::size_t cols = d_.size();
    for (;;) {
      std::size_t enter = cols;
      for (std::size_t j = 0; j < cols; ++j) {
        if (d_[j] > kPivotEps && (enter == cols || nonbasic_[j] < nonbasic_[enter])) enter = j;
      }
      if (enter == cols) return z0_;

      std::size_t leave = rows_.size();
      Real best = std::numeric_limits<Real>::infinity();
      for (std::size_t r = 0; r < rows_.size(); ++r) {
        const Real a = rows_[r][enter];
        if (a <= kPivotEps) continue;
        const Real ratio = rhs_[r] / a;
        if (ratio < best || (ratio == best && basic_[r] < basic_[leave])) {
          best = ratio;
          leave = r;
        }
      }
      // Every variable is boxed, so the LP is bounded.
      if (leave == rows_.size()) throw Error("simplex oracle: unbounded direction");
      pivot(leave, enter);
    }
  }

 private:
  void pivot(std::size_t r, std::size_t s) {
    const std::size_t cols = d_.size();
    std::vector<Real>& prow = rows_[r];
    const Real p = prow[s];

    for (std::size_t j = 0; j < cols; ++j) {
      if (j != s) prow[j] /= p;
    }
    prow[s] = 1.0L / p;
    rhs_[r] /= p;

    for (std::size_t i = 0; i < rows_.size(); ++i) {
      if (i == r) continue;
      std::vector<Real>& row = rows_[i];
      const Real f = row[s];
      if (f == 0.0L) continue;
      for (std::size_t j = 0; j < cols; ++j) {
        if (j != s) row[j] -= f * prow[j];
      }
      row[s] = -f / p;
      rhs_[i] -= f * rhs_[r];
      if (rhs_[i] < 0.0L && rhs_[i] > -kPivotEps) rhs_[i] = 0.0L;
    }

    const Real f = d_[s];
    for (std::size_t j = 0; j < cols; ++j) {
      if (j != s) d_[j] -= f * prow[j];
    }
    d_[s] = -f / p;
    z0_ += f * rhs_[r];

    std::swap(basic_[r], nonbasic_[s]);
  }

  std::vector<std::vector<Real>> rows_;
  std::vector<Real> rhs_;
  std::vector<Real> d_;
  Real z0_ = 0.0L;
  std::vector<std::size_t> basic_;
  std::vector<std::size_t> nonbasic_;
};

}  // namespace

double solve_lp_oracle(const Instance& inst) {
  const std::size_t n = inst.vertex_count();
  if (n > 10) throw TooLarge("LP oracle needs n <= 10");

  std::vector<EdgeId> edges;
  for_each_edge(n, [&](EdgeId e) { edges.push_back(e); });
  const std::size_t m = edges.size();
  if (m == 0) return inst.gamma() * static_cast<double>(n);

  std::vector<Real> cap(m);
  std::vector<Real> obj(m);
  for (std::size_t k = 0; k < m; ++k) {
    cap[k] = 1.0L + inst.u(edges[k]);
    obj[k] = (static_cast<Real>(inst.gamma()) - inst.c(edges[k])) / cap[k];
  }

  std::vector<std::vector<Real>> rows;
  std::vector<Real> rhs;
  const std::uint32_t full = (1u << n) - 1;
  for (std::uint32_t mask = 1; mask <= full; ++mask) {
    const int size = std::popcount(mask);
    if (size < 2) continue;
    Real bsum = 0.0L;
    for (Vertex v = 0; v < n; ++v) {
      if (mask & (1u << v)) bsum += inst.b(v);
    }
    std::vector<Real> forest(m, 0.0L);
    std::vector<Real> load(m, 0.0L);
    for (std::size_t k = 0; k < m; ++k) {
      const std::uint32_t ends = (1u << edges[k].i) | (1u << edges[k].j);
      if ((ends & mask) == ends) {
        forest[k] = 1.0L / cap[k];
        load[k] = 1.0L;
      }
    }
    rows.push_back(std::move(forest));
    rhs.push_back(static_cast<Real>(size) - 1.0L);
    rows.push_back(std::move(load));
    rhs.push_back(static_cast<Real>(size) - bsum);
  }
  for (std::size_t k = 0; k < m; ++k) {
    std::vector<Real> box(m, 0.0L);
    box[k] = 1.0L;
    rows.push_back(std::move(box));
    rhs.push_back(cap[k]);
  }

  DenseSimplex simplex(std::move(rows), std::move(rhs), std::move(obj));
  const Real best = simplex.maximize();
  return static_cast<double>(static_cast<Real>(inst.gamma()) * static_cast<Real>(n) - best);
}

}  // namespace ctcp
