#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ctcp {

using Vertex = std::uint32_t;

// Canonical key of an unordered vertex pair, i < j.
struct EdgeId {
  Vertex i = 0;
  Vertex j = 0;

  friend constexpr auto operator<=>(const EdgeId&, const EdgeId&) = default;
};

constexpr EdgeId make_edge(Vertex a, Vertex b) {
  return a < b ? EdgeId{a, b} : EdgeId{b, a};
}

// Capacitated tree cover instance on the complete graph K_n.
//
// Edge data lives in packed upper-triangular arrays indexed by edge_index();
// the diagonal is implicitly zero and both tables are symmetric by
// construction. Nothing here checks metric properties, see validate().
class Instance {
 public:
  Instance() = default;
  Instance(std::size_t n, double gamma);

  std::size_t vertex_count() const noexcept { return n_; }
  std::size_t edge_count() const noexcept { return cost_.size(); }

  double gamma() const noexcept { return gamma_; }
  void set_gamma(double gamma) { gamma_ = gamma; }

  double b(Vertex v) const { return vertex_load_[v]; }
  void set_b(Vertex v, double load) { vertex_load_[v] = load; }

  double c(EdgeId e) const { return cost_[edge_index(e)]; }
  double u(EdgeId e) const { return load_[edge_index(e)]; }
  double c(Vertex a, Vertex b) const { return a == b ? 0.0 : c(make_edge(a, b)); }
  double u(Vertex a, Vertex b) const { return a == b ? 0.0 : u(make_edge(a, b)); }

  void set_edge(EdgeId e, double cost, double load);

  // Position of e in row-major upper-triangular order, so lexicographic EdgeId
  // order equals index order.
  std::size_t edge_index(EdgeId e) const noexcept {
    return static_cast<std::size_t>(e.i) * n_ - static_cast<std::size_t>(e.i) * (e.i + 1) / 2 +
           (e.j - e.i - 1);
  }

  std::span<const double> vertex_loads() const noexcept { return vertex_load_; }
  std::span<const double> edge_costs() const noexcept { return cost_; }
  std::span<const double> edge_loads() const noexcept { return load_; }

  friend bool operator==(const Instance&, const Instance&) = default;

 private:
  std::size_t n_ = 0;
  double gamma_ = 0.0;
  std::vector<double> vertex_load_;
  std::vector<double> cost_;
  std::vector<double> load_;
};

// Calls fn(EdgeId) for every unordered pair in lexicographic order.
template <typename Fn>
void for_each_edge(std::size_t n, Fn&& fn) {
  for (Vertex i = 0; i < n; ++i) {
    for (Vertex j = i + 1; j < n; ++j) {
      fn(EdgeId{i, j});
    }
  }
}

enum class ViolationKind {
  NegativeValue,
  VertexLoadRange,
  TriangleC,
  TriangleU,
  Coupling,
  GammaDominance,
};

std::string_view to_string(ViolationKind kind);

struct Violation {
  ViolationKind kind;
  // Offending vertices: one for a vertex, two per edge, three for a triangle.
  // A coupling witness lists e then f, where u(e) < u(f) but c(e) > c(f).
  std::vector<Vertex> witness;

  // GammaDominance is informational: such edges are legal and ignored by the
  // solver.
  bool is_warning() const noexcept { return kind == ViolationKind::GammaDominance; }
};

struct ValidationReport {
  bool ok = true;
  std::vector<Violation> violations;
};

// Checks every instance precondition and reports one witness per violated
// kind. O(n^3) because of the triangle inequalities.
ValidationReport validate(const Instance& inst);

// Relative slack allowed in the triangle inequality checks.
inline constexpr double kMetricTolerance = 1e-9;

std::string format_validation(const ValidationReport& report);

// CTCP-v1 text format:
//
//   ctcp1
//   <n> <gamma>
//   <b_0> ... <b_{n-1}>
//   <i> <j> <c> <u>      (n(n-1)/2 lines, i < j, each pair once)
//
// '#' starts a comment; blank lines are ignored. Throws SyntaxError.
Instance parse_instance(std::istream& in);
Instance parse_instance(std::string_view text);

// Reals are written in shortest round-trip form.
std::string serialize_instance(const Instance& inst);
void write_instance(std::ostream& out, const Instance& inst);

// k-star integrality gap family: vertex 0 is the center.
Instance gen_gap(int k, double eps);

struct EuclideanParams {
  std::uint64_t seed = 0;
  std::size_t n = 1;
  double gamma = 1.0;
  double load_scale = 0.0;
  double b_max = 0.0;
};

// Points uniform in the unit square; c is Euclidean distance and
// u = load_scale * c. See SplitMix64 for the exact sample sequence.
Instance gen_random_euclidean(const EuclideanParams& params);

// SplitMix64 (Steele, Lea, Flood). state += 0x9e3779b97f4a7c15, then the
// output mix below. next_unit() uses the top 53 bits: (z >> 11) * 2^-53.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  double next_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t state_;
};

}  // namespace ctcp
