#include "ctcp/instance.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <istream>
#include <iterator>
#include <limits>
#include <optional>
#include <sstream>

#include "ctcp/errors.hpp"

namespace ctcp {

Instance::Instance(std::size_t n, double gamma)
    : n_(n),
      gamma_(gamma),
      vertex_load_(n, 0.0),
      cost_(n * (n - (n > 0 ? 1 : 0)) / 2, 0.0),
      load_(cost_.size(), 0.0) {}

void Instance::set_edge(EdgeId e, double cost, double load) {
  const std::size_t k = edge_index(e);
  cost_[k] = cost;
  load_[k] = load;
}

std::string_view to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::NegativeValue: return "NegativeValue";
    case ViolationKind::VertexLoadRange: return "VertexLoadRange";
    case ViolationKind::TriangleC: return "TriangleC";
    case ViolationKind::TriangleU: return "TriangleU";
    case ViolationKind::Coupling: return "Coupling";
    case ViolationKind::GammaDominance: return "GammaDominance";
  }
  return "Unknown";
}

namespace {

bool exceeds(double side, double a, double b) {
  return side > a + b + kMetricTolerance * (1.0 + a + b);
}

// First triple (i<j<k) on which `metric` breaks the triangle inequality.
template <typename Metric>
std::optional<std::vector<Vertex>> find_triangle_violation(std::size_t n, Metric&& metric) {
  for (Vertex i = 0; i < n; ++i) {
    for (Vertex j = i + 1; j < n; ++j) {
      const double ij = metric(i, j);
      for (Vertex k = j + 1; k < n; ++k) {
        const double ik = metric(i, k);
        const double jk = metric(j, k);
        if (exceeds(ij, ik, jk) || exceeds(ik, ij, jk) || exceeds(jk, ij, ik)) {
          return std::vector<Vertex>{i, j, k};
        }
      }
    }
  }
  return std::nullopt;
}

std::optional<std::vector<Vertex>> find_coupling_violation(const Instance& inst) {
  struct Entry {
    double u;
    double c;
    EdgeId e;
  };
  std::vector<Entry> entries;
  entries.reserve(inst.edge_count());
  for_each_edge(inst.vertex_count(), [&](EdgeId e) {
    entries.push_back({inst.u(e), inst.c(e), e});
  });
  std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
    return a.u != b.u ? a.u < b.u : a.c < b.c;
  });

  // Max cost over all strictly lighter edges must not exceed any cost in the
  // current group of equal u.
  std::optional<Entry> heaviest_below;
  std::size_t group = 0;
  while (group < entries.size()) {
    std::size_t end = group;
    while (end < entries.size() && entries[end].u == entries[group].u) ++end;
    if (heaviest_below && heaviest_below->c > entries[group].c) {
      const EdgeId e = heaviest_below->e;
      const EdgeId f = entries[group].e;
      return std::vector<Vertex>{e.i, e.j, f.i, f.j};
    }
    // Within a group entries are sorted by c, so the last one is the maximum.
    if (!heaviest_below || entries[end - 1].c > heaviest_below->c) heaviest_below = entries[end - 1];
    group = end;
  }
  return std::nullopt;
}

}  // namespace

ValidationReport validate(const Instance& inst) {
  ValidationReport report;
  const std::size_t n = inst.vertex_count();
  auto add = [&](ViolationKind kind, std::vector<Vertex> witness) {
    report.violations.push_back({kind, std::move(witness)});
  };

  // !(x >= 0) also catches NaN.
  std::optional<std::vector<Vertex>> negative;
  if (!(inst.gamma() >= 0.0)) negative = std::vector<Vertex>{};
  std::optional<std::vector<Vertex>> dominated;
  for_each_edge(n, [&](EdgeId e) {
    if (!negative && (!(inst.c(e) >= 0.0) || !(inst.u(e) >= 0.0))) {
      negative = std::vector<Vertex>{e.i, e.j};
    }
    if (!dominated && inst.c(e) > inst.gamma()) dominated = std::vector<Vertex>{e.i, e.j};
  });
  if (negative) add(ViolationKind::NegativeValue, std::move(*negative));

  for (Vertex v = 0; v < n; ++v) {
    const double b = inst.b(v);
    if (!(b >= 0.0 && b < 1.0)) {
      add(ViolationKind::VertexLoadRange, {v});
      break;
    }
  }

  if (auto w = find_triangle_violation(n, [&](Vertex a, Vertex b) { return inst.c(EdgeId{a, b}); })) {
    add(ViolationKind::TriangleC, std::move(*w));
  }
  if (auto w = find_triangle_violation(n, [&](Vertex a, Vertex b) { return inst.u(EdgeId{a, b}); })) {
    add(ViolationKind::TriangleU, std::move(*w));
  }
  if (auto w = find_coupling_violation(inst)) add(ViolationKind::Coupling, std::move(*w));
  if (dominated) add(ViolationKind::GammaDominance, std::move(*dominated));

  report.ok = std::none_of(report.violations.begin(), report.violations.end(),
                           [](const Violation& v) { return !v.is_warning(); });
  return report;
}

std::string format_validation(const ValidationReport& report) {
  std::ostringstream out;
  out << "valid " << (report.ok ? "true" : "false") << '\n';
  for (const Violation& v : report.violations) {
    out << to_string(v.kind);
    for (Vertex w : v.witness) out << ' ' << w;
    if (v.is_warning()) out << " warning";
    out << '\n';
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// CTCP-v1

namespace {

struct Line {
  std::size_t number;
  std::vector<std::string_view> tokens;
};

std::vector<std::string_view> split_tokens(std::string_view text) {
  std::vector<std::string_view> tokens;
  std::size_t pos = 0;
  while (pos < text.size()) {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    std::size_t end = pos;
    while (end < text.size() && !std::isspace(static_cast<unsigned char>(text[end]))) ++end;
    if (end > pos) tokens.push_back(text.substr(pos, end - pos));
    pos = end;
  }
  return tokens;
}

double parse_real(std::string_view token, std::size_t line) {
  double value = 0.0;
  const char* first = token.data();
  const char* last = first + token.size();
  if (!token.empty() && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last || !std::isfinite(value)) {
    throw SyntaxError(line, "expected a finite real, got '" + std::string(token) + "'");
  }
  return value;
}

std::uint64_t parse_index(std::string_view token, std::size_t line) {
  std::uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc{} || ptr != token.data() + token.size()) {
    throw SyntaxError(line, "expected a nonnegative integer, got '" + std::string(token) + "'");
  }
  return value;
}

}  // namespace

Instance parse_instance(std::string_view text) {
  std::vector<Line> lines;
  std::size_t number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    ++number;
    std::string_view raw = text.substr(pos, end - pos);
    if (auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    auto tokens = split_tokens(raw);
    if (!tokens.empty()) lines.push_back({number, std::move(tokens)});
    pos = end + 1;
  }

  auto expect_count = [](const Line& line, std::size_t count, const char* what) {
    if (line.tokens.size() != count) {
      throw SyntaxError(line.number, std::string(what) + ": expected " + std::to_string(count) +
                                         " fields, got " + std::to_string(line.tokens.size()));
    }
  };

  if (lines.empty()) throw SyntaxError(number, "empty input");
  if (lines[0].tokens.size() != 1 || lines[0].tokens[0] != "ctcp1") {
    throw SyntaxError(lines[0].number, "missing 'ctcp1' header");
  }
  if (lines.size() < 3) throw SyntaxError(number, "truncated header");

  const Line& sizes = lines[1];
  expect_count(sizes, 2, "size line");
  const std::uint64_t n = parse_index(sizes.tokens[0], sizes.number);
  if (n < 1) throw SyntaxError(sizes.number, "vertex count must be at least 1");
  if (n > std::numeric_limits<Vertex>::max()) throw SyntaxError(sizes.number, "vertex count too large");
  Instance inst(n, parse_real(sizes.tokens[1], sizes.number));

  const Line& loads = lines[2];
  expect_count(loads, n, "vertex load line");
  for (Vertex v = 0; v < n; ++v) inst.set_b(v, parse_real(loads.tokens[v], loads.number));

  std::vector<bool> seen(inst.edge_count(), false);
  for (std::size_t k = 3; k < lines.size(); ++k) {
    const Line& line = lines[k];
    expect_count(line, 4, "edge line");
    const std::uint64_t i = parse_index(line.tokens[0], line.number);
    const std::uint64_t j = parse_index(line.tokens[1], line.number);
    if (!(i < j && j < n)) {
      throw SyntaxError(line.number, "edge endpoints must satisfy i < j < n");
    }
    const EdgeId e{static_cast<Vertex>(i), static_cast<Vertex>(j)};
    const std::size_t idx = inst.edge_index(e);
    if (seen[idx]) {
      throw SyntaxError(line.number, "duplicate edge (" + std::to_string(i) + "," + std::to_string(j) + ")");
    }
    seen[idx] = true;
    inst.set_edge(e, parse_real(line.tokens[2], line.number), parse_real(line.tokens[3], line.number));
  }

  if (auto it = std::find(seen.begin(), seen.end(), false); it != seen.end()) {
    std::string pair;
    const auto missing = static_cast<std::size_t>(std::distance(seen.begin(), it));
    for_each_edge(n, [&](EdgeId e) {
      if (pair.empty() && inst.edge_index(e) == missing) {
        pair = "(" + std::to_string(e.i) + "," + std::to_string(e.j) + ")";
      }
    });
    throw SyntaxError(number, "missing edge " + pair);
  }
  return inst;
}

Instance parse_instance(std::istream& in) {
  std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  return parse_instance(std::string_view(text));
}

namespace {

void append_real(std::string& out, double value) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  out.append(buf, ptr);
}

}  // namespace

std::string serialize_instance(const Instance& inst) {
  const std::size_t n = inst.vertex_count();
  std::string out = "ctcp1\n";
  out += std::to_string(n);
  out += ' ';
  append_real(out, inst.gamma());
  out += '\n';
  for (Vertex v = 0; v < n; ++v) {
    if (v > 0) out += ' ';
    append_real(out, inst.b(v));
  }
  out += '\n';
  for_each_edge(n, [&](EdgeId e) {
    out += std::to_string(e.i);
    out += ' ';
    out += std::to_string(e.j);
    out += ' ';
    append_real(out, inst.c(e));
    out += ' ';
    append_real(out, inst.u(e));
    out += '\n';
  });
  return out;
}

void write_instance(std::ostream& out, const Instance& inst) { out << serialize_instance(inst); }

// ---------------------------------------------------------------------------
// Generators

Instance gen_gap(int k, double eps) {
  if (k < 3) throw ParameterError("gen_gap: k must be at least 3");
  if (!(eps > 0.0 && eps < 0.5)) throw ParameterError("gen_gap: eps must lie in (0, 1/2)");

  const auto n = static_cast<std::size_t>(k) + 1;
  Instance inst(n, 1.0);
  inst.set_b(0, 1.0 - eps);
  for (Vertex v = 1; v < n; ++v) inst.set_b(v, eps);
  for_each_edge(n, [&](EdgeId e) { inst.set_edge(e, 0.0, e.i == 0 ? 0.5 : 1.0 - eps); });
  return inst;
}

Instance gen_random_euclidean(const EuclideanParams& p) {
  if (p.n < 1) throw ParameterError("gen_random_euclidean: n must be at least 1");
  if (!(p.gamma >= 0.0)) throw ParameterError("gen_random_euclidean: gamma must be nonnegative");
  if (!(p.load_scale >= 0.0)) throw ParameterError("gen_random_euclidean: load_scale must be nonnegative");
  if (!(p.b_max >= 0.0 && p.b_max < 1.0)) throw ParameterError("gen_random_euclidean: b_max must lie in [0, 1)");

  SplitMix64 rng(p.seed);
  std::vector<double> xs(p.n);
  std::vector<double> ys(p.n);
  for (std::size_t v = 0; v < p.n; ++v) {
    xs[v] = rng.next_unit();
    ys[v] = rng.next_unit();
  }

  Instance inst(p.n, p.gamma);
  for (Vertex v = 0; v < p.n; ++v) inst.set_b(v, p.b_max * rng.next_unit());
  for_each_edge(p.n, [&](EdgeId e) {
    const double dx = xs[e.i] - xs[e.j];
    const double dy = ys[e.i] - ys[e.j];
    const double dist = std::sqrt(dx * dx + dy * dy);
    inst.set_edge(e, dist, p.load_scale * dist);
  });
  return inst;
}

}  // namespace ctcp
