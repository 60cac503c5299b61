#include "ctcp/rounding.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "ctcp/errors.hpp"
#include "text_format.hpp"

namespace ctcp {
namespace {

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), Vertex{0}); }

  Vertex find(Vertex v) {
    while (parent_[v] != v) {
      parent_[v] = parent_[parent_[v]];
      v = parent_[v];
    }
    return v;
  }

  bool unite(Vertex a, Vertex b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent_[std::max(a, b)] = std::min(a, b);
    return true;
  }

 private:
  std::vector<Vertex> parent_;
};

}  // namespace

Forest make_forest(std::size_t n, std::vector<EdgeId> edges) {
  std::sort(edges.begin(), edges.end());
  DisjointSets sets(n);
  for (const EdgeId& e : edges) {
    if (!(e.i < e.j && e.j < n)) throw MalformedForest("edge endpoint out of range");
    if (!sets.unite(e.i, e.j)) {
      throw MalformedForest("edge (" + std::to_string(e.i) + "," + std::to_string(e.j) + ") closes a cycle");
    }
  }

  Forest forest;
  std::vector<std::size_t> slot(n, n);
  for (Vertex v = 0; v < n; ++v) {
    const Vertex root = sets.find(v);
    if (slot[root] == n) {
      slot[root] = forest.components.size();
      forest.components.emplace_back();
    }
    forest.components[slot[root]].vertices.push_back(v);
  }
  for (const EdgeId& e : edges) forest.components[slot[sets.find(e.i)]].edges.push_back(e);
  forest.edges = std::move(edges);
  return forest;
}

Forest round_edges(const Instance& inst, const LpSolution& lp, double alpha) {
  if (!(alpha > 0.0 && alpha <= 1.0)) throw AlphaRange("alpha must lie in (0, 1]");
  std::vector<EdgeId> kept;
  for (const EdgeValue& ev : lp.x) {
    if (ev.value >= alpha - kRoundTolerance) kept.push_back(ev.edge);
  }
  return make_forest(inst.vertex_count(), std::move(kept));
}

double tree_load(const Instance& inst, const Component& tree) {
  double load = 0.0;
  for (Vertex v : tree.vertices) load += inst.b(v);
  for (const EdgeId& e : tree.edges) load += inst.u(e);
  return load;
}

namespace {

// Working tree of the splitting procedure. `bound` is the bookkeeping upper
// bound l(T); `actual` is the exact load of the vertices and edges it owns.
struct WorkTree {
  std::vector<Vertex> vertices;
  std::vector<EdgeId> edges;
  double bound = 0.0;
  double actual = 0.0;
  Vertex port = 0;
  bool alive = true;
};

struct Item {
  std::size_t tree;
  double weight;
};

struct Bin {
  std::vector<Item> items;
  double weight = 0.0;
};

std::vector<Bin> first_fit(const std::vector<Item>& items) {
  std::vector<Bin> bins;
  for (const Item& item : items) {
    auto fits = std::find_if(bins.begin(), bins.end(), [&](const Bin& bin) {
      return bin.weight + item.weight <= 1.0 + kRoundTolerance;
    });
    if (fits == bins.end()) {
      bins.emplace_back();
      fits = std::prev(bins.end());
    }
    fits->items.push_back(item);
    fits->weight += item.weight;
  }
  return bins;
}

}  // namespace

SplitResult split_tree(const Instance& inst, const Component& tree) {
  if (tree.vertices.size() <= 1 || tree_load(inst, tree) <= 1.0 + kRoundTolerance) {
    return {{tree}, 0};
  }

  // Local ids follow ascending vertex order, so local 0 is the root.
  std::vector<Vertex> vertices = tree.vertices;
  std::sort(vertices.begin(), vertices.end());
  const std::size_t size = vertices.size();
  auto local = [&](Vertex v) {
    return static_cast<std::size_t>(std::lower_bound(vertices.begin(), vertices.end(), v) - vertices.begin());
  };

  std::vector<std::vector<std::size_t>> adjacent(size);
  for (const EdgeId& e : tree.edges) {
    adjacent[local(e.i)].push_back(local(e.j));
    adjacent[local(e.j)].push_back(local(e.i));
  }

  // Preorder from the root; children sorted by vertex id.
  std::vector<std::size_t> parent(size, size);
  std::vector<std::vector<std::size_t>> children(size);
  std::vector<std::size_t> preorder;
  preorder.reserve(size);
  std::vector<std::size_t> stack{0};
  parent[0] = 0;
  while (!stack.empty()) {
    const std::size_t v = stack.back();
    stack.pop_back();
    preorder.push_back(v);
    for (std::size_t w : adjacent[v]) {
      if (parent[w] != size) continue;
      parent[w] = v;
      children[v].push_back(w);
    }
    std::sort(children[v].begin(), children[v].end());
    for (auto it = children[v].rbegin(); it != children[v].rend(); ++it) stack.push_back(*it);
  }
  if (preorder.size() != size) throw MalformedForest("split_tree: component is not connected");

  std::vector<WorkTree> trees;
  trees.reserve(2 * size);
  std::vector<std::size_t> tree_of(size);
  for (std::size_t v = 0; v < size; ++v) {
    const double b = inst.b(vertices[v]);
    trees.push_back({{vertices[v]}, {}, b, b, vertices[v], true});
    tree_of[v] = v;
  }

  std::size_t overflows = 0;
  for (auto it = preorder.rbegin(); it != preorder.rend(); ++it) {
    const std::size_t v = *it;
    if (children[v].empty()) continue;

    std::vector<Item> items{{tree_of[v], trees[tree_of[v]].bound}};
    for (std::size_t c : children[v]) {
      items.push_back({tree_of[c], trees[tree_of[c]].bound + inst.u(vertices[v], vertices[c])});
    }
    std::vector<Bin> bins = first_fit(items);
    std::stable_sort(bins.begin(), bins.end(), [](const Bin& a, const Bin& b) { return a.weight > b.weight; });

    std::size_t last_tree = 0;
    for (const Bin& bin : bins) {
      const std::size_t first = bin.items.front().tree;
      last_tree = first;
      if (bin.items.size() == 1) continue;

      // Star of direct edges from the first item's port to every other port.
      const Vertex center = trees[first].port;
      double actual = 0.0;
      for (const Item& item : bin.items) {
        actual += trees[item.tree].actual;
        if (item.tree != first) actual += inst.u(center, trees[item.tree].port);
      }
      if (actual > 1.0 + kRoundTolerance) {
        ++overflows;
        continue;
      }

      WorkTree joined;
      joined.bound = bin.weight;
      joined.actual = actual;
      joined.port = center;
      for (const Item& item : bin.items) {
        WorkTree& member = trees[item.tree];
        joined.vertices.insert(joined.vertices.end(), member.vertices.begin(), member.vertices.end());
        joined.edges.insert(joined.edges.end(), member.edges.begin(), member.edges.end());
        if (item.tree != first) joined.edges.push_back(make_edge(center, member.port));
        member.alive = false;
      }
      trees.push_back(std::move(joined));
      last_tree = trees.size() - 1;
    }
    tree_of[v] = last_tree;
  }

  SplitResult result;
  result.overflows = overflows;
  for (WorkTree& t : trees) {
    if (!t.alive) continue;
    std::sort(t.vertices.begin(), t.vertices.end());
    std::sort(t.edges.begin(), t.edges.end());
    result.parts.push_back({std::move(t.vertices), std::move(t.edges)});
  }
  std::sort(result.parts.begin(), result.parts.end(),
            [](const Component& a, const Component& b) { return a.vertices.front() < b.vertices.front(); });
  return result;
}

Solution solve(const Instance& inst, double alpha) {
  if (!(alpha > 0.0 && alpha <= 1.0)) throw AlphaRange("alpha must lie in (0, 1]");
  const LpSolution lp = solve_lp(inst);
  const Forest rounded = round_edges(inst, lp, alpha);

  Solution sol;
  std::vector<EdgeId> edges;
  for (const Component& component : rounded.components) {
    SplitResult split = split_tree(inst, component);
    sol.split_overflows += split.overflows;
    for (const Component& part : split.parts) edges.insert(edges.end(), part.edges.begin(), part.edges.end());
  }
  sol.forest = make_forest(inst.vertex_count(), std::move(edges));
  sol.k = sol.forest.components.size();
  sol.cost = solution_cost(inst, sol);
  return sol;
}

double solution_cost(const Instance& inst, const Solution& sol) {
  const std::size_t n = inst.vertex_count();
  std::vector<bool> covered(n, false);
  std::size_t edge_total = 0;
  double cost = 0.0;
  for (const Component& component : sol.forest.components) {
    if (component.vertices.empty()) throw MalformedForest("empty component");
    for (Vertex v : component.vertices) {
      if (v >= n || covered[v]) throw MalformedForest("components do not partition the vertex set");
      covered[v] = true;
    }
    if (component.edges.size() + 1 != component.vertices.size()) {
      throw MalformedForest("component edge count does not match a spanning tree");
    }
    for (const EdgeId& e : component.edges) cost += inst.c(e);
    edge_total += component.edges.size();
  }
  if (std::find(covered.begin(), covered.end(), false) != covered.end()) {
    throw MalformedForest("components do not cover every vertex");
  }
  if (edge_total != sol.forest.edges.size()) throw MalformedForest("forest edge list disagrees with components");

  // Spanning check: each component's edges must connect exactly its vertices.
  DisjointSets sets(n);
  for (const Component& component : sol.forest.components) {
    std::vector<bool> inside(n, false);
    for (Vertex v : component.vertices) inside[v] = true;
    for (const EdgeId& e : component.edges) {
      if (e.j >= n || !inside[e.i] || !inside[e.j]) throw MalformedForest("edge leaves its component");
      if (!sets.unite(e.i, e.j)) throw MalformedForest("component contains a cycle");
    }
  }
  return cost + inst.gamma() * static_cast<double>(sol.forest.components.size());
}

std::string format_solution(const Instance& inst, const Solution& sol) {
  std::ostringstream out;
  out << "k " << sol.k << '\n';
  out << "cost " << detail::fixed6(sol.cost) << '\n';
  for (std::size_t t = 0; t < sol.forest.components.size(); ++t) {
    const Component& component = sol.forest.components[t];
    out << "tree " << t << " load " << detail::fixed6(tree_load(inst, component)) << '\n';
    out << "vertices";
    for (Vertex v : component.vertices) out << ' ' << v;
    out << '\n';
    for (const EdgeId& e : component.edges) out << "edge " << e.i << ' ' << e.j << '\n';
  }
  return out.str();
}

}  // namespace ctcp
