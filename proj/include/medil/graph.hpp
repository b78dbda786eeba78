#pragma once

// Undirected dependency graphs over measurement variables, cliques, and
// maximal-clique enumeration.
//
// Vertices are 0-indexed: measurement M_i of the usual 1-indexed notation is
// vertex i-1.

#include <algorithm>
#include <compare>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "medil/bitset.hpp"
#include "medil/errors.hpp"

namespace medil {

using Vertex = std::size_t;
using Edge = std::pair<Vertex, Vertex>;

// Sorted, duplicate-free, non-empty vertex set.
class Clique {
 public:
  Clique() = default;
  Clique(std::initializer_list<Vertex> members)
      : Clique(std::vector<Vertex>(members)) {}
  explicit Clique(std::vector<Vertex> members) : members_(std::move(members)) {
    std::sort(members_.begin(), members_.end());
    members_.erase(std::unique(members_.begin(), members_.end()),
                   members_.end());
    if (members_.empty()) throw InputError("clique must have at least one member");
  }

  const std::vector<Vertex>& members() const noexcept { return members_; }
  std::size_t size() const noexcept { return members_.size(); }
  bool contains(Vertex v) const {
    return std::binary_search(members_.begin(), members_.end(), v);
  }
  bool is_subset_of(const Clique& other) const {
    return std::includes(other.members_.begin(), other.members_.end(),
                         members_.begin(), members_.end());
  }
  auto begin() const noexcept { return members_.begin(); }
  auto end() const noexcept { return members_.end(); }

  // Lexicographic on the sorted member lists.
  friend auto operator<=>(const Clique&, const Clique&) = default;
  friend bool operator==(const Clique&, const Clique&) = default;

 private:
  std::vector<Vertex> members_;
};

class UndirectedDependencyGraph {
 public:
  UndirectedDependencyGraph() = default;
  explicit UndirectedDependencyGraph(std::size_t num_vertices)
      : rows_(num_vertices, Bitset(num_vertices)) {}

  std::size_t num_vertices() const noexcept { return rows_.size(); }

  bool adjacent(Vertex u, Vertex v) const {
    check_vertex(u);
    check_vertex(v);
    return rows_[u].test(v);
  }
  const Bitset& neighbors(Vertex v) const {
    check_vertex(v);
    return rows_[v];
  }
  std::size_t degree(Vertex v) const { return neighbors(v).count(); }

  std::size_t num_edges() const {
    std::size_t twice = 0;
    for (const auto& r : rows_) twice += r.count();
    return twice / 2;
  }

  // Edges (u, v) with u < v in lexicographic order.
  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    for (Vertex u = 0; u < rows_.size(); ++u)
      for (std::size_t v = rows_[u].find_next(u + 1); v < rows_.size();
           v = rows_[u].find_next(v + 1))
        out.emplace_back(u, v);
    return out;
  }

  void add_edge(Vertex u, Vertex v) {
    check_vertex(u);
    check_vertex(v);
    if (u == v) throw InputError("self-loop on vertex " + std::to_string(u));
    rows_[u].set(v);
    rows_[v].set(u);
  }
  void remove_edge(Vertex u, Vertex v) {
    check_vertex(u);
    check_vertex(v);
    rows_[u].reset(v);
    rows_[v].reset(u);
  }

  const std::optional<std::vector<std::string>>& labels() const noexcept {
    return labels_;
  }
  void set_labels(std::vector<std::string> labels) {
    if (labels.size() != num_vertices())
      throw InputError("label count does not match vertex count");
    std::set<std::string> seen(labels.begin(), labels.end());
    if (seen.size() != labels.size()) throw InputError("vertex labels must be unique");
    labels_ = std::move(labels);
  }

  // Adjacency only; labels do not take part in equality.
  friend bool operator==(const UndirectedDependencyGraph& a,
                         const UndirectedDependencyGraph& b) {
    return a.rows_ == b.rows_;
  }

 private:
  void check_vertex(Vertex v) const {
    if (v >= rows_.size())
      throw InputError("vertex index " + std::to_string(v) + " out of range [0, " +
                       std::to_string(rows_.size()) + ")");
  }

  std::vector<Bitset> rows_;
  std::optional<std::vector<std::string>> labels_;
};

inline UndirectedDependencyGraph from_edge_list(std::size_t num_vertices,
                                                const std::vector<Edge>& edges) {
  UndirectedDependencyGraph g(num_vertices);
  for (const auto& [u, v] : edges) g.add_edge(u, v);
  return g;
}

// Complete graph K_n.
inline UndirectedDependencyGraph complete_graph(std::size_t n) {
  UndirectedDependencyGraph g(n);
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v) g.add_edge(u, v);
  return g;
}

// Union of all member pairs of the given cliques.
inline UndirectedDependencyGraph graph_from_cliques(std::size_t num_vertices,
                                                    const std::vector<Clique>& cliques) {
  UndirectedDependencyGraph g(num_vertices);
  for (const auto& c : cliques) {
    const auto& m = c.members();
    for (std::size_t a = 0; a < m.size(); ++a)
      for (std::size_t b = a + 1; b < m.size(); ++b) g.add_edge(m[a], m[b]);
  }
  return g;
}

template <typename Range>
bool is_clique(const UndirectedDependencyGraph& g, const Range& vertices) {
  std::vector<Vertex> vs(std::begin(vertices), std::end(vertices));
  for (Vertex v : vs)
    if (v >= g.num_vertices())
      throw InputError("vertex index " + std::to_string(v) + " out of range");
  for (std::size_t a = 0; a < vs.size(); ++a)
    for (std::size_t b = a + 1; b < vs.size(); ++b)
      if (vs[a] != vs[b] && !g.adjacent(vs[a], vs[b])) return false;
  return true;
}

inline bool is_clique(const UndirectedDependencyGraph& g,
                      std::initializer_list<Vertex> vertices) {
  return is_clique(g, std::vector<Vertex>(vertices));
}

namespace detail {

// Bron–Kerbosch with Tomita pivoting over bitset rows.
template <typename Emit>
void bron_kerbosch(const UndirectedDependencyGraph& g, std::vector<Vertex>& r,
                   Bitset p, Bitset x, Emit& emit) {
  if (p.none()) {
    if (x.none()) emit(r);
    return;
  }
  // Pivot maximizing |P ∩ N(u)| over u ∈ P ∪ X.
  std::size_t pivot = 0;
  std::size_t best = 0;
  bool have_pivot = false;
  auto consider = [&](std::size_t u) {
    std::size_t c = p.intersect_count(g.neighbors(u));
    if (!have_pivot || c > best) {
      best = c;
      pivot = u;
      have_pivot = true;
    }
  };
  p.for_each(consider);
  x.for_each(consider);

  Bitset candidates = p;
  candidates.subtract(g.neighbors(pivot));
  candidates.for_each([&](std::size_t v) {
    r.push_back(v);
    bron_kerbosch(g, r, p & g.neighbors(v), x & g.neighbors(v), emit);
    r.pop_back();
    p.reset(v);
    x.set(v);
  });
}

}  // namespace detail

// All inclusion-maximal cliques in lexicographic order. Isolated vertices
// come out as singletons.
inline std::vector<Clique> maximal_cliques(const UndirectedDependencyGraph& g) {
  const std::size_t n = g.num_vertices();
  std::vector<Clique> out;
  if (n == 0) return out;
  std::vector<Vertex> r;
  Bitset p(n);
  for (Vertex v = 0; v < n; ++v) p.set(v);
  auto emit = [&](const std::vector<Vertex>& members) { out.emplace_back(members); };
  detail::bron_kerbosch(g, r, p, Bitset(n), emit);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace medil
