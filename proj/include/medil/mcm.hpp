#pragma once

// MeDIL causal models: bipartite DAGs with latents pointing into
// measurements, built from edge clique covers. Also a small general DAG type
// with a d-separation test, used to check the structural claims.

#include <algorithm>
#include <deque>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "medil/bitset.hpp"
#include "medil/ecc.hpp"
#include "medil/errors.hpp"
#include "medil/graph.hpp"

namespace medil {

// Latents are rows, measurements columns. The representation rules out
// latent-latent and measurement-measurement edges; the remaining structural
// constraints (degrees) are reported by validate_mcm rather than enforced, so
// malformed models read from disk can still be diagnosed.
class MeDILCausalModel {
 public:
  MeDILCausalModel() = default;
  MeDILCausalModel(std::size_t num_measurements, std::vector<Bitset> children)
      : num_measurements_(num_measurements), children_(std::move(children)) {
    for (const auto& row : children_)
      if (row.size() != num_measurements_)
        throw InputError("latent row length does not match measurement count");
  }

  static MeDILCausalModel from_edges(std::size_t num_measurements, std::size_t num_latents,
                                     const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
    std::vector<Bitset> rows(num_latents, Bitset(num_measurements));
    for (const auto& [a, b] : edges) {
      if (a >= num_latents || b >= num_measurements)
        throw InputError("model edge (" + std::to_string(a) + ", " + std::to_string(b) +
                         ") out of range");
      rows[a].set(b);
    }
    return MeDILCausalModel(num_measurements, std::move(rows));
  }

  std::size_t num_measurements() const noexcept { return num_measurements_; }
  std::size_t num_latents() const noexcept { return children_.size(); }

  bool has_edge(std::size_t latent, std::size_t measurement) const {
    check(latent, measurement);
    return children_[latent].test(measurement);
  }
  const Bitset& children(std::size_t latent) const {
    if (latent >= children_.size()) throw InputError("latent index out of range");
    return children_[latent];
  }
  std::vector<std::size_t> parents(std::size_t measurement) const {
    if (measurement >= num_measurements_) throw InputError("measurement index out of range");
    std::vector<std::size_t> out;
    for (std::size_t a = 0; a < children_.size(); ++a)
      if (children_[a].test(measurement)) out.push_back(a);
    return out;
  }
  std::size_t num_edges() const {
    std::size_t total = 0;
    for (const auto& row : children_) total += row.count();
    return total;
  }
  // (latent, measurement) pairs, latent-major.
  std::vector<std::pair<std::size_t, std::size_t>> edges() const {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t a = 0; a < children_.size(); ++a)
      children_[a].for_each([&](std::size_t b) { out.emplace_back(a, b); });
    return out;
  }

  const std::optional<std::vector<std::string>>& measurement_labels() const noexcept {
    return measurement_labels_;
  }
  void set_measurement_labels(std::vector<std::string> labels) {
    if (labels.size() != num_measurements_)
      throw InputError("measurement label count does not match");
    measurement_labels_ = std::move(labels);
  }
  const std::optional<std::vector<std::string>>& latent_labels() const noexcept {
    return latent_labels_;
  }
  void set_latent_labels(std::vector<std::string> labels) {
    if (labels.size() != children_.size()) throw InputError("latent label count does not match");
    latent_labels_ = std::move(labels);
  }

  std::string measurement_name(std::size_t b) const {
    if (b >= num_measurements_) throw InputError("measurement index out of range");
    return measurement_labels_ ? (*measurement_labels_)[b] : "M" + std::to_string(b + 1);
  }
  // "L{index}:{children}", e.g. "L1:M1,M2,M3", unless labels were given.
  std::string latent_name(std::size_t a) const {
    if (a >= children_.size()) throw InputError("latent index out of range");
    if (latent_labels_) return (*latent_labels_)[a];
    std::string s = "L" + std::to_string(a + 1) + ":";
    bool first = true;
    children_[a].for_each([&](std::size_t b) {
      if (!first) s += ",";
      s += measurement_name(b);
      first = false;
    });
    return s;
  }

  // Structure only; labels are ignored.
  friend bool operator==(const MeDILCausalModel& x, const MeDILCausalModel& y) {
    return x.num_measurements_ == y.num_measurements_ && x.children_ == y.children_;
  }

 private:
  void check(std::size_t latent, std::size_t measurement) const {
    if (latent >= children_.size() || measurement >= num_measurements_)
      throw InputError("model index out of range");
  }

  std::size_t num_measurements_ = 0;
  std::vector<Bitset> children_;
  std::optional<std::vector<std::string>> measurement_labels_;
  std::optional<std::vector<std::string>> latent_labels_;
};

// One latent per clique plus an exclusive latent for every measurement no
// clique mentions. Latents are ordered by their (sorted) child lists.
inline MeDILCausalModel build_mcm(const std::vector<Clique>& cliques,
                                  std::size_t num_measurements) {
  std::vector<std::vector<Vertex>> groups;
  Bitset covered(num_measurements);
  for (const auto& c : cliques) {
    for (Vertex v : c)
      if (v >= num_measurements)
        throw InputError("clique member " + std::to_string(v) + " out of range for " +
                         std::to_string(num_measurements) + " measurements");
    groups.push_back(c.members());
    for (Vertex v : c) covered.set(v);
  }
  for (Vertex v = 0; v < num_measurements; ++v)
    if (!covered.test(v)) groups.push_back({v});
  std::sort(groups.begin(), groups.end());

  std::vector<Bitset> rows;
  for (const auto& grp : groups) {
    Bitset row(num_measurements);
    for (Vertex v : grp) row.set(v);
    rows.push_back(std::move(row));
  }
  return MeDILCausalModel(num_measurements, std::move(rows));
}

inline MeDILCausalModel build_mcm(const EdgeCliqueCover& cover, std::size_t num_measurements) {
  return build_mcm(cover.cliques, num_measurements);
}

// Measurements i and j are adjacent iff some latent parents both.
inline UndirectedDependencyGraph induced_udg(const MeDILCausalModel& m) {
  UndirectedDependencyGraph g(m.num_measurements());
  for (std::size_t a = 0; a < m.num_latents(); ++a) {
    auto kids = m.children(a).to_vector();
    for (std::size_t x = 0; x < kids.size(); ++x)
      for (std::size_t y = x + 1; y < kids.size(); ++y) g.add_edge(kids[x], kids[y]);
  }
  if (m.measurement_labels()) g.set_labels(*m.measurement_labels());
  return g;
}

// Induces exactly g: every dependence of g and nothing more.
inline bool is_observationally_consistent(const MeDILCausalModel& m,
                                          const UndirectedDependencyGraph& g) {
  if (m.num_measurements() != g.num_vertices())
    throw InputError("model and graph disagree on the number of measurements");
  return induced_udg(m) == g;
}

// Induces every dependence of g, possibly with extra ones.
inline bool induces_superset_of(const MeDILCausalModel& m, const UndirectedDependencyGraph& g) {
  if (m.num_measurements() != g.num_vertices())
    throw InputError("model and graph disagree on the number of measurements");
  const auto induced = induced_udg(m);
  for (const auto& [u, v] : g.edges())
    if (!induced.adjacent(u, v)) return false;
  return true;
}

class GeneralDag {
 public:
  GeneralDag(std::size_t num_vertices, const std::vector<std::pair<std::size_t, std::size_t>>& edges)
      : parents_(num_vertices), children_(num_vertices) {
    for (const auto& [u, v] : edges) {
      if (u >= num_vertices || v >= num_vertices) throw InputError("DAG edge out of range");
      if (u == v) throw InputError("DAG edge is a self-loop");
      children_[u].push_back(v);
      parents_[v].push_back(u);
    }
    for (auto& p : parents_) {
      std::sort(p.begin(), p.end());
      p.erase(std::unique(p.begin(), p.end()), p.end());
    }
    for (auto& c : children_) {
      std::sort(c.begin(), c.end());
      c.erase(std::unique(c.begin(), c.end()), c.end());
    }
    // Kahn's algorithm.
    std::vector<std::size_t> indeg(num_vertices);
    std::vector<std::size_t> ready;
    for (std::size_t v = 0; v < num_vertices; ++v)
      if ((indeg[v] = parents_[v].size()) == 0) ready.push_back(v);
    std::size_t seen = 0;
    while (!ready.empty()) {
      std::size_t v = ready.back();
      ready.pop_back();
      ++seen;
      for (std::size_t c : children_[v])
        if (--indeg[c] == 0) ready.push_back(c);
    }
    if (seen != num_vertices) throw InputError("graph has a directed cycle");
  }

  std::size_t num_vertices() const noexcept { return parents_.size(); }
  const std::vector<std::size_t>& parents(std::size_t v) const { return parents_.at(v); }
  const std::vector<std::size_t>& children(std::size_t v) const { return children_.at(v); }

 private:
  std::vector<std::vector<std::size_t>> parents_;
  std::vector<std::vector<std::size_t>> children_;
};

// Measurements keep their indices; latent a becomes vertex num_measurements + a.
inline GeneralDag to_dag(const MeDILCausalModel& m) {
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (const auto& [a, b] : m.edges()) edges.emplace_back(m.num_measurements() + a, b);
  return GeneralDag(m.num_measurements() + m.num_latents(), edges);
}

// Reachability ("Bayes ball") form of d-separation.
inline bool d_separated(const GeneralDag& dag, std::size_t i, std::size_t j,
                        const std::vector<std::size_t>& given) {
  const std::size_t n = dag.num_vertices();
  if (i >= n || j >= n) throw InputError("vertex out of range");
  if (i == j) throw InputError("d-separation needs two distinct vertices");
  std::vector<char> in_given(n, 0);
  for (std::size_t z : given) {
    if (z >= n) throw InputError("conditioning vertex out of range");
    if (z == i || z == j) throw InputError("endpoints may not be conditioned on");
    in_given[z] = 1;
  }
  // Conditioned vertices and their ancestors: colliders there are open.
  std::vector<char> opens(n, 0);
  std::vector<std::size_t> stack(given.begin(), given.end());
  while (!stack.empty()) {
    std::size_t v = stack.back();
    stack.pop_back();
    if (opens[v]) continue;
    opens[v] = 1;
    for (std::size_t p : dag.parents(v)) stack.push_back(p);
  }

  // State: (vertex, arrived from a child = going up / from a parent = down).
  std::vector<char> seen_up(n, 0), seen_down(n, 0);
  std::deque<std::pair<std::size_t, bool>> queue{{i, true}};
  while (!queue.empty()) {
    auto [v, up] = queue.front();
    queue.pop_front();
    if (up ? seen_up[v] : seen_down[v]) continue;
    (up ? seen_up : seen_down)[v] = 1;
    if (v == j) return false;
    if (up) {
      if (in_given[v]) continue;
      for (std::size_t p : dag.parents(v)) queue.emplace_back(p, true);
      for (std::size_t c : dag.children(v)) queue.emplace_back(c, false);
    } else {
      if (!in_given[v])
        for (std::size_t c : dag.children(v)) queue.emplace_back(c, false);
      if (opens[v])
        for (std::size_t p : dag.parents(v)) queue.emplace_back(p, true);
    }
  }
  return true;
}

struct McmValidation {
  bool measurement_indegree = true;   // every measurement has a latent parent
  bool measurement_outdegree = true;  // no measurement has children
  bool latent_outdegree = true;       // every latent has a child
  bool acyclic = true;
  bool latents_parentless = true;     // latents mutually d-separated given nothing
  std::vector<std::string> problems;

  bool ok() const {
    return measurement_indegree && measurement_outdegree && latent_outdegree && acyclic &&
           latents_parentless;
  }
};

inline McmValidation validate_mcm(const MeDILCausalModel& m) {
  McmValidation r;
  std::vector<std::size_t> indeg(m.num_measurements(), 0);
  for (std::size_t a = 0; a < m.num_latents(); ++a) {
    const auto& kids = m.children(a);
    if (kids.none()) {
      r.latent_outdegree = false;
      r.problems.push_back(m.latent_name(a) + " has no children");
    }
    kids.for_each([&](std::size_t b) { ++indeg[b]; });
  }
  for (std::size_t b = 0; b < m.num_measurements(); ++b)
    if (indeg[b] == 0) {
      r.measurement_indegree = false;
      r.problems.push_back(m.measurement_name(b) + " has no latent parent");
    }

  try {
    const auto dag = to_dag(m);
    const std::size_t n = m.num_measurements();
    for (std::size_t b = 0; b < n; ++b)
      if (!dag.children(b).empty()) {
        r.measurement_outdegree = false;
        r.problems.push_back(m.measurement_name(b) + " has children");
      }
    for (std::size_t a = 0; a < m.num_latents(); ++a)
      if (!dag.parents(n + a).empty()) {
        r.latents_parentless = false;
        r.problems.push_back(m.latent_name(a) + " has a parent");
      }
  } catch (const InputError& e) {
    r.acyclic = false;
    r.problems.push_back(e.what());
  }
  return r;
}

}  // namespace medil
