#pragma once

// Seeded instance generators for tests, benchmarks and the CLI.

#include <cstdint>
#include <algorithm>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "medil/graph.hpp"

namespace medil {

enum class InstanceKind { ErdosRenyi, TriangleFree, FragileFootnote };

struct InstanceParams {
  std::size_t num_vertices = 0;
  // Edge probability (ErdosRenyi) or edge attempt probability (TriangleFree).
  double edge_probability = 0.5;
};

// `graph` is the requested instance. For FragileFootnote, `graph` is the
// triangle-free member of the pair (2(n-2) edge cliques) and `flipped` the
// same graph plus the single hub edge (n-2 triangles).
struct GeneratedInstance {
  UndirectedDependencyGraph graph;
  std::optional<UndirectedDependencyGraph> flipped;
};

inline UndirectedDependencyGraph erdos_renyi(std::size_t n, double p, std::uint64_t seed) {
  if (!(p >= 0.0 && p <= 1.0)) throw InputError("edge probability must lie in [0, 1]");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  UndirectedDependencyGraph g(n);
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v)
      if (unit(rng) < p) g.add_edge(u, v);
  return g;
}

// Visits vertex pairs in a seeded random order and keeps each with
// probability p unless it would close a triangle.
inline UndirectedDependencyGraph random_triangle_free(std::size_t n, double p,
                                                      std::uint64_t seed) {
  if (!(p >= 0.0 && p <= 1.0)) throw InputError("edge probability must lie in [0, 1]");
  std::mt19937_64 rng(seed);
  std::vector<Edge> pairs;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v) pairs.emplace_back(u, v);
  std::shuffle(pairs.begin(), pairs.end(), rng);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  UndirectedDependencyGraph g(n);
  for (const auto& [u, v] : pairs) {
    if (!(unit(rng) < p)) continue;
    if (g.neighbors(u).intersects(g.neighbors(v))) continue;
    g.add_edge(u, v);
  }
  return g;
}

// Two hubs (0 and 1) joined to every other vertex. Without the hub edge the
// graph is K_{2,n-2}: 2(n-2) maximal cliques, all edges. Adding the hub edge
// turns them into n-2 triangles.
inline GeneratedInstance fragile_pair(std::size_t n) {
  if (n < 3) throw InputError("fragile instance needs n >= 3");
  UndirectedDependencyGraph sparse(n);
  for (Vertex v = 2; v < n; ++v) {
    sparse.add_edge(0, v);
    sparse.add_edge(1, v);
  }
  UndirectedDependencyGraph dense = sparse;
  dense.add_edge(0, 1);
  return {std::move(sparse), std::move(dense)};
}

inline GeneratedInstance generate_instance(InstanceKind kind, const InstanceParams& params,
                                           std::uint64_t seed) {
  switch (kind) {
    case InstanceKind::ErdosRenyi:
      return {erdos_renyi(params.num_vertices, params.edge_probability, seed), std::nullopt};
    case InstanceKind::TriangleFree:
      return {random_triangle_free(params.num_vertices, params.edge_probability, seed),
              std::nullopt};
    case InstanceKind::FragileFootnote:
      return fragile_pair(params.num_vertices);
  }
  throw InputError("unknown instance kind");
}

}  // namespace medil
