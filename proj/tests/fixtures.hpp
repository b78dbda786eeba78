#pragma once

// Reference instances. Measurement M_i maps to index i-1.

#include <vector>

#include "medil/graph.hpp"
#include "medil/mcm.hpp"

namespace medil::fixtures {

// Four measurements; M1 ⫫ M4 and M2 ⫫ M4, every other pair dependent.
inline UndirectedDependencyGraph four_udg() {
  return from_edge_list(4, {{0, 1}, {0, 2}, {1, 2}, {2, 3}});
}

inline std::vector<Clique> four_cover() { return {Clique{0, 1, 2}, Clique{2, 3}}; }

// Six-cycle M1..M6 plus the chord M2-M5: triangle-free, 7 edges.
inline UndirectedDependencyGraph cycle_udg() {
  return from_edge_list(6, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 0}, {1, 4}});
}

// Clique-minimum cover of the eight-measurement example with diverging
// objectives.
inline std::vector<Clique> eight_clique_minimum() {
  return {Clique{0, 1, 2, 4}, Clique{0, 3, 6}, Clique{1, 2, 4, 5, 7}, Clique{3, 5, 7},
          Clique{1, 2, 6, 7}};
}

// Assignment-minimum cover of the same graph.
inline std::vector<Clique> eight_assignment_minimum() {
  return {Clique{0, 4},          Clique{0, 1, 2, 6}, Clique{0, 3},
          Clique{1, 2, 4, 5, 7}, Clique{3, 5},       Clique{3, 6, 7}};
}

inline UndirectedDependencyGraph eight_udg() { return graph_from_cliques(8, eight_clique_minimum()); }

// L1 -> {M1, M2, M3}, L2 -> {M3, M4}.
inline MeDILCausalModel four_model() {
  return MeDILCausalModel::from_edges(4, 2, {{0, 0}, {0, 1}, {0, 2}, {1, 2}, {1, 3}});
}

// Two latents, each a parent of all four measurements.
inline MeDILCausalModel four_dense_model() {
  return MeDILCausalModel::from_edges(
      4, 2, {{0, 0}, {0, 1}, {0, 2}, {0, 3}, {1, 0}, {1, 1}, {1, 2}, {1, 3}});
}

}  // namespace medil::fixtures
