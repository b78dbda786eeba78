#pragma once

// Small named structures used by `medil simulate`.

#include <string>

#include "medil/ecc.hpp"
#include "medil/errors.hpp"
#include "medil/mcm.hpp"

namespace medil::reference {

// Four measurements; L1 -> {M1, M2, M3}, L2 -> {M3, M4}.
inline MeDILCausalModel four_measurement_model() {
  return MeDILCausalModel::from_edges(4, 2, {{0, 0}, {0, 1}, {0, 2}, {1, 2}, {1, 3}});
}

// Six-cycle plus one chord: every edge needs its own latent, 7 latents for
// 6 measurements.
inline MeDILCausalModel cycle_with_chord_model() {
  auto g = from_edge_list(6, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 0}, {1, 4}});
  return build_mcm(min_clique_ecc(g), 6);
}

inline MeDILCausalModel by_name(const std::string& name) {
  if (name == "four") return four_measurement_model();
  if (name == "cycle") return cycle_with_chord_model();
  throw InputError("unknown structure '" + name + "'");
}

}  // namespace medil::reference
