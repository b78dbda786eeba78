#pragma once

// Exhaustive minimum edge clique cover for small graphs. Shares no code with
// the branch-and-bound solvers so it can serve as their oracle: cliques come
// from plain subset enumeration, edges are 64-bit masks, and ties between
// optimal covers are resolved to the lexicographically least cover.

#include <bit>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "medil/ecc.hpp"
#include "medil/graph.hpp"

namespace medil {

inline constexpr std::size_t kBruteForceMaxVertices = 10;

inline EdgeCliqueCover brute_force_ecc(const UndirectedDependencyGraph& g, Objective objective,
                                       std::size_t max_vertices = kBruteForceMaxVertices) {
  const std::size_t n = g.num_vertices();
  if (n > max_vertices || n > 11)
    throw InputError("brute force refused: " + std::to_string(n) + " vertices exceeds cap " +
                     std::to_string(max_vertices));

  const auto edge_list = g.edges();
  const std::size_t m = edge_list.size();
  if (m == 0) return make_cover({}, objective);

  std::vector<std::vector<int>> edge_id(n, std::vector<int>(n, -1));
  for (std::size_t e = 0; e < m; ++e) {
    edge_id[edge_list[e].first][edge_list[e].second] = static_cast<int>(e);
    edge_id[edge_list[e].second][edge_list[e].first] = static_cast<int>(e);
  }

  struct Candidate {
    std::vector<Vertex> members;
    std::uint64_t edges = 0;
    std::size_t cost = 0;
  };
  std::vector<Candidate> cands;
  for (std::uint32_t mask = 1; mask < (1U << n); ++mask) {
    if (std::popcount(mask) < 2) continue;
    Candidate c;
    bool ok = true;
    for (Vertex u = 0; u < n && ok; ++u) {
      if (!(mask >> u & 1U)) continue;
      c.members.push_back(u);
      for (Vertex v = u + 1; v < n; ++v) {
        if (!(mask >> v & 1U)) continue;
        if (edge_id[u][v] < 0) {
          ok = false;
          break;
        }
        c.edges |= std::uint64_t{1} << edge_id[u][v];
      }
    }
    if (!ok) continue;
    c.cost = objective == Objective::CliqueCount ? 1 : c.members.size();
    cands.push_back(std::move(c));
  }

  // Best cost-per-edge ratio over all candidates, for a simple bound.
  double best_ratio = 1e300;
  for (const auto& c : cands)
    best_ratio = std::min(best_ratio, static_cast<double>(c.cost) /
                                          static_cast<double>(std::popcount(c.edges)));

  std::vector<std::vector<std::size_t>> through(m);
  for (std::size_t k = 0; k < cands.size(); ++k)
    for (std::size_t e = 0; e < m; ++e)
      if (cands[k].edges >> e & 1U) through[e].push_back(k);

  const std::uint64_t all = m == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << m) - 1;
  std::optional<std::vector<Clique>> best;
  std::size_t best_cost = SIZE_MAX;
  std::vector<std::size_t> chosen;

  auto canonical = [&](const std::vector<std::size_t>& ids) {
    std::vector<Clique> out;
    for (std::size_t k : ids) out.emplace_back(cands[k].members);
    std::sort(out.begin(), out.end());
    return out;
  };

  auto dfs = [&](auto&& self, std::uint64_t covered, std::size_t cost) -> void {
    if (covered == all) {
      auto cover = canonical(chosen);
      if (cost < best_cost || (cost == best_cost && cover < *best)) {
        best_cost = cost;
        best = std::move(cover);
      }
      return;
    }
    const double remaining = static_cast<double>(std::popcount(all & ~covered));
    const auto bound = static_cast<std::size_t>(std::ceil(remaining * best_ratio - 1e-9));
    if (cost + bound > best_cost) return;
    const int e = std::countr_zero(all & ~covered);
    for (std::size_t k : through[static_cast<std::size_t>(e)]) {
      chosen.push_back(k);
      self(self, covered | cands[k].edges, cost + cands[k].cost);
      chosen.pop_back();
    }
  };
  dfs(dfs, 0, 0);
  return make_cover(std::move(*best), objective);
}

}  // namespace medil
