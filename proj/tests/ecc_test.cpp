#include <gtest/gtest.h>

#include <chrono>
#include <cstdint>
#include <vector>

#include "fixtures.hpp"
#include "medil/brute_force.hpp"
#include "medil/ecc.hpp"
#include "medil/generate.hpp"

namespace medil {
namespace {

std::vector<Clique> all_cliques_of(const UndirectedDependencyGraph& g) {
  std::vector<Clique> out;
  const std::size_t n = g.num_vertices();
  for (std::uint32_t mask = 1; mask < (1U << n); ++mask) {
    std::vector<Vertex> vs;
    for (Vertex v = 0; v < n; ++v)
      if (mask >> v & 1U) vs.push_back(v);
    if (vs.size() >= 2 && is_clique(g, vs)) out.emplace_back(vs);
  }
  return out;
}

TEST(MinCliqueEcc, ReferenceExamples) {
  auto four = min_clique_ecc(fixtures::four_udg());
  EXPECT_EQ(four.cliques, fixtures::four_cover());
  EXPECT_EQ(four.objective_value, 2U);
  EXPECT_EQ(four.objective, Objective::CliqueCount);

  auto cycle = min_clique_ecc(fixtures::cycle_udg());
  EXPECT_EQ(cycle.objective_value, 7U);
  for (const auto& c : cycle.cliques) EXPECT_EQ(c.size(), 2U);

  EXPECT_EQ(min_clique_ecc(complete_graph(4)).cliques, (std::vector<Clique>{Clique{0, 1, 2, 3}}));
  EXPECT_EQ(min_clique_ecc(fixtures::eight_udg()).objective_value, 5U);
}

TEST(MinCliqueEcc, EdgelessGraphGivesEmptyCover) {
  auto c = min_clique_ecc(from_edge_list(3, {}));
  EXPECT_TRUE(c.cliques.empty());
  EXPECT_EQ(c.objective_value, 0U);
  EXPECT_TRUE(min_assignment_ecc(UndirectedDependencyGraph(0)).cliques.empty());
}

TEST(EightMeasurementGraph, BothPublishedCoversInduceTheSameGraph) {
  EXPECT_EQ(graph_from_cliques(8, fixtures::eight_clique_minimum()),
            graph_from_cliques(8, fixtures::eight_assignment_minimum()));
}

TEST(MinAssignmentEcc, ReferenceExamples) {
  auto eight = min_assignment_ecc(fixtures::eight_udg());
  EXPECT_EQ(eight.objective_value, 18U);
  EXPECT_EQ(eight.cliques.size(), 6U);
  EXPECT_EQ(eight, make_cover(fixtures::eight_assignment_minimum(), Objective::AssignmentCount));

  auto four = min_assignment_ecc(fixtures::four_udg());
  EXPECT_EQ(four.cliques, fixtures::four_cover());
  EXPECT_EQ(four.objective_value, 5U);
}

TEST(MinAssignmentEcc, TriangleFreeUsesEdgeCliques) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    auto g = random_triangle_free(10, 0.5, seed);
    auto c = min_assignment_ecc(g);
    EXPECT_EQ(c.cliques.size(), g.num_edges());
    EXPECT_EQ(c.objective_value, 2 * g.num_edges());
  }
}

TEST(BruteForce, Examples) {
  EXPECT_EQ(brute_force_ecc(fixtures::four_udg(), Objective::CliqueCount).objective_value, 2U);
  EXPECT_EQ(brute_force_ecc(fixtures::cycle_udg(), Objective::AssignmentCount).objective_value,
            14U);
  auto single = from_edge_list(2, {{0, 1}});
  for (auto o : {Objective::CliqueCount, Objective::AssignmentCount})
    EXPECT_EQ(brute_force_ecc(single, o).cliques, (std::vector<Clique>{Clique{0, 1}}));
}

TEST(BruteForce, RefusesLargeGraphs) {
  EXPECT_THROW(brute_force_ecc(complete_graph(11), Objective::CliqueCount), InputError);
  EXPECT_THROW(brute_force_ecc(complete_graph(6), Objective::CliqueCount, 5), InputError);
}

TEST(BruteForce, EightMeasurementAssignmentOptimum) {
  auto bf = brute_force_ecc(fixtures::eight_udg(), Objective::AssignmentCount);
  EXPECT_EQ(bf.objective_value, 18U);
  EXPECT_EQ(bf, make_cover(fixtures::eight_assignment_minimum(), Objective::AssignmentCount));
  EXPECT_EQ(brute_force_ecc(fixtures::eight_udg(), Objective::CliqueCount).objective_value, 5U);
}

TEST(VerifyCover, Examples) {
  auto g = fixtures::four_udg();
  EXPECT_TRUE(verify_cover(g, make_cover(fixtures::four_cover(), Objective::CliqueCount)).ok());

  auto too_big = verify_cover(g, make_cover({Clique{0, 1, 2, 3}}, Objective::CliqueCount));
  EXPECT_FALSE(too_big.cliques_valid);
  EXPECT_FALSE(too_big.no_non_edges_covered);

  auto missing = verify_cover(g, make_cover({Clique{0, 1, 2}}, Objective::CliqueCount));
  EXPECT_TRUE(missing.cliques_valid);
  EXPECT_FALSE(missing.edges_covered);
}

TEST(VerifyCover, RedundancyObjectiveAndRange) {
  auto g = fixtures::four_udg();
  auto redundant =
      verify_cover(g, make_cover({Clique{0, 1, 2}, Clique{0, 1}, Clique{2, 3}},
                                 Objective::CliqueCount));
  EXPECT_FALSE(redundant.no_subset_redundancy);
  EXPECT_TRUE(redundant.edges_covered);

  auto wrong = make_cover(fixtures::four_cover(), Objective::AssignmentCount);
  wrong.objective_value = 4;
  EXPECT_FALSE(verify_cover(g, wrong).objective_matches);

  auto out_of_range = verify_cover(g, make_cover({Clique{2, 9}}, Objective::CliqueCount));
  EXPECT_FALSE(out_of_range.cliques_valid);
  EXPECT_FALSE(out_of_range.ok());
}

void check_cover_properties(const UndirectedDependencyGraph& g) {
  auto cc = min_clique_ecc(g);
  auto ac = min_assignment_ecc(g);
  const std::size_t n = g.num_vertices();
  ASSERT_TRUE(verify_cover(g, cc).ok());
  ASSERT_TRUE(verify_cover(g, ac).ok());
  EXPECT_EQ(cc.objective_value, brute_force_ecc(g, Objective::CliqueCount).objective_value);
  EXPECT_EQ(ac.objective_value, brute_force_ecc(g, Objective::AssignmentCount).objective_value);

  auto maximal = maximal_cliques(g);
  std::size_t maximal_edge_cliques = 0, maximal_sizes = 0;
  for (const auto& c : maximal)
    if (c.size() >= 2) {
      ++maximal_edge_cliques;
      maximal_sizes += c.size();
    }
  EXPECT_LE(cc.objective_value, maximal_edge_cliques);
  EXPECT_LE(ac.objective_value, maximal_sizes);
  EXPECT_GE(ac.cliques.size(), cc.objective_value);
  EXPECT_LE(4 * cc.objective_value, n * n);

  // Dropping any clique must uncover an edge.
  for (const auto* cover : {&cc, &ac})
    for (std::size_t k = 0; k < cover->cliques.size(); ++k) {
      auto rest = cover->cliques;
      rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(k));
      EXPECT_NE(graph_from_cliques(n, rest), g);
    }
}

TEST(EccProperties, AgreeWithBruteForceOnRandomGraphs) {
  std::uint64_t seed = 1000;
  for (std::size_t n = 3; n <= 8; ++n)
    for (double p : {0.2, 0.4, 0.6, 0.8})
      for (int rep = 0; rep < 2; ++rep) {
        SCOPED_TRACE("n=" + std::to_string(n) + " p=" + std::to_string(p));
        check_cover_properties(erdos_renyi(n, p, seed++));
      }
}

// Every alternative cover (any set of cliques covering g) costs at least the
// solver's optimum, for both objectives.
TEST(EccProperties, NoAlternativeCoverBeatsTheSolver) {
  std::uint64_t seed = 77;
  int checked = 0;
  while (checked < 25) {
    auto g = erdos_renyi(3 + seed % 5, 0.5, seed);
    ++seed;
    auto family = all_cliques_of(g);
    if (family.size() > 16) continue;
    ++checked;
    auto cc = min_clique_ecc(g).objective_value;
    auto ac = min_assignment_ecc(g).objective_value;
    for (std::uint32_t pick = 0; pick < (1U << family.size()); ++pick) {
      std::vector<Clique> alt;
      for (std::size_t k = 0; k < family.size(); ++k)
        if (pick >> k & 1U) alt.push_back(family[k]);
      if (graph_from_cliques(g.num_vertices(), alt) != g) continue;
      EXPECT_GE(objective_value(alt, Objective::CliqueCount), cc);
      EXPECT_GE(objective_value(alt, Objective::AssignmentCount), ac);
    }
  }
}

TEST(EccProperties, Deterministic) {
  auto g = erdos_renyi(18, 0.4, 5);
  EXPECT_EQ(min_clique_ecc(g), min_clique_ecc(g));
  EXPECT_EQ(min_assignment_ecc(g), min_assignment_ecc(g));
}

TEST(Budget, NodeLimitFailsLoudly) {
  auto g = erdos_renyi(40, 0.3, 3);
  SolverBudget budget;
  budget.node_limit = 1;
  try {
    auto c = min_clique_ecc(g, budget);
    // Only acceptable if the greedy cover was already proven optimal.
    EXPECT_TRUE(verify_cover(g, c).ok());
  } catch (const BudgetExceeded& e) {
    EXPECT_LE(e.lower_bound(), e.upper_bound());
    EXPECT_GT(e.upper_bound(), 0U);
  }
}

TEST(Budget, TimeLimitFailsLoudly) {
  auto g = erdos_renyi(61, 0.8, 3);
  SolverBudget budget;
  budget.time_limit = std::chrono::milliseconds(200);
  budget.node_limit = 200000;
  EXPECT_THROW(min_clique_ecc(g, budget), BudgetExceeded);
}

TEST(Fragile, ObjectivesDoubleAndHalve) {
  for (std::size_t n = 3; n <= 9; ++n) {
    auto pair = fragile_pair(n);
    EXPECT_EQ(min_clique_ecc(pair.graph).objective_value, 2 * (n - 2));
    EXPECT_EQ(min_clique_ecc(*pair.flipped).objective_value, n - 2);
  }
}

}  // namespace
}  // namespace medil
