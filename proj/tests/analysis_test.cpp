#include <gtest/gtest.h>

#include <cstdint>
#include <numeric>
#include <vector>

#include "fixtures.hpp"
#include "medil/analysis.hpp"
#include "medil/generate.hpp"
#include "medil/independence.hpp"

namespace medil {
namespace {

std::size_t weighted_total(const Histogram& h) {
  std::size_t total = 0;
  for (const auto& [k, c] : h) total += k * c;
  return total;
}

TEST(Histograms, Examples) {
  const auto four = fixtures::four_model();
  EXPECT_EQ(indegree_histogram(four), (Histogram{{1, 3}, {2, 1}}));
  EXPECT_EQ(outdegree_histogram(four), (Histogram{{2, 1}, {3, 1}}));

  const auto cycle = build_mcm(min_clique_ecc(fixtures::cycle_udg()), 6);
  // The chord endpoints lie in three edge cliques, the rest in two.
  EXPECT_EQ(indegree_histogram(cycle), (Histogram{{2, 4}, {3, 2}}));
  EXPECT_EQ(outdegree_histogram(cycle), (Histogram{{2, 7}}));

  EXPECT_EQ(indegree_histogram(build_mcm(std::vector<Clique>{}, 3)), (Histogram{{1, 3}}));
  EXPECT_EQ(outdegree_histogram(build_mcm(std::vector<Clique>{Clique{0, 1, 2, 3}}, 4)),
            (Histogram{{4, 1}}));
}

TEST(Histograms, TotalsMatchEdgeCount) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    auto g = erdos_renyi(9, 0.4, seed);
    auto m = build_mcm(min_clique_ecc(g), 9);
    const auto in = indegree_histogram(m), out = outdegree_histogram(m);
    EXPECT_EQ(weighted_total(in), m.num_edges());
    EXPECT_EQ(weighted_total(out), m.num_edges());
    std::size_t measurements = 0, latents = 0;
    for (const auto& [k, c] : in) measurements += c;
    for (const auto& [k, c] : out) latents += c;
    EXPECT_EQ(measurements, m.num_measurements());
    EXPECT_EQ(latents, m.num_latents());
  }
}

TEST(SharedCounts, Examples) {
  const auto four = shared_latents_matrix(fixtures::four_model());
  EXPECT_EQ(four[0][1], 1U);
  EXPECT_EQ(four[0][3], 0U);
  EXPECT_EQ(four[2][2], 2U);
  EXPECT_EQ(shared_measurements_matrix(fixtures::four_model())[0][1], 1U);

  const auto eight = shared_latents_matrix(build_mcm(fixtures::eight_clique_minimum(), 8));
  EXPECT_EQ(eight[1][2], 3U);

  const auto cycle = shared_measurements_matrix(build_mcm(min_clique_ecc(fixtures::cycle_udg()), 6));
  for (std::size_t a = 0; a < cycle.size(); ++a)
    for (std::size_t b = 0; b < cycle.size(); ++b) EXPECT_LE(cycle[a][b], a == b ? 2U : 1U);

  const auto edgeless = shared_latents_matrix(build_mcm(std::vector<Clique>{}, 3));
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) EXPECT_EQ(edgeless[i][j], i == j ? 1U : 0U);

  const auto single = shared_measurements_matrix(build_mcm(std::vector<Clique>{Clique{0, 1, 2}}, 3));
  EXPECT_EQ(single, (CountMatrix{{3}}));
}

TEST(SharedCounts, PositiveExactlyOnInducedEdges) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto g = erdos_renyi(8, 0.5, seed);
    auto m = build_mcm(min_assignment_ecc(g), 8);
    auto s = shared_latents_matrix(m);
    auto udg = induced_udg(m);
    for (std::size_t i = 0; i < 8; ++i)
      for (std::size_t j = 0; j < 8; ++j) {
        EXPECT_EQ(s[i][j], s[j][i]);
        if (i != j) EXPECT_EQ(s[i][j] > 0, udg.adjacent(i, j));
      }
    for (std::size_t b = 0; b < 8; ++b) EXPECT_EQ(s[b][b], m.parents(b).size());
  }
}

TEST(SyntheticModel, Validation) {
  const auto four = fixtures::four_model();
  EXPECT_NO_THROW(SyntheticModel::uniform(four));
  EXPECT_THROW(SyntheticModel::uniform(four, 0.0), InputError);
  EXPECT_THROW(SyntheticModel::uniform(four, 1.0, 0.0), InputError);
  std::vector<std::vector<double>> w{{1, 1, 1, 0.5}, {0, 0, 1, 1}};  // extra entry
  EXPECT_THROW(SyntheticModel(four, w, std::vector<double>(4, 0.1)), InputError);
  auto broken = MeDILCausalModel::from_edges(3, 1, {{0, 0}, {0, 1}});
  EXPECT_THROW(SyntheticModel::uniform(broken), InputError);
}

TEST(Simulate, LinearGaussianCorrelations) {
  auto model = SyntheticModel::uniform(fixtures::four_model(), 1.0, 0.1);
  auto s = simulate(model, 5000, 17);
  EXPECT_EQ(s.num_observations(), 5000U);
  EXPECT_NEAR(pearson_correlation(s.column(0), s.column(3)), 0.0, 0.05);
  EXPECT_NEAR(pearson_correlation(s.column(0), s.column(1)), 1.0 / 1.01, 0.05);
  ASSERT_TRUE(s.labels().has_value());
  EXPECT_EQ((*s.labels())[0], "M1");
}

TEST(Simulate, DeterministicAcrossThreadCounts) {
  auto model = SyntheticModel::uniform(fixtures::four_model(), 1.0, 0.1, Link::Quadratic);
  auto a = simulate(model, 3000, 4, 1);
  auto b = simulate(model, 3000, 4, 4);
  for (std::size_t c = 0; c < 4; ++c) EXPECT_EQ(a.column(c), b.column(c));
  auto other = simulate(model, 3000, 5, 1);
  EXPECT_NE(a.column(0), other.column(0));
  EXPECT_THROW(simulate(model, 1, 0), InputError);
}

TEST(Simulate, QuadraticLinkKeepsDependenceStructure) {
  auto model = SyntheticModel::uniform(fixtures::four_model(), 1.0, 0.1, Link::Quadratic);
  auto s = simulate(model, 500, 3);
  IndependenceTestOptions opt;
  opt.num_permutations = 200;
  auto [g, report] = estimate_udg(s, opt);
  EXPECT_TRUE(g.adjacent(0, 1));
  EXPECT_TRUE(g.adjacent(2, 3));
}

}  // namespace
}  // namespace medil
