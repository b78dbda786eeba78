#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include "fixtures.hpp"
#include "medil/independence.hpp"

namespace medil {
namespace {

// Textbook definition: double-centered distance matrices, O(N^2).
double naive_dcorr(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  auto centered = [n](const std::vector<double>& v) {
    std::vector<std::vector<double>> d(n, std::vector<double>(n));
    std::vector<double> row(n, 0.0);
    double all = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        d[i][j] = std::abs(v[i] - v[j]);
        row[i] += d[i][j];
        all += d[i][j];
      }
    const double nn = static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        d[i][j] = d[i][j] - row[i] / nn - row[j] / nn + all / (nn * nn);
    return d;
  };
  auto a = centered(x), b = centered(y);
  double xy = 0, xx = 0, yy = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      xy += a[i][j] * b[i][j];
      xx += a[i][j] * a[i][j];
      yy += b[i][j] * b[i][j];
    }
  if (xx <= 0 || yy <= 0) return 0.0;
  return std::sqrt(std::max(0.0, xy) / std::sqrt(xx * yy));
}

std::vector<double> normals(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> d;
  std::vector<double> v(n);
  for (auto& x : v) x = d(rng);
  return v;
}

TEST(DistanceCorrelation, MatchesDoubleCenteringOracle) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const std::size_t n = 2 + seed % 63;
    auto x = normals(n, seed);
    auto y = normals(n, seed + 1000);
    if (seed % 3 == 0)
      for (std::size_t i = 0; i < n; ++i) y[i] = x[i] * x[i] + 0.1 * y[i];
    if (seed % 5 == 0)  // heavy ties
      for (auto& v : x) v = std::round(v);
    EXPECT_NEAR(distance_correlation(x, y), naive_dcorr(x, y), 1e-10) << "seed " << seed;
  }
}

TEST(DistanceCorrelation, BasicProperties) {
  auto x = normals(100, 1);
  auto y = normals(100, 2);
  EXPECT_EQ(distance_correlation(x, y), distance_correlation(y, x));
  EXPECT_DOUBLE_EQ(distance_correlation(x, x), 1.0);

  std::vector<double> affine(x.size()), neg(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    affine[i] = 3.5 * x[i] - 7.0;
    neg[i] = -2.0 * x[i];
  }
  EXPECT_NEAR(distance_correlation(x, affine), 1.0, 1e-9);
  EXPECT_NEAR(distance_correlation(neg, y), distance_correlation(x, y), 1e-9);

  std::vector<double> constant(100, 4.2);
  EXPECT_EQ(distance_correlation(x, constant), 0.0);
  const double d = distance_correlation(x, y);
  EXPECT_GE(d, 0.0);
  EXPECT_LE(d, 1.0);
}

TEST(DistanceCorrelation, RejectsBadInput) {
  std::vector<double> a{1, 2, 3}, b{1, 2};
  EXPECT_THROW(distance_correlation(a, b), InputError);
  std::vector<double> one{1};
  EXPECT_THROW(distance_correlation(one, one), InputError);
  std::vector<double> nan{1, std::nan(""), 3};
  EXPECT_THROW(distance_correlation(a, nan), InputError);
  EXPECT_THROW(permutation_pvalue(a, a, 0, 1), InputError);
}

// With N=4 and y = x, exactly two of the 24 orderings (identity and reversal)
// reach dCorr = 1.
TEST(PermutationPValue, SmallSampleAgainstFullEnumeration) {
  std::vector<double> x{1, 2, 3, 4};
  std::vector<std::size_t> perm{0, 1, 2, 3};
  int hits = 0, total = 0;
  const double obs = naive_dcorr(x, x);
  do {
    std::vector<double> y(4);
    for (std::size_t i = 0; i < 4; ++i) y[i] = x[perm[i]];
    if (naive_dcorr(x, y) >= obs - 1e-12) ++hits;
    ++total;
  } while (std::next_permutation(perm.begin(), perm.end()));
  ASSERT_EQ(total, 24);
  ASSERT_EQ(hits, 2);

  const double p = permutation_pvalue(x, x, 24000, 7);
  EXPECT_NEAR(p, 2.0 / 24.0, 0.006);
  EXPECT_EQ(permutation_pvalue(x, x, 500, 7, PValueRule::Exceeds), 0.0);
}

TEST(PermutationPValue, ReproducibleAndBounded) {
  auto x = normals(50, 3);
  auto y = normals(50, 4);
  const double a = permutation_pvalue(x, y, 200, 11);
  EXPECT_EQ(a, permutation_pvalue(x, y, 200, 11));
  EXPECT_GE(a, 0.0);
  EXPECT_LE(a, 1.0);
  EXPECT_LE(permutation_pvalue(x, y, 200, 11, PValueRule::Exceeds), a);
}

TEST(PermutationPValue, StrongDependenceGivesSmallP) {
  auto x = normals(200, 5);
  auto noise = normals(200, 6);
  std::vector<double> y(200);
  for (std::size_t i = 0; i < 200; ++i) y[i] = x[i] * x[i] + 0.2 * noise[i];
  EXPECT_LT(permutation_pvalue(x, y, 300, 1), 0.01);
}

// Under independence the p-value is roughly uniform.
TEST(PermutationPValue, CalibratedUnderTheNull) {
  int small = 0;
  const int trials = 200;
  for (int t = 0; t < trials; ++t) {
    auto x = normals(60, 10 + 2 * t);
    auto y = normals(60, 11 + 2 * t);
    if (permutation_pvalue(x, y, 200, t) <= 0.1) ++small;
  }
  EXPECT_GE(small, 8);
  EXPECT_LE(small, 36);
}

SampleMatrix chain_samples(std::size_t rows, std::uint64_t seed) {
  // Columns: x, x + noise, independent.
  auto x = normals(rows, seed);
  auto e = normals(rows, seed + 1);
  auto z = normals(rows, seed + 2);
  std::vector<double> values;
  for (std::size_t r = 0; r < rows; ++r) {
    values.push_back(x[r]);
    values.push_back(x[r] + 0.5 * e[r]);
    values.push_back(z[r]);
  }
  return SampleMatrix(rows, 3, std::move(values));
}

TEST(SampleMatrix, Validation) {
  EXPECT_THROW(SampleMatrix(2, 2, {1, 2, 3}), InputError);
  EXPECT_THROW(SampleMatrix(1, 2, {1, 2}), InputError);
  EXPECT_THROW(SampleMatrix(2, 1, {1, INFINITY}), InputError);
  SampleMatrix m(2, 2, {1, 2, 3, 4});
  EXPECT_EQ(m.column(1), (std::vector<double>{2, 4}));
  EXPECT_THROW(m.column(2), InputError);
  EXPECT_THROW(m.set_labels({"a"}), InputError);
}

TEST(EstimateUdg, RecoversSimpleStructure) {
  IndependenceTestOptions opt;
  opt.num_permutations = 200;
  opt.seed = 3;
  auto [g, report] = estimate_udg(chain_samples(300, 1), opt);
  EXPECT_TRUE(g.adjacent(0, 1));
  EXPECT_EQ(report.pairs.size(), 3U);
  EXPECT_EQ(report.at(1, 0).i, 0U);
  EXPECT_EQ(report.at(1, 0).j, 1U);
  EXPECT_FALSE(report.at(0, 1).independent);
  for (const auto& pt : report.pairs) {
    EXPECT_EQ(pt.independent, !g.adjacent(pt.i, pt.j));
    EXPECT_EQ(pt.independent, pt.dcorr < 0.1 && pt.p_value > 0.1);
  }
  EXPECT_THROW(report.at(0, 0), InputError);
}

TEST(EstimateUdg, ThreadCountDoesNotChangeResults) {
  auto samples = chain_samples(120, 9);
  IndependenceTestOptions opt;
  opt.num_permutations = 100;
  opt.seed = 42;
  opt.threads = 1;
  auto [g1, r1] = estimate_udg(samples, opt);
  opt.threads = 3;
  auto [g3, r3] = estimate_udg(samples, opt);
  EXPECT_EQ(g1, g3);
  for (std::size_t k = 0; k < r1.pairs.size(); ++k) {
    EXPECT_EQ(r1.pairs[k].dcorr, r3.pairs[k].dcorr);
    EXPECT_EQ(r1.pairs[k].p_value, r3.pairs[k].p_value);
  }
  opt.seed = 43;
  auto [g_other, r_other] = estimate_udg(samples, opt);
  EXPECT_EQ(r_other.pairs[0].dcorr, r1.pairs[0].dcorr);
}

TEST(EstimateUdg, RejectsSingleVariable) {
  SampleMatrix m(3, 1, {1, 2, 3});
  EXPECT_THROW(estimate_udg(m), InputError);
}

TEST(ConditionalRelations, FourMeasurement) {
  auto rel = derive_conditional_relations(fixtures::four_udg());
  // 6 pairs, 2 conditioning choices each.
  ASSERT_EQ(rel.size(), 12U);
  auto find = [&](std::size_t i, std::size_t j, std::size_t k) {
    for (const auto& r : rel)
      if (r.i == i && r.j == j && r.given == k) return r.dependent;
    ADD_FAILURE() << "missing relation";
    return false;
  };
  EXPECT_TRUE(find(0, 3, 2));   // common neighbour
  EXPECT_FALSE(find(0, 3, 1));
  EXPECT_FALSE(find(1, 3, 0));
  EXPECT_TRUE(find(1, 3, 2));
  EXPECT_TRUE(find(0, 1, 3));   // marginally dependent stays dependent
}

}  // namespace
}  // namespace medil
