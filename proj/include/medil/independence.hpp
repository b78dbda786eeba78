#pragma once

// Nonparametric pairwise independence testing: distance correlation with a
// permutation null, estimation of the undirected dependency graph, and the
// conditional (in)dependencies implied by it for single conditioning
// variables.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "medil/errors.hpp"
#include "medil/graph.hpp"

namespace medil {

// Observations in rows, variables in columns.
class SampleMatrix {
 public:
  SampleMatrix() = default;
  SampleMatrix(std::size_t rows, std::size_t cols, std::vector<double> values)
      : rows_(rows), cols_(cols), values_(std::move(values)) {
    if (values_.size() != rows_ * cols_)
      throw InputError("sample matrix needs rows*cols values");
    if (rows_ < 2) throw InputError("sample matrix needs at least 2 observations");
    for (double v : values_)
      if (!std::isfinite(v)) throw InputError("sample matrix contains a non-finite value");
  }

  std::size_t num_observations() const noexcept { return rows_; }
  std::size_t num_variables() const noexcept { return cols_; }
  double operator()(std::size_t row, std::size_t col) const { return values_[row * cols_ + col]; }

  std::vector<double> column(std::size_t col) const {
    if (col >= cols_) throw InputError("column index out of range");
    std::vector<double> out(rows_);
    for (std::size_t r = 0; r < rows_; ++r) out[r] = values_[r * cols_ + col];
    return out;
  }

  const std::optional<std::vector<std::string>>& labels() const noexcept { return labels_; }
  void set_labels(std::vector<std::string> labels) {
    if (labels.size() != cols_) throw InputError("label count does not match column count");
    labels_ = std::move(labels);
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> values_;
  std::optional<std::vector<std::string>> labels_;
};

namespace detail {

inline void check_pair(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw InputError("sample vectors differ in length");
  if (x.size() < 2) throw InputError("need at least 2 observations");
  for (double v : x)
    if (!std::isfinite(v)) throw InputError("non-finite value in sample");
  for (double v : y)
    if (!std::isfinite(v)) throw InputError("non-finite value in sample");
}

// Per-variable quantities of the distance matrix a_ij = |v_i - v_j| that do
// not depend on the pairing with the other variable.
struct DistanceProfile {
  std::vector<double> centered;       // v - mean(v)
  std::vector<double> row_sums;       // a_i. = sum_j a_ij
  double total = 0.0;                 // a..
  std::vector<std::size_t> order;     // indices sorted by value
  std::vector<std::size_t> rank;      // inverse of order

  explicit DistanceProfile(std::span<const double> v) {
    const std::size_t n = v.size();
    const double mean = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(n);
    centered.resize(n);
    for (std::size_t i = 0; i < n; ++i) centered[i] = v[i] - mean;
    order.resize(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return centered[a] < centered[b]; });
    rank.resize(n);
    for (std::size_t k = 0; k < n; ++k) rank[order[k]] = k;

    // Sorted prefix sums give every row sum in one sweep.
    const double sum = std::accumulate(centered.begin(), centered.end(), 0.0);
    row_sums.resize(n);
    double below = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      const double x = centered[order[k]];
      const double above = sum - below - x;
      row_sums[order[k]] = x * static_cast<double>(k) - below + above -
                           x * static_cast<double>(n - k - 1);
      below += x;
    }
    total = std::accumulate(row_sums.begin(), row_sums.end(), 0.0);
  }
};

// Fenwick tree over ranks carrying count, sum x, sum y and sum xy.
class PairFenwick {
 public:
  explicit PairFenwick(std::size_t n) : n_(n), t_(n + 1) {}
  struct Acc {
    double count = 0, x = 0, y = 0, xy = 0;
  };
  void reset() { std::fill(t_.begin(), t_.end(), Acc{}); }
  void add(std::size_t pos, double x, double y) {
    for (std::size_t i = pos + 1; i <= n_; i += i & (~i + 1)) {
      t_[i].count += 1.0;
      t_[i].x += x;
      t_[i].y += y;
      t_[i].xy += x * y;
    }
  }
  // Sum over positions [0, pos).
  Acc prefix(std::size_t pos) const {
    Acc a;
    for (std::size_t i = pos; i > 0; i -= i & (~i + 1)) {
      a.count += t_[i].count;
      a.x += t_[i].x;
      a.y += t_[i].y;
      a.xy += t_[i].xy;
    }
    return a;
  }

 private:
  std::size_t n_;
  std::vector<Acc> t_;
};

// sum_{i,j} |x_i - x_j| |y_pi(i) - y_pi(j)| in O(N log N), where `perm` maps
// positions of x to positions of y (nullptr for the identity).
inline double cross_distance_sum(const DistanceProfile& px, const DistanceProfile& py,
                                 const std::vector<std::size_t>* perm, PairFenwick& tree) {
  const std::size_t n = px.centered.size();
  tree.reset();
  PairFenwick::Acc all;
  long double sum = 0.0L;
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t j = px.order[k];
    const std::size_t jy = perm ? (*perm)[j] : j;
    const double xj = px.centered[j];
    const double yj = py.centered[jy];
    const std::size_t r = py.rank[jy];
    const auto below = tree.prefix(r);
    PairFenwick::Acc above{all.count - below.count, all.x - below.x, all.y - below.y,
                           all.xy - below.xy};
    // Earlier points have x_i <= x_j; split by the sign of y_j - y_i.
    const double lower = below.count * xj * yj - xj * below.y - yj * below.x + below.xy;
    const double upper = xj * above.y - above.count * xj * yj - above.xy + yj * above.x;
    sum += static_cast<long double>(lower) + static_cast<long double>(upper);
    tree.add(r, xj, yj);
    all.count += 1.0;
    all.x += xj;
    all.y += yj;
    all.xy += xj * yj;
  }
  return static_cast<double>(2.0L * sum);
}

// Squared sample distance covariance (V-statistic):
//   S1 - 2 S3 + S2 with S1 = mean a_ij b_ij, S3 = mean_i a_i. b_i. / n^2,
//   S2 = a.. b.. / n^4.
inline double dcov_squared(const DistanceProfile& px, const DistanceProfile& py,
                           const std::vector<std::size_t>* perm, PairFenwick& tree) {
  const std::size_t n = px.centered.size();
  const double nn = static_cast<double>(n);
  const double s1 = cross_distance_sum(px, py, perm, tree) / (nn * nn);
  long double row = 0.0L;
  for (std::size_t i = 0; i < n; ++i)
    row += static_cast<long double>(px.row_sums[i]) * py.row_sums[perm ? (*perm)[i] : i];
  const double s3 = static_cast<double>(row) / (nn * nn * nn);
  const double s2 = (px.total / (nn * nn)) * (py.total / (nn * nn));
  return std::max(0.0, s1 - 2.0 * s3 + s2);
}

inline double dcorr_from_parts(double dcov2, double dvar_x, double dvar_y) {
  if (dvar_x <= 0.0 || dvar_y <= 0.0) return 0.0;
  const double r2 = dcov2 / std::sqrt(dvar_x * dvar_y);
  return std::sqrt(std::clamp(r2, 0.0, 1.0));
}

// Everything needed to evaluate dCorr(x, y∘perm) for many permutations.
class DistanceCorrelationKernel {
 public:
  DistanceCorrelationKernel(std::span<const double> x, std::span<const double> y)
      : px_(x), py_(y), tree_(x.size()) {
    dvar_x_ = dcov_squared(px_, px_, nullptr, tree_);
    dvar_y_ = dcov_squared(py_, py_, nullptr, tree_);
  }
  double operator()(const std::vector<std::size_t>* perm = nullptr) {
    if (dvar_x_ <= 0.0 || dvar_y_ <= 0.0) return 0.0;
    return dcorr_from_parts(dcov_squared(px_, py_, perm, tree_), dvar_x_, dvar_y_);
  }
  std::size_t size() const noexcept { return px_.centered.size(); }

 private:
  DistanceProfile px_, py_;
  PairFenwick tree_;
  double dvar_x_ = 0.0, dvar_y_ = 0.0;
};

inline std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace detail

// Distance correlation (biased V-statistic estimator) in [0, 1]. Defined as
// 0 when either sample is constant.
inline double distance_correlation(std::span<const double> x, std::span<const double> y) {
  detail::check_pair(x, y);
  // Fixed argument order keeps the result bitwise symmetric.
  if (std::lexicographical_compare(y.begin(), y.end(), x.begin(), x.end())) std::swap(x, y);
  detail::DistanceCorrelationKernel kernel(x, y);
  return kernel();
}

// How a permuted statistic is compared with the observed one.
enum class PValueRule {
  AtLeast,  // count permutations with dCorr >= observed (conservative under ties)
  Exceeds,  // count permutations with dCorr > observed
};

// Relative slack for treating two statistics as tied.
inline constexpr double kTieTolerance = 1e-12;

struct PermutationTestResult {
  double dcorr = 0.0;
  double p_value = 1.0;
};

// Shuffles y, keeps x fixed.
inline PermutationTestResult permutation_test(std::span<const double> x,
                                              std::span<const double> y,
                                              std::size_t num_permutations, std::uint64_t seed,
                                              PValueRule rule = PValueRule::AtLeast) {
  detail::check_pair(x, y);
  if (num_permutations == 0) throw InputError("need at least one permutation");
  detail::DistanceCorrelationKernel kernel(x, y);
  PermutationTestResult result;
  result.dcorr = kernel();
  std::mt19937_64 rng(seed);
  std::vector<std::size_t> perm(kernel.size());
  std::iota(perm.begin(), perm.end(), 0);
  std::size_t hits = 0;
  for (std::size_t b = 0; b < num_permutations; ++b) {
    std::shuffle(perm.begin(), perm.end(), rng);
    const double stat = kernel(&perm);
    const bool hit = rule == PValueRule::AtLeast ? stat >= result.dcorr - kTieTolerance
                                                 : stat > result.dcorr + kTieTolerance;
    if (hit) ++hits;
  }
  result.p_value = static_cast<double>(hits) / static_cast<double>(num_permutations);
  return result;
}

inline double permutation_pvalue(std::span<const double> x, std::span<const double> y,
                                 std::size_t num_permutations, std::uint64_t seed,
                                 PValueRule rule = PValueRule::AtLeast) {
  return permutation_test(x, y, num_permutations, seed, rule).p_value;
}

inline double pearson_correlation(std::span<const double> x, std::span<const double> y) {
  detail::check_pair(x, y);
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx <= 0.0 || syy <= 0.0) return 0.0;
  return sxy / std::sqrt(sxx * syy);
}

struct IndependenceTestOptions {
  double dcorr_threshold = 0.1;
  double p_threshold = 0.1;
  std::size_t num_permutations = 1000;
  std::uint64_t seed = 0;
  PValueRule rule = PValueRule::AtLeast;
  unsigned threads = 0;  // 0: hardware concurrency; never changes results
};

struct PairTest {
  std::size_t i = 0, j = 0;  // i < j
  double dcorr = 0.0;
  double p_value = 1.0;
  bool independent = true;
};

struct IndependenceTestReport {
  std::size_t num_variables = 0;
  double dcorr_threshold = 0.1;
  double p_threshold = 0.1;
  std::size_t num_permutations = 1000;
  std::vector<PairTest> pairs;  // (0,1), (0,2), ..., (n-2,n-1)

  const PairTest& at(std::size_t i, std::size_t j) const {
    if (i == j || i >= num_variables || j >= num_variables)
      throw InputError("invalid variable pair");
    if (i > j) std::swap(i, j);
    // Row-major index into the strict upper triangle.
    const std::size_t n = num_variables;
    return pairs[i * (2 * n - i - 1) / 2 + (j - i - 1)];
  }
};

// Per-pair RNG seed; independent of scheduling.
inline std::uint64_t pair_seed(std::uint64_t seed, std::size_t i, std::size_t j) {
  return detail::splitmix64(detail::splitmix64(seed ^ detail::splitmix64(i)) + j);
}

inline bool decide_independent(double dcorr, double p_value, const IndependenceTestOptions& o) {
  return dcorr < o.dcorr_threshold && p_value > o.p_threshold;
}

inline std::pair<UndirectedDependencyGraph, IndependenceTestReport> estimate_udg(
    const SampleMatrix& samples, const IndependenceTestOptions& options = {}) {
  const std::size_t n = samples.num_variables();
  if (n < 2) throw InputError("need at least two variables to estimate dependencies");
  if (options.num_permutations == 0) throw InputError("need at least one permutation");

  std::vector<std::vector<double>> columns(n);
  for (std::size_t c = 0; c < n; ++c) columns[c] = samples.column(c);

  IndependenceTestReport report;
  report.num_variables = n;
  report.dcorr_threshold = options.dcorr_threshold;
  report.p_threshold = options.p_threshold;
  report.num_permutations = options.num_permutations;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) report.pairs.push_back({i, j, 0.0, 1.0, true});

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < report.pairs.size(); k = next++) {
      auto& pt = report.pairs[k];
      auto res = permutation_test(columns[pt.i], columns[pt.j], options.num_permutations,
                                  pair_seed(options.seed, pt.i, pt.j), options.rule);
      pt.dcorr = distance_correlation(columns[pt.i], columns[pt.j]);
      pt.p_value = res.p_value;
      pt.independent = decide_independent(pt.dcorr, pt.p_value, options);
    }
  };
  unsigned threads = options.threads ? options.threads : std::thread::hardware_concurrency();
  threads = std::max(1U, std::min<unsigned>(threads, static_cast<unsigned>(report.pairs.size())));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }

  UndirectedDependencyGraph g(n);
  if (samples.labels()) g.set_labels(*samples.labels());
  for (const auto& pt : report.pairs)
    if (!pt.independent) g.add_edge(pt.i, pt.j);
  return {std::move(g), std::move(report)};
}

// "M_i and M_j are (in)dependent given M_given".
struct ConditionalRelation {
  std::size_t i = 0, j = 0;  // i < j
  std::size_t given = 0;
  bool dependent = false;

  friend bool operator==(const ConditionalRelation&, const ConditionalRelation&) = default;
};

// Conditional relations implied by the unconditional ones when every
// measurement is a sink: a dependent pair stays dependent given any third
// measurement, and an independent pair becomes dependent given a common
// neighbour (a collider), otherwise stays independent.
inline std::vector<ConditionalRelation> derive_conditional_relations(
    const UndirectedDependencyGraph& g) {
  const std::size_t n = g.num_vertices();
  std::vector<ConditionalRelation> out;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        if (k == i || k == j) continue;
        const bool dependent = g.adjacent(i, j) || (g.adjacent(i, k) && g.adjacent(j, k));
        out.push_back({i, j, k, dependent});
      }
  return out;
}

}  // namespace medil
