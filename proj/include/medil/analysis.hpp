#pragma once

// Structural summaries of a model and a linear-Gaussian sampler for it.

#include <cmath>
#include <cstdint>
#include <map>
#include <random>
#include <thread>
#include <vector>

#include "medil/errors.hpp"
#include "medil/independence.hpp"
#include "medil/mcm.hpp"

namespace medil {

using Histogram = std::map<std::size_t, std::size_t>;
using CountMatrix = std::vector<std::vector<std::size_t>>;

// Number of latent parents -> number of measurements with that many.
inline Histogram indegree_histogram(const MeDILCausalModel& m) {
  std::vector<std::size_t> indeg(m.num_measurements(), 0);
  for (const auto& [a, b] : m.edges()) ++indeg[b];
  Histogram h;
  for (std::size_t d : indeg) ++h[d];
  return h;
}

// Number of children -> number of latents with that many.
inline Histogram outdegree_histogram(const MeDILCausalModel& m) {
  Histogram h;
  for (std::size_t a = 0; a < m.num_latents(); ++a) ++h[m.children(a).count()];
  return h;
}

// (i, j) -> latents parenting both; the diagonal holds in-degrees.
inline CountMatrix shared_latents_matrix(const MeDILCausalModel& m) {
  const std::size_t n = m.num_measurements();
  CountMatrix out(n, std::vector<std::size_t>(n, 0));
  for (std::size_t a = 0; a < m.num_latents(); ++a) {
    auto kids = m.children(a).to_vector();
    for (std::size_t x : kids)
      for (std::size_t y : kids) ++out[x][y];
  }
  return out;
}

// (a, b) -> measurements both latents parent; the diagonal holds out-degrees.
inline CountMatrix shared_measurements_matrix(const MeDILCausalModel& m) {
  const std::size_t l = m.num_latents();
  CountMatrix out(l, std::vector<std::size_t>(l, 0));
  for (std::size_t a = 0; a < l; ++a)
    for (std::size_t b = a; b < l; ++b)
      out[a][b] = out[b][a] = m.children(a).intersect_count(m.children(b));
  return out;
}

enum class Link {
  Linear,     // M_b = sum_a w_ab L_a + sd_b e_b
  Quadratic,  // M_b = sum_a w_ab L_a^2 + sd_b e_b
};

class SyntheticModel {
 public:
  // weights[a][b] is latent a's coefficient in measurement b.
  SyntheticModel(MeDILCausalModel structure, std::vector<std::vector<double>> weights,
                 std::vector<double> noise_sd, Link link = Link::Linear)
      : structure_(std::move(structure)),
        weights_(std::move(weights)),
        noise_sd_(std::move(noise_sd)),
        link_(link) {
    const auto v = validate_mcm(structure_);
    if (!v.ok()) throw InputError("invalid model structure: " + v.problems.front());
    if (weights_.size() != structure_.num_latents())
      throw InputError("weight matrix needs one row per latent");
    for (std::size_t a = 0; a < weights_.size(); ++a) {
      if (weights_[a].size() != structure_.num_measurements())
        throw InputError("weight matrix needs one column per measurement");
      for (std::size_t b = 0; b < weights_[a].size(); ++b) {
        const double w = weights_[a][b];
        if (!std::isfinite(w)) throw InputError("non-finite weight");
        if ((w != 0.0) != structure_.has_edge(a, b))
          throw InputError("weights must be nonzero exactly on the model's edges (latent " +
                           std::to_string(a) + ", measurement " + std::to_string(b) + ")");
      }
    }
    if (noise_sd_.size() != structure_.num_measurements())
      throw InputError("need one noise scale per measurement");
    for (double sd : noise_sd_)
      if (!(sd > 0.0) || !std::isfinite(sd)) throw InputError("noise scales must be positive");
  }

  // Same weight on every edge, same noise everywhere.
  static SyntheticModel uniform(const MeDILCausalModel& structure, double weight = 1.0,
                                double noise_sd = 0.1, Link link = Link::Linear) {
    std::vector<std::vector<double>> w(structure.num_latents(),
                                       std::vector<double>(structure.num_measurements(), 0.0));
    for (const auto& [a, b] : structure.edges()) w[a][b] = weight;
    return SyntheticModel(structure, std::move(w),
                          std::vector<double>(structure.num_measurements(), noise_sd), link);
  }

  const MeDILCausalModel& structure() const noexcept { return structure_; }
  const std::vector<std::vector<double>>& weights() const noexcept { return weights_; }
  const std::vector<double>& noise_sd() const noexcept { return noise_sd_; }
  Link link() const noexcept { return link_; }

 private:
  MeDILCausalModel structure_;
  std::vector<std::vector<double>> weights_;
  std::vector<double> noise_sd_;
  Link link_;
};

// Row r uses its own generator seeded from (seed, r), so the output does not
// depend on the thread count.
inline SampleMatrix simulate(const SyntheticModel& model, std::size_t num_samples,
                             std::uint64_t seed, unsigned threads = 1) {
  if (num_samples < 2) throw InputError("need at least 2 samples");
  const auto& s = model.structure();
  const std::size_t n = s.num_measurements();
  const std::size_t l = s.num_latents();
  const auto edges = s.edges();
  std::vector<double> values(num_samples * n, 0.0);

  auto fill_rows = [&](std::size_t begin, std::size_t end) {
    std::vector<double> latent(l);
    for (std::size_t r = begin; r < end; ++r) {
      std::mt19937_64 rng(detail::splitmix64(seed ^ detail::splitmix64(r + 1)));
      std::normal_distribution<double> normal;
      for (auto& x : latent) {
        x = normal(rng);
        if (model.link() == Link::Quadratic) x *= x;
      }
      double* row = &values[r * n];
      for (const auto& [a, b] : edges) row[b] += model.weights()[a][b] * latent[a];
      for (std::size_t b = 0; b < n; ++b) row[b] += model.noise_sd()[b] * normal(rng);
    }
  };

  threads = std::max(1U, threads);
  if (threads == 1 || num_samples < 1024) {
    fill_rows(0, num_samples);
  } else {
    std::vector<std::jthread> pool;
    const std::size_t chunk = (num_samples + threads - 1) / threads;
    for (std::size_t begin = 0; begin < num_samples; begin += chunk)
      pool.emplace_back(fill_rows, begin, std::min(num_samples, begin + chunk));
  }

  SampleMatrix out(num_samples, n, std::move(values));
  std::vector<std::string> labels;
  for (std::size_t b = 0; b < n; ++b) labels.push_back(s.measurement_name(b));
  out.set_labels(std::move(labels));
  return out;
}

}  // namespace medil
