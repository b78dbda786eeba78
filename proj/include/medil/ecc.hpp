#pragma once

// Exact minimum edge clique covers.
//
// Both objectives reduce to weighted set cover with the graph's edges as
// elements:
//   * clique count: sets are the maximal cliques, unit cost (any clique in a
//     cover can be grown to a maximal one without changing the count);
//   * assignment count: sets are all cliques of size >= 2, cost |C|.
// The search is depth-first branch and bound that branches on the uncovered
// edge with the fewest candidate cliques, after applying set-cover data
// reduction (dominated cliques, edges with a single candidate clique) and
// splitting the residual edges into independent components. An edge whose
// closed common neighbourhood is a clique has exactly one maximal clique
// through it and is taken by the single-candidate rule.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "medil/bitset.hpp"
#include "medil/errors.hpp"
#include "medil/graph.hpp"

namespace medil {

enum class Objective { CliqueCount, AssignmentCount };

inline const char* to_string(Objective o) {
  return o == Objective::CliqueCount ? "clique_count" : "assignment_count";
}

inline std::size_t objective_value(const std::vector<Clique>& cliques, Objective o) {
  if (o == Objective::CliqueCount) return cliques.size();
  std::size_t total = 0;
  for (const auto& c : cliques) total += c.size();
  return total;
}

struct EdgeCliqueCover {
  std::vector<Clique> cliques;  // lexicographic order
  Objective objective = Objective::CliqueCount;
  std::size_t objective_value = 0;

  friend bool operator==(const EdgeCliqueCover&, const EdgeCliqueCover&) = default;
};

// Sorts the cliques canonically and fills in the objective value.
inline EdgeCliqueCover make_cover(std::vector<Clique> cliques, Objective objective) {
  std::sort(cliques.begin(), cliques.end());
  EdgeCliqueCover c;
  c.objective_value = medil::objective_value(cliques, objective);
  c.cliques = std::move(cliques);
  c.objective = objective;
  return c;
}

struct CoverVerification {
  bool cliques_valid = true;       // in range and pairwise adjacent
  bool edges_covered = true;       // every edge of g lies in some clique
  bool no_non_edges_covered = true;
  bool no_subset_redundancy = true;
  bool objective_matches = true;
  std::vector<std::string> problems;

  bool ok() const {
    return cliques_valid && edges_covered && no_non_edges_covered &&
           no_subset_redundancy && objective_matches;
  }
};

inline CoverVerification verify_cover(const UndirectedDependencyGraph& g,
                                      const EdgeCliqueCover& cover) {
  CoverVerification r;
  const std::size_t n = g.num_vertices();
  UndirectedDependencyGraph covered(n);
  for (std::size_t k = 0; k < cover.cliques.size(); ++k) {
    const auto& m = cover.cliques[k].members();
    bool in_range = std::all_of(m.begin(), m.end(), [&](Vertex v) { return v < n; });
    if (!in_range) {
      r.cliques_valid = false;
      r.problems.push_back("clique " + std::to_string(k) + " has an out-of-range vertex");
      continue;
    }
    for (std::size_t a = 0; a < m.size(); ++a)
      for (std::size_t b = a + 1; b < m.size(); ++b) {
        if (!g.adjacent(m[a], m[b])) {
          r.cliques_valid = false;
          r.no_non_edges_covered = false;
          r.problems.push_back("clique " + std::to_string(k) + " covers non-edge " +
                               std::to_string(m[a]) + "-" + std::to_string(m[b]));
        } else {
          covered.add_edge(m[a], m[b]);
        }
      }
  }
  for (const auto& [u, v] : g.edges())
    if (!covered.adjacent(u, v)) {
      r.edges_covered = false;
      r.problems.push_back("edge " + std::to_string(u) + "-" + std::to_string(v) +
                           " is not covered");
    }
  for (std::size_t a = 0; a < cover.cliques.size(); ++a)
    for (std::size_t b = 0; b < cover.cliques.size(); ++b)
      if (a != b && cover.cliques[a].is_subset_of(cover.cliques[b]) &&
          (cover.cliques[a] != cover.cliques[b] || a > b)) {
        r.no_subset_redundancy = false;
        r.problems.push_back("clique " + std::to_string(a) + " is contained in clique " +
                             std::to_string(b));
      }
  if (objective_value(cover.cliques, cover.objective) != cover.objective_value) {
    r.objective_matches = false;
    r.problems.push_back("objective value does not match the cliques");
  }
  return r;
}

// Optional resource guard. When either limit is hit the solver throws
// BudgetExceeded instead of returning an unproven cover.
// Limits for one solver call. node_limit counts branch-and-bound nodes;
// candidate_limit caps the cliques enumerated before the search starts.
// time_limit covers both phases.
struct SolverBudget {
  std::optional<std::chrono::milliseconds> time_limit;
  std::optional<std::uint64_t> node_limit;
  std::optional<std::uint64_t> candidate_limit;
};

struct SolverStats {
  std::uint64_t nodes = 0;
  std::size_t candidate_cliques = 0;
  std::size_t root_lower_bound = 0;
  std::size_t greedy_upper_bound = 0;
};

namespace detail {

class SetCoverSearch {
 public:
  struct Solution {
    std::vector<std::size_t> sets;
    std::size_t cost = 0;
  };

  // `members[s]` are the vertices of set s; the elements are g's edges.
  SetCoverSearch(const UndirectedDependencyGraph& g, std::vector<std::vector<Vertex>> members,
                 Objective objective, const SolverBudget& budget)
      : graph_(g),
        edges_(g.edges()),
        num_vertices_(g.num_vertices()),
        members_(std::move(members)),
        objective_(objective),
        budget_(budget),
        start_(std::chrono::steady_clock::now()) {
    const std::size_t m = edges_.size();
    const std::size_t k = members_.size();
    std::vector<std::vector<std::size_t>> edge_index(num_vertices_,
                                                     std::vector<std::size_t>(num_vertices_, m));
    for (std::size_t e = 0; e < m; ++e) {
      edge_index[edges_[e].first][edges_[e].second] = e;
      edge_index[edges_[e].second][edges_[e].first] = e;
    }
    set_edges_.assign(k, Bitset(m));
    cost_.resize(k);
    element_sets_.assign(m, {});
    for (std::size_t s = 0; s < k; ++s) {
      const auto& mem = members_[s];
      cost_[s] = objective_ == Objective::CliqueCount ? 1 : mem.size();
      for (std::size_t a = 0; a < mem.size(); ++a)
        for (std::size_t b = a + 1; b < mem.size(); ++b) {
          std::size_t e = edge_index[mem[a]][mem[b]];
          set_edges_[s].set(e);
          element_sets_[e].push_back(s);
        }
    }
    scratch_mark_.assign(k, 0);
    position_.assign(k, SIZE_MAX);
  }

  Solution solve(SolverStats* stats) {
    const std::size_t m = edges_.size();
    if (m == 0) return {};
    Bitset all(m);
    for (std::size_t e = 0; e < m; ++e) all.set(e);
    const Bitset none(members_.size());

    Solution greedy = greedy_cover(all);
    upper_ = greedy.cost;
    std::vector<double> multipliers(m, -1.0);
    {
      auto active = reduce_sets(all, none);
      root_lower_ = std::max(combinatorial_bound(all, active),
                             ceil_bound(lagrangian_bound(all, active, multipliers, greedy.cost,
                                                         kRootIterations)));
    }
    if (stats) {
      stats->candidate_cliques = members_.size();
      stats->root_lower_bound = root_lower_;
      stats->greedy_upper_bound = greedy.cost;
    }
    // Raise the target one unit at a time from the root bound: the first
    // feasible target is the optimum.
    std::optional<Solution> better;
    for (std::size_t target = root_lower_; target < greedy.cost && !better; ++target) {
      better = search(all, none, target + 1, multipliers);
      if (!better) root_lower_ = target + 1;
    }
    if (stats) stats->nodes = nodes_;
    return better ? *better : greedy;
  }

 private:
  static constexpr int kRootIterations = 300;
  static constexpr int kNodeIterations = 40;
  static constexpr double kEps = 1e-6;

  static std::size_t ceil_bound(double v) {
    return v <= 0.0 ? 0 : static_cast<std::size_t>(std::ceil(v - kEps));
  }

  // Budget accounting, one tick per search node.
  void tick() {
    ++nodes_;
    if (budget_.node_limit && nodes_ > *budget_.node_limit) fail("node budget exceeded");
    if (budget_.time_limit && (nodes_ & 63U) == 0 &&
        std::chrono::steady_clock::now() - start_ > *budget_.time_limit)
      fail("time budget exceeded");
  }
  void check_time() const {
    if (budget_.time_limit && std::chrono::steady_clock::now() - start_ > *budget_.time_limit)
      fail("time budget exceeded");
  }
  [[noreturn]] void fail(const char* why) const {
    throw BudgetExceeded(std::string(why) + " after " + std::to_string(nodes_) +
                             " nodes (bounds " + std::to_string(root_lower_) + ".." +
                             std::to_string(upper_) + ")",
                         root_lower_, upper_, nodes_);
  }

  // Unbanned sets that touch `u`, minus dominated ones, in index order.
  std::vector<std::size_t> reduce_sets(const Bitset& u, const Bitset& banned) {
    std::vector<std::size_t> touching;
    u.for_each([&](std::size_t e) {
      for (std::size_t s : element_sets_[e])
        if (!scratch_mark_[s] && !banned.test(s)) {
          scratch_mark_[s] = 1;
          touching.push_back(s);
        }
    });
    for (std::size_t s : touching) scratch_mark_[s] = 0;
    std::sort(touching.begin(), touching.end());

    std::vector<std::size_t> gain(touching.size());
    for (std::size_t i = 0; i < touching.size(); ++i)
      gain[i] = set_edges_[touching[i]].intersect_count(u);

    // A dominating set must contain every uncovered edge of the dominated
    // one, so only sets through its rarest such edge are compared.
    for (std::size_t i = 0; i < touching.size(); ++i) position_[touching[i]] = i;
    std::vector<char> dominated(touching.size(), 0);
    for (std::size_t i = 0; i < touching.size(); ++i) {
      if ((i & 1023U) == 1023U) check_time();
      const std::size_t a = touching[i];
      std::size_t rarest = SIZE_MAX;
      (set_edges_[a] & u).for_each([&](std::size_t e) {
        if (rarest == SIZE_MAX || element_sets_[e].size() < element_sets_[rarest].size())
          rarest = e;
      });
      for (std::size_t b : element_sets_[rarest]) {
        const std::size_t j = position_[b];
        if (j == SIZE_MAX || i == j || dominated[j] || gain[j] < gain[i]) continue;
        if (cost_[a] < cost_[b]) continue;
        if (!set_edges_[a].is_subset_of(set_edges_[b], u)) continue;
        // Equal restrictions at equal cost: keep the lower index.
        if (gain[j] == gain[i] && cost_[a] == cost_[b] && b > a) continue;
        dominated[i] = 1;
        break;
      }
    }
    for (std::size_t s : touching) position_[s] = SIZE_MAX;
    std::vector<std::size_t> active;
    for (std::size_t i = 0; i < touching.size(); ++i)
      if (!dominated[i]) active.push_back(touching[i]);
    return active;
  }

  // Cheap admissible bounds: a greedy dual-feasible assignment (elements with
  // few candidates first) and, for the assignment objective, a per-vertex
  // independent-set bound.
  std::size_t combinatorial_bound(const Bitset& u, const std::vector<std::size_t>& active) {
    const std::size_t m = edges_.size();
    std::vector<std::size_t> cand_count(m, 0);
    for (std::size_t s : active)
      (set_edges_[s] & u).for_each([&](std::size_t e) { ++cand_count[e]; });
    std::vector<std::size_t> order = u.to_vector();
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return cand_count[a] < cand_count[b];
    });
    std::vector<double> slack(members_.size(), 0.0);
    std::vector<char> is_active(members_.size(), 0);
    for (std::size_t s : active) {
      slack[s] = static_cast<double>(cost_[s]);
      is_active[s] = 1;
    }
    double dual = 0.0;
    for (std::size_t e : order) {
      double y = 1e300;
      for (std::size_t s : element_sets_[e])
        if (is_active[s]) y = std::min(y, slack[s]);
      if (y == 1e300 || y <= 0.0) continue;
      dual += y;
      for (std::size_t s : element_sets_[e])
        if (is_active[s]) slack[s] -= y;
    }
    std::size_t lb = ceil_bound(dual);

    if (objective_ == Objective::AssignmentCount) {
      // Cost decomposes per vertex: the cliques through v must cover v's
      // uncovered neighbours, and pairwise non-adjacent neighbours need
      // distinct cliques. Each clique also covers at most |C|-1 of them.
      std::vector<Bitset> open(num_vertices_, Bitset(num_vertices_));
      u.for_each([&](std::size_t e) {
        open[edges_[e].first].set(edges_[e].second);
        open[edges_[e].second].set(edges_[e].first);
      });
      std::vector<std::size_t> reach(num_vertices_, 0);
      for (std::size_t s : active)
        for (Vertex v : members_[s]) reach[v] = std::max(reach[v], members_[s].size() - 1);
      std::size_t per_vertex = 0;
      for (Vertex v = 0; v < num_vertices_; ++v) {
        const std::size_t degree = open[v].count();
        if (degree == 0) continue;
        if (reach[v] == 0) return SIZE_MAX / 2;
        per_vertex += std::max((degree + reach[v] - 1) / reach[v], independent_set_size(open[v]));
      }
      lb = std::max(lb, per_vertex);
    }
    return lb;
  }

  // Size of a greedy (minimum residual degree first) independent set of
  // the graph induced on `w`.
  std::size_t independent_set_size(Bitset w) const {
    std::size_t size = 0;
    while (w.any()) {
      std::size_t pick = SIZE_MAX, pick_degree = SIZE_MAX;
      w.for_each([&](std::size_t x) {
        std::size_t d = w.intersect_count(graph_.neighbors(x));
        if (d < pick_degree) {
          pick_degree = d;
          pick = x;
        }
      });
      ++size;
      w.reset(pick);
      w.subtract(graph_.neighbors(pick));
    }
    return size;
  }

  // Lagrangian relaxation of the covering constraints, maximised by
  // subgradient steps towards `target`. `mult` holds the multipliers (negative
  // entries are uninitialised) and is left at the best point found.
  double lagrangian_bound(const Bitset& u, const std::vector<std::size_t>& active,
                          std::vector<double>& mult, std::size_t target, int iterations) {
    std::vector<std::vector<std::size_t>> covers(active.size());
    for (std::size_t i = 0; i < active.size(); ++i)
      (set_edges_[active[i]] & u).for_each([&](std::size_t e) { covers[i].push_back(e); });
    const std::vector<std::size_t> elems = u.to_vector();

    // Uninitialised multipliers start at the fractional dual
    // min over sets of cost/|S ∩ U|, which is feasible on its own.
    std::vector<double> init(edges_.size(), 0.0);
    for (std::size_t e : elems) init[e] = 1e300;
    for (std::size_t i = 0; i < active.size(); ++i) {
      const double ratio =
          static_cast<double>(cost_[active[i]]) / static_cast<double>(covers[i].size());
      for (std::size_t e : covers[i]) init[e] = std::min(init[e], ratio);
    }
    for (std::size_t e : elems)
      if (mult[e] < 0.0) mult[e] = init[e] == 1e300 ? 0.0 : init[e];

    std::vector<double> best_mult = mult;
    double best = -1e300;
    double lambda = 2.0;
    int stale = 0;
    std::vector<double> grad(edges_.size(), 0.0);
    for (int it = 0; it < iterations; ++it) {
      if ((it & 15) == 15) check_time();
      double value = 0.0;
      for (std::size_t e : elems) {
        value += mult[e];
        grad[e] = 1.0;
      }
      for (std::size_t i = 0; i < active.size(); ++i) {
        double rc = static_cast<double>(cost_[active[i]]);
        for (std::size_t e : covers[i]) rc -= mult[e];
        if (rc < 0.0) {
          value += rc;
          for (std::size_t e : covers[i]) grad[e] -= 1.0;
        }
      }
      if (value > best + 1e-9) {
        best = value;
        best_mult = mult;
        stale = 0;
      } else if (++stale >= 5) {
        lambda *= 0.5;
        stale = 0;
      }
      if (ceil_bound(best) >= target || lambda < 1e-3) break;
      double norm = 0.0;
      for (std::size_t e : elems) {
        if (mult[e] <= 0.0 && grad[e] < 0.0) grad[e] = 0.0;
        norm += grad[e] * grad[e];
      }
      if (norm == 0.0) break;
      const double step = lambda * (static_cast<double>(target) - value) / norm;
      for (std::size_t e : elems) mult[e] = std::max(0.0, mult[e] + step * grad[e]);
    }
    mult = best_mult;
    return best;
  }

  // Residual edges grouped by shared candidate sets, in order of first edge.
  std::vector<Bitset> components(const Bitset& u, const std::vector<std::size_t>& active) {
    const std::size_t m = edges_.size();
    std::vector<std::size_t> parent(m);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    for (std::size_t s : active) {
      std::size_t first = m;
      (set_edges_[s] & u).for_each([&](std::size_t e) {
        if (first == m) {
          first = e;
        } else {
          std::size_t a = find(first), b = find(e);
          if (a != b) parent[std::max(a, b)] = std::min(a, b);
        }
      });
    }
    std::vector<Bitset> out;
    std::vector<std::size_t> slot(m, SIZE_MAX);
    u.for_each([&](std::size_t e) {
      std::size_t r = find(e);
      if (slot[r] == SIZE_MAX) {
        slot[r] = out.size();
        out.emplace_back(m);
      }
      out[slot[r]].set(e);
    });
    return out;
  }

  Solution greedy_cover(Bitset u) const {
    Solution sol;
    while (u.any()) {
      std::size_t best = SIZE_MAX;
      double best_score = -1.0;
      for (std::size_t s = 0; s < members_.size(); ++s) {
        std::size_t gain = set_edges_[s].intersect_count(u);
        if (gain == 0) continue;
        double score = static_cast<double>(gain) / static_cast<double>(cost_[s]);
        if (score > best_score) {
          best_score = score;
          best = s;
        }
      }
      sol.sets.push_back(best);
      sol.cost += cost_[best];
      u.subtract(set_edges_[best]);
    }
    // Drop sets made redundant by later picks.
    for (std::size_t i = sol.sets.size(); i-- > 0;) {
      Bitset rest(edges_.size());
      for (std::size_t j = 0; j < sol.sets.size(); ++j)
        if (j != i) rest |= set_edges_[sol.sets[j]];
      if (set_edges_[sol.sets[i]].is_subset_of(rest)) {
        sol.cost -= cost_[sol.sets[i]];
        sol.sets.erase(sol.sets.begin() + static_cast<std::ptrdiff_t>(i));
      }
    }
    return sol;
  }

  // Optimal cover of `u` by unbanned sets with cost strictly below `limit`,
  // if one exists.
  std::optional<Solution> search(Bitset u, Bitset banned, std::size_t limit,
                                 std::vector<double> mult) {
    tick();
    Solution taken;
    std::vector<std::size_t> active;
    std::vector<std::size_t> cand_count(edges_.size(), 0);
    double lagrangian = 0.0;
    bool fixing_done = false;
    while (true) {
      if (taken.cost >= limit) return std::nullopt;
      if (u.none()) return taken;
      active = reduce_sets(u, banned);

      std::fill(cand_count.begin(), cand_count.end(), 0);
      std::vector<std::size_t> only(edges_.size(), SIZE_MAX);
      for (std::size_t s : active)
        (set_edges_[s] & u).for_each([&](std::size_t e) {
          ++cand_count[e];
          only[e] = s;
        });
      // An uncoverable edge or one with a single candidate set.
      std::size_t forced = SIZE_MAX;
      bool dead = false;
      u.for_each([&](std::size_t e) {
        if (cand_count[e] == 0) dead = true;
        if (forced == SIZE_MAX && cand_count[e] == 1) forced = only[e];
      });
      if (dead) return std::nullopt;
      if (forced != SIZE_MAX) {
        taken.sets.push_back(forced);
        taken.cost += cost_[forced];
        u.subtract(set_edges_[forced]);
        continue;
      }
      if (fixing_done) break;

      const std::size_t room = limit - taken.cost;
      if (combinatorial_bound(u, active) >= room) return std::nullopt;
      lagrangian = lagrangian_bound(u, active, mult, room, kNodeIterations);
      if (ceil_bound(lagrangian) >= room) return std::nullopt;

      // Reduced-cost fixing: sets that would push the bound past the limit
      // are banned; sets whose removal would do so are taken.
      bool changed = false;
      for (std::size_t s : active) {
        double rc = static_cast<double>(cost_[s]);
        (set_edges_[s] & u).for_each([&](std::size_t e) { rc -= mult[e]; });
        if (rc > 0.0 && ceil_bound(lagrangian + rc) >= room) {
          banned.set(s);
          changed = true;
        } else if (rc < 0.0 && ceil_bound(lagrangian - rc) >= room) {
          taken.sets.push_back(s);
          taken.cost += cost_[s];
          u.subtract(set_edges_[s]);
          changed = true;
          break;
        }
      }
      if (!changed) fixing_done = true;
    }

    auto comps = components(u, active);
    if (comps.size() > 1) {
      std::vector<std::size_t> lbs;
      std::size_t total_lb = taken.cost;
      for (const auto& c : comps) {
        lbs.push_back(combinatorial_bound(c, reduce_sets(c, banned)));
        total_lb += lbs.back();
      }
      if (total_lb >= limit) return std::nullopt;
      std::size_t remaining_lb = total_lb - taken.cost;
      for (std::size_t i = 0; i < comps.size(); ++i) {
        remaining_lb -= lbs[i];
        std::size_t allowed = limit - taken.cost - remaining_lb;
        auto part = search(comps[i], banned, allowed, mult);
        if (!part) return std::nullopt;
        taken.sets.insert(taken.sets.end(), part->sets.begin(), part->sets.end());
        taken.cost += part->cost;
      }
      return taken;
    }

    // Branch on the edge with the fewest candidates; each branch bans the
    // candidates already explored.
    std::size_t pivot = SIZE_MAX;
    u.for_each([&](std::size_t e) {
      if (pivot == SIZE_MAX || cand_count[e] < cand_count[pivot]) pivot = e;
    });
    std::vector<std::pair<double, std::size_t>> branches;
    for (std::size_t s : active)
      if (set_edges_[s].test(pivot)) {
        double rc = static_cast<double>(cost_[s]);
        (set_edges_[s] & u).for_each([&](std::size_t e) { rc -= mult[e]; });
        branches.emplace_back(rc, s);
      }
    std::sort(branches.begin(), branches.end());

    std::optional<Solution> best;
    std::size_t cur_limit = limit - taken.cost;
    for (const auto& [rc, s] : branches) {
      if (cost_[s] < cur_limit) {
        Bitset rest = u;
        rest.subtract(set_edges_[s]);
        auto sub = search(std::move(rest), banned, cur_limit - cost_[s], mult);
        if (sub) {
          sub->sets.insert(sub->sets.begin(), s);
          sub->cost += cost_[s];
          cur_limit = sub->cost;
          best = std::move(sub);
        }
      }
      banned.set(s);
    }
    if (!best) return std::nullopt;
    taken.sets.insert(taken.sets.end(), best->sets.begin(), best->sets.end());
    taken.cost += best->cost;
    return taken;
  }

  const UndirectedDependencyGraph& graph_;
  std::vector<Edge> edges_;
  std::size_t num_vertices_;
  std::vector<std::vector<Vertex>> members_;
  Objective objective_;
  SolverBudget budget_;
  std::chrono::steady_clock::time_point start_;

  std::vector<Bitset> set_edges_;
  std::vector<std::size_t> cost_;
  std::vector<std::vector<std::size_t>> element_sets_;
  std::vector<char> scratch_mark_;
  std::vector<std::size_t> position_;

  std::uint64_t nodes_ = 0;
  std::size_t root_lower_ = 0;
  std::size_t upper_ = 0;
};

// Node and time accounting for candidate enumeration, which can explode on
// dense graphs before the search proper starts.
class EnumerationBudget {
 public:
  explicit EnumerationBudget(const SolverBudget& budget)
      : budget_(budget), start_(std::chrono::steady_clock::now()) {}
  void count() {
    ++count_;
    if (budget_.candidate_limit && count_ > *budget_.candidate_limit)
      throw BudgetExceeded("candidate budget exceeded while enumerating cliques", 0, 0, 0);
    if (budget_.time_limit && (count_ & 255) == 0 &&
        std::chrono::steady_clock::now() - start_ > *budget_.time_limit)
      throw BudgetExceeded("time budget exceeded while enumerating cliques", 0, 0, 0);
  }

 private:
  const SolverBudget& budget_;
  std::chrono::steady_clock::time_point start_;
  std::uint64_t count_ = 0;
};

// Every clique of size >= 2, grown in increasing vertex order.
inline void all_cliques(const UndirectedDependencyGraph& g, std::vector<Vertex>& current,
                        const Bitset& extend, std::vector<std::vector<Vertex>>& out,
                        EnumerationBudget& budget) {
  extend.for_each([&](std::size_t v) {
    if (!current.empty() && v < current.back()) return;
    current.push_back(v);
    if (current.size() >= 2) {
      out.push_back(current);
      budget.count();
    }
    Bitset next = extend & g.neighbors(v);
    if (next.any()) all_cliques(g, current, next, out, budget);
    current.pop_back();
  });
}

}  // namespace detail

// Minimum number of cliques (the intersection number). Ties are resolved by
// the fixed search order, so the result is reproducible.
inline EdgeCliqueCover min_clique_ecc(const UndirectedDependencyGraph& g,
                                      const SolverBudget& budget = {},
                                      SolverStats* stats = nullptr) {
  std::vector<std::vector<Vertex>> sets;
  if (g.num_vertices() > 0) {
    detail::EnumerationBudget enum_budget(budget);
    std::vector<Vertex> r;
    Bitset p(g.num_vertices());
    for (Vertex v = 0; v < g.num_vertices(); ++v) p.set(v);
    auto emit = [&](const std::vector<Vertex>& members) {
      enum_budget.count();
      if (members.size() >= 2) sets.push_back(members);
    };
    detail::bron_kerbosch(g, r, p, Bitset(g.num_vertices()), emit);
    for (auto& s : sets) std::sort(s.begin(), s.end());
    std::sort(sets.begin(), sets.end());
  }
  detail::SetCoverSearch search(g, sets, Objective::CliqueCount, budget);
  auto sol = search.solve(stats);
  std::vector<Clique> cliques;
  for (std::size_t s : sol.sets) cliques.emplace_back(sets[s]);
  return make_cover(std::move(cliques), Objective::CliqueCount);
}

// Minimum total number of vertex-to-clique assignments, sum of |C|.
inline EdgeCliqueCover min_assignment_ecc(const UndirectedDependencyGraph& g,
                                          const SolverBudget& budget = {},
                                          SolverStats* stats = nullptr) {
  std::vector<std::vector<Vertex>> sets;
  std::vector<Vertex> current;
  detail::EnumerationBudget enum_budget(budget);
  Bitset all(g.num_vertices());
  for (Vertex v = 0; v < g.num_vertices(); ++v) all.set(v);
  detail::all_cliques(g, current, all, sets, enum_budget);
  std::sort(sets.begin(), sets.end());
  detail::SetCoverSearch search(g, sets, Objective::AssignmentCount, budget);
  auto sol = search.solve(stats);
  std::vector<Clique> cliques;
  for (std::size_t s : sol.sets) cliques.emplace_back(sets[s]);
  return make_cover(std::move(cliques), Objective::AssignmentCount);
}

inline EdgeCliqueCover min_ecc(const UndirectedDependencyGraph& g, Objective objective,
                               const SolverBudget& budget = {}, SolverStats* stats = nullptr) {
  return objective == Objective::CliqueCount ? min_clique_ecc(g, budget, stats)
                                             : min_assignment_ecc(g, budget, stats);
}

}  // namespace medil
