#pragma once

// Samples -> dependency graph -> minimum cover -> minimal causal model.

#include <string>
#include <utility>

#include "medil/ecc.hpp"
#include "medil/errors.hpp"
#include "medil/independence.hpp"
#include "medil/mcm.hpp"

namespace medil {

struct PipelineResult {
  UndirectedDependencyGraph udg;
  IndependenceTestReport report;
  EdgeCliqueCover cover;
  MeDILCausalModel model;
};

// The cover search ran out of budget; the estimated graph and the test
// report are still available.
class PipelineBudgetExceeded : public BudgetExceeded {
 public:
  PipelineBudgetExceeded(const BudgetExceeded& cause, UndirectedDependencyGraph udg,
                         IndependenceTestReport report)
      : BudgetExceeded(cause), udg_(std::move(udg)), report_(std::move(report)) {}
  const UndirectedDependencyGraph& udg() const noexcept { return udg_; }
  const IndependenceTestReport& report() const noexcept { return report_; }

 private:
  UndirectedDependencyGraph udg_;
  IndependenceTestReport report_;
};

inline PipelineResult run_pipeline(const SampleMatrix& samples, Objective objective,
                                   const IndependenceTestOptions& options = {},
                                   const SolverBudget& budget = {}) {
  auto [udg, report] = estimate_udg(samples, options);
  EdgeCliqueCover cover;
  try {
    cover = min_ecc(udg, objective, budget);
  } catch (const BudgetExceeded& e) {
    throw PipelineBudgetExceeded(e, std::move(udg), std::move(report));
  }
  auto model = build_mcm(cover, udg.num_vertices());
  if (samples.labels()) model.set_measurement_labels(*samples.labels());
  if (!is_observationally_consistent(model, udg))
    throw InvariantViolation("built model does not reproduce the estimated dependencies");
  return {std::move(udg), std::move(report), std::move(cover), std::move(model)};
}

}  // namespace medil
