#pragma once

#include <chrono>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "trussopt/arc_length.hpp"
#include "trussopt/model.hpp"
#include "trussopt/optimizers/minimize.hpp"
#include "trussopt/search_domain.hpp"

namespace trussopt {

/// Trace of one optimizer run on the equilibrium objective.
struct RunRecord {
  OptimizerConfig config;
  Candidate best;
  double control_d{0.0};
  std::size_t generations_used{0};
  std::size_t evaluations{0};
  std::vector<double> history;
  std::vector<double> diversity;
  bool converged{false};
  std::optional<bool> arc_feasible;  ///< set when a filter was supplied
  double wall_time_s{0.0};
  int cell{-1};       ///< decomposition cell, -1 outside informed decomposition
  std::string error;  ///< non-empty when the run could not execute

  double final_objective() const {
    return history.empty() ? std::numeric_limits<double>::infinity() : history.back();
  }
  PathCoord path_coord() const { return {control_d, best.lambda}; }
};

/// Minimises the equilibrium objective over `domain`. The returned best
/// candidate lies inside the domain; an optional arc filter flags whether it
/// satisfies the step constraints.
inline RunRecord optimize(const TrussModel& model, const SearchDomain& domain,
                          const OptimizerConfig& config,
                          const std::optional<ArcFilter>& filter = std::nullopt) {
  config.validate();
  domain.validate();
  if (domain.dimension() != model.search_dimension()) {
    throw DimensionMismatchError("domain dimension " + std::to_string(domain.dimension()) +
                                 " does not match model search dimension " +
                                 std::to_string(model.search_dimension()));
  }
  const std::size_t n = model.free_dof_count();
  auto f = [&model, n](std::span<const double> x) {
    return objective(model, x.first(n), x[n]);
  };

  const auto t0 = std::chrono::steady_clock::now();
  OptimizationResult res = minimize(f, domain, config);
  const auto t1 = std::chrono::steady_clock::now();

  RunRecord rec;
  rec.config = config;
  rec.best = from_search_vector(res.best);
  rec.best.objective = res.best_value;
  rec.control_d = control_point(model, rec.best);
  rec.generations_used = res.generations;
  rec.evaluations = res.evaluations;
  rec.history = std::move(res.history);
  rec.diversity = std::move(res.diversity);
  rec.converged = res.converged;
  rec.wall_time_s = std::chrono::duration<double>(t1 - t0).count();
  if (filter) rec.arc_feasible = rec.converged && filter->accepts(rec.path_coord());
  return rec;
}

}  // namespace trussopt
