#pragma once

// Informed (manual) decomposition of the search space: the control-point
// range is cut into cells, optionally crossed with staged bounds on every
// displacement variable, and each cell receives independent runs.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "trussopt/rng.hpp"
#include "trussopt/run.hpp"
#include "trussopt/search_domain.hpp"

namespace trussopt {

struct DecompositionPlan {
  std::vector<Interval> control_intervals;
  /// Each stage bounds every free displacement (one interval per variable).
  std::vector<std::vector<Interval>> variable_stages;
  std::size_t trials_per_cell{1};

  std::size_t cell_count() const {
    return control_intervals.size() * std::max<std::size_t>(1, variable_stages.size());
  }

  void validate(std::size_t free_dofs) const {
    if (control_intervals.empty()) throw InvalidConfigError("plan needs at least one control interval");
    if (trials_per_cell < 1) throw InvalidConfigError("trials_per_cell must be at least 1");
    for (std::size_t i = 0; i < control_intervals.size(); ++i) {
      const Interval& c = control_intervals[i];
      if (!(c.lo <= c.hi)) throw InvalidConfigError("control interval " + std::to_string(i) + " is reversed");
      if (i > 0 && c.lo < control_intervals[i - 1].hi) {
        throw InvalidConfigError("control intervals must be ordered and non-overlapping");
      }
    }
    for (const auto& stage : variable_stages) {
      if (stage.size() != free_dofs) {
        throw InvalidConfigError("variable stage must give one interval per free displacement");
      }
      for (const Interval& v : stage) {
        if (!(v.lo <= v.hi)) throw InvalidConfigError("variable stage interval is reversed");
      }
    }
  }

  /// `count` equal control cells covering [lo, hi].
  static DecompositionPlan uniform_cells(double lo, double hi, std::size_t count,
                                         std::size_t trials) {
    DecompositionPlan p;
    const double w = (hi - lo) / static_cast<double>(count);
    for (std::size_t i = 0; i < count; ++i) {
      p.control_intervals.push_back({lo + w * static_cast<double>(i),
                                     i + 1 == count ? hi : lo + w * static_cast<double>(i + 1)});
    }
    p.trials_per_cell = trials;
    return p;
  }
};

/// Cell domain: base domain with the control variable restricted to the
/// interval (mapped through the control sign) and displacements to the stage.
inline SearchDomain decomposition_cell_domain(const TrussModel& model, const SearchDomain& base,
                                              const Interval& control,
                                              const std::vector<Interval>* stage) {
  const auto* c = std::get_if<NodeAxisControl>(&model.control().mode);
  if (c == nullptr) {
    throw InvalidConfigError("informed decomposition needs a node-axis control point");
  }
  SearchDomain cell = base;
  if (stage != nullptr) {
    for (std::size_t k = 0; k < stage->size(); ++k) {
      cell.lower[k] = (*stage)[k].lo;
      cell.upper[k] = (*stage)[k].hi;
    }
  }
  const auto k = static_cast<std::size_t>(model.dof_index(model.node_index(c->node), c->axis));
  const double a = c->sign * control.lo;
  const double b = c->sign * control.hi;
  cell.lower[k] = std::min(a, b);
  cell.upper[k] = std::max(a, b);
  return cell.intersect(base);
}

/// Runs `trials_per_cell` optimisations per cell. Cells that cannot run
/// yield records with `error` set, so the result always holds
/// cell_count() * trials_per_cell records. Seeds derive from config.seed.
inline std::vector<RunRecord> informed_decomposition(const TrussModel& model,
                                                     const SearchDomain& base,
                                                     const DecompositionPlan& plan,
                                                     const OptimizerConfig& config) {
  plan.validate(model.free_dof_count());
  std::vector<RunRecord> out;
  out.reserve(plan.cell_count() * plan.trials_per_cell);
  const std::size_t stages = std::max<std::size_t>(1, plan.variable_stages.size());
  std::size_t cell_index = 0;
  for (const Interval& control : plan.control_intervals) {
    for (std::size_t s = 0; s < stages; ++s, ++cell_index) {
      const std::vector<Interval>* stage =
          plan.variable_stages.empty() ? nullptr : &plan.variable_stages[s];
      std::optional<SearchDomain> cell;
      std::string cell_error;
      try {
        cell = decomposition_cell_domain(model, base, control, stage);
      } catch (const Error& e) {
        cell_error = e.what();
      }
      for (std::size_t t = 0; t < plan.trials_per_cell; ++t) {
        OptimizerConfig cfg = config;
        cfg.seed = derive_seed(config.seed, cell_index * plan.trials_per_cell + t);
        RunRecord rec;
        if (cell) {
          try {
            rec = optimize(model, *cell, cfg);
          } catch (const Error& e) {
            rec.config = cfg;
            rec.error = e.what();
          }
        } else {
          rec.config = cfg;
          rec.error = cell_error;
        }
        rec.cell = static_cast<int>(cell_index);
        out.push_back(std::move(rec));
      }
    }
  }
  return out;
}

/// Componentwise [min, max] of (u..., lambda) over records whose best
/// objective is at most `tol`. Empty when no record qualifies.
inline std::vector<Interval> variable_range_report(const std::vector<RunRecord>& records,
                                                   double tol) {
  std::vector<Interval> out;
  for (const RunRecord& r : records) {
    if (!r.error.empty() || !r.best.objective || *r.best.objective > tol) continue;
    const std::vector<double> x = to_search_vector(r.best);
    if (out.empty()) {
      for (double v : x) out.push_back({v, v});
      continue;
    }
    if (x.size() != out.size()) throw DimensionMismatchError("records of different dimension");
    for (std::size_t i = 0; i < x.size(); ++i) {
      out[i].lo = std::min(out[i].lo, x[i]);
      out[i].hi = std::max(out[i].hi, x[i]);
    }
  }
  return out;
}

}  // namespace trussopt
