#pragma once

// Arc-length step constraints in the (d, lambda) plane: the step-size
// equality and the no-backtracking inequality. Both are used as post-hoc
// feasibility filters on equilibrated points, not as search penalties.

#include <cmath>
#include <optional>

namespace trussopt {

struct PathCoord {
  double d{0.0};
  double lambda{0.0};
};

struct ArcStep {
  PathCoord current;
  std::optional<PathCoord> previous;  ///< absent on the first step
  double delta{1.0};
  double scale_d{1.0};
  double scale_lambda{1.0};
};

/// sqrt((dT - di)^2 + (lT - li)^2) - delta, with optional per-axis scales.
inline double arc_equality_residual(const PathCoord& trial, const ArcStep& step) {
  const double dd = step.scale_d * (trial.d - step.current.d);
  const double dl = step.scale_lambda * (trial.lambda - step.current.lambda);
  return std::sqrt(dd * dd + dl * dl) - step.delta;
}

/// (dT - di)(d_{i-1} - di) + (lT - li)(l_{i-1} - li); 0 on the first step.
inline double arc_direction_projection(const PathCoord& trial, const ArcStep& step) {
  if (!step.previous) return 0.0;
  const double sd = step.scale_d * step.scale_d;
  const double sl = step.scale_lambda * step.scale_lambda;
  return sd * (trial.d - step.current.d) * (step.previous->d - step.current.d) +
         sl * (trial.lambda - step.current.lambda) * (step.previous->lambda - step.current.lambda);
}

inline bool arc_direction_ok(const PathCoord& trial, const ArcStep& step) {
  if (!step.previous) return true;
  return arc_direction_projection(trial, step) <= 0.0;
}

/// Accepts trials within `tolerance` of the step-size equality (default
/// 5% of delta) that also satisfy the direction inequality.
struct ArcFilter {
  ArcStep step;
  std::optional<double> tolerance;

  double effective_tolerance() const { return tolerance.value_or(0.05 * step.delta); }

  bool accepts(const PathCoord& trial) const {
    return std::abs(arc_equality_residual(trial, step)) <= effective_tolerance() &&
           arc_direction_ok(trial, step);
  }
};

}  // namespace trussopt
