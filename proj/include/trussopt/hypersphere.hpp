#pragma once

// Adaptive search-space decomposition ("hypersphere search").
//
// Starting from the unloaded state, each step bounds the optimizer to a box
// around the latest equilibrated center, runs a handful of independent
// trials, and promotes the farthest optimal trial that does not point back
// toward the previous center. Centers therefore walk along the equilibrium
// path in the (d, lambda) plane.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "trussopt/arc_length.hpp"
#include "trussopt/rng.hpp"
#include "trussopt/run.hpp"
#include "trussopt/search_domain.hpp"

namespace trussopt {

class NoOptimalTrialError : public Error {
 public:
  using Error::Error;
};

class NoForwardTrialError : public Error {
 public:
  using Error::Error;
};

class SeedSphereFailure : public Error {
 public:
  using Error::Error;
};

enum class RadiusMode { fixed, halving, additive };

inline std::string_view to_string(RadiusMode m) {
  switch (m) {
    case RadiusMode::fixed: return "fixed";
    case RadiusMode::halving: return "halving";
    case RadiusMode::additive: return "additive";
  }
  return "unknown";
}

inline RadiusMode parse_radius_mode(std::string_view s) {
  if (s == "fixed") return RadiusMode::fixed;
  if (s == "halving") return RadiusMode::halving;
  if (s == "additive") return RadiusMode::additive;
  throw InvalidConfigError("unknown radius schedule '" + std::string(s) + "'");
}

struct SphereSchedule {
  RadiusMode mode{RadiusMode::fixed};
  double r0{5.0};
  double additive_increment{5.0};
  double min_radius{0.5};

  void validate() const {
    if (!(r0 > 0.0)) throw InvalidConfigError("initial radius must be positive");
    if (!(min_radius > 0.0)) throw InvalidConfigError("minimum radius must be positive");
    if (mode == RadiusMode::additive && !(additive_increment > 0.0)) {
      throw InvalidConfigError("additive increment must be positive");
    }
  }
};

struct Hypersphere {
  Candidate center;
  double radius{5.0};
  std::size_t index{1};
};

/// Box around the center: each displacement within +-r, lambda within
/// +-r * lambda_per_radius, intersected with `base`.
inline SearchDomain sphere_domain(const Hypersphere& s, const SearchDomain& base,
                                  double lambda_per_radius = 0.04) {
  if (!(s.radius > 0.0)) throw InvalidConfigError("sphere radius must be positive");
  if (s.center.u.size() + 1 != base.dimension()) {
    throw DimensionMismatchError("sphere center does not match the domain dimension");
  }
  SearchDomain box;
  for (double v : s.center.u) {
    box.lower.push_back(v - s.radius);
    box.upper.push_back(v + s.radius);
  }
  box.lower.push_back(s.center.lambda - s.radius * lambda_per_radius);
  box.upper.push_back(s.center.lambda + s.radius * lambda_per_radius);
  try {
    return box.intersect(base);
  } catch (const InvalidDomainError&) {
    throw InvalidDomainError("sphere " + std::to_string(s.index) + " lies outside the base domain");
  }
}

/// Next radius after a failed sphere, or nullopt once it drops below
/// min_radius.
inline std::optional<double> adapt_radius(double r_prev, const SphereSchedule& schedule) {
  if (!(r_prev > 0.0)) throw InvalidConfigError("radius must be positive");
  double r = r_prev;
  switch (schedule.mode) {
    case RadiusMode::fixed: break;
    case RadiusMode::halving: r = r_prev * 0.5; break;
    case RadiusMode::additive: r = r_prev + schedule.additive_increment; break;
  }
  if (r < schedule.min_radius) return std::nullopt;
  return r;
}

/// An optimizer outcome projected onto the (d, lambda) plane.
struct TrialPoint {
  PathCoord at;
  double objective{0.0};
};

namespace detail {

inline double distance(const PathCoord& a, const PathCoord& b) {
  return std::hypot(a.d - b.d, a.lambda - b.lambda);
}

/// Larger distance wins; near-equal distances fall back to larger d, then
/// lower objective.
inline bool farther(const TrialPoint& a, double dist_a, const TrialPoint& b, double dist_b) {
  const double tie = 1e-12 * std::max(1.0, std::max(dist_a, dist_b));
  if (std::abs(dist_a - dist_b) > tie) return dist_a > dist_b;
  if (a.at.d != b.at.d) return a.at.d > b.at.d;
  return a.objective < b.objective;
}

}  // namespace detail

/// Second center: the optimal trial farthest from `prev` in the (d, lambda)
/// plane, preferring trials that do not decrease d.
inline std::size_t select_center_initial(std::span<const TrialPoint> trials, const PathCoord& prev,
                                         double tol_opt) {
  std::optional<std::size_t> best;
  bool best_forward = false;
  double best_dist = 0.0;
  for (std::size_t i = 0; i < trials.size(); ++i) {
    if (!(trials[i].objective <= tol_opt)) continue;
    const bool forward = trials[i].at.d >= prev.d;
    const double dist = detail::distance(trials[i].at, prev);
    if (!best || (forward && !best_forward) ||
        (forward == best_forward && detail::farther(trials[i], dist, trials[*best], best_dist))) {
      best = i;
      best_forward = forward;
      best_dist = dist;
    }
  }
  if (!best) throw NoOptimalTrialError("no optimal trial in the sphere");
  return *best;
}

/// Later centers: among optimal trials with b . a < 0, where
/// a = c_prev2 - c_prev and b = trial - c_prev, the one with largest |b|.
inline std::size_t select_center_directional(std::span<const TrialPoint> trials,
                                             const PathCoord& c_prev, const PathCoord& c_prev2,
                                             double tol_opt) {
  const double ad = c_prev2.d - c_prev.d;
  const double al = c_prev2.lambda - c_prev.lambda;
  std::optional<std::size_t> best;
  double best_dist = 0.0;
  bool any_optimal = false;
  for (std::size_t i = 0; i < trials.size(); ++i) {
    if (!(trials[i].objective <= tol_opt)) continue;
    any_optimal = true;
    const double bd = trials[i].at.d - c_prev.d;
    const double bl = trials[i].at.lambda - c_prev.lambda;
    if (!(bd * ad + bl * al < 0.0)) continue;
    const double dist = std::hypot(bd, bl);
    if (!best || detail::farther(trials[i], dist, trials[*best], best_dist)) {
      best = i;
      best_dist = dist;
    }
  }
  if (!any_optimal) throw NoOptimalTrialError("no optimal trial in the sphere");
  if (!best) throw NoForwardTrialError("every optimal trial points back along the path");
  return *best;
}

struct TraceStop {
  double d_max{250.0};
  std::size_t max_spheres{1000};
  /// Consecutive failed spheres tolerated before giving up; 0 = unlimited.
  std::size_t stall_patience{0};
};

struct TraceOptions {
  SphereSchedule schedule;
  OptimizerConfig optimizer;
  std::size_t trials_per_sphere{5};
  TraceStop stop;
  double seed_half_width_u{10.0};
  double seed_half_width_lambda{0.2};
  double lambda_per_radius{0.04};
  double tol_opt{1e-5};
  bool retry_with_doubled_trials{true};
  /// Optimal trials closer than this fraction of r to the current center (in
  /// the (d, lambda) plane) do not count as progress.
  double min_advance_fraction{0.01};
};

inline constexpr std::string_view kReachedDMax = "reached-d-max";
inline constexpr std::string_view kMaxSpheres = "max-spheres";
inline constexpr std::string_view kBucklingStall = "buckling-point stall";
inline constexpr std::string_view kStallPatience = "stall-patience";

/// One optimal optimizer outcome found during the trace.
struct TraceSolution {
  Candidate candidate;
  PathCoord at;
  std::size_t sphere_index{0};  ///< 1 = seed sphere
  std::size_t run_id{0};
  std::uint64_t seed{0};
  std::size_t generations{0};
  bool is_center{false};
};

/// One sphere construction, successful or not.
struct SphereAttempt {
  std::size_t sphere_index{0};
  std::size_t parent_center{0};  ///< index into TraceResult::centers
  double radius{0.0};
  std::size_t trials{0};
  std::size_t optimal_trials{0};
  std::size_t generations{0};
  bool advanced{false};
  std::string outcome;
};

struct TraceResult {
  std::vector<Candidate> centers;
  std::vector<PathCoord> center_coords;
  std::vector<TraceSolution> all_optimal;
  std::vector<SphereAttempt> attempts;
  std::string termination;
  bool starts_unloaded{false};  ///< first center is u = 0, lambda = 0 rather than a trial
  std::size_t total_generations{0};
  std::size_t total_runs{0};

  /// Generations spent per sphere attempt.
  std::vector<std::size_t> effort() const {
    std::vector<std::size_t> e;
    e.reserve(attempts.size());
    for (const SphereAttempt& a : attempts) e.push_back(a.generations);
    return e;
  }

  /// Generations spent around each center (all attempts launched from it).
  std::vector<std::size_t> effort_per_center() const {
    std::vector<std::size_t> e(centers.size(), 0);
    for (const SphereAttempt& a : attempts) {
      if (a.parent_center < e.size()) e[a.parent_center] += a.generations;
    }
    return e;
  }
};

using AttemptObserver = std::function<void(const SphereAttempt&, const TraceResult&)>;

namespace detail {

struct SphereRuns {
  std::vector<TrialPoint> points;
  std::vector<TraceSolution> solutions;  ///< parallel to `points`
  std::size_t generations{0};
};

inline void run_sphere_trials(const TrussModel& model, const SearchDomain& domain,
                              const TraceOptions& opt, std::size_t count, std::size_t sphere_index,
                              TraceResult& result, SphereRuns& out) {
  for (std::size_t t = 0; t < count; ++t) {
    OptimizerConfig cfg = opt.optimizer;
    cfg.seed = derive_seed(opt.optimizer.seed, result.total_runs);
    cfg.record_diversity = false;  // not reported by the trace
    const RunRecord rec = optimize(model, domain, cfg);
    TraceSolution sol{rec.best, rec.path_coord(), sphere_index, result.total_runs,
                      cfg.seed,  rec.generations_used, false};
    ++result.total_runs;
    out.generations += rec.generations_used;
    out.points.push_back({sol.at, rec.final_objective()});
    out.solutions.push_back(std::move(sol));
  }
}

inline void keep_optimal(const SphereRuns& runs, double tol, TraceResult& result,
                         std::optional<std::size_t> center, SphereAttempt& attempt,
                         std::optional<std::size_t> also_center = std::nullopt) {
  for (std::size_t i = 0; i < runs.points.size(); ++i) {
    if (!(runs.points[i].objective <= tol)) continue;
    TraceSolution s = runs.solutions[i];
    s.is_center = (center && *center == i) || (also_center && *also_center == i);
    result.all_optimal.push_back(std::move(s));
    ++attempt.optimal_trials;
  }
}

}  // namespace detail

/// Traces the equilibrium path. Throws SeedSphereFailure when the first
/// sphere yields no optimal trial.
inline TraceResult trace_path(const TrussModel& model, const SearchDomain& base,
                              const TraceOptions& opt, const AttemptObserver& observer = {}) {
  opt.schedule.validate();
  opt.optimizer.validate();
  base.validate();
  if (opt.trials_per_sphere < 1) throw InvalidConfigError("trials_per_sphere must be at least 1");
  if (base.dimension() != model.search_dimension()) {
    throw DimensionMismatchError("base domain does not match the model");
  }

  TraceResult result;
  auto push_center = [&](const Candidate& c) {
    result.centers.push_back(c);
    result.center_coords.push_back({control_point(model, c), c.lambda});
  };
  auto finish_attempt = [&](SphereAttempt& a) {
    result.total_generations += a.generations;
    result.attempts.push_back(a);
    if (observer) observer(result.attempts.back(), result);
  };

  Candidate origin = undeformed(model);
  origin.objective = objective(model, origin);
  const bool origin_optimal = *origin.objective <= opt.tol_opt;
  if (origin_optimal) {
    result.starts_unloaded = true;
    push_center(origin);
    if (result.center_coords.back().d >= opt.stop.d_max) {
      result.termination = kReachedDMax;
      return result;
    }
  }

  // Seed sphere around the unloaded state.
  {
    SearchDomain seed_box = SearchDomain::uniform(
        model.free_dof_count(), {-opt.seed_half_width_u, opt.seed_half_width_u},
        {-opt.seed_half_width_lambda, opt.seed_half_width_lambda});
    seed_box = seed_box.intersect(base);
    SphereAttempt attempt{1, 0, 0.0, 0, 0, 0, false, ""};
    detail::SphereRuns runs;
    detail::run_sphere_trials(model, seed_box, opt, opt.trials_per_sphere, 1, result, runs);
    auto any_optimal = [&] {
      for (const TrialPoint& p : runs.points) {
        if (p.objective <= opt.tol_opt) return true;
      }
      return false;
    };
    if (!any_optimal() && opt.retry_with_doubled_trials) {
      detail::run_sphere_trials(model, seed_box, opt, 2 * opt.trials_per_sphere, 1, result, runs);
    }
    attempt.trials = runs.points.size();
    attempt.generations = runs.generations;
    if (!any_optimal()) {
      double best = std::numeric_limits<double>::infinity();
      for (const TrialPoint& p : runs.points) best = std::min(best, p.objective);
      attempt.outcome = "no optimal trial";
      finish_attempt(attempt);
      throw SeedSphereFailure("seed sphere produced no optimal trial in " +
                              std::to_string(runs.points.size()) + " runs (best objective " +
                              std::to_string(best) + ", tolerance " + std::to_string(opt.tol_opt) +
                              ")");
    }
    std::optional<std::size_t> first;
    if (!origin_optimal) {
      // First center: the optimal trial nearest the undeformed state.
      std::size_t nearest = 0;
      double nd = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < runs.points.size(); ++i) {
        if (runs.points[i].objective <= opt.tol_opt && std::abs(runs.points[i].at.d) < nd) {
          nd = std::abs(runs.points[i].at.d);
          nearest = i;
        }
      }
      push_center(runs.solutions[nearest].candidate);
      first = nearest;
    }
    std::vector<TrialPoint> rest = runs.points;
    if (first) rest[*first].objective = std::numeric_limits<double>::infinity();
    std::size_t pick = 0;
    try {
      pick = select_center_initial(rest, result.center_coords.back(), opt.tol_opt);
    } catch (const NoOptimalTrialError&) {
      throw SeedSphereFailure("seed sphere produced a single optimal trial; no second center");
    }
    detail::keep_optimal(runs, opt.tol_opt, result, pick, attempt, first);
    push_center(runs.solutions[pick].candidate);
    attempt.parent_center = result.centers.size() - 2;
    attempt.advanced = true;
    attempt.outcome = "advanced";
    finish_attempt(attempt);
  }

  double radius = opt.schedule.r0;
  std::size_t consecutive_failures = 0;
  while (true) {
    if (result.center_coords.back().d >= opt.stop.d_max) {
      result.termination = kReachedDMax;
      break;
    }
    if (result.attempts.size() >= opt.stop.max_spheres) {
      result.termination = kMaxSpheres;
      break;
    }
    const std::size_t parent = result.centers.size() - 1;
    const Hypersphere sphere{result.centers.back(), radius, result.attempts.size() + 1};
    const SearchDomain box = sphere_domain(sphere, base, opt.lambda_per_radius);

    SphereAttempt attempt{sphere.index, parent, radius, 0, 0, 0, false, ""};
    detail::SphereRuns runs;
    detail::run_sphere_trials(model, box, opt, opt.trials_per_sphere, sphere.index, result, runs);

    std::optional<std::size_t> pick;
    auto try_select = [&] {
      // trials sitting on the center are pinned to it so they never pass the
      // strict direction test
      std::vector<TrialPoint> pts = runs.points;
      const PathCoord& here = result.center_coords[parent];
      for (TrialPoint& tp : pts) {
        if (detail::distance(tp.at, here) < opt.min_advance_fraction * radius) tp.at = here;
      }
      try {
        pick = select_center_directional(pts, result.center_coords[parent],
                                         result.center_coords[parent - 1], opt.tol_opt);
        return true;
      } catch (const NoOptimalTrialError&) {
        attempt.outcome = "no optimal trial";
      } catch (const NoForwardTrialError&) {
        attempt.outcome = "no forward trial";
      }
      return false;
    };
    bool ok = try_select();
    if (!ok && attempt.outcome == "no optimal trial" && opt.retry_with_doubled_trials) {
      detail::run_sphere_trials(model, box, opt, 2 * opt.trials_per_sphere, sphere.index, result,
                                runs);
      ok = try_select();
    }
    attempt.trials = runs.points.size();
    attempt.generations = runs.generations;
    detail::keep_optimal(runs, opt.tol_opt, result, pick, attempt);

    if (ok) {
      push_center(runs.solutions[*pick].candidate);
      attempt.advanced = true;
      attempt.outcome = "advanced";
      consecutive_failures = 0;
      finish_attempt(attempt);
      continue;
    }
    finish_attempt(attempt);
    ++consecutive_failures;
    const std::optional<double> next = adapt_radius(radius, opt.schedule);
    if (!next) {
      result.termination = kBucklingStall;
      break;
    }
    radius = *next;
    if (opt.stop.stall_patience > 0 && consecutive_failures >= opt.stop.stall_patience) {
      result.termination = kStallPatience;
      break;
    }
  }
  return result;
}

}  // namespace trussopt
