#pragma once

// Post-processing of solution clouds: density clustering in the (d, lambda)
// plane and convergence statistics over many runs.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "trussopt/errors.hpp"
#include "trussopt/run.hpp"

namespace trussopt {

struct PathPoint {
  double d{0.0};
  double lambda{0.0};
  double objective{0.0};
  long run_id{0};
};

inline constexpr int kNoise = -1;
inline constexpr double kDefaultLambdaScale = 100.0;

namespace detail {

inline double path_distance(const PathPoint& a, const PathPoint& b, double lambda_scale) {
  return std::hypot(a.d - b.d, (a.lambda - b.lambda) * lambda_scale);
}

}  // namespace detail

/// DBSCAN with distance sqrt(dd^2 + (dlambda * lambda_scale)^2). A point's
/// neighbourhood includes itself. Border points join the cluster of their
/// nearest core point so the result does not depend on input order. Labels
/// are numbered from 0 in order of each cluster's lowest point index.
inline std::vector<int> dbscan(std::span<const PathPoint> points, double eps, std::size_t min_pts,
                               double lambda_scale = kDefaultLambdaScale) {
  if (!(eps > 0.0)) throw InvalidConfigError("dbscan eps must be positive");
  if (min_pts < 1) throw InvalidConfigError("dbscan min_pts must be at least 1");
  if (!(lambda_scale > 0.0)) throw InvalidConfigError("dbscan lambda scale must be positive");
  const std::size_t n = points.size();
  for (const PathPoint& p : points) {
    if (!std::isfinite(p.d) || !std::isfinite(p.lambda)) {
      throw InvalidConfigError("dbscan points must be finite");
    }
  }

  std::vector<std::vector<std::size_t>> nbrs(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (detail::path_distance(points[i], points[j], lambda_scale) <= eps) nbrs[i].push_back(j);
    }
  }
  std::vector<char> core(n, 0);
  for (std::size_t i = 0; i < n; ++i) core[i] = nbrs[i].size() >= min_pts;

  // connected components of the core graph
  std::vector<int> comp(n, kNoise);
  int ncomp = 0;
  std::vector<std::size_t> stack;
  for (std::size_t i = 0; i < n; ++i) {
    if (!core[i] || comp[i] != kNoise) continue;
    comp[i] = ncomp;
    stack.assign(1, i);
    while (!stack.empty()) {
      const std::size_t p = stack.back();
      stack.pop_back();
      for (std::size_t q : nbrs[p]) {
        if (core[q] && comp[q] == kNoise) {
          comp[q] = ncomp;
          stack.push_back(q);
        }
      }
    }
    ++ncomp;
  }

  // border points: nearest core, ties by core coordinates
  std::vector<int> labels(comp);
  for (std::size_t i = 0; i < n; ++i) {
    if (core[i]) continue;
    std::optional<std::size_t> best;
    double best_dist = 0.0;
    for (std::size_t q : nbrs[i]) {
      if (!core[q]) continue;
      const double dist = detail::path_distance(points[i], points[q], lambda_scale);
      const bool better =
          !best || dist < best_dist ||
          (dist == best_dist && std::pair(points[q].d, points[q].lambda) <
                                    std::pair(points[*best].d, points[*best].lambda));
      if (better) {
        best = q;
        best_dist = dist;
      }
    }
    if (best) labels[i] = comp[*best];
  }

  // renumber by first appearance
  std::vector<int> remap(static_cast<std::size_t>(ncomp), kNoise);
  int next = 0;
  for (int& l : labels) {
    if (l == kNoise) continue;
    auto& r = remap[static_cast<std::size_t>(l)];
    if (r == kNoise) r = next++;
    l = r;
  }
  return labels;
}

/// Maps labels onto 0..k-1 by order of first appearance; noise is kept.
inline std::vector<int> canonical_labels(std::span<const int> labels) {
  std::vector<int> out(labels.begin(), labels.end());
  std::vector<std::pair<int, int>> seen;
  int next = 0;
  for (int& l : out) {
    if (l == kNoise) continue;
    auto it = std::find_if(seen.begin(), seen.end(), [&](auto& p) { return p.first == l; });
    if (it == seen.end()) {
      seen.emplace_back(l, next);
      l = next++;
    } else {
      l = it->second;
    }
  }
  return out;
}

struct ConvergenceProfile {
  std::vector<double> mean;
  std::vector<double> stddev;      ///< population standard deviation
  std::vector<std::size_t> count;  ///< histories that actually reached this generation

  std::size_t size() const { return mean.size(); }
};

/// Per-generation statistics of best-so-far objective. Short histories are
/// padded with their final value. With `max_final`, only histories whose
/// final value is <= max_final take part.
inline ConvergenceProfile convergence_profile(std::span<const std::vector<double>> histories,
                                              std::optional<double> max_final = std::nullopt) {
  if (histories.empty()) throw InvalidConfigError("convergence profile needs at least one history");
  std::vector<const std::vector<double>*> kept;
  std::size_t len = 0;
  for (const auto& h : histories) {
    if (h.empty()) continue;
    if (max_final && !(h.back() <= *max_final)) continue;
    kept.push_back(&h);
    len = std::max(len, h.size());
  }
  ConvergenceProfile prof;
  prof.mean.resize(len);
  prof.stddev.resize(len);
  prof.count.resize(len);
  for (std::size_t g = 0; g < len; ++g) {
    double sum = 0.0;
    std::size_t actual = 0;
    for (const auto* h : kept) {
      sum += g < h->size() ? (*h)[g] : h->back();
      if (g < h->size()) ++actual;
    }
    const double m = sum / static_cast<double>(kept.size());
    double ss = 0.0;
    for (const auto* h : kept) {
      const double v = (g < h->size() ? (*h)[g] : h->back()) - m;
      ss += v * v;
    }
    prof.mean[g] = m;
    prof.stddev[g] = std::sqrt(ss / static_cast<double>(kept.size()));
    prof.count[g] = actual;
  }
  return prof;
}

inline ConvergenceProfile convergence_profile(std::span<const RunRecord> records,
                                              std::optional<double> max_final = std::nullopt) {
  std::vector<std::vector<double>> hs;
  hs.reserve(records.size());
  for (const RunRecord& r : records) hs.push_back(r.history);
  return convergence_profile(std::span<const std::vector<double>>(hs), max_final);
}

struct SuccessRate {
  double fraction{0.0};
  std::size_t successes{0};
  std::size_t total{0};
};

/// Runs whose final objective is strictly below `tol`.
inline SuccessRate success_rate(std::span<const RunRecord> records, double tol) {
  SuccessRate s;
  s.total = records.size();
  for (const RunRecord& r : records) {
    if (r.error.empty() && r.final_objective() < tol) ++s.successes;
  }
  s.fraction = s.total ? static_cast<double>(s.successes) / static_cast<double>(s.total) : 0.0;
  return s;
}

}  // namespace trussopt
