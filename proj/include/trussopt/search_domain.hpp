#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "trussopt/errors.hpp"
#include "trussopt/model.hpp"

namespace trussopt {

struct Interval {
  double lo{0.0};
  double hi{0.0};

  double width() const { return hi - lo; }
  bool contains(double v) const { return v >= lo && v <= hi; }
  friend bool operator==(const Interval&, const Interval&) = default;
};

/// Axis-aligned box over (u..., lambda); the last entry bounds lambda.
struct SearchDomain {
  std::vector<double> lower;
  std::vector<double> upper;

  std::size_t dimension() const { return lower.size(); }

  void validate() const {
    if (lower.size() != upper.size() || lower.empty()) {
      throw InvalidDomainError("domain bounds must be non-empty and of equal length");
    }
    for (std::size_t i = 0; i < lower.size(); ++i) {
      if (!std::isfinite(lower[i]) || !std::isfinite(upper[i]) || lower[i] > upper[i]) {
        throw InvalidDomainError("domain axis " + std::to_string(i) + " has invalid bounds [" +
                                 std::to_string(lower[i]) + ", " + std::to_string(upper[i]) + "]");
      }
    }
  }

  bool contains(std::span<const double> x) const {
    if (x.size() != dimension()) return false;
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (x[i] < lower[i] || x[i] > upper[i]) return false;
    }
    return true;
  }

  Interval axis(std::size_t i) const { return {lower[i], upper[i]}; }
  Interval lambda_axis() const { return axis(dimension() - 1); }

  /// Every displacement in `u_range`, lambda in `lambda_range`.
  static SearchDomain uniform(std::size_t free_dofs, Interval u_range, Interval lambda_range) {
    SearchDomain d;
    d.lower.assign(free_dofs, u_range.lo);
    d.upper.assign(free_dofs, u_range.hi);
    d.lower.push_back(lambda_range.lo);
    d.upper.push_back(lambda_range.hi);
    return d;
  }

  /// Componentwise intersection; throws InvalidDomainError when empty.
  SearchDomain intersect(const SearchDomain& other) const {
    if (other.dimension() != dimension()) {
      throw DimensionMismatchError("cannot intersect domains of different dimension");
    }
    SearchDomain out;
    out.lower.resize(dimension());
    out.upper.resize(dimension());
    for (std::size_t i = 0; i < dimension(); ++i) {
      out.lower[i] = std::max(lower[i], other.lower[i]);
      out.upper[i] = std::min(upper[i], other.upper[i]);
      if (out.lower[i] > out.upper[i]) {
        throw InvalidDomainError("empty intersection on axis " + std::to_string(i));
      }
    }
    return out;
  }
};

inline void clamp_in_place(std::span<double> x, const SearchDomain& domain) {
  if (x.size() != domain.dimension()) {
    throw DimensionMismatchError("point has dimension " + std::to_string(x.size()) +
                                 ", domain has " + std::to_string(domain.dimension()));
  }
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = std::clamp(x[i], domain.lower[i], domain.upper[i]);
}

/// Componentwise projection into the domain. The cached objective is dropped
/// when any component moves.
inline Candidate clamp(const Candidate& c, const SearchDomain& domain) {
  std::vector<double> x = to_search_vector(c);
  clamp_in_place(x, domain);
  Candidate out = from_search_vector(x);
  if (out.u == c.u && out.lambda == c.lambda) out.objective = c.objective;
  return out;
}

/// Domain for the model with the control variable mapped through its sign:
/// d in `control_range`, other displacements in `other_range`.
inline SearchDomain control_aligned_domain(const TrussModel& model, Interval control_range,
                                           Interval other_range, Interval lambda_range) {
  SearchDomain d = SearchDomain::uniform(model.free_dof_count(), other_range, lambda_range);
  if (const auto* c = std::get_if<NodeAxisControl>(&model.control().mode)) {
    const auto k = static_cast<std::size_t>(model.dof_index(model.node_index(c->node), c->axis));
    const double a = c->sign * control_range.lo;
    const double b = c->sign * control_range.hi;
    d.lower[k] = std::min(a, b);
    d.upper[k] = std::max(a, b);
  }
  return d;
}

}  // namespace trussopt
