#pragma once

// Simulated annealing on a box with a Gaussian neighbourhood whose width
// shrinks with the temperature.

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "trussopt/optimizers/config.hpp"
#include "trussopt/optimizers/de.hpp"
#include "trussopt/rng.hpp"
#include "trussopt/search_domain.hpp"

namespace trussopt {

/// Metropolis rule: improvements always pass, otherwise exp(-delta / T).
inline bool metropolis_accept(double delta, double temperature, Rng& rng) {
  if (delta <= 0.0) return true;
  return rng.uniform() < std::exp(-delta / temperature);
}

/// Per-axis sigma = 0.1 * width * (T / T0), clamped into the domain.
inline std::vector<double> sa_propose(std::span<const double> x, double temperature,
                                      double initial_temperature, const SearchDomain& domain,
                                      Rng& rng) {
  std::vector<double> y(x.begin(), x.end());
  const double frac = temperature / initial_temperature;
  for (std::size_t j = 0; j < y.size(); ++j) {
    y[j] += 0.1 * (domain.upper[j] - domain.lower[j]) * frac * rng.normal();
  }
  clamp_in_place(y, domain);
  return y;
}

struct SAState {
  std::vector<double> x;
  double value{0.0};
};

/// One propose/accept iteration; returns the state after the decision.
template <class F>
SAState sa_step(F&& f, const SAState& current, double temperature, double initial_temperature,
                Rng& rng, const SearchDomain& domain) {
  SAState proposal{sa_propose(current.x, temperature, initial_temperature, domain, rng), 0.0};
  proposal.value = detail::safe_evaluate(f, proposal.x);
  // stuck on an infeasible point: wander until something evaluates
  if (std::isinf(current.value)) return proposal;
  if (metropolis_accept(proposal.value - current.value, temperature, rng)) return proposal;
  return current;
}

template <class F>
OptimizationResult minimize_sa(F&& f, const SearchDomain& domain, const OptimizerConfig& config) {
  Rng rng(config.seed);
  SAState cur{detail::uniform_point(domain, rng), 0.0};
  cur.value = detail::safe_evaluate(f, cur.x);
  SAState best = cur;

  OptimizationResult res;
  res.evaluations = 1;
  res.generations = 1;
  res.history.push_back(best.value);
  if (config.record_diversity) res.diversity.push_back(0.0);

  double temperature = config.sa.initial_temperature;
  while (res.generations < config.max_generations && best.value > config.target_objective) {
    cur = sa_step(f, cur, temperature, config.sa.initial_temperature, rng, domain);
    if (cur.value < best.value) best = cur;
    temperature *= config.sa.cooling_rate;
    ++res.evaluations;
    ++res.generations;
    res.history.push_back(best.value);
    if (config.record_diversity) res.diversity.push_back(0.0);
  }
  res.best = best.x;
  res.best_value = best.value;
  res.converged = res.best_value <= config.target_objective;
  return res;
}

}  // namespace trussopt
