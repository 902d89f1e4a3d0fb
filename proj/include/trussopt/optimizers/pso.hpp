#pragma once

// Particle swarm optimisation with either a damped inertia weight or Clerc's
// constriction factor.

#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <vector>

#include "trussopt/optimizers/config.hpp"
#include "trussopt/optimizers/de.hpp"
#include "trussopt/rng.hpp"
#include "trussopt/search_domain.hpp"

namespace trussopt {

struct Particle {
  std::vector<double> position;
  std::vector<double> velocity;
  std::vector<double> best_position;
  double value{std::numeric_limits<double>::infinity()};
  double best_value{std::numeric_limits<double>::infinity()};
};

struct PSOCoefficients {
  double inertia{1.0};
  double c_personal{1.5};
  double c_global{2.0};
};

/// chi = 2 / (phi - 2 + sqrt(phi^2 - 4 phi)); requires phi > 4.
inline double constriction_factor(double phi) {
  if (!(phi > 4.0)) throw InvalidConfigError("constriction needs phi > 4");
  return 2.0 / (phi - 2.0 + std::sqrt(phi * phi - 4.0 * phi));
}

/// Constriction form written as an inertia update: w = chi and both
/// learning coefficients chi * phi / 2.
inline PSOCoefficients constriction_coefficients(double phi) {
  const double chi = constriction_factor(phi);
  return {chi, chi * phi / 2.0, chi * phi / 2.0};
}

/// One velocity/position update. Axes pushed outside the domain are clamped
/// and their velocity zeroed.
inline void pso_step(Particle& p, std::span<const double> global_best, const PSOCoefficients& c,
                     Rng& rng, const SearchDomain& domain) {
  for (std::size_t j = 0; j < p.position.size(); ++j) {
    const double r1 = rng.uniform();
    const double r2 = rng.uniform();
    double v = c.inertia * p.velocity[j] + c.c_personal * r1 * (p.best_position[j] - p.position[j]) +
               c.c_global * r2 * (global_best[j] - p.position[j]);
    double x = p.position[j] + v;
    if (x < domain.lower[j]) {
      x = domain.lower[j];
      v = 0.0;
    } else if (x > domain.upper[j]) {
      x = domain.upper[j];
      v = 0.0;
    }
    p.position[j] = x;
    p.velocity[j] = v;
  }
}

template <class F>
OptimizationResult minimize_pso(F&& f, const SearchDomain& domain, const OptimizerConfig& config) {
  Rng rng(config.seed);
  PSOCoefficients coeff;
  double damping = config.pso.inertia_damping;
  if (config.algorithm == Algorithm::pso_const) {
    coeff = constriction_coefficients(config.pso.phi);
    damping = 1.0;
  } else {
    coeff = {config.pso.inertia, config.pso.c_personal, config.pso.c_global};
  }

  std::vector<Particle> swarm(config.population_size);
  for (Particle& p : swarm) {
    p.position = detail::uniform_point(domain, rng);
    p.velocity.assign(p.position.size(), 0.0);
  }
  std::size_t gbest = 0;
  for (std::size_t i = 0; i < swarm.size(); ++i) {
    Particle& p = swarm[i];
    p.value = detail::safe_evaluate(f, p.position);
    p.best_position = p.position;
    p.best_value = p.value;
    if (p.best_value < swarm[gbest].best_value) gbest = i;
  }

  OptimizationResult res;
  res.evaluations = swarm.size();
  std::vector<std::vector<double>> positions(swarm.size());
  auto record = [&] {
    res.history.push_back(swarm[gbest].best_value);
    if (config.record_diversity) {
      for (std::size_t i = 0; i < swarm.size(); ++i) positions[i] = swarm[i].position;
      res.diversity.push_back(detail::mean_pairwise_distance(positions));
    }
    ++res.generations;
  };
  record();

  while (res.generations < config.max_generations &&
         swarm[gbest].best_value > config.target_objective) {
    const std::vector<double> g = swarm[gbest].best_position;
    for (Particle& p : swarm) pso_step(p, g, coeff, rng, domain);
    for (std::size_t i = 0; i < swarm.size(); ++i) {
      Particle& p = swarm[i];
      p.value = detail::safe_evaluate(f, p.position);
      if (p.value <= p.best_value) {
        p.best_value = p.value;
        p.best_position = p.position;
      }
    }
    for (std::size_t i = 0; i < swarm.size(); ++i) {
      if (swarm[i].best_value < swarm[gbest].best_value) gbest = i;
    }
    res.evaluations += swarm.size();
    coeff.inertia *= damping;
    record();
  }
  res.best = swarm[gbest].best_position;
  res.best_value = swarm[gbest].best_value;
  res.converged = res.best_value <= config.target_objective;
  return res;
}

}  // namespace trussopt
