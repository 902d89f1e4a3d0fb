#pragma once

// Differential evolution: DE/rand/1/bin and DE/best/2/bin with a scale
// factor dithered once per generation and generational (deferred) selection.

#include <algorithm>
#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "trussopt/optimizers/config.hpp"
#include "trussopt/rng.hpp"
#include "trussopt/search_domain.hpp"

namespace trussopt {

/// Donor vector. rand-1 uses indices[0..2]: x_r1 + F (x_r2 - x_r3).
/// best-2 uses indices[0..3]: x_best + F (x_r1 - x_r2) + F (x_r3 - x_r4).
inline std::vector<double> de_mutate(std::span<const std::vector<double>> population,
                                     std::size_t best, std::span<const std::size_t> indices,
                                     double scale, MutationVariant variant) {
  const std::size_t need = variant == MutationVariant::rand_1 ? 3 : 4;
  if (indices.size() < need || population.size() < need) {
    throw InvalidConfigError("population too small for the mutation variant");
  }
  for (std::size_t i : indices) {
    if (i >= population.size()) throw InvalidConfigError("mutation index out of range");
  }
  const auto& r1 = population[indices[0]];
  const auto& r2 = population[indices[1]];
  const auto& r3 = population[indices[2]];
  std::vector<double> donor(r1.size());
  if (variant == MutationVariant::rand_1) {
    for (std::size_t j = 0; j < donor.size(); ++j) donor[j] = r1[j] + scale * (r2[j] - r3[j]);
  } else {
    const auto& r4 = population[indices[3]];
    if (best >= population.size()) throw InvalidConfigError("best index out of range");
    const auto& xb = population[best];
    for (std::size_t j = 0; j < donor.size(); ++j) {
      donor[j] = xb[j] + scale * (r1[j] - r2[j]) + scale * (r3[j] - r4[j]);
    }
  }
  return donor;
}

/// Binomial crossover with one forced donor component.
inline std::vector<double> de_crossover_binomial(std::span<const double> target,
                                                 std::span<const double> donor,
                                                 double crossover_rate, Rng& rng) {
  std::vector<double> trial(target.begin(), target.end());
  const std::size_t forced = rng.index(trial.size());
  for (std::size_t j = 0; j < trial.size(); ++j) {
    if (rng.uniform() < crossover_rate || j == forced) trial[j] = donor[j];
  }
  return trial;
}

namespace detail {

inline std::vector<double> uniform_point(const SearchDomain& domain, Rng& rng) {
  std::vector<double> x(domain.dimension());
  for (std::size_t j = 0; j < x.size(); ++j) x[j] = rng.uniform(domain.lower[j], domain.upper[j]);
  return x;
}

/// `count` distinct indices in [0, n) excluding `exclude`.
inline std::array<std::size_t, 4> distinct_partners(std::size_t n, std::size_t exclude,
                                                    std::size_t count, Rng& rng) {
  std::array<std::size_t, 4> out{};
  for (std::size_t k = 0; k < count; ++k) {
    std::size_t r;
    do {
      r = rng.index(n);
    } while (r == exclude || std::find(out.begin(), out.begin() + k, r) != out.begin() + k);
    out[k] = r;
  }
  return out;
}

}  // namespace detail

template <class F>
OptimizationResult minimize_de(F&& f, const SearchDomain& domain, const OptimizerConfig& config) {
  const auto variant = config.algorithm == Algorithm::de_best_2_bin ? MutationVariant::best_2
                                                                    : MutationVariant::rand_1;
  const std::size_t partners = variant == MutationVariant::rand_1 ? 3 : 4;
  const std::size_t np = config.population_size;
  Rng rng(config.seed);

  std::vector<std::vector<double>> pop(np);
  std::vector<double> fit(np);
  for (std::size_t i = 0; i < np; ++i) pop[i] = detail::uniform_point(domain, rng);
  for (std::size_t i = 0; i < np; ++i) fit[i] = detail::safe_evaluate(f, pop[i]);

  OptimizationResult res;
  res.evaluations = np;
  auto best = static_cast<std::size_t>(std::min_element(fit.begin(), fit.end()) - fit.begin());
  res.history.push_back(fit[best]);
  if (config.record_diversity) res.diversity.push_back(detail::mean_pairwise_distance(pop));
  res.generations = 1;

  std::vector<std::vector<double>> trials(np);
  std::vector<double> trial_fit(np);
  while (res.generations < config.max_generations && fit[best] > config.target_objective) {
    const double scale = rng.uniform(config.de.scale_factor_lo, config.de.scale_factor_hi);
    for (std::size_t i = 0; i < np; ++i) {
      const auto idx = detail::distinct_partners(np, i, partners, rng);
      const std::vector<double> donor =
          de_mutate(pop, best, std::span<const std::size_t>(idx.data(), partners), scale, variant);
      trials[i] = de_crossover_binomial(pop[i], donor, config.de.crossover_rate, rng);
      clamp_in_place(trials[i], domain);
    }
    for (std::size_t i = 0; i < np; ++i) trial_fit[i] = detail::safe_evaluate(f, trials[i]);
    res.evaluations += np;
    for (std::size_t i = 0; i < np; ++i) {
      if (trial_fit[i] <= fit[i]) {
        pop[i].swap(trials[i]);
        fit[i] = trial_fit[i];
      }
    }
    best = static_cast<std::size_t>(std::min_element(fit.begin(), fit.end()) - fit.begin());
    res.history.push_back(fit[best]);
    if (config.record_diversity) res.diversity.push_back(detail::mean_pairwise_distance(pop));
    ++res.generations;
  }
  res.best = pop[best];
  res.best_value = fit[best];
  res.converged = res.best_value <= config.target_objective;
  return res;
}

}  // namespace trussopt
