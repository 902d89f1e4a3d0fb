#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "trussopt/errors.hpp"

namespace trussopt {

enum class Algorithm { de_rand_1_bin, de_best_2_bin, pso_std, pso_const, sa };

inline std::string_view to_string(Algorithm a) {
  switch (a) {
    case Algorithm::de_rand_1_bin: return "de-rand-1-bin";
    case Algorithm::de_best_2_bin: return "de-best-2-bin";
    case Algorithm::pso_std: return "pso-std";
    case Algorithm::pso_const: return "pso-const";
    case Algorithm::sa: return "sa";
  }
  return "unknown";
}

inline Algorithm parse_algorithm(std::string_view id) {
  for (Algorithm a : {Algorithm::de_rand_1_bin, Algorithm::de_best_2_bin, Algorithm::pso_std,
                      Algorithm::pso_const, Algorithm::sa}) {
    if (to_string(a) == id) return a;
  }
  throw InvalidConfigError("unknown algorithm id '" + std::string(id) +
                           "' (expected de-rand-1-bin, de-best-2-bin, pso-std, pso-const or sa)");
}

enum class MutationVariant { rand_1, best_2 };

struct DEParams {
  double scale_factor_lo{0.2};
  double scale_factor_hi{0.9};
  double crossover_rate{0.9};
};

enum class PSOVariant { standard, constriction };

struct PSOParams {
  double inertia{1.0};
  double inertia_damping{0.99};
  double c_personal{1.5};
  double c_global{2.0};
  double phi{4.1};  ///< constriction only; two coefficients of 2.05
};

struct SAParams {
  double initial_temperature{0.1};
  double cooling_rate{0.99};
};

struct OptimizerConfig {
  Algorithm algorithm{Algorithm::de_rand_1_bin};
  std::size_t population_size{50};
  std::size_t max_generations{1000};
  double target_objective{1e-5};
  std::uint64_t seed{1};
  /// Mean pairwise distance is O(pop^2) per generation; long batch runs can
  /// switch it off (diversity then stays empty).
  bool record_diversity{true};
  DEParams de;
  PSOParams pso;
  SAParams sa;

  bool is_de() const {
    return algorithm == Algorithm::de_rand_1_bin || algorithm == Algorithm::de_best_2_bin;
  }

  void validate() const {
    if (max_generations < 1) throw InvalidConfigError("max_generations must be at least 1");
    if (!(target_objective > 0.0)) throw InvalidConfigError("target_objective must be positive");
    if (is_de()) {
      const std::size_t need = algorithm == Algorithm::de_rand_1_bin ? 4 : 5;
      if (population_size < need) {
        throw InvalidConfigError(std::string(to_string(algorithm)) + " needs a population of at least " +
                                 std::to_string(need));
      }
      if (!(de.scale_factor_lo > 0.0) || de.scale_factor_lo > de.scale_factor_hi) {
        throw InvalidConfigError("scale factor bounds must satisfy 0 < lo <= hi");
      }
      if (!(de.crossover_rate >= 0.0 && de.crossover_rate <= 1.0)) {
        throw InvalidConfigError("crossover rate must lie in [0, 1]");
      }
    }
    if (algorithm == Algorithm::pso_std || algorithm == Algorithm::pso_const) {
      if (population_size < 1) throw InvalidConfigError("PSO needs at least one particle");
      if (algorithm == Algorithm::pso_std && !(pso.inertia > 0.0)) {
        throw InvalidConfigError("PSO inertia must be positive");
      }
      if (algorithm == Algorithm::pso_const && !(pso.phi > 4.0)) {
        throw InvalidConfigError("constriction PSO needs phi > 4");
      }
    }
    if (algorithm == Algorithm::sa) {
      if (!(sa.initial_temperature > 0.0)) throw InvalidConfigError("initial temperature must be positive");
      if (!(sa.cooling_rate > 0.0 && sa.cooling_rate < 1.0)) {
        throw InvalidConfigError("cooling rate must lie in (0, 1)");
      }
    }
  }
};

/// Outcome of one generic minimisation. A "generation" is one sweep of
/// objective evaluations (the initial population counts as the first);
/// for SA it is one proposal.
struct OptimizationResult {
  std::vector<double> best;
  double best_value{std::numeric_limits<double>::infinity()};
  std::size_t generations{0};
  std::size_t evaluations{0};
  std::vector<double> history;    ///< best-so-far after each generation
  std::vector<double> diversity;  ///< mean pairwise distance per generation
  bool converged{false};
};

namespace detail {

/// Objective errors and non-finite values reject the point instead of
/// aborting the run.
template <class F>
double safe_evaluate(F& f, const std::vector<double>& x) {
  try {
    const double v = f(std::span<const double>(x));
    return std::isnan(v) ? std::numeric_limits<double>::infinity() : v;
  } catch (const Error&) {
    return std::numeric_limits<double>::infinity();
  }
}

inline double mean_pairwise_distance(const std::vector<std::vector<double>>& pop) {
  const std::size_t n = pop.size();
  if (n < 2) return 0.0;
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      double sq = 0.0;
      for (std::size_t k = 0; k < pop[i].size(); ++k) {
        const double d = pop[i][k] - pop[j][k];
        sq += d * d;
      }
      total += std::sqrt(sq);
    }
  }
  return total / static_cast<double>(n * (n - 1) / 2);
}

}  // namespace detail

}  // namespace trussopt
