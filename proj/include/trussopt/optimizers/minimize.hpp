#pragma once

#include "trussopt/optimizers/config.hpp"
#include "trussopt/optimizers/de.hpp"
#include "trussopt/optimizers/pso.hpp"
#include "trussopt/optimizers/sa.hpp"
#include "trussopt/search_domain.hpp"

namespace trussopt {

/// Minimises `f(std::span<const double>) -> double` over `domain` with the
/// configured algorithm. Fully determined by `config.seed`.
template <class F>
OptimizationResult minimize(F&& f, const SearchDomain& domain, const OptimizerConfig& config) {
  config.validate();
  domain.validate();
  switch (config.algorithm) {
    case Algorithm::de_rand_1_bin:
    case Algorithm::de_best_2_bin: return minimize_de(f, domain, config);
    case Algorithm::pso_std:
    case Algorithm::pso_const: return minimize_pso(f, domain, config);
    case Algorithm::sa: return minimize_sa(f, domain, config);
  }
  throw InvalidConfigError("unhandled algorithm");
}

}  // namespace trussopt
