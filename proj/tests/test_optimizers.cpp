#include <cmath>
#include <numeric>

#include <gtest/gtest.h>

#include "trussopt/benchmarks.hpp"
#include "trussopt/optimizers/minimize.hpp"
#include "trussopt/run.hpp"

using namespace trussopt;

namespace {

double sphere(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return s;
}

SearchDomain box(std::size_t n, double lo, double hi) {
  return {std::vector<double>(n, lo), std::vector<double>(n, hi)};
}

OptimizerConfig config(Algorithm a, std::size_t gens = 1000, std::uint64_t seed = 1) {
  OptimizerConfig c;
  c.algorithm = a;
  c.max_generations = gens;
  c.seed = seed;
  c.target_objective = 1e-300;
  return c;
}

constexpr Algorithm kAll[] = {Algorithm::de_rand_1_bin, Algorithm::de_best_2_bin, Algorithm::pso_std,
                              Algorithm::pso_const, Algorithm::sa};

}  // namespace

TEST(AlgorithmIds, RoundTrip) {
  for (Algorithm a : kAll) EXPECT_EQ(parse_algorithm(to_string(a)), a);
  EXPECT_EQ(to_string(Algorithm::de_rand_1_bin), "de-rand-1-bin");
  EXPECT_THROW(parse_algorithm("abc"), InvalidConfigError);
}

TEST(Config, Validation) {
  OptimizerConfig c;
  EXPECT_NO_THROW(c.validate());
  c.population_size = 3;
  EXPECT_THROW(c.validate(), InvalidConfigError);
  c.population_size = 4;
  EXPECT_NO_THROW(c.validate());
  c.algorithm = Algorithm::de_best_2_bin;
  EXPECT_THROW(c.validate(), InvalidConfigError);
  c = OptimizerConfig{};
  c.target_objective = 0.0;
  EXPECT_THROW(c.validate(), InvalidConfigError);
  c = OptimizerConfig{};
  c.max_generations = 0;
  EXPECT_THROW(c.validate(), InvalidConfigError);
  c = OptimizerConfig{};
  c.de.scale_factor_lo = 0.95;
  EXPECT_THROW(c.validate(), InvalidConfigError);
  c = OptimizerConfig{};
  c.de.crossover_rate = 1.5;
  EXPECT_THROW(c.validate(), InvalidConfigError);
  c = OptimizerConfig{};
  c.algorithm = Algorithm::pso_const;
  c.pso.phi = 2.05;
  EXPECT_THROW(c.validate(), InvalidConfigError);
  c = OptimizerConfig{};
  c.algorithm = Algorithm::sa;
  c.sa.cooling_rate = 1.0;
  EXPECT_THROW(c.validate(), InvalidConfigError);
}

TEST(DEMutate, Examples) {
  std::vector<std::vector<double>> pop{{0, 0}, {1, 0}, {0, 1}, {7, 7}, {3, 3}};
  const std::size_t idx[] = {0, 1, 2};
  auto d = de_mutate(pop, 4, idx, 0.5, MutationVariant::rand_1);
  EXPECT_DOUBLE_EQ(d[0], 0.5);
  EXPECT_DOUBLE_EQ(d[1], -0.5);
  std::vector<std::vector<double>> same{{2, 3}, {5, 5}, {5, 5}, {9, 9}};
  const std::size_t idx2[] = {0, 1, 2};
  EXPECT_EQ(de_mutate(same, 3, idx2, 0.7, MutationVariant::rand_1), (std::vector<double>{2, 3}));
  std::vector<std::vector<double>> flat(6, {4.0, -1.0});
  const std::size_t idx4[] = {1, 2, 3, 4};
  EXPECT_EQ(de_mutate(flat, 0, idx4, 0.9, MutationVariant::best_2), (std::vector<double>{4.0, -1.0}));
  std::vector<std::vector<double>> tiny{{0}, {1}};
  EXPECT_THROW(de_mutate(tiny, 0, idx, 0.5, MutationVariant::rand_1), InvalidConfigError);
}

TEST(DEMutate, BestTwoArithmetic) {
  std::vector<std::vector<double>> pop{{10}, {1}, {2}, {4}, {8}};
  const std::size_t idx[] = {1, 2, 3, 4};
  // 10 + F(1-2) + F(4-8) = 10 - 5F
  EXPECT_DOUBLE_EQ(de_mutate(pop, 0, idx, 0.5, MutationVariant::best_2)[0], 7.5);
}

TEST(DECrossover, Extremes) {
  Rng rng(4);
  const std::vector<double> target(16, 0.0), donor(16, 1.0);
  EXPECT_EQ(de_crossover_binomial(target, donor, 1.0, rng), donor);
  for (int t = 0; t < 100; ++t) {
    const auto tr = de_crossover_binomial(target, donor, 0.0, rng);
    EXPECT_EQ(std::accumulate(tr.begin(), tr.end(), 0.0), 1.0);
  }
}

TEST(DECrossover, BinomialMean) {
  // forced index plus Binomial(15, 0.9) others -> 1 + 13.5, up to the
  // chance the forced index would have been drawn anyway: 16*0.9 + 0.1 = 14.5
  Rng rng(99);
  const std::vector<double> target(16, 0.0), donor(16, 1.0);
  double total = 0.0;
  const int n = 10000;
  for (int t = 0; t < n; ++t) {
    const auto tr = de_crossover_binomial(target, donor, 0.9, rng);
    total += std::accumulate(tr.begin(), tr.end(), 0.0);
  }
  EXPECT_NEAR(total / n, 14.5, 0.2);
}

TEST(PSO, ConstrictionFactor) {
  EXPECT_NEAR(constriction_factor(4.1), 0.729843788, 1e-9);
  const PSOCoefficients c = constriction_coefficients(4.1);
  EXPECT_NEAR(c.c_personal, 0.729843788 * 2.05, 1e-8);
  EXPECT_EQ(c.c_personal, c.c_global);
  EXPECT_THROW(constriction_factor(2.05), InvalidConfigError);
}

TEST(PSO, FixedPointIsStationary) {
  Rng rng(1);
  Particle p{{1, 2}, {0, 0}, {1, 2}, 0, 0};
  const std::vector<double> g{1, 2};
  pso_step(p, g, PSOCoefficients{}, rng, box(2, -5, 5));
  EXPECT_EQ(p.position, (std::vector<double>{1, 2}));
  EXPECT_EQ(p.velocity, (std::vector<double>{0, 0}));
}

TEST(PSO, ClampZeroesVelocity) {
  Rng rng(1);
  Particle p{{4.9, 0}, {100, 0}, {4.9, 0}, 0, 0};
  const std::vector<double> g{4.9, 0};
  pso_step(p, g, PSOCoefficients{}, rng, box(2, -5, 5));
  EXPECT_EQ(p.position[0], 5.0);
  EXPECT_EQ(p.velocity[0], 0.0);
}

TEST(PSO, InertiaDampingArithmetic) { EXPECT_NEAR(std::pow(0.99, 100), 0.366, 1e-3); }

TEST(SA, MetropolisRule) {
  Rng rng(7);
  for (int t = 0; t < 100; ++t) {
    EXPECT_TRUE(metropolis_accept(-1.0, 0.1, rng));
    EXPECT_TRUE(metropolis_accept(0.0, 0.1, rng));
  }
  const int n = 10000;
  int hits = 0;
  for (int t = 0; t < n; ++t) hits += metropolis_accept(0.3, 0.3, rng);
  EXPECT_NEAR(static_cast<double>(hits) / n, std::exp(-1.0), 0.02);
}

TEST(SA, ProposalStaysInDomainAndShrinks) {
  Rng rng(8);
  const SearchDomain d = box(3, -1, 1);
  const std::vector<double> x{0.99, -0.99, 0.0};
  double spread_hot = 0.0, spread_cold = 0.0;
  for (int t = 0; t < 2000; ++t) {
    const auto y = sa_propose(x, 0.1, 0.1, d, rng);
    EXPECT_TRUE(d.contains(y));
    spread_hot += std::abs(y[2]);
    spread_cold += std::abs(sa_propose(x, 0.001, 0.1, d, rng)[2]);
  }
  EXPECT_GT(spread_hot, 50.0 * spread_cold);
}

TEST(SA, BetterProposalAlwaysTaken) {
  Rng rng(3);
  const SearchDomain d = box(2, -1, 1);
  SAState cur{{0.9, 0.9}, 1e9};  // anything beats this
  auto f = [](std::span<const double> x) { return sphere(x); };
  const SAState next = sa_step(f, cur, 0.05, 0.1, rng, d);
  EXPECT_LT(next.value, 1e9);
}

TEST(Minimize, SphereTenDimensionsDE) {
  OptimizerConfig c = config(Algorithm::de_rand_1_bin, 1000);
  const OptimizationResult r = minimize(sphere, box(10, -5, 5), c);
  EXPECT_LE(r.best_value, 1e-8);
}

TEST(Minimize, AllAlgorithmsImproveOnSphere) {
  for (Algorithm a : kAll) {
    const OptimizationResult r = minimize(sphere, box(4, -5, 5), config(a, 600, 5));
    EXPECT_LT(r.best_value, a == Algorithm::sa ? 0.5 : 1e-3) << to_string(a);
  }
}

TEST(Minimize, ContractInvariants) {
  const SearchDomain d = box(3, -2, 1);
  for (Algorithm a : kAll) {
    std::size_t outside = 0;
    auto f = [&](std::span<const double> x) {
      if (!d.contains(x)) ++outside;
      return sphere(x) + 1.0;
    };
    OptimizerConfig c = config(a, 200, 3);
    const OptimizationResult r = minimize(f, d, c);
    EXPECT_EQ(outside, 0u) << to_string(a);
    EXPECT_EQ(r.history.size(), r.generations) << to_string(a);
    EXPECT_EQ(r.diversity.size(), r.generations) << to_string(a);
    EXPECT_EQ(r.generations, 200u) << to_string(a);
    for (std::size_t g = 1; g < r.history.size(); ++g) EXPECT_LE(r.history[g], r.history[g - 1]);
    EXPECT_EQ(r.history.back(), r.best_value);
    EXPECT_TRUE(d.contains(r.best));
    EXPECT_FALSE(r.converged);
  }
}

TEST(Minimize, StopsAtTarget) {
  for (Algorithm a : {Algorithm::de_rand_1_bin, Algorithm::de_best_2_bin, Algorithm::pso_const}) {
    OptimizerConfig c = config(a, 5000, 2);
    c.target_objective = 1e-4;
    const OptimizationResult r = minimize(sphere, box(3, -5, 5), c);
    EXPECT_TRUE(r.converged) << to_string(a);
    EXPECT_LE(r.best_value, 1e-4);
    EXPECT_LT(r.generations, 5000u);
    EXPECT_GT(r.history[r.history.size() - 2], 1e-4);
  }
}

TEST(Minimize, SeedDeterminism) {
  for (Algorithm a : kAll) {
    const OptimizationResult x = minimize(sphere, box(5, -3, 3), config(a, 150, 77));
    const OptimizationResult y = minimize(sphere, box(5, -3, 3), config(a, 150, 77));
    const OptimizationResult z = minimize(sphere, box(5, -3, 3), config(a, 150, 78));
    EXPECT_EQ(x.history, y.history) << to_string(a);
    EXPECT_EQ(x.best, y.best) << to_string(a);
    EXPECT_NE(x.best, z.best) << to_string(a);
  }
}

TEST(Minimize, FailingEvaluationsAreRejectedNotFatal) {
  const SearchDomain d = box(2, -1, 1);
  auto f = [](std::span<const double> x) {
    if (x[0] > 0.0) throw DegenerateMemberError("synthetic");
    if (x[1] > 0.5) return std::nan("");
    return sphere(x);
  };
  for (Algorithm a : kAll) {
    const OptimizationResult r = minimize(f, d, config(a, 100, 4));
    EXPECT_TRUE(std::isfinite(r.best_value)) << to_string(a);
    EXPECT_LE(r.best[0], 0.0);
  }
}

TEST(Minimize, DiversityCanBeSwitchedOff) {
  OptimizerConfig c = config(Algorithm::de_rand_1_bin, 50);
  c.record_diversity = false;
  EXPECT_TRUE(minimize(sphere, box(2, -1, 1), c).diversity.empty());
}

TEST(Optimize, EightMemberConverges) {
  const TrussModel m = build_benchmark(BenchmarkId::eight_member);
  OptimizerConfig c;
  c.seed = 12;
  const RunRecord r = optimize(m, default_domain(BenchmarkId::eight_member, m), c);
  EXPECT_TRUE(r.converged);
  EXPECT_LE(r.final_objective(), 1e-5);
  EXPECT_EQ(r.history.size(), r.generations_used);
  EXPECT_NEAR(*r.best.objective, objective(m, r.best), 0.0);
  EXPECT_EQ(r.control_d, control_point(m, r.best));
}

TEST(Optimize, ArcFilterFlag) {
  const TrussModel m = build_benchmark(BenchmarkId::two_bar_oracle);
  const SearchDomain d = default_domain(BenchmarkId::two_bar_oracle, m);
  OptimizerConfig c;
  c.population_size = 20;
  c.target_objective = 1e-9;
  const RunRecord plain = optimize(m, d, c);
  ASSERT_TRUE(plain.converged);
  const PathCoord p = plain.path_coord();
  const ArcFilter hit{ArcStep{{p.d - 1.0, p.lambda}, std::nullopt, 1.0}, std::nullopt};
  const ArcFilter miss{ArcStep{{p.d - 50.0, p.lambda}, std::nullopt, 1.0}, std::nullopt};
  EXPECT_EQ(optimize(m, d, c, hit).arc_feasible, std::optional<bool>(true));
  EXPECT_EQ(optimize(m, d, c, miss).arc_feasible, std::optional<bool>(false));
  EXPECT_FALSE(plain.arc_feasible.has_value());
}

TEST(Optimize, DimensionMismatch) {
  const TrussModel m = build_benchmark(BenchmarkId::eight_member);
  EXPECT_THROW(optimize(m, box(2, 0, 1), OptimizerConfig{}), DimensionMismatchError);
}
