// Command-line front end: `trussopt analyze ...` runs one analysis and writes
// results.csv (+ profile.csv / effort.csv / shape.svg) to the output dir;
// `trussopt export-model` writes a benchmark as a model file.

#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "trussopt.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitSeedSphere = 3;

std::string default_out_dir() {
  if (const char* env = std::getenv("TRUSSOPT_OUT_DIR"); env != nullptr && *env != '\0') return env;
  return "trussopt-out";
}

}  // namespace

int main(int argc, char** argv) {
  using namespace trussopt;
  CLI::App app{"Equilibrium-path analysis of space trusses with gradient-free optimizers"};
  app.require_subcommand(1);

  auto* analyze = app.add_subcommand("analyze", "run single, informed or hypersphere analysis");
  std::optional<std::string> config_path, benchmark, model_path, strategy, algo, out_dir, schedule;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> runs, generations, pop, trials, max_spheres, patience;
  std::optional<double> r0, d_max, eps;
  std::size_t min_pts = 3;
  bool svg = false, quiet = false;

  analyze->add_option("--config", config_path, "run-configuration file (JSON)");
  auto* bopt = analyze->add_option("--benchmark", benchmark,
                                   "eight-member | sixteen-member | twentyfour-member | reticular-beam | two-bar-oracle");
  auto* mopt = analyze->add_option("--model", model_path, "model file (JSON)");
  bopt->excludes(mopt);
  analyze->add_option("--strategy", strategy, "single | informed | hypersphere");
  analyze->add_option("--algo", algo, "de-rand-1-bin | de-best-2-bin | pso-std | pso-const | sa");
  analyze->add_option("--seed", seed, "base seed");
  analyze->add_option("--out", out_dir, "output directory (default $TRUSSOPT_OUT_DIR or ./trussopt-out)");
  analyze->add_flag("--svg", svg, "write shape.svg of the best / last solution");
  analyze->add_option("--runs", runs, "independent runs (single strategy)");
  analyze->add_option("--r0", r0, "initial hypersphere radius, mm");
  analyze->add_option("--d-max", d_max, "stop the trace once the control point reaches this, mm");
  analyze->add_option("--schedule", schedule, "radius schedule: fixed | halving | additive");
  analyze->add_option("--generations", generations, "max generations per optimizer run");
  analyze->add_option("--pop", pop, "population size");
  analyze->add_option("--trials", trials, "trials per hypersphere / per informed cell");
  analyze->add_option("--max-spheres", max_spheres, "cap on hypersphere attempts");
  analyze->add_option("--stall-patience", patience, "stop after this many consecutive failed spheres");
  analyze->add_option("--cluster", eps, "cluster equilibrated points with DBSCAN at this eps");
  analyze->add_option("--min-pts", min_pts, "DBSCAN min_pts")->capture_default_str();
  analyze->add_flag("--quiet", quiet, "no progress output");

  auto* exp = app.add_subcommand("export-model", "write a benchmark as a model file");
  std::string exp_bench, exp_out;
  exp->add_option("--benchmark", exp_bench, "benchmark id")->required();
  exp->add_option("--out", exp_out, "output path")->required();

  CLI11_PARSE(app, argc, argv);

  if (exp->parsed()) {
    try {
      io::save_model(build_benchmark(exp_bench), exp_out, exp_bench);
    } catch (const InvalidConfigError& e) {
      std::cerr << "error: " << e.what() << '\n';
      return kExitConfig;
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << '\n';
      return 1;
    }
    return 0;
  }

  io::RunConfig cfg;
  io::Problem problem{build_benchmark(BenchmarkId::two_bar_oracle), {}, ""};
  try {
    if (config_path) cfg = io::load_run_config(*config_path);
    if (benchmark) {
      cfg.benchmark = *benchmark;
      cfg.inline_model.reset();
      cfg.model_file.reset();
    }
    if (model_path) {
      cfg.model_file = *model_path;
      cfg.benchmark.reset();
      cfg.inline_model.reset();
    }
    if (!cfg.benchmark && !cfg.inline_model && !cfg.model_file) {
      throw InvalidConfigError("give --benchmark, --model or --config");
    }
    if (strategy) cfg.strategy = io::parse_strategy(*strategy);
    if (algo) cfg.optimizer.algorithm = parse_algorithm(*algo);
    if (seed) cfg.optimizer.seed = *seed;
    if (runs) cfg.runs = *runs;
    if (generations) cfg.optimizer.max_generations = *generations;
    if (pop) cfg.optimizer.population_size = *pop;
    if (r0) cfg.trace.schedule.r0 = *r0;
    if (d_max) cfg.trace.stop.d_max = *d_max;
    if (schedule) cfg.trace.schedule.mode = parse_radius_mode(*schedule);
    if (trials) {
      cfg.trace.trials_per_sphere = *trials;
      cfg.informed.trials_per_cell = *trials;
      if (cfg.informed.plan) cfg.informed.plan->trials_per_cell = *trials;
    }
    if (max_spheres) cfg.trace.stop.max_spheres = *max_spheres;
    if (patience) cfg.trace.stop.stall_patience = *patience;
    if (eps) cfg.cluster = io::ClusterSettings{*eps, min_pts, kDefaultLambdaScale};
    if (out_dir) cfg.out_dir = *out_dir;
    if (cfg.out_dir.empty()) cfg.out_dir = default_out_dir();
    if (svg) cfg.svg = true;
    cfg.optimizer.validate();
    problem = io::resolve_problem(cfg);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  }

  AttemptObserver observer;
  if (!quiet) {
    observer = [](const SphereAttempt& a, const TraceResult& t) {
      std::fprintf(stderr, "sphere %zu  r=%g  trials=%zu  optimal=%zu  gens=%zu  %s  d=%.3f  lambda=%.5f\n",
                   a.sphere_index, a.radius, a.trials, a.optimal_trials, a.generations,
                   a.outcome.c_str(), t.center_coords.back().d, t.center_coords.back().lambda);
    };
  }

  try {
    const io::AnalysisResult res = io::run_analysis(problem, cfg, observer);
    for (const std::string& path : io::write_artifacts(cfg.out_dir, problem, res, cfg.svg)) {
      if (!quiet) std::cerr << "wrote " << path << '\n';
    }
    if (!quiet) {
      if (res.trace) {
        std::cerr << res.trace->centers.size() << " centers, final d = "
                  << res.trace->center_coords.back().d << " mm, stop: " << res.trace->termination
                  << '\n';
      } else {
        const double tol = cfg.optimizer.target_objective;
        const SuccessRate s = success_rate(res.records, tol);
        std::cerr << s.successes << "/" << s.total << " runs below " << tol << '\n';
      }
    }
  } catch (const SeedSphereFailure& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitSeedSphere;
  } catch (const InvalidConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const InvalidDomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
