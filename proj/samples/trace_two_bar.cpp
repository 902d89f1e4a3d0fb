// Traces the two-bar truss through its snap-through with the hypersphere
// search and prints each center as "d lambda objective".

#include <cstdio>

#include "trussopt/benchmarks.hpp"
#include "trussopt/hypersphere.hpp"

int main() {
  using namespace trussopt;
  const TrussModel model = build_benchmark(BenchmarkId::two_bar_oracle);
  const SearchDomain domain = default_domain(BenchmarkId::two_bar_oracle, model);

  TraceOptions opt;
  opt.schedule.r0 = 5.0;
  opt.trials_per_sphere = 3;
  opt.optimizer.population_size = 20;
  opt.optimizer.max_generations = 2000;
  opt.stop.d_max = 180.0;

  const TraceResult t = trace_path(model, domain, opt);
  std::printf("# %zu centers, stop: %s, %zu generations\n", t.centers.size(), t.termination.c_str(),
              t.total_generations);
  for (std::size_t k = 0; k < t.centers.size(); ++k) {
    std::printf("%9.3f %9.5f %.2e\n", t.center_coords[k].d, t.center_coords[k].lambda,
                t.centers[k].objective.value_or(0.0));
  }
}
