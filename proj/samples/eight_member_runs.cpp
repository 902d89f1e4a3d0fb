// Independent DE runs on the eight-member dome: success rate and the
// spread of equilibrated points along the path.

#include <algorithm>
#include <cstdio>
#include <vector>

#include "trussopt/benchmarks.hpp"
#include "trussopt/run.hpp"

int main() {
  using namespace trussopt;
  const TrussModel model = build_benchmark(BenchmarkId::eight_member);
  const SearchDomain domain = default_domain(BenchmarkId::eight_member, model);

  OptimizerConfig cfg;
  cfg.population_size = 50;
  cfg.max_generations = 1000;
  std::vector<RunRecord> runs;
  for (std::uint64_t i = 0; i < 20; ++i) {
    cfg.seed = derive_seed(42, i);
    runs.push_back(optimize(model, domain, cfg));
  }
  const auto ok = std::count_if(runs.begin(), runs.end(), [](const RunRecord& r) { return r.converged; });
  std::printf("%td/%zu runs equilibrated\n", ok, runs.size());

  std::sort(runs.begin(), runs.end(),
            [](const RunRecord& a, const RunRecord& b) { return a.control_d < b.control_d; });
  for (const RunRecord& r : runs) {
    std::printf("d = %8.2f mm  lambda = %8.5f  objective = %.2e  generations = %zu\n", r.control_d,
                r.best.lambda, r.final_objective(), r.generations_used);
  }
}
