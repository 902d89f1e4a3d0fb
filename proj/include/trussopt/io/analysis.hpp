#pragma once

// End-to-end execution of a run configuration: resolve the model and domain,
// run the chosen strategy, and write the CSV/SVG artifacts.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include "trussopt/benchmarks.hpp"
#include "trussopt/domain.hpp"
#include "trussopt/hypersphere.hpp"
#include "trussopt/io/model_file.hpp"
#include "trussopt/io/results_csv.hpp"
#include "trussopt/io/run_config.hpp"
#include "trussopt/io/svg.hpp"
#include "trussopt/path_analysis.hpp"
#include "trussopt/run.hpp"

namespace trussopt::io {

struct Problem {
  TrussModel model;
  SearchDomain domain;
  std::string label;
};

inline Problem resolve_problem(const RunConfig& c) {
  std::optional<TrussModel> model;
  std::optional<BenchmarkId> bench;
  std::string label;
  if (c.benchmark) {
    bench = parse_benchmark(*c.benchmark);
    model = build_benchmark(*bench);
    label = *c.benchmark;
  } else if (c.inline_model) {
    model = model_from_json(*c.inline_model, "config.model");
    label = c.inline_model->value("name", std::string("inline-model"));
  } else if (c.model_file) {
    model = load_model(*c.model_file);
    label = std::filesystem::path(*c.model_file).stem().string();
  } else {
    throw InvalidConfigError("no model given");
  }

  SearchDomain domain;
  if (c.domain) {
    domain = *c.domain;
  } else if (c.domain_ranges) {
    domain = control_aligned_domain(*model, c.domain_ranges->control, c.domain_ranges->other,
                                    c.domain_ranges->lambda);
  } else if (bench) {
    domain = default_domain(*bench, *model);
  } else {
    throw InvalidConfigError("models loaded from files need an explicit domain");
  }
  domain.validate();
  if (domain.dimension() != model->search_dimension()) {
    throw InvalidConfigError("domain has " + std::to_string(domain.dimension()) +
                             " entries but the model needs " +
                             std::to_string(model->search_dimension()));
  }
  return {std::move(*model), std::move(domain), std::move(label)};
}

/// Range of d covered by the domain's control variable.
inline Interval control_range(const TrussModel& model, const SearchDomain& domain) {
  const auto* c = std::get_if<NodeAxisControl>(&model.control().mode);
  if (c == nullptr) throw InvalidConfigError("informed decomposition needs a node-axis control point");
  const auto k = static_cast<std::size_t>(model.dof_index(model.node_index(c->node), c->axis));
  const double a = c->sign * domain.lower[k];
  const double b = c->sign * domain.upper[k];
  return {std::min(a, b), std::max(a, b)};
}

struct AnalysisResult {
  Strategy strategy{Strategy::single};
  std::vector<RunRecord> records;
  std::optional<TraceResult> trace;
  std::vector<ResultRow> rows;
  bool clustered{false};
  std::optional<Candidate> shape;
};

inline AnalysisResult run_analysis(const Problem& p, const RunConfig& c,
                                   const AttemptObserver& observer = {}) {
  AnalysisResult out;
  out.strategy = c.strategy;
  const std::string_view name = to_string(c.strategy);
  switch (c.strategy) {
    case Strategy::single: {
      if (c.runs < 1) throw InvalidConfigError("runs must be at least 1");
      for (std::size_t i = 0; i < c.runs; ++i) {
        OptimizerConfig cfg = c.optimizer;
        cfg.seed = derive_seed(c.optimizer.seed, i);
        out.records.push_back(optimize(p.model, p.domain, cfg));
      }
      out.rows = rows_from_records(out.records, name);
      break;
    }
    case Strategy::informed: {
      DecompositionPlan plan;
      if (c.informed.plan) {
        plan = *c.informed.plan;
      } else {
        const Interval r = control_range(p.model, p.domain);
        if (c.informed.cells < 1) throw InvalidConfigError("informed.cells must be at least 1");
        plan = DecompositionPlan::uniform_cells(r.lo, r.hi, c.informed.cells, c.informed.trials_per_cell);
      }
      out.records = informed_decomposition(p.model, p.domain, plan, c.optimizer);
      out.rows = rows_from_records(out.records, name);
      break;
    }
    case Strategy::hypersphere: {
      TraceOptions t = c.trace;
      t.optimizer = c.optimizer;
      out.trace = trace_path(p.model, p.domain, t, observer);
      out.rows = rows_from_trace(*out.trace, name);
      break;
    }
  }

  if (!out.records.empty()) {
    const RunRecord* best = nullptr;
    for (const RunRecord& r : out.records) {
      if (r.error.empty() && (!best || r.final_objective() < best->final_objective())) best = &r;
    }
    if (best) out.shape = best->best;
  } else if (out.trace && !out.trace->centers.empty()) {
    out.shape = out.trace->centers.back();
  }

  if (c.cluster) {
    // only equilibrated points are clustered; the rest stay noise
    std::vector<PathPoint> pts;
    std::vector<std::size_t> where;
    for (std::size_t i = 0; i < out.rows.size(); ++i) {
      const ResultRow& r = out.rows[i];
      if (r.objective <= c.optimizer.target_objective) {
        pts.push_back({r.d_mm, r.lambda, r.objective, r.run_id});
        where.push_back(i);
      }
    }
    const std::vector<int> labels = dbscan(pts, c.cluster->eps, c.cluster->min_pts, c.cluster->lambda_scale);
    for (ResultRow& r : out.rows) r.cluster = kNoise;
    for (std::size_t k = 0; k < where.size(); ++k) out.rows[where[k]].cluster = labels[k];
    out.clustered = true;
  }
  return out;
}

/// Writes results.csv, plus profile.csv (run strategies), effort.csv
/// (hypersphere) and shape.svg (when requested). Returns the written paths.
inline std::vector<std::string> write_artifacts(const std::string& dir, const Problem& p,
                                                const AnalysisResult& a, bool svg) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  std::vector<std::string> written;
  auto open = [&](const char* name) {
    const std::string path = (fs::path(dir) / name).string();
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error("cannot write '" + path + "'");
    written.push_back(path);
    return f;
  };
  {
    auto f = open("results.csv");
    write_results_csv(f, a.rows, a.clustered);
  }
  if (!a.records.empty()) {
    auto f = open("profile.csv");
    write_profile_csv(f, convergence_profile(std::span<const RunRecord>(a.records)));
  }
  if (a.trace) {
    auto f = open("effort.csv");
    write_effort_csv(f, *a.trace);
  }
  if (svg && a.shape) {
    auto f = open("shape.svg");
    f << render_svg(p.model, *a.shape);
  }
  return written;
}

}  // namespace trussopt::io
