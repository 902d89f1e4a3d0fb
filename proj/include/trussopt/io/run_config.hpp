#pragma once

// Run-configuration files. Example:
//
//   {
//     "model": "sixteen-member",
//     "strategy": "hypersphere",
//     "seed": 7,
//     "optimizer": {"algorithm": "de-rand-1-bin", "population": 50, "max_generations": 20000},
//     "hypersphere": {"r0": 5, "schedule": "fixed", "d_max": 250},
//     "output": {"dir": "out", "svg": true}
//   }
//
// "model" is a benchmark id or an inline model object; "model_file" names a
// model file instead. Models other than benchmarks need a "domain". Unknown
// fields are rejected everywhere.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "trussopt/benchmarks.hpp"
#include "trussopt/domain.hpp"
#include "trussopt/hypersphere.hpp"
#include "trussopt/io/json_util.hpp"
#include "trussopt/io/model_file.hpp"

namespace trussopt::io {

enum class Strategy { single, informed, hypersphere };

inline std::string_view to_string(Strategy s) {
  switch (s) {
    case Strategy::single: return "single";
    case Strategy::informed: return "informed";
    case Strategy::hypersphere: return "hypersphere";
  }
  return "unknown";
}

inline Strategy parse_strategy(std::string_view s) {
  if (s == "single") return Strategy::single;
  if (s == "informed") return Strategy::informed;
  if (s == "hypersphere") return Strategy::hypersphere;
  throw InvalidConfigError("unknown strategy '" + std::string(s) +
                           "' (expected single, informed or hypersphere)");
}

/// Domain given as ranges: d for the control variable, one range for the
/// other displacements, one for lambda.
struct DomainRanges {
  Interval control;
  Interval other;
  Interval lambda;
};

struct ClusterSettings {
  double eps{10.0};
  std::size_t min_pts{3};
  double lambda_scale{kDefaultLambdaScale};
};

struct InformedSettings {
  std::optional<DecompositionPlan> plan;
  /// Used when no explicit plan is given: equal cells over the control range.
  std::size_t cells{10};
  std::size_t trials_per_cell{10};
};

struct RunConfig {
  std::optional<std::string> benchmark;
  std::optional<json> inline_model;
  std::optional<std::string> model_file;
  Strategy strategy{Strategy::single};
  OptimizerConfig optimizer;
  std::size_t runs{1};
  std::optional<SearchDomain> domain;
  std::optional<DomainRanges> domain_ranges;
  InformedSettings informed;
  TraceOptions trace;
  std::optional<ClusterSettings> cluster;
  std::string out_dir;
  bool svg{false};
};

namespace detail {

inline Interval as_interval(const json& v, const std::string& where) {
  as_array(v, where, 2);
  Interval i{as_number(v[0], where + "[0]"), as_number(v[1], where + "[1]")};
  if (!(i.lo <= i.hi)) throw ParseError(where + ": expected [lo, hi] with lo <= hi");
  return i;
}

inline std::vector<double> as_numbers(const json& v, const std::string& where) {
  as_array(v, where);
  std::vector<double> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    out.push_back(as_number(v[i], where + "[" + std::to_string(i) + "]"));
  }
  return out;
}

inline void read_optimizer(const json& j, const std::string& w, OptimizerConfig& c) {
  reject_unknown(j, w, {"algorithm", "population", "max_generations", "target", "de", "pso", "sa"});
  if (auto it = j.find("algorithm"); it != j.end()) {
    c.algorithm = parse_algorithm(as_string(*it, w + ".algorithm"));
  }
  if (auto it = j.find("population"); it != j.end()) c.population_size = as_count(*it, w + ".population");
  if (auto it = j.find("max_generations"); it != j.end()) {
    c.max_generations = as_count(*it, w + ".max_generations");
  }
  if (auto it = j.find("target"); it != j.end()) c.target_objective = as_number(*it, w + ".target");
  if (auto it = j.find("de"); it != j.end()) {
    const std::string dw = w + ".de";
    reject_unknown(*it, dw, {"f_min", "f_max", "cr"});
    if (auto f = it->find("f_min"); f != it->end()) c.de.scale_factor_lo = as_number(*f, dw + ".f_min");
    if (auto f = it->find("f_max"); f != it->end()) c.de.scale_factor_hi = as_number(*f, dw + ".f_max");
    if (auto f = it->find("cr"); f != it->end()) c.de.crossover_rate = as_number(*f, dw + ".cr");
  }
  if (auto it = j.find("pso"); it != j.end()) {
    const std::string pw = w + ".pso";
    reject_unknown(*it, pw, {"inertia", "damping", "c_personal", "c_global", "phi"});
    if (auto f = it->find("inertia"); f != it->end()) c.pso.inertia = as_number(*f, pw + ".inertia");
    if (auto f = it->find("damping"); f != it->end()) c.pso.inertia_damping = as_number(*f, pw + ".damping");
    if (auto f = it->find("c_personal"); f != it->end()) c.pso.c_personal = as_number(*f, pw + ".c_personal");
    if (auto f = it->find("c_global"); f != it->end()) c.pso.c_global = as_number(*f, pw + ".c_global");
    if (auto f = it->find("phi"); f != it->end()) c.pso.phi = as_number(*f, pw + ".phi");
  }
  if (auto it = j.find("sa"); it != j.end()) {
    const std::string sw = w + ".sa";
    reject_unknown(*it, sw, {"t0", "cooling"});
    if (auto f = it->find("t0"); f != it->end()) c.sa.initial_temperature = as_number(*f, sw + ".t0");
    if (auto f = it->find("cooling"); f != it->end()) c.sa.cooling_rate = as_number(*f, sw + ".cooling");
  }
}

inline void read_hypersphere(const json& j, const std::string& w, TraceOptions& t) {
  reject_unknown(j, w,
                 {"r0", "schedule", "additive_increment", "min_radius", "trials_per_sphere", "d_max",
                  "max_spheres", "stall_patience", "seed_box_u", "seed_box_lambda",
                  "lambda_per_radius", "tol_opt", "retry_doubled", "min_advance"});
  if (auto it = j.find("r0"); it != j.end()) t.schedule.r0 = as_number(*it, w + ".r0");
  if (auto it = j.find("schedule"); it != j.end()) {
    t.schedule.mode = parse_radius_mode(as_string(*it, w + ".schedule"));
  }
  if (auto it = j.find("additive_increment"); it != j.end()) {
    t.schedule.additive_increment = as_number(*it, w + ".additive_increment");
  }
  if (auto it = j.find("min_radius"); it != j.end()) t.schedule.min_radius = as_number(*it, w + ".min_radius");
  if (auto it = j.find("trials_per_sphere"); it != j.end()) {
    t.trials_per_sphere = as_count(*it, w + ".trials_per_sphere");
  }
  if (auto it = j.find("d_max"); it != j.end()) t.stop.d_max = as_number(*it, w + ".d_max");
  if (auto it = j.find("max_spheres"); it != j.end()) t.stop.max_spheres = as_count(*it, w + ".max_spheres");
  if (auto it = j.find("stall_patience"); it != j.end()) {
    t.stop.stall_patience = as_count(*it, w + ".stall_patience");
  }
  if (auto it = j.find("seed_box_u"); it != j.end()) t.seed_half_width_u = as_number(*it, w + ".seed_box_u");
  if (auto it = j.find("seed_box_lambda"); it != j.end()) {
    t.seed_half_width_lambda = as_number(*it, w + ".seed_box_lambda");
  }
  if (auto it = j.find("lambda_per_radius"); it != j.end()) {
    t.lambda_per_radius = as_number(*it, w + ".lambda_per_radius");
  }
  if (auto it = j.find("tol_opt"); it != j.end()) t.tol_opt = as_number(*it, w + ".tol_opt");
  if (auto it = j.find("min_advance"); it != j.end()) {
    t.min_advance_fraction = as_number(*it, w + ".min_advance");
  }
  if (auto it = j.find("retry_doubled"); it != j.end()) {
    t.retry_with_doubled_trials = as_bool(*it, w + ".retry_doubled");
  }
}

}  // namespace detail

inline RunConfig run_config_from_json(const json& doc, const std::string& where = "config") {
  using namespace detail;
  reject_unknown(doc, where,
                 {"model", "model_file", "strategy", "seed", "runs", "optimizer", "domain",
                  "informed", "hypersphere", "cluster", "output"});
  RunConfig c;
  const bool has_model = doc.contains("model");
  const bool has_file = doc.contains("model_file");
  if (has_model == has_file) throw ParseError(where + ": give exactly one of 'model' and 'model_file'");
  if (has_model) {
    const json& m = doc["model"];
    if (m.is_string()) {
      c.benchmark = m.get<std::string>();
      parse_benchmark(*c.benchmark);
    } else if (m.is_object()) {
      model_from_json(m, where + ".model");  // validate early
      c.inline_model = m;
    } else {
      throw ParseError(where + ".model: expected a benchmark id or a model object");
    }
  } else {
    c.model_file = as_string(doc["model_file"], where + ".model_file");
  }
  if (auto it = doc.find("strategy"); it != doc.end()) {
    c.strategy = parse_strategy(as_string(*it, where + ".strategy"));
  }
  if (auto it = doc.find("seed"); it != doc.end()) {
    c.optimizer.seed = static_cast<std::uint64_t>(as_count(*it, where + ".seed"));
  }
  if (auto it = doc.find("runs"); it != doc.end()) c.runs = as_count(*it, where + ".runs");
  if (auto it = doc.find("optimizer"); it != doc.end()) read_optimizer(*it, where + ".optimizer", c.optimizer);
  c.trace.optimizer = c.optimizer;

  if (auto it = doc.find("domain"); it != doc.end()) {
    const std::string w = where + ".domain";
    if (it->contains("lower") || it->contains("upper")) {
      reject_unknown(*it, w, {"lower", "upper"});
      SearchDomain d{as_numbers(require(*it, w, "lower"), w + ".lower"),
                     as_numbers(require(*it, w, "upper"), w + ".upper")};
      d.validate();
      c.domain = d;
    } else {
      reject_unknown(*it, w, {"control", "other", "lambda"});
      c.domain_ranges = DomainRanges{as_interval(require(*it, w, "control"), w + ".control"),
                                     as_interval(require(*it, w, "other"), w + ".other"),
                                     as_interval(require(*it, w, "lambda"), w + ".lambda")};
    }
  }

  if (auto it = doc.find("informed"); it != doc.end()) {
    const std::string w = where + ".informed";
    reject_unknown(*it, w, {"control_intervals", "variable_stages", "trials_per_cell", "cells"});
    if (auto t = it->find("trials_per_cell"); t != it->end()) {
      c.informed.trials_per_cell = as_count(*t, w + ".trials_per_cell");
    }
    if (auto t = it->find("cells"); t != it->end()) c.informed.cells = as_count(*t, w + ".cells");
    if (auto t = it->find("control_intervals"); t != it->end()) {
      DecompositionPlan p;
      as_array(*t, w + ".control_intervals");
      for (std::size_t i = 0; i < t->size(); ++i) {
        p.control_intervals.push_back(
            as_interval((*t)[i], w + ".control_intervals[" + std::to_string(i) + "]"));
      }
      if (auto s = it->find("variable_stages"); s != it->end()) {
        as_array(*s, w + ".variable_stages");
        for (std::size_t i = 0; i < s->size(); ++i) {
          const std::string sw = w + ".variable_stages[" + std::to_string(i) + "]";
          std::vector<Interval> stage;
          as_array((*s)[i], sw);
          for (std::size_t k = 0; k < (*s)[i].size(); ++k) {
            stage.push_back(as_interval((*s)[i][k], sw + "[" + std::to_string(k) + "]"));
          }
          p.variable_stages.push_back(std::move(stage));
        }
      }
      p.trials_per_cell = c.informed.trials_per_cell;
      c.informed.plan = std::move(p);
    } else if (it->contains("variable_stages")) {
      throw ParseError(w + ": variable_stages needs control_intervals");
    }
  }

  if (auto it = doc.find("hypersphere"); it != doc.end()) {
    read_hypersphere(*it, where + ".hypersphere", c.trace);
  }
  if (auto it = doc.find("cluster"); it != doc.end()) {
    const std::string w = where + ".cluster";
    reject_unknown(*it, w, {"eps", "min_pts", "lambda_scale"});
    ClusterSettings cs;
    if (auto f = it->find("eps"); f != it->end()) cs.eps = as_number(*f, w + ".eps");
    if (auto f = it->find("min_pts"); f != it->end()) cs.min_pts = as_count(*f, w + ".min_pts");
    if (auto f = it->find("lambda_scale"); f != it->end()) cs.lambda_scale = as_number(*f, w + ".lambda_scale");
    c.cluster = cs;
  }
  if (auto it = doc.find("output"); it != doc.end()) {
    const std::string w = where + ".output";
    reject_unknown(*it, w, {"dir", "svg"});
    if (auto f = it->find("dir"); f != it->end()) c.out_dir = as_string(*f, w + ".dir");
    if (auto f = it->find("svg"); f != it->end()) c.svg = as_bool(*f, w + ".svg");
  }
  return c;
}

inline RunConfig load_run_config(const std::string& path) {
  return run_config_from_json(detail::parse_text(detail::read_text(path), path), path);
}

}  // namespace trussopt::io
