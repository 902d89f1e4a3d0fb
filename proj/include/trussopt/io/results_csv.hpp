#pragma once

// Results table. The header is fixed; an optional trailing "cluster" column
// is added when clustering was requested. Reals are written with 17
// significant digits so reading back is lossless.

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "trussopt/errors.hpp"
#include "trussopt/hypersphere.hpp"
#include "trussopt/path_analysis.hpp"
#include "trussopt/run.hpp"

namespace trussopt::io {

inline constexpr std::string_view kResultsHeader =
    "run_id,strategy,sphere_index,is_center,d_mm,lambda,objective,generations,seed";

struct ResultRow {
  long long run_id{0};
  std::string strategy;
  long long sphere_index{-1};
  bool is_center{false};
  double d_mm{0.0};
  double lambda{0.0};
  double objective{0.0};
  std::uint64_t generations{0};
  std::uint64_t seed{0};
  std::optional<int> cluster;

  friend bool operator==(const ResultRow&, const ResultRow&) = default;
};

inline std::string format_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline void write_results_csv(std::ostream& out, const std::vector<ResultRow>& rows,
                              bool with_cluster = false) {
  out << kResultsHeader << (with_cluster ? ",cluster" : "") << '\n';
  for (const ResultRow& r : rows) {
    out << r.run_id << ',' << r.strategy << ',' << r.sphere_index << ',' << (r.is_center ? 1 : 0)
        << ',' << format_real(r.d_mm) << ',' << format_real(r.lambda) << ','
        << format_real(r.objective) << ',' << r.generations << ',' << r.seed;
    if (with_cluster) out << ',' << r.cluster.value_or(kNoise);
    out << '\n';
  }
}

inline void write_results_csv(const std::string& path, const std::vector<ResultRow>& rows,
                              bool with_cluster = false) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path + "'");
  write_results_csv(out, rows, with_cluster);
  if (!out) throw Error("write failed for '" + path + "'");
}

namespace detail {

template <class T>
T parse_field(const std::string& s, std::size_t line, const char* name) {
  const char* b = s.c_str();
  char* e = nullptr;
  T v{};
  if constexpr (std::is_same_v<T, double>) {
    v = std::strtod(b, &e);
  } else if constexpr (std::is_same_v<T, std::uint64_t>) {
    if (!s.empty() && s[0] == '-') e = const_cast<char*>(b);
    else v = std::strtoull(b, &e, 10);
  } else {
    v = static_cast<T>(std::strtoll(b, &e, 10));
  }
  if (s.empty() || e != b + s.size()) {
    throw ParseError("results line " + std::to_string(line) + ": bad " + name + " '" + s + "'");
  }
  return v;
}

}  // namespace detail

inline std::vector<ResultRow> read_results_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError("results: empty input");
  bool with_cluster = false;
  if (line == std::string(kResultsHeader) + ",cluster") {
    with_cluster = true;
  } else if (line != kResultsHeader) {
    throw ParseError("results: unexpected header '" + line + "'");
  }
  const std::size_t ncols = with_cluster ? 10 : 9;
  std::vector<ResultRow> rows;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) f.push_back(cell);
    if (!line.empty() && line.back() == ',') f.emplace_back();
    if (f.size() != ncols) {
      throw ParseError("results line " + std::to_string(lineno) + ": expected " +
                       std::to_string(ncols) + " fields");
    }
    ResultRow r;
    r.run_id = detail::parse_field<long long>(f[0], lineno, "run_id");
    r.strategy = f[1];
    r.sphere_index = detail::parse_field<long long>(f[2], lineno, "sphere_index");
    const long long c = detail::parse_field<long long>(f[3], lineno, "is_center");
    if (c != 0 && c != 1) throw ParseError("results line " + std::to_string(lineno) + ": is_center must be 0 or 1");
    r.is_center = c == 1;
    r.d_mm = detail::parse_field<double>(f[4], lineno, "d_mm");
    r.lambda = detail::parse_field<double>(f[5], lineno, "lambda");
    r.objective = detail::parse_field<double>(f[6], lineno, "objective");
    r.generations = detail::parse_field<std::uint64_t>(f[7], lineno, "generations");
    r.seed = detail::parse_field<std::uint64_t>(f[8], lineno, "seed");
    if (with_cluster) r.cluster = detail::parse_field<int>(f[9], lineno, "cluster");
    rows.push_back(std::move(r));
  }
  return rows;
}

inline std::vector<ResultRow> read_results_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path + "'");
  return read_results_csv(in);
}

/// One row per run (single or informed strategy).
inline std::vector<ResultRow> rows_from_records(const std::vector<RunRecord>& records,
                                                std::string_view strategy) {
  std::vector<ResultRow> rows;
  rows.reserve(records.size());
  for (std::size_t i = 0; i < records.size(); ++i) {
    const RunRecord& r = records[i];
    ResultRow row;
    row.run_id = static_cast<long long>(i);
    row.strategy = strategy;
    row.d_mm = r.control_d;
    row.lambda = r.best.lambda;
    row.objective = r.final_objective();
    row.generations = r.generations_used;
    row.seed = r.config.seed;
    rows.push_back(std::move(row));
  }
  return rows;
}

/// The starting center (run_id -1, sphere 0) when it is the unloaded state,
/// then every optimal trial in discovery order.
inline std::vector<ResultRow> rows_from_trace(const TraceResult& t, std::string_view strategy) {
  std::vector<ResultRow> rows;
  if (t.starts_unloaded && !t.centers.empty()) {
    ResultRow r;
    r.run_id = -1;
    r.strategy = strategy;
    r.sphere_index = 0;
    r.is_center = true;
    r.d_mm = t.center_coords.front().d;
    r.lambda = t.center_coords.front().lambda;
    r.objective = t.centers.front().objective.value_or(0.0);
    rows.push_back(std::move(r));
  }
  for (const TraceSolution& s : t.all_optimal) {
    ResultRow r;
    r.run_id = static_cast<long long>(s.run_id);
    r.strategy = strategy;
    r.sphere_index = static_cast<long long>(s.sphere_index);
    r.is_center = s.is_center;
    r.d_mm = s.at.d;
    r.lambda = s.at.lambda;
    r.objective = s.candidate.objective.value_or(0.0);
    r.generations = s.generations;
    r.seed = s.seed;
    rows.push_back(std::move(r));
  }
  return rows;
}

inline std::vector<PathPoint> path_points(const std::vector<ResultRow>& rows) {
  std::vector<PathPoint> pts;
  pts.reserve(rows.size());
  for (const ResultRow& r : rows) pts.push_back({r.d_mm, r.lambda, r.objective, r.run_id});
  return pts;
}

inline void write_profile_csv(std::ostream& out, const ConvergenceProfile& p) {
  out << "generation,mean,std,n\n";
  for (std::size_t g = 0; g < p.size(); ++g) {
    out << g + 1 << ',' << format_real(p.mean[g]) << ',' << format_real(p.stddev[g]) << ','
        << p.count[g] << '\n';
  }
}

/// Per-attempt effort of a trace.
inline void write_effort_csv(std::ostream& out, const TraceResult& t) {
  out << "sphere_index,parent_center,parent_d_mm,radius,trials,optimal_trials,generations,outcome\n";
  for (const SphereAttempt& a : t.attempts) {
    const double pd = a.parent_center < t.center_coords.size() ? t.center_coords[a.parent_center].d : 0.0;
    out << a.sphere_index << ',' << a.parent_center << ',' << format_real(pd) << ','
        << format_real(a.radius) << ',' << a.trials << ',' << a.optimal_trials << ','
        << a.generations << ',' << a.outcome << '\n';
  }
}

}  // namespace trussopt::io
