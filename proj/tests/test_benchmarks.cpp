#include <cmath>

#include <gtest/gtest.h>

#include "trussopt/benchmarks.hpp"

using namespace trussopt;

namespace {

double total_vertical_load(const TrussModel& m) {
  double s = 0.0;
  for (const Vec3& f : m.variable_load()) s += f.z;
  return s;
}

// Displacement-controlled Newton on the control DoF: unknowns are the other
// free displacements plus lambda, finite-difference Jacobian, dense solve.
double lambda_at(const TrussModel& m, double d, std::vector<double>& u, double& lam) {
  const std::size_t n = m.free_dof_count();
  const auto& c = std::get<NodeAxisControl>(m.control().mode);
  std::size_t ctrl = 0;
  for (std::size_t k = 0; k < n; ++k) {
    const auto& [node, axis] = m.free_dof(k);
    if (m.nodes()[node].id == c.node && axis == c.axis) ctrl = k;
  }
  u[ctrl] = c.sign * d;
  auto unknown = [&](std::size_t j) -> double& { return j == ctrl ? lam : u[j]; };
  for (int it = 0; it < 50; ++it) {
    const std::vector<double> r = free_unbalance(m, u, lam);
    double rn = 0.0;
    for (double v : r) rn += v * v;
    if (std::sqrt(rn) < 1e-9) break;
    std::vector<std::vector<double>> J(n, std::vector<double>(n + 1));
    for (std::size_t j = 0; j < n; ++j) {
      const double h = j == ctrl ? 1e-7 : 1e-6;
      unknown(j) += h;
      const std::vector<double> rp = free_unbalance(m, u, lam);
      unknown(j) -= h;
      for (std::size_t i = 0; i < n; ++i) J[i][j] = (rp[i] - r[i]) / h;
    }
    for (std::size_t i = 0; i < n; ++i) J[i][n] = -r[i];
    for (std::size_t c = 0; c < n; ++c) {
      std::size_t p = c;
      for (std::size_t i = c + 1; i < n; ++i)
        if (std::abs(J[i][c]) > std::abs(J[p][c])) p = i;
      std::swap(J[c], J[p]);
      for (std::size_t i = c + 1; i < n; ++i) {
        const double f = J[i][c] / J[c][c];
        for (std::size_t k = c; k <= n; ++k) J[i][k] -= f * J[c][k];
      }
    }
    std::vector<double> x(n);
    for (std::size_t c = n; c-- > 0;) {
      double s = J[c][n];
      for (std::size_t k = c + 1; k < n; ++k) s -= J[c][k] * x[k];
      x[c] = s / J[c][c];
    }
    for (std::size_t j = 0; j < n; ++j) unknown(j) += x[j];
  }
  return lam;
}

}  // namespace

TEST(Benchmarks, FreeDofCounts) {
  EXPECT_EQ(build_benchmark(BenchmarkId::eight_member).free_dof_count(), 3u);
  EXPECT_EQ(build_benchmark(BenchmarkId::sixteen_member).free_dof_count(), 15u);
  EXPECT_EQ(build_benchmark(BenchmarkId::twentyfour_member).free_dof_count(), 21u);
  EXPECT_EQ(build_benchmark(BenchmarkId::reticular_beam).free_dof_count(), 30u);
  EXPECT_EQ(build_benchmark(BenchmarkId::two_bar_oracle).free_dof_count(), 1u);
}

TEST(Benchmarks, Sizes) {
  const TrussModel e = build_benchmark("eight-member");
  EXPECT_EQ(e.nodes().size(), 9u);
  EXPECT_EQ(e.members().size(), 8u);
  EXPECT_EQ(build_benchmark("sixteen-member").members().size(), 16u);
  EXPECT_EQ(build_benchmark("twentyfour-member").members().size(), 24u);
  EXPECT_EQ(build_benchmark("twentyfour-member").nodes().size(), 13u);
  const TrussModel r = build_benchmark("reticular-beam");
  EXPECT_EQ(r.nodes().size(), 14u);
  EXPECT_EQ(r.members().size(), 33u);
}

TEST(Benchmarks, Loads) {
  EXPECT_DOUBLE_EQ(total_vertical_load(build_benchmark("eight-member")), -4450.0);
  EXPECT_DOUBLE_EQ(total_vertical_load(build_benchmark("sixteen-member")), -4.45e6);
  EXPECT_DOUBLE_EQ(total_vertical_load(build_benchmark("twentyfour-member")), -200.0);
  EXPECT_DOUBLE_EQ(total_vertical_load(build_benchmark("reticular-beam")), -400000.0);
  EXPECT_DOUBLE_EQ(total_vertical_load(build_benchmark("two-bar-oracle")), -400.0);
}

TEST(Benchmarks, EightMemberStiffnessAndGeometry) {
  const TrussModel m = build_benchmark("eight-member");
  for (const MemberSpec& s : m.members()) EXPECT_DOUBLE_EQ(s.axial_stiffness, 451500.0);
  for (std::size_t k = 0; k < m.members().size(); ++k)
    EXPECT_NEAR(m.initial_length(k), std::hypot(12700.0, 1000.0), 1e-9);
}

TEST(Benchmarks, NamesRoundTrip) {
  for (BenchmarkId id : kAllBenchmarks) EXPECT_EQ(parse_benchmark(to_string(id)), id);
  EXPECT_THROW(parse_benchmark("nine-member"), InvalidConfigError);
}

TEST(Benchmarks, DefaultDomainsContainTheUnloadedState) {
  for (BenchmarkId id : kAllBenchmarks) {
    const TrussModel m = build_benchmark(id);
    const SearchDomain d = default_domain(id, m);
    EXPECT_EQ(d.dimension(), m.search_dimension()) << to_string(id);
    const std::vector<double> x = to_search_vector(undeformed(m));
    EXPECT_TRUE(d.contains(x)) << to_string(id);
    EXPECT_DOUBLE_EQ(objective(m, undeformed(m)), 0.0) << to_string(id);
  }
}

TEST(Benchmarks, TwentyFourMemberHasSnapThroughWithinFiftyMillimetres) {
  const TrussModel m = build_benchmark(BenchmarkId::twentyfour_member);
  std::vector<double> u(m.free_dof_count(), 0.0);
  double lam = 0.0;
  std::vector<double> curve;
  for (int d = 0; d <= 50; ++d) curve.push_back(lambda_at(m, d, u, lam));
  int maxima = 0, minima = 0, d_max = -1, d_min = -1;
  for (int d = 1; d < 50; ++d) {
    if (curve[d] > curve[d - 1] && curve[d] > curve[d + 1]) ++maxima, d_max = d;
    if (curve[d] < curve[d - 1] && curve[d] < curve[d + 1]) ++minima, d_min = d;
  }
  EXPECT_EQ(maxima, 1);
  EXPECT_EQ(minima, 1);
  EXPECT_LT(d_max, d_min);
  EXPECT_NEAR(d_max, 8, 2);
  EXPECT_NEAR(curve[d_max], 8.0, 0.5);
  EXPECT_NEAR(d_min, 29, 3);
  const SearchDomain dom = default_domain(BenchmarkId::twentyfour_member, m);
  for (double v : curve) {
    EXPECT_GT(v, dom.lower.back());
    EXPECT_LT(v, dom.upper.back());
  }
}
