#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <random>

#include <gtest/gtest.h>

#include "trussopt/path_analysis.hpp"

using namespace trussopt;

namespace {

std::vector<PathPoint> pts(std::initializer_list<std::pair<double, double>> xs) {
  std::vector<PathPoint> out;
  long id = 0;
  for (auto [d, l] : xs) out.push_back({d, l, 0.0, id++});
  return out;
}

// Reference clustering of core points by plain union-find on the eps graph.
std::vector<int> core_components(const std::vector<PathPoint>& p, double eps, std::size_t min_pts,
                                 double s, std::vector<bool>& is_core) {
  const std::size_t n = p.size();
  auto close = [&](std::size_t i, std::size_t j) {
    const double dd = p[i].d - p[j].d, dl = (p[i].lambda - p[j].lambda) * s;
    return std::sqrt(dd * dd + dl * dl) <= eps;
  };
  is_core.assign(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t c = 0;
    for (std::size_t j = 0; j < n; ++j) c += close(i, j);
    is_core[i] = c >= min_pts;
  }
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (is_core[i] && is_core[j] && close(i, j)) parent[find(i)] = static_cast<std::size_t>(find(j));
  std::vector<int> root(n, -1);
  for (std::size_t i = 0; i < n; ++i)
    if (is_core[i]) root[i] = static_cast<int>(find(i));
  return root;
}

}  // namespace

TEST(Dbscan, TwoGroupsAndNoise) {
  const auto p = pts({{0, 0}, {1, 0}, {2, 0}, {50, 0}, {51, 0}, {52, 0}, {200, 0}});
  const std::vector<int> l = dbscan(p, 1.5, 3, 1.0);
  EXPECT_EQ(l, (std::vector<int>{0, 0, 0, 1, 1, 1, kNoise}));
}

TEST(Dbscan, LambdaAxisIsScaled) {
  // 0.05 apart in lambda: neighbours at scale 10, not at scale 100
  const auto p = pts({{0, 0.0}, {0, 0.05}, {0, 0.10}});
  EXPECT_EQ(dbscan(p, 1.0, 2, 10.0), (std::vector<int>{0, 0, 0}));
  EXPECT_EQ(dbscan(p, 1.0, 2, 100.0), (std::vector<int>{kNoise, kNoise, kNoise}));
}

TEST(Dbscan, MinPtsCountsThePointItself) {
  const auto p = pts({{0, 0}, {10, 0}});
  EXPECT_EQ(dbscan(p, 1.0, 1, 1.0), (std::vector<int>{0, 1}));
  EXPECT_EQ(dbscan(p, 1.0, 2, 1.0), (std::vector<int>{kNoise, kNoise}));
}

TEST(Dbscan, BorderGoesToNearestCore) {
  // the point at 3.3 is within eps of cores from both groups, closer to 5
  const auto p = pts({{0, 0}, {0.5, 0}, {1, 0}, {1.5, 0}, {3.3, 0}, {5, 0}, {5.5, 0}, {6, 0}, {6.5, 0}});
  const std::vector<int> l = dbscan(p, 2.0, 4, 1.0);
  EXPECT_EQ(l, (std::vector<int>{0, 0, 0, 0, 1, 1, 1, 1, 1}));
}

TEST(Dbscan, EmptyAndBadParameters) {
  EXPECT_TRUE(dbscan(std::vector<PathPoint>{}, 1.0, 3, 1.0).empty());
  const auto p = pts({{0, 0}});
  EXPECT_THROW(dbscan(p, 0.0, 3, 1.0), InvalidConfigError);
  EXPECT_THROW(dbscan(p, 1.0, 0, 1.0), InvalidConfigError);
  EXPECT_THROW(dbscan(p, 1.0, 3, -1.0), InvalidConfigError);
  EXPECT_THROW(dbscan(pts({{std::nan(""), 0}}), 1.0, 1, 1.0), InvalidConfigError);
}

TEST(Dbscan, MatchesReferenceOnRandomClouds) {
  std::mt19937_64 gen(11);
  std::uniform_real_distribution<double> ud(0.0, 100.0), ul(-0.5, 0.5);
  for (int rep = 0; rep < 30; ++rep) {
    std::vector<PathPoint> p;
    for (int i = 0; i < 80; ++i) p.push_back({ud(gen), ul(gen), 0.0, i});
    const double eps = 6.0;
    const std::size_t mp = 3;
    std::vector<bool> core;
    const std::vector<int> ref = core_components(p, eps, mp, 10.0, core);
    const std::vector<int> got = dbscan(p, eps, mp, 10.0);
    std::map<int, int> fwd, back;
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (!core[i]) continue;
      ASSERT_NE(got[i], kNoise);
      auto [it, fresh] = fwd.emplace(ref[i], got[i]);
      EXPECT_EQ(it->second, got[i]);
      auto [it2, fresh2] = back.emplace(got[i], ref[i]);
      EXPECT_EQ(it2->second, ref[i]);
    }
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (core[i]) continue;
      // border points share a label with some core within eps; the rest are noise
      bool reachable = false, matches = false;
      for (std::size_t j = 0; j < p.size(); ++j) {
        if (!core[j] || detail::path_distance(p[i], p[j], 10.0) > eps) continue;
        reachable = true;
        matches = matches || got[j] == got[i];
      }
      EXPECT_EQ(got[i] != kNoise, reachable);
      if (reachable) {
        EXPECT_TRUE(matches);
      }
    }
  }
}

TEST(Dbscan, InvariantUnderInputOrder) {
  std::mt19937_64 gen(5);
  std::uniform_real_distribution<double> ud(0.0, 60.0), ul(-0.2, 0.2);
  std::vector<PathPoint> p;
  for (int i = 0; i < 60; ++i) p.push_back({ud(gen), ul(gen), 0.0, i});
  const std::vector<int> base = dbscan(p, 5.0, 3, 10.0);
  for (int rep = 0; rep < 10; ++rep) {
    std::vector<std::size_t> perm(p.size());
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), gen);
    std::vector<PathPoint> q;
    for (std::size_t k : perm) q.push_back(p[k]);
    const std::vector<int> l = dbscan(q, 5.0, 3, 10.0);
    // same partition: compare pairwise co-membership
    for (std::size_t a = 0; a < perm.size(); ++a) {
      EXPECT_EQ(l[a] == kNoise, base[perm[a]] == kNoise);
      for (std::size_t b = a + 1; b < perm.size(); ++b) {
        if (l[a] == kNoise || l[b] == kNoise) continue;
        EXPECT_EQ(l[a] == l[b], base[perm[a]] == base[perm[b]]);
      }
    }
  }
}

TEST(CanonicalLabels, RenumbersByFirstAppearance) {
  const std::vector<int> in{3, 3, -1, 0, 7, 0};
  EXPECT_EQ(canonical_labels(in), (std::vector<int>{0, 0, -1, 1, 2, 1}));
}

TEST(ConvergenceProfile, PadsShortHistories) {
  const std::vector<std::vector<double>> h{{4, 2, 1}, {4, 4, 2}};
  const ConvergenceProfile p = convergence_profile(std::span<const std::vector<double>>(h));
  EXPECT_EQ(p.mean, (std::vector<double>{4, 3, 1.5}));
  EXPECT_EQ(p.stddev, (std::vector<double>{0, 1, 0.5}));

  const std::vector<std::vector<double>> g{{4, 2, 1}, {6}};
  const ConvergenceProfile q = convergence_profile(std::span<const std::vector<double>>(g));
  EXPECT_EQ(q.mean, (std::vector<double>{5, 4, 3.5}));
  EXPECT_EQ(q.count, (std::vector<std::size_t>{2, 1, 1}));
}

TEST(ConvergenceProfile, FilterAndErrors) {
  const std::vector<std::vector<double>> h{{4, 2, 1}, {9, 8}};
  const ConvergenceProfile p = convergence_profile(std::span<const std::vector<double>>(h), 1.0);
  EXPECT_EQ(p.mean, (std::vector<double>{4, 2, 1}));
  EXPECT_THROW(convergence_profile(std::span<const std::vector<double>>{}), InvalidConfigError);
}

TEST(ConvergenceProfile, MeanIsNonIncreasingForBestSoFar) {
  std::mt19937_64 gen(2);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<std::vector<double>> h(20);
  for (auto& v : h) {
    double best = 10.0;
    const int len = 5 + static_cast<int>(u(gen) * 40);
    for (int g = 0; g < len; ++g) v.push_back(best = std::min(best, 10.0 * u(gen)));
  }
  const ConvergenceProfile p = convergence_profile(std::span<const std::vector<double>>(h));
  for (std::size_t g = 1; g < p.size(); ++g) EXPECT_LE(p.mean[g], p.mean[g - 1]);
}

TEST(SuccessRate, StrictThresholdAndErrors) {
  std::vector<RunRecord> r(4);
  r[0].history = {1.0, 1e-6};
  r[1].history = {1e-5};  // not strictly below
  r[2].history = {1e-7};
  r[2].error = "degenerate member";
  r[3].history = {};
  const SuccessRate s = success_rate(r, 1e-5);
  EXPECT_EQ(s.successes, 1u);
  EXPECT_EQ(s.total, 4u);
  EXPECT_DOUBLE_EQ(s.fraction, 0.25);
  EXPECT_EQ(success_rate(std::vector<RunRecord>{}, 1e-5).fraction, 0.0);
}
