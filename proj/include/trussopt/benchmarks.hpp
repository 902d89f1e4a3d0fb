#pragma once

// Registry of the shipped structures. Lengths in mm, forces in N.
//
// Only the eight-member dome and the two-bar truss are fully pinned down by
// their source data; the other three layouts are reconstructions that match
// the published node/member/DoF counts, dimensions and stiffness.

#include <array>
#include <cmath>
#include <numbers>
#include <string>
#include <string_view>
#include <vector>

#include "trussopt/errors.hpp"
#include "trussopt/model.hpp"
#include "trussopt/search_domain.hpp"

namespace trussopt {

enum class BenchmarkId { eight_member, sixteen_member, twentyfour_member, reticular_beam, two_bar_oracle };

inline constexpr std::array<BenchmarkId, 5> kAllBenchmarks{
    BenchmarkId::eight_member, BenchmarkId::sixteen_member, BenchmarkId::twentyfour_member,
    BenchmarkId::reticular_beam, BenchmarkId::two_bar_oracle};

inline std::string_view to_string(BenchmarkId id) {
  switch (id) {
    case BenchmarkId::eight_member: return "eight-member";
    case BenchmarkId::sixteen_member: return "sixteen-member";
    case BenchmarkId::twentyfour_member: return "twentyfour-member";
    case BenchmarkId::reticular_beam: return "reticular-beam";
    case BenchmarkId::two_bar_oracle: return "two-bar-oracle";
  }
  return "unknown";
}

inline BenchmarkId parse_benchmark(std::string_view s) {
  for (BenchmarkId id : kAllBenchmarks) {
    if (to_string(id) == s) return id;
  }
  throw InvalidConfigError("unknown benchmark '" + std::string(s) + "'");
}

namespace bench {

// eight-member shallow dome
inline constexpr double kEightSpan = 12700.0;
inline constexpr double kEightRise = 1000.0;
inline constexpr double kEightEA = 6450.0 * 70.0;
inline constexpr double kEightLoad = 4450.0;

// sixteen-member star
inline constexpr double kSixteenHalfWidth = 127.0;
inline constexpr double kSixteenRise = 100.0;
inline constexpr double kSixteenInnerRadius = 100.0;
inline constexpr double kSixteenInnerRise = 40.0;  // reconstruction
inline constexpr double kSixteenEA = 645.0 * 68950.0;
inline constexpr double kSixteenLoad = 4450.0e3;

// twenty-four-member hexagonal star (reconstruction)
inline constexpr double kStarApexRise = 82.16;
inline constexpr double kStarInnerRise = 62.16;
inline constexpr double kStarInnerRadius = 250.0;
inline constexpr double kStarOuterRadius = 500.0;
inline constexpr double kStarEA = 960.5e3;
inline constexpr double kStarApexLoad = 50.0;
inline constexpr double kStarInnerLoad = 25.0;

// reticular beam
inline constexpr double kBeamSpan = 8000.0;
inline constexpr double kBeamWidth = 2000.0;
inline constexpr double kBeamHeight = 750.0;
inline constexpr double kBeamEA = 2500.0 * 200000.0;
inline constexpr double kBeamLoad = 100.0e3;

// two-bar oracle
inline constexpr double kTwoBarHalfSpan = 1000.0;
inline constexpr double kTwoBarRise = 100.0;
inline constexpr double kTwoBarEA = 1.0e6;
inline constexpr double kTwoBarLoad = 400.0;

inline constexpr std::array<bool, 3> kFixed{true, true, true};
inline constexpr std::array<bool, 3> kFree{false, false, false};

inline TrussModel eight_member() {
  std::vector<NodeSpec> nodes{{1, {0.0, 0.0, kEightRise}, kFree}};
  std::vector<MemberSpec> members;
  for (int j = 0; j < 8; ++j) {
    const double a = j * std::numbers::pi / 4.0;
    nodes.push_back({j + 2, {kEightSpan * std::cos(a), kEightSpan * std::sin(a), 0.0}, kFixed});
    members.push_back({j + 2, 1, kEightEA});
  }
  std::vector<Vec3> perm(nodes.size()), var(nodes.size());
  var[0] = {0.0, 0.0, -kEightLoad};
  return TrussModel(std::move(nodes), std::move(members), std::move(perm), std::move(var),
                    ControlPointSpec::node_axis(1, 2, -1.0));
}

inline TrussModel sixteen_member() {
  // apex 1, inner ring 2..5 (+x, +y, -x, -y), corners 6..9
  std::vector<NodeSpec> nodes{{1, {0.0, 0.0, kSixteenRise}, kFree}};
  const double r = kSixteenInnerRadius;
  const std::array<Vec3, 4> inner{Vec3{r, 0, kSixteenInnerRise}, Vec3{0, r, kSixteenInnerRise},
                                  Vec3{-r, 0, kSixteenInnerRise}, Vec3{0, -r, kSixteenInnerRise}};
  const double h = kSixteenHalfWidth;
  const std::array<Vec3, 4> corner{Vec3{h, h, 0}, Vec3{-h, h, 0}, Vec3{-h, -h, 0}, Vec3{h, -h, 0}};
  for (int j = 0; j < 4; ++j) nodes.push_back({j + 2, inner[j], kFree});
  for (int j = 0; j < 4; ++j) nodes.push_back({j + 6, corner[j], kFixed});
  std::vector<MemberSpec> members;
  for (int j = 0; j < 4; ++j) members.push_back({1, j + 2, kSixteenEA});
  for (int j = 0; j < 4; ++j) members.push_back({j + 2, (j + 1) % 4 + 2, kSixteenEA});
  // inner node j sits between corners j-1 and j (corner j lies at 45 deg past inner j)
  for (int j = 0; j < 4; ++j) {
    members.push_back({j + 2, j + 6, kSixteenEA});
    members.push_back({j + 2, (j + 3) % 4 + 6, kSixteenEA});
  }
  std::vector<Vec3> perm(nodes.size()), var(nodes.size());
  var[0] = {0.0, 0.0, -kSixteenLoad};
  return TrussModel(std::move(nodes), std::move(members), std::move(perm), std::move(var),
                    ControlPointSpec::node_axis(1, 2, -1.0));
}

inline TrussModel twentyfour_member() {
  // apex 1, inner 2..7 at 60j deg, outer 8..13 at 60j+30 deg
  std::vector<NodeSpec> nodes{{1, {0.0, 0.0, kStarApexRise}, kFree}};
  for (int j = 0; j < 6; ++j) {
    const double a = j * std::numbers::pi / 3.0;
    nodes.push_back({j + 2,
                     {kStarInnerRadius * std::cos(a), kStarInnerRadius * std::sin(a), kStarInnerRise},
                     kFree});
  }
  for (int j = 0; j < 6; ++j) {
    const double a = j * std::numbers::pi / 3.0 + std::numbers::pi / 6.0;
    nodes.push_back(
        {j + 8, {kStarOuterRadius * std::cos(a), kStarOuterRadius * std::sin(a), 0.0}, kFixed});
  }
  std::vector<MemberSpec> members;
  for (int j = 0; j < 6; ++j) members.push_back({1, j + 2, kStarEA});
  for (int j = 0; j < 6; ++j) members.push_back({j + 2, (j + 1) % 6 + 2, kStarEA});
  for (int j = 0; j < 6; ++j) {
    members.push_back({j + 2, j + 8, kStarEA});            // outer at +30 deg
    members.push_back({j + 2, (j + 5) % 6 + 8, kStarEA});  // outer at -30 deg
  }
  std::vector<Vec3> perm(nodes.size()), var(nodes.size());
  var[0] = {0.0, 0.0, -kStarApexLoad};
  for (int j = 1; j <= 6; ++j) var[j] = {0.0, 0.0, -kStarInnerLoad};
  return TrussModel(std::move(nodes), std::move(members), std::move(perm), std::move(var),
                    ControlPointSpec::node_axis(1, 2, -1.0));
}

inline TrussModel reticular_beam() {
  // bottom chords: ids 1..5 (y = -w/2), 6..10 (y = +w/2) at x = 0, 2000, .., 8000
  // top chord: ids 11..14 at x = 1000, 3000, 5000, 7000
  const double bay = kBeamSpan / 4.0;
  const double hw = kBeamWidth / 2.0;
  std::vector<NodeSpec> nodes;
  for (int side = 0; side < 2; ++side) {
    const double y = side == 0 ? -hw : hw;
    for (int i = 0; i < 5; ++i) {
      const bool support = i == 0 || i == 4;
      nodes.push_back({side * 5 + i + 1, {i * bay, y, 0.0}, support ? kFixed : kFree});
    }
  }
  for (int i = 0; i < 4; ++i) nodes.push_back({11 + i, {(i + 0.5) * bay, 0.0, kBeamHeight}, kFree});

  std::vector<MemberSpec> members;
  for (int side = 0; side < 2; ++side) {
    for (int i = 0; i < 4; ++i) members.push_back({side * 5 + i + 1, side * 5 + i + 2, kBeamEA});
  }
  for (int i = 0; i < 5; ++i) members.push_back({i + 1, i + 6, kBeamEA});
  for (int i = 0; i < 3; ++i) members.push_back({11 + i, 12 + i, kBeamEA});
  for (int i = 0; i < 4; ++i) {
    members.push_back({11 + i, i + 1, kBeamEA});
    members.push_back({11 + i, i + 2, kBeamEA});
    members.push_back({11 + i, i + 6, kBeamEA});
    members.push_back({11 + i, i + 7, kBeamEA});
  }
  members.push_back({1, 7, kBeamEA});  // plan bracing, first bay

  std::vector<Vec3> perm(nodes.size()), var(nodes.size());
  for (int i = 0; i < 4; ++i) var[10 + i] = {0.0, 0.0, -kBeamLoad};
  return TrussModel(std::move(nodes), std::move(members), std::move(perm), std::move(var),
                    ControlPointSpec::node_axis(12, 2, -1.0));
}

inline TrussModel two_bar_oracle() {
  std::vector<NodeSpec> nodes{{1, {-kTwoBarHalfSpan, 0.0, 0.0}, kFixed},
                              {2, {kTwoBarHalfSpan, 0.0, 0.0}, kFixed},
                              {3, {0.0, 0.0, kTwoBarRise}, {true, true, false}}};
  std::vector<MemberSpec> members{{1, 3, kTwoBarEA}, {2, 3, kTwoBarEA}};
  std::vector<Vec3> perm(3), var(3);
  var[2] = {0.0, 0.0, -kTwoBarLoad};
  return TrussModel(std::move(nodes), std::move(members), std::move(perm), std::move(var),
                    ControlPointSpec::node_axis(3, 2, -1.0));
}

}  // namespace bench

inline TrussModel build_benchmark(BenchmarkId id) {
  switch (id) {
    case BenchmarkId::eight_member: return bench::eight_member();
    case BenchmarkId::sixteen_member: return bench::sixteen_member();
    case BenchmarkId::twentyfour_member: return bench::twentyfour_member();
    case BenchmarkId::reticular_beam: return bench::reticular_beam();
    case BenchmarkId::two_bar_oracle: return bench::two_bar_oracle();
  }
  throw InvalidConfigError("unknown benchmark");
}

inline TrussModel build_benchmark(std::string_view id) { return build_benchmark(parse_benchmark(id)); }

/// Search domain used when a run does not supply one. The control variable's
/// range is given in d (downward positive).
inline SearchDomain default_domain(BenchmarkId id, const TrussModel& model) {
  switch (id) {
    case BenchmarkId::eight_member:
      return control_aligned_domain(model, {0.0, 3000.0}, {0.0, 3000.0}, {-0.2, 1.0});
    case BenchmarkId::sixteen_member:
      return control_aligned_domain(model, {-50.0, 250.0}, {-250.0, 250.0}, {-1.0, 1.0});
    case BenchmarkId::twentyfour_member:
      return control_aligned_domain(model, {-20.0, 100.0}, {-100.0, 100.0}, {-10.0, 10.0});
    case BenchmarkId::reticular_beam:
      return control_aligned_domain(model, {0.0, 2500.0}, {-2500.0, 2500.0}, {-300.0, 300.0});
    case BenchmarkId::two_bar_oracle:
      return control_aligned_domain(model, {0.0, 2.0 * bench::kTwoBarRise}, {0.0, 0.0}, {-1.0, 1.0});
  }
  throw InvalidConfigError("unknown benchmark");
}

}  // namespace trussopt
