#pragma once

// Wireframe drawing of a candidate: side view (x-z) on the left, top view
// (x-y) on the right. Undeformed members in black, deformed in blue. Node
// markers of the deformed shape carry their coordinates as data attributes.

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <limits>
#include <string>
#include <tuple>
#include <vector>

#include "trussopt/errors.hpp"
#include "trussopt/model.hpp"

namespace trussopt::io {

namespace detail {

inline std::string fmt(double v, const char* spec = "%.3f") {
  char buf[48];
  std::snprintf(buf, sizeof buf, spec, v);
  std::string s = buf;
  if (s == "-0.000") s = "0.000";
  return s;
}

}  // namespace detail

inline std::string render_svg(const TrussModel& model, const Candidate& candidate) {
  const std::vector<Vec3> base = deformed_coordinates(model, undeformed(model));
  const std::vector<Vec3> moved = deformed_coordinates(model, candidate);

  constexpr double panel = 400.0, pad = 30.0, gap = 20.0;
  double lo[3], hi[3];
  for (int a = 0; a < 3; ++a) {
    lo[a] = std::numeric_limits<double>::infinity();
    hi[a] = -lo[a];
  }
  for (const auto* set : {&base, &moved}) {
    for (const Vec3& p : *set) {
      for (int a = 0; a < 3; ++a) {
        lo[a] = std::min(lo[a], p[a]);
        hi[a] = std::max(hi[a], p[a]);
      }
    }
  }
  double extent = 0.0;
  for (int a = 0; a < 3; ++a) extent = std::max(extent, hi[a] - lo[a]);
  if (!(extent > 0.0)) extent = 1.0;
  const double scale = (panel - 2.0 * pad) / extent;

  // panel 0: (x, z), panel 1: (x, y); vertical axis points up
  auto sx = [&](int p, const Vec3& v) { return p * (panel + gap) + pad + (v.x - lo[0]) * scale; };
  auto sy = [&](int p, const Vec3& v) {
    const int a = p == 0 ? 2 : 1;
    return panel - pad - (v[a] - lo[a]) * scale;
  };

  std::string s;
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + detail::fmt(2 * panel + gap, "%.0f") +
       "\" height=\"" + detail::fmt(panel, "%.0f") + "\" viewBox=\"0 0 " +
       detail::fmt(2 * panel + gap, "%.0f") + " " + detail::fmt(panel, "%.0f") + "\">\n";
  s += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  const char* titles[2] = {"side (x-z)", "top (x-y)"};
  for (int p = 0; p < 2; ++p) {
    s += "<g class=\"panel\" data-view=\"" + std::string(p == 0 ? "xz" : "xy") + "\">\n";
    s += "<text x=\"" + detail::fmt(p * (panel + gap) + pad) + "\" y=\"18\" font-size=\"12\">" +
         titles[p] + "</text>\n";
    for (const auto& [set, cls, color] :
         {std::tuple{&base, "undeformed", "black"}, std::tuple{&moved, "deformed", "blue"}}) {
      s += "<g class=\"" + std::string(cls) + "\" stroke=\"" + color + "\" fill=\"" + color + "\">\n";
      for (std::size_t m = 0; m < model.members().size(); ++m) {
        const auto [a, b] = model.member_nodes(m);
        s += "<line x1=\"" + detail::fmt(sx(p, (*set)[a])) + "\" y1=\"" + detail::fmt(sy(p, (*set)[a])) +
             "\" x2=\"" + detail::fmt(sx(p, (*set)[b])) + "\" y2=\"" + detail::fmt(sy(p, (*set)[b])) +
             "\" stroke-width=\"1.5\"/>\n";
      }
      for (std::size_t k = 0; k < set->size(); ++k) {
        const Vec3& v = (*set)[k];
        s += "<circle cx=\"" + detail::fmt(sx(p, v)) + "\" cy=\"" + detail::fmt(sy(p, v)) +
             "\" r=\"2.5\" data-node=\"" + std::to_string(model.nodes()[k].id) + "\" data-x=\"" +
             detail::fmt(v.x, "%.6g") + "\" data-y=\"" + detail::fmt(v.y, "%.6g") + "\" data-z=\"" +
             detail::fmt(v.z, "%.6g") + "\"/>\n";
      }
      s += "</g>\n";
    }
    s += "</g>\n";
  }
  s += "</svg>\n";
  return s;
}

inline void emit_svg(const TrussModel& model, const Candidate& candidate, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path + "'");
  out << render_svg(model, candidate);
  if (!out) throw Error("write failed for '" + path + "'");
}

}  // namespace trussopt::io
