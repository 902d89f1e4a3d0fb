#pragma once

// Model files: a JSON document with top-level keys nodes, members, loads and
// control (plus an optional name). Units are mm, N, MPa.
//
//   {
//     "nodes":   [{"id": 1, "coords": [0, 0, 1000], "fixed": [false, false, false]}, ...],
//     "members": [{"node_a": 2, "node_b": 1, "axial_stiffness": 451500}, ...],
//     "loads":   {"permanent": [], "variable": [{"node": 1, "force": [0, 0, -4450]}]},
//     "control": {"mode": "node-axis", "node": 1, "axis": "z", "sign": -1}
//   }
//
// "fixed" may be omitted (all free). Load entries for the same node add up.
// Control mode "norm" takes no other fields.

#include <string>
#include <vector>

#include "trussopt/io/json_util.hpp"
#include "trussopt/model.hpp"

namespace trussopt::io {

namespace detail {

inline Vec3 as_vec3(const json& v, const std::string& where) {
  as_array(v, where, 3);
  return {as_number(v[0], where + "[0]"), as_number(v[1], where + "[1]"),
          as_number(v[2], where + "[2]")};
}

inline int axis_from_name(const std::string& s, const std::string& where) {
  if (s == "x") return 0;
  if (s == "y") return 1;
  if (s == "z") return 2;
  throw ParseError(where + ": axis must be \"x\", \"y\" or \"z\"");
}

inline const char* axis_name(int axis) { return axis == 0 ? "x" : axis == 1 ? "y" : "z"; }

inline std::vector<Vec3> loads_from_json(const json& arr, const std::string& where,
                                         const std::vector<NodeSpec>& nodes) {
  std::vector<Vec3> out(nodes.size());
  as_array(arr, where);
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const std::string w = where + "[" + std::to_string(i) + "]";
    reject_unknown(arr[i], w, {"node", "force"});
    const long long id = as_integer(require(arr[i], w, "node"), w + ".node");
    std::size_t pos = nodes.size();
    for (std::size_t k = 0; k < nodes.size(); ++k) {
      if (nodes[k].id == id) pos = k;
    }
    if (pos == nodes.size()) {
      throw InvalidModelError(w + ": load on unknown node " + std::to_string(id));
    }
    out[pos] += as_vec3(require(arr[i], w, "force"), w + ".force");
  }
  return out;
}

inline json loads_to_json(const TrussModel& m, const std::vector<Vec3>& loads) {
  json arr = json::array();
  for (std::size_t k = 0; k < loads.size(); ++k) {
    const Vec3& f = loads[k];
    if (f.x == 0.0 && f.y == 0.0 && f.z == 0.0) continue;
    arr.push_back({{"node", m.nodes()[k].id}, {"force", {f.x, f.y, f.z}}});
  }
  return arr;
}

}  // namespace detail

/// Builds a validated model from a parsed document. `where` prefixes
/// diagnostics.
inline TrussModel model_from_json(const json& doc, const std::string& where = "model") {
  using namespace detail;
  reject_unknown(doc, where, {"name", "nodes", "members", "loads", "control"});

  std::vector<NodeSpec> nodes;
  const json& jn = as_array(require(doc, where, "nodes"), where + ".nodes");
  for (std::size_t i = 0; i < jn.size(); ++i) {
    const std::string w = where + ".nodes[" + std::to_string(i) + "]";
    reject_unknown(jn[i], w, {"id", "coords", "fixed"});
    NodeSpec n;
    n.id = static_cast<int>(as_integer(require(jn[i], w, "id"), w + ".id"));
    n.coords = as_vec3(require(jn[i], w, "coords"), w + ".coords");
    if (auto it = jn[i].find("fixed"); it != jn[i].end()) {
      as_array(*it, w + ".fixed", 3);
      for (int a = 0; a < 3; ++a) n.fixed[a] = as_bool((*it)[a], w + ".fixed");
    }
    nodes.push_back(n);
  }

  std::vector<MemberSpec> members;
  const json& jm = as_array(require(doc, where, "members"), where + ".members");
  for (std::size_t i = 0; i < jm.size(); ++i) {
    const std::string w = where + ".members[" + std::to_string(i) + "]";
    reject_unknown(jm[i], w, {"node_a", "node_b", "axial_stiffness"});
    MemberSpec m;
    m.node_a = static_cast<int>(as_integer(require(jm[i], w, "node_a"), w + ".node_a"));
    m.node_b = static_cast<int>(as_integer(require(jm[i], w, "node_b"), w + ".node_b"));
    m.axial_stiffness = as_number(require(jm[i], w, "axial_stiffness"), w + ".axial_stiffness");
    members.push_back(m);
  }

  const json& jl = require(doc, where, "loads");
  reject_unknown(jl, where + ".loads", {"permanent", "variable"});
  std::vector<Vec3> perm(nodes.size()), var(nodes.size());
  if (auto it = jl.find("permanent"); it != jl.end()) {
    perm = loads_from_json(*it, where + ".loads.permanent", nodes);
  }
  if (auto it = jl.find("variable"); it != jl.end()) {
    var = loads_from_json(*it, where + ".loads.variable", nodes);
  }

  const json& jc = require(doc, where, "control");
  const std::string cw = where + ".control";
  if (!jc.is_object()) throw ParseError(cw + ": expected an object");
  const std::string mode = as_string(require(jc, cw, "mode"), cw + ".mode");
  ControlPointSpec control;
  if (mode == "norm") {
    reject_unknown(jc, cw, {"mode"});
    control = ControlPointSpec::euclidean_norm();
  } else if (mode == "node-axis") {
    reject_unknown(jc, cw, {"mode", "node", "axis", "sign"});
    const int node = static_cast<int>(as_integer(require(jc, cw, "node"), cw + ".node"));
    const int axis = axis_from_name(as_string(require(jc, cw, "axis"), cw + ".axis"), cw + ".axis");
    double sign = -1.0;
    if (auto it = jc.find("sign"); it != jc.end()) sign = as_number(*it, cw + ".sign");
    control = ControlPointSpec::node_axis(node, axis, sign);
  } else {
    throw ParseError(cw + ".mode: expected \"node-axis\" or \"norm\"");
  }

  return TrussModel(std::move(nodes), std::move(members), std::move(perm), std::move(var), control);
}

inline json model_to_json(const TrussModel& m, const std::string& name = {}) {
  json doc = json::object();
  if (!name.empty()) doc["name"] = name;
  json nodes = json::array();
  for (const NodeSpec& n : m.nodes()) {
    nodes.push_back({{"id", n.id},
                     {"coords", {n.coords.x, n.coords.y, n.coords.z}},
                     {"fixed", {n.fixed[0], n.fixed[1], n.fixed[2]}}});
  }
  doc["nodes"] = std::move(nodes);
  json members = json::array();
  for (const MemberSpec& s : m.members()) {
    members.push_back(
        {{"node_a", s.node_a}, {"node_b", s.node_b}, {"axial_stiffness", s.axial_stiffness}});
  }
  doc["members"] = std::move(members);
  doc["loads"] = {{"permanent", detail::loads_to_json(m, m.permanent_load())},
                  {"variable", detail::loads_to_json(m, m.variable_load())}};
  if (const auto* c = std::get_if<NodeAxisControl>(&m.control().mode)) {
    doc["control"] = {
        {"mode", "node-axis"}, {"node", c->node}, {"axis", detail::axis_name(c->axis)}, {"sign", c->sign}};
  } else {
    doc["control"] = {{"mode", "norm"}};
  }
  return doc;
}

inline TrussModel load_model(const std::string& path) {
  const std::string text = detail::read_text(path);
  return model_from_json(detail::parse_text(text, path), path);
}

inline void save_model(const TrussModel& m, const std::string& path, const std::string& name = {}) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path + "'");
  out << model_to_json(m, name).dump(2) << '\n';
  if (!out) throw Error("write failed for '" + path + "'");
}

}  // namespace trussopt::io
