#pragma once

// Space-truss mechanics under large displacements and small strains.
//
// Units are mm / N / MPa throughout. A candidate state is the vector of free
// nodal displacements u plus the load multiplier lambda; every evaluation here
// is a pure function of (model, candidate).

#include <array>
#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <variant>
#include <vector>

#include "trussopt/errors.hpp"
#include "trussopt/vec3.hpp"

namespace trussopt {

/// Deformed members shorter than this (mm) are rejected as degenerate.
inline constexpr double kDegenerateLength = 1e-9;

struct NodeSpec {
  int id{0};
  Vec3 coords;
  std::array<bool, 3> fixed{false, false, false};

  friend bool operator==(const NodeSpec&, const NodeSpec&) = default;
};

struct MemberSpec {
  int node_a{0};
  int node_b{0};
  double axial_stiffness{0.0};  ///< EA, force per unit engineering strain (N)

  friend bool operator==(const MemberSpec&, const MemberSpec&) = default;
};

/// Control point d = sign * u[node, axis].
struct NodeAxisControl {
  int node{0};
  int axis{2};
  double sign{-1.0};

  friend bool operator==(const NodeAxisControl&, const NodeAxisControl&) = default;
};

/// Control point d = ||u||.
struct NormControl {
  friend bool operator==(const NormControl&, const NormControl&) = default;
};

struct ControlPointSpec {
  std::variant<NodeAxisControl, NormControl> mode{NormControl{}};

  static ControlPointSpec node_axis(int node, int axis, double sign) {
    return {NodeAxisControl{node, axis, sign}};
  }
  static ControlPointSpec euclidean_norm() { return {NormControl{}}; }

  friend bool operator==(const ControlPointSpec&, const ControlPointSpec&) = default;
};

/// One point of the search: free displacements (mm) and load multiplier.
struct Candidate {
  std::vector<double> u;
  double lambda{0.0};
  std::optional<double> objective;
};

struct MemberGeometry {
  double initial_length{0.0};
  double current_length{0.0};
  Vec3 direction;  ///< unit vector from node_a to node_b in the deformed state
};

class TrussModel {
 public:
  /// Validates every structural invariant; throws InvalidModelError naming the
  /// first violation. Load vectors are indexed like `nodes`.
  TrussModel(std::vector<NodeSpec> nodes, std::vector<MemberSpec> members,
             std::vector<Vec3> permanent_load, std::vector<Vec3> variable_load,
             ControlPointSpec control)
      : nodes_(std::move(nodes)),
        members_(std::move(members)),
        permanent_(std::move(permanent_load)),
        variable_(std::move(variable_load)),
        control_(control) {
    validate_and_index();
  }

  const std::vector<NodeSpec>& nodes() const { return nodes_; }
  const std::vector<MemberSpec>& members() const { return members_; }
  const std::vector<Vec3>& permanent_load() const { return permanent_; }
  const std::vector<Vec3>& variable_load() const { return variable_; }
  const ControlPointSpec& control() const { return control_; }

  std::size_t free_dof_count() const { return free_dofs_.size(); }
  /// Free displacements plus lambda.
  std::size_t search_dimension() const { return free_dofs_.size() + 1; }

  /// Position of node `id` in nodes(); throws if unknown.
  std::size_t node_index(int id) const {
    const auto it = index_of_id_.find(id);
    if (it == index_of_id_.end()) {
      throw InvalidModelError("unknown node id " + std::to_string(id));
    }
    return it->second;
  }
  bool has_node(int id) const { return index_of_id_.contains(id); }

  /// Index into u of (node position, axis), or -1 on a fixed axis.
  int dof_index(std::size_t node_pos, int axis) const { return dof_map_[node_pos][axis]; }

  /// (node position, axis) of free variable `k`.
  const std::pair<std::size_t, int>& free_dof(std::size_t k) const { return free_dofs_[k]; }

  /// Member endpoints as node positions.
  const std::pair<std::size_t, std::size_t>& member_nodes(std::size_t m) const {
    return member_nodes_[m];
  }
  double initial_length(std::size_t m) const { return initial_lengths_[m]; }

  /// sqrt(sum |f_k|^2) over free axes; the objective's normaliser.
  double variable_load_norm() const { return load_norm_; }

  /// Position of the member with these end node ids, if any.
  std::optional<std::size_t> find_member(const MemberSpec& spec) const {
    for (std::size_t m = 0; m < members_.size(); ++m) {
      if (members_[m] == spec) return m;
    }
    return std::nullopt;
  }

  friend bool operator==(const TrussModel& a, const TrussModel& b) {
    return a.nodes_ == b.nodes_ && a.members_ == b.members_ && a.permanent_ == b.permanent_ &&
           a.variable_ == b.variable_ && a.control_ == b.control_;
  }

 private:
  void validate_and_index();

  std::vector<NodeSpec> nodes_;
  std::vector<MemberSpec> members_;
  std::vector<Vec3> permanent_;
  std::vector<Vec3> variable_;
  ControlPointSpec control_;

  std::unordered_map<int, std::size_t> index_of_id_;
  std::vector<std::array<int, 3>> dof_map_;
  std::vector<std::pair<std::size_t, int>> free_dofs_;
  std::vector<std::pair<std::size_t, std::size_t>> member_nodes_;
  std::vector<double> initial_lengths_;
  double load_norm_{0.0};
};

inline void TrussModel::validate_and_index() {
  if (nodes_.empty()) throw InvalidModelError("model has no nodes");
  if (permanent_.size() != nodes_.size() || variable_.size() != nodes_.size()) {
    throw InvalidModelError("load vectors must have one entry per node");
  }
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    const NodeSpec& n = nodes_[i];
    if (!is_finite(n.coords)) {
      throw InvalidModelError("node " + std::to_string(n.id) + " has non-finite coordinates");
    }
    if (!index_of_id_.emplace(n.id, i).second) {
      throw InvalidModelError("duplicate node id " + std::to_string(n.id));
    }
    if (!is_finite(permanent_[i]) || !is_finite(variable_[i])) {
      throw InvalidModelError("node " + std::to_string(n.id) + " has a non-finite load");
    }
  }

  dof_map_.assign(nodes_.size(), {-1, -1, -1});
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    for (int a = 0; a < 3; ++a) {
      if (!nodes_[i].fixed[a]) {
        dof_map_[i][a] = static_cast<int>(free_dofs_.size());
        free_dofs_.emplace_back(i, a);
      }
    }
  }
  if (free_dofs_.empty()) throw InvalidModelError("model has no free degrees of freedom");

  for (std::size_t m = 0; m < members_.size(); ++m) {
    const MemberSpec& s = members_[m];
    const std::string name = "member " + std::to_string(m) + " (" + std::to_string(s.node_a) +
                             "-" + std::to_string(s.node_b) + ")";
    if (!has_node(s.node_a) || !has_node(s.node_b)) {
      throw InvalidModelError(name + " references a missing node");
    }
    if (s.node_a == s.node_b) throw InvalidModelError(name + " connects a node to itself");
    if (!(s.axial_stiffness > 0.0) || !std::isfinite(s.axial_stiffness)) {
      throw InvalidModelError(name + " must have positive axial stiffness");
    }
    const std::size_t a = index_of_id_.at(s.node_a);
    const std::size_t b = index_of_id_.at(s.node_b);
    const double length = norm(nodes_[b].coords - nodes_[a].coords);
    if (!(length > 0.0)) throw InvalidModelError(name + " has zero initial length");
    member_nodes_.emplace_back(a, b);
    initial_lengths_.push_back(length);
  }
  if (members_.empty()) throw InvalidModelError("model has no members");

  double sq = 0.0;
  for (const auto& [node, axis] : free_dofs_) sq += variable_[node][axis] * variable_[node][axis];
  load_norm_ = std::sqrt(sq);
  if (!(load_norm_ > 0.0)) {
    throw InvalidModelError("variable load is zero on every free axis (objective undefined)");
  }

  if (const auto* c = std::get_if<NodeAxisControl>(&control_.mode)) {
    if (!has_node(c->node)) {
      throw InvalidModelError("control point references missing node " + std::to_string(c->node));
    }
    if (c->axis < 0 || c->axis > 2) throw InvalidModelError("control axis must be 0, 1 or 2");
    if (c->sign != 1.0 && c->sign != -1.0) throw InvalidModelError("control sign must be +1 or -1");
    if (dof_map_[index_of_id_.at(c->node)][c->axis] < 0) {
      throw InvalidModelError("control point must reference a free axis");
    }
  }
}

// ---------------------------------------------------------------------------
// Kinematics and statics
// ---------------------------------------------------------------------------

namespace detail {

inline void check_dimension(const TrussModel& model, std::span<const double> u) {
  if (u.size() != model.free_dof_count()) {
    throw DimensionMismatchError("candidate has " + std::to_string(u.size()) +
                                 " displacements, model has " +
                                 std::to_string(model.free_dof_count()) + " free DoF");
  }
}

inline Vec3 nodal_displacement(const TrussModel& model, std::size_t node_pos,
                               std::span<const double> u) {
  Vec3 d;
  for (int a = 0; a < 3; ++a) {
    const int k = model.dof_index(node_pos, a);
    if (k >= 0) d[a] = u[static_cast<std::size_t>(k)];
  }
  return d;
}

inline MemberGeometry geometry_by_index(const TrussModel& model, std::size_t m,
                                        std::span<const double> u) {
  const auto [a, b] = model.member_nodes(m);
  const Vec3 xa = model.nodes()[a].coords + nodal_displacement(model, a, u);
  const Vec3 xb = model.nodes()[b].coords + nodal_displacement(model, b, u);
  const Vec3 v = xb - xa;
  const double l = norm(v);
  if (!(l >= kDegenerateLength)) {
    throw DegenerateMemberError("member " + std::to_string(m) + " collapsed (l = " +
                                std::to_string(l) + " mm)");
  }
  return {model.initial_length(m), l, v * (1.0 / l)};
}

}  // namespace detail

inline double engineering_strain(double initial_length, double current_length) {
  return current_length / initial_length - 1.0;
}

/// Axial force acting on node_a: tension (delta > 0) pulls it toward node_b.
/// The force on node_b is the negation.
inline Vec3 internal_force(const MemberSpec& member, double delta, const Vec3& direction) {
  return direction * (member.axial_stiffness * delta);
}

inline MemberGeometry member_geometry(const TrussModel& model, const MemberSpec& member,
                                      std::span<const double> u) {
  detail::check_dimension(model, u);
  const auto m = model.find_member(member);
  if (!m) throw InvalidModelError("member is not part of the model");
  return detail::geometry_by_index(model, *m, u);
}

inline MemberGeometry member_geometry(const TrussModel& model, const MemberSpec& member,
                                      const Candidate& c) {
  return member_geometry(model, member, std::span<const double>(c.u));
}

/// Unbalance f0 + lambda f + sum q at every node, including fixed axes
/// (where it is the support reaction with opposite sign).
inline std::vector<Vec3> nodal_unbalance(const TrussModel& model, std::span<const double> u,
                                         double lambda) {
  detail::check_dimension(model, u);
  const auto& nodes = model.nodes();
  std::vector<Vec3> r(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    r[i] = model.permanent_load()[i] + lambda * model.variable_load()[i];
  }
  for (std::size_t m = 0; m < model.members().size(); ++m) {
    const MemberGeometry g = detail::geometry_by_index(model, m, u);
    const Vec3 q = internal_force(model.members()[m],
                                  engineering_strain(g.initial_length, g.current_length),
                                  g.direction);
    const auto [a, b] = model.member_nodes(m);
    r[a] += q;
    r[b] -= q;
  }
  return r;
}

inline Vec3 node_unbalance(const TrussModel& model, const Candidate& c, int node_id) {
  const std::size_t pos = model.node_index(node_id);
  const auto& fixed = model.nodes()[pos].fixed;
  if (fixed[0] && fixed[1] && fixed[2]) {
    throw InvalidModelError("node " + std::to_string(node_id) + " has no free axis");
  }
  return nodal_unbalance(model, c.u, c.lambda)[pos];
}

/// Unbalance restricted to free axes, ordered like u.
inline std::vector<double> free_unbalance(const TrussModel& model, std::span<const double> u,
                                          double lambda) {
  const std::vector<Vec3> r = nodal_unbalance(model, u, lambda);
  std::vector<double> out(model.free_dof_count());
  for (std::size_t k = 0; k < out.size(); ++k) {
    const auto& [node, axis] = model.free_dof(k);
    out[k] = r[node][axis];
  }
  return out;
}

/// Normalised global unbalance ||R_free|| / ||f_free||; zero iff equilibrium.
inline double objective(const TrussModel& model, std::span<const double> u, double lambda) {
  detail::check_dimension(model, u);
  // Hot path of every optimizer: accumulate free-axis residuals only.
  thread_local std::vector<Vec3> r;
  const auto& nodes = model.nodes();
  r.resize(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    r[i] = model.permanent_load()[i] + lambda * model.variable_load()[i];
  }
  for (std::size_t m = 0; m < model.members().size(); ++m) {
    const MemberGeometry g = detail::geometry_by_index(model, m, u);
    const double force = model.members()[m].axial_stiffness *
                         engineering_strain(g.initial_length, g.current_length);
    const auto [a, b] = model.member_nodes(m);
    r[a] += g.direction * force;
    r[b] -= g.direction * force;
  }
  double sq = 0.0;
  for (std::size_t k = 0; k < model.free_dof_count(); ++k) {
    const auto& [node, axis] = model.free_dof(k);
    sq += r[node][axis] * r[node][axis];
  }
  return std::sqrt(sq) / model.variable_load_norm();
}

inline double objective(const TrussModel& model, const Candidate& c) {
  return objective(model, std::span<const double>(c.u), c.lambda);
}

inline double control_point(const TrussModel& model, std::span<const double> u) {
  detail::check_dimension(model, u);
  if (const auto* c = std::get_if<NodeAxisControl>(&model.control().mode)) {
    const int k = model.dof_index(model.node_index(c->node), c->axis);
    return c->sign * u[static_cast<std::size_t>(k)];
  }
  double sq = 0.0;
  for (double v : u) sq += v * v;
  return std::sqrt(sq);
}

inline double control_point(const TrussModel& model, const Candidate& c) {
  return control_point(model, std::span<const double>(c.u));
}

/// Total potential energy sum(k/2 delta^2 L) - sum((f0 + lambda f) . u), N mm.
/// Its negative gradient with respect to u is the free unbalance.
inline double potential_energy(const TrussModel& model, std::span<const double> u, double lambda) {
  detail::check_dimension(model, u);
  double strain_energy = 0.0;
  for (std::size_t m = 0; m < model.members().size(); ++m) {
    const MemberGeometry g = detail::geometry_by_index(model, m, u);
    const double delta = engineering_strain(g.initial_length, g.current_length);
    strain_energy += 0.5 * model.members()[m].axial_stiffness * delta * delta * g.initial_length;
  }
  double work = 0.0;
  for (std::size_t k = 0; k < model.free_dof_count(); ++k) {
    const auto& [node, axis] = model.free_dof(k);
    work += (model.permanent_load()[node][axis] + lambda * model.variable_load()[node][axis]) * u[k];
  }
  return strain_energy - work;
}

inline double potential_energy(const TrussModel& model, const Candidate& c) {
  return potential_energy(model, std::span<const double>(c.u), c.lambda);
}

inline std::vector<Vec3> deformed_coordinates(const TrussModel& model, std::span<const double> u) {
  detail::check_dimension(model, u);
  std::vector<Vec3> out;
  out.reserve(model.nodes().size());
  for (std::size_t i = 0; i < model.nodes().size(); ++i) {
    out.push_back(model.nodes()[i].coords + detail::nodal_displacement(model, i, u));
  }
  return out;
}

inline std::vector<Vec3> deformed_coordinates(const TrussModel& model, const Candidate& c) {
  return deformed_coordinates(model, std::span<const double>(c.u));
}

/// Candidate with u = 0 and the given multiplier.
inline Candidate undeformed(const TrussModel& model, double lambda = 0.0) {
  return Candidate{std::vector<double>(model.free_dof_count(), 0.0), lambda, std::nullopt};
}

/// Flat search vector (u..., lambda) <-> Candidate.
inline std::vector<double> to_search_vector(const Candidate& c) {
  std::vector<double> x(c.u);
  x.push_back(c.lambda);
  return x;
}

inline Candidate from_search_vector(std::span<const double> x) {
  Candidate c;
  c.u.assign(x.begin(), x.end() - 1);
  c.lambda = x.back();
  return c;
}

}  // namespace trussopt
