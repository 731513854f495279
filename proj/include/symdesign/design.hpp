#pragma once

#include <map>
#include <string>
#include <vector>

#include "symdesign/dihedral.hpp"
#include "symdesign/subgroup.hpp"

namespace symdesign {

/// parent value of the n torso-attached joints.
inline constexpr int kTorso = 0;

struct Joint {
  int id = 0;
  int parent = kTorso;  // kTorso for layer-1 joints, otherwise a joint id
  int layer = 1;
  int sibling_index = 0;
  std::map<std::string, double> scalars;
  Vec2 vector;
  double z = 0.0;
};

enum class SkeletonAction { NoChange, AddJoint, DelJoint };

struct AttributeAction {
  std::map<std::string, double> scalars;
  Vec2 vector;
  friend bool operator==(const AttributeAction&, const AttributeAction&) = default;
};

/// Columns of the 2 x |V| vector-attribute matrix in canonical joint order.
using CoordinateMatrix = std::vector<Vec2>;

/// A layered joint tree with per-joint attributes. The n layer-1 joints carry
/// ids 1..n and are permanent; deeper joints hang off a parent with a
/// contiguous sibling_index per parent. Every joint carries the same scalar
/// attribute schema. Value type: all edits return a new graph.
class DesignGraph {
 public:
  /// Validates the full invariant set; throws SchemaError on violations.
  /// next_id 0 means "derive as max(id) + 1".
  DesignGraph(int n, std::vector<Joint> joints, std::vector<std::string> scalar_names,
              int next_id = 0);

  int n() const { return n_; }
  std::size_t size() const { return joints_.size(); }
  const std::vector<Joint>& joints() const { return joints_; }  // ascending id
  const std::vector<std::string>& scalar_names() const { return scalar_names_; }
  int next_id() const { return next_id_; }

  bool has_joint(int id) const;
  const Joint& joint(int id) const;
  /// Column index of a joint in the canonical (ascending id) order.
  int column_of(int id) const;
  /// Child ids ordered by sibling_index.
  const std::vector<int>& children(int id) const;
  /// Id of the sibling_index-th child, or -1.
  int child_at(int id, int sibling_index) const;

  /// Equality of serializable content (the id counter is excluded).
  friend bool operator==(const DesignGraph& a, const DesignGraph& b) {
    return a.n_ == b.n_ && a.scalar_names_ == b.scalar_names_ && a.same_joints(b);
  }

 private:
  bool same_joints(const DesignGraph& other) const;

  int n_ = 0;
  std::vector<Joint> joints_;
  std::vector<std::string> scalar_names_;
  int next_id_ = 1;
  std::map<int, std::vector<int>> children_;
};

/// The flat start state: n layer-1 joints, zero attributes everywhere. It is
/// G-symmetric for every subgroup of Dih_n.
DesignGraph initial_design(int n, std::vector<std::string> scalar_names = {});

struct OrbitPartition {
  std::vector<std::vector<int>> orbits;  // sorted ids; list ordered by smallest member
  std::map<int, int> orbit_of;           // joint id -> index into orbits

  /// Smallest joint id of the joint's orbit.
  int representative(int joint_id) const;
  const std::vector<int>& orbit(int joint_id) const;
};

/// The joint permutation induced by g: layer 1 through the anchor
/// permutation, deeper joints to the equal-sibling_index child of the
/// parent's image. Throws OrbitUndefinedError naming the first joint (layer,
/// then id order) whose image is missing.
std::map<int, int> extended_perm(const DihedralElement& g, const DesignGraph& design);

/// True when extended_perm is defined for every element of the subgroup.
bool structurally_compatible(const DesignGraph& design, const Subgroup& group);

/// Joint orbits under the subgroup action.
OrbitPartition orbits(const DesignGraph& design, const Subgroup& group);

/// The transformed design D_g: the same tree with each joint's attributes
/// moved to its image, vectors rotated/reflected by M_g, scalars and z
/// carried unchanged.
DesignGraph transform_design(const DesignGraph& design, const DihedralElement& g);

/// Def of G-symmetry: D_g = D for every g in G. Structural incompatibility
/// yields false rather than an error.
bool is_symmetric(const DesignGraph& design, const Subgroup& group, double tol = 1e-9);

/// Applies one skeleton edit per joint. AddJoint appends a fresh zero-attribute
/// child; DelJoint removes a childless non-layer-1 joint; survivors keep their
/// ids and sibling indices are recompacted in creation order.
DesignGraph apply_skeleton_actions(const DesignGraph& design,
                                   const std::map<int, SkeletonAction>& actions);

/// Overwrites attributes per joint; provided scalar names must belong to the
/// schema, vectors are always replaced, z is untouched.
DesignGraph apply_attribute_actions(const DesignGraph& design,
                                    const std::map<int, AttributeAction>& actions);

CoordinateMatrix coordinate_matrix(const DesignGraph& design);

/// Replaces the vector attributes with the given columns (canonical order).
DesignGraph with_coordinates(const DesignGraph& design, const CoordinateMatrix& c);

}  // namespace symdesign
