#include "symdesign/design.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

namespace symdesign {

namespace {

const std::vector<int> kNoChildren;

std::map<std::string, double> zero_scalars(const std::vector<std::string>& names) {
  std::map<std::string, double> out;
  for (const auto& name : names) out.emplace(name, 0.0);
  return out;
}

}  // namespace

DesignGraph::DesignGraph(int n, std::vector<Joint> joints, std::vector<std::string> scalar_names,
                         int next_id)
    : n_(n), joints_(std::move(joints)), scalar_names_(std::move(scalar_names)) {
  if (n_ < 3) {
    throw UnsupportedOrderError("designs need n >= 3 layer-1 joints, got n=" + std::to_string(n_));
  }
  std::sort(scalar_names_.begin(), scalar_names_.end());
  scalar_names_.erase(std::unique(scalar_names_.begin(), scalar_names_.end()),
                      scalar_names_.end());
  std::sort(joints_.begin(), joints_.end(),
            [](const Joint& a, const Joint& b) { return a.id < b.id; });

  int max_id = 0;
  for (std::size_t i = 0; i < joints_.size(); ++i) {
    const Joint& j = joints_[i];
    if (j.id <= 0) throw SchemaError("joint ids must be positive");
    if (i > 0 && joints_[i - 1].id == j.id) {
      throw SchemaError("duplicate joint id " + std::to_string(j.id));
    }
    max_id = std::max(max_id, j.id);
    if (j.parent == kTorso) {
      if (j.id > n_ || j.layer != 1 || j.sibling_index != j.id - 1) {
        throw SchemaError("layer-1 joints must be ids 1..n in anchor order; joint " +
                          std::to_string(j.id) + " violates this");
      }
    }
    // schema: every joint carries exactly the declared scalar names
    if (j.scalars.size() != scalar_names_.size()) {
      throw SchemaError("joint " + std::to_string(j.id) + " does not match the scalar schema");
    }
    for (const auto& name : scalar_names_) {
      if (!j.scalars.count(name)) {
        throw SchemaError("joint " + std::to_string(j.id) + " is missing scalar '" + name + "'");
      }
    }
  }
  for (int i = 1; i <= n_; ++i) {
    if (!has_joint(i) || joint(i).parent != kTorso) {
      throw SchemaError("design must contain torso-attached joints 1..n; missing " +
                        std::to_string(i));
    }
  }
  for (const Joint& j : joints_) {
    if (j.parent == kTorso) continue;
    if (!has_joint(j.parent)) {
      throw SchemaError("joint " + std::to_string(j.id) + " has unknown parent " +
                        std::to_string(j.parent));
    }
    if (j.layer != joint(j.parent).layer + 1) {
      throw SchemaError("joint " + std::to_string(j.id) + " has inconsistent layer");
    }
    children_[j.parent].push_back(j.id);
  }
  for (auto& [parent, kids] : children_) {
    std::sort(kids.begin(), kids.end(), [this](int a, int b) {
      return joint(a).sibling_index < joint(b).sibling_index;
    });
    for (std::size_t s = 0; s < kids.size(); ++s) {
      if (joint(kids[s]).sibling_index != static_cast<int>(s)) {
        throw SchemaError("children of joint " + std::to_string(parent) +
                          " have non-contiguous sibling indices");
      }
    }
  }
  next_id_ = next_id > max_id ? next_id : max_id + 1;
}

bool DesignGraph::has_joint(int id) const { return column_of(id) >= 0; }

const Joint& DesignGraph::joint(int id) const {
  const int col = column_of(id);
  if (col < 0) throw SchemaError("unknown joint id " + std::to_string(id));
  return joints_[static_cast<std::size_t>(col)];
}

int DesignGraph::column_of(int id) const {
  auto it = std::lower_bound(joints_.begin(), joints_.end(), id,
                             [](const Joint& j, int value) { return j.id < value; });
  if (it == joints_.end() || it->id != id) return -1;
  return static_cast<int>(it - joints_.begin());
}

const std::vector<int>& DesignGraph::children(int id) const {
  auto it = children_.find(id);
  return it == children_.end() ? kNoChildren : it->second;
}

int DesignGraph::child_at(int id, int sibling_index) const {
  const auto& kids = children(id);
  if (sibling_index < 0 || sibling_index >= static_cast<int>(kids.size())) return -1;
  return kids[static_cast<std::size_t>(sibling_index)];
}

bool DesignGraph::same_joints(const DesignGraph& other) const {
  if (joints_.size() != other.joints_.size()) return false;
  for (std::size_t i = 0; i < joints_.size(); ++i) {
    const Joint& a = joints_[i];
    const Joint& b = other.joints_[i];
    if (a.id != b.id || a.parent != b.parent || a.layer != b.layer ||
        a.sibling_index != b.sibling_index || a.scalars != b.scalars || a.vector.x != b.vector.x ||
        a.vector.y != b.vector.y || a.z != b.z) {
      return false;
    }
  }
  return true;
}

DesignGraph initial_design(int n, std::vector<std::string> scalar_names) {
  if (n < 3) {
    throw UnsupportedOrderError("initial_design requires n >= 3, got n=" + std::to_string(n));
  }
  std::sort(scalar_names.begin(), scalar_names.end());
  std::vector<Joint> joints;
  joints.reserve(static_cast<std::size_t>(n));
  for (int i = 1; i <= n; ++i) {
    Joint j;
    j.id = i;
    j.parent = kTorso;
    j.layer = 1;
    j.sibling_index = i - 1;
    j.scalars = zero_scalars(scalar_names);
    joints.push_back(std::move(j));
  }
  return {n, std::move(joints), std::move(scalar_names)};
}

int OrbitPartition::representative(int joint_id) const { return orbit(joint_id).front(); }

const std::vector<int>& OrbitPartition::orbit(int joint_id) const {
  auto it = orbit_of.find(joint_id);
  if (it == orbit_of.end()) {
    throw SchemaError("joint " + std::to_string(joint_id) + " is not in the orbit partition");
  }
  return orbits[static_cast<std::size_t>(it->second)];
}

std::map<int, int> extended_perm(const DihedralElement& g, const DesignGraph& design) {
  const PermutationRep base = perm_rep(g);
  std::map<int, int> image;

  // Parents resolve before children when walking layers in order.
  std::vector<const Joint*> order;
  order.reserve(design.size());
  for (const Joint& j : design.joints()) order.push_back(&j);
  std::stable_sort(order.begin(), order.end(),
                   [](const Joint* a, const Joint* b) { return a->layer < b->layer; });

  for (const Joint* j : order) {
    if (j->parent == kTorso) {
      image[j->id] = base.apply(j->id - 1) + 1;
      continue;
    }
    const int parent_image = image.at(j->parent);
    const int target = design.child_at(parent_image, j->sibling_index);
    if (target < 0) {
      throw OrbitUndefinedError(
          "design is not structurally compatible with " + g.to_string() + ": joint " +
              std::to_string(j->id) + " has no counterpart under joint " +
              std::to_string(parent_image),
          j->id);
    }
    image[j->id] = target;
  }
  return image;
}

bool structurally_compatible(const DesignGraph& design, const Subgroup& group) {
  for (const DihedralElement& g : group.elements()) {
    if (g.is_identity()) continue;
    try {
      extended_perm(g, design);
    } catch (const OrbitUndefinedError&) {
      return false;
    }
  }
  return true;
}

OrbitPartition orbits(const DesignGraph& design, const Subgroup& group) {
  std::map<int, int> root;
  for (const Joint& j : design.joints()) root[j.id] = j.id;

  auto find = [&root](int id) {
    while (root[id] != id) {
      root[id] = root[root[id]];
      id = root[id];
    }
    return id;
  };
  auto unite = [&](int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (a > b) std::swap(a, b);
    root[b] = a;
  };

  for (const DihedralElement& g : group.elements()) {
    if (g.is_identity()) continue;
    for (const auto& [id, img] : extended_perm(g, design)) unite(id, img);
  }

  std::map<int, std::vector<int>> buckets;
  for (const Joint& j : design.joints()) buckets[find(j.id)].push_back(j.id);

  OrbitPartition partition;
  for (auto& [rep, members] : buckets) {
    std::sort(members.begin(), members.end());
    for (int id : members) partition.orbit_of[id] = static_cast<int>(partition.orbits.size());
    partition.orbits.push_back(std::move(members));
  }
  return partition;
}

DesignGraph transform_design(const DesignGraph& design, const DihedralElement& g) {
  const std::map<int, int> image = extended_perm(g, design);
  const Mat2 m = matrix_rep(g);
  std::vector<Joint> joints = design.joints();
  for (const Joint& src : design.joints()) {
    Joint& dst = joints[static_cast<std::size_t>(design.column_of(image.at(src.id)))];
    dst.scalars = src.scalars;
    dst.vector = m.apply(src.vector);
    dst.z = src.z;
  }
  return {design.n(), std::move(joints), design.scalar_names(), design.next_id()};
}

bool is_symmetric(const DesignGraph& design, const Subgroup& group, double tol) {
  for (const DihedralElement& g : group.elements()) {
    if (g.is_identity()) continue;
    std::map<int, int> image;
    try {
      image = extended_perm(g, design);
    } catch (const OrbitUndefinedError&) {
      return false;
    }
    const Mat2 m = matrix_rep(g);
    for (const Joint& src : design.joints()) {
      const Joint& dst = design.joint(image.at(src.id));
      for (const auto& [name, value] : src.scalars) {
        if (std::abs(dst.scalars.at(name) - value) > tol) return false;
      }
      if (std::abs(dst.z - src.z) > tol) return false;
      const Vec2 moved = m.apply(src.vector);
      if (std::abs(dst.vector.x - moved.x) > tol || std::abs(dst.vector.y - moved.y) > tol) {
        return false;
      }
    }
  }
  return true;
}

DesignGraph apply_skeleton_actions(const DesignGraph& design,
                                   const std::map<int, SkeletonAction>& actions) {
  for (const Joint& j : design.joints()) {
    if (!actions.count(j.id)) {
      throw IllegalActionError("missing skeleton action for joint " + std::to_string(j.id));
    }
  }
  for (const auto& [id, action] : actions) {
    if (!design.has_joint(id)) {
      throw IllegalActionError("skeleton action for unknown joint " + std::to_string(id));
    }
    if (action != SkeletonAction::DelJoint) continue;
    const Joint& j = design.joint(id);
    if (j.parent == kTorso) {
      throw IllegalActionError("layer-1 joint " + std::to_string(id) + " cannot be deleted");
    }
    if (!design.children(id).empty()) {
      throw IllegalActionError("joint " + std::to_string(id) +
                               " has children and cannot be deleted");
    }
  }

  std::vector<Joint> joints = design.joints();
  int next_id = design.next_id();
  for (const Joint& j : design.joints()) {  // ascending id: deterministic fresh ids
    if (actions.at(j.id) != SkeletonAction::AddJoint) continue;
    Joint child;
    child.id = next_id++;
    child.parent = j.id;
    child.layer = j.layer + 1;
    child.sibling_index = static_cast<int>(design.children(j.id).size());
    child.scalars = zero_scalars(design.scalar_names());
    joints.push_back(std::move(child));
  }
  std::erase_if(joints, [&actions, &design](const Joint& j) {
    return design.has_joint(j.id) && actions.at(j.id) == SkeletonAction::DelJoint;
  });

  // recompact sibling indices, preserving creation order
  std::map<int, std::vector<Joint*>> by_parent;
  for (Joint& j : joints) {
    if (j.parent != kTorso) by_parent[j.parent].push_back(&j);
  }
  for (auto& [parent, kids] : by_parent) {
    std::sort(kids.begin(), kids.end(),
              [](const Joint* a, const Joint* b) { return a->sibling_index < b->sibling_index; });
    for (std::size_t s = 0; s < kids.size(); ++s) kids[s]->sibling_index = static_cast<int>(s);
  }
  return {design.n(), std::move(joints), design.scalar_names(), next_id};
}

DesignGraph apply_attribute_actions(const DesignGraph& design,
                                    const std::map<int, AttributeAction>& actions) {
  for (const Joint& j : design.joints()) {
    if (!actions.count(j.id)) {
      throw SchemaError("missing attribute action for joint " + std::to_string(j.id));
    }
  }
  std::vector<Joint> joints = design.joints();
  for (Joint& j : joints) {
    const AttributeAction& action = actions.at(j.id);
    for (const auto& [name, value] : action.scalars) {
      auto it = j.scalars.find(name);
      if (it == j.scalars.end()) {
        throw SchemaError("attribute '" + name + "' is not in the design schema");
      }
      it->second = value;
    }
    j.vector = action.vector;
  }
  return {design.n(), std::move(joints), design.scalar_names(), design.next_id()};
}

CoordinateMatrix coordinate_matrix(const DesignGraph& design) {
  CoordinateMatrix c;
  c.reserve(design.size());
  for (const Joint& j : design.joints()) c.push_back(j.vector);
  return c;
}

DesignGraph with_coordinates(const DesignGraph& design, const CoordinateMatrix& c) {
  if (c.size() != design.size()) {
    throw SchemaError("coordinate matrix has " + std::to_string(c.size()) +
                      " columns for a design with " + std::to_string(design.size()) + " joints");
  }
  std::vector<Joint> joints = design.joints();
  for (std::size_t i = 0; i < joints.size(); ++i) joints[i].vector = c[i];
  return {design.n(), std::move(joints), design.scalar_names(), design.next_id()};
}

}  // namespace symdesign
