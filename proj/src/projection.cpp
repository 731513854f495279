#include "symdesign/projection.hpp"

#include <cmath>

namespace symdesign {

std::map<int, SkeletonAction> delta_skel(const std::map<int, SkeletonAction>& actions,
                                         const OrbitPartition& partition) {
  std::map<int, SkeletonAction> out;
  for (const auto& [id, unused] : partition.orbit_of) {
    const int rep = partition.representative(id);
    auto it = actions.find(rep);
    if (it == actions.end()) {
      throw SchemaError("no skeleton action for orbit representative " + std::to_string(rep));
    }
    out[id] = it->second;
  }
  return out;
}

std::map<int, AttributeAction> delta_attr_scalar(const std::map<int, AttributeAction>& actions,
                                                 const OrbitPartition& partition) {
  std::map<int, AttributeAction> out;
  for (const auto& [id, unused] : partition.orbit_of) {
    const int rep = partition.representative(id);
    auto rep_it = actions.find(rep);
    auto own_it = actions.find(id);
    if (rep_it == actions.end() || own_it == actions.end()) {
      throw SchemaError("attribute actions must cover every joint in the partition");
    }
    AttributeAction merged;
    merged.scalars = rep_it->second.scalars;
    merged.vector = own_it->second.vector;
    out[id] = std::move(merged);
  }
  return out;
}

CoordinateMatrix project_vectors_subset(const CoordinateMatrix& c,
                                        const std::vector<DihedralElement>& elements,
                                        const DesignGraph& design) {
  if (c.size() != design.size()) {
    throw SchemaError("coordinate matrix has " + std::to_string(c.size()) +
                      " columns for a design with " + std::to_string(design.size()) + " joints");
  }
  if (elements.empty()) {
    throw ConfigError("cannot average over an empty element set");
  }
  CoordinateMatrix out(c.size());
  for (const DihedralElement& g : elements) {
    const std::map<int, int> image = extended_perm(g, design);
    const Mat2 m = matrix_rep(g);
    for (std::size_t col = 0; col < c.size(); ++col) {
      const int id = design.joints()[col].id;
      const int dst = design.column_of(image.at(id));
      out[static_cast<std::size_t>(dst)] = out[static_cast<std::size_t>(dst)] + m.apply(c[col]);
    }
  }
  const double scale = 1.0 / static_cast<double>(elements.size());
  for (Vec2& v : out) v = scale * v;
  return out;
}

CoordinateMatrix project_vectors(const CoordinateMatrix& c, const Subgroup& group,
                                 const DesignGraph& design) {
  return project_vectors_subset(c, group.elements(), design);
}

namespace {

std::vector<DihedralElement> coset_elements(const Subgroup& lower, const Subgroup& upper) {
  std::vector<DihedralElement> out;
  for (const DihedralElement& g : upper.elements()) {
    if (!lower.contains(g)) out.push_back(g);
  }
  return out;
}

}  // namespace

CoordinateMatrix project_vectors_blend(const CoordinateMatrix& c, const Subgroup& lower,
                                       const Subgroup& upper, double beta,
                                       const DesignGraph& design) {
  if (!lower.proper_subset_of(upper)) {
    throw Error(lower.label().to_string() + " is not a proper subgroup of " +
                upper.label().to_string());
  }
  const CoordinateMatrix lower_avg = project_vectors(c, lower, design);
  const CoordinateMatrix coset_avg = project_vectors_subset(c, coset_elements(lower, upper), design);
  CoordinateMatrix out(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) {
    out[i] = beta * lower_avg[i] + (1.0 - beta) * coset_avg[i];
  }
  return out;
}

CoordinateMatrix project_vectors_interpolated(const CoordinateMatrix& c,
                                              const SymmetryPoint& point,
                                              const DesignGraph& design) {
  if (point.is_pure()) {
    throw ConfigError("project_vectors_interpolated needs an interpolated point, got " +
                      point.label());
  }
  return project_vectors_blend(c, point.lower(), point.upper(), point.beta(), design);
}

double decomposition_check(const Subgroup& lower, const Subgroup& upper,
                           const CoordinateMatrix& c, const DesignGraph& design) {
  if (!lower.proper_subset_of(upper)) {
    throw Error(lower.label().to_string() + " is not a proper subgroup of " +
                upper.label().to_string());
  }
  const double beta0 = static_cast<double>(lower.order()) / static_cast<double>(upper.order());
  const CoordinateMatrix whole = project_vectors(c, upper, design);
  const CoordinateMatrix split = project_vectors_blend(c, lower, upper, beta0, design);
  double residual = 0.0;
  for (std::size_t i = 0; i < c.size(); ++i) {
    residual = std::max(residual, std::abs(whole[i].x - split[i].x));
    residual = std::max(residual, std::abs(whole[i].y - split[i].y));
  }
  return residual;
}

DesignGraph symmetrize_skeleton_step(const DesignGraph& design, const SymmetryPoint& point,
                                     const std::map<int, SkeletonAction>& actions) {
  const OrbitPartition partition = orbits(design, point.skeleton_group());
  return apply_skeleton_actions(design, delta_skel(actions, partition));
}

DesignGraph symmetrize_attribute_step(const DesignGraph& design, const SymmetryPoint& point,
                                      const std::map<int, AttributeAction>& actions) {
  const OrbitPartition governing = orbits(design, point.governing());
  std::map<int, AttributeAction> constrained = delta_attr_scalar(actions, governing);

  CoordinateMatrix proposal(design.size());
  for (std::size_t col = 0; col < design.size(); ++col) {
    proposal[col] = constrained.at(design.joints()[col].id).vector;
  }
  const CoordinateMatrix projected =
      point.is_pure() ? project_vectors(proposal, point.governing(), design)
                      : project_vectors_interpolated(proposal, point, design);
  for (std::size_t col = 0; col < design.size(); ++col) {
    constrained.at(design.joints()[col].id).vector = projected[col];
  }

  DesignGraph out = apply_attribute_actions(design, constrained);

  // z rides along per joint; orbit-mates share the representative's value.
  std::vector<Joint> joints = out.joints();
  for (Joint& j : joints) {
    j.z = out.joint(governing.representative(j.id)).z;
  }
  return {out.n(), std::move(joints), out.scalar_names(), out.next_id()};
}

DesignGraph symmetrize_design(const DesignGraph& design, const SymmetryPoint& point,
                              DesignPhase phase, const std::map<int, SkeletonAction>& skeleton,
                              const std::map<int, AttributeAction>& attributes) {
  if (phase == DesignPhase::Skeleton) {
    return symmetrize_skeleton_step(design, point, skeleton);
  }
  return symmetrize_attribute_step(design, point, attributes);
}

DesignGraph symmetrize_existing(const DesignGraph& design, const SymmetryPoint& point) {
  std::map<int, AttributeAction> actions;
  for (const Joint& j : design.joints()) {
    actions[j.id] = AttributeAction{j.scalars, j.vector};
  }
  return symmetrize_attribute_step(design, point, actions);
}

}  // namespace symdesign
