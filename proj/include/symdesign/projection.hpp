#pragma once

#include <map>

#include "symdesign/design.hpp"
#include "symdesign/points.hpp"

namespace symdesign {

/// Orbit-constrains skeleton actions: every joint takes the action chosen by
/// the smallest-id member of its orbit. Idempotent and constant on orbits.
std::map<int, SkeletonAction> delta_skel(const std::map<int, SkeletonAction>& actions,
                                         const OrbitPartition& partition);

/// Orbit-constrains the scalar part of attribute actions the same way; each
/// joint keeps its own vector proposal (vectors are projected instead).
std::map<int, AttributeAction> delta_attr_scalar(const std::map<int, AttributeAction>& actions,
                                                 const OrbitPartition& partition);

/// Group-average projection of a coordinate matrix onto the G-symmetric
/// space: averages M_g c P_{g^-1} over g in G, with P the extended joint
/// permutation of the design. Idempotent; fixes G-symmetric inputs.
CoordinateMatrix project_vectors(const CoordinateMatrix& c, const Subgroup& group,
                                 const DesignGraph& design);

/// Average over an explicit element set (used for coset averages).
CoordinateMatrix project_vectors_subset(const CoordinateMatrix& c,
                                        const std::vector<DihedralElement>& elements,
                                        const DesignGraph& design);

/// beta-blend of the lower-subgroup average and the coset average over
/// upper minus lower. beta = beta0 reproduces the upper projection, beta = 1
/// the lower one; every blend output is lower-symmetric.
CoordinateMatrix project_vectors_blend(const CoordinateMatrix& c, const Subgroup& lower,
                                       const Subgroup& upper, double beta,
                                       const DesignGraph& design);

/// The blend at an interpolated point's beta. The design must be structurally
/// compatible with the upper subgroup.
CoordinateMatrix project_vectors_interpolated(const CoordinateMatrix& c,
                                              const SymmetryPoint& point,
                                              const DesignGraph& design);

/// Max-abs residual of the split identity
///   Pi_upper(c) = beta0 Pi_lower(c) + (1 - beta0) Pi_{upper - lower}(c),
/// which is zero up to rounding for every subgroup pair lower < upper.
double decomposition_check(const Subgroup& lower, const Subgroup& upper,
                           const CoordinateMatrix& c, const DesignGraph& design);

/// One orbit-constrained skeleton step: delta_skel with the point's skeleton
/// group, then apply.
DesignGraph symmetrize_skeleton_step(const DesignGraph& design, const SymmetryPoint& point,
                                     const std::map<int, SkeletonAction>& actions);

/// One symmetrized attribute step: scalars (and z) orbit-constrained by the
/// governing subgroup, vector proposals projected through the point's map,
/// then applied.
DesignGraph symmetrize_attribute_step(const DesignGraph& design, const SymmetryPoint& point,
                                      const std::map<int, AttributeAction>& actions);

enum class DesignPhase { Skeleton, Attribute };

/// Phase dispatcher over the two steps above.
DesignGraph symmetrize_design(const DesignGraph& design, const SymmetryPoint& point,
                              DesignPhase phase, const std::map<int, SkeletonAction>& skeleton,
                              const std::map<int, AttributeAction>& attributes);

/// Re-symmetrizes a design's own attributes in place: scalars and z to each
/// orbit representative's values, vectors through the point's projection.
/// The skeleton is untouched and must be compatible with the point.
DesignGraph symmetrize_existing(const DesignGraph& design, const SymmetryPoint& point);

}  // namespace symdesign
