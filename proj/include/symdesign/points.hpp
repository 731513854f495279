#pragma once

#include <optional>
#include <string>
#include <vector>

#include "symdesign/subgroup.hpp"

namespace symdesign {

/// A point of the symmetry search space: either a subgroup itself, or one of
/// the K-1 interior grid points on a covering edge (G, G') of the lattice.
///
/// The grid on an edge runs j = 0..K with j = 0 at the upper subgroup G' and
/// j = K at the lower subgroup G; interior points carry 1 <= j <= K-1. The
/// blend weight is beta = beta0 + (j/K)(1 - beta0) with beta0 = |G|/|G'|, so
/// beta = beta0 reproduces the G' projection and beta = 1 the G projection.
class SymmetryPoint {
 public:
  static SymmetryPoint pure(Subgroup g);
  static SymmetryPoint interpolated(Subgroup lower, Subgroup upper, int j, int grid_k);

  bool is_pure() const { return !upper_.has_value(); }
  bool is_interpolated() const { return upper_.has_value(); }
  int n() const { return lower_.n(); }

  /// Pure points only.
  const Subgroup& pure_subgroup() const;

  /// Interpolated points only.
  const Subgroup& lower() const;
  const Subgroup& upper() const;
  int j() const;
  int grid_k() const;

  /// The subgroup whose symmetry the point guarantees: the subgroup itself
  /// for pure points, the lower subgroup for interpolated points.
  const Subgroup& governing() const { return lower_; }

  /// The subgroup whose orbits constrain skeleton edits at this point: the
  /// subgroup itself for pure points, the upper subgroup for interpolated
  /// points (the blended vector projection needs the stronger structural
  /// symmetry to stay defined).
  const Subgroup& skeleton_group() const;

  double beta0() const;
  double beta() const;

  /// Rounds an interpolated point to the closer endpoint subgroup (ties go
  /// to the upper, more symmetric one).
  const Subgroup& nearest_subgroup() const;

  /// Machine-readable label: "K0", "H2.0", "mid(H4,K0,1,3)".
  std::string label() const;

  /// Human-readable form, the smaller-weight endpoint first:
  /// "1/3 H4 + 2/3 K0".
  std::string display() const;

  friend bool operator==(const SymmetryPoint& a, const SymmetryPoint& b);

 private:
  SymmetryPoint(Subgroup lower, std::optional<Subgroup> upper, int j, int grid_k);

  Subgroup lower_;
  std::optional<Subgroup> upper_;
  int j_ = 0;
  int grid_k_ = 1;
};

/// The neighborhood of a point in the (lattice, K) grid, always including the
/// point itself, sorted by label. For a pure subgroup the neighbors are, per
/// incident covering edge, the adjacent grid point (the other endpoint when
/// K = 1); for an interior point, the grid points one step either way along
/// its edge. Throws ConfigError when the point's own K differs from grid_k or
/// the point does not belong to the lattice.
std::vector<SymmetryPoint> neighbors(const SymmetryPoint& point, const SubgroupLattice& lattice,
                                     int grid_k);

/// Parses "H4" / "K0" / "H2.0" / "mid(H4,K0,1,3)" against a lattice.
/// Interpolated labels must name a covering edge.
SymmetryPoint parse_point(const std::string& text, const SubgroupLattice& lattice);

SubgroupLabel parse_subgroup_label(const std::string& text);

}  // namespace symdesign
