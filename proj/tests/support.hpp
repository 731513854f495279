// Test-only oracles, independent of the library's composition/representation
// code paths: subgroup enumeration by subset closure over a locally defined
// multiplication, and a from-scratch group-average projection for flat
// designs built directly from angles and modular index arithmetic.
#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <numbers>
#include <random>
#include <set>
#include <utility>
#include <vector>

#include "symdesign/projection.hpp"
#include "symdesign/rng.hpp"
#include "symdesign/search.hpp"

namespace testsupport {

// Elements encoded 0..2n-1: values below n are rotations r_k, the rest are
// reflections p_{k-n}.
inline int bf_compose(int n, int a, int b) {
  const bool rot_a = a < n;
  const bool rot_b = b < n;
  const int ka = rot_a ? a : a - n;
  const int kb = rot_b ? b : b - n;
  if (rot_a && rot_b) return (ka + kb) % n;
  if (rot_a) return n + (ka + kb) % n;
  if (rot_b) return n + ((ka - kb) % n + n) % n;
  return ((ka - kb) % n + n) % n;
}

inline bool bf_closed(int n, std::uint64_t mask) {
  if (!(mask & 1ULL)) return false;
  for (int a = 0; a < 2 * n; ++a) {
    if (!(mask >> a & 1ULL)) continue;
    for (int b = 0; b < 2 * n; ++b) {
      if (!(mask >> b & 1ULL)) continue;
      if (!(mask >> bf_compose(n, a, b) & 1ULL)) return false;
    }
  }
  return true;
}

// Every subgroup of Dih_n as an element bitmask, found by testing all
// identity-containing subsets for closure. Practical for n <= 6.
inline std::set<std::uint64_t> bf_enumerate_subgroup_masks(int n) {
  std::set<std::uint64_t> out;
  const int bits = 2 * n;
  for (std::uint64_t rest = 0; rest < (1ULL << (bits - 1)); ++rest) {
    const std::uint64_t mask = (rest << 1) | 1ULL;
    if (bf_closed(n, mask)) out.insert(mask);
  }
  return out;
}

using Column = std::pair<double, double>;

// Group-average projection over the encoded element set, on one layer of n
// anchor columns. Matrices and permutations come straight from the geometry.
inline std::vector<Column> bf_project(int n, const std::vector<int>& elements,
                                      const std::vector<Column>& columns) {
  std::vector<Column> out(columns.size(), {0.0, 0.0});
  for (const int code : elements) {
    const bool reflection = code >= n;
    const int k = reflection ? code - n : code;
    const double t = 2.0 * std::numbers::pi * k / n;
    const double m00 = std::cos(t);
    const double m01 = reflection ? std::sin(t) : -std::sin(t);
    const double m10 = std::sin(t);
    const double m11 = reflection ? -std::cos(t) : std::cos(t);
    for (int i = 0; i < n; ++i) {
      const int dst = reflection ? ((k - i) % n + n) % n : (i + k) % n;
      out[dst].first += m00 * columns[i].first + m01 * columns[i].second;
      out[dst].second += m10 * columns[i].first + m11 * columns[i].second;
    }
  }
  for (Column& c : out) {
    c.first /= static_cast<double>(elements.size());
    c.second /= static_cast<double>(elements.size());
  }
  return out;
}

inline std::vector<int> encode_elements(const symdesign::Subgroup& group) {
  std::vector<int> out;
  for (const auto& g : group.elements()) {
    out.push_back(g.is_rotation() ? g.k() : group.n() + g.k());
  }
  return out;
}

// Random design structurally compatible with the subgroup, grown by
// orbit-constrained child additions.
inline symdesign::DesignGraph grow_compatible(int n, const symdesign::Subgroup& group,
                                              int growth_steps, symdesign::Rng& rng) {
  using namespace symdesign;
  DesignGraph design = initial_design(n);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int step = 0; step < growth_steps; ++step) {
    const OrbitPartition partition = orbits(design, group);
    std::map<int, SkeletonAction> actions;
    for (const auto& members : partition.orbits) {
      const SkeletonAction action =
          unit(rng) < 0.5 ? SkeletonAction::AddJoint : SkeletonAction::NoChange;
      for (int id : members) actions[id] = action;
    }
    design = apply_skeleton_actions(design, actions);
  }
  return design;
}

inline symdesign::CoordinateMatrix random_columns(std::size_t count, symdesign::Rng& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  symdesign::CoordinateMatrix c(count);
  for (auto& v : c) v = {gauss(rng), gauss(rng)};
  return c;
}

inline double max_abs_diff(const symdesign::CoordinateMatrix& a,
                           const symdesign::CoordinateMatrix& b) {
  double out = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    out = std::max({out, std::abs(a[i].x - b[i].x), std::abs(a[i].y - b[i].y)});
  }
  return out;
}

// M_g c P_{g^-1}, written against extended_perm directly.
inline symdesign::CoordinateMatrix act(const symdesign::CoordinateMatrix& c,
                                       const symdesign::DihedralElement& g,
                                       const symdesign::DesignGraph& design) {
  const auto image = symdesign::extended_perm(g, design);
  const symdesign::Mat2 m = symdesign::matrix_rep(g);
  symdesign::CoordinateMatrix out(c.size());
  for (std::size_t col = 0; col < c.size(); ++col) {
    const int id = design.joints()[col].id;
    out[static_cast<std::size_t>(design.column_of(image.at(id)))] = m.apply(c[col]);
  }
  return out;
}

}  // namespace testsupport
