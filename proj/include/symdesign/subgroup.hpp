#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "symdesign/dihedral.hpp"

namespace symdesign {

/// Canonical subgroup taxonomy of Dih_n:
///   H_d     = <r_d>        rotations only, d | n, 1 <= d <= n, order n/d
///             (H_n is the trivial subgroup {e})
///   K_i     = <p_i>        {e, p_i}, 0 <= i < n, order 2
///   H_{k,l} = <r_k, p_l>   k | n, 1 <= k <= n-1, 0 <= l < k, order 2n/k
///             (H_{1,0} is the full group)
enum class SubgroupFamily { Rotational, Reflectional, Mixed };

struct SubgroupLabel {
  SubgroupFamily family = SubgroupFamily::Rotational;
  int a = 0;  // d for H_d, i for K_i, k for H_{k,l}
  int b = 0;  // l for H_{k,l}

  /// "H4", "K0", "H2.0" (the comma of H_{k,l} is written as a dot).
  std::string to_string() const;

  friend bool operator==(const SubgroupLabel&, const SubgroupLabel&) = default;
};

/// A subgroup of Dih_n. The element set is stored as a bitmask: bit k is
/// rotation r_k, bit n+k is reflection p_k. Immutable after construction.
class Subgroup {
 public:
  /// Validates that mask describes a subgroup (contains the identity, closed
  /// under composition) and attaches the canonical classification.
  Subgroup(int n, std::uint64_t mask);

  int n() const { return n_; }
  std::uint64_t mask() const { return mask_; }
  int order() const;
  const SubgroupLabel& label() const { return label_; }

  bool contains(const DihedralElement& g) const;
  bool subset_of(const Subgroup& other) const;
  bool proper_subset_of(const Subgroup& other) const;
  bool is_trivial() const { return order() == 1; }
  bool is_full() const { return order() == 2 * n_; }

  /// Elements in canonical order: rotations by ascending k, then reflections.
  std::vector<DihedralElement> elements() const;

  /// Generators implied by the label: {r_d}, {p_i}, or {r_k, p_l}.
  std::vector<DihedralElement> canonical_generators() const;

  friend bool operator==(const Subgroup& a, const Subgroup& b) {
    return a.n_ == b.n_ && a.mask_ == b.mask_;
  }

 private:
  int n_;
  std::uint64_t mask_;
  SubgroupLabel label_;
};

Subgroup trivial_subgroup(int n);
Subgroup full_group(int n);

/// Smallest subgroup containing all generators (the trivial subgroup for an
/// empty generator list). All generators must share n.
Subgroup generate_subgroup(int n, const std::vector<DihedralElement>& generators);
Subgroup subgroup_from_label(int n, const SubgroupLabel& label);

/// All subgroups of Dih_n, each exactly once, in canonical order: |G|
/// ascending, then label lexicographic. The count is always
/// sum over divisors d of n of (1 + d).
std::vector<Subgroup> enumerate_subgroups(int n);

int subgroup_count_formula(int n);

/// Covering relation of the subgroup order: covers holds (lower, upper) index
/// pairs with lower < upper and no strictly intermediate subgroup.
struct SubgroupLattice {
  int n = 0;
  std::vector<Subgroup> nodes;                 // canonical order
  std::vector<std::pair<int, int>> covers;     // (lower, upper), sorted

  int index_of(const Subgroup& g) const;       // -1 when absent
  bool covers_pair(const Subgroup& lower, const Subgroup& upper) const;
  std::vector<int> upper_covers(int idx) const;
  std::vector<int> lower_covers(int idx) const;
};

/// Requires the complete subgroup list of one Dih_n; throws LatticeError on
/// duplicates, mixed n, or a count that cannot be complete.
SubgroupLattice build_lattice(const std::vector<Subgroup>& subgroups);
SubgroupLattice build_lattice(int n);

}  // namespace symdesign
