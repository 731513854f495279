#include "symdesign/subgroup.hpp"

#include <algorithm>
#include <bit>

namespace symdesign {

namespace {

constexpr int kMaxN = 32;

void check_order(int n) {
  if (n < 3) {
    throw UnsupportedOrderError("Dih_n requires n >= 3, got n=" + std::to_string(n));
  }
  if (n > kMaxN) {
    throw UnsupportedOrderError("subgroup masks support n <= " + std::to_string(kMaxN) +
                                ", got n=" + std::to_string(n));
  }
}

int element_bit(const DihedralElement& g) { return g.index(); }

DihedralElement element_from_bit(int n, int bit) {
  return bit < n ? DihedralElement::rotation(n, bit) : DihedralElement::reflection(n, bit - n);
}

std::uint64_t closure_mask(int n, std::uint64_t mask) {
  mask |= 1ULL;  // identity
  bool grew = true;
  while (grew) {
    grew = false;
    std::uint64_t next = mask;
    for (int a = 0; a < 2 * n; ++a) {
      if (!(mask >> a & 1ULL)) continue;
      for (int b = 0; b < 2 * n; ++b) {
        if (!(mask >> b & 1ULL)) continue;
        const int c = element_bit(compose(element_from_bit(n, a), element_from_bit(n, b)));
        if (!(next >> c & 1ULL)) {
          next |= 1ULL << c;
          grew = true;
        }
      }
    }
    mask = next;
  }
  return mask;
}

SubgroupLabel classify(int n, std::uint64_t mask) {
  const std::uint64_t rot_mask = mask & ((1ULL << n) - 1);
  const std::uint64_t refl_mask = mask >> n;
  const int rot_count = std::popcount(rot_mask);

  SubgroupLabel label;
  if (refl_mask == 0) {
    label.family = SubgroupFamily::Rotational;
    label.a = n / rot_count;  // <r_d> has n/d rotations; the trivial case gives d = n
    return label;
  }
  const int first_refl = std::countr_zero(refl_mask);
  if (rot_count == 1) {
    label.family = SubgroupFamily::Reflectional;
    label.a = first_refl;
    return label;
  }
  label.family = SubgroupFamily::Mixed;
  label.a = n / rot_count;   // rotation part is <r_k>
  label.b = first_refl;      // reflections are p_{l+mk}, so the smallest index is l
  return label;
}

std::vector<int> divisors(int n) {
  std::vector<int> out;
  for (int d = 1; d <= n; ++d) {
    if (n % d == 0) out.push_back(d);
  }
  return out;
}

bool canonical_less(const Subgroup& x, const Subgroup& y) {
  if (x.order() != y.order()) return x.order() < y.order();
  return x.label().to_string() < y.label().to_string();
}

}  // namespace

std::string SubgroupLabel::to_string() const {
  switch (family) {
    case SubgroupFamily::Rotational: return "H" + std::to_string(a);
    case SubgroupFamily::Reflectional: return "K" + std::to_string(a);
    case SubgroupFamily::Mixed: return "H" + std::to_string(a) + "." + std::to_string(b);
  }
  return {};
}

Subgroup::Subgroup(int n, std::uint64_t mask) : n_(n), mask_(mask) {
  check_order(n);
  if (mask == 0 || (mask >> (2 * n)) != 0) {
    throw Error("subgroup mask out of range for Dih_" + std::to_string(n));
  }
  if (!(mask & 1ULL)) {
    throw Error("subgroup must contain the identity");
  }
  if (closure_mask(n, mask) != mask) {
    throw Error("element set is not closed under composition");
  }
  label_ = classify(n, mask);
}

int Subgroup::order() const { return std::popcount(mask_); }

bool Subgroup::contains(const DihedralElement& g) const {
  return g.n() == n_ && (mask_ >> g.index() & 1ULL);
}

bool Subgroup::subset_of(const Subgroup& other) const {
  return n_ == other.n_ && (mask_ & ~other.mask_) == 0;
}

bool Subgroup::proper_subset_of(const Subgroup& other) const {
  return subset_of(other) && mask_ != other.mask_;
}

std::vector<DihedralElement> Subgroup::elements() const {
  std::vector<DihedralElement> out;
  out.reserve(static_cast<std::size_t>(order()));
  for (int b = 0; b < 2 * n_; ++b) {
    if (mask_ >> b & 1ULL) out.push_back(element_from_bit(n_, b));
  }
  return out;
}

std::vector<DihedralElement> Subgroup::canonical_generators() const {
  switch (label_.family) {
    case SubgroupFamily::Rotational:
      return {DihedralElement::rotation(n_, label_.a % n_)};
    case SubgroupFamily::Reflectional:
      return {DihedralElement::reflection(n_, label_.a)};
    case SubgroupFamily::Mixed:
      return {DihedralElement::rotation(n_, label_.a), DihedralElement::reflection(n_, label_.b)};
  }
  return {};
}

Subgroup trivial_subgroup(int n) {
  check_order(n);
  return {n, 1ULL};
}

Subgroup full_group(int n) {
  check_order(n);
  return {n, (1ULL << (2 * n)) - 1};
}

Subgroup generate_subgroup(int n, const std::vector<DihedralElement>& generators) {
  check_order(n);
  std::uint64_t mask = 1ULL;
  for (const auto& g : generators) {
    if (g.n() != n) {
      throw OrderMismatchError("generator from Dih_" + std::to_string(g.n()) +
                               " passed to generate_subgroup for Dih_" + std::to_string(n));
    }
    mask |= 1ULL << g.index();
  }
  return {n, closure_mask(n, mask)};
}

Subgroup subgroup_from_label(int n, const SubgroupLabel& label) {
  check_order(n);
  switch (label.family) {
    case SubgroupFamily::Rotational:
      if (label.a < 1 || label.a > n || n % label.a != 0) {
        throw ParseError("H" + std::to_string(label.a) + " is not a subgroup label of Dih_" +
                         std::to_string(n) + " (d must divide n)");
      }
      break;
    case SubgroupFamily::Reflectional:
      if (label.a < 0 || label.a >= n) {
        throw ParseError("K" + std::to_string(label.a) + " is not a subgroup label of Dih_" +
                         std::to_string(n));
      }
      break;
    case SubgroupFamily::Mixed:
      if (label.a < 1 || label.a >= n || n % label.a != 0 || label.b < 0 || label.b >= label.a) {
        throw ParseError(label.to_string() + " is not a subgroup label of Dih_" +
                         std::to_string(n));
      }
      break;
  }
  std::vector<DihedralElement> gens;
  if (label.family == SubgroupFamily::Rotational) {
    gens = {DihedralElement::rotation(n, label.a % n)};
  } else if (label.family == SubgroupFamily::Reflectional) {
    gens = {DihedralElement::reflection(n, label.a)};
  } else {
    gens = {DihedralElement::rotation(n, label.a), DihedralElement::reflection(n, label.b)};
  }
  return generate_subgroup(n, gens);
}

int subgroup_count_formula(int n) {
  int total = 0;
  for (int d : divisors(n)) total += 1 + d;
  return total;
}

std::vector<Subgroup> enumerate_subgroups(int n) {
  check_order(n);
  std::vector<Subgroup> out;
  for (int d : divisors(n)) {
    out.push_back(generate_subgroup(n, {DihedralElement::rotation(n, d % n)}));
  }
  for (int i = 0; i < n; ++i) {
    out.push_back(generate_subgroup(n, {DihedralElement::reflection(n, i)}));
  }
  for (int k : divisors(n)) {
    if (k == n) continue;  // <r_n, p_l> collapses to K_l
    for (int l = 0; l < k; ++l) {
      out.push_back(generate_subgroup(
          n, {DihedralElement::rotation(n, k), DihedralElement::reflection(n, l)}));
    }
  }
  std::sort(out.begin(), out.end(), canonical_less);
  return out;
}

int SubgroupLattice::index_of(const Subgroup& g) const {
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (nodes[i] == g) return static_cast<int>(i);
  }
  return -1;
}

bool SubgroupLattice::covers_pair(const Subgroup& lower, const Subgroup& upper) const {
  const int lo = index_of(lower);
  const int hi = index_of(upper);
  if (lo < 0 || hi < 0) return false;
  return std::find(covers.begin(), covers.end(), std::make_pair(lo, hi)) != covers.end();
}

std::vector<int> SubgroupLattice::upper_covers(int idx) const {
  std::vector<int> out;
  for (const auto& [lo, hi] : covers) {
    if (lo == idx) out.push_back(hi);
  }
  return out;
}

std::vector<int> SubgroupLattice::lower_covers(int idx) const {
  std::vector<int> out;
  for (const auto& [lo, hi] : covers) {
    if (hi == idx) out.push_back(lo);
  }
  return out;
}

SubgroupLattice build_lattice(const std::vector<Subgroup>& subgroups) {
  if (subgroups.empty()) {
    throw LatticeError("empty subgroup list");
  }
  const int n = subgroups.front().n();
  for (const auto& g : subgroups) {
    if (g.n() != n) {
      throw LatticeError("subgroup list mixes different group orders");
    }
  }
  SubgroupLattice lattice;
  lattice.n = n;
  lattice.nodes = subgroups;
  std::sort(lattice.nodes.begin(), lattice.nodes.end(), canonical_less);
  for (std::size_t i = 1; i < lattice.nodes.size(); ++i) {
    if (lattice.nodes[i - 1] == lattice.nodes[i]) {
      throw LatticeError("duplicate subgroup in lattice input");
    }
  }
  if (static_cast<int>(lattice.nodes.size()) != subgroup_count_formula(n)) {
    throw LatticeError("incomplete subgroup list for Dih_" + std::to_string(n) + ": got " +
                       std::to_string(lattice.nodes.size()) + ", expected " +
                       std::to_string(subgroup_count_formula(n)));
  }

  const int count = static_cast<int>(lattice.nodes.size());
  for (int lo = 0; lo < count; ++lo) {
    for (int hi = 0; hi < count; ++hi) {
      if (!lattice.nodes[lo].proper_subset_of(lattice.nodes[hi])) continue;
      bool covering = true;
      for (int mid = 0; mid < count && covering; ++mid) {
        if (mid == lo || mid == hi) continue;
        if (lattice.nodes[lo].proper_subset_of(lattice.nodes[mid]) &&
            lattice.nodes[mid].proper_subset_of(lattice.nodes[hi])) {
          covering = false;
        }
      }
      if (covering) lattice.covers.emplace_back(lo, hi);
    }
  }
  std::sort(lattice.covers.begin(), lattice.covers.end());
  return lattice;
}

SubgroupLattice build_lattice(int n) { return build_lattice(enumerate_subgroups(n)); }

}  // namespace symdesign
