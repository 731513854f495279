#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "support.hpp"
#include "symdesign/points.hpp"

using namespace symdesign;

namespace {

std::vector<DihedralElement> all_elements(int n) {
  std::vector<DihedralElement> out;
  for (int k = 0; k < n; ++k) out.push_back(DihedralElement::rotation(n, k));
  for (int k = 0; k < n; ++k) out.push_back(DihedralElement::reflection(n, k));
  return out;
}

bool mat_equals(const Mat2& m, double a, double b, double c, double d, double tol = 0.0) {
  return std::abs(m.a - a) <= tol && std::abs(m.b - b) <= tol && std::abs(m.c - c) <= tol &&
         std::abs(m.d - d) <= tol;
}

Subgroup from_label(int n, const std::string& text) {
  return subgroup_from_label(n, parse_subgroup_label(text));
}

}  // namespace

TEST_CASE("composition follows the dihedral group law") {
  const auto r = [](int k) { return DihedralElement::rotation(4, k); };
  const auto p = [](int k) { return DihedralElement::reflection(4, k); };

  CHECK(compose(r(1), r(3)).is_identity());       // full rotation
  CHECK(compose(p(0), p(0)).is_identity());       // reflections are involutions
  CHECK(compose(p(1), p(3)) == r(2));             // p_a p_b = r_{a-b}
  CHECK(compose(r(1), p(0)) == p(1));
  CHECK(compose(p(0), r(1)) == p(3));

  CHECK_THROWS_AS(compose(DihedralElement::rotation(4, 1), DihedralElement::rotation(5, 1)),
                  OrderMismatchError);
  CHECK_THROWS_AS(DihedralElement::rotation(2, 0), UnsupportedOrderError);
}

TEST_CASE("inverses") {
  CHECK(inverse(DihedralElement::reflection(4, 0)) == DihedralElement::reflection(4, 0));
  CHECK(inverse(DihedralElement::rotation(4, 1)) == DihedralElement::rotation(4, 3));
  CHECK(inverse(DihedralElement::rotation(5, 0)) == DihedralElement::rotation(5, 0));
}

TEST_CASE("group axioms hold exhaustively for n <= 8 and sampled to n = 12") {
  Rng rng = make_stream(7, {1});
  for (int n = 3; n <= 12; ++n) {
    const auto elems = all_elements(n);
    const DihedralElement e = DihedralElement::identity(n);
    for (const auto& g : elems) {
      CHECK(compose(e, g) == g);
      CHECK(compose(g, e) == g);
      CHECK(compose(g, inverse(g)).is_identity());
      CHECK(compose(inverse(g), g).is_identity());
    }
    if (n <= 8) {
      for (const auto& a : elems)
        for (const auto& b : elems)
          for (const auto& c : elems) {
            REQUIRE(compose(compose(a, b), c) == compose(a, compose(b, c)));
          }
    } else {
      std::uniform_int_distribution<std::size_t> pick(0, elems.size() - 1);
      for (int t = 0; t < 500; ++t) {
        const auto& a = elems[pick(rng)];
        const auto& b = elems[pick(rng)];
        const auto& c = elems[pick(rng)];
        REQUIRE(compose(compose(a, b), c) == compose(a, compose(b, c)));
      }
    }
  }
}

TEST_CASE("matrix representation reproduces the eight Dih_4 matrices exactly") {
  CHECK(mat_equals(matrix_rep(DihedralElement::rotation(4, 0)), 1, 0, 0, 1));
  CHECK(mat_equals(matrix_rep(DihedralElement::rotation(4, 1)), 0, -1, 1, 0));
  CHECK(mat_equals(matrix_rep(DihedralElement::rotation(4, 2)), -1, 0, 0, -1));
  CHECK(mat_equals(matrix_rep(DihedralElement::rotation(4, 3)), 0, 1, -1, 0));
  CHECK(mat_equals(matrix_rep(DihedralElement::reflection(4, 0)), 1, 0, 0, -1));
  CHECK(mat_equals(matrix_rep(DihedralElement::reflection(4, 1)), 0, 1, 1, 0));
  CHECK(mat_equals(matrix_rep(DihedralElement::reflection(4, 2)), -1, 0, 0, 1));
  CHECK(mat_equals(matrix_rep(DihedralElement::reflection(4, 3)), 0, -1, -1, 0));

  for (int n = 3; n <= 12; ++n) {
    CHECK(mat_equals(matrix_rep(DihedralElement::identity(n)), 1, 0, 0, 1));
  }
}

TEST_CASE("matrices are orthogonal with the right determinant") {
  for (int n = 3; n <= 12; ++n) {
    for (const auto& g : all_elements(n)) {
      const Mat2 m = matrix_rep(g);
      const Mat2 gram{m.a * m.a + m.c * m.c, m.a * m.b + m.c * m.d, m.a * m.b + m.c * m.d,
                      m.b * m.b + m.d * m.d};
      CHECK(mat_equals(gram, 1, 0, 0, 1, 1e-12));
      CHECK(std::abs(m.det() - (g.is_rotation() ? 1.0 : -1.0)) <= 1e-12);
    }
  }
}

TEST_CASE("permutation representation matches the quoted Dih_4 values") {
  CHECK(perm_rep(DihedralElement::reflection(4, 0)).image == std::vector<int>{0, 3, 2, 1});
  CHECK(perm_rep(DihedralElement::rotation(4, 2)).image == std::vector<int>{2, 3, 0, 1});
  CHECK(perm_rep(DihedralElement::rotation(4, 1)).image == std::vector<int>{1, 2, 3, 0});
  for (int n = 3; n <= 12; ++n) {
    CHECK(perm_rep(DihedralElement::identity(n)).is_identity());
  }
  // r_3 is the inverse cycle of r_1, not its copy
  const PermutationRep r1 = perm_rep(DihedralElement::rotation(4, 1));
  const PermutationRep r3 = perm_rep(DihedralElement::rotation(4, 3));
  for (int i = 0; i < 4; ++i) CHECK(r3.apply(r1.apply(i)) == i);
}

TEST_CASE("representations are homomorphisms under composition") {
  for (int n = 3; n <= 8; ++n) {
    for (const auto& a : all_elements(n)) {
      for (const auto& b : all_elements(n)) {
        const Mat2 lhs = matrix_rep(compose(a, b));
        const Mat2 rhs = matrix_rep(a) * matrix_rep(b);
        CHECK(mat_equals(lhs, rhs.a, rhs.b, rhs.c, rhs.d, 1e-12));
        const PermutationRep pa = perm_rep(a);
        const PermutationRep pb = perm_rep(b);
        const PermutationRep pc = perm_rep(compose(a, b));
        for (int i = 0; i < n; ++i) {
          REQUIRE(pc.apply(i) == pa.apply(pb.apply(i)));
        }
      }
    }
  }
}

TEST_CASE("matrix action lands on the permuted anchor, n <= 12") {
  for (int n = 3; n <= 12; ++n) {
    for (const auto& g : all_elements(n)) {
      const Mat2 m = matrix_rep(g);
      const PermutationRep p = perm_rep(g);
      for (int i = 0; i < n; ++i) {
        const double a = 2.0 * std::numbers::pi * i / n;
        const Vec2 moved = m.apply({std::cos(a), std::sin(a)});
        const double b = 2.0 * std::numbers::pi * p.apply(i) / n;
        CHECK(std::abs(moved.x - std::cos(b)) <= 1e-9);
        CHECK(std::abs(moved.y - std::sin(b)) <= 1e-9);
      }
    }
  }
}

TEST_CASE("generate_subgroup") {
  const Subgroup k0 = generate_subgroup(4, {DihedralElement::reflection(4, 0)});
  CHECK(k0.label().to_string() == "K0");
  CHECK(k0.order() == 2);
  CHECK(k0.contains(DihedralElement::identity(4)));
  CHECK(k0.contains(DihedralElement::reflection(4, 0)));

  const Subgroup trivial = generate_subgroup(4, {});
  CHECK(trivial.label().to_string() == "H4");
  CHECK(trivial.order() == 1);

  const Subgroup h20 = generate_subgroup(
      4, {DihedralElement::rotation(4, 2), DihedralElement::reflection(4, 0)});
  CHECK(h20.label().to_string() == "H2.0");
  CHECK(h20.order() == 4);
  CHECK(h20 == from_label(4, "H2.0"));

  CHECK_THROWS_AS(generate_subgroup(4, {DihedralElement::rotation(5, 1)}), OrderMismatchError);
}

TEST_CASE("Dih_4 has exactly the ten listed subgroups") {
  const auto subgroups = enumerate_subgroups(4);
  REQUIRE(subgroups.size() == 10);

  std::vector<std::string> labels;
  for (const auto& g : subgroups) labels.push_back(g.label().to_string());
  CHECK(labels == std::vector<std::string>{"H4", "H2", "K0", "K1", "K2", "K3", "H1", "H2.0",
                                           "H2.1", "H1.0"});

  auto elements_of = [&](const std::string& label) {
    std::vector<std::string> out;
    for (const auto& e : from_label(4, label).elements()) out.push_back(e.to_string());
    return out;
  };
  CHECK(elements_of("H1") == std::vector<std::string>{"r0", "r1", "r2", "r3"});
  CHECK(elements_of("H2") == std::vector<std::string>{"r0", "r2"});
  CHECK(elements_of("H4") == std::vector<std::string>{"r0"});
  CHECK(elements_of("K0") == std::vector<std::string>{"r0", "p0"});
  CHECK(elements_of("K1") == std::vector<std::string>{"r0", "p1"});
  CHECK(elements_of("K2") == std::vector<std::string>{"r0", "p2"});
  CHECK(elements_of("K3") == std::vector<std::string>{"r0", "p3"});
  CHECK(elements_of("H1.0") ==
        std::vector<std::string>{"r0", "r1", "r2", "r3", "p0", "p1", "p2", "p3"});
  CHECK(elements_of("H2.0") == std::vector<std::string>{"r0", "r2", "p0", "p2"});
  CHECK(elements_of("H2.1") == std::vector<std::string>{"r0", "r2", "p1", "p3"});
}

TEST_CASE("subgroup counts match the divisor-sum formula") {
  CHECK(enumerate_subgroups(3).size() == 6);
  CHECK(enumerate_subgroups(6).size() == 16);
  for (int n = 3; n <= 12; ++n) {
    CHECK(static_cast<int>(enumerate_subgroups(n).size()) == subgroup_count_formula(n));
  }
  CHECK_THROWS_AS(enumerate_subgroups(2), UnsupportedOrderError);
}

TEST_CASE("enumeration agrees with the subset-closure oracle for n <= 6") {
  for (int n = 3; n <= 6; ++n) {
    const std::set<std::uint64_t> expected = testsupport::bf_enumerate_subgroup_masks(n);
    std::set<std::uint64_t> actual;
    for (const auto& g : enumerate_subgroups(n)) actual.insert(g.mask());
    REQUIRE(actual == expected);
  }
}

TEST_CASE("labels regenerate their subgroups, n <= 12") {
  for (int n = 3; n <= 12; ++n) {
    for (const auto& g : enumerate_subgroups(n)) {
      CHECK(generate_subgroup(n, g.canonical_generators()) == g);
    }
  }
}

TEST_CASE("lattice covers are the transitive reduction") {
  const SubgroupLattice lattice = build_lattice(4);
  CHECK(lattice.covers_pair(from_label(4, "H4"), from_label(4, "K0")));
  CHECK(lattice.covers_pair(from_label(4, "K0"), from_label(4, "H2.0")));
  CHECK_FALSE(lattice.covers_pair(from_label(4, "H4"), from_label(4, "H2.0")));

  for (int n = 3; n <= 6; ++n) {
    const SubgroupLattice l = build_lattice(n);
    const int count = static_cast<int>(l.nodes.size());
    for (int lo = 0; lo < count; ++lo) {
      for (int hi = 0; hi < count; ++hi) {
        const bool proper = l.nodes[lo].proper_subset_of(l.nodes[hi]);
        bool has_mid = false;
        for (int mid = 0; mid < count; ++mid) {
          if (mid == lo || mid == hi) continue;
          if (l.nodes[lo].proper_subset_of(l.nodes[mid]) &&
              l.nodes[mid].proper_subset_of(l.nodes[hi])) {
            has_mid = true;
          }
        }
        const bool actual = std::find(l.covers.begin(), l.covers.end(),
                                      std::make_pair(lo, hi)) != l.covers.end();
        REQUIRE(actual == (proper && !has_mid));
      }
    }
  }
}

TEST_CASE("the trivial subgroup is covered exactly by prime-order subgroups") {
  for (int n = 3; n <= 8; ++n) {
    const SubgroupLattice lattice = build_lattice(n);
    const int bottom = lattice.index_of(trivial_subgroup(n));
    REQUIRE(bottom >= 0);
    for (std::size_t i = 0; i < lattice.nodes.size(); ++i) {
      const int order = lattice.nodes[i].order();
      bool prime = order > 1;
      for (int d = 2; d * d <= order; ++d) {
        if (order % d == 0) prime = false;
      }
      const bool covered = std::find(lattice.covers.begin(), lattice.covers.end(),
                                     std::make_pair(bottom, static_cast<int>(i))) !=
                           lattice.covers.end();
      CHECK(covered == prime);
    }
  }
}

TEST_CASE("build_lattice rejects incomplete input") {
  auto subgroups = enumerate_subgroups(4);
  subgroups.pop_back();
  CHECK_THROWS_AS(build_lattice(subgroups), LatticeError);
}

TEST_CASE("the top of the lattice is the full group and the bottom is trivial") {
  for (int n = 3; n <= 8; ++n) {
    const auto subgroups = enumerate_subgroups(n);
    CHECK(subgroups.front() == trivial_subgroup(n));
    CHECK(subgroups.back() == full_group(n));
    CHECK(subgroups.front().label().to_string() == "H" + std::to_string(n));
    CHECK(subgroups.back().label().to_string() == "H1.0");
  }
}

TEST_CASE("interpolated point beta and display") {
  const Subgroup h4 = from_label(4, "H4");
  const Subgroup k0 = from_label(4, "K0");
  const SymmetryPoint mid = SymmetryPoint::interpolated(h4, k0, 1, 3);
  CHECK(mid.beta0() == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(mid.beta() == doctest::Approx(0.5 + (1.0 / 3.0) * 0.5).epsilon(1e-15));
  CHECK(mid.display() == "1/3 H4 + 2/3 K0");
  CHECK(mid.label() == "mid(H4,K0,1,3)");
  CHECK(mid.governing() == h4);
  CHECK(mid.skeleton_group() == k0);
  CHECK(mid.nearest_subgroup() == k0);
  CHECK(SymmetryPoint::interpolated(h4, k0, 2, 3).nearest_subgroup() == h4);

  CHECK_THROWS_AS(SymmetryPoint::interpolated(h4, k0, 0, 3), ConfigError);
  CHECK_THROWS_AS(SymmetryPoint::interpolated(h4, k0, 3, 3), ConfigError);
  CHECK_THROWS_AS(SymmetryPoint::interpolated(k0, h4, 1, 3), ConfigError);
}

TEST_CASE("neighbors of K0 match the worked example") {
  const SubgroupLattice lattice = build_lattice(4);
  const SymmetryPoint k0 = SymmetryPoint::pure(from_label(4, "K0"));

  SUBCASE("K = 3 yields the two interior points plus the point itself") {
    const auto hood = neighbors(k0, lattice, 3);
    REQUIRE(hood.size() == 3);
    std::set<std::string> displays;
    for (const auto& p : hood) displays.insert(p.display());
    CHECK(displays == std::set<std::string>{"1/3 H4 + 2/3 K0", "1/3 H2.0 + 2/3 K0", "K0"});

    std::set<std::string> labels;
    for (const auto& p : hood) labels.insert(p.label());
    CHECK(labels == std::set<std::string>{"mid(H4,K0,1,3)", "mid(K0,H2.0,2,3)", "K0"});
  }

  SUBCASE("K = 1 yields the adjacent subgroups themselves") {
    const auto hood = neighbors(k0, lattice, 1);
    REQUIRE(hood.size() == 3);
    std::set<std::string> labels;
    for (const auto& p : hood) labels.insert(p.label());
    CHECK(labels == std::set<std::string>{"H4", "K0", "H2.0"});
  }
}

TEST_CASE("neighbors of an interior point walk its edge") {
  const SubgroupLattice lattice = build_lattice(4);
  const SymmetryPoint mid =
      SymmetryPoint::interpolated(from_label(4, "H4"), from_label(4, "K0"), 1, 3);
  const auto hood = neighbors(mid, lattice, 3);
  REQUIRE(hood.size() == 3);
  std::set<std::string> labels;
  for (const auto& p : hood) labels.insert(p.label());
  CHECK(labels == std::set<std::string>{"K0", "mid(H4,K0,1,3)", "mid(H4,K0,2,3)"});

  CHECK_THROWS_AS(neighbors(mid, lattice, 5), ConfigError);  // K mismatch
}

TEST_CASE("point labels round-trip through the grammar") {
  const SubgroupLattice lattice = build_lattice(4);
  for (const std::string text : {"H4", "K0", "H2.0", "H1.0", "mid(H4,K0,1,3)",
                                 "mid(K0,H2.0,2,3)", "mid(H2.0,H1.0,1,5)"}) {
    const SymmetryPoint point = parse_point(text, lattice);
    CHECK(point.label() == text);
    CHECK(parse_point(point.label(), lattice) == point);
  }
  CHECK_THROWS_AS(parse_point("Q7", lattice), ParseError);
  CHECK_THROWS_AS(parse_point("H3", lattice), ParseError);          // 3 does not divide 4
  CHECK_THROWS_AS(parse_point("mid(H4,H2.0,1,3)", lattice), ParseError);  // not a covering edge
  CHECK_THROWS_AS(parse_point("mid(H4,K0,3,3)", lattice), ParseError);    // j out of range
}
