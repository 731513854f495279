#include "symdesign/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "symdesign/io.hpp"
#include "symdesign/search.hpp"

namespace symdesign {

namespace {

constexpr double kAlgebraTol = 1e-12;
constexpr double kGeometryTol = 1e-9;

std::vector<DihedralElement> all_elements(int n) {
  std::vector<DihedralElement> out;
  for (int k = 0; k < n; ++k) out.push_back(DihedralElement::rotation(n, k));
  for (int k = 0; k < n; ++k) out.push_back(DihedralElement::reflection(n, k));
  return out;
}

double mat_distance(const Mat2& a, const Mat2& b) {
  return std::max({std::abs(a.a - b.a), std::abs(a.b - b.b), std::abs(a.c - b.c),
                   std::abs(a.d - b.d)});
}

double matrix_distance(const CoordinateMatrix& a, const CoordinateMatrix& b) {
  double out = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    out = std::max({out, std::abs(a[i].x - b[i].x), std::abs(a[i].y - b[i].y)});
  }
  return out;
}

CoordinateMatrix random_matrix(std::size_t columns, Rng& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  CoordinateMatrix c(columns);
  for (Vec2& v : c) v = {gauss(rng), gauss(rng)};
  return c;
}

// Random design structurally compatible with the subgroup: a few rounds of
// orbit-constrained child growth from the flat start.
DesignGraph random_compatible_design(int n, const Subgroup& group, int growth_steps, Rng& rng) {
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

// The transformed coordinate matrix M_g c P_{g^-1}, spelled out directly.
CoordinateMatrix act_on_matrix(const CoordinateMatrix& c, const DihedralElement& g,
                               const DesignGraph& design) {
  const std::map<int, int> image = extended_perm(g, design);
  const Mat2 m = matrix_rep(g);
  CoordinateMatrix out(c.size());
  for (std::size_t col = 0; col < c.size(); ++col) {
    const int id = design.joints()[col].id;
    out[static_cast<std::size_t>(design.column_of(image.at(id)))] = m.apply(c[col]);
  }
  return out;
}

struct CheckRecorder {
  std::vector<VerifyCheck> checks;

  void add(const std::string& name, bool passed, const std::string& detail) {
    checks.push_back({name, passed, detail});
  }
  void add_residual(const std::string& name, double residual, double tol) {
    add(name, residual <= tol, "max residual " + format_double(residual) + " (tol " +
                                   format_double(tol) + ")");
  }
};

void check_group_axioms(CheckRecorder& rec, const VerifyOptions& opt) {
  bool ok = true;
  std::string witness;
  Rng rng = make_stream(opt.seed, {11});
  for (int n = opt.n_min; n <= opt.n_max && ok; ++n) {
    const auto elems = all_elements(n);
    auto check_triple = [&](const DihedralElement& a, const DihedralElement& b,
                            const DihedralElement& c) {
      if (!(compose(compose(a, b), c) == compose(a, compose(b, c)))) {
        ok = false;
        witness = "associativity fails at n=" + std::to_string(n);
      }
    };
    if (n <= 8) {
      for (const auto& a : elems)
        for (const auto& b : elems)
          for (const auto& c : elems) check_triple(a, b, c);
    } else {
      std::uniform_int_distribution<std::size_t> pick(0, elems.size() - 1);
      for (int t = 0; t < 500; ++t) check_triple(elems[pick(rng)], elems[pick(rng)], elems[pick(rng)]);
    }
    const DihedralElement e = DihedralElement::identity(n);
    for (const auto& g : elems) {
      if (!(compose(e, g) == g) || !(compose(g, e) == g)) {
        ok = false;
        witness = "identity fails at n=" + std::to_string(n);
      }
      if (!compose(g, inverse(g)).is_identity() || !compose(inverse(g), g).is_identity()) {
        ok = false;
        witness = "inverse fails at n=" + std::to_string(n);
      }
    }
  }
  rec.add("group axioms (n " + std::to_string(opt.n_min) + ".." + std::to_string(opt.n_max) +
              ", exhaustive to n=8)",
          ok, ok ? "associativity, identity, inverses" : witness);
}

void check_homomorphisms(CheckRecorder& rec, const VerifyOptions& opt) {
  double worst = 0.0;
  bool perm_ok = true;
  const int n_hi = std::min(opt.n_max, 8);
  for (int n = opt.n_min; n <= n_hi; ++n) {
    const auto elems = all_elements(n);
    for (const auto& a : elems) {
      for (const auto& b : elems) {
        const Mat2 lhs = matrix_rep(compose(a, b));
        const Mat2 rhs = matrix_rep(a) * matrix_rep(b);
        worst = std::max(worst, mat_distance(lhs, rhs));
        const PermutationRep pa = perm_rep(a);
        const PermutationRep pb = perm_rep(b);
        const PermutationRep pc = perm_rep(compose(a, b));
        for (int i = 0; i < n; ++i) {
          if (pc.apply(i) != pa.apply(pb.apply(i))) perm_ok = false;
        }
      }
    }
  }
  rec.add("representation homomorphisms (all pairs, n " + std::to_string(opt.n_min) + ".." +
              std::to_string(n_hi) + ")",
          worst <= kAlgebraTol && perm_ok,
          "matrix residual " + format_double(worst) + (perm_ok ? ", permutations exact" :
                                                                 ", permutation mismatch"));
}

void check_rep_consistency(CheckRecorder& rec, const VerifyOptions& opt) {
  double worst = 0.0;
  for (int n = opt.n_min; n <= opt.n_max; ++n) {
    for (const auto& g : all_elements(n)) {
      const Mat2 m = matrix_rep(g);
      const PermutationRep p = perm_rep(g);
      for (int i = 0; i < n; ++i) {
        const double angle = 2.0 * std::numbers::pi * i / n;
        const Vec2 moved = m.apply({std::cos(angle), std::sin(angle)});
        const double target = 2.0 * std::numbers::pi * p.apply(i) / n;
        worst = std::max({worst, std::abs(moved.x - std::cos(target)),
                          std::abs(moved.y - std::sin(target))});
      }
    }
  }
  rec.add_residual("matrix action matches anchor permutation (n " + std::to_string(opt.n_min) +
                       ".." + std::to_string(opt.n_max) + ")",
                   worst, kGeometryTol);
}

void check_subgroups(CheckRecorder& rec, const VerifyOptions& opt) {
  bool counts_ok = true;
  bool labels_ok = true;
  for (int n = opt.n_min; n <= opt.n_max; ++n) {
    const auto subgroups = enumerate_subgroups(n);
    if (static_cast<int>(subgroups.size()) != subgroup_count_formula(n)) counts_ok = false;
    for (const auto& g : subgroups) {
      if (!(generate_subgroup(n, g.canonical_generators()) == g)) labels_ok = false;
    }
  }
  rec.add("subgroup count matches the divisor-sum formula", counts_ok,
          counts_ok ? "n " + std::to_string(opt.n_min) + ".." + std::to_string(opt.n_max)
                    : "count mismatch");
  rec.add("labels regenerate their subgroups", labels_ok,
          labels_ok ? "canonical generators round-trip" : "round-trip failure");

  bool covers_ok = true;
  for (int n = opt.n_min; n <= std::min(opt.n_max, 6); ++n) {
    const SubgroupLattice lattice = build_lattice(n);
    const int count = static_cast<int>(lattice.nodes.size());
    for (int lo = 0; lo < count; ++lo) {
      for (int hi = 0; hi < count; ++hi) {
        const bool proper = lattice.nodes[lo].proper_subset_of(lattice.nodes[hi]);
        bool has_mid = false;
        for (int mid = 0; mid < count; ++mid) {
          if (mid == lo || mid == hi) continue;
          if (lattice.nodes[lo].proper_subset_of(lattice.nodes[mid]) &&
              lattice.nodes[mid].proper_subset_of(lattice.nodes[hi])) {
            has_mid = true;
          }
        }
        const bool expected = proper && !has_mid;
        const bool actual = std::find(lattice.covers.begin(), lattice.covers.end(),
                                      std::make_pair(lo, hi)) != lattice.covers.end();
        if (expected != actual) covers_ok = false;
      }
    }
  }
  rec.add("covering pairs equal the transitive reduction (n <= 6)", covers_ok,
          covers_ok ? "subset-order reachability agrees" : "cover mismatch");
}

void check_projection_laws(CheckRecorder& rec, const VerifyOptions& opt) {
  Rng rng = make_stream(opt.seed, {21});
  double worst_range = 0.0;
  double worst_idem = 0.0;
  double worst_fix = 0.0;
  double worst_linear = 0.0;
  std::uniform_int_distribution<int> pick_n(opt.n_min, opt.n_max);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (int trial = 0; trial < opt.trials; ++trial) {
    const int n = pick_n(rng);
    const auto subgroups = enumerate_subgroups(n);
    std::uniform_int_distribution<std::size_t> pick_g(0, subgroups.size() - 1);
    const Subgroup& group = subgroups[pick_g(rng)];
    const DesignGraph design = random_compatible_design(n, group, trial % 3, rng);
    const CoordinateMatrix c = random_matrix(design.size(), rng);

    const CoordinateMatrix projected = project_vectors(c, group, design);
    for (const DihedralElement& g : group.elements()) {
      worst_range = std::max(worst_range,
                             matrix_distance(act_on_matrix(projected, g, design), projected));
    }
    worst_idem = std::max(
        worst_idem, matrix_distance(project_vectors(projected, group, design), projected));

    // symmetric input built by hand-averaging the group action, then fed in
    CoordinateMatrix symmetric(c.size());
    for (const DihedralElement& g : group.elements()) {
      const CoordinateMatrix moved = act_on_matrix(c, g, design);
      for (std::size_t i = 0; i < c.size(); ++i) symmetric[i] = symmetric[i] + moved[i];
    }
    const double inv = 1.0 / static_cast<double>(group.order());
    for (Vec2& v : symmetric) v = inv * v;
    worst_fix = std::max(worst_fix,
                         matrix_distance(project_vectors(symmetric, group, design), symmetric));

    const CoordinateMatrix c2 = random_matrix(design.size(), rng);
    const double alpha = gauss(rng);
    CoordinateMatrix combo(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) combo[i] = alpha * c[i] + c2[i];
    const CoordinateMatrix lhs = project_vectors(combo, group, design);
    const CoordinateMatrix pa = project_vectors(c, group, design);
    const CoordinateMatrix pb = project_vectors(c2, group, design);
    CoordinateMatrix rhs(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) rhs[i] = alpha * pa[i] + pb[i];
    worst_linear = std::max(worst_linear, matrix_distance(lhs, rhs));
  }
  rec.add_residual("projection lands in the symmetric space (" + std::to_string(opt.trials) +
                       " trials)",
                   worst_range, kGeometryTol);
  rec.add_residual("projection is idempotent", worst_idem, kAlgebraTol);
  rec.add_residual("projection fixes symmetric inputs", worst_fix, kAlgebraTol);
  rec.add_residual("projection is linear", worst_linear, kGeometryTol);
}

void check_blend_laws(CheckRecorder& rec, const VerifyOptions& opt) {
  Rng rng = make_stream(opt.seed, {22});
  double worst_sym = 0.0;
  double worst_endpoints = 0.0;
  const SubgroupLattice lattice = build_lattice(4);
  for (const int grid_k : {1, 3, 5}) {
    for (const auto& [lo, hi] : lattice.covers) {
      const Subgroup& lower = lattice.nodes[static_cast<std::size_t>(lo)];
      const Subgroup& upper = lattice.nodes[static_cast<std::size_t>(hi)];
      for (int rep = 0; rep < 5; ++rep) {
        const DesignGraph design = random_compatible_design(4, upper, rep % 3, rng);
        const CoordinateMatrix c = random_matrix(design.size(), rng);
        const double beta0 =
            static_cast<double>(lower.order()) / static_cast<double>(upper.order());
        worst_endpoints = std::max(
            worst_endpoints, matrix_distance(project_vectors_blend(c, lower, upper, beta0, design),
                                             project_vectors(c, upper, design)));
        worst_endpoints = std::max(
            worst_endpoints, matrix_distance(project_vectors_blend(c, lower, upper, 1.0, design),
                                             project_vectors(c, lower, design)));
        for (int j = 1; j <= grid_k - 1; ++j) {
          const SymmetryPoint point = SymmetryPoint::interpolated(lower, upper, j, grid_k);
          const CoordinateMatrix blended = project_vectors_interpolated(c, point, design);
          for (const DihedralElement& g : lower.elements()) {
            worst_sym = std::max(worst_sym,
                                 matrix_distance(act_on_matrix(blended, g, design), blended));
          }
        }
      }
    }
  }
  rec.add_residual("blended projections stay lower-subgroup symmetric (K in {1,3,5})", worst_sym,
                   kGeometryTol);
  rec.add_residual("blend endpoints reproduce the pure projections", worst_endpoints,
                   kAlgebraTol);
}

void check_decomposition(CheckRecorder& rec, const VerifyOptions& opt) {
  Rng rng = make_stream(opt.seed, {23});
  double worst = 0.0;
  bool beta0_ok = true;
  for (const int n : {4, 6}) {
    const SubgroupLattice lattice = build_lattice(n);
    for (const auto& [lo, hi] : lattice.covers) {
      const Subgroup& lower = lattice.nodes[static_cast<std::size_t>(lo)];
      const Subgroup& upper = lattice.nodes[static_cast<std::size_t>(hi)];
      if (upper.order() % lower.order() != 0) beta0_ok = false;
      for (int rep = 0; rep < 100; ++rep) {
        const DesignGraph design = random_compatible_design(n, upper, rep % 3, rng);
        const CoordinateMatrix c = random_matrix(design.size(), rng);
        worst = std::max(worst, decomposition_check(lower, upper, c, design));
      }
    }
  }
  rec.add_residual("group average splits into subgroup and coset averages (Dih_4, Dih_6)", worst,
                   kGeometryTol);
  rec.add("blend weight beta0 is the exact order ratio", beta0_ok,
          beta0_ok ? "|G| divides |G'| on every covering edge" : "non-integer index");
}

void check_closed_form(CheckRecorder& rec, const VerifyOptions& opt) {
  Rng rng = make_stream(opt.seed, {24});
  const DesignGraph design = initial_design(4);
  const Subgroup k0 = generate_subgroup(4, {DihedralElement::reflection(4, 0)});
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const CoordinateMatrix c = random_matrix(4, rng);
    const CoordinateMatrix projected = project_vectors(c, k0, design);
    const CoordinateMatrix expected = {{c[0].x, 0.0},
                                       {(c[1].x + c[3].x) / 2, (c[1].y - c[3].y) / 2},
                                       {c[2].x, 0.0},
                                       {(c[1].x + c[3].x) / 2, (c[3].y - c[1].y) / 2}};
    worst = std::max(worst, matrix_distance(projected, expected));
  }
  rec.add_residual("reflection-average closed form on the flat 4-joint design", worst,
                   kAlgebraTol);
}

void check_realizability(CheckRecorder& rec, const VerifyOptions& opt) {
  Rng rng = make_stream(opt.seed, {25});
  SearchConfig config;
  config.n = 4;
  config.grid_k = 3;
  const SubgroupLattice lattice = build_lattice(4);

  std::vector<SymmetryPoint> points;
  for (const Subgroup& g : lattice.nodes) points.push_back(SymmetryPoint::pure(g));
  for (const auto& [lo, hi] : lattice.covers) {
    for (int j = 1; j <= config.grid_k - 1; ++j) {
      points.push_back(SymmetryPoint::interpolated(lattice.nodes[static_cast<std::size_t>(lo)],
                                                   lattice.nodes[static_cast<std::size_t>(hi)], j,
                                                   config.grid_k));
    }
  }
  bool ok = true;
  std::string witness;
  const int rollouts = std::max(20, opt.trials / 10);
  std::uniform_int_distribution<std::size_t> pick(0, points.size() - 1);
  for (int trial = 0; trial < rollouts; ++trial) {
    const SymmetryPoint& point = points[pick(rng)];
    const DesignGraph design = generate_design(point, config, rng);
    if (!is_symmetric(design, point.governing(), kGeometryTol)) {
      ok = false;
      witness = "asymmetric rollout at " + point.label();
    }
  }
  rec.add("generated designs satisfy their governing symmetry (" + std::to_string(rollouts) +
              " rollouts)",
          ok, ok ? "n=4, K=3, every lattice point eligible" : witness);
}

}  // namespace

VerifyReport run_verification(const VerifyOptions& options) {
  if (options.n_min < 3 || options.n_max < options.n_min) {
    throw ConfigError("verify needs 3 <= n_min <= n_max");
  }
  if (options.trials < 1) throw ConfigError("verify needs trials >= 1");

  CheckRecorder rec;
  check_group_axioms(rec, options);
  check_homomorphisms(rec, options);
  check_rep_consistency(rec, options);
  check_subgroups(rec, options);
  check_closed_form(rec, options);
  check_projection_laws(rec, options);
  check_blend_laws(rec, options);
  check_decomposition(rec, options);
  check_realizability(rec, options);

  VerifyReport report;
  report.checks = rec.checks;
  report.all_passed = true;
  std::string text;
  int passed = 0;
  for (const VerifyCheck& check : rec.checks) {
    if (check.passed) {
      ++passed;
    } else {
      report.all_passed = false;
    }
    text += (check.passed ? "PASS  " : "FAIL  ") + check.name + " -- " + check.detail + "\n";
  }
  text += "verify: " + std::to_string(passed) + "/" + std::to_string(rec.checks.size()) +
          " checks passed (n " + std::to_string(options.n_min) + ".." +
          std::to_string(options.n_max) + ", trials " + std::to_string(options.trials) +
          ", seed " + std::to_string(options.seed) + ")\n";
  report.text = std::move(text);
  return report;
}

}  // namespace symdesign
