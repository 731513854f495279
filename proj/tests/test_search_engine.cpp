#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "support.hpp"
#include "symdesign/io.hpp"

using namespace symdesign;

namespace {

Subgroup from_label(int n, const std::string& text) {
  return subgroup_from_label(n, parse_subgroup_label(text));
}

struct ThrowingOracle final : FitnessOracle {
  double evaluate(const DesignGraph&, Rng&) const override {
    throw Error("synthetic oracle failure");
  }
};

struct JointCountOracle final : FitnessOracle {
  double evaluate(const DesignGraph& d, Rng&) const override {
    return static_cast<double>(d.size());
  }
};

}  // namespace

TEST_CASE("planted oracle scores symmetric designs at exactly the noise") {
  const Subgroup k0 = from_label(4, "K0");
  const auto oracle = planted_symmetry_oracle(k0, 1.0, 0.0);

  Rng rng = make_stream(31, {1});
  CHECK(oracle->evaluate(initial_design(4), rng) == 0.0);
  CHECK(oracle->evaluate(initial_design(6), rng) == 0.0);

  SearchConfig config;
  config.n = 4;
  for (int trial = 0; trial < 20; ++trial) {
    const DesignGraph d = generate_design(SymmetryPoint::pure(k0), config, rng);
    REQUIRE(is_symmetric(d, k0, 1e-9));
    CHECK(std::abs(oracle->evaluate(d, rng)) <= 1e-8);
  }
}

TEST_CASE("planted oracle penalizes a lone asymmetric vector by its residual norm") {
  const Subgroup k0 = from_label(4, "K0");
  const auto oracle = planted_symmetry_oracle(k0, 0.0, 0.0);

  DesignGraph d = initial_design(4);
  CoordinateMatrix c = coordinate_matrix(d);
  c[1] = {0.0, 1.0};  // v2 carries unit mass; K0 wants v4 to mirror it
  d = with_coordinates(d, c);

  const CoordinateMatrix projected = project_vectors(c, k0, d);
  double expected = 0.0;
  for (std::size_t i = 0; i < c.size(); ++i) {
    const double dx = c[i].x - projected[i].x;
    const double dy = c[i].y - projected[i].y;
    expected += dx * dx + dy * dy;
  }
  expected = std::sqrt(expected);

  Rng rng = make_stream(31, {2});
  CHECK(oracle->evaluate(d, rng) == doctest::Approx(-expected).epsilon(1e-12));
  // closed form: half the mass stays, so the residual is 1/sqrt(2)
  CHECK(expected == doctest::Approx(std::sqrt(0.5)).epsilon(1e-12));
}

TEST_CASE("planted oracle penalizes structural asymmetry without erroring") {
  const Subgroup k0 = from_label(4, "K0");
  const auto oracle = planted_symmetry_oracle(k0, 1.0, 0.0);

  DesignGraph d = initial_design(4);
  std::map<int, SkeletonAction> actions;
  for (const Joint& j : d.joints()) actions[j.id] = SkeletonAction::NoChange;
  actions[2] = SkeletonAction::AddJoint;  // v2 grows, v4 does not
  d = apply_skeleton_actions(d, actions);
  REQUIRE_FALSE(structurally_compatible(d, k0));

  Rng rng = make_stream(31, {3});
  CHECK(oracle->evaluate(d, rng) < 0.0);
}

TEST_CASE("generate_design examples") {
  Rng rng = make_stream(31, {4});

  SUBCASE("no growth leaves the flat skeleton with perturbed attributes") {
    SearchConfig config;
    config.n = 4;
    config.generator = RandomRolloutParams{0.0, 0.0, 0.5, 0.5};
    const DesignGraph d =
        generate_design(SymmetryPoint::pure(trivial_subgroup(4)), config, rng);
    CHECK(d.size() == 4);
    bool any_nonzero = false;
    for (const Joint& j : d.joints()) {
      if (j.vector.x != 0.0 || j.vector.y != 0.0) any_nonzero = true;
    }
    CHECK(any_nonzero);
  }

  SUBCASE("always-add doubles the joints each skeleton step") {
    SearchConfig config;
    config.n = 4;
    config.n_skel = 2;
    config.generator = RandomRolloutParams{1.0, 0.0, 0.5, 0.5};
    const DesignGraph d =
        generate_design(SymmetryPoint::pure(trivial_subgroup(4)), config, rng);
    CHECK(d.size() == 16);  // 4 -> 8 -> 16
  }

  SUBCASE("rollouts at random points satisfy their governing subgroup") {
    SearchConfig config;
    config.n = 4;
    config.grid_k = 3;
    const SubgroupLattice lattice = build_lattice(4);
    std::vector<SymmetryPoint> points;
    for (const Subgroup& g : lattice.nodes) points.push_back(SymmetryPoint::pure(g));
    for (const auto& [lo, hi] : lattice.covers) {
      for (int j = 1; j <= 2; ++j) {
        points.push_back(SymmetryPoint::interpolated(lattice.nodes[lo], lattice.nodes[hi], j, 3));
      }
    }
    std::uniform_int_distribution<std::size_t> pick(0, points.size() - 1);
    for (int trial = 0; trial < 100; ++trial) {
      const SymmetryPoint& point = points[pick(rng)];
      const DesignGraph d = generate_design(point, config, rng);
      REQUIRE(is_symmetric(d, point.governing(), 1e-9));
    }
  }
}

TEST_CASE("epsilon-greedy moves") {
  const SubgroupLattice lattice = build_lattice(4);
  const SymmetryPoint k0 = SymmetryPoint::pure(from_label(4, "K0"));
  const auto hood = neighbors(k0, lattice, 3);

  SUBCASE("epsilon = 1 explores every neighbor") {
    Rng rng = make_stream(31, {5});
    std::set<std::string> seen;
    for (int t = 0; t < 200; ++t) {
      seen.insert(epsilon_greedy_step(k0, {}, lattice, 3, 1.0, rng).label());
    }
    std::set<std::string> expected;
    for (const auto& p : hood) expected.insert(p.label());
    CHECK(seen == expected);
  }

  SUBCASE("epsilon = 0 with a unique maximizer is deterministic") {
    Rng rng = make_stream(31, {6});
    std::map<std::string, double> values{{"mid(H4,K0,1,3)", 3.0}, {"K0", 1.0}};
    for (int t = 0; t < 20; ++t) {
      CHECK(epsilon_greedy_step(k0, values, lattice, 3, 0.0, rng).label() == "mid(H4,K0,1,3)");
    }
  }

  SUBCASE("all-zero values tie and spread uniformly") {
    Rng rng = make_stream(31, {7});
    std::set<std::string> seen;
    for (int t = 0; t < 200; ++t) {
      seen.insert(epsilon_greedy_step(k0, {}, lattice, 3, 0.0, rng).label());
    }
    CHECK(seen.size() == hood.size());
  }

  SUBCASE("with fixed values the greedy walk reaches a local maximum and stays") {
    Rng value_rng = make_stream(31, {8});
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (int rep = 0; rep < 50; ++rep) {
      // assign every grid point a fixed random value
      std::map<std::string, double> values;
      std::vector<SymmetryPoint> points;
      for (const Subgroup& g : lattice.nodes) points.push_back(SymmetryPoint::pure(g));
      for (const auto& [lo, hi] : lattice.covers) {
        for (int j = 1; j <= 2; ++j) {
          points.push_back(
              SymmetryPoint::interpolated(lattice.nodes[lo], lattice.nodes[hi], j, 3));
        }
      }
      for (const auto& p : points) values[p.label()] = gauss(value_rng);

      Rng rng = make_stream(31, {9, static_cast<std::uint64_t>(rep)});
      SymmetryPoint current = SymmetryPoint::pure(trivial_subgroup(4));
      for (int step = 0; step < 100; ++step) {
        current = epsilon_greedy_step(current, values, lattice, 3, 0.0, rng);
      }
      // at a fixed point of the greedy map, the point maximizes its neighborhood
      const SymmetryPoint next = epsilon_greedy_step(current, values, lattice, 3, 0.0, rng);
      CHECK(next == current);
      for (const auto& p : neighbors(current, lattice, 3)) {
        CHECK(values.at(p.label()) <= values.at(current.label()));
      }
    }
  }
}

TEST_CASE("run_search bookkeeping") {
  SearchConfig config;
  config.n = 4;
  config.grid_k = 3;
  config.iterations = 40;
  config.batch_size = 8;
  config.seed = 99;
  const auto oracle = planted_symmetry_oracle(from_label(4, "H2.0"), 1.0, 0.05);

  SUBCASE("zero iterations") {
    SearchConfig empty = config;
    empty.iterations = 0;
    const SearchResult result = run_search(empty, *oracle);
    CHECK(result.trajectory.empty());
    CHECK(result.final_point == SymmetryPoint::pure(trivial_subgroup(4)));
    CHECK(result.final_values.empty());
  }

  const SearchResult result = run_search(config, *oracle);
  REQUIRE(result.trajectory.size() == 40);

  SUBCASE("the walk starts at the trivial subgroup and moves along neighbor edges") {
    const SubgroupLattice lattice = build_lattice(4);
    CHECK(result.trajectory.front().point == SymmetryPoint::pure(trivial_subgroup(4)));
    for (std::size_t i = 0; i + 1 < result.trajectory.size(); ++i) {
      const auto hood = neighbors(result.trajectory[i].point, lattice, 3);
      CHECK(std::find(hood.begin(), hood.end(), result.trajectory[i + 1].point) != hood.end());
    }
    const auto last_hood = neighbors(result.trajectory.back().point, lattice, 3);
    CHECK(std::find(last_hood.begin(), last_hood.end(), result.final_point) != last_hood.end());
  }

  SUBCASE("iteration entries are coherent") {
    for (const TrajectoryEntry& entry : result.trajectory) {
      CHECK(entry.best_fitness >= entry.mean_fitness);
      CHECK(is_symmetric(entry.best_design, entry.point.governing(), 1e-9));
    }
    // the value dict holds the latest batch mean for every visited point
    std::map<std::string, double> last_mean;
    for (const TrajectoryEntry& entry : result.trajectory) {
      last_mean[entry.point.label()] = entry.mean_fitness;
    }
    CHECK(result.final_values == last_mean);
  }
}

TEST_CASE("batch means are exact arithmetic means") {
  SearchConfig config;
  config.n = 4;
  config.iterations = 5;
  config.batch_size = 7;
  config.seed = 5;
  config.generator = RandomRolloutParams{0.3, 0.05, 0.4, 0.4};
  const JointCountOracle oracle;
  const SearchResult result = run_search(config, oracle);
  for (const TrajectoryEntry& entry : result.trajectory) {
    // joint counts are integers; the mean of 7 of them is an exact multiple of 1/7
    const double scaled = entry.mean_fitness * 7.0;
    CHECK(std::abs(scaled - std::round(scaled)) <= 1e-9);
  }
}

TEST_CASE("searches are reproducible bit for bit") {
  SearchConfig config;
  config.n = 4;
  config.grid_k = 3;
  config.iterations = 25;
  config.batch_size = 6;
  config.seed = 1234;
  const auto oracle = planted_symmetry_oracle(from_label(4, "H2.0"), 1.0, 0.1);

  SearchFileConfig file_config;
  file_config.search = config;
  file_config.oracle = {"H2.0", 1.0, 0.1};

  const SearchResult a = run_search(config, *oracle);
  const SearchResult b = run_search(config, *oracle);
  CHECK(canonical_dump(result_to_json(a, file_config)) ==
        canonical_dump(result_to_json(b, file_config)));

  SearchConfig parallel = config;
  parallel.threads = 4;
  const SearchResult c = run_search(parallel, *oracle);
  CHECK(canonical_dump(result_to_json(a, file_config)) ==
        canonical_dump(result_to_json(c, file_config)));

  SearchConfig other = config;
  other.seed = 4321;
  const SearchResult d = run_search(other, *oracle);
  CHECK(canonical_dump(result_to_json(a, file_config)) !=
        canonical_dump(result_to_json(d, file_config)));
}

TEST_CASE("the hill-climb generator is reproducible and symmetric too") {
  SearchConfig config;
  config.n = 4;
  config.grid_k = 3;
  config.iterations = 20;
  config.batch_size = 6;
  config.seed = 77;
  config.generator = HillClimbParams{4, 0.3};
  const auto oracle = planted_symmetry_oracle(from_label(4, "H2.0"), 1.0, 0.0);

  SearchFileConfig file_config;
  file_config.search = config;
  file_config.oracle = {"H2.0", 1.0, 0.0};

  const SearchResult a = run_search(config, *oracle);
  SearchConfig parallel = config;
  parallel.threads = 3;
  const SearchResult b = run_search(parallel, *oracle);
  CHECK(canonical_dump(result_to_json(a, file_config)) ==
        canonical_dump(result_to_json(b, file_config)));
  for (const TrajectoryEntry& entry : a.trajectory) {
    CHECK(is_symmetric(entry.best_design, entry.point.governing(), 1e-9));
  }
}

TEST_CASE("oracle failures abort with the iteration index") {
  SearchConfig config;
  config.n = 4;
  config.iterations = 3;
  config.batch_size = 2;
  const ThrowingOracle oracle;
  try {
    run_search(config, oracle);
    FAIL("expected SearchError");
  } catch (const SearchError& e) {
    CHECK(std::string(e.what()).find("iteration 0") != std::string::npos);
  }
}

TEST_CASE("config validation") {
  const auto oracle = planted_symmetry_oracle(from_label(4, "K0"), 1.0, 0.0);
  SearchConfig config;
  config.n = 4;

  SearchConfig bad = config;
  bad.epsilon = 1.5;
  CHECK_THROWS_AS(run_search(bad, *oracle), ConfigError);
  bad = config;
  bad.grid_k = 0;
  CHECK_THROWS_AS(run_search(bad, *oracle), ConfigError);
  bad = config;
  bad.batch_size = 0;
  CHECK_THROWS_AS(run_search(bad, *oracle), ConfigError);
  bad = config;
  bad.n_skel = 0;
  CHECK_THROWS_AS(run_search(bad, *oracle), ConfigError);
}
