#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "symdesign/projection.hpp"
#include "symdesign/rng.hpp"

namespace symdesign {

struct RandomRolloutParams {
  double p_add = 0.4;
  double p_del = 0.1;
  double scalar_sigma = 0.5;
  double vector_sigma = 0.5;
};

struct HillClimbParams {
  int population = 8;        // elites kept per point
  double mutation_sigma = 0.25;
};

using GeneratorParams = std::variant<RandomRolloutParams, HillClimbParams>;

struct SearchConfig {
  int n = 4;
  int grid_k = 3;
  double epsilon = 0.01;
  int iterations = 100;
  int batch_size = 16;
  int n_skel = 5;
  int n_attr = 1;
  GeneratorParams generator = RandomRolloutParams{};
  std::vector<std::string> scalar_names = {"motor", "size"};
  std::uint64_t seed = 0;
  int threads = 1;  // execution knob, not part of the serialized config
};

/// Design evaluator standing in for a task objective. Implementations must be
/// deterministic given the rng stream and free of shared mutable state.
class FitnessOracle {
 public:
  virtual ~FitnessOracle() = default;
  virtual double evaluate(const DesignGraph& design, Rng& rng) const = 0;
};

/// Fitness peaks exactly at designs symmetric under a planted subgroup:
///   -||c - Pi_{G*}(c)||_F - lambda_struct * s(D) + Gaussian noise,
/// where s(D) counts orbit-mate pairs with mismatched child counts or scalar
/// attributes. Structurally incompatible designs are scored with worst-case
/// penalties instead of erroring.
std::unique_ptr<FitnessOracle> planted_symmetry_oracle(Subgroup g_star, double lambda_struct,
                                                       double noise_sigma);

/// The stochastic stand-in for a design policy: n_skel orbit-constrained
/// skeleton steps (representatives draw AddJoint/DelJoint/NoChange; illegal
/// deletions fall back to NoChange) followed by n_attr symmetrized attribute
/// steps with Gaussian proposals. The result is symmetric under the point's
/// governing subgroup.
DesignGraph generate_design(const SymmetryPoint& point, const SearchConfig& config, Rng& rng);

/// One epsilon-greedy move over the point's neighborhood: explore uniformly
/// with probability epsilon, otherwise take the highest-valued neighbor
/// (unvisited points count as 0; ties break uniformly at random).
SymmetryPoint epsilon_greedy_step(const SymmetryPoint& current,
                                  const std::map<std::string, double>& values,
                                  const SubgroupLattice& lattice, int grid_k, double epsilon,
                                  Rng& rng);

struct TrajectoryEntry {
  int iteration = 0;
  SymmetryPoint point;
  double mean_fitness = 0.0;
  double best_fitness = 0.0;
  DesignGraph best_design;
};

struct SearchResult {
  std::vector<TrajectoryEntry> trajectory;
  SymmetryPoint final_point;
  std::map<std::string, double> final_values;  // keyed by point label
};

/// The structured local search: starts at the trivial subgroup, evaluates a
/// batch of generated designs per iteration, overwrites the current point's
/// value with the batch mean, and moves epsilon-greedily over the neighbor
/// grid. Fully reproducible from config.seed, bit-identically so for any
/// thread count.
SearchResult run_search(const SearchConfig& config, const FitnessOracle& oracle);

}  // namespace symdesign
