#include "symdesign/search.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <set>
#include <thread>
#include <utility>

namespace symdesign {

namespace {

constexpr std::uint64_t kTagGenerate = 1;
constexpr std::uint64_t kTagEvaluate = 2;
constexpr std::uint64_t kTagMove = 3;

double frobenius_diff(const CoordinateMatrix& a, const CoordinateMatrix& b) {
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double dx = a[i].x - b[i].x;
    const double dy = a[i].y - b[i].y;
    sum += dx * dx + dy * dy;
  }
  return std::sqrt(sum);
}

double frobenius(const CoordinateMatrix& a) {
  double sum = 0.0;
  for (const Vec2& v : a) sum += v.x * v.x + v.y * v.y;
  return std::sqrt(sum);
}

class PlantedSymmetryOracle final : public FitnessOracle {
 public:
  PlantedSymmetryOracle(Subgroup g_star, double lambda_struct, double noise_sigma)
      : g_star_(std::move(g_star)), lambda_(lambda_struct), noise_sigma_(noise_sigma) {}

  double evaluate(const DesignGraph& design, Rng& rng) const override {
    double vector_term = 0.0;
    if (structurally_compatible(design, g_star_)) {
      const CoordinateMatrix c = coordinate_matrix(design);
      vector_term = frobenius_diff(c, project_vectors(c, g_star_, design));
    } else {
      // worst case: no part of the mass counts as symmetric
      vector_term = frobenius(coordinate_matrix(design));
    }
    const double structural = structural_mismatch(design);
    double noise = 0.0;
    if (noise_sigma_ > 0.0) {
      noise = std::normal_distribution<double>(0.0, noise_sigma_)(rng);
    }
    return -vector_term - lambda_ * structural + noise;
  }

 private:
  // Orbit-mate pairs whose child counts or scalar attributes disagree, plus a
  // worst-case unit per joint whose image does not exist at all.
  double structural_mismatch(const DesignGraph& design) const {
    constexpr double kTol = 1e-12;
    std::set<std::pair<int, int>> bad_pairs;
    int broken = 0;
    for (const DihedralElement& g : g_star_.elements()) {
      if (g.is_identity()) continue;
      const PermutationRep base = perm_rep(g);
      std::map<int, int> image;
      std::vector<const Joint*> order;
      for (const Joint& j : design.joints()) order.push_back(&j);
      std::stable_sort(order.begin(), order.end(),
                       [](const Joint* a, const Joint* b) { return a->layer < b->layer; });
      for (const Joint* j : order) {
        int target = -1;
        if (j->parent == kTorso) {
          target = base.apply(j->id - 1) + 1;
        } else {
          auto it = image.find(j->parent);
          if (it != image.end()) target = design.child_at(it->second, j->sibling_index);
        }
        if (target < 0) {
          ++broken;
          continue;
        }
        image[j->id] = target;
        if (target == j->id) continue;
        const Joint& mate = design.joint(target);
        bool mismatch = design.children(j->id).size() != design.children(target).size();
        if (!mismatch) {
          for (const auto& [name, value] : j->scalars) {
            if (std::abs(mate.scalars.at(name) - value) > kTol) {
              mismatch = true;
              break;
            }
          }
        }
        if (!mismatch && std::abs(mate.z - j->z) > kTol) mismatch = true;
        if (mismatch) {
          bad_pairs.emplace(std::min(j->id, target), std::max(j->id, target));
        }
      }
    }
    return static_cast<double>(bad_pairs.size() + static_cast<std::size_t>(broken));
  }

  Subgroup g_star_;
  double lambda_;
  double noise_sigma_;
};

RandomRolloutParams rollout_params(const SearchConfig& config) {
  if (const auto* params = std::get_if<RandomRolloutParams>(&config.generator)) {
    return *params;
  }
  return {};
}

DesignGraph skeleton_rollout_step(const DesignGraph& design, const SymmetryPoint& point,
                                  const RandomRolloutParams& params, Rng& rng) {
  const OrbitPartition partition = orbits(design, point.skeleton_group());
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::map<int, SkeletonAction> actions;
  for (const auto& members : partition.orbits) {
    const int rep = members.front();
    const double u = unit(rng);
    SkeletonAction action = SkeletonAction::NoChange;
    if (u < params.p_add) {
      action = SkeletonAction::AddJoint;
    } else if (u < params.p_add + params.p_del) {
      action = SkeletonAction::DelJoint;
      const Joint& j = design.joint(rep);
      if (j.parent == kTorso || !design.children(rep).empty()) {
        action = SkeletonAction::NoChange;  // illegal deletions are dropped
      }
    }
    for (int id : members) actions[id] = action;
  }
  return apply_skeleton_actions(design, actions);
}

DesignGraph attribute_rollout_step(const DesignGraph& design, const SymmetryPoint& point,
                                   double scalar_sigma, double vector_sigma, Rng& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::map<int, AttributeAction> proposals;
  for (const Joint& j : design.joints()) {
    AttributeAction action;
    for (const auto& name : design.scalar_names()) {
      action.scalars[name] = j.scalars.at(name) + scalar_sigma * gauss(rng);
    }
    action.vector = {j.vector.x + vector_sigma * gauss(rng),
                     j.vector.y + vector_sigma * gauss(rng)};
    proposals[j.id] = std::move(action);
  }
  return symmetrize_attribute_step(design, point, proposals);
}

class DesignGenerator {
 public:
  virtual ~DesignGenerator() = default;
  virtual DesignGraph generate(const SymmetryPoint& point, Rng& rng) const = 0;
  virtual void begin_iteration() {}
  virtual void observe(const SymmetryPoint&, const DesignGraph&, double) {}
};

class RandomRolloutGenerator final : public DesignGenerator {
 public:
  explicit RandomRolloutGenerator(SearchConfig config) : config_(std::move(config)) {}

  DesignGraph generate(const SymmetryPoint& point, Rng& rng) const override {
    return generate_design(point, config_, rng);
  }

 private:
  SearchConfig config_;
};

// (1+lambda)-style generator: keeps the best designs seen per point and
// proposes attribute mutations of a uniformly chosen elite. Generation reads
// the pool snapshot taken at iteration start, so batch order cannot leak in.
class HillClimbGenerator final : public DesignGenerator {
 public:
  HillClimbGenerator(SearchConfig config, HillClimbParams params)
      : config_(std::move(config)), params_(params) {}

  void begin_iteration() override { snapshot_ = pools_; }

  DesignGraph generate(const SymmetryPoint& point, Rng& rng) const override {
    auto it = snapshot_.find(point.label());
    if (it == snapshot_.end() || it->second.empty()) {
      return generate_design(point, config_, rng);
    }
    const auto& pool = it->second;
    std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
    const DesignGraph& base = pool[pick(rng)].second;
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::map<int, AttributeAction> proposals;
    for (const Joint& j : base.joints()) {
      AttributeAction action;
      for (const auto& name : base.scalar_names()) {
        action.scalars[name] = j.scalars.at(name) + params_.mutation_sigma * gauss(rng);
      }
      action.vector = {j.vector.x + params_.mutation_sigma * gauss(rng),
                       j.vector.y + params_.mutation_sigma * gauss(rng)};
      proposals[j.id] = std::move(action);
    }
    return symmetrize_attribute_step(base, point, proposals);
  }

  void observe(const SymmetryPoint& point, const DesignGraph& design, double fitness) override {
    auto& pool = pools_[point.label()];
    auto at = std::find_if(pool.begin(), pool.end(),
                           [fitness](const auto& e) { return e.first < fitness; });
    pool.insert(at, {fitness, design});
    const std::size_t cap = static_cast<std::size_t>(std::max(1, params_.population));
    if (pool.size() > cap) {
      pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(cap), pool.end());
    }
  }

 private:
  using Pool = std::vector<std::pair<double, DesignGraph>>;
  SearchConfig config_;
  HillClimbParams params_;
  std::map<std::string, Pool> pools_;
  std::map<std::string, Pool> snapshot_;
};

std::unique_ptr<DesignGenerator> make_generator(const SearchConfig& config) {
  if (const auto* params = std::get_if<HillClimbParams>(&config.generator)) {
    return std::make_unique<HillClimbGenerator>(config, *params);
  }
  return std::make_unique<RandomRolloutGenerator>(config);
}

void validate(const SearchConfig& config) {
  if (config.n < 3) throw ConfigError("search needs n >= 3");
  if (config.grid_k < 1) throw ConfigError("interval count K must be >= 1");
  if (config.epsilon < 0.0 || config.epsilon > 1.0) {
    throw ConfigError("epsilon must lie in [0, 1]");
  }
  if (config.iterations < 0) throw ConfigError("iterations must be >= 0");
  if (config.batch_size < 1) throw ConfigError("batch_size must be >= 1");
  if (config.n_skel < 1 || config.n_attr < 1) {
    throw ConfigError("n_skel and n_attr must be >= 1");
  }
  if (config.threads < 1) throw ConfigError("threads must be >= 1");
}

}  // namespace

std::unique_ptr<FitnessOracle> planted_symmetry_oracle(Subgroup g_star, double lambda_struct,
                                                       double noise_sigma) {
  return std::make_unique<PlantedSymmetryOracle>(std::move(g_star), lambda_struct, noise_sigma);
}

DesignGraph generate_design(const SymmetryPoint& point, const SearchConfig& config, Rng& rng) {
  const RandomRolloutParams params = rollout_params(config);
  DesignGraph design = initial_design(config.n, config.scalar_names);
  for (int step = 0; step < config.n_skel; ++step) {
    design = skeleton_rollout_step(design, point, params, rng);
  }
  for (int step = 0; step < config.n_attr; ++step) {
    design = attribute_rollout_step(design, point, params.scalar_sigma, params.vector_sigma, rng);
  }
  return design;
}

SymmetryPoint epsilon_greedy_step(const SymmetryPoint& current,
                                  const std::map<std::string, double>& values,
                                  const SubgroupLattice& lattice, int grid_k, double epsilon,
                                  Rng& rng) {
  const std::vector<SymmetryPoint> hood = neighbors(current, lattice, grid_k);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  if (unit(rng) < epsilon) {
    std::uniform_int_distribution<std::size_t> pick(0, hood.size() - 1);
    return hood[pick(rng)];
  }
  auto value_of = [&values](const SymmetryPoint& p) {
    auto it = values.find(p.label());
    return it == values.end() ? 0.0 : it->second;
  };
  double best = value_of(hood.front());
  for (const SymmetryPoint& p : hood) best = std::max(best, value_of(p));
  std::vector<std::size_t> ties;
  for (std::size_t i = 0; i < hood.size(); ++i) {
    if (value_of(hood[i]) == best) ties.push_back(i);
  }
  if (ties.size() == 1) return hood[ties.front()];
  std::uniform_int_distribution<std::size_t> pick(0, ties.size() - 1);
  return hood[ties[pick(rng)]];
}

SearchResult run_search(const SearchConfig& config, const FitnessOracle& oracle) {
  validate(config);
  const SubgroupLattice lattice = build_lattice(config.n);
  SymmetryPoint current = SymmetryPoint::pure(trivial_subgroup(config.n));
  std::unique_ptr<DesignGenerator> generator = make_generator(config);
  std::map<std::string, double> values;

  SearchResult result{{}, current, {}};
  result.trajectory.reserve(static_cast<std::size_t>(config.iterations));

  const std::size_t batch = static_cast<std::size_t>(config.batch_size);
  const DesignGraph placeholder = initial_design(config.n, config.scalar_names);
  std::vector<DesignGraph> designs;
  std::vector<double> fitness(batch, 0.0);
  std::vector<std::exception_ptr> failures(batch);

  for (int iteration = 0; iteration < config.iterations; ++iteration) {
    generator->begin_iteration();
    designs.assign(batch, placeholder);

    auto episode = [&](std::size_t ep) {
      try {
        Rng gen_rng = make_stream(config.seed, {kTagGenerate, static_cast<std::uint64_t>(iteration),
                                                static_cast<std::uint64_t>(ep)});
        designs[ep] = generator->generate(current, gen_rng);
        Rng eval_rng = make_stream(config.seed, {kTagEvaluate, static_cast<std::uint64_t>(iteration),
                                                 static_cast<std::uint64_t>(ep)});
        fitness[ep] = oracle.evaluate(designs[ep], eval_rng);
      } catch (...) {
        failures[ep] = std::current_exception();
      }
    };

    std::fill(failures.begin(), failures.end(), nullptr);
    if (config.threads <= 1 || batch == 1) {
      for (std::size_t ep = 0; ep < batch; ++ep) episode(ep);
    } else {
      std::atomic<std::size_t> cursor{0};
      auto worker = [&]() {
        while (true) {
          const std::size_t ep = cursor.fetch_add(1);
          if (ep >= batch) break;
          episode(ep);
        }
      };
      std::vector<std::thread> threads;
      const std::size_t count = std::min<std::size_t>(static_cast<std::size_t>(config.threads), batch);
      threads.reserve(count);
      for (std::size_t t = 0; t < count; ++t) threads.emplace_back(worker);
      for (auto& t : threads) t.join();
    }

    for (std::size_t ep = 0; ep < batch; ++ep) {
      if (!failures[ep]) continue;
      try {
        std::rethrow_exception(failures[ep]);
      } catch (const std::exception& e) {
        throw SearchError("oracle failed at iteration " + std::to_string(iteration) + ": " +
                          e.what());
      }
    }

    double sum = 0.0;
    std::size_t best_ep = 0;
    for (std::size_t ep = 0; ep < batch; ++ep) {
      generator->observe(current, designs[ep], fitness[ep]);
      sum += fitness[ep];
      if (fitness[ep] > fitness[best_ep]) best_ep = ep;
    }
    const double mean = sum / static_cast<double>(batch);
    values[current.label()] = mean;
    result.trajectory.push_back({iteration, current, mean, fitness[best_ep], designs[best_ep]});

    Rng move_rng = make_stream(config.seed, {kTagMove, static_cast<std::uint64_t>(iteration)});
    current = epsilon_greedy_step(current, values, lattice, config.grid_k, config.epsilon,
                                  move_rng);
  }

  result.final_point = current;
  result.final_values = std::move(values);
  return result;
}

}  // namespace symdesign
