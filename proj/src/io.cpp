#include "symdesign/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace symdesign {

using nlohmann::json;

std::string format_double(double value) {
  if (!std::isfinite(value)) {
    throw Error("cannot serialize non-finite number");
  }
  if (value == 0.0) return "0";
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

namespace {

void dump_value(const json& value, std::string& out, int depth) {
  const std::string pad(static_cast<std::size_t>(depth) * 2, ' ');
  const std::string inner_pad(static_cast<std::size_t>(depth + 1) * 2, ' ');
  switch (value.type()) {
    case json::value_t::object: {
      if (value.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (auto it = value.begin(); it != value.end(); ++it) {
        if (!first) out += ",\n";
        first = false;
        out += inner_pad + json(it.key()).dump() + ": ";
        dump_value(it.value(), out, depth + 1);
      }
      out += "\n" + pad + "}";
      return;
    }
    case json::value_t::array: {
      if (value.empty()) {
        out += "[]";
        return;
      }
      out += "[\n";
      bool first = true;
      for (const auto& item : value) {
        if (!first) out += ",\n";
        first = false;
        out += inner_pad;
        dump_value(item, out, depth + 1);
      }
      out += "\n" + pad + "]";
      return;
    }
    case json::value_t::number_float:
      out += format_double(value.get<double>());
      return;
    default:
      out += value.dump();
      return;
  }
}

double require_number(const json& value, const std::string& context) {
  if (!value.is_number()) throw ParseError(context + " must be a number");
  return value.get<double>();
}

int require_int(const json& value, const std::string& context) {
  if (!value.is_number_integer()) throw ParseError(context + " must be an integer");
  return value.get<int>();
}

const json& require_key(const json& object, const std::string& key, const std::string& context) {
  auto it = object.find(key);
  if (it == object.end()) throw ParseError(context + " is missing \"" + key + "\"");
  return *it;
}

}  // namespace

std::string canonical_dump(const json& value) {
  std::string out;
  dump_value(value, out, 0);
  out += "\n";
  return out;
}

json design_to_json(const DesignGraph& design) {
  json joints = json::array();
  for (const Joint& j : design.joints()) {
    json scalars = json::object();
    for (const auto& [name, value] : j.scalars) scalars[name] = value;
    json entry = {
        {"id", j.id},
        {"layer", j.layer},
        {"sibling_index", j.sibling_index},
        {"scalars", scalars},
        {"vector", json::array({j.vector.x, j.vector.y})},
        {"z", j.z},
    };
    if (j.parent == kTorso) {
      entry["parent"] = "torso";
    } else {
      entry["parent"] = j.parent;
    }
    joints.push_back(std::move(entry));
  }
  return json{{"n", design.n()}, {"joints", std::move(joints)}};
}

DesignGraph design_from_json(const json& value) {
  if (!value.is_object()) throw ParseError("design must be a JSON object");
  for (auto it = value.begin(); it != value.end(); ++it) {
    if (it.key() != "n" && it.key() != "joints") {
      throw ParseError("unknown design key \"" + it.key() + "\"");
    }
  }
  const int n = require_int(require_key(value, "n", "design"), "design n");
  const json& joints_json = require_key(value, "joints", "design");
  if (!joints_json.is_array()) throw ParseError("design joints must be an array");

  std::vector<Joint> joints;
  std::vector<std::string> names;
  bool first = true;
  for (const json& entry : joints_json) {
    if (!entry.is_object()) throw ParseError("design joint must be an object");
    for (auto it = entry.begin(); it != entry.end(); ++it) {
      static const std::vector<std::string> allowed = {"id",      "parent", "layer",
                                                       "sibling_index", "scalars", "vector", "z"};
      if (std::find(allowed.begin(), allowed.end(), it.key()) == allowed.end()) {
        throw ParseError("unknown joint key \"" + it.key() + "\"");
      }
    }
    Joint j;
    j.id = require_int(require_key(entry, "id", "joint"), "joint id");
    const json& parent = require_key(entry, "parent", "joint");
    if (parent.is_string()) {
      if (parent.get<std::string>() != "torso") {
        throw ParseError("joint parent must be an id or \"torso\"");
      }
      j.parent = kTorso;
    } else {
      j.parent = require_int(parent, "joint parent");
    }
    j.layer = require_int(require_key(entry, "layer", "joint"), "joint layer");
    j.sibling_index =
        require_int(require_key(entry, "sibling_index", "joint"), "joint sibling_index");
    const json& scalars = require_key(entry, "scalars", "joint");
    if (!scalars.is_object()) throw ParseError("joint scalars must be an object");
    std::vector<std::string> joint_names;
    for (auto it = scalars.begin(); it != scalars.end(); ++it) {
      j.scalars[it.key()] = require_number(it.value(), "scalar '" + it.key() + "'");
      joint_names.push_back(it.key());
    }
    if (first) {
      names = joint_names;
      first = false;
    } else if (names != joint_names) {
      throw ParseError("joint " + std::to_string(j.id) + " does not match the scalar schema");
    }
    const json& vec = require_key(entry, "vector", "joint");
    if (!vec.is_array() || vec.size() != 2) {
      throw ParseError("joint vector must be [x, y]");
    }
    j.vector = {require_number(vec[0], "vector x"), require_number(vec[1], "vector y")};
    j.z = require_number(require_key(entry, "z", "joint"), "joint z");
    joints.push_back(std::move(j));
  }
  try {
    return {n, std::move(joints), std::move(names)};
  } catch (const Error& e) {
    throw ParseError(std::string("invalid design: ") + e.what());
  }
}

std::string write_design(const DesignGraph& design) {
  return canonical_dump(design_to_json(design));
}

DesignGraph read_design(const std::string& text) {
  json value = json::parse(text, nullptr, false);
  if (value.is_discarded()) throw ParseError("design file is not valid JSON");
  return design_from_json(value);
}

SearchFileConfig search_config_from_json(const json& value) {
  if (!value.is_object()) throw ParseError("search config must be a JSON object");
  static const std::vector<std::string> allowed = {
      "n",      "k",          "epsilon",      "iterations", "batch_size", "n_skel",
      "n_attr", "generator",  "scalar_names", "seed",       "oracle"};
  for (auto it = value.begin(); it != value.end(); ++it) {
    if (std::find(allowed.begin(), allowed.end(), it.key()) == allowed.end()) {
      throw ParseError("unknown config key \"" + it.key() + "\"");
    }
  }
  SearchFileConfig out;
  out.search.n = require_int(require_key(value, "n", "config"), "config n");
  if (value.contains("k")) out.search.grid_k = require_int(value["k"], "config k");
  if (value.contains("epsilon")) {
    out.search.epsilon = require_number(value["epsilon"], "config epsilon");
  }
  out.search.iterations =
      require_int(require_key(value, "iterations", "config"), "config iterations");
  out.search.batch_size =
      require_int(require_key(value, "batch_size", "config"), "config batch_size");
  if (value.contains("n_skel")) out.search.n_skel = require_int(value["n_skel"], "config n_skel");
  if (value.contains("n_attr")) out.search.n_attr = require_int(value["n_attr"], "config n_attr");
  if (value.contains("scalar_names")) {
    if (!value["scalar_names"].is_array()) throw ParseError("scalar_names must be an array");
    out.search.scalar_names.clear();
    for (const json& name : value["scalar_names"]) {
      if (!name.is_string()) throw ParseError("scalar_names entries must be strings");
      out.search.scalar_names.push_back(name.get<std::string>());
    }
  }
  if (value.contains("seed")) {
    if (!value["seed"].is_number_integer()) throw ParseError("config seed must be an integer");
    out.search.seed = value["seed"].get<std::uint64_t>();
  }
  if (value.contains("generator")) {
    const json& gen = value["generator"];
    if (!gen.is_object()) throw ParseError("config generator must be an object");
    const std::string type =
        require_key(gen, "type", "generator").is_string() ? gen["type"].get<std::string>() : "";
    if (type == "random_rollout") {
      RandomRolloutParams params;
      if (gen.contains("p_add")) params.p_add = require_number(gen["p_add"], "p_add");
      if (gen.contains("p_del")) params.p_del = require_number(gen["p_del"], "p_del");
      if (gen.contains("scalar_sigma")) {
        params.scalar_sigma = require_number(gen["scalar_sigma"], "scalar_sigma");
      }
      if (gen.contains("vector_sigma")) {
        params.vector_sigma = require_number(gen["vector_sigma"], "vector_sigma");
      }
      out.search.generator = params;
    } else if (type == "hill_climb") {
      HillClimbParams params;
      if (gen.contains("population")) {
        params.population = require_int(gen["population"], "population");
      }
      if (gen.contains("mutation_sigma")) {
        params.mutation_sigma = require_number(gen["mutation_sigma"], "mutation_sigma");
      }
      out.search.generator = params;
    } else {
      throw ParseError("unknown generator type \"" + type + "\"");
    }
  }
  const json& oracle = require_key(value, "oracle", "config");
  if (!oracle.is_object()) throw ParseError("config oracle must be an object");
  const json& oracle_type = require_key(oracle, "type", "oracle");
  if (!oracle_type.is_string() || oracle_type.get<std::string>() != "planted_symmetry") {
    throw ParseError("oracle type must be \"planted_symmetry\"");
  }
  const json& g_star = require_key(oracle, "g_star", "oracle");
  if (!g_star.is_string()) throw ParseError("oracle g_star must be a subgroup label");
  out.oracle.g_star = g_star.get<std::string>();
  if (oracle.contains("lambda_struct")) {
    out.oracle.lambda_struct = require_number(oracle["lambda_struct"], "lambda_struct");
  }
  if (oracle.contains("noise_sigma")) {
    out.oracle.noise_sigma = require_number(oracle["noise_sigma"], "noise_sigma");
  }
  return out;
}

json search_config_to_json(const SearchFileConfig& config) {
  json generator;
  if (const auto* params = std::get_if<RandomRolloutParams>(&config.search.generator)) {
    generator = {{"type", "random_rollout"},
                 {"p_add", params->p_add},
                 {"p_del", params->p_del},
                 {"scalar_sigma", params->scalar_sigma},
                 {"vector_sigma", params->vector_sigma}};
  } else {
    const auto& hill = std::get<HillClimbParams>(config.search.generator);
    generator = {{"type", "hill_climb"},
                 {"population", hill.population},
                 {"mutation_sigma", hill.mutation_sigma}};
  }
  return json{{"n", config.search.n},
              {"k", config.search.grid_k},
              {"epsilon", config.search.epsilon},
              {"iterations", config.search.iterations},
              {"batch_size", config.search.batch_size},
              {"n_skel", config.search.n_skel},
              {"n_attr", config.search.n_attr},
              {"generator", std::move(generator)},
              {"scalar_names", config.search.scalar_names},
              {"seed", config.search.seed},
              {"oracle",
               {{"type", "planted_symmetry"},
                {"g_star", config.oracle.g_star},
                {"lambda_struct", config.oracle.lambda_struct},
                {"noise_sigma", config.oracle.noise_sigma}}}};
}

json result_to_json(const SearchResult& result, const SearchFileConfig& config) {
  json trajectory = json::array();
  for (const TrajectoryEntry& entry : result.trajectory) {
    trajectory.push_back({{"iteration", entry.iteration},
                          {"point", entry.point.label()},
                          {"display", entry.point.display()},
                          {"mean_fitness", entry.mean_fitness},
                          {"best_fitness", entry.best_fitness},
                          {"best_design", design_to_json(entry.best_design)}});
  }
  json values = json::object();
  for (const auto& [label, value] : result.final_values) values[label] = value;
  return json{{"config", search_config_to_json(config)},
              {"final_point", result.final_point.label()},
              {"final_display", result.final_point.display()},
              {"final_nearest_subgroup", result.final_point.nearest_subgroup().label().to_string()},
              {"final_values", std::move(values)},
              {"trajectory", std::move(trajectory)}};
}

std::string result_csv(const SearchResult& result) {
  std::string out = "iteration,point,mean_fitness,best_fitness\n";
  for (const TrajectoryEntry& entry : result.trajectory) {
    out += std::to_string(entry.iteration) + ",\"" + entry.point.label() + "\"," +
           format_double(entry.mean_fitness) + "," + format_double(entry.best_fitness) + "\n";
  }
  return out;
}

std::string subgroup_listing(const std::vector<Subgroup>& subgroups) {
  std::string out;
  for (const Subgroup& g : subgroups) {
    out += g.label().to_string() + " := {";
    bool first = true;
    for (const DihedralElement& e : g.elements()) {
      if (!first) out += ",";
      first = false;
      out += e.to_string();
    }
    out += "}\n";
  }
  return out;
}

std::string lattice_to_dot(const SubgroupLattice& lattice, int grid_k) {
  if (grid_k < 1) throw ConfigError("interval count K must be >= 1");
  std::string out = "digraph subgroup_lattice {\n  rankdir=BT;\n  node [shape=box];\n";
  for (const Subgroup& g : lattice.nodes) {
    out += "  \"" + g.label().to_string() + "\";\n";
  }
  for (const auto& [lo, hi] : lattice.covers) {
    const std::string lower = lattice.nodes[static_cast<std::size_t>(lo)].label().to_string();
    const std::string upper = lattice.nodes[static_cast<std::size_t>(hi)].label().to_string();
    if (grid_k == 1) {
      out += "  \"" + lower + "\" -> \"" + upper + "\";\n";
      continue;
    }
    // chain lower -> j=K-1 -> ... -> j=1 -> upper through the grid points
    std::vector<std::string> chain;
    chain.push_back(lower);
    for (int j = grid_k - 1; j >= 1; --j) {
      const std::string mid = "mid(" + lower + "," + upper + "," + std::to_string(j) + "," +
                              std::to_string(grid_k) + ")";
      out += "  \"" + mid + "\" [shape=point, label=\"\"];\n";
      chain.push_back(mid);
    }
    chain.push_back(upper);
    for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
      out += "  \"" + chain[i] + "\" -> \"" + chain[i + 1] + "\";\n";
    }
  }
  out += "}\n";
  return out;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write file: " + path);
  out << text;
  if (!out.good()) throw Error("failed writing file: " + path);
}

}  // namespace symdesign
