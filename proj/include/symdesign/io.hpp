#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "symdesign/search.hpp"

namespace symdesign {

/// Canonical float formatting: up to 17 significant digits, enough to
/// round-trip any double; negative zero is normalized away.
std::string format_double(double value);

/// Deterministic JSON text: keys sorted, numbers through format_double,
/// two-space indentation. Identical values always produce identical bytes.
std::string canonical_dump(const nlohmann::json& value);

nlohmann::json design_to_json(const DesignGraph& design);
DesignGraph design_from_json(const nlohmann::json& value);

std::string write_design(const DesignGraph& design);
DesignGraph read_design(const std::string& text);

/// Planted-oracle settings carried by a search config file.
struct OracleSpec {
  std::string g_star = "H1.0";
  double lambda_struct = 1.0;
  double noise_sigma = 0.0;
};

struct SearchFileConfig {
  SearchConfig search;
  OracleSpec oracle;
};

/// Strict parser for the search config file; unknown keys are errors. The
/// execution-only `threads` knob is never serialized back.
SearchFileConfig search_config_from_json(const nlohmann::json& value);
nlohmann::json search_config_to_json(const SearchFileConfig& config);

nlohmann::json result_to_json(const SearchResult& result, const SearchFileConfig& config);
std::string result_csv(const SearchResult& result);

/// "LABEL := {r0,p0}" lines in canonical subgroup order.
std::string subgroup_listing(const std::vector<Subgroup>& subgroups);

/// Hasse diagram of the lattice; with grid_k > 1 every covering edge runs
/// through its interior grid points, drawn as small unlabeled nodes.
std::string lattice_to_dot(const SubgroupLattice& lattice, int grid_k = 1);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace symdesign
