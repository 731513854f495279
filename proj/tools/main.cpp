#include <cstdint>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "symdesign/io.hpp"
#include "symdesign/verify.hpp"

namespace {

using namespace symdesign;

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;

int cmd_subgroups(int n) {
  std::cout << subgroup_listing(enumerate_subgroups(n));
  return kExitOk;
}

int cmd_lattice(int n, int grid_k, const std::string& dot_path) {
  const std::string dot = lattice_to_dot(build_lattice(n), grid_k);
  if (dot_path.empty()) {
    std::cout << dot;
  } else {
    write_text_file(dot_path, dot);
  }
  return kExitOk;
}

int cmd_neighbors(int n, const std::string& point_label, int grid_k) {
  const SubgroupLattice lattice = build_lattice(n);
  const SymmetryPoint point = parse_point(point_label, lattice);
  for (const SymmetryPoint& neighbor : neighbors(point, lattice, grid_k)) {
    std::cout << neighbor.label() << "\t" << neighbor.display() << "\n";
  }
  return kExitOk;
}

int cmd_symmetrize(const std::string& in_path, const std::string& point_label,
                   const std::string& out_path) {
  const DesignGraph design = read_design(read_text_file(in_path));
  const SubgroupLattice lattice = build_lattice(design.n());
  const SymmetryPoint point = parse_point(point_label, lattice);
  const DesignGraph projected = symmetrize_existing(design, point);
  write_text_file(out_path, write_design(projected));
  return kExitOk;
}

int cmd_check(const std::string& in_path, const std::string& group_label, double tol) {
  const DesignGraph design = read_design(read_text_file(in_path));
  const SubgroupLattice lattice = build_lattice(design.n());
  const SymmetryPoint point = parse_point(group_label, lattice);
  if (!point.is_pure()) {
    throw ParseError("check needs a subgroup label, not an interpolated point");
  }
  if (is_symmetric(design, point.pure_subgroup(), tol)) {
    std::cout << "symmetric under " << group_label << " (tol " << format_double(tol) << ")\n";
    return kExitOk;
  }
  std::cout << "NOT symmetric under " << group_label << " (tol " << format_double(tol) << ")\n";
  return kExitCheckFailed;
}

int cmd_search(const std::string& config_path, const std::string& out_path,
               const std::string& csv_path, std::int64_t seed_override, bool has_seed,
               int threads) {
  nlohmann::json config_json = nlohmann::json::parse(read_text_file(config_path), nullptr, false);
  if (config_json.is_discarded()) {
    throw ParseError("config file is not valid JSON: " + config_path);
  }
  SearchFileConfig config = search_config_from_json(config_json);
  if (has_seed) config.search.seed = static_cast<std::uint64_t>(seed_override);
  config.search.threads = threads;

  const SubgroupLattice lattice = build_lattice(config.search.n);
  const SymmetryPoint planted = parse_point(config.oracle.g_star, lattice);
  if (!planted.is_pure()) {
    throw ParseError("oracle g_star must be a subgroup label");
  }
  const auto oracle = planted_symmetry_oracle(planted.pure_subgroup(),
                                              config.oracle.lambda_struct,
                                              config.oracle.noise_sigma);
  const SearchResult result = run_search(config.search, *oracle);
  write_text_file(out_path, canonical_dump(result_to_json(result, config)));
  if (!csv_path.empty()) {
    write_text_file(csv_path, result_csv(result));
  }
  std::cout << "final point: " << result.final_point.label() << " ("
            << result.final_point.display() << ")\n";
  return kExitOk;
}

int cmd_verify(const VerifyOptions& options, const std::string& out_path) {
  const VerifyReport report = run_verification(options);
  std::cout << report.text;
  if (!out_path.empty()) {
    write_text_file(out_path, report.text);
  }
  return report.all_passed ? kExitOk : kExitCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"dihedral-symmetry design tools: subgroup lattices, orbit-constrained\n"
               "design projection, and structured epsilon-greedy symmetry search"};
  app.require_subcommand(1);

  int n = 4;
  int grid_k = 1;
  std::string point_label;
  std::string in_path;
  std::string out_path;
  std::string csv_path;
  std::string dot_path;
  double tol = 1e-9;
  std::int64_t seed = 0;
  int threads = 1;
  VerifyOptions verify_options;

  auto* subgroups = app.add_subcommand("subgroups", "list the subgroups of Dih_n");
  subgroups->add_option("--n", n, "group order parameter")->required()->check(CLI::Range(3, 32));

  auto* lattice = app.add_subcommand("lattice", "export the subgroup covering lattice as DOT");
  lattice->add_option("--n", n, "group order parameter")->required()->check(CLI::Range(3, 32));
  lattice->add_option("--k", grid_k, "grid intervals per covering edge")->check(CLI::Range(1, 64));
  lattice->add_option("--dot", dot_path, "output path (stdout when omitted)");

  auto* nbrs = app.add_subcommand("neighbors", "print the neighborhood of a symmetry point");
  nbrs->add_option("--n", n, "group order parameter")->required()->check(CLI::Range(3, 32));
  nbrs->add_option("--point", point_label, "point label, e.g. K0 or mid(H4,K0,1,3)")->required();
  nbrs->add_option("--k", grid_k, "grid intervals per covering edge")->check(CLI::Range(1, 64));

  auto* symmetrize = app.add_subcommand(
      "symmetrize", "project a design's attributes onto a symmetry point's space");
  symmetrize->add_option("--design", in_path, "input design JSON")->required();
  symmetrize->add_option("--point", point_label, "symmetry point label")->required();
  symmetrize->add_option("--out", out_path, "output design JSON")->required();

  auto* check = app.add_subcommand("check", "test a design for subgroup symmetry (exit 0/1)");
  check->add_option("--design", in_path, "input design JSON")->required();
  check->add_option("--group", point_label, "subgroup label")->required();
  check->add_option("--tol", tol, "attribute tolerance");

  auto* search = app.add_subcommand("search", "run the structured symmetry search");
  search->add_option("--config", in_path, "search config JSON")->required();
  search->add_option("--out", out_path, "report JSON path")->required();
  search->add_option("--csv", csv_path, "optional per-iteration metrics CSV");
  auto* seed_opt = search->add_option("--seed", seed, "override the config seed");
  search->add_option("--threads", threads, "parallel batch evaluation")->check(CLI::Range(1, 256));

  auto* verify = app.add_subcommand("verify", "run the full property suite (exit 0/1)");
  verify->add_option("--n-min", verify_options.n_min, "smallest n")->check(CLI::Range(3, 32));
  verify->add_option("--n-max", verify_options.n_max, "largest n")->check(CLI::Range(3, 32));
  verify->add_option("--trials", verify_options.trials, "randomized trials")
      ->check(CLI::Range(1, 1000000));
  verify->add_option("--seed", verify_options.seed, "suite seed");
  verify->add_option("--out", out_path, "also write the report to a file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      return app.exit(e);  // --help
    }
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (subgroups->parsed()) return cmd_subgroups(n);
    if (lattice->parsed()) return cmd_lattice(n, grid_k, dot_path);
    if (nbrs->parsed()) return cmd_neighbors(n, point_label, grid_k);
    if (symmetrize->parsed()) return cmd_symmetrize(in_path, point_label, out_path);
    if (check->parsed()) return cmd_check(in_path, point_label, tol);
    if (search->parsed()) {
      return cmd_search(in_path, out_path, csv_path, seed, !seed_opt->empty(), threads);
    }
    if (verify->parsed()) return cmd_verify(verify_options, out_path);
  } catch (const symdesign::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
