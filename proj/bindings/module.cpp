#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "symdesign/io.hpp"
#include "symdesign/verify.hpp"

namespace py = pybind11;
using namespace symdesign;

namespace {

std::vector<std::vector<double>> mat_to_rows(const Mat2& m) {
  return {{m.a, m.b}, {m.c, m.d}};
}

CoordinateMatrix columns_from_python(const std::vector<std::pair<double, double>>& cols) {
  CoordinateMatrix c;
  c.reserve(cols.size());
  for (const auto& [x, y] : cols) c.push_back({x, y});
  return c;
}

std::vector<std::pair<double, double>> columns_to_python(const CoordinateMatrix& c) {
  std::vector<std::pair<double, double>> out;
  out.reserve(c.size());
  for (const Vec2& v : c) out.emplace_back(v.x, v.y);
  return out;
}

SymmetryPoint point_from_label(const std::string& label, int n) {
  return parse_point(label, build_lattice(n));
}

std::string symmetrize_json(const std::string& design_json, const std::string& point_label) {
  const DesignGraph design = read_design(design_json);
  const SymmetryPoint point = point_from_label(point_label, design.n());
  return write_design(symmetrize_existing(design, point));
}

std::pair<std::string, std::string> run_search_json(const std::string& config_json, int threads) {
  nlohmann::json parsed = nlohmann::json::parse(config_json, nullptr, false);
  if (parsed.is_discarded()) throw ParseError("config is not valid JSON");
  SearchFileConfig config = search_config_from_json(parsed);
  config.search.threads = threads;
  const SubgroupLattice lattice = build_lattice(config.search.n);
  const SymmetryPoint planted = parse_point(config.oracle.g_star, lattice);
  const auto oracle = planted_symmetry_oracle(planted.pure_subgroup(),
                                              config.oracle.lambda_struct,
                                              config.oracle.noise_sigma);
  const SearchResult result = run_search(config.search, *oracle);
  return {canonical_dump(result_to_json(result, config)), result_csv(result)};
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "dihedral-symmetry robot design: subgroup lattices, orbit-constrained "
            "projections, and structured symmetry search";

  py::register_exception<Error>(m, "SymdesignError", PyExc_ValueError);

  py::enum_<ElementKind>(m, "ElementKind")
      .value("Rotation", ElementKind::Rotation)
      .value("Reflection", ElementKind::Reflection);

  py::class_<DihedralElement>(m, "DihedralElement")
      .def_static("rotation", &DihedralElement::rotation, py::arg("n"), py::arg("k"))
      .def_static("reflection", &DihedralElement::reflection, py::arg("n"), py::arg("k"))
      .def_static("identity", &DihedralElement::identity, py::arg("n"))
      .def_property_readonly("n", &DihedralElement::n)
      .def_property_readonly("k", &DihedralElement::k)
      .def_property_readonly("is_rotation", &DihedralElement::is_rotation)
      .def_property_readonly("is_reflection", &DihedralElement::is_reflection)
      .def_property_readonly("is_identity", &DihedralElement::is_identity)
      .def("inverse", [](const DihedralElement& g) { return inverse(g); })
      .def("matrix", [](const DihedralElement& g) { return mat_to_rows(matrix_rep(g)); })
      .def("perm", [](const DihedralElement& g) { return perm_rep(g).image; })
      .def("__mul__", [](const DihedralElement& a, const DihedralElement& b) {
        return compose(a, b);
      })
      .def("__eq__", [](const DihedralElement& a, const DihedralElement& b) { return a == b; })
      .def("__repr__", &DihedralElement::to_string);

  py::class_<Subgroup>(m, "Subgroup")
      .def_property_readonly("n", &Subgroup::n)
      .def_property_readonly("order", &Subgroup::order)
      .def_property_readonly("label", [](const Subgroup& g) { return g.label().to_string(); })
      .def_property_readonly("elements", &Subgroup::elements)
      .def("contains", &Subgroup::contains)
      .def("subset_of", &Subgroup::subset_of)
      .def("__eq__", [](const Subgroup& a, const Subgroup& b) { return a == b; })
      .def("__repr__", [](const Subgroup& g) { return g.label().to_string(); });

  m.def("compose", &compose);
  m.def("generate_subgroup", &generate_subgroup, py::arg("n"), py::arg("generators"));
  m.def("enumerate_subgroups", &enumerate_subgroups, py::arg("n"));
  m.def("subgroup_from_label", [](int n, const std::string& label) {
    return subgroup_from_label(n, parse_subgroup_label(label));
  });
  m.def("subgroup_count_formula", &subgroup_count_formula);
  m.def("trivial_subgroup", &trivial_subgroup);
  m.def("full_group", &full_group);

  py::class_<SubgroupLattice>(m, "SubgroupLattice")
      .def_property_readonly("n", [](const SubgroupLattice& l) { return l.n; })
      .def_property_readonly("nodes", [](const SubgroupLattice& l) { return l.nodes; })
      .def_property_readonly("covers",
                             [](const SubgroupLattice& l) {
                               std::vector<std::pair<std::string, std::string>> out;
                               for (const auto& [lo, hi] : l.covers) {
                                 out.emplace_back(l.nodes[lo].label().to_string(),
                                                  l.nodes[hi].label().to_string());
                               }
                               return out;
                             })
      .def("to_dot", [](const SubgroupLattice& l, int k) { return lattice_to_dot(l, k); },
           py::arg("grid_k") = 1);

  m.def("build_lattice", [](int n) { return build_lattice(n); }, py::arg("n"));

  py::class_<SymmetryPoint>(m, "SymmetryPoint")
      .def_static("pure", &SymmetryPoint::pure)
      .def_static("interpolated", &SymmetryPoint::interpolated, py::arg("lower"),
                  py::arg("upper"), py::arg("j"), py::arg("grid_k"))
      .def_property_readonly("is_pure", &SymmetryPoint::is_pure)
      .def_property_readonly("label", &SymmetryPoint::label)
      .def_property_readonly("display", &SymmetryPoint::display)
      .def_property_readonly("beta", &SymmetryPoint::beta)
      .def_property_readonly("governing", &SymmetryPoint::governing)
      .def_property_readonly("nearest_subgroup", &SymmetryPoint::nearest_subgroup)
      .def("__eq__", [](const SymmetryPoint& a, const SymmetryPoint& b) { return a == b; })
      .def("__repr__", &SymmetryPoint::label);

  m.def("parse_point", [](const std::string& text, int n) { return point_from_label(text, n); },
        py::arg("text"), py::arg("n"));
  m.def("neighbors",
        [](const SymmetryPoint& point, int grid_k) {
          return neighbors(point, build_lattice(point.n()), grid_k);
        },
        py::arg("point"), py::arg("grid_k"));

  py::class_<DesignGraph>(m, "DesignGraph")
      .def_property_readonly("n", &DesignGraph::n)
      .def_property_readonly("size", &DesignGraph::size)
      .def("to_json", [](const DesignGraph& d) { return write_design(d); })
      .def_static("from_json", [](const std::string& text) { return read_design(text); })
      .def("__eq__", [](const DesignGraph& a, const DesignGraph& b) { return a == b; });

  m.def("initial_design", &initial_design, py::arg("n"),
        py::arg("scalar_names") = std::vector<std::string>{});
  m.def("orbits", [](const DesignGraph& d, const Subgroup& g) { return orbits(d, g).orbits; });
  m.def("transform_design", &transform_design);
  m.def("is_symmetric", &is_symmetric, py::arg("design"), py::arg("group"),
        py::arg("tol") = 1e-9);

  m.def("project_vectors",
        [](const std::vector<std::pair<double, double>>& cols, const Subgroup& group,
           const DesignGraph& design) {
          return columns_to_python(project_vectors(columns_from_python(cols), group, design));
        });
  m.def("project_vectors_blend",
        [](const std::vector<std::pair<double, double>>& cols, const Subgroup& lower,
           const Subgroup& upper, double beta, const DesignGraph& design) {
          return columns_to_python(
              project_vectors_blend(columns_from_python(cols), lower, upper, beta, design));
        });
  m.def("decomposition_check",
        [](const Subgroup& lower, const Subgroup& upper,
           const std::vector<std::pair<double, double>>& cols, const DesignGraph& design) {
          return decomposition_check(lower, upper, columns_from_python(cols), design);
        });

  m.def("symmetrize_json", &symmetrize_json, py::arg("design_json"), py::arg("point_label"));
  m.def("run_search_json", &run_search_json, py::arg("config_json"), py::arg("threads") = 1);
  m.def("verify",
        [](int n_min, int n_max, int trials, std::uint64_t seed) {
          const VerifyReport report = run_verification({n_min, n_max, trials, seed});
          return std::make_pair(report.all_passed, report.text);
        },
        py::arg("n_min") = 3, py::arg("n_max") = 8, py::arg("trials") = 1000,
        py::arg("seed") = 42);

#ifdef VERSION_INFO
  m.attr("__version__") = VERSION_INFO;
#else
  m.attr("__version__") = "0.1.0";
#endif
}
