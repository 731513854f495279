"""Dihedral-symmetry robot design: subgroup lattices, orbit-constrained
projections, and structured epsilon-greedy symmetry search."""

from ._core import (
    DesignGraph,
    DihedralElement,
    ElementKind,
    Subgroup,
    SubgroupLattice,
    SymdesignError,
    SymmetryPoint,
    build_lattice,
    compose,
    decomposition_check,
    enumerate_subgroups,
    full_group,
    generate_subgroup,
    initial_design,
    is_symmetric,
    neighbors,
    orbits,
    parse_point,
    project_vectors,
    project_vectors_blend,
    run_search_json,
    subgroup_count_formula,
    subgroup_from_label,
    symmetrize_json,
    transform_design,
    trivial_subgroup,
    verify,
    __version__,
)

__all__ = [
    "DesignGraph",
    "DihedralElement",
    "ElementKind",
    "Subgroup",
    "SubgroupLattice",
    "SymdesignError",
    "SymmetryPoint",
    "build_lattice",
    "compose",
    "decomposition_check",
    "enumerate_subgroups",
    "full_group",
    "generate_subgroup",
    "initial_design",
    "is_symmetric",
    "neighbors",
    "orbits",
    "parse_point",
    "project_vectors",
    "project_vectors_blend",
    "run_search_json",
    "subgroup_count_formula",
    "subgroup_from_label",
    "symmetrize_json",
    "transform_design",
    "trivial_subgroup",
    "verify",
    "__version__",
]
