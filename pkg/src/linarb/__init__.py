"""linarb: partition graph edges into few linear forests.

A linear forest is a disjoint union of paths.  This package colors the
edges of sparse graphs (2- and 3-degenerate) so that every color class
is a linear forest, using close to the obvious lower bound of
ceil(maxdeg/2) colors, and ships an independent verifier plus exact
brute-force search for small instances.
"""

from .color2deg import (
    MonoReport,
    color_2deg_dense,
    color_2deg_high,
    color_bipartite_2deg,
    color_partial2tree,
    find_configuration,
    hamiltonian_path_from,
)
from .color3deg import color_3deg
from .generate import (
    BenchRow,
    ExploreReport,
    bench_linear_scaling,
    enumerate_connected,
    explore_conjecture,
    format_bench,
    gen_bipartite_2deg,
    gen_maximal_2deg_maxdeg4,
    gen_partial2tree_maxdeg4,
    gen_random_tdeg,
    gen_subdivision,
    ops_slope,
)
from .graph import (
    BadHeader,
    BadVertexIndex,
    ContractError,
    DuplicateEdge,
    GraphFormatError,
    JournalError,
    MutableGraph,
    SelfLoop,
    parse_graph,
    write_graph,
)
from .state import (
    ColoringState,
    LinearColoring,
    parse_coloring,
    write_coloring,
)
from .verify import (
    ClassReport,
    EdgeCapExceeded,
    VerifyReport,
    acyclic_by_dfs,
    brute_force_chi_l,
    class_checks,
    count_mono_and_pairs,
    exists_k_linear,
    validate_pairs,
    verify_linear_coloring,
)

__version__ = "0.1.0"

__all__ = [
    "BadHeader",
    "BadVertexIndex",
    "BenchRow",
    "ClassReport",
    "ColoringState",
    "ContractError",
    "DuplicateEdge",
    "EdgeCapExceeded",
    "ExploreReport",
    "GraphFormatError",
    "JournalError",
    "LinearColoring",
    "MonoReport",
    "MutableGraph",
    "SelfLoop",
    "VerifyReport",
    "acyclic_by_dfs",
    "bench_linear_scaling",
    "brute_force_chi_l",
    "class_checks",
    "color_2deg_dense",
    "color_2deg_high",
    "color_3deg",
    "color_bipartite_2deg",
    "color_partial2tree",
    "count_mono_and_pairs",
    "enumerate_connected",
    "exists_k_linear",
    "explore_conjecture",
    "find_configuration",
    "format_bench",
    "gen_bipartite_2deg",
    "gen_maximal_2deg_maxdeg4",
    "gen_partial2tree_maxdeg4",
    "gen_random_tdeg",
    "gen_subdivision",
    "hamiltonian_path_from",
    "ops_slope",
    "parse_coloring",
    "parse_graph",
    "validate_pairs",
    "verify_linear_coloring",
    "write_coloring",
    "write_graph",
]
