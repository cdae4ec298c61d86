"""Rainbow connection numbers of commuting graphs of finite groups."""

from .classifier import CrossCheck, classify_rc, cross_check
from .commuting import (
    MasCatalog,
    common_intersection_collections,
    commuting_graph,
    isolated_involutions,
    largest_collection,
    mas_by_centralizer_oracle,
    maximal_abelian_subgroups,
)
from .constructions import (
    ConstructionReport,
    color_nontrivial_center,
    color_pstar,
    color_trivial_center_small_t,
    color_trivial_center_t,
    color_tuple_two,
    hub_ordering,
)
from .families import builtin_groups, builtin_specs, parse_group_spec
from .graphs import (
    UndirectedGraph,
    complete_graph,
    complete_multipartite_graph,
    cycle_graph,
    diameter,
    export_dot,
    export_json,
    maximal_cliques,
    parse_graph_json,
    path_graph,
    pendant_count,
    star_graph,
)
from .groups import (
    ElementSet,
    FiniteGroup,
    build_from_cayley,
    center,
    centralizer,
    involutions,
    is_abelian,
    load_cayley,
    make_alternating,
    make_cyclic,
    make_dihedral,
    make_direct_product,
    make_generalized_quaternion,
    make_semidihedral,
    make_symmetric,
    save_cayley,
)
from .rainbow import (
    EdgeColoring,
    RcVerdict,
    SearchConfig,
    is_rainbow_connected,
    load_coloring,
    rainbow_path,
    rc_complete_multipartite,
    rc_exact,
    rc_lower_bound,
    save_coloring,
)

__version__ = "0.1.0"
