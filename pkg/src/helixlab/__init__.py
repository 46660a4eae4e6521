"""helixlab: directed-graph toolkit for cyclic decompositions, helix covers,
and hereditary-class experiments."""

from .decomposition import (
    D_LABEL,
    DecompositionReport,
    Labeling,
    find_full_directed_labeling,
    hereditary_scan,
    is_cyclically_indecomposable,
    linear_components,
    verify_decomposition,
)
from .digraph import (
    CycleWitness,
    DiGraph,
    GraphError,
    VertexMap,
    compose_maps,
    enumerate_cycles,
    find_weak_embedding,
    girth,
    graph_from_edges,
    identity_map,
    induced_subgraph,
    is_graph_homomorphism,
    topological_extension,
    weak_components,
)
from .formats import (
    FormatError,
    parse_graph,
    parse_labeling,
    serialize_graph,
    serialize_labeling,
    to_dot,
)
from .generators import (
    NKParams,
    circle_sample,
    figure4_graph,
    make_linear_order,
    make_nk_cycle,
    random_dag,
    random_digraph,
    subsample_cycle,
)
from .helix import (
    BudgetExceeded,
    HelixCover,
    build_helix_cover,
    classify_cover,
    cycle_removal_step,
    fiber_labeling,
    lift_cycle_exists,
    raise_girth,
)
from .hereditary import (
    ClosureReport,
    Filtration,
    FiltrationStuck,
    ForbiddenFamily,
    Parallelogram,
    ParallelogramVerdict,
    build_filtration,
    build_parallelogram,
    check_filtration,
    closure_violation_search,
    in_class,
    min_ell2_search,
    parallelogram_verdict,
    pigeonhole_ell2,
    predicted_cover_size,
)

__all__ = [name for name in dir() if not name.startswith("_")]

__version__ = "0.1.0"
