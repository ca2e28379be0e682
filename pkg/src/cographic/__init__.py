"""Cographic toric rings of graphs, their singularities, and Reid--Tai checks.

The main entry points are re-exported here::

    >>> from cographic import cycle_graph, analyze
    >>> r = analyze(cycle_graph(3))
    >>> (r.dimension, r.tangent_dimension, r.multiplicity)
    (4, 5, 2)
"""

__version__ = "0.1.0"

from .cones import (
    Cone,
    ConeClassification,
    ConeError,
    Lattice,
    PiPolytope,
    classify_cone,
    dual_cone,
    extremal_rays,
    hilbert_basis,
    lattice_points_in_polytope,
    pi_polytope,
    primitive,
    subdiagram_volume,
)
from .graph import (
    Graph,
    GraphError,
    GraphFormatError,
    Orientation,
    OrientedEdge,
    bouquet,
    circuits,
    contract_and_delete,
    cycle_graph,
    doubled_graph,
    format_graph,
    is_connected,
    is_totally_cyclic,
    is_tree_like,
    loop_graph,
    parse_graph,
    path_graph,
    read_graph,
    separating_edges,
    thick_edge,
)
from .homology import (
    Chain1,
    Cycle,
    OrChain1,
    OrCycle,
    boundary_ordinary,
    boundary_oriented,
    cycle_basis,
    doubled_homology_iso,
    kernel_to_ordinary,
    oriented_cycle_lattice,
)
from .jacobian import (
    LocalStructureReport,
    SheafDatum,
    StableDualGraph,
    elliptic_tail_ages,
    gamma_of,
    local_report,
    parse_dual_graph,
    tail_splitting,
)
from .reid_tai import (
    CyclicAction,
    GroupElementSpec,
    age,
    check_descent,
    classify_cyclic_toric_quotient,
    classify_smooth_quotient,
    cyclic_reduction,
    extend_lattice,
    is_pseudo_reflection,
)
from .ring import (
    InternalConsistencyError,
    PairElem,
    RingPresentation,
    SemigroupElem,
    SingularityReport,
    analyze,
    cographic_cone,
    invariant_ring_oracle,
    pair_to_semigroup,
    presentation,
    psi,
    section,
    semigroup_add,
    semigroup_to_pair,
)
