"""Local structure of the universal compactified Jacobian at a boundary point.

A point is described by the dual graph of a stable curve (with a genus per
vertex) and the set ``sigma`` of nodes where the sheaf fails to be locally
free.  The toric part of the local ring is the cographic ring of the graph
obtained by contracting every edge outside ``sigma``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .graph import (
    Graph,
    GraphError,
    GraphFormatError,
    _parse_lines,
    content_lines,
    format_graph,
    is_connected,
    is_tree_like,
)
from .reid_tai import (
    GroupElementSpec,
    ages,
    classify_smooth_quotient,
    units,
)
from .ring import SingularityReport, analyze, cycle_coordinates, edge_pair_cycle


class UnstableCurveError(GraphError):
    pass


@dataclass(frozen=True)
class StableDualGraph:
    graph: Graph
    genera: tuple   # genus per vertex, aligned with graph.vertices

    def __init__(self, graph: Graph, genera: dict | Sequence[int] | None = None):
        if genera is None:
            gs = (0,) * graph.num_vertices
        elif isinstance(genera, dict):
            unknown = set(genera) - set(graph.vertices)
            if unknown:
                raise GraphError(f"genus given for unknown vertices {sorted(unknown)}")
            gs = tuple(int(genera.get(v, 0)) for v in graph.vertices)
        else:
            gs = tuple(int(x) for x in genera)
        if len(gs) != graph.num_vertices or any(x < 0 for x in gs):
            raise GraphError("one nonnegative genus per vertex is required")
        object.__setattr__(self, "graph", graph)
        object.__setattr__(self, "genera", gs)

    def genus_of(self, v: str) -> int:
        return self.genera[self.graph.vertex_index[v]]

    @property
    def total_genus(self) -> int:
        return self.graph.betti_number + sum(self.genera)

    def valence(self, v: str) -> int:
        return sum((e.source == v) + (e.target == v) for e in self.graph.edges)

    def unstable_vertices(self) -> list[str]:
        return [v for v in self.graph.vertices
                if 2 * self.genus_of(v) - 2 + self.valence(v) <= 0]

    def check_stable(self) -> None:
        if not is_connected(self.graph):
            raise UnstableCurveError("dual graph must be connected")
        if self.total_genus < 2:
            raise UnstableCurveError(f"total genus {self.total_genus} is below 2")
        bad = self.unstable_vertices()
        if bad:
            raise UnstableCurveError(f"unstable vertices: {', '.join(bad)}")


@dataclass(frozen=True)
class SheafDatum:
    sigma: frozenset
    stab_trivial: bool | None = None
    stab_elements: tuple = ()   # GroupElementSpec list, forwarded to the age criterion

    def __init__(self, sigma: Iterable[str], stab_trivial: bool | None = None,
                 stab_elements: Iterable[GroupElementSpec] = ()):
        object.__setattr__(self, "sigma", frozenset(str(e) for e in sigma))
        object.__setattr__(self, "stab_trivial", stab_trivial)
        object.__setattr__(self, "stab_elements", tuple(stab_elements))


def _check_sigma(datum: StableDualGraph, sheaf: SheafDatum) -> None:
    unknown = sheaf.sigma - set(datum.graph.edge_ids)
    if unknown:
        raise GraphError(f"sigma names unknown edges {sorted(unknown)}")


def contract_outside(datum: StableDualGraph, sigma: Iterable[str]) -> StableDualGraph:
    """Contract every edge not in ``sigma``; genera add up, and each contracted
    edge closing a cycle (in particular a loop) adds one to the genus."""
    g = datum.graph
    sigma = set(sigma)
    parent = {v: v for v in g.vertices}

    def find(x):
        while parent[x] != x:
            x = parent[x]
        return x

    extra: dict[str, int] = {}
    for e in g.edges:
        if e.id in sigma:
            continue
        a, b = find(e.source), find(e.target)
        if a == b:
            extra[a] = extra.get(a, 0) + 1
        else:
            lo, hi = sorted((a, b))
            parent[hi] = lo
            extra[lo] = extra.get(lo, 0) + extra.pop(hi, 0)
    reps = [v for v in g.vertices if find(v) == v]
    genus = {v: 0 for v in reps}
    for v in g.vertices:
        genus[find(v)] += datum.genus_of(v)
    for v, k in extra.items():
        genus[find(v)] += k
    edges = [(e.id, find(e.source), find(e.target)) for e in g.edges if e.id in sigma]
    return StableDualGraph(Graph(reps, edges), genus)


def gamma_of(datum: StableDualGraph, sheaf: SheafDatum) -> Graph:
    """Graph whose edges are the nodes in ``sigma``, obtained by contracting the others."""
    if not is_connected(datum.graph):
        raise GraphError("dual graph must be connected")
    _check_sigma(datum, sheaf)
    return contract_outside(datum, sheaf.sigma).graph


@dataclass(frozen=True)
class TailSplitting:
    case: str                  # "2-I" (p in sigma) or "2-II" (p not in sigma)
    attaching_edge: str
    complement: Graph
    tail: Graph
    complement_dimension: int
    tail_dimension: int
    free_variables: int        # 1 for the T_p factor in case 2-I, else 0
    tail_ring: str             # "k[X_q,Y_q]" or "k" (or a general description)
    total_dimension: int

    def as_dict(self) -> dict:
        return {
            "case": self.case,
            "attaching_edge": self.attaching_edge,
            "complement": format_graph(self.complement),
            "tail": format_graph(self.tail),
            "complement_dimension": self.complement_dimension,
            "tail_dimension": self.tail_dimension,
            "free_variables": self.free_variables,
            "tail_ring": self.tail_ring,
            "total_dimension": self.total_dimension,
        }


def _restrict(datum: StableDualGraph, vertices: set[str]) -> StableDualGraph:
    g = datum.graph
    vs = [v for v in g.vertices if v in vertices]
    es = [(e.id, e.source, e.target) for e in g.edges if e.source in vertices and e.target in vertices]
    return StableDualGraph(Graph(vs, es), {v: datum.genus_of(v) for v in vs})


def _ring_dimension(g: Graph) -> int:
    return g.num_edges + g.betti_number if g.num_edges else 0


def tail_splitting(datum: StableDualGraph, sheaf: SheafDatum, tail_vertices: Iterable[str],
                   p_in_sigma: bool | None = None) -> TailSplitting:
    """Split the toric factor along a subcurve meeting the rest in one node ``p``."""
    _check_sigma(datum, sheaf)
    g = datum.graph
    tail = set(str(v) for v in tail_vertices)
    if not tail or not tail < set(g.vertices):
        raise GraphError("tail must be a nonempty proper subset of the vertices")
    crossing = [e for e in g.edges if (e.source in tail) != (e.target in tail)]
    if len(crossing) != 1:
        raise GraphError(f"tail meets its complement in {len(crossing)} edges, expected exactly one")
    p = crossing[0].id
    actual = p in sheaf.sigma
    if p_in_sigma is not None and p_in_sigma != actual:
        raise GraphError(f"p_in_sigma={p_in_sigma} contradicts sigma for edge {p}")
    rest = set(g.vertices) - tail
    tail_d = _restrict(datum, tail)
    comp_d = _restrict(datum, rest)
    tail_gamma = contract_outside(tail_d, sheaf.sigma & set(tail_d.graph.edge_ids)).graph
    comp_gamma = contract_outside(comp_d, sheaf.sigma & set(comp_d.graph.edge_ids)).graph
    td, cd = _ring_dimension(tail_gamma), _ring_dimension(comp_gamma)
    free = 1 if actual else 0
    loops = tail_gamma.loops()
    if tail_gamma.num_edges == 0:
        ring = "k"
    elif tail_gamma.num_edges == 1 and loops:
        q = loops[0]
        ring = f"k[X_{q},Y_{q}]"
    else:
        ring = f"U(graph with {tail_gamma.num_edges} edges)"
    return TailSplitting("2-I" if actual else "2-II", p, comp_gamma, tail_gamma, cd, td, free, ring,
                         cd + td + free)


@dataclass(frozen=True)
class LocalStructureReport:
    gamma: Graph
    toric_factor: SingularityReport
    finite_quotient_locus: bool
    smooth: bool | None
    total_genus: int
    splitting: TailSplitting | None = None
    stab_verdict: dict | None = None

    def as_dict(self) -> dict:
        return {
            "gamma": format_graph(self.gamma),
            "toric_factor": self.toric_factor.as_dict(),
            "finite_quotient_locus": self.finite_quotient_locus,
            "smooth": self.smooth,
            "total_genus": self.total_genus,
            "splitting": self.splitting.as_dict() if self.splitting else None,
            "stab_verdict": self.stab_verdict,
        }


def local_report(datum: StableDualGraph, sheaf: SheafDatum,
                 tail_vertices: Iterable[str] | None = None) -> LocalStructureReport:
    """Toric factor and smoothness verdicts at the point described by ``(datum, sheaf)``.

    ``smooth`` is only decided for total genus at least 4 and when the
    caller says whether the stabilizer is trivial; otherwise it is ``None``.
    """
    datum.check_stable()
    gamma = gamma_of(datum, sheaf)
    toric = analyze(gamma)
    tree_like = is_tree_like(gamma)
    smooth = None
    if datum.total_genus >= 4 and sheaf.stab_trivial is not None:
        smooth = tree_like and sheaf.stab_trivial
    splitting = tail_splitting(datum, sheaf, tail_vertices) if tail_vertices else None
    stab = None
    if sheaf.stab_elements:
        stab = classify_smooth_quotient(sheaf.stab_elements, no_pseudo_reflections_asserted=False).as_dict()
    return LocalStructureReport(gamma, toric, tree_like, smooth, datum.total_genus, splitting, stab)


def edge_cone_map(g: Graph) -> list[list[int]]:
    """Matrix of the map from the dual of the oriented cycle lattice to ``Z^E``
    sending the functional of ``e+`` (and of ``e-``) to the functional of ``e``.

    Row ``e`` evaluates a dual vector on ``e+ + e-``.
    """
    return [list(cycle_coordinates(g, edge_pair_cycle(g, e.id))) for e in g.edges]


# -- elliptic tails --------------------------------------------------------

# eigenvalue exponents of the automorphism on the smoothing directions of an
# elliptic tail, keyed by its order; "first"/"second" are the two forms
_M_BLOCKS = {
    2: {"first": (1, 0)},
    3: {"first": (1, 2), "second": (2, 1)},
    4: {"first": (1, 2), "second": (3, 2)},
    6: {"first": (5, 4), "second": (1, 2)},
}
# action on the direction smoothing the attaching node
_N_BLOCKS = {
    2: {"first": (1,)},
    3: {"first": (2,), "second": (1,)},
    4: {"first": (3,), "second": (1,)},
    6: {"first": (1,), "second": (5,)},
}
# extra block when the sheaf is not locally free at the tail's own node
_P_BLOCK = (1, 0)

TAIL_CASES = ("smooth_tail", "nodal_locally_free", "nodal_not_locally_free")


@dataclass(frozen=True)
class EllipticTailAges:
    order: int
    exponents: tuple
    ages: dict
    min_age: Fraction
    satisfies_rt: bool

    def as_dict(self) -> dict:
        return {
            "order": self.order,
            "exponents": list(self.exponents),
            "ages": {str(k): v for k, v in self.ages.items()},
            "min_age": self.min_age,
            "satisfies_rt": self.satisfies_rt,
        }


def elliptic_tail_combinations() -> list[tuple[int, str, str]]:
    out = []
    for n, forms in _M_BLOCKS.items():
        for variant in forms:
            out.append((n, variant, "smooth_tail"))
    out.append((2, "first", "nodal_locally_free"))
    out.append((2, "first", "nodal_not_locally_free"))
    return out


def elliptic_tail_ages(n: int, m_variant: str = "first", tail_case: str = "smooth_tail",
                       padding: int = 0) -> EllipticTailAges:
    """Minimal age of the elliptic-tail automorphism over all primitive roots."""
    if tail_case not in TAIL_CASES:
        raise ValueError(f"unknown tail case {tail_case!r}")
    if n not in _M_BLOCKS:
        raise ValueError(f"an elliptic tail automorphism has order 2, 3, 4 or 6, not {n}")
    if tail_case != "smooth_tail" and n != 2:
        raise ValueError("nodal elliptic tails only admit the involution (n = 2)")
    if m_variant not in _M_BLOCKS[n]:
        raise ValueError(f"no {m_variant!r} form for n = {n}")
    block = _M_BLOCKS[n][m_variant]
    if tail_case == "nodal_not_locally_free":
        block = block + _P_BLOCK
    else:
        block = block + _N_BLOCKS[n][m_variant]
    block = block + (0,) * padding
    spec = GroupElementSpec(n, block)
    by_k = dict(zip(units(n), ages(spec)))
    lo = min(by_k.values())
    return EllipticTailAges(n, block, by_k, lo, lo >= 1)


# -- dual-graph text format ------------------------------------------------


def parse_dual_graph(text: str, source: str = "<string>") -> tuple[StableDualGraph, SheafDatum]:
    """Graph format plus ``genus: v g`` lines and an optional ``sigma: e1 e2 ...`` line.

    Vertices without a genus line have genus 0; a missing sigma line means
    that the sheaf is locally free everywhere.
    """
    graph_lines = []
    genus_lines = []
    sigma = None
    sigma_line = None
    for lineno, line in content_lines(text):
        key = line.partition(":")[0].strip()
        if key == "genus":
            genus_lines.append((lineno, line.partition(":")[2].split()))
        elif key == "sigma":
            if sigma is not None:
                raise GraphFormatError("duplicate sigma line", source, lineno)
            sigma = line.partition(":")[2].replace(",", " ").split()
            sigma_line = lineno
        else:
            graph_lines.append((lineno, line))
    g = _parse_lines(graph_lines, source)
    genera = {}
    for lineno, fields in genus_lines:
        if len(fields) != 2:
            raise GraphFormatError("genus line needs a vertex and a genus", source, lineno)
        v, k = fields
        if v not in g.vertex_index:
            raise GraphFormatError(f"genus for undeclared vertex {v}", source, lineno)
        if v in genera:
            raise GraphFormatError(f"duplicate genus for vertex {v}", source, lineno)
        try:
            genera[v] = int(k)
        except ValueError:
            raise GraphFormatError(f"genus {k!r} is not an integer", source, lineno) from None
        if genera[v] < 0:
            raise GraphFormatError("genus must be nonnegative", source, lineno)
    sigma = sigma or []
    for e in sigma:
        if e not in g.edge_index:
            raise GraphFormatError(f"sigma names unknown edge {e}", source, sigma_line)
    return StableDualGraph(g, genera), SheafDatum(sigma)


def format_dual_graph(datum: StableDualGraph, sheaf: SheafDatum | None = None) -> str:
    out = format_graph(datum.graph)
    for v, k in zip(datum.graph.vertices, datum.genera):
        if k:
            out += f"genus: {v} {k}\n"
    if sheaf is not None:
        out += "sigma: " + " ".join(e for e in datum.graph.edge_ids if e in sheaf.sigma) + "\n"
    return out


def read_dual_graph(path) -> tuple[StableDualGraph, SheafDatum]:
    with open(path, encoding="utf-8") as fh:
        return parse_dual_graph(fh.read(), str(path))
