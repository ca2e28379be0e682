"""The cographic semigroup of a graph, its toric ring and singularity invariants.

The semigroup is the set of nonnegative oriented cycles.  It is handled in
two interchangeable encodings:

* :class:`SemigroupElem`, an oriented cycle with nonnegative coefficients;
* :class:`PairElem`, a pair ``(z, n)`` of an ordinary cycle and a vector of
  nonnegative edge markers, added with the twisted law of
  :func:`semigroup_add`.

Lattice coordinates: the oriented cycle lattice is identified with ``Z^d``
through the basis returned by :func:`cographic_basis`; the cone lives in
that ``Z^d`` and its dual in the dual ``Z^d``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, product
from math import comb
from typing import Sequence

from . import _intmath as im
from .cones import (
    Cone,
    ConeClassification,
    Lattice,
    classify_cone,
    hilbert_basis,
    subdiagram_volume,
)
from .graph import (
    Graph,
    GraphError,
    OrientedEdge,
    _require_connected,
    circuits,
    contract_and_delete,
    is_connected,
    is_tree_like,
    separating_edges,
)
from .homology import (
    Cycle,
    HomologyError,
    OrCycle,
    coordinates,
    cycle_basis,
    edge_pair_cycle,
    kernel_to_ordinary,
    oriented_cycle_lattice,
    oriented_index,
    section as _section,
)


class InternalConsistencyError(RuntimeError):
    """A computed verdict contradicts a structural guarantee for cographic rings."""


class SemigroupElem(OrCycle):
    """Oriented cycle with nonnegative coefficients."""

    def __post_init__(self):
        super().__post_init__()
        if any(c < 0 for c in self.coeffs):
            raise HomologyError("semigroup elements have nonnegative coefficients")

    @property
    def degree(self) -> int:
        return sum(self.coeffs)


@dataclass(frozen=True)
class PairElem:
    z: Cycle
    n: tuple

    def __post_init__(self):
        if len(self.n) != self.z.graph.num_edges:
            raise HomologyError("marker vector has the wrong length")
        if any(x < 0 for x in self.n):
            raise HomologyError("markers are nonnegative")
        object.__setattr__(self, "n", tuple(int(x) for x in self.n))

    @property
    def graph(self) -> Graph:
        return self.z.graph

    @classmethod
    def zero(cls, g: Graph) -> "PairElem":
        return cls(Cycle.zero(g), (0,) * g.num_edges)


# -- the twisted law -------------------------------------------------------


def psi(z1: Cycle, z2: Cycle) -> tuple[int, ...]:
    """Edgewise ``min(|a|, |b|)`` where the two cycles run in opposite directions, else 0."""
    if z1.graph != z2.graph:
        raise HomologyError("cycles live on different graphs")
    return tuple(min(abs(a), abs(b)) if a * b < 0 else 0 for a, b in zip(z1.coeffs, z2.coeffs))


def section(z: Cycle) -> SemigroupElem:
    s = _section(z)
    return SemigroupElem(s.graph, s.coeffs)


def semigroup_add(p1: PairElem, p2: PairElem) -> PairElem:
    if p1.graph != p2.graph:
        raise HomologyError("pairs live on different graphs")
    twist = psi(p1.z, p2.z)
    return PairElem(p1.z + p2.z, tuple(t + a + b for t, a, b in zip(twist, p1.n, p2.n)))


def pair_to_semigroup(p: PairElem) -> SemigroupElem:
    s = list(section(p.z).coeffs)
    for i, k in enumerate(p.n):
        s[2 * i] += k
        s[2 * i + 1] += k
    return SemigroupElem(p.graph, tuple(s))


def semigroup_to_pair(s: OrCycle) -> PairElem:
    s = SemigroupElem(s.graph, s.coeffs)
    z = kernel_to_ordinary(s)
    n = tuple(min(s.coeffs[2 * i], s.coeffs[2 * i + 1]) for i in range(s.graph.num_edges))
    return PairElem(z, n)


def add_semigroup(a: SemigroupElem, b: SemigroupElem) -> SemigroupElem:
    c = a + b
    return SemigroupElem(c.graph, c.coeffs)


# -- lattices and cones ----------------------------------------------------


def cographic_basis(g: Graph) -> list[OrCycle]:
    """Basis of the oriented cycle lattice used as coordinates for the cone."""
    return oriented_cycle_lattice(g)


def cycle_coordinates(g: Graph, oc: OrCycle) -> tuple[int, ...]:
    return tuple(coordinates(cographic_basis(g), oc.coeffs))


def from_coordinates(g: Graph, y: Sequence[int]) -> OrCycle:
    basis = cographic_basis(g)
    vec = [sum(yi * b.coeffs[k] for yi, b in zip(y, basis)) for k in range(2 * g.num_edges)]
    return OrCycle(g, tuple(vec))


def ray_functionals(g: Graph) -> dict[OrientedEdge, tuple[int, ...]]:
    """The functional ``x -> coefficient of x at the oriented edge``, in dual coordinates."""
    basis = cographic_basis(g)
    return {oe: tuple(b.coeffs[oriented_index(g, oe)] for b in basis) for oe in g.oriented_edges}


def canonical_covector(g: Graph) -> tuple[int, ...]:
    """Coordinates of the sum of all oriented edges, an element of the cycle lattice."""
    total = OrCycle(g, (1,) * (2 * g.num_edges))
    return cycle_coordinates(g, total)


def cographic_cone(g: Graph) -> tuple[Cone, Cone]:
    """``(cone of nonnegative oriented cycles, its dual)`` in cycle-lattice coordinates.

    The dual cone is generated by the coefficient functionals of the
    oriented edges.
    """
    _require_connected(g)
    if g.num_edges == 0:
        raise GraphError("a graph without edges has a zero-dimensional cone")
    d = g.num_edges + g.betti_number
    lat = Lattice.standard(d)
    dual = Cone(list(ray_functionals(g).values()), lat)
    facets = dual.facets()
    # the cone is cut out by the functionals; its generators are the facet
    # normals of the dual
    sigma = Cone(facets, lat)
    return sigma, dual


def hilbert_basis_candidates(g: Graph) -> list[SemigroupElem]:
    """Lifts of both orientations of each circuit, and ``e+ + e-`` for each non-loop edge."""
    out = []
    for c in circuits(g):
        z = Cycle.from_dict(g, c)
        out.append(section(z))
        out.append(section(-z))
    for e in g.edges:
        if not e.is_loop:
            pc = edge_pair_cycle(g, e.id)
            out.append(SemigroupElem(g, pc.coeffs))
    return out


# -- presentation ----------------------------------------------------------


@dataclass(frozen=True)
class Binomial:
    """``prod lhs - prod rhs``; each side maps generator names to exponents."""

    lhs: tuple
    rhs: tuple

    @staticmethod
    def _side(terms) -> str:
        if not terms:
            return "1"
        return "*".join(name if k == 1 else f"{name}^{k}" for name, k in terms)

    def __str__(self) -> str:
        return f"{self._side(self.lhs)} - {self._side(self.rhs)}"

    def is_linear_in(self, name: str) -> bool:
        return (name, 1) in self.rhs and len(self.rhs) == 1 or (name, 1) in self.lhs and len(self.lhs) == 1


@dataclass(frozen=True)
class RingPresentation:
    graph: Graph
    generators: tuple
    exponents: dict = field(compare=False)   # name -> oriented-cycle coefficient vector
    relations: tuple
    exchange_relations: tuple
    eliminated: tuple   # loop generators T_e removed by a relation linear in them
    vanishing_in_face_ring: tuple   # generators sent to zero by T_e -> 0

    def minimal_generators(self) -> tuple:
        return tuple(x for x in self.generators if x not in self.eliminated)

    def relation_strings(self) -> list[str]:
        return [str(r) for r in self.relations]

    def as_dict(self) -> dict:
        return {
            "generators": list(self.generators),
            "minimal_generators": list(self.minimal_generators()),
            "relations": self.relation_strings(),
            "exchange_relations": [str(r) for r in self.exchange_relations],
            "eliminated": list(self.eliminated),
            "vanishing_in_face_ring": list(self.vanishing_in_face_ring),
        }


def _compact_name(g: Graph, cyc: dict[str, int]) -> str | None:
    """``Xpq`` for a circuit running forward along ``p`` and back along ``q``."""
    plus = [e for e in g.edge_ids if cyc.get(e, 0) > 0]
    minus = [e for e in g.edge_ids if cyc.get(e, 0) < 0]
    if len(plus) == 1 and len(minus) == 1 and len(plus[0]) == 1 and len(minus[0]) == 1:
        return f"X{plus[0]}{minus[0]}"
    return None


def _circuit_name(g: Graph, cyc: dict[str, int]) -> str:
    name = _compact_name(g, cyc)
    if name:
        return name
    plus = [e for e in g.edge_ids if cyc.get(e, 0) > 0]
    minus = [e for e in g.edge_ids if cyc.get(e, 0) < 0]
    return "X{" + ",".join(plus) + "|" + ",".join(minus) + "}"


def _circuit_generators(g: Graph) -> list[tuple[str, Cycle]]:
    circs = circuits(g)
    gens = []
    if len(circs) == 1 and _compact_name(g, circs[0]) is None:
        z = Cycle.from_dict(g, circs[0])
        return [("X", z), ("Y", -z)]
    for c in circs:
        z = Cycle.from_dict(g, c)
        gens.append((_circuit_name(g, c), z))
        gens.append((_circuit_name(g, (-z).as_dict()), -z))
    return gens


def conformal_decomposition(w: Cycle, pieces: Sequence[tuple[str, Cycle]]) -> list[str] | None:
    """Write ``w`` as a sum of circuits whose signs agree with ``w``, greedily.

    Returns generator names, or ``None`` if the greedy peel gets stuck (it
    never does when ``pieces`` contains every signed circuit).
    """
    names = []
    while w:
        for name, z in pieces:
            if all(b == 0 or (a * b > 0 and abs(b) <= abs(a)) for a, b in zip(w.coeffs, z.coeffs)):
                names.append(name)
                w = w - z
                break
        else:
            return None
    return names


def _monomial(names: Sequence[str]) -> tuple:
    counts: dict[str, int] = {}
    for n in names:
        counts[n] = counts.get(n, 0) + 1
    return tuple(sorted(counts.items(), key=lambda t: _gen_key(t[0])))


def _gen_key(name: str):
    return (name.startswith("T"), name)


def presentation(g: Graph) -> RingPresentation:
    """Generators ``X`` for signed circuits and ``T`` for edges, with the
    binomial relations ``X^z X^z' = X^(z+z') T^psi(z,z')`` over pairs of
    signed circuits with nonzero twist."""
    _require_connected(g)
    xs = _circuit_generators(g)
    tnames = {e.id: f"T{e.id}" for e in g.edges}
    exps: dict[str, tuple] = {}
    for name, z in xs:
        exps[name] = section(z).coeffs
    for e in g.edges:
        exps[tnames[e.id]] = edge_pair_cycle(g, e.id).coeffs
    generators = tuple(name for name, _ in xs) + tuple(tnames[e.id] for e in g.edges)

    relations = []
    seen = set()
    by_sum: dict[tuple, list[tuple]] = {}
    for (n1, z1), (n2, z2) in combinations(xs, 2):
        tw = psi(z1, z2)
        w = z1 + z2
        lhs = _monomial([n1, n2])
        if any(tw):
            rest = conformal_decomposition(w, xs)
            tpart = []
            for eid, k in zip(g.edge_ids, tw):
                tpart += [tnames[eid]] * k
            rhs = _monomial((rest or []) + tpart)
            key = (lhs, rhs)
            if key not in seen:
                seen.add(key)
                relations.append(Binomial(lhs, rhs))
        else:
            by_sum.setdefault(w.coeffs, []).append(lhs)
    exchange = []
    for monos in by_sum.values():
        monos = sorted(set(monos), key=lambda m: [(_gen_key(a), k) for a, k in m])
        for m in monos[1:]:
            if m != monos[0]:
                exchange.append(Binomial(monos[0], m))

    eliminated = []
    for eid in g.loops():
        t = tnames[eid]
        if any(r.is_linear_in(t) for r in relations):
            eliminated.append(t)
    return RingPresentation(
        graph=g,
        generators=generators,
        exponents=exps,
        relations=tuple(relations),
        exchange_relations=tuple(exchange),
        eliminated=tuple(eliminated),
        vanishing_in_face_ring=tuple(tnames[e.id] for e in g.edges),
    )


# -- invariant-ring oracle and enumeration ---------------------------------


def invariant_ring_oracle(g: Graph, degree_bound: int = 4) -> list[tuple[int, ...]]:
    """Exponent vectors (over oriented edges) of torus-invariant monomials of degree <= bound.

    The torus of vertex weights scales the variable of ``e`` by
    ``lambda_source / lambda_target``; a monomial is invariant exactly when
    its exponent vector has zero oriented boundary.
    """
    _require_connected(g)
    n = 2 * g.num_edges
    # weight of each variable: +1 at its source, -1 at its target
    weights = []
    for oe in g.oriented_edges:
        w = [0] * g.num_vertices
        w[g.vertex_index[g.source(oe)]] += 1
        w[g.vertex_index[g.target(oe)]] -= 1
        weights.append(w)
    out = []

    def rec(i, remaining, exps):
        if i == n:
            total = [sum(exps[k] * weights[k][v] for k in range(n)) for v in range(g.num_vertices)]
            if not any(total):
                out.append(tuple(exps))
            return
        for c in range(remaining + 1):
            exps.append(c)
            rec(i + 1, remaining - c, exps)
            exps.pop()

    rec(0, degree_bound, [])
    return sorted(out)


def semigroup_elements_up_to_degree(g: Graph, degree_bound: int) -> list[tuple[int, ...]]:
    """Elements of the semigroup of total degree <= bound, built from pairs ``(z, n)``.

    Cycles ``z`` range over integer combinations of the fundamental cycles
    (coefficients bounded by the degree, since each fundamental cycle owns
    an edge no other one uses); markers over all small vectors.
    """
    _require_connected(g)
    basis = cycle_basis(g)
    out = set()
    rng = range(-degree_bound, degree_bound + 1)
    for ys in product(rng, repeat=len(basis)):
        z = Cycle.zero(g)
        for y, b in zip(ys, basis):
            z = z + y * b
        zdeg = sum(abs(a) for a in z.coeffs)
        if zdeg > degree_bound:
            continue
        budget = (degree_bound - zdeg) // 2
        for ns in _bounded_vectors(g.num_edges, budget):
            s = pair_to_semigroup(PairElem(z, ns))
            out.add(s.coeffs)
    return sorted(out)


def _bounded_vectors(n: int, total: int):
    if n == 0:
        yield ()
        return
    for first in range(total + 1):
        for rest in _bounded_vectors(n - 1, total - first):
            yield (first,) + rest


# -- singularity report ----------------------------------------------------


@dataclass(frozen=True)
class SingularityReport:
    dimension: int
    tangent_dimension: int
    multiplicity: int
    extremal_ray_count: int
    smooth: bool
    finite_quotient: bool
    q_gorenstein: bool
    gorenstein: bool
    canonical: bool
    terminal: bool
    rational: bool
    affine_factor_exponent: int
    reduced_graph: Graph
    m_sigma: tuple | None = None
    hilbert_basis: tuple = ()

    def as_dict(self) -> dict:
        from .graph import format_graph

        return {
            "dimension": self.dimension,
            "tangent_dimension": self.tangent_dimension,
            "multiplicity": self.multiplicity,
            "extremal_ray_count": self.extremal_ray_count,
            "smooth": self.smooth,
            "finite_quotient": self.finite_quotient,
            "q_gorenstein": self.q_gorenstein,
            "gorenstein": self.gorenstein,
            "canonical": self.canonical,
            "terminal": self.terminal,
            "rational": self.rational,
            "rational_note": "normal toric singularities are rational; asserted, not computed",
            "affine_factor_exponent": self.affine_factor_exponent,
            "reduced_graph": format_graph(self.reduced_graph),
            "m_sigma": list(self.m_sigma) if self.m_sigma is not None else None,
        }


def reduce_separating(g: Graph) -> tuple[Graph, int]:
    """Contract separating edges and delete loops; return the reduced graph and
    the exponent ``#separating + 2 #loops`` of the split-off affine factor."""
    seps = separating_edges(g)
    loops = set(g.loops())
    return contract_and_delete(g, seps, loops), len(seps) + 2 * len(loops)


def _trivial_report(g: Graph, reduced: Graph, exponent: int) -> SingularityReport:
    return SingularityReport(0, 0, 1, 0, True, True, True, True, True, True, True,
                             exponent, reduced, (), ())


def analyze(g: Graph, check: bool = True) -> SingularityReport:
    """Invariants and singularity verdicts of the cographic toric variety of ``g``.

    Everything is computed from the cone itself.  With ``check`` (the
    default) the closed-form expectations are verified afterwards, and any
    disagreement raises :class:`InternalConsistencyError`.
    """
    if not is_connected(g):
        raise GraphError("graph must be connected")
    reduced, exponent = reduce_separating(g)
    if g.num_edges == 0:
        return _trivial_report(g, reduced, exponent)
    sigma, dual = cographic_cone(g)
    hb = hilbert_basis(sigma)
    mult = subdiagram_volume(sigma)
    cls: ConeClassification = classify_cone(dual)
    dim = sigma.dim
    rays = cls.ray_count
    smooth = cls.smooth and mult == 1 and bool(cls.terminal)
    report = SingularityReport(
        dimension=dim,
        tangent_dimension=len(hb),
        multiplicity=mult,
        extremal_ray_count=rays,
        smooth=smooth,
        finite_quotient=rays == dim,
        q_gorenstein=cls.q_gorenstein,
        gorenstein=cls.gorenstein,
        canonical=bool(cls.canonical),
        terminal=bool(cls.terminal),
        rational=True,
        affine_factor_exponent=exponent,
        reduced_graph=reduced,
        m_sigma=cls.m_sigma,
        hilbert_basis=tuple(hb),
    )
    if check:
        _check_report(g, report)
    return report


def _check_report(g: Graph, r: SingularityReport) -> None:
    problems = []
    if not (r.gorenstein and r.terminal):
        problems.append("cone is not Gorenstein and terminal")
    if r.m_sigma is not None and tuple(r.m_sigma) != canonical_covector(g):
        problems.append("Gorenstein witness differs from the sum of all oriented edges")
    if r.dimension != g.betti_number + g.num_edges:
        problems.append("dimension differs from b1 + |E|")
    expected_tangent = 2 * len(circuits(g)) + g.num_edges - len(g.loops())
    if r.tangent_dimension != expected_tangent:
        problems.append("tangent dimension differs from 2|Cir| + |E| - |Loops|")
    if r.smooth != is_tree_like(g):
        problems.append("smoothness disagrees with tree-likeness")
    if r.smooth and r.multiplicity != 1:
        problems.append("smooth point with multiplicity > 1")
    if problems:
        raise InternalConsistencyError("; ".join(problems))


def thick_edge_multiplicity(n: int) -> int:
    """Closed form for two vertices joined by n edges."""
    return comb(2 * (n - 1), n - 1)
