"""Chains, boundary maps and cycle lattices of a graph.

Two chain groups live on a graph ``g``:

* ordinary chains (:class:`Chain1`), one integer per edge, read against the
  reference orientation, so reversing an edge flips the sign;
* oriented chains (:class:`OrChain1`), one integer per oriented edge, with
  coordinates ordered ``e1+, e1-, e2+, e2-, ...``.

Their cycles (kernels of the respective boundary maps) are :class:`Cycle`
and :class:`OrCycle`.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from . import _intmath as im
from .graph import Graph, GraphError, OrientedEdge, Orientation, _require_connected, doubled_graph


class HomologyError(ValueError):
    pass


@dataclass(frozen=True)
class Chain1:
    graph: Graph
    coeffs: tuple

    def __post_init__(self):
        if len(self.coeffs) != self.graph.num_edges:
            raise HomologyError("coefficient vector has the wrong length")
        object.__setattr__(self, "coeffs", tuple(int(c) for c in self.coeffs))

    @classmethod
    def from_dict(cls, g: Graph, d: Mapping[str, int]):
        vec = [0] * g.num_edges
        for eid, c in d.items():
            vec[g.edge_index[eid]] += int(c)
        return cls(g, tuple(vec))

    @classmethod
    def zero(cls, g: Graph):
        return cls(g, (0,) * g.num_edges)

    def __getitem__(self, eid: str) -> int:
        return self.coeffs[self.graph.edge_index[eid]]

    def support(self) -> list[str]:
        return [eid for eid, c in zip(self.graph.edge_ids, self.coeffs) if c]

    def as_dict(self) -> dict[str, int]:
        return {eid: c for eid, c in zip(self.graph.edge_ids, self.coeffs) if c}

    def _check(self, other):
        if self.graph != other.graph:
            raise HomologyError("chains live on different graphs")

    def __add__(self, other):
        self._check(other)
        return type(self)(self.graph, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return type(self)(self.graph, tuple(-a for a in self.coeffs))

    def __rmul__(self, k: int):
        return type(self)(self.graph, tuple(k * a for a in self.coeffs))

    def __bool__(self):
        return any(self.coeffs)

    def __repr__(self):
        return f"{type(self).__name__}({self.as_dict()})"


class Cycle(Chain1):
    """An ordinary chain with zero boundary."""

    def __post_init__(self):
        super().__post_init__()
        if any(boundary_ordinary(self)):
            raise HomologyError("chain is not a cycle")


@dataclass(frozen=True)
class OrChain1:
    graph: Graph
    coeffs: tuple

    def __post_init__(self):
        if len(self.coeffs) != 2 * self.graph.num_edges:
            raise HomologyError("coefficient vector has the wrong length")
        object.__setattr__(self, "coeffs", tuple(int(c) for c in self.coeffs))

    @classmethod
    def from_dict(cls, g: Graph, d: Mapping[OrientedEdge, int]):
        vec = [0] * (2 * g.num_edges)
        for oe, c in d.items():
            vec[oriented_index(g, oe)] += int(c)
        return cls(g, tuple(vec))

    @classmethod
    def zero(cls, g: Graph):
        return cls(g, (0,) * (2 * g.num_edges))

    def __getitem__(self, oe: OrientedEdge) -> int:
        return self.coeffs[oriented_index(self.graph, oe)]

    def as_dict(self) -> dict[OrientedEdge, int]:
        return {oe: c for oe, c in zip(self.graph.oriented_edges, self.coeffs) if c}

    _check = Chain1._check
    __add__ = Chain1.__add__
    __sub__ = Chain1.__sub__
    __neg__ = Chain1.__neg__
    __rmul__ = Chain1.__rmul__
    __bool__ = Chain1.__bool__

    def __repr__(self):
        inner = ", ".join(f"{oe}: {c}" for oe, c in self.as_dict().items())
        return f"{type(self).__name__}({{{inner}}})"


class OrCycle(OrChain1):
    """An oriented chain with zero boundary, i.e. an element of the oriented cycle lattice."""

    def __post_init__(self):
        super().__post_init__()
        if any(boundary_oriented(self)):
            raise HomologyError("oriented chain is not a cycle")


def oriented_index(g: Graph, oe: OrientedEdge) -> int:
    return 2 * g.edge_index[oe.edge] + (0 if oe.forward else 1)


# -- boundary maps ---------------------------------------------------------


def boundary_matrix(g: Graph) -> list[list[int]]:
    """|V| x |E| matrix of the ordinary boundary map."""
    m = [[0] * g.num_edges for _ in g.vertices]
    for j, e in enumerate(g.edges):
        m[g.vertex_index[e.target]][j] += 1
        m[g.vertex_index[e.source]][j] -= 1
    return m


def oriented_boundary_matrix(g: Graph) -> list[list[int]]:
    """|V| x 2|E| matrix of the oriented boundary map."""
    m = [[0] * (2 * g.num_edges) for _ in g.vertices]
    for j, oe in enumerate(g.oriented_edges):
        m[g.vertex_index[g.target(oe)]][j] += 1
        m[g.vertex_index[g.source(oe)]][j] -= 1
    return m


def boundary_ordinary(c: Chain1) -> tuple[int, ...]:
    """Boundary of an ordinary chain, indexed like ``graph.vertices``."""
    return tuple(im.mat_vec(boundary_matrix(c.graph), c.coeffs))


def boundary_oriented(c: OrChain1) -> tuple[int, ...]:
    return tuple(im.mat_vec(oriented_boundary_matrix(c.graph), c.coeffs))


# -- scalar products -------------------------------------------------------


def pairing_ordinary(a: Chain1, b: Chain1) -> int:
    a._check(b)
    return im.dot(a.coeffs, b.coeffs)


def pairing_oriented(a: OrChain1, b: OrChain1) -> int:
    a._check(b)
    return im.dot(a.coeffs, b.coeffs)


# -- cycle lattices --------------------------------------------------------


def spanning_tree(g: Graph) -> list[str]:
    """Edges of a breadth-first spanning tree rooted at the first vertex."""
    _require_connected(g)
    seen = {g.vertices[0]}
    queue = [g.vertices[0]]
    tree = []
    while queue:
        v = queue.pop(0)
        for e in g.edges:
            if e.is_loop:
                continue
            if e.source == v and e.target not in seen:
                w = e.target
            elif e.target == v and e.source not in seen:
                w = e.source
            else:
                continue
            seen.add(w)
            tree.append(e.id)
            queue.append(w)
    return tree


def _tree_path(g: Graph, tree: list[str], start: str, end: str) -> dict[str, int]:
    """Signed edge multiset of the tree path from ``start`` to ``end``."""
    adj: dict[str, list[tuple[str, str, int]]] = {v: [] for v in g.vertices}
    for eid in tree:
        e = g.edge(eid)
        adj[e.source].append((eid, e.target, 1))
        adj[e.target].append((eid, e.source, -1))
    prev: dict[str, tuple[str, str, int] | None] = {start: None}
    stack = [start]
    while stack:
        v = stack.pop()
        for eid, w, sign in adj[v]:
            if w not in prev:
                prev[w] = (v, eid, sign)
                stack.append(w)
    path: dict[str, int] = {}
    v = end
    while prev[v] is not None:
        u, eid, sign = prev[v]
        path[eid] = sign
        v = u
    return path


def cycle_basis(g: Graph) -> list[Cycle]:
    """Fundamental cycles of a spanning tree; a Z-basis of the cycle lattice."""
    tree = spanning_tree(g)
    in_tree = set(tree)
    basis = []
    for e in g.edges:
        if e.id in in_tree:
            continue
        # walk e forward, then return along the tree from target to source
        d = {e.id: 1}
        d.update(_tree_path(g, tree, e.target, e.source))
        basis.append(Cycle.from_dict(g, d))
    return basis


def section(z: Chain1) -> OrChain1:
    """Lift an ordinary chain to the oriented chain with nonnegative
    coefficients: ``a`` on ``e+`` when ``a > 0``, ``|a|`` on ``e-`` when ``a < 0``."""
    g = z.graph
    vec = [0] * (2 * g.num_edges)
    for i, a in enumerate(z.coeffs):
        if a > 0:
            vec[2 * i] = a
        elif a < 0:
            vec[2 * i + 1] = -a
    cls = OrCycle if isinstance(z, Cycle) else OrChain1
    return cls(g, tuple(vec))


def edge_pair_cycle(g: Graph, eid: str) -> OrCycle:
    """``e+ + e-``, which lies in the kernel of the map to ordinary cycles."""
    return OrCycle.from_dict(g, {OrientedEdge(eid, True): 1, OrientedEdge(eid, False): 1})


def oriented_cycle_lattice(g: Graph) -> list[OrCycle]:
    """Z-basis of the oriented cycle lattice, of rank ``b1 + |E|``.

    The basis lists ``e+ + e-`` for every edge, followed by the lifts of the
    fundamental cycles.
    """
    _require_connected(g)
    return [edge_pair_cycle(g, eid) for eid in g.edge_ids] + [section(z) for z in cycle_basis(g)]


def kernel_to_ordinary(oc: OrChain1) -> Chain1:
    """``e+ -> [e]``, ``e- -> -[e]``."""
    g = oc.graph
    vec = tuple(oc.coeffs[2 * i] - oc.coeffs[2 * i + 1] for i in range(g.num_edges))
    cls = Cycle if isinstance(oc, OrCycle) else Chain1
    return cls(g, vec)


def coordinates(basis: list, v: tuple) -> list[int]:
    """Integer coordinates of ``v`` in a lattice basis; raises if ``v`` is outside."""
    a = im.transpose([b.coeffs if hasattr(b, "coeffs") else b for b in basis])
    x = im.solve(a, list(v))
    if x is None or any(c.denominator != 1 for c in x):
        raise HomologyError("vector is not in the lattice spanned by the basis")
    return [int(c) for c in x]


def doubled_chain_map(g: Graph, phi: Orientation | None = None) -> tuple[Graph, Orientation, list[list[int]]]:
    """Chain isomorphism from ordinary chains of the doubled graph onto oriented chains.

    The doubled edge whose doubled orientation runs from ``s`` to ``t`` is
    sent to the oriented edge of ``g`` with the same source and target.
    Returns the doubled graph, its orientation and the ``2|E| x 2|E|``
    matrix in reference coordinates.
    """
    phi = phi or Orientation.reference(g)
    gd, phid = doubled_graph(g, phi)
    n = 2 * g.num_edges
    m = [[0] * n for _ in range(n)]
    for j, e in enumerate(gd.edges):
        oed = phid[e.id]
        orig = g.edges[j // 2].id
        primed = j % 2 == 1
        # the image of the oriented doubled edge keeps its endpoints
        for oe in (OrientedEdge(orig, True), OrientedEdge(orig, False)):
            if g.source(oe) == gd.source(oed) and g.target(oe) == gd.target(oed):
                if g.edge(orig).is_loop:
                    # endpoints do not tell loop orientations apart
                    want = phi[orig] if not primed else phi[orig].reverse()
                    oe = want
                # reference coordinate of e is +1 along oed iff oed is forward
                sign = 1 if oed.forward else -1
                m[oriented_index(g, oe)][j] = sign
                break
    return gd, phid, m


def doubled_homology_iso(g: Graph, phi: Orientation | None = None) -> list[list[int]]:
    """Unimodular matrix of the isomorphism from cycles of the doubled graph to
    oriented cycles of ``g``, in the bases :func:`cycle_basis` (of the doubled
    graph) and :func:`oriented_cycle_lattice` (of ``g``).  Column ``j`` holds
    the image of the ``j``-th basis cycle."""
    _require_connected(g)
    gd, _, m = doubled_chain_map(g, phi)
    target = oriented_cycle_lattice(g)
    cols = []
    for z in cycle_basis(gd):
        image = im.mat_vec(m, z.coeffs)
        cols.append(coordinates(target, tuple(image)))
    mat = im.transpose(cols)
    if abs(im.det(mat)) != 1:
        raise GraphError("doubled-graph comparison map is not unimodular")
    return mat
