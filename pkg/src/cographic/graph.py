"""Finite multigraphs with oriented edges.

A :class:`Graph` stores its vertices and a list of edges, each with a fixed
reference orientation ``(source, target)``.  Loops (``source == target``) and
parallel edges are allowed.  Every edge ``e`` yields two oriented edges,
``OrientedEdge(e, True)`` (the reference direction) and
``OrientedEdge(e, False)`` (its reverse); :meth:`OrientedEdge.reverse` is the
fixed-point free involution between them.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping, NamedTuple


class GraphError(ValueError):
    """Raised for malformed graphs or inputs outside an operation's domain."""


class GraphFormatError(GraphError):
    def __init__(self, message: str, source: str = "<string>", line: int | None = None):
        self.source = source
        self.line = line
        where = source if line is None else f"{source}:{line}"
        super().__init__(f"{where}: {message}")


class Edge(NamedTuple):
    id: str
    source: str
    target: str

    @property
    def is_loop(self) -> bool:
        return self.source == self.target


class OrientedEdge(NamedTuple):
    edge: str
    forward: bool = True

    def reverse(self) -> "OrientedEdge":
        return OrientedEdge(self.edge, not self.forward)

    def __str__(self) -> str:
        return f"{self.edge}{'+' if self.forward else '-'}"


@dataclass(frozen=True)
class Graph:
    vertices: tuple
    edges: tuple

    def __init__(self, vertices: Iterable, edges: Iterable):
        verts = tuple(str(v) for v in vertices)
        if len(set(verts)) != len(verts):
            raise GraphError("duplicate vertex id")
        es = []
        for e in edges:
            eid, u, v = (str(x) for x in e)
            es.append(Edge(eid, u, v))
        ids = [e.id for e in es]
        if len(set(ids)) != len(ids):
            raise GraphError("duplicate edge id")
        vs = set(verts)
        for e in es:
            if e.source not in vs or e.target not in vs:
                raise GraphError(f"edge {e.id} has an undeclared endpoint")
        object.__setattr__(self, "vertices", verts)
        object.__setattr__(self, "edges", tuple(es))

    # -- basic accessors -------------------------------------------------

    @cached_property
    def edge_ids(self) -> tuple[str, ...]:
        return tuple(e.id for e in self.edges)

    @cached_property
    def edge_index(self) -> dict[str, int]:
        return {e.id: i for i, e in enumerate(self.edges)}

    @cached_property
    def vertex_index(self) -> dict[str, int]:
        return {v: i for i, v in enumerate(self.vertices)}

    def edge(self, eid: str) -> Edge:
        try:
            return self.edges[self.edge_index[eid]]
        except KeyError:
            raise GraphError(f"unknown edge {eid!r}") from None

    @property
    def num_vertices(self) -> int:
        return len(self.vertices)

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    @cached_property
    def oriented_edges(self) -> tuple[OrientedEdge, ...]:
        """All oriented edges, ordered ``e1+, e1-, e2+, e2-, ...``."""
        return tuple(OrientedEdge(e.id, f) for e in self.edges for f in (True, False))

    def source(self, oe: OrientedEdge) -> str:
        e = self.edge(oe.edge)
        return e.source if oe.forward else e.target

    def target(self, oe: OrientedEdge) -> str:
        e = self.edge(oe.edge)
        return e.target if oe.forward else e.source

    def loops(self) -> tuple[str, ...]:
        return tuple(e.id for e in self.edges if e.is_loop)

    def components(self) -> list[set[str]]:
        return _components(self.vertices, self.edges)

    @property
    def betti_number(self) -> int:
        """First Betti number ``|E| - |V| + #components``."""
        return self.num_edges - self.num_vertices + len(self.components())

    def __str__(self) -> str:
        return format_graph(self)


@dataclass(frozen=True)
class Orientation:
    """A choice of one oriented edge per edge of a graph."""

    choice: tuple

    def __init__(self, choice: Mapping[str, OrientedEdge] | Iterable[OrientedEdge]):
        items = choice.values() if isinstance(choice, Mapping) else choice
        ordered = tuple(OrientedEdge(oe.edge, bool(oe.forward)) for oe in items)
        if len({oe.edge for oe in ordered}) != len(ordered):
            raise GraphError("orientation picks two directions for one edge")
        object.__setattr__(self, "choice", ordered)

    @classmethod
    def reference(cls, g: Graph) -> "Orientation":
        return cls(OrientedEdge(e.id, True) for e in g.edges)

    @classmethod
    def from_flags(cls, g: Graph, forward: Iterable[bool]) -> "Orientation":
        return cls(OrientedEdge(e.id, f) for e, f in zip(g.edges, forward))

    def __getitem__(self, eid: str) -> OrientedEdge:
        for oe in self.choice:
            if oe.edge == eid:
                return oe
        raise KeyError(eid)

    def as_dict(self) -> dict[str, OrientedEdge]:
        return {oe.edge: oe for oe in self.choice}

    def check(self, g: Graph) -> None:
        if sorted(oe.edge for oe in self.choice) != sorted(g.edge_ids):
            raise GraphError("orientation does not cover exactly the edges of the graph")


# -- helpers ---------------------------------------------------------------


def _components(vertices: Iterable[str], edges: Iterable[Edge]) -> list[set[str]]:
    parent = {v: v for v in vertices}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for e in edges:
        a, b = find(e.source), find(e.target)
        if a != b:
            parent[a] = b
    groups: dict[str, set[str]] = {}
    for v in parent:
        groups.setdefault(find(v), set()).add(v)
    return sorted(groups.values(), key=lambda s: min(s))


def _require_connected(g: Graph) -> None:
    if not is_connected(g):
        raise GraphError("graph must be connected")


# -- predicates ------------------------------------------------------------


def is_connected(g: Graph) -> bool:
    return g.num_vertices > 0 and len(g.components()) == 1


def separating_edges(g: Graph) -> set[str]:
    """Bridges of a connected multigraph."""
    _require_connected(g)
    out = set()
    for e in g.edges:
        if e.is_loop:
            continue
        rest = [f for f in g.edges if f.id != e.id]
        if len(_components(g.vertices, rest)) > 1:
            out.add(e.id)
    return out


def is_tree_like(g: Graph) -> bool:
    """True iff the graph becomes a tree after its loops are removed."""
    _require_connected(g)
    non_loops = sum(1 for e in g.edges if not e.is_loop)
    return non_loops == g.num_vertices - 1


def is_totally_cyclic(g: Graph, phi: Orientation) -> bool:
    """No directed cut in any component, i.e. every component is strongly connected."""
    phi.check(g)
    succ: dict[str, set[str]] = {v: set() for v in g.vertices}
    pred: dict[str, set[str]] = {v: set() for v in g.vertices}
    for oe in phi.choice:
        s, t = g.source(oe), g.target(oe)
        succ[s].add(t)
        pred[t].add(s)

    def reach(start, nbrs, allowed):
        seen = {start}
        stack = [start]
        while stack:
            x = stack.pop()
            for y in nbrs[x]:
                if y in allowed and y not in seen:
                    seen.add(y)
                    stack.append(y)
        return seen

    for comp in g.components():
        root = min(comp)
        if reach(root, succ, comp) != comp or reach(root, pred, comp) != comp:
            return False
    return True


# -- constructions ---------------------------------------------------------


def contract_and_delete(g: Graph, contract: Iterable[str] = (), delete: Iterable[str] = ()) -> Graph:
    """Contract the edges in ``contract`` and delete those in ``delete``.

    Contracted endpoints are merged into one vertex named after the smallest
    of them.  Loops produced by the contraction are kept.  Contracting a loop,
    or a set of edges containing a cycle, is rejected.
    """
    contract, delete = set(contract), set(delete)
    unknown = (contract | delete) - set(g.edge_ids)
    if unknown:
        raise GraphError(f"unknown edges {sorted(unknown)}")
    if contract & delete:
        raise GraphError("contract and delete sets overlap")
    parent = {v: v for v in g.vertices}

    def find(x):
        while parent[x] != x:
            x = parent[x]
        return x

    for e in g.edges:
        if e.id not in contract:
            continue
        if e.is_loop:
            raise GraphError(f"cannot contract loop {e.id}")
        a, b = find(e.source), find(e.target)
        if a == b:
            raise GraphError(f"contracting {e.id} would contract a loop")
        if a < b:
            parent[b] = a
        else:
            parent[a] = b
    vertices = [v for v in g.vertices if find(v) == v]
    edges = [(e.id, find(e.source), find(e.target)) for e in g.edges
             if e.id not in contract and e.id not in delete]
    return Graph(vertices, edges)


def doubled_graph(g: Graph, phi: Orientation | None = None) -> tuple[Graph, Orientation]:
    """Replace each edge ``e`` by parallel edges ``e'`` and ``e''``.

    Both copies inherit the reference orientation of ``e``.  The returned
    orientation points ``e'`` along ``phi(e)`` and ``e''`` against it, so
    every pair of parallel copies is oriented oppositely.
    """
    phi = phi or Orientation.reference(g)
    phi.check(g)
    edges = []
    choice = []
    for e in g.edges:
        f = phi[e.id].forward
        edges.append((e.id + "'", e.source, e.target))
        edges.append((e.id + "''", e.source, e.target))
        choice.append(OrientedEdge(e.id + "'", f))
        choice.append(OrientedEdge(e.id + "''", not f))
    return Graph(g.vertices, edges), Orientation(choice)


def circuits(g: Graph) -> list[dict[str, int]]:
    """Elementary cycles, one per unoriented circuit.

    Each circuit is a map ``edge id -> +1 / -1`` (signs relative to the
    reference orientation) normalized so that its first edge, in graph
    order, has sign ``+1``.
    """
    _require_connected(g)
    found: dict[frozenset, dict[str, int]] = {}
    for e in g.edges:
        if e.is_loop:
            found[frozenset([e.id])] = {e.id: 1}
    # adjacency: vertex -> list of (edge, neighbour, sign of traversal)
    adj: dict[str, list[tuple[str, str, int]]] = {v: [] for v in g.vertices}
    for e in g.edges:
        if e.is_loop:
            continue
        adj[e.source].append((e.id, e.target, 1))
        adj[e.target].append((e.id, e.source, -1))
    order = g.vertex_index

    def dfs(start, v, path_vertices, path_edges):
        for eid, w, sign in adj[v]:
            if any(pe == eid for pe, _ in path_edges):
                continue
            if w == start and len(path_edges) >= 1:
                cyc = path_edges + [(eid, sign)]
                key = frozenset(x for x, _ in cyc)
                if key not in found:
                    found[key] = dict(cyc)
            elif order[w] > order[start] and w not in path_vertices:
                dfs(start, w, path_vertices | {w}, path_edges + [(eid, sign)])

    for s in g.vertices:
        dfs(s, s, {s}, [])

    out = []
    for cyc in found.values():
        first = min(cyc, key=g.edge_index.__getitem__)
        sgn = cyc[first]
        out.append({eid: sgn * cyc[eid] for eid in sorted(cyc, key=g.edge_index.__getitem__)})
    out.sort(key=lambda c: (len(c), [g.edge_index[x] for x in c]))
    return out


# -- standard families -----------------------------------------------------


def cycle_graph(n: int) -> Graph:
    """``C_n``: n vertices on a cycle, edges ``1..n`` oriented cyclically."""
    if n < 1:
        raise GraphError("cycle graph needs n >= 1")
    vs = [str(i) for i in range(1, n + 1)]
    return Graph(vs, [(str(i), vs[i - 1], vs[i % n]) for i in range(1, n + 1)])


def thick_edge(n: int) -> Graph:
    """``I_n``: two vertices joined by n parallel edges ``1..n``."""
    return Graph(["a", "b"], [(str(i), "a", "b") for i in range(1, n + 1)])


def bouquet(m: int) -> Graph:
    """One vertex with m loops."""
    return Graph(["o"], [(f"l{i}", "o", "o") for i in range(1, m + 1)])


def path_graph(k: int) -> Graph:
    """Path on k vertices."""
    vs = [f"v{i}" for i in range(1, k + 1)]
    return Graph(vs, [(f"p{i}", vs[i - 1], vs[i]) for i in range(1, k)])


def loop_graph() -> Graph:
    return Graph(["o"], [("e", "o", "o")])


def connected_multigraphs(max_edges: int, max_vertices: int | None = None) -> list[Graph]:
    """All connected multigraphs with at most ``max_edges`` edges, up to isomorphism.

    Isomorphism classes are detected by brute force over vertex
    permutations, which is fine for the handful of vertices involved.
    """
    from itertools import combinations_with_replacement, permutations

    out: list[Graph] = []
    for nv in range(1, max_edges + 2):
        if max_vertices is not None and nv > max_vertices:
            break
        slots = [(i, j) for i in range(nv) for j in range(i, nv)]
        seen: set = set()
        perms = list(permutations(range(nv)))
        for ne in range(nv - 1, max_edges + 1):
            for multiset in combinations_with_replacement(range(len(slots)), ne):
                pairs = [slots[k] for k in multiset]
                vs = [str(i) for i in range(nv)]
                g = Graph(vs, [(str(k + 1), vs[a], vs[b]) for k, (a, b) in enumerate(pairs)])
                if not is_connected(g):
                    continue
                canon = min(tuple(sorted(tuple(sorted((p[a], p[b]))) for a, b in pairs)) for p in perms)
                if canon in seen:
                    continue
                seen.add(canon)
                out.append(g)
    return out


# -- text format -----------------------------------------------------------


def format_graph(g: Graph) -> str:
    lines = ["vertices: " + " ".join(g.vertices)]
    lines += [f"{e.id}: {e.source} {e.target}" for e in g.edges]
    return "\n".join(lines) + "\n"


RESERVED_KEYS = ("vertices", "genus", "sigma")


def _parse_lines(numbered: list[tuple[int, str]], source: str) -> Graph:
    vertices = None
    edges = []
    seen_edges: set[str] = set()
    for lineno, raw in numbered:
        key, sep, rest = raw.partition(":")
        key = key.strip()
        if not sep or not key:
            raise GraphFormatError(f"expected 'key: value', got {raw.strip()!r}", source, lineno)
        fields = rest.split()
        if key == "vertices":
            if vertices is not None:
                raise GraphFormatError("duplicate vertices line", source, lineno)
            if len(set(fields)) != len(fields):
                raise GraphFormatError("duplicate vertex id", source, lineno)
            vertices = fields
            continue
        if key in RESERVED_KEYS:
            raise GraphFormatError(f"unexpected {key!r} line", source, lineno)
        if vertices is None:
            raise GraphFormatError("edge line before the vertices line", source, lineno)
        if len(fields) != 2:
            raise GraphFormatError(f"edge {key} needs exactly two endpoints", source, lineno)
        if key in seen_edges:
            raise GraphFormatError(f"duplicate edge id {key}", source, lineno)
        for v in fields:
            if v not in vertices:
                raise GraphFormatError(f"edge {key} uses undeclared vertex {v}", source, lineno)
        seen_edges.add(key)
        edges.append((key, fields[0], fields[1]))
    if vertices is None:
        raise GraphFormatError("missing vertices line", source)
    return Graph(vertices, edges)


def content_lines(text: str) -> list[tuple[int, str]]:
    """Non-blank lines with comments (``#``) stripped, paired with line numbers."""
    out = []
    for i, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            out.append((i, line))
    return out


def parse_graph(text: str, source: str = "<string>") -> Graph:
    return _parse_lines(content_lines(text), source)


def read_graph(path) -> Graph:
    with open(path, encoding="utf-8") as fh:
        return parse_graph(fh.read(), str(path))

