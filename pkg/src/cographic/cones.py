"""Rational polyhedral cones over explicit lattices.

Vectors are tuples of ``int`` / ``Fraction`` in an ambient rational space.
A :class:`Lattice` is given by a basis of that space (rows), so lattices
coarser or finer than ``Z^n`` are allowed.  Internally every computation is
done in the lattice coordinates of a saturated *frame*: a Z-basis of the
span of the cone intersected with the lattice, in which the cone becomes
full-dimensional and lattice points become integer vectors.

Facets are found with the double description method; Hilbert bases through
a pulling triangulation followed by enumeration of the fundamental
parallelepipeds of the simplicial pieces.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from itertools import product
from math import floor, ceil
from typing import Iterable, Sequence

from . import _intmath as im


class ConeError(ValueError):
    """Degenerate input (non-pointed cone, wrong dimension, ...)."""


def _norm(v: Iterable) -> tuple:
    """Exact vector with integral entries stored as ``int``."""
    out = []
    for x in v:
        x = Fraction(x)
        out.append(int(x) if x.denominator == 1 else x)
    return tuple(out)


# -- lattices --------------------------------------------------------------


@dataclass(frozen=True)
class Lattice:
    """Full-rank lattice in Q^n spanned by the rows of ``basis``."""

    basis: tuple

    def __init__(self, basis: Sequence[Sequence]):
        rows = tuple(_norm(b) for b in basis)
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise ConeError("lattice basis must be square")
        if n and im.rank(rows) != n:
            raise ConeError("lattice basis vectors are linearly dependent")
        object.__setattr__(self, "basis", rows)

    @classmethod
    def standard(cls, n: int) -> "Lattice":
        return cls([[int(i == j) for j in range(n)] for i in range(n)])

    @classmethod
    def generated_by(cls, vectors: Sequence[Sequence]) -> "Lattice":
        """Lattice spanned by (possibly redundant) rational vectors, in Hermite form."""
        vecs = [[Fraction(x) for x in v] for v in vectors]
        den = 1
        for v in vecs:
            for x in v:
                den = den * x.denominator // _gcd(den, x.denominator)
        ints = [[int(x * den) for x in v] for v in vecs]
        h = im.hermite_rows(ints)
        return cls([[Fraction(x, den) for x in row] for row in h])

    @property
    def rank(self) -> int:
        return len(self.basis)

    @cached_property
    def _inverse(self):
        return im.inverse(self.basis)

    def coords(self, v: Sequence) -> tuple:
        """Coordinates ``c`` with ``v = c . basis`` (rational)."""
        return tuple(im.vec_mat([Fraction(x) for x in v], self._inverse))

    def from_coords(self, c: Sequence) -> tuple:
        return _norm(im.vec_mat(list(c), self.basis))

    def contains(self, v: Sequence) -> bool:
        return all(Fraction(x).denominator == 1 for x in self.coords(v))

    def dual(self) -> "Lattice":
        """Dual lattice, as covectors in the ambient dual space."""
        return Lattice(im.transpose(self._inverse))

    def covector_coords(self, m: Sequence) -> tuple:
        """Coordinates of an ambient covector in the dual basis: its values on the basis."""
        return tuple(im.dot(m, b) for b in self.basis)

    def covector_from_coords(self, a: Sequence) -> tuple:
        return _norm(im.mat_vec(self._inverse, list(a)))

    def index_in(self, other: "Lattice") -> Fraction:
        """``[other : self]`` when ``self`` is a sublattice of ``other``."""
        m = [other.coords(b) for b in self.basis]
        return abs(_det_q(m))


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def _det_q(m) -> Fraction:
    rows = [[Fraction(x) for x in r] for r in m]
    den = 1
    for r in rows:
        for x in r:
            den = den * x.denominator // _gcd(den, x.denominator)
    ints = [[int(x * den) for x in r] for r in rows]
    return Fraction(im.det(ints), den ** len(rows))


# -- double description ----------------------------------------------------


def double_description(constraints: Sequence[Sequence[int]], n: int):
    """Solve ``{x in Q^n : a.x >= 0 for a in constraints}``.

    Returns ``(lines, rays)``: a basis of the lineality space and the
    extreme rays modulo it, all as primitive integer vectors.
    """
    lines = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    rays: list[tuple[tuple, frozenset]] = []
    for k, a in enumerate(constraints):
        a = im.clear_denominators(a)
        hit = next((i for i, l in enumerate(lines) if im.dot(a, l) != 0), None)
        if hit is not None:
            l = lines.pop(hit)
            al = im.dot(a, l)
            if al < 0:
                l, al = tuple(-x for x in l), -al
            lines = [im.primitive([al * yi - im.dot(a, y) * li for yi, li in zip(y, l)]) for y in lines]
            rays = [(im.primitive([al * ri - im.dot(a, r) * li for ri, li in zip(r, l)]), z | {k})
                    for r, z in rays]
            rays.append((l, frozenset(range(k))))
            continue
        vals = [im.dot(a, r) for r, _ in rays]
        pos = [i for i, v in enumerate(vals) if v > 0]
        neg = [i for i, v in enumerate(vals) if v < 0]
        new = [rays[i] for i in pos]
        new += [(r, z | {k}) for (r, z), v in zip(rays, vals) if v == 0]
        for i in pos:
            zi = rays[i][1]
            for j in neg:
                common = zi & rays[j][1]
                if any(common <= z for t, (_, z) in enumerate(rays) if t != i and t != j):
                    continue
                p, q = rays[i][0], rays[j][0]
                vp, vq = vals[i], vals[j]
                r = im.primitive([vp * qi - vq * pi for pi, qi in zip(p, q)])
                new.append((r, common | {k}))
        rays = new
    return lines, [r for r, _ in rays]


@lru_cache(maxsize=4096)
def _facets_cached(gens: tuple, n: int):
    lines, rays = double_description(gens, n)
    return tuple(lines), tuple(sorted(rays))


def facet_description(gens: Sequence[Sequence[int]], n: int):
    """``(equations, facet normals)`` of ``cone(gens)`` in Z^n.

    Facet normals are only defined modulo the equations.
    """
    key = tuple(sorted(set(tuple(int(x) for x in g) for g in gens)))
    return _facets_cached(key, n)


# -- frames ----------------------------------------------------------------


@dataclass(frozen=True)
class _Frame:
    """Saturated span lattice of a cone, in coordinates of a lattice."""

    lattice: Lattice
    basis: tuple   # rows in lattice coordinates (integers), Z-basis of span
    gens: tuple    # cone generators in frame coordinates (primitive integers)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def to_ambient(self, y: Sequence) -> tuple:
        return self.lattice.from_coords(im.vec_mat(list(y), self.basis))

    def covector_to_ambient(self, m: Sequence) -> tuple:
        """Some ambient covector restricting to ``m`` on the frame."""
        amb_basis = [self.to_ambient(b) for b in self.basis]
        x = im.solve(amb_basis, list(m))
        return _norm(x)

    def from_ambient(self, v: Sequence) -> tuple | None:
        """Frame coordinates of an ambient vector, or ``None`` if it is off the span."""
        c = list(self.lattice.coords(v))
        if not self.basis:
            return () if not any(c) else None
        y = im.solve(im.transpose(self.basis), c)
        return None if y is None else _norm(y)


def _make_frame(gens: Sequence[Sequence], lattice: Lattice) -> _Frame:
    n = lattice.rank
    coords = [im.primitive_direction(lattice.coords(g)) for g in gens]
    coords = [c for c in coords if any(c)]
    eqs = im.nullspace(coords, n) if coords else [tuple(int(i == j) for j in range(n)) for i in range(n)]
    if coords and len(eqs) == 0:
        basis = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    elif not coords:
        basis = []
    else:
        basis = im.integer_kernel(eqs, n)
    basis = tuple(tuple(b) for b in basis)
    if basis and len(basis) < n:
        bt = im.transpose(basis)
        fgens = []
        for c in coords:
            y = im.solve(bt, list(c))
            fgens.append(im.primitive_direction(y))
    else:
        fgens = coords
    return _Frame(lattice, basis, tuple(sorted(set(tuple(g) for g in fgens))))


def _extreme_rays_full(gens: Sequence[tuple], d: int) -> list[tuple]:
    """Extreme rays of a pointed full-dimensional cone in Z^d given by generators."""
    eqs, facets = facet_description(gens, d)
    if eqs:
        raise ConeError("cone is not full-dimensional in its frame")
    out = set()
    for g in gens:
        tight = [f for f in facets if im.dot(f, g) == 0]
        if d == 1 or (tight and im.rank(tight) == d - 1):
            out.add(tuple(g))
    return sorted(out)


def _is_pointed_full(gens, d) -> bool:
    _, facets = facet_description(gens, d)
    return d == 0 or (bool(facets) and im.rank(facets) == d)


def _in_cone(facets, x) -> bool:
    return all(im.dot(f, x) >= 0 for f in facets)


# -- cones -----------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class Cone:
    """Cone generated by nonzero rational vectors, with an ambient lattice."""

    generators: tuple
    lattice: Lattice = field(default=None)

    def __init__(self, generators: Sequence[Sequence], lattice: Lattice | None = None):
        gens = tuple(_norm(g) for g in generators)
        if not gens:
            raise ConeError("a cone needs at least one generator")
        n = len(gens[0])
        if any(len(g) != n for g in gens):
            raise ConeError("generators have different lengths")
        if any(not any(g) for g in gens):
            raise ConeError("generators must be nonzero")
        lattice = lattice or Lattice.standard(n)
        if lattice.rank != n:
            raise ConeError("lattice and generators live in different dimensions")
        object.__setattr__(self, "generators", gens)
        object.__setattr__(self, "lattice", lattice)

    @property
    def ambient_dim(self) -> int:
        return self.lattice.rank

    def frame(self, lattice: Lattice | None = None) -> _Frame:
        return _make_frame(self.generators, lattice or self.lattice)

    @cached_property
    def _lattice_coords(self):
        return [im.primitive_direction(self.lattice.coords(g)) for g in self.generators]

    @cached_property
    def _hrep(self):
        eqs, facets = facet_description(self._lattice_coords, self.ambient_dim)
        return eqs, facets

    @property
    def dim(self) -> int:
        return im.rank(self._lattice_coords)

    def is_full_dimensional(self) -> bool:
        return self.dim == self.ambient_dim

    def is_pointed(self) -> bool:
        eqs, facets = self._hrep
        return im.rank(list(eqs) + list(facets)) == self.ambient_dim

    def equations(self) -> list[tuple]:
        """Ambient covectors vanishing on the cone."""
        return [self.lattice.covector_from_coords(e) for e in self._hrep[0]]

    def facets(self) -> list[tuple]:
        """Inward facet normals, primitive in the dual lattice (modulo equations)."""
        return [self.lattice.covector_from_coords(f) for f in self._hrep[1]]

    def contains(self, v: Sequence) -> bool:
        c = self.lattice.coords(v)
        eqs, facets = self._hrep
        return all(im.dot(e, c) == 0 for e in eqs) and all(im.dot(f, c) >= 0 for f in facets)

    def extremal_rays(self) -> list[tuple]:
        """Primitive lattice generators of the extremal rays, sorted."""
        if not self.is_pointed():
            raise ConeError("extremal rays requested for a non-pointed cone")
        fr = self.frame()
        rays = _extreme_rays_full(fr.gens, fr.dim)
        return sorted(fr.to_ambient(r) for r in rays)

    def __repr__(self):
        return f"Cone({list(self.generators)})"


def primitive(ray: Sequence, lattice: Lattice) -> tuple:
    """First lattice point on the ray through ``ray``."""
    c = im.primitive_direction(lattice.coords(ray))
    if not any(c):
        raise ConeError("zero vector spans no ray")
    return lattice.from_coords(c)


def extremal_rays(c: Cone, lattice: Lattice | None = None) -> list[tuple]:
    if lattice is None:
        return c.extremal_rays()
    return sorted(primitive(r, lattice) for r in c.extremal_rays())


def dual_cone(c: Cone) -> Cone:
    """Dual cone in the dual lattice; generated by facet normals and +-equations."""
    eqs, facets = c._hrep
    dual_lat = c.lattice.dual()
    gens = [dual_lat.from_coords(f) for f in facets]
    for e in eqs:
        gens.append(dual_lat.from_coords(e))
        gens.append(dual_lat.from_coords([-x for x in e]))
    if not gens:
        # the cone is the whole space, its dual is the origin
        raise ConeError("dual of the whole space is the zero cone")
    return Cone(gens, dual_lat)


def _require_pointed(c: Cone):
    if not c.is_pointed():
        raise ConeError("cone is not pointed")


# -- triangulation and Hilbert bases ---------------------------------------


def pulling_triangulation(rays: Sequence[tuple], d: int) -> list[tuple]:
    """Simplicial cones (tuples of rays) triangulating ``cone(rays)``.

    ``rays`` must be the extreme rays of a pointed cone in Z^d; the cone may
    have lower dimension.
    """
    rays = sorted(set(tuple(r) for r in rays))
    return list(_pulling(tuple(rays), d))


@lru_cache(maxsize=8192)
def _pulling(rays: tuple, d: int) -> tuple:
    k = im.rank(rays)
    if len(rays) == k:
        return (rays,)
    _, facets = facet_description(rays, d)
    apex = rays[0]
    out = []
    for f in facets:
        if im.dot(f, apex) == 0:
            continue
        face = tuple(r for r in rays if im.dot(f, r) == 0)
        for simplex in _pulling(face, d):
            out.append((apex,) + simplex)
    return tuple(out)


def parallelepiped_points(simplex: Sequence[tuple]) -> list[tuple]:
    """Lattice points ``sum t_i v_i`` with ``0 <= t_i < 1`` for a full-rank simplicial cone."""
    a = [list(v) for v in simplex]
    inv = im.inverse(a)
    h = im.hermite_rows(a)
    diag = [h[i][i] for i in range(len(h))]
    pts = []
    for c in product(*(range(x) for x in diag)):
        lam = im.vec_mat(list(c), inv)
        frac = [x - floor(x) for x in lam]
        pts.append(tuple(int(x) for x in im.vec_mat(frac, a)))
    return sorted(set(pts))


def _hilbert_basis_full(gens: Sequence[tuple], d: int) -> list[tuple]:
    rays = _extreme_rays_full(gens, d)
    _, facets = facet_description(rays, d)
    candidates = set(rays)
    for simplex in pulling_triangulation(rays, d):
        for p in parallelepiped_points(simplex):
            if any(p):
                candidates.add(p)
    cands = sorted(candidates, key=lambda v: (sum(im.dot(f, v) for f in facets), v))
    basis = []
    for x in cands:
        reducible = False
        for y in cands:
            if y == x:
                continue
            diff = tuple(a - b for a, b in zip(x, y))
            if _in_cone(facets, diff):
                reducible = True
                break
        if not reducible:
            basis.append(x)
    return basis


def hilbert_basis(c: Cone, lattice: Lattice | None = None) -> list[tuple]:
    """Minimal generating set of the monoid of lattice points in a pointed cone."""
    _require_pointed(c)
    fr = c.frame(lattice)
    if fr.dim == 0:
        return []
    hb = _hilbert_basis_full(fr.gens, fr.dim)
    return sorted(fr.to_ambient(h) for h in hb)


def _subdiagram_volume_full(gens, d) -> int:
    hb = _hilbert_basis_full(gens, d)
    rays = _extreme_rays_full(gens, d)
    homog = [tuple(h) + (1,) for h in hb] + [tuple(r) + (0,) for r in rays]
    _, facets = facet_description(homog, d + 1)
    total = 0
    for f in facets:
        a, b = f[:-1], f[-1]
        if b >= 0:
            continue
        level = -b
        pts = [h for h in hb if im.dot(a, h) == level]
        verts = _extreme_rays_full(pts, d)
        for simplex in pulling_triangulation(verts, d):
            total += abs(im.det([list(v) for v in simplex]))
    return total


def subdiagram_volume(c: Cone, lattice: Lattice | None = None) -> int:
    """Normalized volume of the closure of ``c`` minus the convex hull of its
    nonzero lattice points."""
    _require_pointed(c)
    fr = c.frame(lattice)
    if fr.dim < fr.lattice.rank:
        raise ConeError("subdiagram volume needs a full-dimensional cone")
    return _subdiagram_volume_full(fr.gens, fr.dim)


# -- polytopes -------------------------------------------------------------


def _points_in_hull_coords(verts: Sequence[Sequence], n: int) -> list[tuple]:
    """Integer points of conv(verts) for rational vertices in Q^n."""
    homog = [im.clear_denominators(list(v) + [1]) for v in verts]
    eqs, facets = facet_description(homog, n + 1)
    lo = [floor(min(Fraction(v[i]) for v in verts)) for i in range(n)]
    hi = [ceil(max(Fraction(v[i]) for v in verts)) for i in range(n)]
    out = []
    for x in product(*(range(a, b + 1) for a, b in zip(lo, hi))):
        y = list(x) + [1]
        if all(im.dot(e, y) == 0 for e in eqs) and all(im.dot(f, y) >= 0 for f in facets):
            out.append(tuple(x))
    return out


def lattice_points_in_polytope(vertices: Sequence[Sequence], lattice: Lattice | None = None) -> list[tuple]:
    """All lattice points of the convex hull of ``vertices``, sorted."""
    if not vertices:
        return []
    n = len(vertices[0])
    lattice = lattice or Lattice.standard(n)
    cs = [lattice.coords(v) for v in vertices]
    return sorted(lattice.from_coords(p) for p in _points_in_hull_coords(cs, n))


@dataclass(frozen=True)
class PiPolytope:
    """Convex hull of the origin and the primitive ray generators of a cone."""

    cone: Cone
    lattice: Lattice
    vertices: tuple

    def lattice_points(self) -> list[tuple]:
        return lattice_points_in_polytope(list(self.vertices), self.lattice)


def pi_polytope(c: Cone, lattice: Lattice | None = None) -> PiPolytope:
    lattice = lattice or c.lattice
    zero = tuple(0 for _ in range(lattice.rank))
    rays = extremal_rays(c, lattice)
    return PiPolytope(c, lattice, (zero,) + tuple(rays))


# -- classification --------------------------------------------------------


@dataclass(frozen=True)
class ConeClassification:
    q_gorenstein: bool
    gorenstein: bool
    canonical: bool | None
    terminal: bool | None
    m_sigma: tuple | None
    ray_count: int
    smooth: bool

    def as_dict(self) -> dict:
        return {
            "q_gorenstein": self.q_gorenstein,
            "gorenstein": self.gorenstein,
            "canonical": self.canonical,
            "terminal": self.terminal,
            "m_sigma": list(self.m_sigma) if self.m_sigma is not None else None,
            "ray_count": self.ray_count,
            "smooth": self.smooth,
        }


def classify_cone(c: Cone, lattice: Lattice | None = None) -> ConeClassification:
    """Gorenstein, Q-Gorenstein, canonical and terminal verdicts for the
    affine toric variety of a pointed cone ``c`` with respect to ``lattice``.

    Canonical and terminal are ``None`` when the cone is not Q-Gorenstein.
    """
    _require_pointed(c)
    fr = c.frame(lattice)
    d = fr.dim
    rays = _extreme_rays_full(fr.gens, d)
    smooth = len(rays) == d and abs(im.det([list(r) for r in rays])) == 1
    m = im.solve([list(r) for r in rays], [1] * len(rays))
    if m is None:
        return ConeClassification(False, False, None, None, None, len(rays), smooth)
    gorenstein = all(x.denominator == 1 for x in m)
    _, facets = facet_description(rays, d)
    pts = _pi_points_qgor(rays, facets, m)
    ray_set = set(rays)
    nonzero = [p for p in pts if any(p)]
    canonical = all(im.dot(m, p) == 1 for p in nonzero)
    terminal = all(p in ray_set for p in nonzero)
    return ConeClassification(True, gorenstein, canonical, terminal,
                              fr.covector_to_ambient(m), len(rays), smooth)


def _pi_points_qgor(rays, facets, m) -> list[tuple]:
    """Lattice points of the cone with ``m <= 1``; equals the hull of 0 and the rays."""
    d = len(m)
    lo = [min(0, min(r[i] for r in rays)) for i in range(d)]
    hi = [max(0, max(r[i] for r in rays)) for i in range(d)]
    out = []
    for x in product(*(range(a, b + 1) for a, b in zip(lo, hi))):
        if _in_cone(facets, x) and im.dot(m, x) <= 1:
            out.append(tuple(x))
    return out


def pi_lattice_points(c: Cone, lattice: Lattice | None = None) -> list[tuple]:
    """Lattice points of the convex hull of 0 and the primitive ray generators."""
    return pi_polytope(c, lattice).lattice_points()


def facets_avoiding_origin(c: Cone, lattice: Lattice | None = None) -> list[tuple]:
    """Facets ``(normal, level)`` of the hull of 0 and the primitive ray
    generators that do not pass through the origin, in frame coordinates."""
    _require_pointed(c)
    fr = c.frame(lattice)
    rays = _extreme_rays_full(fr.gens, fr.dim)
    zero = tuple(0 for _ in range(fr.dim))
    homog = [tuple(r) + (1,) for r in rays] + [zero + (1,)]
    _, facets = facet_description(homog, fr.dim + 1)
    out = []
    for f in facets:
        # f . (x, 1) >= 0 reads  -a . x <= b; the origin is strictly inside when b > 0
        a, b = f[:-1], f[-1]
        if b > 0:
            out.append((tuple(-x for x in a), b))
    return out
