"""Ages and the Reid--Tai criterion for cyclic quotient singularities.

Two routes to the same verdicts are provided:

* the *smooth* route: a finite group acting diagonally on affine space,
  judged by the ages of its elements (:func:`classify_smooth_quotient`);
* the *toric* route: a cyclic group acting through the torus of an affine
  toric variety, judged by refining the lattice and classifying the same
  cone again (:func:`classify_cyclic_toric_quotient`).

Group elements are :class:`GroupElementSpec` objects: an order ``r`` and
eigenvalue exponents ``a_i`` relative to a fixed primitive ``r``-th root of
unity, so the element acts on ``x_i`` by ``zeta^{a_i}``.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Callable, Sequence

from . import _intmath as im
from .cones import Cone, ConeClassification, ConeError, Lattice, classify_cone


class ReidTaiError(ValueError):
    pass


@dataclass(frozen=True)
class GroupElementSpec:
    order: int
    exponents: tuple

    def __init__(self, order: int, exponents: Sequence[int]):
        if order < 1:
            raise ReidTaiError("order must be positive")
        object.__setattr__(self, "order", int(order))
        object.__setattr__(self, "exponents", tuple(int(a) % order for a in exponents))

    @property
    def dimension(self) -> int:
        return len(self.exponents)

    def is_identity(self) -> bool:
        return not any(self.exponents)

    def power(self, j: int) -> "GroupElementSpec":
        return GroupElementSpec(self.order, [j * a for a in self.exponents])

    def eigenvalue_phases(self) -> tuple:
        """Exponents as fractions of a full turn, in ``[0, 1)``."""
        return tuple(Fraction(a, self.order) for a in self.exponents)

    def actual_order(self) -> int:
        g = self.order
        for a in self.exponents:
            g = gcd(g, a)
        return self.order // g


@dataclass(frozen=True)
class CyclicAction:
    """``Z/r`` acting through the torus, with weight vector ``lambda`` in ``N/rN``."""

    order: int
    weights: tuple

    def __init__(self, order: int, weights: Sequence[int]):
        if order < 1:
            raise ReidTaiError("order must be positive")
        object.__setattr__(self, "order", int(order))
        object.__setattr__(self, "weights", tuple(int(w) % order for w in weights))

    @property
    def dimension(self) -> int:
        return len(self.weights)

    def generator(self) -> GroupElementSpec:
        return GroupElementSpec(self.order, self.weights)

    def elements(self) -> list[GroupElementSpec]:
        """Nontrivial group elements acting on the coordinates of the first orthant."""
        g = self.generator()
        return [g.power(j) for j in range(1, self.order) if not g.power(j).is_identity()]


def units(r: int) -> list[int]:
    return [k for k in range(1, r + 1) if gcd(k, r) == 1] if r > 1 else [1]


def age(spec: GroupElementSpec, k: int = 1) -> Fraction:
    """Age of ``spec`` with respect to the primitive root ``zeta^k``."""
    r = spec.order
    if gcd(k, r) != 1:
        raise ReidTaiError(f"{k} is not a unit modulo {r}")
    return Fraction(sum((k * a) % r for a in spec.exponents), r)


def ages(spec: GroupElementSpec) -> list[Fraction]:
    return [age(spec, k) for k in units(spec.order)]


def is_pseudo_reflection(spec: GroupElementSpec) -> bool:
    """Exactly one eigenvalue differs from 1."""
    if spec.is_identity():
        raise ReidTaiError("the identity is not a pseudo-reflection candidate")
    return sum(1 for a in spec.exponents if a == 0) == spec.dimension - 1


@dataclass(frozen=True)
class SmoothQuotientVerdict:
    gorenstein: bool
    canonical: bool
    terminal: bool
    min_age: Fraction | None
    sufficient_only: bool

    def as_dict(self) -> dict:
        return {
            "gorenstein": self.gorenstein,
            "canonical": self.canonical,
            "terminal": self.terminal,
            "min_age": self.min_age,
            "sufficient_only": self.sufficient_only,
        }


def classify_smooth_quotient(elements: Sequence[GroupElementSpec],
                             no_pseudo_reflections_asserted: bool = True) -> SmoothQuotientVerdict:
    """Age criterion over every nontrivial element and every primitive root.

    Without the assertion that the group has no pseudo-reflections the
    canonical and terminal verdicts are sufficient conditions only, which is
    recorded in ``sufficient_only``.
    """
    all_ages = [a for g in elements if not g.is_identity() for a in ages(g)]
    if not all_ages:
        return SmoothQuotientVerdict(True, True, True, None, not no_pseudo_reflections_asserted)
    lo = min(all_ages)
    return SmoothQuotientVerdict(
        gorenstein=all(a.denominator == 1 for a in all_ages),
        canonical=lo >= 1,
        terminal=lo > 1,
        min_age=lo,
        sufficient_only=not no_pseudo_reflections_asserted,
    )


# -- toric route -----------------------------------------------------------


def extend_lattice(n: int, act: CyclicAction) -> Lattice:
    """``Z^n + Z (lambda / r)``, in Hermite form."""
    if act.dimension != n:
        raise ReidTaiError("action and lattice dimensions differ")
    gens = [[int(i == j) for j in range(n)] for i in range(n)]
    gens.append([Fraction(w, act.order) for w in act.weights])
    return Lattice.generated_by(gens)


@dataclass(frozen=True)
class ToricQuotientVerdict:
    q_gorenstein: bool
    gorenstein: bool
    canonical: bool | None
    terminal: bool | None
    gorenstein_sufficient: str   # "yes", "unknown" or "not-applicable"
    classification: ConeClassification

    def as_dict(self) -> dict:
        return {
            "q_gorenstein": self.q_gorenstein,
            "gorenstein": self.gorenstein,
            "canonical": self.canonical,
            "terminal": self.terminal,
            "gorenstein_sufficient": self.gorenstein_sufficient,
            "m_sigma": list(self.classification.m_sigma) if self.classification.m_sigma else None,
        }


def classify_cyclic_toric_quotient(c: Cone, act: CyclicAction) -> ToricQuotientVerdict:
    """Verdicts for ``U_sigma / (Z/r)`` computed on the refined lattice."""
    n = c.ambient_dim
    if not c.is_pointed() or not c.is_full_dimensional():
        raise ConeError("cyclic toric quotient needs a pointed full-dimensional cone")
    refined = extend_lattice(n, act)
    cls = classify_cone(c, refined)
    base = classify_cone(c, Lattice.standard(n))
    if not base.gorenstein:
        gs = "not-applicable"
    else:
        pairing = im.dot(base.m_sigma, act.weights)
        gs = "yes" if pairing % act.order == 0 else "unknown"
    return ToricQuotientVerdict(cls.q_gorenstein, cls.gorenstein, cls.canonical, cls.terminal, gs, cls)


def _ray_of(cone_rays: list[tuple], v: Sequence[int]) -> tuple | None:
    """The extremal ray (primitive generator) on which ``v`` lies, if any."""
    pv = im.primitive(v)
    if not any(pv):
        return None
    for r in cone_rays:
        if tuple(pv) == tuple(im.primitive(r)):
            return tuple(r)
    return None


@dataclass(frozen=True)
class DescentCheck:
    rays_to_rays: bool
    primitive_to_primitive: bool
    equivariant: bool
    target_smooth_without_pseudo_reflections: bool
    conclusion: dict | None

    @property
    def hypotheses_hold(self) -> bool:
        return (self.rays_to_rays and self.primitive_to_primitive and self.equivariant
                and self.target_smooth_without_pseudo_reflections)

    def as_dict(self) -> dict:
        return {
            "rays_to_rays": self.rays_to_rays,
            "primitive_to_primitive": self.primitive_to_primitive,
            "equivariant": self.equivariant,
            "target_smooth_without_pseudo_reflections": self.target_smooth_without_pseudo_reflections,
            "hypotheses_hold": self.hypotheses_hold,
            "conclusion": self.conclusion,
        }


def _smooth_coordinate_weights(c: Cone, act: CyclicAction) -> list[int] | None:
    """Weights of the action on the coordinates of a smooth full-dimensional cone."""
    rays = c.extremal_rays()
    n = c.ambient_dim
    if len(rays) != n or abs(im.det([list(r) for r in rays])) != 1:
        return None
    # coordinates are the dual basis of the rays
    inv = im.inverse([list(r) for r in rays])
    cols = im.transpose(inv)
    return [int(im.dot(col, act.weights)) % act.order for col in cols]


def check_descent(c1: Cone, c2: Cone, matrix: Sequence[Sequence[int]],
                  act1: CyclicAction, act2: CyclicAction) -> DescentCheck:
    """Check that an equivariant lattice map sends rays to rays, primitive
    generators to primitive generators, and lands in a smooth cone without
    pseudo-reflections; if so, the source quotient is Q-Gorenstein and
    inherits canonicity from the target."""
    n1, n2 = c1.ambient_dim, c2.ambient_dim
    if len(matrix) != n2 or any(len(row) != n1 for row in matrix):
        raise ReidTaiError("map matrix has the wrong shape")
    if act1.dimension != n1 or act2.dimension != n2:
        raise ReidTaiError("action dimensions do not match the cones")
    rays1 = c1.extremal_rays()
    rays2 = c2.extremal_rays()
    images = [tuple(im.mat_vec(matrix, r)) for r in rays1]
    targets = [_ray_of(rays2, v) for v in images]
    rays_ok = all(t is not None for t in targets)
    prim_ok = rays_ok and all(tuple(v) == t for v, t in zip(images, targets))
    if act1.order != act2.order:
        equiv = False
    else:
        img = im.mat_vec(matrix, act1.weights)
        equiv = all((a - b) % act2.order == 0 for a, b in zip(img, act2.weights))
    weights = _smooth_coordinate_weights(c2, act2) if c2.is_full_dimensional() else None
    smooth_ok = weights is not None
    if smooth_ok:
        g = GroupElementSpec(act2.order, weights)
        smooth_ok = not any(is_pseudo_reflection(g.power(j)) for j in range(1, act2.order)
                            if not g.power(j).is_identity())
    conclusion = None
    if rays_ok and prim_ok and equiv and smooth_ok:
        target = classify_cyclic_toric_quotient(c2, act2)
        conclusion = {"q_gorenstein": True, "canonical": bool(target.canonical)}
    return DescentCheck(rays_ok, prim_ok, equiv, smooth_ok, conclusion)


# -- finite groups and cyclic subgroups ------------------------------------


def validate_group(table: Sequence[Sequence[int]]) -> int:
    """Check that a composition table is a group; return the identity index."""
    n = len(table)
    if n == 0 or any(len(row) != n for row in table):
        raise ReidTaiError("composition table must be square and nonempty")
    if any(not (0 <= x < n) for row in table for x in row):
        raise ReidTaiError("composition table is not closed")
    ident = next((e for e in range(n) if all(table[e][x] == x and table[x][e] == x for x in range(n))), None)
    if ident is None:
        raise ReidTaiError("no identity element")
    for x in range(n):
        if not any(table[x][y] == ident for y in range(n)):
            raise ReidTaiError("an element has no inverse")
    for x in range(n):
        for y in range(n):
            for z in range(n):
                if table[table[x][y]][z] != table[x][table[y][z]]:
                    raise ReidTaiError("composition is not associative")
    return ident


def cyclic_subgroups(table: Sequence[Sequence[int]]) -> list[tuple[int, ...]]:
    """Distinct cyclic subgroups, each as the sorted tuple of its element indices,
    listed with a generator first."""
    ident = validate_group(table)
    seen: dict[frozenset, tuple[int, ...]] = {}
    for g in range(len(table)):
        powers = [ident]
        x = g
        while x != ident:
            powers.append(x)
            x = table[x][g]
        key = frozenset(powers)
        if key not in seen:
            seen[key] = tuple([g] + sorted(set(powers) - {g}))
    return sorted(seen.values(), key=lambda t: (len(t), t))


def diagonal_composition_table(elements: Sequence[GroupElementSpec]) -> list[list[int]]:
    """Composition table of diagonal elements, matched by eigenvalue phases."""
    phases = [g.eigenvalue_phases() for g in elements]
    index = {p: i for i, p in enumerate(phases)}
    table = []
    for p in phases:
        row = []
        for q in phases:
            prod = tuple((a + b) % 1 for a, b in zip(p, q))
            if prod not in index:
                raise ReidTaiError("element list is not closed under composition")
            row.append(index[prod])
        table.append(row)
    return table


def normalize(g: GroupElementSpec) -> GroupElementSpec:
    """Same element, written with its actual order."""
    r = g.actual_order()
    f = g.order // r
    return GroupElementSpec(r, [a // f for a in g.exponents])


def remove_pseudo_reflections(gen: GroupElementSpec) -> GroupElementSpec:
    """Pass from a diagonal cyclic group to the residual action on the quotient
    by its pseudo-reflection subgroup, repeatedly, until none are left.

    For the subgroup ``H_i`` fixing every coordinate but the ``i``-th, the
    functions ``y_i = x_i^{|H_i|}`` are coordinates of the quotient, on which
    the generator acts with exponents ``a_i |H_i| / |G_ps|`` modulo
    ``r / |G_ps|``.
    """
    g = normalize(gen)
    while True:
        r = g.order
        if r == 1:
            return g
        powers = [g.power(j) for j in range(r)]
        h_sizes = []
        for i in range(g.dimension):
            h_sizes.append(sum(1 for p in powers
                               if all(a == 0 for k, a in enumerate(p.exponents) if k != i)))
        ps_size = 1
        for h in h_sizes:
            ps_size *= h
        if ps_size == 1:
            return g
        new_r = r // ps_size
        new_exp = [(a * h // ps_size) % max(new_r, 1) for a, h in zip(g.exponents, h_sizes)]
        g = GroupElementSpec(max(new_r, 1), new_exp)


def diagonal_cyclic_classifier(subgroup: Sequence[GroupElementSpec]) -> dict:
    """Verdict for a diagonal cyclic group after removing its pseudo-reflections.

    ``subgroup[0]`` must be a generator.
    """
    residual = remove_pseudo_reflections(subgroup[0])
    v = classify_smooth_quotient(residual.power(j) for j in range(1, residual.order)) \
        if residual.order > 1 else classify_smooth_quotient([])
    return {"canonical": v.canonical, "terminal": v.terminal}


def cyclic_reduction(elements: Sequence[GroupElementSpec],
                     table: Sequence[Sequence[int]] | None = None,
                     classifier: Callable[[list[GroupElementSpec]], dict] = diagonal_cyclic_classifier,
                     max_workers: int = 1) -> dict:
    """Canonical / terminal verdict of a finite group as the conjunction of the
    verdicts of its cyclic subgroups."""
    elements = list(elements)
    if table is None:
        table = diagonal_composition_table(elements)
    subgroups = cyclic_subgroups(table)
    groups = [[elements[i] for i in sg] for sg in subgroups]
    if max_workers > 1:
        with ThreadPoolExecutor(max_workers=max_workers) as pool:
            verdicts = list(pool.map(classifier, groups))
    else:
        verdicts = [classifier(gr) for gr in groups]
    return {
        "canonical": all(v["canonical"] for v in verdicts),
        "terminal": all(v["terminal"] for v in verdicts),
        "subgroups": len(groups),
    }
