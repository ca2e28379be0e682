from fractions import Fraction
from itertools import product

import pytest
from hypothesis import assume, given, settings, strategies as st

from cographic import _intmath as im
from cographic.cones import (
    Cone,
    ConeError,
    Lattice,
    classify_cone,
    double_description,
    dual_cone,
    extremal_rays,
    facets_avoiding_origin,
    hilbert_basis,
    lattice_points_in_polytope,
    parallelepiped_points,
    pi_lattice_points,
    pi_polytope,
    primitive,
    pulling_triangulation,
    subdiagram_volume,
)
from cographic.graph import cycle_graph, thick_edge
from cographic.ring import cographic_cone
from oracles import hilbert_basis_oracle, lattice_points_in_box, smith_invariants, subdiagram_volume_oracle

half = Fraction(1, 2)


def mutually_contained(a: Cone, b: Cone) -> bool:
    return all(b.contains(g) for g in a.generators) and all(a.contains(g) for g in b.generators)


@st.composite
def pointed_cones(draw, dim, coord=2, max_gens=4):
    gens = draw(st.lists(st.tuples(*[st.integers(-coord, coord)] * dim).filter(any),
                         min_size=dim, max_size=max_gens))
    c = Cone(gens)
    assume(c.is_full_dimensional() and c.is_pointed())
    return c


class TestLattice:
    def test_generated_by_hermite(self):
        lat = Lattice.generated_by([(1, 0), (0, 1), (half, half)])
        assert lat.rank == 2
        assert lat.contains((half, half)) and lat.contains((1, 0))
        assert not lat.contains((half, 0))
        assert lat.index_in(Lattice.standard(2)) == Fraction(1, 2)

    def test_dual_pairs_to_identity(self):
        lat = Lattice([(half, 0), (0, 1)])
        dual = lat.dual()
        pairing = [[sum(a * b for a, b in zip(u, v)) for v in dual.basis] for u in lat.basis]
        assert pairing == [[1, 0], [0, 1]]

    def test_dependent_basis_rejected(self):
        with pytest.raises(ConeError):
            Lattice([(1, 2), (2, 4)])


class TestDoubleDescription:
    def test_half_plane(self):
        lines, rays = double_description([(1, 0)], 2)
        assert len(lines) == 1 and len(rays) == 1

    def test_orthant(self):
        lines, rays = double_description([(1, 0, 0), (0, 1, 0), (0, 0, 1)], 3)
        assert lines == [] and sorted(rays) == [(0, 0, 1), (0, 1, 0), (1, 0, 0)]


class TestDualCone:
    def test_quadrant_self_dual(self):
        q = Cone([(1, 0), (0, 1)])
        assert mutually_contained(dual_cone(q), q)

    def test_ray_to_half_plane(self):
        d = dual_cone(Cone([(1, 0)]))
        assert d.dim == 2 and not d.is_pointed()
        assert d.contains((0, 5)) and d.contains((0, -5)) and not d.contains((-1, 0))

    def test_example(self):
        d = dual_cone(Cone([(1, 0), (1, 2)]))
        assert mutually_contained(d, Cone([(0, 1), (2, -1)]))

    @given(pointed_cones(3))
    def test_pairing_nonnegative(self, c):
        d = dual_cone(c)
        for u in d.generators:
            for v in c.generators:
                assert im.dot(u, v) >= 0

    @given(pointed_cones(3))
    def test_biduality(self, c):
        assert mutually_contained(dual_cone(dual_cone(c)), c)

    @given(pointed_cones(2))
    def test_biduality_plane(self, c):
        assert mutually_contained(dual_cone(dual_cone(c)), c)

    def test_whole_space(self):
        with pytest.raises(ConeError):
            dual_cone(Cone([(1, 0), (-1, 0), (0, 1), (0, -1)]))


class TestRays:
    def test_quadrant(self):
        assert extremal_rays(Cone([(1, 0), (0, 1), (1, 1)])) == [(0, 1), (1, 0)]

    def test_gcd(self):
        assert primitive((2, 4), Lattice.standard(2)) == (1, 2)

    def test_refined_lattice(self):
        lat = Lattice([(half, 0), (0, 1)])
        assert primitive((1, 0), lat) == (half, 0)
        assert extremal_rays(Cone([(1, 0), (0, 1)]), lat) == [(0, 1), (half, 0)]

    def test_zero_vector(self):
        with pytest.raises(ConeError):
            primitive((0, 0), Lattice.standard(2))


class TestHilbertBasis:
    def test_quadrant(self):
        assert hilbert_basis(Cone([(1, 0), (0, 1)])) == [(0, 1), (1, 0)]

    def test_a1_cone(self):
        assert hilbert_basis(Cone([(1, 0), (1, 2)])) == [(1, 0), (1, 1), (1, 2)]

    def test_loop_graph(self):
        from cographic.graph import loop_graph
        sigma, _ = cographic_cone(loop_graph())
        assert len(hilbert_basis(sigma)) == 2

    def test_lower_dimensional(self):
        hb = hilbert_basis(Cone([(1, 0, 0), (1, 2, 0)]))
        assert hb == [(1, 0, 0), (1, 1, 0), (1, 2, 0)]

    def test_not_pointed(self):
        with pytest.raises(ConeError):
            hilbert_basis(Cone([(1, 0), (-1, 0)]))

    def test_refined_lattice(self):
        lat = Lattice.generated_by([(1, 0), (0, 1), (half, half)])
        hb = hilbert_basis(Cone([(1, 0), (0, 1)]), lat)
        assert sorted(hb) == [(0, 1), (half, half), (1, 0)]

    @given(pointed_cones(2, coord=4))
    def test_matches_oracle_plane(self, c):
        assert hilbert_basis(c) == hilbert_basis_oracle(c.facets(), c.extremal_rays())

    @settings(max_examples=15)
    @given(pointed_cones(3, coord=2, max_gens=4))
    def test_matches_oracle_space(self, c):
        assert hilbert_basis(c) == hilbert_basis_oracle(c.facets(), c.extremal_rays())

    @given(pointed_cones(3))
    def test_minimal(self, c):
        hb = hilbert_basis(c)
        for x in hb:
            others = [h for h in hb if h != x]
            # x is not a nonnegative integer combination of the others
            assert not representable(x, others, c)

    @settings(max_examples=20)
    @given(pointed_cones(3))
    def test_generates_points_up_to_radius(self, c):
        hb = hilbert_basis(c)
        radius = 3
        for p in lattice_points_in_box(c.facets(), [-radius] * 3, [radius] * 3):
            assert representable(p, hb, c)


def representable(x, gens, cone):
    """Whether ``x`` is a nonnegative integer combination of ``gens`` (search by subtraction)."""
    x = tuple(x)
    if not any(x):
        return True
    seen = set()
    stack = [x]
    while stack:
        y = stack.pop()
        for g in gens:
            z = tuple(a - b for a, b in zip(y, g))
            if not any(z):
                return True
            if z not in seen and cone.contains(z):
                seen.add(z)
                stack.append(z)
    return False


class TestTriangulation:
    @given(pointed_cones(3, max_gens=5))
    def test_simplices_cover_volume(self, c):
        rays = c.extremal_rays()
        simplices = pulling_triangulation(rays, 3)
        for s in simplices:
            assert len(s) == 3 and im.rank(s) == 3
        # total number of parallelepiped points equals the sum of determinants
        for s in simplices:
            assert len(parallelepiped_points(s)) == abs(im.det([list(v) for v in s]))

    def test_parallelepiped_determinant(self):
        s = [(1, 0), (1, 2)]
        assert parallelepiped_points(s) == [(0, 0), (1, 1)]


class TestPolytopePoints:
    def test_unit_simplex(self):
        assert lattice_points_in_polytope([(0, 0), (1, 0), (0, 1)]) == [(0, 0), (0, 1), (1, 0)]

    def test_segment(self):
        assert lattice_points_in_polytope([(0,), (2,)]) == [(0,), (1,), (2,)]

    def test_pi_of_a1(self):
        c = Cone([(1, 0), (1, 2)])
        assert pi_lattice_points(c) == [(0, 0), (1, 0), (1, 1), (1, 2)]
        assert set(pi_polytope(c).vertices) == {(0, 0), (1, 0), (1, 2)}

    @given(st.lists(st.tuples(st.integers(-3, 3), st.integers(-3, 3)), min_size=3, max_size=5))
    def test_matches_brute_force(self, verts):
        assume(im.rank([(a - verts[0][0], b - verts[0][1]) for a, b in verts]) == 2)
        from scipy.spatial import Delaunay
        tri = Delaunay(verts)
        box = product(range(-3, 4), repeat=2)
        expected = sorted(p for p in box if tri.find_simplex(p, tol=1e-9) >= 0)
        assert lattice_points_in_polytope(verts) == expected

    def test_refined_lattice(self):
        lat = Lattice.generated_by([(1, 0), (0, 1), (half, half)])
        pts = lattice_points_in_polytope([(0, 0), (1, 0), (0, 1)], lat)
        assert sorted(pts) == sorted([(0, 0), (1, 0), (0, 1), (half, half)])


class TestClassify:
    def test_quadrant(self):
        v = classify_cone(Cone([(1, 0), (0, 1)]))
        assert (v.q_gorenstein, v.gorenstein, v.canonical, v.terminal, v.smooth) == (True,) * 5

    def test_non_q_gorenstein_example_base(self):
        v = classify_cone(Cone([(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, -1)]))
        assert v.gorenstein and v.canonical and v.terminal
        assert v.m_sigma == (1, 1, 1)

    def test_a1(self):
        v = classify_cone(Cone([(1, 0), (1, 2)]))
        assert v.gorenstein and v.canonical and not v.terminal

    def test_not_q_gorenstein(self):
        # four rays in R^3 not on a common affine plane
        v = classify_cone(Cone([(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, -2)]))
        assert not v.q_gorenstein and not v.gorenstein
        assert v.canonical is None and v.terminal is None

    def test_q_gorenstein_not_gorenstein(self):
        w = classify_cone(Cone([(3, -1), (0, 1)]))
        # m solves 3a - b = 1, b = 1 -> a = 2/3
        assert w.q_gorenstein and not w.gorenstein
        assert w.m_sigma == (Fraction(2, 3), 1)

    @given(pointed_cones(3))
    def test_implications(self, c):
        v = classify_cone(c)
        if v.terminal:
            assert v.canonical
        if v.canonical:
            assert v.q_gorenstein
        if v.gorenstein:
            assert v.q_gorenstein
        if v.smooth:
            assert v.gorenstein and v.canonical and v.terminal
            assert subdiagram_volume(c) == 1

    @given(pointed_cones(3))
    def test_canonical_matches_unique_facet(self, c):
        # canonical iff the hull of 0 and the rays has a single facet off the
        # origin and that facet carries every nonzero Pi point
        v = classify_cone(c)
        if not v.q_gorenstein:
            assert len(facets_avoiding_origin(c)) > 1
        else:
            assert len(facets_avoiding_origin(c)) == 1

    def test_unimodular_change_of_basis(self):
        # smoothness is lattice-intrinsic
        c = Cone([(1, 1), (1, 2)])
        assert classify_cone(c).smooth and subdiagram_volume(c) == 1


class TestSubdiagramVolume:
    def test_quadrant(self):
        assert subdiagram_volume(Cone([(1, 0), (0, 1)])) == 1

    def test_a1(self):
        assert subdiagram_volume(Cone([(1, 0), (1, 2)])) == 2

    @pytest.mark.parametrize("n", range(2, 5))
    def test_cycle_graphs(self, n):
        sigma, _ = cographic_cone(cycle_graph(n))
        assert subdiagram_volume(sigma) == 2

    def test_thick_edge_3(self):
        sigma, _ = cographic_cone(thick_edge(3))
        assert subdiagram_volume(sigma) == 6

    def test_lower_dimensional_rejected(self):
        with pytest.raises(ConeError):
            subdiagram_volume(Cone([(1, 0, 0), (0, 1, 0)]))

    @given(pointed_cones(2, coord=5))
    def test_plane_matches_hull_oracle(self, c):
        rays = c.extremal_rays()
        hb = hilbert_basis_oracle(c.facets(), rays)
        grading = [sum(f[i] for f in c.facets()) for i in range(2)]
        assert subdiagram_volume(c) == subdiagram_volume_oracle(rays, hb, grading)

    @settings(max_examples=15)
    @given(pointed_cones(3, coord=2))
    def test_space_matches_hull_oracle(self, c):
        rays = c.extremal_rays()
        hb = hilbert_basis_oracle(c.facets(), rays)
        grading = [sum(f[i] for f in c.facets()) for i in range(3)]
        assert subdiagram_volume(c) == subdiagram_volume_oracle(rays, hb, grading)

    @pytest.mark.parametrize("graph", [cycle_graph(2), cycle_graph(3), thick_edge(2)])
    def test_cographic_matches_hull_oracle(self, graph):
        sigma, _ = cographic_cone(graph)
        rays = sigma.extremal_rays()
        hb = hilbert_basis(sigma)
        grading = [sum(f[i] for f in sigma.facets()) for i in range(sigma.ambient_dim)]
        assert subdiagram_volume(sigma) == subdiagram_volume_oracle(rays, hb, grading)

    @given(pointed_cones(3))
    def test_simplicial_bound(self, c):
        # the volume never exceeds the index of the lattice spanned by a simplex of rays
        rays = c.extremal_rays()
        if len(rays) == 3:
            assert subdiagram_volume(c) <= abs(im.det([list(r) for r in rays]))
            assert smith_invariants([list(r) for r in rays])
