from fractions import Fraction
from itertools import product
from math import gcd

import pytest
from hypothesis import given, strategies as st

from cographic.cones import Cone, ConeError, Lattice, classify_cone
from cographic.graph import cycle_graph
from cographic.jacobian import edge_cone_map
from cographic.reid_tai import (
    CyclicAction,
    GroupElementSpec,
    ReidTaiError,
    age,
    ages,
    check_descent,
    classify_cyclic_toric_quotient,
    classify_smooth_quotient,
    cyclic_reduction,
    cyclic_subgroups,
    diagonal_composition_table,
    diagonal_cyclic_classifier,
    extend_lattice,
    is_pseudo_reflection,
    remove_pseudo_reflections,
    validate_group,
)
from cographic.ring import cographic_cone
from oracles import age_oracle

NON_Q_GOR = [(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, -1)]
half = Fraction(1, 2)


def orthant(n):
    return Cone([[int(i == j) for j in range(n)] for i in range(n)])


specs = st.integers(1, 8).flatmap(
    lambda r: st.builds(GroupElementSpec, st.just(r), st.lists(st.integers(0, r - 1), min_size=1, max_size=4)))


class TestAge:
    def test_examples(self):
        assert age(GroupElementSpec(2, (1, 1))) == 1
        g = GroupElementSpec(3, (1, 1))
        assert age(g, 1) == Fraction(2, 3) and age(g, 2) == Fraction(4, 3)
        assert age(GroupElementSpec(6, (1, 2))) == Fraction(1, 2)

    def test_non_unit_rejected(self):
        with pytest.raises(ReidTaiError):
            age(GroupElementSpec(4, (1, 1)), 2)

    @given(specs, st.data())
    def test_matches_eigenvalue_oracle(self, g, data):
        for k, a in zip([k for k in range(1, g.order + 1) if gcd(k, g.order) == 1], ages(g)):
            assert abs(float(a) - age_oracle(g.order, g.exponents, k)) < 1e-9

    @given(specs)
    def test_age_of_inverse(self, g):
        inv = g.power(-1)
        zeros = sum(1 for a in g.exponents if a == 0)
        for k in ([1] if g.order == 1 else [k for k in range(1, g.order) if gcd(k, g.order) == 1]):
            total = age(g, k) + age(inv, k)
            assert total.denominator == 1 and total == g.dimension - zeros


class TestPseudoReflection:
    def test_examples(self):
        assert is_pseudo_reflection(GroupElementSpec(2, (1, 0, 0)))
        assert not is_pseudo_reflection(GroupElementSpec(2, (1, 1, 0)))
        assert is_pseudo_reflection(GroupElementSpec(4, (2, 0)))

    def test_identity_rejected(self):
        with pytest.raises(ReidTaiError):
            is_pseudo_reflection(GroupElementSpec(3, (0, 0)))


class TestSmoothQuotient:
    def test_a1(self):
        v = classify_smooth_quotient([GroupElementSpec(2, (1, 1))])
        assert v.gorenstein and v.canonical and not v.terminal

    def test_one_third(self):
        act = CyclicAction(3, (1, 1))
        v = classify_smooth_quotient(act.elements())
        assert not v.canonical and v.min_age == Fraction(2, 3)

    def test_trivial(self):
        v = classify_smooth_quotient([])
        assert v.gorenstein and v.canonical and v.terminal

    def test_sufficient_only_flag(self):
        v = classify_smooth_quotient([GroupElementSpec(2, (1, 1))], no_pseudo_reflections_asserted=False)
        assert v.sufficient_only


class TestExtendLattice:
    def test_trivial(self):
        assert extend_lattice(3, CyclicAction(1, (0, 0, 0))) == Lattice.standard(3)

    def test_diagonal_half(self):
        lat = extend_lattice(2, CyclicAction(2, (1, 1)))
        assert lat.contains((half, half)) and not lat.contains((half, 0))
        assert lat == Lattice.generated_by([(1, 0), (half, half)])

    def test_reflection_example(self):
        lat = extend_lattice(3, CyclicAction(2, (1, 0, 0)))
        assert lat == Lattice.generated_by([(half, 0, 0), (0, 1, 0), (0, 0, 1)])

    @pytest.mark.parametrize("n", [1, 2, 3])
    @pytest.mark.parametrize("r", range(1, 7))
    def test_index_formula(self, n, r):
        for lam in product(range(r), repeat=n):
            lat = extend_lattice(n, CyclicAction(r, lam))
            g = r
            for x in lam:
                g = gcd(g, x)
            assert Lattice.standard(n).index_in(lat) == r // g

    def test_dimension_mismatch(self):
        with pytest.raises(ReidTaiError):
            extend_lattice(2, CyclicAction(2, (1, 1, 1)))


class TestToricQuotient:
    def test_non_q_gorenstein(self):
        v = classify_cyclic_toric_quotient(Cone(NON_Q_GOR), CyclicAction(2, (1, 0, 0)))
        assert not v.q_gorenstein and v.canonical is None
        assert classify_cone(Cone(NON_Q_GOR)).gorenstein

    def test_a1(self):
        v = classify_cyclic_toric_quotient(orthant(2), CyclicAction(2, (1, 1)))
        assert v.q_gorenstein and v.canonical and not v.terminal
        assert v.gorenstein_sufficient == "yes"

    def test_gorenstein_tri_state(self):
        assert classify_cyclic_toric_quotient(orthant(2), CyclicAction(3, (1, 1))).gorenstein_sufficient == "unknown"
        a1 = Cone([(3, -1), (0, 1)])
        assert classify_cyclic_toric_quotient(a1, CyclicAction(1, (0, 0))).gorenstein_sufficient == "not-applicable"

    @pytest.mark.parametrize("gens", [NON_Q_GOR, [(1, 0), (1, 2)], [(1, 0, 0), (0, 1, 0), (1, 0, 1), (0, 1, 1)]])
    def test_trivial_action_reproduces_cone(self, gens):
        c = Cone(gens)
        v = classify_cyclic_toric_quotient(c, CyclicAction(1, [0] * len(gens[0])))
        base = classify_cone(c)
        assert (v.q_gorenstein, v.gorenstein, v.canonical, v.terminal) == \
               (base.q_gorenstein, base.gorenstein, base.canonical, base.terminal)

    def test_degenerate_cone(self):
        with pytest.raises(ConeError):
            classify_cyclic_toric_quotient(Cone([(1, 0)]), CyclicAction(2, (1, 1)))

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_pseudo_reflection_removal_matches_toric(self, n):
        # the toric route needs no hypothesis on pseudo-reflections, so it
        # independently checks the residual-action computation
        for r in range(1, 7):
            for lam in product(range(r), repeat=n):
                act = CyclicAction(r, lam)
                tor = classify_cyclic_toric_quotient(orthant(n), act)
                res = diagonal_cyclic_classifier([act.generator()])
                assert (tor.canonical, tor.terminal) == (res["canonical"], res["terminal"]), (r, lam)


class TestDescent:
    def test_cycle_graph_edge_map(self):
        g = cycle_graph(2)
        _, dual = cographic_cone(g)
        target = orthant(g.num_edges)
        chk = check_descent(dual, target, edge_cone_map(g), CyclicAction(1, [0] * dual.ambient_dim),
                            CyclicAction(1, [0] * g.num_edges))
        assert chk.hypotheses_hold
        assert chk.conclusion == {"q_gorenstein": True, "canonical": True}

    def test_identity_on_smooth(self):
        c = orthant(2)
        act = CyclicAction(3, (1, 1))
        assert check_descent(c, c, [[1, 0], [0, 1]], act, act).hypotheses_hold

    def test_identity_on_singular(self):
        c = Cone([(1, 0), (1, 2)])
        act = CyclicAction(1, (0, 0))
        chk = check_descent(c, c, [[1, 0], [0, 1]], act, act)
        assert not chk.hypotheses_hold and chk.conclusion is None

    def test_collapsing_map(self):
        c = orthant(2)
        act = CyclicAction(1, (0, 0))
        chk = check_descent(c, c, [[1, 1], [1, 1]], act, act)
        assert not chk.rays_to_rays and not chk.hypotheses_hold and chk.conclusion is None

    def test_non_primitive_image(self):
        c = orthant(2)
        act = CyclicAction(1, (0, 0))
        chk = check_descent(c, c, [[2, 0], [0, 1]], act, act)
        assert chk.rays_to_rays and not chk.primitive_to_primitive

    def test_not_equivariant(self):
        c = orthant(2)
        chk = check_descent(c, c, [[1, 0], [0, 1]], CyclicAction(2, (1, 1)), CyclicAction(2, (1, 0)))
        assert not chk.equivariant

    def test_pseudo_reflection_in_target(self):
        c = orthant(2)
        act = CyclicAction(2, (1, 0))
        chk = check_descent(c, c, [[1, 0], [0, 1]], act, act)
        assert not chk.target_smooth_without_pseudo_reflections

    def test_shape_errors(self):
        c = orthant(2)
        act = CyclicAction(1, (0, 0))
        with pytest.raises(ReidTaiError):
            check_descent(c, c, [[1, 0]], act, act)


def z2z2():
    return [GroupElementSpec(2, e) for e in [(0, 0), (1, 0), (0, 1), (1, 1)]]


class TestGroups:
    def test_validate(self):
        assert validate_group([[0, 1], [1, 0]]) == 0
        with pytest.raises(ReidTaiError):
            validate_group([[0, 1], [0, 1]])
        with pytest.raises(ReidTaiError):
            validate_group([[0, 2], [1, 0]])

    def test_cyclic_subgroups_of_klein(self):
        subs = cyclic_subgroups(diagonal_composition_table(z2z2()))
        assert len(subs) == 4  # trivial plus three of order two

    def test_klein_four(self):
        v = cyclic_reduction(z2z2())
        assert v["canonical"] and not v["terminal"]

    def test_cyclic_invokes_each_subgroup(self):
        g = GroupElementSpec(4, (1, 3))
        elements = [g.power(j) for j in range(4)]
        calls = []

        def classifier(sub):
            calls.append(len(sub))
            return diagonal_cyclic_classifier(sub)

        v = cyclic_reduction(elements, classifier=classifier)
        assert sorted(calls) == [1, 2, 4]
        direct = classify_smooth_quotient(elements[1:])
        assert (v["canonical"], v["terminal"]) == (direct.canonical, direct.terminal)

    def test_trivial_group(self):
        v = cyclic_reduction([GroupElementSpec(1, (0, 0))])
        assert v["canonical"] and v["terminal"]

    def test_threaded_matches_serial(self):
        g = GroupElementSpec(6, (1, 2, 3))
        elements = [g.power(j) for j in range(6)]
        assert cyclic_reduction(elements, max_workers=4) == cyclic_reduction(elements)

    def test_identity_subgroup_is_neutral(self):
        g = GroupElementSpec(6, (1, 5))
        elements = [g.power(j) for j in range(6)]
        seen = []

        def classifier(sub):
            v = diagonal_cyclic_classifier(sub)
            seen.append((len(sub), v))
            return v

        full = cyclic_reduction(elements, classifier=classifier)
        nontrivial = [v for n, v in seen if n > 1]
        assert full["canonical"] == all(v["canonical"] for v in nontrivial)
        assert full["terminal"] == all(v["terminal"] for v in nontrivial)

    def test_not_closed(self):
        with pytest.raises(ReidTaiError):
            diagonal_composition_table([GroupElementSpec(4, (0,)), GroupElementSpec(4, (1,))])

    def test_remove_pseudo_reflections(self):
        assert remove_pseudo_reflections(GroupElementSpec(2, (1, 0))).order == 1
        res = remove_pseudo_reflections(GroupElementSpec(4, (1, 2)))
        assert res == GroupElementSpec(2, (1, 1))
