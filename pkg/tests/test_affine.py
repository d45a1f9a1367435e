"""Affine isometries: group operations, the six conditions, logs, powers."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from prhs.affine import (
    AffineIsometry,
    AffineLog,
    ad_conjugate,
    affine_power,
    bracket,
    commutator,
    commutes,
    exp_affine,
    fixed_points,
    is_isometry,
    log_affine,
    wolf_check,
    wolf_check_log,
)
from prhs.errors import PreconditionError
from prhs.forms import diag_form
from prhs.linalg import Mat, unit, vzero

ints = st.integers(min_value=-5, max_value=5)


def shear_strategy(n):
    """Unit lower triangular integer matrices; always invertible."""
    return st.lists(ints, min_size=n * (n - 1) // 2, max_size=n * (n - 1) // 2).map(
        lambda vals: Mat(
            [
                [
                    1 if i == j else (vals.pop() if i > j else 0)
                    for j in range(n)
                ]
                for i in range(n)
            ]
        )
    )


def strict_upper(n, vals):
    it = iter(vals)
    return Mat([[next(it) if j > i else 0 for j in range(n)] for i in range(n)])


class TestGroupOps:
    def test_apply_matches_composition(self):
        g = AffineIsometry(Mat([[1, 1], [0, 1]]), (2, 0))
        h = AffineIsometry(Mat([[1, 0], [3, 1]]), (0, -1))
        x = (Fraction(1, 2), 4)
        assert (g * h).apply(x) == g.apply(h.apply(x))

    def test_inverse(self):
        g = AffineIsometry(Mat([[1, 2], [0, 1]]), (5, 7))
        assert (g * g.inverse()).is_identity()
        assert (g.inverse() * g).is_identity()

    def test_identity(self):
        e = AffineIsometry.identity(3)
        assert e.apply((1, 2, 3)) == (1, 2, 3)
        assert e.is_identity()

    def test_commutator_definition(self):
        g = AffineIsometry(Mat([[1, 1], [0, 1]]), (0, 1))
        h = AffineIsometry(Mat([[1, 0], [1, 1]]), (1, 0))
        assert commutator(g, h) == g * h * g.inverse() * h.inverse()
        assert not commutes(g, h)
        assert commutes(g, g)

    def test_equality_and_hash(self):
        a = AffineIsometry(Mat.identity(2), (Fraction(2, 2), 0))
        b = AffineIsometry(Mat.identity(2), (1, 0))
        assert a == b
        assert hash(a) == hash(b)


class TestWolfConditions:
    def test_example_generators_pass(self, gamma44, gamma77):
        for G, pres in (gamma44, gamma77):
            for g in (pres.g1, pres.g2, pres.g3):
                rep = wolf_check(g, G.Q)
                assert rep.overall, rep.as_json()

    def test_log_level_agrees(self, gamma44):
        G, pres = gamma44
        l = pres.l1
        assert wolf_check_log(l.nilpart, l.translation, G.Q).overall

    def test_euclidean_shear_fails(self):
        Q = diag_form([1, 1])
        A = Mat([[0, 1], [0, 0]])
        rep = wolf_check_log(A, (0, 0), Q)
        assert rep.square_zero
        assert not rep.skew_adjoint
        assert not rep.image_isotropic
        assert not rep.overall

    def test_nonsquare_zero_detected(self):
        Q = diag_form([1, 1, -1])
        A = Mat([[0, 1, 0], [0, 0, 1], [0, 0, 0]])
        rep = wolf_check_log(A, vzero(3), Q)
        assert not rep.square_zero

    def test_translation_condition(self, gamma44):
        G, pres = gamma44
        A = pres.l1.nilpart
        # any v outside ker A violates both translation conditions at once,
        # because (im A)^perp = ker A for these elements
        bad = next(
            unit(8, i) for i in range(8) if any(x != 0 for x in A.col(i))
        )
        rep = wolf_check_log(A, bad, G.Q)
        assert not rep.kills_translation
        assert not rep.translation_orthogonal

    def test_report_json_keys(self, gamma44):
        G, pres = gamma44
        d = wolf_check(pres.g1, G.Q).as_json()
        assert set(d) == {
            "square_zero",
            "translation_orthogonal",
            "image_isotropic",
            "skew_adjoint",
            "image_kernel_duality",
            "kills_translation",
            "overall",
        }


class TestLogExp:
    def test_roundtrip_on_examples(self, gamma44, gamma77):
        for G, pres in (gamma44, gamma77):
            for g in (pres.g1, pres.g2, pres.g3):
                assert exp_affine(log_affine(g)) == g

    def test_log_of_identity(self):
        assert log_affine(AffineIsometry.identity(4)).is_zero()

    def test_non_unipotent_rejected(self):
        g = AffineIsometry(Mat.diag([2, 1]), (0, 0))
        with pytest.raises(PreconditionError):
            log_affine(g)

    @given(
        st.lists(ints, min_size=3, max_size=3),
        st.lists(ints, min_size=3, max_size=3),
        shear_strategy(3),
    )
    @settings(max_examples=60, deadline=None)
    def test_roundtrip_on_conjugated_unipotents(self, nvals, tvals, S):
        N = strict_upper(3, nvals)
        Si = S.inverse()
        g = AffineIsometry(S * (Mat.identity(3) + N) * Si, S.apply(tuple(tvals)))
        assert exp_affine(log_affine(g)) == g

    @given(st.lists(ints, min_size=3, max_size=3), st.lists(ints, min_size=3, max_size=3))
    @settings(max_examples=60, deadline=None)
    def test_exp_then_log(self, nvals, tvals):
        l = AffineLog(strict_upper(3, nvals), tuple(tvals))
        assert log_affine(exp_affine(l)) == l

    def test_flatten_unflatten(self):
        l = AffineLog(Mat([[0, 2], [0, 0]]), (Fraction(1, 3), -1))
        assert AffineLog.unflatten(2, l.flatten()) == l


class TestPowers:
    def test_small_powers(self, gamma44):
        _, pres = gamma44
        g = pres.g1
        assert affine_power(g, 0).is_identity()
        assert affine_power(g, 3) == g * g * g
        assert affine_power(g, -2) == (g * g).inverse()

    def test_negative_power_matches_inverse(self, gamma77):
        _, pres = gamma77
        g = pres.g2
        assert affine_power(g, -1) == g.inverse()


class TestCommutatorClosedForm:
    def test_linear_and_translation_parts(self, gamma44, gamma77):
        # [g1, g2] = (I + 2 A1 A2, 2 A1 v2) whenever the six conditions hold
        for G, pres in (gamma44, gamma77):
            A1, v1 = pres.l1.nilpart, pres.l1.translation
            A2, v2 = pres.l2.nilpart, pres.l2.translation
            expect = AffineIsometry(
                Mat.identity(G.n) + (A1 * A2) * 2,
                tuple(2 * x for x in A1.apply(v2)),
            )
            assert commutator(pres.g1, pres.g2) == expect

    def test_exp_of_bracket_is_group_commutator(self, gamma44, gamma77):
        for _, pres in (gamma44, gamma77):
            lhs = exp_affine(bracket(pres.l1, pres.l2))
            assert lhs == commutator(pres.g1, pres.g2)

    def test_two_step_brackets_vanish(self, gamma44, gamma77):
        for _, pres in (gamma44, gamma77):
            assert bracket(pres.l1, pres.l3).is_zero()
            assert bracket(pres.l2, pres.l3).is_zero()

    def test_bracket_antisymmetry(self, gamma77):
        _, pres = gamma77
        assert bracket(pres.l1, pres.l2) == bracket(pres.l2, pres.l1).scale(-1)


class TestFixedPoints:
    def test_central_element_fixes_unit_vector(self, gamma44):
        _, pres = gamma44
        e7 = unit(8, 6)
        assert pres.g3.apply(e7) == e7
        res = fixed_points(pres.g3)
        assert res is not None
        p0, D = res
        assert D.contains_vector(tuple(a - b for a, b in zip(e7, p0)))

    def test_translation_has_no_fixed_point(self):
        g = AffineIsometry(Mat.identity(2), (1, 0))
        assert fixed_points(g) is None

    def test_identity_fixes_everything(self):
        p0, D = fixed_points(AffineIsometry.identity(3))
        assert p0 == vzero(3)
        assert D.dim == 3

    def test_log_level_description(self, gamma44):
        # with A v = 0 the fixed set of exp(A, v) is exactly {p : A p = -v}
        from prhs.linalg import solve_affine

        _, pres = gamma44
        l = pres.l1
        got = fixed_points(pres.g1)
        want = solve_affine(l.nilpart, tuple(-x for x in l.translation))
        assert (got is None) == (want is None)
        if got is not None:
            (p, D), (q, E) = got, want
            assert D == E
            assert D.contains_vector(tuple(a - b for a, b in zip(p, q)))


class TestAdjoint:
    def test_conjugation_matches_group_level(self, gamma44):
        _, pres = gamma44
        moved = ad_conjugate(pres.g1, pres.l2)
        assert exp_affine(moved) == pres.g1 * pres.g2 * pres.g1.inverse()

    def test_identity_acts_trivially(self, gamma77):
        _, pres = gamma77
        e = AffineIsometry.identity(14)
        assert ad_conjugate(e, pres.l1) == pres.l1


class TestIsometryPredicate:
    def test_examples_are_isometries(self, gamma44):
        G, pres = gamma44
        assert is_isometry(pres.g3, G.Q)

    def test_scaling_is_not(self):
        Q = diag_form([1, -1])
        g = AffineIsometry(Mat.diag([2, 2]), (0, 0))
        assert not is_isometry(g, Q)
