"""Group-level invariants: holonomy, invariant subspaces, blocks, freeness."""

import pytest

from prhs.affine import AffineIsometry, commutes, exp_affine, log_affine, wolf_check
from prhs.errors import ConsistencyError, PreconditionError, StructuralError
from prhs.forms import diag_form, split_form, witt_frame
from prhs.groups import (
    EXAMPLE_NAMES,
    HeisenbergPresentation,
    IsoGroup,
    build_example,
    chain_stabilization_check,
    crossover_duality,
    dimension_bound_decomposition,
    holonomy_abelian,
    invariant_spaces,
    is_free_on_space,
    nilpotency_class_at_most_two,
    structure_blocks,
)
from prhs.linalg import Mat, Subspace, unit


def translation_group(Q, vectors):
    gens = [AffineIsometry(Mat.identity(Q.dim), v) for v in vectors]
    return IsoGroup(Q, gens)


class TestConstruction:
    def test_known_names(self):
        assert set(EXAMPLE_NAMES) == {"gamma44", "gamma77"}
        for name in EXAMPLE_NAMES:
            G, pres = build_example(name)
            assert G.presentation is pres

    def test_unknown_name(self):
        with pytest.raises(KeyError):
            build_example("gamma99")

    def test_dimensions(self, gamma44, gamma77):
        assert gamma44[0].n == 8
        assert gamma77[0].n == 14

    def test_generators_satisfy_all_conditions(self, gamma44, gamma77):
        for G, _ in (gamma44, gamma77):
            G.require_wolf()
            for rep in G.wolf_reports():
                assert rep.overall

    def test_non_isometry_generator_rejected(self):
        Q = diag_form([1, -1])
        bad = AffineIsometry(Mat.diag([2, 2]), (0, 0))
        with pytest.raises(PreconditionError):
            IsoGroup(Q, [bad])

    def test_empty_generators_rejected(self):
        with pytest.raises(PreconditionError):
            IsoGroup(diag_form([1]), [])

    def test_dimension_mismatch_rejected(self):
        Q = diag_form([1, -1])
        with pytest.raises(PreconditionError):
            IsoGroup(Q, [AffineIsometry.identity(3)])


class TestWordBall:
    def test_radius_zero(self, gamma44):
        G, _ = gamma44
        ball = G.word_ball(0)
        assert len(ball) == 1 and ball[0].is_identity()

    def test_radius_one(self, gamma77):
        G, _ = gamma77
        assert len(G.word_ball(1)) == 5

    def test_monotone_and_cached(self, gamma44):
        G, _ = gamma44
        b2 = G.word_ball(2)
        assert set(G.word_ball(1)) <= set(b2)
        assert G.word_ball(2) is b2

    def test_contains_commutator(self, gamma44):
        G, pres = gamma44
        assert pres.g3 in set(G.word_ball(4))

    def test_negative_radius(self, gamma44):
        with pytest.raises(ValueError):
            gamma44[0].word_ball(-1)


class TestHolonomy:
    def test_examples_nonabelian(self, gamma44, gamma77):
        for G, _ in (gamma44, gamma77):
            abelian, ev = holonomy_abelian(G)
            assert not abelian
            assert ev["witness_pair"] == (0, 1)
            assert not ev["linear_parts_commute"]
            assert not ev["products_vanish"]
            assert not ev["holonomy_span_isotropic"]

    def test_translations_abelian(self):
        Q = split_form(1, Mat.diag([1, -1]))
        G = translation_group(Q, [unit(4, 0), unit(4, 1)])
        abelian, ev = holonomy_abelian(G)
        assert abelian
        assert ev["witness_pair"] is None

    def test_two_step(self, gamma44, gamma77):
        for G, _ in (gamma44, gamma77):
            assert nilpotency_class_at_most_two(G)

    def test_evidence_keys(self, gamma44):
        _, ev = holonomy_abelian(gamma44[0])
        assert set(ev) == {
            "linear_parts_commute",
            "products_vanish",
            "holonomy_span_isotropic",
            "witness_pair",
        }


class TestInvariantSpaces:
    def test_frozen_dimensions(self, gamma44, gamma77):
        sp44 = invariant_spaces(gamma44[0])
        assert (sp44.u_gamma.dim, sp44.u_zero.dim, sp44.u_delta.dim) == (6, 2, 2)
        sp77 = invariant_spaces(gamma77[0])
        assert (sp77.u_gamma.dim, sp77.u_zero.dim, sp77.u_delta.dim) == (9, 5, 2)

    def test_u_zero_is_leading_plane(self, gamma44, gamma77):
        sp44 = invariant_spaces(gamma44[0])
        assert sp44.u_zero == Subspace(8, [unit(8, 0), unit(8, 1)])
        sp77 = invariant_spaces(gamma77[0])
        assert sp77.u_zero == Subspace(14, [unit(14, i) for i in range(5)])

    def test_containments(self, gamma44, gamma77):
        for G, _ in (gamma44, gamma77):
            sp = invariant_spaces(G)
            assert sp.u_zero.contains(sp.u_delta)
            assert sp.u_gamma.contains(sp.u_zero)

    def test_orthogonality(self, gamma77):
        G, _ = gamma77
        sp = invariant_spaces(G)
        for u in sp.u_delta.basis:
            for v in sp.u_gamma.basis:
                assert G.Q.pair(u, v) == 0

    def test_center_element_is_central(self, gamma44):
        G, _ = gamma44
        sp = invariant_spaces(G)
        assert len(sp.center_elements) == 1
        c = sp.center_elements[0]
        assert all(commutes(c, g) for g in G.generators)

    def test_chain(self, gamma44, gamma77):
        for G, _ in (gamma44, gamma77):
            assert chain_stabilization_check(G)


class TestStructureBlocks:
    def test_gated_on_validity(self):
        G, _ = build_example("gamma44")
        with pytest.raises(PreconditionError):
            structure_blocks(G)
        G.assume_valid()
        assert structure_blocks(G) is not None

    def test_frame_is_canonical_for_examples(self, gamma44, gamma77):
        for G, _ in (gamma44, gamma77):
            G.assume_valid()
            sb = structure_blocks(G)
            assert sb.frame.basis_change == Mat.identity(G.n)

    def test_central_corner_blocks(self, gamma44, gamma77):
        G44, pres44 = gamma44
        G44.assume_valid()
        fr44 = structure_blocks(G44).frame
        A3 = fr44.to_frame_matrix(pres44.l3.nilpart)
        assert A3.submatrix(0, 2, 6, 8) == Mat([[0, -4], [4, 0]])
        assert pres44.l3.translation[:2] == (0, -4)

        G77, pres77 = gamma77
        G77.assume_valid()
        fr77 = structure_blocks(G77).frame
        C3 = fr77.to_frame_matrix(pres77.l3.nilpart).submatrix(0, 5, 9, 14)
        entries = {x for row in C3.rows for x in row}
        assert entries == {0, -4, 4}
        assert pres77.l3.translation[:5] == (0, 0, 0, 0, 2)

    def test_block_count_and_shape(self, gamma77):
        G, _ = gamma77
        G.assume_valid()
        sb = structure_blocks(G)
        assert len(sb.blocks) == 2
        for B, C in sb.blocks:
            assert (B.m, B.n) == (4, 5)
            assert (C.m, C.n) == (5, 5)
            assert C.is_skew()
            assert (B.T * sb.frame.gram_w * B).is_zero()

    def test_rejects_wrong_frame(self, gamma44):
        G, _ = gamma44
        G.assume_valid()
        # a frame adapted to a different isotropic plane cannot absorb the logs
        v = tuple(1 if i in (2, 4) else 0 for i in range(8))
        other = witt_frame(Subspace(8, [unit(8, 0), v]), G.Q)
        with pytest.raises(StructuralError):
            structure_blocks(G, frame=other)


class TestCrossoverDuality:
    def test_example_pairings(self, gamma44, gamma77):
        G44, pres44 = gamma44
        G44.assume_valid()
        fr = structure_blocks(G44).frame
        rep = crossover_duality(pres44.l1, pres44.l2, fr)
        assert rep.pairing == Mat([[0, 2], [-2, 0]])
        assert rep.antisymmetric
        assert not rep.products_vanish
        assert rep.duality_consistent
        assert rep.witness_indices == (0, 1)
        assert rep.witness_independent

        G77, pres77 = gamma77
        G77.assume_valid()
        fr77 = structure_blocks(G77).frame
        rep77 = crossover_duality(pres77.l1, pres77.l2, fr77)
        assert rep77.pairing.submatrix(0, 2, 0, 2) == Mat([[0, 2], [-2, 0]])
        assert rep77.witness_independent

    def test_self_pairing_vanishes(self, gamma44):
        G, pres = gamma44
        G.assume_valid()
        fr = structure_blocks(G).frame
        rep = crossover_duality(pres.l1, pres.l1, fr)
        assert rep.pairing.is_zero()
        assert rep.products_vanish
        assert rep.duality_consistent
        assert rep.witness_indices is None

    def test_witness_columns_span_core(self, gamma44):
        G, pres = gamma44
        G.assume_valid()
        fr = structure_blocks(G).frame
        rep = crossover_duality(pres.l1, pres.l2, fr)
        assert Subspace(4, rep.witness_columns).dim == 4


class TestDimensionBound:
    def test_tight_case(self, gamma44):
        G, _ = gamma44
        G.assume_valid()
        db = dimension_bound_decomposition(G)
        assert db.verdict == "n = 2*2 + 4 = 8 >= 8 (tight)"
        assert db.tight
        assert db.certified_lower_bound == 8

    def test_large_case(self, gamma77):
        G, _ = gamma77
        G.assume_valid()
        db = dimension_bound_decomposition(G)
        assert db.verdict == "n = 2*5 + 4 = 14 >= 8"
        assert not db.tight
        assert (db.dim_u_zero, db.core_dim) == (5, 4)

    def test_abelian_rejected(self):
        Q = split_form(1, Mat.diag([1, -1]))
        G = translation_group(Q, [unit(4, 0)])
        G.assume_valid()
        with pytest.raises(PreconditionError):
            dimension_bound_decomposition(G)


class TestFreeness:
    def test_fixed_vector_blocks_freeness(self, gamma44):
        G, pres = gamma44
        free, witness = is_free_on_space(G, exponent_box=1)
        assert not free
        g, p = witness
        assert p == unit(8, 6)
        assert g.apply(p) == p
        assert pres.g3.apply(unit(8, 6)) == unit(8, 6)

    def test_free_example(self, gamma77):
        G, _ = gamma77
        free, witness = is_free_on_space(G, exponent_box=2)
        assert free
        assert witness is None

    def test_word_ball_fallback(self, gamma77):
        G, _ = gamma77
        free, witness = is_free_on_space(G, word_radius=2)
        assert free and witness is None


class TestHeisenbergPresentation:
    def test_normal_form_matches_log(self, gamma77):
        _, pres = gamma77
        for a, b, c in [(1, 0, 0), (0, 2, -1), (2, -1, 3), (-1, -1, 0)]:
            assert exp_affine(pres.element_log(a, b, c)) == pres.normal_form(a, b, c)

    def test_coordinates_roundtrip(self, gamma44):
        _, pres = gamma44
        for a in range(-2, 3):
            for b in range(-2, 3):
                for c in (-1, 0, 2):
                    got = pres.coordinates(pres.normal_form(a, b, c))
                    assert got == (a, b, c)

    def test_coordinates_reject_outsider(self, gamma44):
        _, pres = gamma44
        # exp(l1 + l2) is an isometry on a rational one-parameter subgroup
        # but sits strictly between lattice points
        outsider = exp_affine(pres.l1 + pres.l2)
        assert pres.coordinates(outsider) is None

    def test_coordinates_reject_unrelated(self, gamma44):
        G, pres = gamma44
        stranger = AffineIsometry(Mat.identity(8), unit(8, 6))
        assert pres.coordinates(stranger) is None

    def test_commuting_generators_rejected(self):
        Q = split_form(1, Mat.diag([1, -1]))
        t1 = AffineIsometry(Mat.identity(4), unit(4, 0))
        t2 = AffineIsometry(Mat.identity(4), unit(4, 1))
        with pytest.raises(PreconditionError):
            HeisenbergPresentation(t1, t2)

    def test_central_commutator(self, gamma44):
        _, pres = gamma44
        assert commutes(pres.g3, pres.g1)
        assert commutes(pres.g3, pres.g2)
