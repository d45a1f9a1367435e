"""Falsification harness: config cells, sampling filters, frontier table."""

from itertools import product

import numpy as np
import pytest

from prhs.affine import exp_affine, wolf_check_log
from prhs.errors import PreconditionError
from prhs.groups import IsoGroup, structure_blocks
from prhs.linalg import Mat
from prhs.search import (
    SearchConfig,
    SearchOutcome,
    default_core_gram,
    falsification_run,
    sample_admissible_pair,
    transitive_frontier_evidence,
)


class TestConfig:
    def test_defaults(self):
        cfg = SearchConfig(8, 2)
        assert cfg.w == 4
        assert cfg.gram_w == Mat.diag([1, 1, -1, -1])
        assert cfg.trials == 100_000
        assert cfg.form().dim == 8

    def test_default_core_grams(self):
        assert default_core_gram(4) == Mat.diag([1, 1, -1, -1])
        assert default_core_gram(5) == Mat.diag([1, 1, 1, -1, -1])
        assert default_core_gram(0) == Mat.identity(0)

    def test_zero_trials_rejected(self):
        with pytest.raises(PreconditionError):
            SearchConfig(8, 2, trials=0)

    def test_bad_dimensions_rejected(self):
        with pytest.raises(PreconditionError):
            SearchConfig(4, 3)
        with pytest.raises(PreconditionError):
            SearchConfig(4, -1)

    def test_gram_shape_checked(self):
        with pytest.raises(PreconditionError):
            SearchConfig(8, 2, gram_w=Mat.identity(3))

    def test_entry_bound_checked(self):
        with pytest.raises(PreconditionError):
            SearchConfig(8, 2, entry_bound=0)

    def test_outcome_counter_consistency(self):
        cfg = SearchConfig(8, 2, trials=10)
        with pytest.raises(PreconditionError):
            SearchOutcome(
                config=cfg,
                trials_run=10,
                admissible_pairs=11,
                nonabelian_pairs=0,
                witnesses=(),
                witnesses_capped=False,
                seed=0,
            )


class TestSampling:
    def test_single_draw_matches_batch_of_one(self):
        # trials=1 consumes the stream in the same order as one reference draw
        for seed in range(30):
            cfg = SearchConfig(6, 2, trials=1, seed=seed)
            batch = falsification_run(cfg)
            single = sample_admissible_pair(cfg, np.random.default_rng(seed))
            assert (single is not None) == (batch.admissible_pairs == 1)

    def test_sampled_pair_shape(self):
        cfg = SearchConfig(8, 2, trials=1, seed=0)
        rng = np.random.default_rng(0)
        for _ in range(200):
            pair = sample_admissible_pair(cfg, rng)
            if pair is None:
                continue
            l1, l2 = pair
            assert l1.nilpart.shape == (8, 8)
            assert all(x == 0 for x in l1.translation)
            rep = wolf_check_log(l1.nilpart, l1.translation, cfg.form())
            assert rep.square_zero and rep.skew_adjoint

    def test_small_core_admits_no_noncommuting_pair(self):
        # exhaustive over |entries| <= 1: with dim W = 2 every admissible
        # pair has zero pairing matrix, so the n = 6 count is structurally 0
        for core in (Mat.diag([1, -1]), Mat([[0, 1], [1, 0]])):
            cfg = SearchConfig(6, 2, gram_w=core, trials=1)
            mats = [
                Mat([[a, b], [c, d]])
                for a, b, c, d in product((-1, 0, 1), repeat=4)
            ]
            iso = [B for B in mats if (B.T * core * B).is_zero()]
            assert iso
            for B1 in iso:
                for B2 in iso:
                    P = B1.T * core * B2
                    if P.T == P * -1:
                        assert P.is_zero()

    def test_zero_k_everything_admissible(self):
        cfg = SearchConfig(4, 0, trials=100, seed=0)
        out = falsification_run(cfg)
        assert out.admissible_pairs == 100
        assert out.nonabelian_pairs == 0


class TestFalsificationRun:
    def test_deterministic(self):
        a = falsification_run(SearchConfig(6, 2, trials=2000, seed=5))
        b = falsification_run(SearchConfig(6, 2, trials=2000, seed=5))
        assert a == b

    def test_known_pair_counts(self):
        out = falsification_run(SearchConfig(8, 2, trials=1, seed=7), include_known_pair=True)
        assert out.trials_run == 2
        assert out.admissible_pairs >= 1
        assert out.nonabelian_pairs == 1
        assert len(out.witnesses) == 1
        assert not out.witnesses_capped

    def test_known_pair_only_at_eight_two(self):
        with pytest.raises(PreconditionError):
            falsification_run(SearchConfig(6, 2, trials=1), include_known_pair=True)

    def test_degenerate_core(self):
        # w = 0 leaves no isotropy constraint and no pairing to violate
        out = falsification_run(SearchConfig(6, 3, trials=500, seed=3))
        assert out.admissible_pairs == 500
        assert out.nonabelian_pairs == 0

    def test_low_dimensions_stay_abelian(self):
        for n, k in ((4, 2), (5, 2), (6, 2), (7, 3)):
            out = falsification_run(SearchConfig(n, k, trials=5000, seed=42))
            assert out.nonabelian_pairs == 0, (n, k)


class TestWitnessPromotion:
    def test_witness_builds_valid_group(self):
        cfg = SearchConfig(8, 2, trials=1, seed=0)
        out = falsification_run(cfg, include_known_pair=True)
        l1, l2 = out.witnesses[0]
        G = IsoGroup(cfg.form(), [exp_affine(l1), exp_affine(l2)])
        G.require_wolf()
        G.assume_valid()
        sb = structure_blocks(G)
        assert len(sb.blocks) == 2
        (B1, C1), (B2, C2) = sb.blocks
        assert not (B1.T * sb.frame.gram_w * B2).is_zero()

    def test_witness_translations_are_zero(self):
        out = falsification_run(
            SearchConfig(8, 2, trials=1, seed=0), include_known_pair=True
        )
        for l1, l2 in out.witnesses:
            assert all(x == 0 for x in l1.translation)
            assert all(x == 0 for x in l2.translation)


class TestFrontier:
    def test_empty_cells_empty_table(self):
        tab = transitive_frontier_evidence([], trials=10)
        assert tab.rows == ()
        assert tab.label == "EVIDENCE"

    def test_builtin_rows_anchor_endpoints(self):
        tab = transitive_frontier_evidence([(8, 2), (14, 5)], trials=20, seed=1)
        by_source = {r.source: r for r in tab.rows}
        assert by_source["builtin:gamma44"].certified_transitive == 0
        assert by_source["builtin:gamma77"].certified_transitive == 1
        assert by_source["sampled"].n in (8, 14)

    def test_builtin_rows_only_for_requested_dims(self):
        tab = transitive_frontier_evidence([(6, 2)], trials=20, seed=1)
        assert [r.source for r in tab.rows] == ["sampled"]
        assert tab.rows[0].nonabelian_found == 0
