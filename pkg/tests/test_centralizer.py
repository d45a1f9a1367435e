"""Centralizer algebras, orbit geometry, transitivity and properness."""

from fractions import Fraction

import pytest

from prhs.affine import AffineIsometry, ad_conjugate, bracket, exp_affine
from prhs.centralizer import (
    builtin_centralizer_family,
    centralizer_algebra,
    certify_open_orbit,
    orbit_dimension,
    properness_certificate,
    transitivity_certificate,
)
from prhs.errors import PreconditionError
from prhs.forms import diag_form, split_form
from prhs.groups import IsoGroup, build_example
from prhs.linalg import Mat, unit, vzero


def trivial_group(Q):
    return IsoGroup(Q, [AffineIsometry.identity(Q.dim)])


class TestCentralizerAlgebra:
    def test_frozen_dimensions(self, cent44, cent77):
        assert cent44.dim == 12
        assert cent77.dim == 32

    def test_trivial_group_gives_full_isometry_algebra(self):
        # centralizing only the identity leaves so(Q) + translations
        for Q in (
            diag_form([1, -1]),
            diag_form([1, 1, -1, -1]),
            split_form(2, Mat.diag([1, -1])),
        ):
            n = Q.dim
            C = centralizer_algebra(trivial_group(Q))
            assert C.dim == n * (n - 1) // 2 + n

    def test_every_basis_element_is_invariant(self, gamma44, cent44):
        G, _ = gamma44
        for l in cent44.basis:
            for g in G.generators:
                assert ad_conjugate(g, l) == l

    def test_exp_commutes_at_group_level(self, gamma44, cent44):
        G, _ = gamma44
        nil = [l for l in cent44.basis if _nilp(l.nilpart)]
        for l in nil:
            h = exp_affine(l)
            for g in G.generators:
                assert g * h == h * g

    def test_skew_adjointness(self, gamma77, cent77):
        G, _ = gamma77
        Qm = G.Q.gram
        for l in cent77.basis:
            QA = Qm * l.nilpart
            assert QA.T == QA * -1

    def test_central_log_belongs(self, gamma44, cent44):
        _, pres = gamma44
        assert cent44.contains(pres.l3)

    def test_noncentral_log_does_not(self, gamma44, cent44):
        _, pres = gamma44
        assert not cent44.contains(pres.l1)

    def test_documented_families_contained(self, cent44, cent77):
        for fam, C in (
            (builtin_centralizer_family("gamma44"), cent44),
            (builtin_centralizer_family("gamma77"), cent77),
        ):
            for l in fam:
                assert C.contains(l)

    def test_family_sizes(self):
        assert len(builtin_centralizer_family("gamma44")) == 8
        assert len(builtin_centralizer_family("gamma77")) == 14
        with pytest.raises(KeyError):
            builtin_centralizer_family("gamma00")


def _nilp(M):
    P = M
    for _ in range(M.n):
        if P.is_zero():
            return True
        P = P * M
    return P.is_zero()


class TestOrbits:
    def test_open_orbit_at_origin(self, cent44):
        cert = orbit_dimension(cent44, vzero(8))
        assert cert.orbit_dim == 8
        assert cert.is_open

    def test_small_orbit_at_fixed_vector(self, cent44):
        cert = orbit_dimension(cent44, unit(8, 6))
        assert cert.orbit_dim == 2
        assert not cert.is_open

    def test_dimension_mismatch(self, cent44):
        with pytest.raises(PreconditionError):
            orbit_dimension(cent44, (0, 0))

    def test_certify_open_orbit_marks_group(self):
        G, _ = build_example("gamma44")
        assert G.validity is None
        cert = certify_open_orbit(G)
        assert cert is not None and cert.is_open
        assert G.validity == "certified-open-orbit"


class TestTransitivity:
    def test_family_certificate(self, cent77):
        fam = builtin_centralizer_family("gamma77")
        cert = transitivity_certificate(cent77, candidate=fam)
        assert cert.certified
        assert cert.bracket_closed
        assert cert.all_parts_nilpotent
        assert cert.nilpotency_class == 3
        assert cert.candidate_dim == 14
        assert all(cert.surjective_at)
        # probe schedule: origin, the 14 units, 5 rational points
        assert len(cert.probes) == 1 + 14 + 5

    def test_full_solution_space_not_certified(self, cent77):
        cert = transitivity_certificate(cent77)
        assert cert.bracket_closed
        assert not cert.all_parts_nilpotent
        assert not cert.certified

    def test_small_example_families_fall_short(self, cent44):
        fam = builtin_centralizer_family("gamma44")
        cert = transitivity_certificate(cent44, candidate=fam)
        assert not cert.bracket_closed
        assert not cert.all_parts_nilpotent
        assert not cert.certified

    def test_candidate_outside_rejected(self, gamma44, cent44):
        _, pres = gamma44
        with pytest.raises(PreconditionError):
            transitivity_certificate(cent44, candidate=[pres.l1])

    def test_deterministic(self, cent77):
        fam = builtin_centralizer_family("gamma77")
        a = transitivity_certificate(cent77, candidate=fam, probe_seed=3)
        b = transitivity_certificate(cent77, candidate=fam, probe_seed=3)
        assert a == b

    def test_probe_seed_changes_probes(self, cent77):
        fam = builtin_centralizer_family("gamma77")
        a = transitivity_certificate(cent77, candidate=fam, probe_seed=0)
        b = transitivity_certificate(cent77, candidate=fam, probe_seed=1)
        assert a.probes != b.probes
        assert a.certified and b.certified


class TestProperness:
    def test_open_orbit_route(self, gamma44, cent44):
        G, _ = gamma44
        cert = properness_certificate(G, cent44)
        assert cert.verdict == "proper-on-open-orbit"
        assert cert.route == "open-orbit"
        assert cert.closed_tag == "integer-unipotent"
        assert cert.group_closed_certified
        assert cert.separation_gap is None
        assert cert.orbit.orbit_dim == 8

    def test_transitive_route(self, gamma77, cent77):
        G, _ = gamma77
        fam = builtin_centralizer_family("gamma77")
        cert = properness_certificate(G, cent77, candidate=fam)
        assert cert.verdict == "proper-on-space"
        assert cert.route == "transitive-centralizer"
        assert cert.transitivity.certified

    def test_full_basis_falls_back_to_orbit_route(self, gamma77, cent77):
        G, _ = gamma77
        cert = properness_certificate(G, cent77)
        assert cert.verdict == "proper-on-open-orbit"
        assert cert.route == "open-orbit"

    def test_rational_generators_stay_evidence_only(self):
        # same group law, but a non-integer translation entry: closedness
        # can then only be reported as ball-separation evidence
        Q = split_form(1, Mat.diag([1, -1]))
        g = AffineIsometry(Mat.identity(4), (Fraction(1, 2), 0, 0, 0))
        G = IsoGroup(Q, [g])
        cert = properness_certificate(G)
        assert cert.closed_tag == "ball-separation-evidence"
        assert not cert.group_closed_certified
        assert cert.separation_gap is not None
        assert cert.verdict in ("evidence-only", "not-certified")
