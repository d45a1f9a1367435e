"""Centralizer algebras of isometry groups and geometric certificates.

The centralizer of a group generated by unipotent isometries, at the Lie
algebra level, is the exact solution space of a linear system: an affine
pair (S, s) commutes with every generator log (A, v) and is skew-adjoint
for Q.  On that solution space the module certifies orbit dimensions and
openness, transitivity (bracket closure + nilpotent linear parts +
surjective evaluation at probe points), and properness of the group action
either through a transitive centralizer or through a preserved open orbit.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .affine import AffineLog, bracket
from .errors import PreconditionError
from .forms import ScalarProduct
from .groups import IsoGroup
from .linalg import Mat, Subspace, vadd, vzero

__all__ = [
    "CentralizerAlgebra",
    "OrbitCertificate",
    "TransitivityCertificate",
    "PropernessCertificate",
    "centralizer_algebra",
    "orbit_dimension",
    "transitivity_certificate",
    "properness_certificate",
    "certify_open_orbit",
    "builtin_centralizer_family",
]


class CentralizerAlgebra:
    """Canonical basis of the affine pairs commuting with all generator logs."""

    __slots__ = ("Q", "basis", "_span")

    def __init__(self, Q: ScalarProduct, basis):
        self.Q = Q
        self.basis = tuple(basis)
        self._span = None

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def ambient_dim(self) -> int:
        return self.Q.dim

    def span(self) -> Subspace:
        if self._span is None:
            n = self.ambient_dim
            self._span = Subspace(n * n + n, [l.flatten() for l in self.basis])
        return self._span

    def contains(self, l: AffineLog) -> bool:
        return self.span().contains_vector(l.flatten())

    def __repr__(self) -> str:
        return f"CentralizerAlgebra(dim={self.dim}, ambient={self.ambient_dim})"


def centralizer_algebra(G: IsoGroup) -> CentralizerAlgebra:
    """Solve the commutation system exactly.

    Unknowns are the n^2 entries of S (row-major) followed by the n entries
    of s.  Equations: S^t Q + Q S = 0 (upper triangle suffices), S A - A S
    = 0 and S v - A s = 0 for every generator log (A, v).  The returned
    basis is the canonical reduced-echelon kernel basis, so equal groups
    give byte-identical centralizers.
    """
    n = G.n
    N = n * n + n
    Gm = G.Q.gram
    rows = []
    for i in range(n):
        for j in range(i, n):
            row = [0] * N
            for t in range(n):
                g = Gm[t, j]
                if g:
                    row[t * n + i] += g
                g = Gm[i, t]
                if g:
                    row[t * n + j] += g
            if any(row):
                rows.append(row)
    for l in G.logs:
        A = l.nilpart
        v = l.translation
        for i in range(n):
            Arow_i = A.rows[i]
            for j in range(n):
                row = [0] * N
                for t in range(n):
                    a = A[t, j]
                    if a:
                        row[i * n + t] += a
                    a = Arow_i[t]
                    if a:
                        row[t * n + j] -= a
                if any(row):
                    rows.append(row)
        for i in range(n):
            row = [0] * N
            for t in range(n):
                if v[t]:
                    row[i * n + t] += v[t]
                a = A[i, t]
                if a:
                    row[n * n + t] -= a
            if any(row):
                rows.append(row)
    from .linalg import nullspace

    basis = [AffineLog.unflatten(n, flat) for flat in nullspace(rows, N)]
    return CentralizerAlgebra(G.Q, basis)


# ---------------------------------------------------------------------------
# orbits


@dataclass(frozen=True)
class OrbitCertificate:
    """Dimension of the centralizer orbit direction span at a base point."""

    basepoint: tuple
    orbit_dim: int
    is_open: bool


def _orbit_span(basis, point, n: int) -> Subspace:
    return Subspace(n, [vadd(l.nilpart.apply(point), l.translation) for l in basis])


def orbit_dimension(C: CentralizerAlgebra, basepoint) -> OrbitCertificate:
    basepoint = tuple(basepoint)
    if len(basepoint) != C.ambient_dim:
        raise PreconditionError("basepoint dimension mismatch")
    d = _orbit_span(C.basis, basepoint, C.ambient_dim).dim
    return OrbitCertificate(
        basepoint=basepoint, orbit_dim=d, is_open=(d == C.ambient_dim)
    )


def _probe_points(n: int, seed: int) -> tuple:
    """Origin, the n standard basis vectors, and 5 seeded rational points."""
    rng = random.Random(seed)
    pts = [vzero(n)]
    pts += [tuple(1 if t == i else 0 for t in range(n)) for i in range(n)]
    for _ in range(5):
        pts.append(
            tuple(Fraction(rng.randint(-9, 9), rng.randint(1, 4)) for _ in range(n))
        )
    return tuple(pts)


# ---------------------------------------------------------------------------
# transitivity


@dataclass(frozen=True)
class TransitivityCertificate:
    """Unipotent-algebra transitivity: closure, nilpotency, probe surjectivity."""

    certified: bool
    bracket_closed: bool
    all_parts_nilpotent: bool
    nilpotency_class: Optional[int]
    candidate_dim: int
    probes: tuple
    surjective_at: tuple
    probe_seed: int


def _is_nilpotent(M: Mat) -> bool:
    P = M
    for _ in range(M.n):
        if P.is_zero():
            return True
        P = P * M
    return P.is_zero()


def _nilpotency_class(basis, ambient: int) -> Optional[int]:
    """Length of the lower central series of the span, or None if it stagnates."""
    n = basis[0].dim if basis else 0
    layer = list(basis)
    layer_span = Subspace(ambient, [l.flatten() for l in layer])
    cls = 1
    while layer_span.dim > 0:
        nxt = []
        for b in basis:
            for y in layer:
                nxt.append(bracket(b, y))
        nxt_span = Subspace(ambient, [l.flatten() for l in nxt])
        if nxt_span.dim == 0:
            return cls
        if nxt_span.dim >= layer_span.dim and nxt_span == layer_span:
            return None
        layer = [AffineLog.unflatten(n, f) for f in nxt_span.basis]
        layer_span = nxt_span
        cls += 1
        if cls > ambient:
            return None
    return 0


def transitivity_certificate(
    C: CentralizerAlgebra, candidate=None, probe_seed: int = 0
) -> TransitivityCertificate:
    """Certify transitive action of a centralizer subalgebra.

    ``candidate`` restricts the check to a chosen family inside the
    centralizer (default: the full computed basis).  Certification needs
    the candidate span to close under brackets, every linear part to be
    nilpotent, and the evaluation map S x0 + s to be surjective at the
    origin, all standard basis vectors, and 5 seeded rational points.
    """
    basis = tuple(candidate) if candidate is not None else C.basis
    n = C.ambient_dim
    ambient = n * n + n
    if candidate is not None:
        for idx, l in enumerate(basis):
            if not C.contains(l):
                raise PreconditionError(
                    f"candidate element {idx} is not in the centralizer"
                )
    span = Subspace(ambient, [l.flatten() for l in basis])
    closed = True
    for i in range(len(basis)):
        for j in range(i + 1, len(basis)):
            if not span.contains_vector(bracket(basis[i], basis[j]).flatten()):
                closed = False
                break
        if not closed:
            break
    nilpotent = all(_is_nilpotent(l.nilpart) for l in basis)
    klass = _nilpotency_class(basis, ambient) if closed and basis else None
    probes = _probe_points(n, probe_seed)
    surjective = tuple(_orbit_span(basis, p, n).dim == n for p in probes)
    certified = bool(closed and nilpotent and basis and all(surjective))
    return TransitivityCertificate(
        certified=certified,
        bracket_closed=closed,
        all_parts_nilpotent=nilpotent,
        nilpotency_class=klass,
        candidate_dim=len(basis),
        probes=probes,
        surjective_at=surjective,
        probe_seed=probe_seed,
    )


# ---------------------------------------------------------------------------
# properness


@dataclass(frozen=True)
class PropernessCertificate:
    """Closedness + orbit geometry, combined into a properness verdict.

    verdict is one of:
      proper-on-space      closed group, transitive centralizer
      proper-on-open-orbit closed group, open centralizer orbit (preserved
                           by the group, which lies in its own bicommutant)
      evidence-only        orbit geometry fine but closedness only heuristic
      not-certified        no open orbit found
    """

    closed_tag: str
    group_closed_certified: bool
    separation_gap: Optional[Fraction]
    transitivity: TransitivityCertificate
    orbit: Optional[OrbitCertificate]
    route: Optional[str]
    verdict: str


def _integer_unipotent(G: IsoGroup) -> bool:
    for g, l in zip(G.generators, G.logs):
        if not g.linear.is_integer():
            return False
        if not all(isinstance(x, int) for x in g.translation):
            return False
        if not _is_nilpotent(l.nilpart):
            return False
    return True


def _separation_gap(G: IsoGroup, radius: int = 6) -> Fraction:
    """Minimum entrywise distance from the identity over the punctured ball."""
    ident = Mat.identity(G.n)
    best = None
    for g in G.word_ball(radius):
        if g.is_identity():
            continue
        gap = max(
            max(abs(a - b) for a, b in zip(row, irow))
            for row, irow in zip(g.linear.rows, ident.rows)
        )
        gap = max(gap, max((abs(t) for t in g.translation), default=0))
        if best is None or gap < best:
            best = gap
    return Fraction(best if best is not None else 0)


def properness_certificate(
    G: IsoGroup,
    C: Optional[CentralizerAlgebra] = None,
    candidate=None,
    probe_seed: int = 0,
) -> PropernessCertificate:
    """Combine a closedness certificate with centralizer orbit geometry.

    Integer unipotent generator matrices certify closedness (a discrete
    subgroup of integer points).  Otherwise a ball-separation gap is
    reported as evidence only and the verdict never exceeds evidence-only.
    ``candidate`` picks a subfamily of the centralizer for the
    transitivity route; a transitive subalgebra certifies the route even
    when the full solution space contains non-nilpotent parts.
    """
    if C is None:
        C = centralizer_algebra(G)
    if _integer_unipotent(G):
        closed_tag = "integer-unipotent"
        closed = True
        gap = None
    else:
        closed_tag = "ball-separation-evidence"
        closed = False
        gap = _separation_gap(G)
    trans = transitivity_certificate(C, candidate=candidate, probe_seed=probe_seed)
    orbit = None
    route = None
    if trans.certified:
        route = "transitive-centralizer"
        orbit = orbit_dimension(C, vzero(G.n))
        verdict = "proper-on-space" if closed else "evidence-only"
    else:
        for p in _probe_points(G.n, probe_seed):
            cert = orbit_dimension(C, p)
            if cert.is_open:
                orbit = cert
                break
        if orbit is not None:
            route = "open-orbit"
            verdict = "proper-on-open-orbit" if closed else "evidence-only"
        else:
            verdict = "not-certified"
    return PropernessCertificate(
        closed_tag=closed_tag,
        group_closed_certified=closed,
        separation_gap=gap,
        transitivity=trans,
        orbit=orbit,
        route=route,
        verdict=verdict,
    )


def certify_open_orbit(
    G: IsoGroup, C: Optional[CentralizerAlgebra] = None, probe_seed: int = 0
) -> Optional[OrbitCertificate]:
    """Try to certify an open centralizer orbit; on success mark the group valid."""
    if C is None:
        C = centralizer_algebra(G)
    for p in _probe_points(G.n, probe_seed):
        cert = orbit_dimension(C, p)
        if cert.is_open:
            G.validity = "certified-open-orbit"
            return cert
    return None


# ---------------------------------------------------------------------------
# documented centralizer families of the built-in examples


def _family44(p) -> AffineLog:
    x1, x2, y1, y2, y3, y4, z1, z2 = p
    S1 = Mat([[z1, z2], [z2, -z1]])
    S2 = Mat([[-y1, y3 - y2], [-y2, y1 + y4], [-y3, 0], [-y4, 0]])
    S3 = Mat(
        [
            [0, 0, -z2, -z1],
            [0, 0, z1, -z2],
            [-z2, z1, 0, 0],
            [-z1, -z2, 0, 0],
        ]
    )
    itilde = Mat.diag([1, 1, -1, -1])
    S = Mat.block(
        [
            [S1, -(S2.T * itilde), Mat.zeros(2, 2)],
            [Mat.zeros(4, 2), S3, S2],
            [Mat.zeros(2, 2), Mat.zeros(2, 4), -(S1.T)],
        ]
    )
    return AffineLog(S, (x1, x2, y1, y2, y3, y4, z1, z2))


def _family77(p) -> AffineLog:
    x1, x2, x3, x4, x5, y1, y2, y3, y4, z1, z2, z3, z4, z5 = p
    S1 = Mat(
        [
            [0, 0, 0, 0, -2 * z2],
            [0, 0, 0, 0, 2 * z1],
            [0, 0, 0, 0, 0],
            [0, 0, 0, 0, 0],
            [0, 0, 0, 0, 0],
        ]
    )
    S2 = Mat(
        [
            [0, 0, -z2, z1, 0],
            [0, 0, z1, z2, 0],
            [0, 0, -z1, z2, 0],
            [0, 0, z2, z1, 0],
        ]
    )
    S3 = Mat(
        [
            [0, 0, -y2 - y3, y4 - y1, 0],
            [0, 0, y1 + y4, y3 - y2, 0],
            [y2 + y3, -y1 - y4, 0, z5, -z4],
            [y1 - y4, y2 - y3, -z5, 0, z3],
            [0, 0, z4, -z3, 0],
        ]
    )
    itilde = Mat.diag([1, 1, -1, -1])
    S = Mat.block(
        [
            [S1, -(S2.T * itilde), S3],
            [Mat.zeros(4, 5), Mat.zeros(4, 4), S2],
            [Mat.zeros(5, 5), Mat.zeros(5, 4), -(S1.T)],
        ]
    )
    return AffineLog(S, (x1, x2, x3, x4, x5, y1, y2, y3, y4, z1, z2, z3, z4, z5))


def builtin_centralizer_family(name: str) -> tuple:
    """The documented parameter family of centralizer elements, as a basis.

    gamma44 carries an 8-parameter family (translations x1 x2, shears
    y1..y4, rotations z1 z2), gamma77 a 14-parameter one.  Each returned
    log is the family evaluated at one unit parameter vector.
    """
    if name == "gamma44":
        build, count = _family44, 8
    elif name == "gamma77":
        build, count = _family77, 14
    else:
        raise KeyError(f"unknown example {name!r}")
    out = []
    for i in range(count):
        params = [0] * count
        params[i] = 1
        out.append(build(params))
    return tuple(out)
