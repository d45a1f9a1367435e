"""Metric 2-step nilpotent Lie algebras and the compact-case toolkit.

A biinvariant flat metric on a Lie group is the same thing as a metric
2-step nilpotent Lie algebra: the inner product satisfies
<[X,Y],Z> = -<Y,[X,Z]> and flatness is 2-step nilpotency.  Every such
algebra splits as (a (+)_w a*) (+) z0 where the bracket on the split part
is encoded by an alternating 3-form F on a.  This module builds the split
algebras from a 3-form, checks biinvariance and flatness, realizes the
development representation X -> (1/2 ad(X), X) into the affine algebra,
and recovers the splitting of a given algebra.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .affine import AffineLog, wolf_check_log
from .errors import ConsistencyError, PreconditionError
from .forms import (
    ScalarProduct,
    WittFrame,
    is_totally_isotropic,
    orthogonal_complement,
    witt_frame,
)
from .linalg import Mat, Subspace, _as_exact, dot, nullspace, vadd, vscale, vzero

__all__ = [
    "ThreeForm",
    "MetricLieAlgebra",
    "CompactHolonomyReport",
    "SplitDecomposition",
    "build_split_algebra",
    "check_biinvariant",
    "trilinear_alternating",
    "is_flat",
    "development_rep",
    "verify_compact_holonomy",
    "split_decomposition",
]


_PERMUTATION_SIGNS = {
    (0, 1, 2): 1,
    (1, 2, 0): 1,
    (2, 0, 1): 1,
    (0, 2, 1): -1,
    (1, 0, 2): -1,
    (2, 1, 0): -1,
}


class ThreeForm:
    """Alternating 3-form on an m-dimensional space, stored on strict triples."""

    __slots__ = ("m", "values")

    def __init__(self, m: int, values=None):
        if m < 0:
            raise PreconditionError("negative dimension")
        table = {}
        for key, raw in dict(values or {}).items():
            i, j, k = key
            if not (0 <= i < j < k < m):
                raise PreconditionError(f"triple {key} is not strictly increasing in range")
            val = _as_exact(raw)
            if val != 0:
                table[(i, j, k)] = val
        self.m = m
        self.values = table

    def __call__(self, i: int, j: int, k: int):
        """Signed evaluation F(e_i, e_j, e_k); repeated indices give 0."""
        for t in (i, j, k):
            if not 0 <= t < self.m:
                raise PreconditionError("index out of range")
        if len({i, j, k}) < 3:
            return 0
        order = sorted((i, j, k))
        sign = _PERMUTATION_SIGNS[(order.index(i), order.index(j), order.index(k))]
        return sign * self.values.get(tuple(order), 0)

    def is_zero(self) -> bool:
        return not self.values

    def triples(self):
        """Nonzero entries as (i, j, k, value), sorted."""
        for key in sorted(self.values):
            yield key + (self.values[key],)

    @classmethod
    def determinant(cls, m: int = 3) -> "ThreeForm":
        if m != 3:
            raise PreconditionError("determinant 3-form needs m = 3")
        return cls(3, {(0, 1, 2): 1})

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, ThreeForm)
            and self.m == other.m
            and self.values == other.values
        )

    def __hash__(self) -> int:
        return hash((self.m, tuple(sorted(self.values.items()))))

    def __repr__(self) -> str:
        return f"ThreeForm(m={self.m}, {len(self.values)} nonzero)"


class MetricLieAlgebra:
    """Structure constants plus a nondegenerate symmetric gram matrix.

    c[i][j] is the coordinate vector of [e_i, e_j].  Antisymmetry and the
    Jacobi identity are validated exactly at construction.
    """

    __slots__ = ("dim", "structure", "gram", "form", "_derived", "_center")

    def __init__(self, structure, gram: Mat):
        rows = tuple(tuple(tuple(_as_exact(x) for x in vec) for vec in row) for row in structure)
        n = len(rows)
        if any(len(row) != n or any(len(vec) != n for vec in row) for row in rows):
            raise PreconditionError("structure table must be n x n vectors of length n")
        if gram.shape != (n, n):
            raise PreconditionError("gram dimension mismatch")
        self.dim = n
        self.structure = rows
        self.form = ScalarProduct(gram)  # validates symmetric nondegenerate
        self.gram = self.form.gram
        self._derived = None
        self._center = None
        for i in range(n):
            for j in range(n):
                if rows[i][j] != tuple(-x for x in rows[j][i]):
                    raise PreconditionError(f"structure constants not antisymmetric at ({i},{j})")
        self._check_jacobi()

    def _check_jacobi(self):
        n = self.dim
        basis = [tuple(1 if t == i else 0 for t in range(n)) for i in range(n)]
        for i in range(n):
            for j in range(i + 1, n):
                cij = self.structure[i][j]
                for k in range(j + 1, n):
                    total = vadd(
                        vadd(
                            self.bracket_vectors(cij, basis[k]),
                            self.bracket_vectors(self.structure[j][k], basis[i]),
                        ),
                        self.bracket_vectors(self.structure[k][i], basis[j]),
                    )
                    if any(x != 0 for x in total):
                        raise PreconditionError(f"Jacobi identity fails on ({i},{j},{k})")

    def bracket_vectors(self, x, y):
        """[x, y] by bilinear expansion of the structure table."""
        out = list(vzero(self.dim))
        for i, xi in enumerate(x):
            if xi == 0:
                continue
            for j, yj in enumerate(y):
                if yj == 0:
                    continue
                vec = self.structure[i][j]
                for t in range(self.dim):
                    if vec[t] != 0:
                        out[t] += xi * yj * vec[t]
        return tuple(out)

    def ad_matrix(self, x) -> Mat:
        """The matrix of ad(x) = [x, .] in the ambient basis."""
        n = self.dim
        cols = []
        for j in range(n):
            ej = tuple(1 if t == j else 0 for t in range(n))
            cols.append(self.bracket_vectors(x, ej))
        return Mat.from_cols(cols, n)

    def derived_subspace(self) -> Subspace:
        if self._derived is None:
            vecs = [self.structure[i][j] for i in range(self.dim) for j in range(i + 1, self.dim)]
            self._derived = Subspace(self.dim, vecs)
        return self._derived

    def center(self) -> Subspace:
        """{x : [e_i, x] = 0 for all i}."""
        if self._center is None:
            n = self.dim
            rows = []
            for i in range(n):
                ei = tuple(1 if t == i else 0 for t in range(n))
                rows.extend(self.ad_matrix(ei).rows)
            self._center = Subspace(n, nullspace(rows, n))
        return self._center

    def pair(self, x, y):
        return self.form.pair(x, y)

    def __repr__(self) -> str:
        return f"MetricLieAlgebra(dim={self.dim}, signature={self.form.signature})"


def build_split_algebra(
    F: ThreeForm, dim_z0: int = 0, z0_gram: Optional[Mat] = None
) -> MetricLieAlgebra:
    """The metric algebra (a (+)_w a*) (+) z0 from an alternating 3-form.

    Basis order is a then a* then z0; the bracket is [a_i, a_j] =
    sum_t F(i,j,t) a*_t with a* and z0 central, and the gram is the split
    pairing <a_i, a*_j> = delta extended by z0's form (default: identity).
    """
    m = F.m
    if z0_gram is not None:
        if isinstance(z0_gram, ScalarProduct):
            z0_gram = z0_gram.gram
        if dim_z0 and z0_gram.n != dim_z0:
            raise PreconditionError("dim_z0 does not match the explicit z0 gram")
        dim_z0 = z0_gram.n
    else:
        z0_gram = Mat.identity(dim_z0)
    n = 2 * m + dim_z0
    zero = vzero(n)
    structure = [[zero] * n for _ in range(n)]
    for i in range(m):
        for j in range(m):
            if i == j:
                continue
            vec = [0] * n
            for t in range(m):
                val = F(i, j, t)
                if val != 0:
                    vec[m + t] = val
            structure[i][j] = tuple(vec)
    gram = Mat.block(
        [
            [Mat.zeros(m, m), Mat.identity(m), Mat.zeros(m, dim_z0)],
            [Mat.identity(m), Mat.zeros(m, m), Mat.zeros(m, dim_z0)],
            [Mat.zeros(dim_z0, m), Mat.zeros(dim_z0, m), z0_gram],
        ]
    )
    return MetricLieAlgebra(structure, gram)


def check_biinvariant(g: MetricLieAlgebra) -> bool:
    """<[e_i,e_j],e_k> = -<e_j,[e_i,e_k]> on all ordered basis triples."""
    n = g.dim
    basis = [tuple(1 if t == i else 0 for t in range(n)) for i in range(n)]
    for i in range(n):
        for j in range(n):
            cij = g.structure[i][j]
            for k in range(n):
                if g.pair(cij, basis[k]) != -g.pair(basis[j], g.structure[i][k]):
                    return False
    return True


def trilinear_alternating(g: MetricLieAlgebra) -> bool:
    """Whether the trilinear form <[e_i,e_j],e_k> is alternating in all arguments."""
    n = g.dim
    basis = [tuple(1 if t == i else 0 for t in range(n)) for i in range(n)]
    table = [
        [[g.pair(g.structure[i][j], basis[k]) for k in range(n)] for j in range(n)]
        for i in range(n)
    ]
    for i in range(n):
        for j in range(n):
            for k in range(n):
                v = table[i][j][k]
                if table[j][i][k] != -v or table[i][k][j] != -v:
                    return False
                if len({i, j, k}) < 3 and v != 0:
                    return False
    return True


def is_flat(g: MetricLieAlgebra) -> bool:
    """Flatness of the biinvariant metric: all double brackets vanish."""
    if not check_biinvariant(g):
        raise PreconditionError("flatness criterion needs a biinvariant gram")
    n = g.dim
    basis = [tuple(1 if t == i else 0 for t in range(n)) for i in range(n)]
    for i in range(n):
        for j in range(n):
            cij = g.structure[i][j]
            for k in range(n):
                if any(x != 0 for x in g.bracket_vectors(cij, basis[k])):
                    return False
    return True


def development_rep(g: MetricLieAlgebra, x) -> AffineLog:
    """The affine image (1/2 ad(x), x) of the development representation."""
    if not is_flat(g):
        raise PreconditionError("development representation needs a flat biinvariant algebra")
    x = tuple(_as_exact(t) for t in x)
    return AffineLog(g.ad_matrix(x) * Fraction(1, 2), x)


@dataclass(frozen=True)
class CompactHolonomyReport:
    """Holonomy facts for a flat biinvariant algebra and a generating set."""

    abelian_images: bool
    span_is_derived: bool
    derived_isotropic: bool
    wolf_valid: tuple
    holonomy_dim: int

    @property
    def overall(self) -> bool:
        return bool(
            self.abelian_images
            and self.span_is_derived
            and self.derived_isotropic
            and all(self.wolf_valid)
        )


def verify_compact_holonomy(g: MetricLieAlgebra, generating_set) -> CompactHolonomyReport:
    """Abelian-holonomy evidence: images multiply to zero, their span is [g,g],
    the span is totally isotropic, and every image is Wolf-valid."""
    gens = [tuple(_as_exact(t) for t in x) for x in generating_set]
    n = g.dim
    if Subspace(n, gens).dim != n:
        raise PreconditionError("generating set must span the algebra")
    logs = [development_rep(g, x) for x in gens]
    abelian = all(
        (a.nilpart * b.nilpart).is_zero() for a in logs for b in logs
    )
    image = Subspace(n, [])
    for x in gens:
        ad = g.ad_matrix(x)
        image = image + Subspace(n, [ad.col(j) for j in range(n)])
    derived = g.derived_subspace()
    isotropic = is_totally_isotropic(derived, g.form)
    wolf = tuple(wolf_check_log(l.nilpart, l.translation, g.form).overall for l in logs)
    return CompactHolonomyReport(
        abelian_images=abelian,
        span_is_derived=image == derived,
        derived_isotropic=isotropic,
        wolf_valid=wolf,
        holonomy_dim=image.dim,
    )


@dataclass(frozen=True)
class SplitDecomposition:
    """The pieces of g = (a (+)_w a*) (+) z0 in the ambient coordinates."""

    a: Subspace
    a_star: Subspace
    z0: Subspace
    three_form: ThreeForm
    core_gram: Mat
    frame: WittFrame
    basis_change: Mat
    rebuilt: MetricLieAlgebra


def split_decomposition(g: MetricLieAlgebra) -> SplitDecomposition:
    """Recover a splitting g = (a (+)_w a*) (+) z0 of a flat biinvariant algebra.

    a* is the derived subalgebra, a a dual isotropic partner from a Witt
    frame, z0 the frame core.  The extracted 3-form and core gram rebuild
    an algebra that matches g exactly under the frame's change of basis.
    """
    if not is_flat(g):
        raise PreconditionError("splitting applies to flat biinvariant algebras")
    n = g.dim
    derived = g.derived_subspace()
    center = g.center()
    if not derived <= center:
        raise ConsistencyError("derived subalgebra is not central")
    if orthogonal_complement(derived, g.form) != center:
        raise ConsistencyError("orthogonal complement of [g,g] is not the center")
    frame = witt_frame(derived, g.form)
    m = frame.k
    duals = frame.dual_vectors()
    us = frame.u_vectors()
    ws = frame.w_vectors()
    # brackets of the duals, in the u-coordinates, give the 3-form
    values = {}
    for i in range(m):
        for j in range(i + 1, m):
            bij = g.bracket_vectors(duals[i], duals[j])
            for k in range(j + 1, m):
                values[(i, j, k)] = g.pair(bij, duals[k])
    F = ThreeForm(m, values)
    for i in range(m):
        for j in range(m):
            bij = g.bracket_vectors(duals[i], duals[j])
            expect = vzero(n)
            for t in range(m):
                val = F(i, j, t)
                if val != 0:
                    expect = vadd(expect, vscale(val, us[t]))
            if bij != expect:
                raise ConsistencyError("trilinear table is not alternating on the duals")
    for w in ws:
        for i in range(m):
            if any(x != 0 for x in g.bracket_vectors(w, duals[i])):
                raise ConsistencyError("core vector fails to be central")
    rebuilt = build_split_algebra(F, z0_gram=frame.gram_w)
    P = Mat.from_cols(list(duals) + list(us) + list(ws), n)
    Pinv = P.inverse()
    for i in range(n):
        for j in range(n):
            left = Pinv.apply(g.bracket_vectors(P.col(i), P.col(j)))
            if left != rebuilt.structure[i][j]:
                raise ConsistencyError("rebuilt structure constants do not match")
    if P.T * g.gram * P != rebuilt.gram:
        raise ConsistencyError("rebuilt gram does not match")
    return SplitDecomposition(
        a=Subspace(n, duals),
        a_star=derived,
        z0=Subspace(n, ws),
        three_form=F,
        core_gram=frame.gram_w,
        frame=frame,
        basis_change=P,
        rebuilt=rebuilt,
    )
