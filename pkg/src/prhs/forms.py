"""Pseudo-Euclidean scalar products.

Inertia is computed by exact congruence diagonalization, complements by
exact nullspaces, and Witt frames (bases adapted to a totally isotropic
subspace) by the deterministic dual-solving procedure described on
``witt_frame``.  A Witt frame turns the gram matrix into the split shape

    [[0, 0, I], [0, G_W, 0], [I, 0, 0]]

with G_W the restriction of the form to the chosen core W.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Optional

from .errors import ConsistencyError, PreconditionError
from .linalg import Mat, Subspace, dot, nullspace, solve, unit, vscale, vsub

__all__ = [
    "ScalarProduct",
    "WittFrame",
    "inertia",
    "orthogonal_complement",
    "is_totally_isotropic",
    "witt_frame",
    "diag_form",
    "split_form",
]


def inertia(G: Mat) -> tuple:
    """Sylvester inertia (positive, negative, zero) of a symmetric matrix."""
    if not G.is_symmetric():
        raise PreconditionError("inertia needs a symmetric matrix")
    n = G.n
    a = [[Fraction(x) for x in row] for row in G.rows]
    pos = neg = zero = 0
    for i in range(n):
        if a[i][i] == 0:
            j = next((t for t in range(i + 1, n) if a[t][t] != 0), None)
            if j is not None:
                # swap basis vectors i and j
                a[i], a[j] = a[j], a[i]
                for row in a:
                    row[i], row[j] = row[j], row[i]
            else:
                j = next((t for t in range(i + 1, n) if a[i][t] != 0), None)
                if j is None:
                    # basis vector i pairs with nothing left: radical direction
                    zero += 1
                    continue
                # add basis vector j to i; the new diagonal entry is 2*a[i][j] != 0
                for c in range(n):
                    a[i][c] += a[j][c]
                for r in range(n):
                    a[r][i] += a[r][j]
        p = a[i][i]
        if p > 0:
            pos += 1
        else:
            neg += 1
        for r in range(i + 1, n):
            if a[r][i]:
                f = a[r][i] / p
                for c in range(n):
                    a[r][c] -= f * a[i][c]
                for c in range(n):
                    a[c][r] -= f * a[c][i]
    return pos, neg, zero


class ScalarProduct:
    """Non-degenerate symmetric bilinear form with cached signature."""

    __slots__ = ("gram", "pos", "neg")

    def __init__(self, gram: Mat):
        p, q, z = inertia(gram)
        if z:
            raise PreconditionError("gram matrix is degenerate")
        self.gram = gram
        self.pos = p
        self.neg = q

    @property
    def dim(self) -> int:
        return self.gram.n

    @property
    def signature(self) -> tuple:
        return (self.pos, self.neg)

    def pair(self, x, y):
        return dot(x, self.gram.apply(y))

    def __eq__(self, other) -> bool:
        return isinstance(other, ScalarProduct) and self.gram == other.gram

    def __hash__(self) -> int:
        return hash(self.gram)

    def __repr__(self) -> str:
        return f"ScalarProduct(dim={self.dim}, signature={self.signature})"


def diag_form(entries) -> ScalarProduct:
    return ScalarProduct(Mat.diag(entries))


def split_form(k: int, gram_w=None) -> ScalarProduct:
    """The split gram [[0,0,I_k],[0,G_W,0],[I_k,0,0]] around a core form G_W."""
    if gram_w is None:
        gram_w = Mat.zeros(0, 0)
    elif isinstance(gram_w, ScalarProduct):
        gram_w = gram_w.gram
    if not gram_w.is_symmetric():
        raise PreconditionError("core gram must be symmetric")
    w = gram_w.n
    ik = Mat.identity(k)
    return ScalarProduct(
        Mat.block(
            [
                [Mat.zeros(k, k), Mat.zeros(k, w), ik],
                [Mat.zeros(w, k), gram_w, Mat.zeros(w, k)],
                [ik, Mat.zeros(k, w), Mat.zeros(k, k)],
            ]
        )
    )


def orthogonal_complement(U: Subspace, Q: ScalarProduct) -> Subspace:
    """{x : <u, x> = 0 for all u in U}."""
    if U.ambient_dim != Q.dim:
        raise PreconditionError("subspace/form dimension mismatch")
    rows = [Q.gram.apply(u) for u in U.basis]
    return Subspace(Q.dim, nullspace(rows, Q.dim))


def is_totally_isotropic(U: Subspace, Q: ScalarProduct) -> bool:
    basis = U.basis
    for i in range(len(basis)):
        for j in range(i, len(basis)):
            if Q.pair(basis[i], basis[j]) != 0:
                return False
    return True


class WittFrame:
    """Ordered basis u_1..u_k, w_1..w_{n-2k}, u*_1..u*_k adapted to U_0.

    ``basis_change`` holds the frame vectors as columns; conjugating by it
    moves matrices between ambient coordinates and frame coordinates.
    """

    __slots__ = ("k", "n", "basis_change", "gram_w", "_inv")

    def __init__(self, k: int, n: int, basis_change: Mat, gram_w: Mat):
        self.k = k
        self.n = n
        self.basis_change = basis_change
        self.gram_w = gram_w
        self._inv = None

    @property
    def core_dim(self) -> int:
        return self.n - 2 * self.k

    @property
    def inverse_change(self) -> Mat:
        if self._inv is None:
            self._inv = self.basis_change.inverse()
        return self._inv

    def u_vectors(self) -> list:
        return [self.basis_change.col(i) for i in range(self.k)]

    def w_vectors(self) -> list:
        return [self.basis_change.col(self.k + i) for i in range(self.core_dim)]

    def dual_vectors(self) -> list:
        return [self.basis_change.col(self.k + self.core_dim + i) for i in range(self.k)]

    def to_frame_matrix(self, A: Mat) -> Mat:
        return self.inverse_change * A * self.basis_change

    def from_frame_matrix(self, A: Mat) -> Mat:
        return self.basis_change * A * self.inverse_change

    def to_frame_vector(self, v) -> tuple:
        return self.inverse_change.apply(v)

    def from_frame_vector(self, v) -> tuple:
        return self.basis_change.apply(v)

    def expected_gram(self) -> Mat:
        k, w = self.k, self.core_dim
        ik = Mat.identity(k)
        return Mat.block(
            [
                [Mat.zeros(k, k), Mat.zeros(k, w), ik],
                [Mat.zeros(w, k), self.gram_w, Mat.zeros(w, k)],
                [ik, Mat.zeros(k, w), Mat.zeros(k, k)],
            ]
        )

    def check(self, Q: ScalarProduct) -> bool:
        """Exact check that the frame splits Q into the expected block gram."""
        P = self.basis_change
        return P.T * Q.gram * P == self.expected_gram()


def witt_frame(U0: Subspace, Q: ScalarProduct) -> WittFrame:
    """Extend a totally isotropic U_0 to a Witt frame of Q, deterministically.

    For each canonical basis vector u_i of U_0 the dual u*_i is the reduced
    echelon particular solution of <u_j, x> = delta_ij (free variables zero,
    i.e. lowest coordinate indices win), orthogonalized against the duals
    already built and then corrected along u_i to make it isotropic.  W is
    the canonical basis of the orthogonal complement of the span of all u_i
    and u*_i.  The nine block identities of the resulting gram are verified
    exactly before returning.
    """
    if not is_totally_isotropic(U0, Q):
        raise PreconditionError("witt_frame needs a totally isotropic subspace")
    n = Q.dim
    us = list(U0.basis)
    k = len(us)
    pairing_rows = [Q.gram.apply(u) for u in us]
    duals = []
    for i in range(k):
        x = solve(pairing_rows, unit(k, i), n)
        if x is None:
            raise ConsistencyError("dual system unsolvable for a non-degenerate form")
        for m, d in enumerate(duals):
            t = Q.pair(d, x)
            if t:
                x = vsub(x, vscale(t, us[m]))
        c = Q.pair(x, x)
        if c:
            x = vsub(x, vscale(Fraction(c, 2), us[i]))
        duals.append(x)
    span_uu = Subspace(n, us + duals)
    W = orthogonal_complement(span_uu, Q)
    ws = list(W.basis)
    if len(ws) != n - 2 * k:
        raise ConsistencyError("hyperbolic complement has wrong dimension")
    gram_w = Mat([[Q.pair(a, b) for b in ws] for a in ws], ncols=len(ws))
    frame = WittFrame(k, n, Mat.from_cols(us + ws + duals, nrows=n), gram_w)
    if not frame.check(Q):
        raise ConsistencyError("witt frame failed its gram identities")
    return frame
