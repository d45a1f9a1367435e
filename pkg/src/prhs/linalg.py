"""Exact dense linear algebra over the rationals.

Matrix and vector entries are Python ints or fractions.Fraction, so every
operation here is exact.  Subspaces are stored through their reduced row
echelon basis, which is canonical: two subspaces are equal iff their stored
bases are identical tuples.  That makes equality, hashing and membership
cheap syntactic checks, which the rest of the package leans on heavily.

Row reduction runs in two phases: an integer forward elimination with gcd
normalization (rows are first scaled to coprime integers), then a single
fraction-producing back substitution.  This keeps intermediate entries small
without giving up exactness.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Optional, Sequence

__all__ = [
    "Mat",
    "Subspace",
    "rref",
    "nullspace",
    "rank_image_kernel",
    "solve",
    "solve_affine",
    "vec",
    "vzero",
    "unit",
    "vadd",
    "vsub",
    "vscale",
    "is_zero_vec",
    "dot",
]


def _as_exact(x):
    """Coerce an entry to int or Fraction; integral fractions collapse to int."""
    if isinstance(x, int) and not isinstance(x, bool):
        return x
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else x
    raise TypeError(f"exact entry expected, got {type(x).__name__}: {x!r}")


# ---------------------------------------------------------------------------
# vectors: plain tuples


def vec(xs: Iterable) -> tuple:
    return tuple(_as_exact(x) for x in xs)


def vzero(n: int) -> tuple:
    return (0,) * n


def unit(n: int, i: int) -> tuple:
    """Standard basis vector e_i (0-indexed) in dimension n."""
    if not 0 <= i < n:
        raise IndexError(f"unit index {i} out of range for dimension {n}")
    return (0,) * i + (1,) + (0,) * (n - 1 - i)


def vadd(a: tuple, b: tuple) -> tuple:
    if len(a) != len(b):
        raise ValueError("vector length mismatch")
    return tuple(x + y for x, y in zip(a, b))


def vsub(a: tuple, b: tuple) -> tuple:
    if len(a) != len(b):
        raise ValueError("vector length mismatch")
    return tuple(x - y for x, y in zip(a, b))


def vscale(c, a: tuple) -> tuple:
    return tuple(_as_exact(c * x) for x in a)


def dot(a: tuple, b: tuple):
    if len(a) != len(b):
        raise ValueError("vector length mismatch")
    return sum(x * y for x, y in zip(a, b))


def is_zero_vec(a: tuple) -> bool:
    return all(x == 0 for x in a)


# ---------------------------------------------------------------------------
# matrices


class Mat:
    """Immutable dense matrix with exact rational entries."""

    __slots__ = ("m", "n", "rows", "_hash")

    def __init__(self, rows, ncols: Optional[int] = None):
        rows = tuple(tuple(_as_exact(x) for x in r) for r in rows)
        if rows:
            width = len(rows[0])
            if any(len(r) != width for r in rows):
                raise ValueError("ragged rows")
        else:
            width = 0 if ncols is None else ncols
        self.m = len(rows)
        self.n = width
        self.rows = rows
        self._hash = None

    # -- constructors

    @classmethod
    def identity(cls, n: int) -> "Mat":
        return cls(tuple(unit(n, i) for i in range(n)))

    @classmethod
    def zeros(cls, m: int, n: int) -> "Mat":
        return cls(tuple(vzero(n) for _ in range(m)), ncols=n)

    @classmethod
    def diag(cls, entries) -> "Mat":
        entries = list(entries)
        n = len(entries)
        return cls(
            tuple(
                tuple(entries[i] if i == j else 0 for j in range(n))
                for i in range(n)
            )
        )

    @classmethod
    def from_cols(cls, cols, nrows: Optional[int] = None) -> "Mat":
        cols = [tuple(c) for c in cols]
        if cols:
            m = len(cols[0])
            if any(len(c) != m for c in cols):
                raise ValueError("ragged columns")
        else:
            m = 0 if nrows is None else nrows
        return cls(tuple(tuple(c[i] for c in cols) for i in range(m)), ncols=len(cols))

    @classmethod
    def block(cls, grid) -> "Mat":
        """Assemble a matrix from a 2d grid of Mat blocks with matching sizes."""
        grid = [list(row) for row in grid]
        if not grid or not grid[0]:
            raise ValueError("empty block grid")
        rows = []
        width = sum(b.n for b in grid[0])
        for brow in grid:
            if sum(b.n for b in brow) != width:
                raise ValueError("inconsistent block widths")
            height = brow[0].m
            if any(b.m != height for b in brow):
                raise ValueError("inconsistent block heights")
            for i in range(height):
                rows.append(tuple(x for b in brow for x in b.rows[i]))
        return cls(tuple(rows), ncols=width)

    # -- accessors

    @property
    def shape(self) -> tuple:
        return (self.m, self.n)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def row(self, i: int) -> tuple:
        return self.rows[i]

    def col(self, j: int) -> tuple:
        return tuple(r[j] for r in self.rows)

    def cols(self) -> list:
        return [self.col(j) for j in range(self.n)]

    def submatrix(self, r0: int, r1: int, c0: int, c1: int) -> "Mat":
        return Mat(tuple(r[c0:c1] for r in self.rows[r0:r1]), ncols=c1 - c0)

    def to_rows(self) -> list:
        return [list(r) for r in self.rows]

    # -- arithmetic

    def __add__(self, other: "Mat") -> "Mat":
        if not isinstance(other, Mat):
            return NotImplemented
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return Mat(
            tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows)),
            ncols=self.n,
        )

    def __sub__(self, other: "Mat") -> "Mat":
        if not isinstance(other, Mat):
            return NotImplemented
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return Mat(
            tuple(tuple(a - b for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows)),
            ncols=self.n,
        )

    def __neg__(self) -> "Mat":
        return Mat(tuple(tuple(-a for a in r) for r in self.rows), ncols=self.n)

    def __mul__(self, other):
        if isinstance(other, Mat):
            if self.n != other.m:
                raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
            if other.m == 0:
                return Mat.zeros(self.m, other.n)
            bcols = tuple(zip(*other.rows))
            return Mat(
                tuple(
                    tuple(sum(a * b for a, b in zip(row, col)) for col in bcols)
                    for row in self.rows
                ),
                ncols=other.n,
            )
        if isinstance(other, (int, Fraction)):
            return Mat(tuple(tuple(a * other for a in r) for r in self.rows), ncols=self.n)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * other
        return NotImplemented

    def __pow__(self, k: int) -> "Mat":
        if self.m != self.n or k < 0:
            raise ValueError("nonnegative power of a square matrix required")
        out = Mat.identity(self.n)
        for _ in range(k):
            out = out * self
        return out

    @property
    def T(self) -> "Mat":
        return Mat(tuple(zip(*self.rows)) if self.m else (), ncols=self.m)

    def apply(self, v: Sequence) -> tuple:
        if len(v) != self.n:
            raise ValueError("vector length mismatch")
        return tuple(sum(a * x for a, x in zip(row, v)) for row in self.rows)

    def inverse(self) -> "Mat":
        if self.m != self.n:
            raise ValueError("square matrix required")
        n = self.n
        aug = [list(r) + list(unit(n, i)) for i, r in enumerate(self.rows)]
        red, pivots = rref(aug)
        if pivots != list(range(n)):
            raise ValueError("matrix is singular")
        return Mat(tuple(tuple(red[i][n:]) for i in range(n)), ncols=n)

    # -- predicates

    def is_zero(self) -> bool:
        return all(x == 0 for r in self.rows for x in r)

    def is_square(self) -> bool:
        return self.m == self.n

    def is_symmetric(self) -> bool:
        return self.is_square() and all(
            self.rows[i][j] == self.rows[j][i] for i in range(self.m) for j in range(i)
        )

    def is_skew(self) -> bool:
        return self.is_square() and all(
            self.rows[i][j] == -self.rows[j][i] for i in range(self.m) for j in range(i + 1)
        )

    def is_integer(self) -> bool:
        return all(isinstance(x, int) for r in self.rows for x in r)

    # -- identity plumbing

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Mat)
            and self.m == other.m
            and self.n == other.n
            and self.rows == other.rows
        )

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.m, self.n, self.rows))
        return self._hash

    def __repr__(self) -> str:
        if self.m == 0 or self.n == 0:
            return f"Mat.zeros({self.m}, {self.n})"
        body = ", ".join("[" + ", ".join(str(x) for x in r) + "]" for r in self.rows)
        return f"Mat([{body}])"


# ---------------------------------------------------------------------------
# row reduction


def _row_to_ints(row) -> list:
    """Scale a rational row to coprime integers (exact, sign preserved)."""
    den = 1
    for x in row:
        if isinstance(x, Fraction):
            d = x.denominator
            den = den // math.gcd(den, d) * d
    out = []
    for x in row:
        y = x * den
        out.append(y if isinstance(y, int) else y.numerator)
    g = 0
    for x in out:
        if x:
            g = math.gcd(g, abs(x))
            if g == 1:
                return out
    if g > 1:
        out = [x // g for x in out]
    return out


def _normalize_int_row(row) -> list:
    g = 0
    for x in row:
        if x:
            g = math.gcd(g, abs(x))
            if g == 1:
                return row
    if g > 1:
        return [x // g for x in row]
    return row


def _int_echelon(rows) -> list:
    """In-place integer forward elimination; returns pivot columns.

    Rows must be lists of ints.  Chooses the smallest-magnitude pivot in each
    column (first on ties) to slow coefficient growth; trailing zero rows are
    removed.
    """
    if not rows:
        return []
    ncols = len(rows[0])
    nrows = len(rows)
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        best = -1
        best_abs = 0
        for i in range(r, nrows):
            v = rows[i][c]
            if v:
                a = abs(v)
                if best < 0 or a < best_abs:
                    best, best_abs = i, a
                    if a == 1:
                        break
        if best < 0:
            continue
        rows[r], rows[best] = rows[best], rows[r]
        prow = rows[r]
        p = prow[c]
        for i in range(r + 1, nrows):
            q = rows[i][c]
            if q:
                g = math.gcd(abs(p), abs(q))
                mp, mq = p // g, q // g
                rows[i] = _normalize_int_row(
                    [mp * a - mq * b for a, b in zip(rows[i], prow)]
                )
        pivots.append(c)
        r += 1
    del rows[r:]
    return pivots


def rref(rows) -> tuple:
    """Reduced row echelon form of the given rows, exactly.

    Returns (reduced_rows, pivot_columns); zero rows are dropped.  The result
    is the canonical RREF of the row space, independent of input order.
    """
    work = []
    for r in rows:
        ir = _row_to_ints(r)
        if any(ir):
            work.append(ir)
    pivots = _int_echelon(work)
    out = []
    for i, row in enumerate(work):
        p = row[pivots[i]]
        out.append([_as_exact(Fraction(x, p)) for x in row])
    for i in range(len(pivots) - 1, -1, -1):
        c = pivots[i]
        prow = out[i]
        for j in range(i):
            f = out[j][c]
            if f:
                out[j] = [_as_exact(a - f * b) for a, b in zip(out[j], prow)]
    return out, pivots


def nullspace(rows, ncols: int) -> list:
    """Canonical basis of {x : R x = 0} for equation rows R, as a vector list."""
    red, pivots = rref(rows)
    pivot_set = set(pivots)
    basis = []
    for f in range(ncols):
        if f in pivot_set:
            continue
        v = [0] * ncols
        v[f] = 1
        for i, p in enumerate(pivots):
            coef = red[i][f]
            if coef:
                v[p] = _as_exact(-coef)
        basis.append(tuple(v))
    return basis


def solve(rows, b, ncols: int) -> Optional[tuple]:
    """One solution of R x = b with free variables zero, or None."""
    rows = list(rows)
    if len(rows) != len(b):
        raise ValueError("row/rhs length mismatch")
    if not rows:
        return vzero(ncols)
    aug = [list(r) + [bb] for r, bb in zip(rows, b)]
    red, pivots = rref(aug)
    if ncols in pivots:
        return None
    x = [0] * ncols
    for i, p in enumerate(pivots):
        x[p] = red[i][-1]
    return tuple(x)


# ---------------------------------------------------------------------------
# subspaces


class Subspace:
    """A linear subspace of Q^n stored via its canonical RREF basis."""

    __slots__ = ("ambient_dim", "basis", "pivots")

    def __init__(self, ambient_dim: int, vectors):
        vectors = [tuple(v) for v in vectors]
        for v in vectors:
            if len(v) != ambient_dim:
                raise ValueError("vector length does not match ambient dimension")
        red, pivots = rref(vectors)
        self.ambient_dim = ambient_dim
        self.basis = tuple(tuple(r) for r in red)
        self.pivots = tuple(pivots)

    @classmethod
    def zero(cls, n: int) -> "Subspace":
        return cls(n, ())

    @classmethod
    def full(cls, n: int) -> "Subspace":
        return cls(n, tuple(unit(n, i) for i in range(n)))

    @classmethod
    def span(cls, n: int, vectors) -> "Subspace":
        return cls(n, vectors)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def matrix(self) -> Mat:
        """Basis vectors as the columns of an n×dim matrix."""
        return Mat.from_cols(self.basis, nrows=self.ambient_dim)

    def contains_vector(self, v) -> bool:
        v = list(v)
        if len(v) != self.ambient_dim:
            raise ValueError("vector length mismatch")
        for row, p in zip(self.basis, self.pivots):
            f = v[p]
            if f:
                v = [a - f * b for a, b in zip(v, row)]
        return all(x == 0 for x in v)

    def contains(self, other: "Subspace") -> bool:
        return all(self.contains_vector(v) for v in other.basis)

    def __le__(self, other: "Subspace") -> bool:
        return other.contains(self)

    def __add__(self, other: "Subspace") -> "Subspace":
        if self.ambient_dim != other.ambient_dim:
            raise ValueError("ambient dimension mismatch")
        return Subspace(self.ambient_dim, self.basis + other.basis)

    def intersect(self, other: "Subspace") -> "Subspace":
        # Zassenhaus: echelonize [[U, U], [W, 0]]; rows whose pivot falls in
        # the right half have zero left half, and those right halves span U∩W.
        if self.ambient_dim != other.ambient_dim:
            raise ValueError("ambient dimension mismatch")
        n = self.ambient_dim
        stacked = [list(u) + list(u) for u in self.basis]
        stacked += [list(w) + [0] * n for w in other.basis]
        red, pivots = rref(stacked)
        vecs = [red[i][n:] for i in range(len(red)) if pivots[i] >= n]
        return Subspace(n, vecs)

    def __and__(self, other: "Subspace") -> "Subspace":
        return self.intersect(other)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Subspace)
            and self.ambient_dim == other.ambient_dim
            and self.basis == other.basis
        )

    def __hash__(self) -> int:
        return hash((self.ambient_dim, self.basis))

    def __repr__(self) -> str:
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim})"


# ---------------------------------------------------------------------------
# derived operations


def rank_image_kernel(M: Mat) -> tuple:
    """(rank, column space, kernel) of M, all exact."""
    kernel = Subspace(M.n, nullspace(M.rows, M.n))
    image = Subspace(M.m, M.cols())
    rank = M.n - kernel.dim
    if rank != image.dim:
        raise AssertionError("rank bookkeeping broke; this is a bug")
    return rank, image, kernel


def solve_affine(M: Mat, b) -> Optional[tuple]:
    """Solution set of M x = b as (particular, kernel Subspace), or None.

    The particular solution is the canonical one with free variables zero.
    """
    if len(b) != M.m:
        raise ValueError("rhs length mismatch")
    x = solve(M.rows, b, M.n)
    if x is None:
        return None
    return x, Subspace(M.n, nullspace(M.rows, M.n))
