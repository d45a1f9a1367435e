"""Affine isometries x -> (I+A)x + v and their logarithms.

The six pointwise conditions bundled in ``wolf_check`` characterize the
linear-part data of unipotent isometries whose group stays isometric in
every conjugate: A^2 = 0, v orthogonal to im A, im A totally isotropic,
QA skew, im A = (ker A)^perp, and Av = 0.  Logs and exponentials run
through the homogeneous (n+1)x(n+1) picture, where the series terminate
for nilpotent arguments and stay exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Optional

from .errors import PreconditionError
from .forms import ScalarProduct, orthogonal_complement
from .linalg import (
    Mat,
    Subspace,
    is_zero_vec,
    rank_image_kernel,
    solve_affine,
    vadd,
    vzero,
)

__all__ = [
    "AffineIsometry",
    "AffineLog",
    "WolfReport",
    "compose",
    "inverse",
    "commutator",
    "commutes",
    "is_isometry",
    "wolf_check",
    "wolf_check_log",
    "log_affine",
    "exp_affine",
    "affine_power",
    "bracket",
    "ad_conjugate",
    "fixed_points",
]


class AffineIsometry:
    """Invertible affine map with exact rational linear part and translation."""

    __slots__ = ("linear", "translation", "_hash")

    def __init__(self, linear: Mat, translation):
        if not linear.is_square():
            raise ValueError("linear part must be square")
        translation = tuple(translation)
        if len(translation) != linear.n:
            raise ValueError("translation length mismatch")
        self.linear = linear
        self.translation = translation
        self._hash = None

    @classmethod
    def identity(cls, n: int) -> "AffineIsometry":
        return cls(Mat.identity(n), vzero(n))

    @property
    def dim(self) -> int:
        return self.linear.n

    def apply(self, x) -> tuple:
        return vadd(self.linear.apply(x), self.translation)

    def __mul__(self, other: "AffineIsometry") -> "AffineIsometry":
        if not isinstance(other, AffineIsometry):
            return NotImplemented
        return AffineIsometry(
            self.linear * other.linear,
            vadd(self.linear.apply(other.translation), self.translation),
        )

    def inverse(self) -> "AffineIsometry":
        li = self.linear.inverse()
        return AffineIsometry(li, tuple(-x for x in li.apply(self.translation)))

    def is_identity(self) -> bool:
        return is_zero_vec(self.translation) and self.linear == Mat.identity(self.dim)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, AffineIsometry)
            and self.linear == other.linear
            and self.translation == other.translation
        )

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.linear, self.translation))
        return self._hash

    def __repr__(self) -> str:
        return f"AffineIsometry(dim={self.dim})"


def compose(g: AffineIsometry, h: AffineIsometry) -> AffineIsometry:
    return g * h


def inverse(g: AffineIsometry) -> AffineIsometry:
    return g.inverse()


def commutator(g: AffineIsometry, h: AffineIsometry) -> AffineIsometry:
    """g h g^-1 h^-1."""
    return g * h * g.inverse() * h.inverse()


def commutes(g: AffineIsometry, h: AffineIsometry) -> bool:
    return g * h == h * g


def is_isometry(g: AffineIsometry, Q: ScalarProduct) -> bool:
    """Exact check that the linear part preserves Q (translations always do)."""
    if g.dim != Q.dim:
        raise PreconditionError("isometry/form dimension mismatch")
    return g.linear.T * Q.gram * g.linear == Q.gram


# ---------------------------------------------------------------------------
# Wolf conditions


@dataclass(frozen=True)
class WolfReport:
    """Outcome of the six unipotent-isometry conditions for (I+A, v)."""

    square_zero: bool
    translation_orthogonal: bool
    image_isotropic: bool
    skew_adjoint: bool
    image_kernel_duality: bool
    kills_translation: bool

    @property
    def overall(self) -> bool:
        return (
            self.square_zero
            and self.translation_orthogonal
            and self.image_isotropic
            and self.skew_adjoint
            and self.image_kernel_duality
            and self.kills_translation
        )

    def as_json(self) -> dict:
        return {
            "square_zero": self.square_zero,
            "translation_orthogonal": self.translation_orthogonal,
            "image_isotropic": self.image_isotropic,
            "skew_adjoint": self.skew_adjoint,
            "image_kernel_duality": self.image_kernel_duality,
            "kills_translation": self.kills_translation,
            "overall": self.overall,
        }


def wolf_check_log(A: Mat, v, Q: ScalarProduct) -> WolfReport:
    """Run the six conditions on nilpotent-part data (A, v)."""
    if A.n != Q.dim or len(v) != Q.dim:
        raise PreconditionError("dimension mismatch")
    G = Q.gram
    QA = G * A
    square_zero = (A * A).is_zero()
    skew_adjoint = QA.T == -QA
    image_isotropic = (A.T * QA).is_zero()
    translation_orthogonal = is_zero_vec(A.T.apply(G.apply(v)))
    kills_translation = is_zero_vec(A.apply(v))
    _, image, kernel = rank_image_kernel(A)
    image_kernel_duality = image == orthogonal_complement(kernel, Q)
    return WolfReport(
        square_zero=square_zero,
        translation_orthogonal=translation_orthogonal,
        image_isotropic=image_isotropic,
        skew_adjoint=skew_adjoint,
        image_kernel_duality=image_kernel_duality,
        kills_translation=kills_translation,
    )


def wolf_check(g: AffineIsometry, Q: ScalarProduct) -> WolfReport:
    A = g.linear - Mat.identity(g.dim)
    return wolf_check_log(A, g.translation, Q)


# ---------------------------------------------------------------------------
# logs and exponentials


class AffineLog:
    """Element (X, x) of the affine algebra: nilpotent-part matrix + vector."""

    __slots__ = ("nilpart", "translation", "_hash")

    def __init__(self, nilpart: Mat, translation):
        if not nilpart.is_square():
            raise ValueError("nilpart must be square")
        translation = tuple(translation)
        if len(translation) != nilpart.n:
            raise ValueError("translation length mismatch")
        self.nilpart = nilpart
        self.translation = translation
        self._hash = None

    @classmethod
    def zero(cls, n: int) -> "AffineLog":
        return cls(Mat.zeros(n, n), vzero(n))

    @property
    def dim(self) -> int:
        return self.nilpart.n

    def scale(self, c) -> "AffineLog":
        return AffineLog(self.nilpart * c, tuple(c * x for x in self.translation))

    def __add__(self, other: "AffineLog") -> "AffineLog":
        return AffineLog(
            self.nilpart + other.nilpart, vadd(self.translation, other.translation)
        )

    def is_zero(self) -> bool:
        return self.nilpart.is_zero() and is_zero_vec(self.translation)

    def flatten(self) -> tuple:
        """Row-major matrix entries followed by the translation; spans live here."""
        return tuple(x for r in self.nilpart.rows for x in r) + self.translation

    @classmethod
    def unflatten(cls, n: int, flat) -> "AffineLog":
        flat = tuple(flat)
        if len(flat) != n * n + n:
            raise ValueError("flat length mismatch")
        rows = tuple(flat[i * n : (i + 1) * n] for i in range(n))
        return cls(Mat(rows, ncols=n), flat[n * n :])

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, AffineLog)
            and self.nilpart == other.nilpart
            and self.translation == other.translation
        )

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.nilpart, self.translation))
        return self._hash

    def __repr__(self) -> str:
        return f"AffineLog(dim={self.dim})"


def bracket(a: AffineLog, b: AffineLog) -> AffineLog:
    """[(X, x), (Y, y)] = (XY - YX, Xy - Yx)."""
    X, Y = a.nilpart, b.nilpart
    return AffineLog(
        X * Y - Y * X,
        tuple(p - q for p, q in zip(X.apply(b.translation), Y.apply(a.translation))),
    )


def _hom(linear: Mat, translation) -> Mat:
    n = linear.n
    rows = [linear.rows[i] + (translation[i],) for i in range(n)]
    rows.append(vzero(n) + (1,))
    return Mat(rows, ncols=n + 1)


def _nilpotent_powers(N: Mat) -> list:
    """[N, N^2, ..., N^d] up to the vanishing power; error if not nilpotent."""
    powers = []
    P = N
    for _ in range(N.n):
        if P.is_zero():
            return powers
        powers.append(P)
        P = P * N
    if not P.is_zero():
        raise PreconditionError("matrix is not nilpotent")
    return powers


def log_affine(g: AffineIsometry) -> AffineLog:
    """Exact logarithm of a unipotent affine map, via the terminating series."""
    n = g.dim
    N = _hom(g.linear, g.translation) - Mat.identity(n + 1)
    powers = _nilpotent_powers(N)
    L = Mat.zeros(n + 1, n + 1)
    for m, P in enumerate(powers, start=1):
        L = L + P * Fraction((-1) ** (m + 1), m)
    return AffineLog(L.submatrix(0, n, 0, n), L.col(n)[:n])


def exp_affine(l: AffineLog) -> AffineIsometry:
    """Exact exponential of a nilpotent affine-algebra element."""
    n = l.dim
    N = _hom_log(l)
    E = Mat.identity(n + 1)
    for m, P in enumerate(_nilpotent_powers(N), start=1):
        E = E + P * Fraction(1, factorial(m))
    return AffineIsometry(E.submatrix(0, n, 0, n), E.col(n)[:n])


def affine_power(g: AffineIsometry, a: int) -> AffineIsometry:
    """g^a for unipotent g and any integer a, through the log."""
    if a == 0:
        return AffineIsometry.identity(g.dim)
    return exp_affine(log_affine(g).scale(a))


def ad_conjugate(g: AffineIsometry, l: AffineLog) -> AffineLog:
    """Adjoint action of the affine map g on an algebra element."""
    H = _hom(g.linear, g.translation)
    M = H * _hom_log(l) * H.inverse()
    n = l.dim
    return AffineLog(M.submatrix(0, n, 0, n), M.col(n)[:n])


def _hom_log(l: AffineLog) -> Mat:
    n = l.dim
    rows = tuple(l.nilpart.rows[i] + (l.translation[i],) for i in range(n))
    return Mat(rows + (vzero(n + 1),), ncols=n + 1)


def fixed_points(g: AffineIsometry) -> Optional[tuple]:
    """The affine fixed-point set as (point, direction Subspace), or None."""
    A = g.linear - Mat.identity(g.dim)
    return solve_affine(A, tuple(-x for x in g.translation))
