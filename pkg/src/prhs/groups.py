"""Finitely generated unipotent isometry groups.

Word balls, nilpotency class, the three equivalent holonomy-abelianness
criteria, the invariant subspaces U_Gamma (span of holonomy images),
U_Delta (central images) and U_0 = U_Gamma ∩ U_Gamma^perp, block structure
of generator logs in a Witt frame, the crossover/duality pairing rules, a
freeness check by exponent-box or word-ball enumeration, the certified
dimension lower bound for non-abelian holonomy, and the two built-in
example groups (signatures (4,4) and (7,7)).

Operations that presuppose an open centralizer orbit (structure blocks and
the dimension bound) are gated: the group must either be certified by the
centralizer module or explicitly marked with ``assume_valid()``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .affine import (
    AffineIsometry,
    AffineLog,
    affine_power,
    bracket,
    commutator,
    commutes,
    exp_affine,
    fixed_points,
    is_isometry,
    log_affine,
    wolf_check,
)
from .errors import ConsistencyError, PreconditionError, StructuralError
from .forms import (
    ScalarProduct,
    WittFrame,
    orthogonal_complement,
    split_form,
    witt_frame,
)
from .linalg import Mat, Subspace, is_zero_vec, solve, solve_affine, vzero

__all__ = [
    "IsoGroup",
    "HeisenbergPresentation",
    "InvariantSpaces",
    "StructureBlocks",
    "CrossoverReport",
    "DimensionBoundReport",
    "CENTER_RULE",
    "EXAMPLE_NAMES",
    "nilpotency_class_at_most_two",
    "holonomy_abelian",
    "invariant_spaces",
    "chain_stabilization_check",
    "structure_blocks",
    "crossover_duality",
    "dimension_bound_decomposition",
    "is_free_on_space",
    "build_example",
]

# How central elements are collected: the radius-2 word ball plus all
# pairwise generator commutators, filtered by commutation against every
# generator.  Commutators must be added explicitly because they are
# length-4 words, outside the radius-2 ball.
CENTER_RULE = "ball2+generator-commutators"


class IsoGroup:
    """Group generated by finitely many affine isometries of a fixed form."""

    def __init__(self, Q: ScalarProduct, generators, presentation=None):
        generators = tuple(generators)
        if not generators:
            raise PreconditionError("at least one generator required")
        for idx, g in enumerate(generators):
            if not isinstance(g, AffineIsometry):
                raise PreconditionError(f"generator {idx} is not an affine map")
            if g.dim != Q.dim:
                raise PreconditionError(f"generator {idx} dimension mismatch")
            if not is_isometry(g, Q):
                raise PreconditionError(f"generator {idx} is not an isometry of Q")
        self.Q = Q
        self.generators = generators
        self.presentation = presentation
        # None | "assumed" | "certified-open-orbit"; see require_valid.
        self.validity: Optional[str] = None
        self._logs = None
        self._wolf = None
        self._balls = {0: (AffineIsometry.identity(Q.dim),)}
        self._frontiers = {0: (AffineIsometry.identity(Q.dim),)}

    @property
    def n(self) -> int:
        return self.Q.dim

    @property
    def logs(self) -> tuple:
        if self._logs is None:
            self._logs = tuple(log_affine(g) for g in self.generators)
        return self._logs

    def wolf_reports(self) -> tuple:
        if self._wolf is None:
            self._wolf = tuple(wolf_check(g, self.Q) for g in self.generators)
        return self._wolf

    def require_wolf(self) -> None:
        for idx, rep in enumerate(self.wolf_reports()):
            if not rep.overall:
                raise PreconditionError(
                    f"generator {idx} violates the unipotent-isometry conditions: "
                    f"{rep.as_json()}"
                )

    def assume_valid(self) -> None:
        if self.validity is None:
            self.validity = "assumed"

    def require_valid(self, op: str) -> None:
        if self.validity is None:
            raise PreconditionError(
                f"{op} presupposes an open centralizer orbit; certify it via the "
                "centralizer module or mark the group with assume_valid()"
            )

    def word_ball(self, radius: int) -> tuple:
        """All products of at most ``radius`` generators/inverses, cached."""
        if radius < 0:
            raise ValueError("radius must be nonnegative")
        have = max(self._balls)
        if radius <= have:
            if radius not in self._balls:
                raise AssertionError("ball cache holes; this is a bug")
            return self._balls[radius]
        moves = list(self.generators) + [g.inverse() for g in self.generators]
        elements = list(self._balls[have])
        seen = set(elements)
        frontier = list(self._frontiers[have])
        for r in range(have + 1, radius + 1):
            new = []
            for g in frontier:
                for mv in moves:
                    h = g * mv
                    if h not in seen:
                        seen.add(h)
                        new.append(h)
                        elements.append(h)
            self._balls[r] = tuple(elements)
            self._frontiers[r] = tuple(new)
            frontier = new
        return self._balls[radius]


# ---------------------------------------------------------------------------
# nilpotency and holonomy


def nilpotency_class_at_most_two(G: IsoGroup) -> bool:
    """True iff every generator commutator is central among the generators."""
    gens = G.generators
    for i in range(len(gens)):
        for j in range(i + 1, len(gens)):
            c = commutator(gens[i], gens[j])
            if not all(commutes(c, g) for g in gens):
                return False
    return True


def holonomy_abelian(G: IsoGroup) -> tuple:
    """Decide abelianness of the holonomy by three independent criteria.

    Returns (abelian, evidence).  The criteria (linear parts commute
    pairwise, all nilpotent products A_i A_j vanish, and the holonomy image
    span is totally isotropic) are provably equivalent for groups of
    unipotent isometries; their agreement is asserted and a disagreement
    raises ConsistencyError.
    """
    G.require_wolf()
    logs = G.logs
    m = len(logs)
    witness = None
    commute_ok = True
    products_ok = True
    for i in range(m):
        for j in range(m):
            Ai, Aj = logs[i].nilpart, logs[j].nilpart
            prod = Ai * Aj
            if not prod.is_zero():
                products_ok = False
                if witness is None:
                    witness = (i, j)
            if prod != Aj * Ai:
                commute_ok = False
    u_gamma = _holonomy_span(G)
    isotropic_ok = _totally_isotropic(u_gamma, G.Q)
    if not (commute_ok == products_ok == isotropic_ok):
        raise ConsistencyError(
            "holonomy criteria disagree: "
            f"commute={commute_ok} products={products_ok} isotropic={isotropic_ok}"
        )
    evidence = {
        "linear_parts_commute": commute_ok,
        "products_vanish": products_ok,
        "holonomy_span_isotropic": isotropic_ok,
        "witness_pair": witness,
    }
    return products_ok, evidence


def _holonomy_span(G: IsoGroup) -> Subspace:
    # Images of generator logs suffice: the log of any word is an integer
    # combination of generator logs and their pairwise products, whose
    # images already lie in the generator image sum.
    n = G.n
    out = Subspace.zero(n)
    for l in G.logs:
        out = out + Subspace(n, l.nilpart.cols())
    return out


def _totally_isotropic(U: Subspace, Q: ScalarProduct) -> bool:
    basis = U.basis
    return all(
        Q.pair(basis[i], basis[j]) == 0
        for i in range(len(basis))
        for j in range(i, len(basis))
    )


# ---------------------------------------------------------------------------
# invariant subspaces


@dataclass(frozen=True)
class InvariantSpaces:
    """U_Gamma ⊇ U_0 ⊇ U_Delta together with the central elements found."""

    u_gamma: Subspace
    u_delta: Subspace
    u_zero: Subspace
    center_elements: tuple
    center_rule: str = CENTER_RULE


def invariant_spaces(G: IsoGroup) -> InvariantSpaces:
    """Compute U_Gamma, U_Delta and U_0 = U_Gamma ∩ U_Gamma^perp exactly.

    Central elements are collected per CENTER_RULE.  The containments
    U_Delta ⊆ U_0 ⊆ U_Gamma and the orthogonality U_Delta ⊥ U_Gamma are
    theorems for the intended groups, so violations raise ConsistencyError
    (they signal an invalid input group, not a negative answer).
    """
    G.require_wolf()
    n = G.n
    u_gamma = _holonomy_span(G)
    candidates = list(G.word_ball(2))
    gens = G.generators
    for i in range(len(gens)):
        for j in range(i + 1, len(gens)):
            candidates.append(commutator(gens[i], gens[j]))
    central = []
    seen = set()
    for d in candidates:
        if d.is_identity() or d in seen:
            continue
        seen.add(d)
        if all(commutes(d, g) for g in gens):
            central.append(d)
    u_delta = Subspace.zero(n)
    for d in central:
        u_delta = u_delta + Subspace(n, log_affine(d).nilpart.cols())
    u_zero = u_gamma.intersect(orthogonal_complement(u_gamma, G.Q))
    if not (u_zero.contains(u_delta) and u_gamma.contains(u_zero)):
        raise ConsistencyError("invariant subspace containments fail")
    for a in u_delta.basis:
        for b in u_gamma.basis:
            if G.Q.pair(a, b) != 0:
                raise ConsistencyError("central images are not orthogonal to U_Gamma")
    if not _totally_isotropic(u_zero, G.Q):
        raise ConsistencyError("U_0 is not totally isotropic")
    return InvariantSpaces(
        u_gamma=u_gamma,
        u_delta=u_delta,
        u_zero=u_zero,
        center_elements=tuple(central),
    )


def chain_stabilization_check(G: IsoGroup) -> bool:
    """Each generator log maps R^n -> U_Delta^perp -> U_0 -> 0 along the chain."""
    spaces = invariant_spaces(G)
    u_delta_perp = orthogonal_complement(spaces.u_delta, G.Q)
    for l in G.logs:
        A = l.nilpart
        if not u_delta_perp.contains(Subspace(G.n, A.cols())):
            return False
        if not all(
            spaces.u_zero.contains_vector(A.apply(b)) for b in u_delta_perp.basis
        ):
            return False
        if not all(is_zero_vec(A.apply(b)) for b in spaces.u_zero.basis):
            return False
    return True


# ---------------------------------------------------------------------------
# block structure in a Witt frame


@dataclass(frozen=True)
class StructureBlocks:
    """Per-generator (B, C) blocks of the logs in a common Witt frame."""

    frame: WittFrame
    blocks: tuple  # tuple of (B, C) pairs, one per generator


def _extract_blocks(M: Mat, frame: WittFrame, label: str) -> tuple:
    k, w, n = frame.k, frame.core_dim, frame.n
    zero_regions = (
        ("leading k x k corner", M.submatrix(0, k, 0, k)),
        ("core-to-isotropic block", M.submatrix(k, k + w, 0, k)),
        ("core-to-core block", M.submatrix(k, k + w, k, k + w)),
        ("bottom row band", M.submatrix(k + w, n, 0, n)),
    )
    for name, block in zero_regions:
        if not block.is_zero():
            raise StructuralError(f"{label}: {name} is not zero")
    B = M.submatrix(k, k + w, k + w, n)
    C = M.submatrix(0, k, k + w, n)
    if not C.is_skew():
        raise StructuralError(f"{label}: corner block is not skew-symmetric")
    if M.submatrix(0, k, k, k + w) != -(B.T * frame.gram_w):
        raise StructuralError(f"{label}: upper middle block is not -B^t G_W")
    if not (B.T * frame.gram_w * B).is_zero():
        raise StructuralError(f"{label}: B columns are not isotropic and orthogonal")
    return B, C


def structure_blocks(G: IsoGroup, frame: Optional[WittFrame] = None) -> StructureBlocks:
    """Express every generator log in a Witt frame of U_0 and split off (B, C).

    Gated on group validity: the block shape is a theorem only under the
    open-centralizer-orbit hypothesis.
    """
    G.require_valid("structure_blocks")
    G.require_wolf()
    if frame is None:
        spaces = invariant_spaces(G)
        frame = witt_frame(spaces.u_zero, G.Q)
    blocks = []
    for idx, l in enumerate(G.logs):
        M = frame.to_frame_matrix(l.nilpart)
        blocks.append(_extract_blocks(M, frame, f"generator {idx}"))
    return StructureBlocks(frame=frame, blocks=tuple(blocks))


# ---------------------------------------------------------------------------
# crossover and duality rules


@dataclass(frozen=True)
class CrossoverReport:
    """Pairing data of two logs' B-blocks under the core form."""

    pairing: Mat
    antisymmetric: bool
    products_vanish: bool
    duality_consistent: bool
    witness_indices: Optional[tuple]
    witness_columns: Optional[tuple]
    witness_independent: Optional[bool]


def crossover_duality(l1: AffineLog, l2: AffineLog, frame: WittFrame) -> CrossoverReport:
    """Evaluate the pairing matrix P[i][j] = <b_1^i, b_2^j> and both rules.

    Crossover: P is skew (so diagonal pairings vanish), and a nonzero entry
    P[i][k] forces the four columns b_1^k, b_1^i, b_2^k, b_2^i to be linearly
    independent; the first nonzero entry is reported with that witness.
    Duality: the product A_1 A_2 vanishes exactly when P does.
    """
    B1, _ = _extract_blocks(frame.to_frame_matrix(l1.nilpart), frame, "first log")
    B2, _ = _extract_blocks(frame.to_frame_matrix(l2.nilpart), frame, "second log")
    P = B1.T * frame.gram_w * B2
    antisymmetric = P.is_skew()
    products_vanish = (l1.nilpart * l2.nilpart).is_zero()
    duality_consistent = P.is_zero() == products_vanish
    witness_indices = None
    witness_columns = None
    witness_independent = None
    if not P.is_zero():
        for i in range(P.m):
            for k in range(P.n):
                if P[i, k] != 0:
                    witness_indices = (i, k)
                    break
            if witness_indices:
                break
        i, k = witness_indices
        witness_columns = (B1.col(k), B1.col(i), B2.col(k), B2.col(i))
        witness_independent = (
            Subspace(frame.core_dim, witness_columns).dim == 4
        )
    return CrossoverReport(
        pairing=P,
        antisymmetric=antisymmetric,
        products_vanish=products_vanish,
        duality_consistent=duality_consistent,
        witness_indices=witness_indices,
        witness_columns=witness_columns,
        witness_independent=witness_independent,
    )


# ---------------------------------------------------------------------------
# dimension bound


@dataclass(frozen=True)
class DimensionBoundReport:
    """Decomposition data certifying n >= 8 for non-abelian holonomy."""

    n: int
    dim_u_zero: int
    core_dim: int
    witness_pair: tuple
    certified_lower_bound: int
    tight: bool

    @property
    def verdict(self) -> str:
        note = " (tight)" if self.tight else ""
        return (
            f"n = 2*{self.dim_u_zero} + {self.core_dim} = {self.n} >= "
            f"{self.certified_lower_bound}{note}"
        )


def dimension_bound_decomposition(G: IsoGroup) -> DimensionBoundReport:
    """Certify dim U_0 >= 2 and core dim >= 4 for a non-abelian-holonomy group."""
    G.require_valid("dimension_bound_decomposition")
    abelian, _ = holonomy_abelian(G)
    if abelian:
        raise PreconditionError("dimension bound needs non-abelian holonomy")
    sb = structure_blocks(G)
    frame = sb.frame
    logs = G.logs
    chosen = None
    for i in range(len(logs)):
        for j in range(i + 1, len(logs)):
            rep = crossover_duality(logs[i], logs[j], frame)
            if not rep.pairing.is_zero():
                chosen = (i, j, rep)
                break
        if chosen:
            break
    if chosen is None:
        raise ConsistencyError("non-abelian holonomy without a non-paired generator pair")
    i, j, rep = chosen
    if not (rep.antisymmetric and rep.duality_consistent and rep.witness_independent):
        raise ConsistencyError("pairing rules failed on a non-commuting pair")
    if frame.core_dim < 4 or frame.k < 2:
        raise ConsistencyError("decomposition contradicts the certified bound")
    return DimensionBoundReport(
        n=G.n,
        dim_u_zero=frame.k,
        core_dim=frame.core_dim,
        witness_pair=(i, j),
        certified_lower_bound=8,
        tight=(G.n == 8),
    )


# ---------------------------------------------------------------------------
# freeness


def is_free_on_space(
    G: IsoGroup, exponent_box: int = 5, word_radius: Optional[int] = None
) -> tuple:
    """Exhaustively check fixed-point freeness on a finite chunk of the group.

    With a two-generator presentation attached, enumerates normal forms
    g1^a g2^b g3^c over the exponent box |a|,|b|,|c| <= exponent_box through
    their logs: exp(X, x) fixes p iff X p = -x, so one small linear solve
    decides each element.  Without a presentation, walks the word ball of
    the given radius.  Returns (free, witness) where witness is (element,
    fixed point) for the first violation found.
    """
    if G.presentation is not None and word_radius is None:
        pres = G.presentation
        b = exponent_box
        for a in range(-b, b + 1):
            for bb in range(-b, b + 1):
                for c in range(-b, b + 1):
                    if a == 0 and bb == 0 and c == 0:
                        continue
                    l = pres.element_log(a, bb, c)
                    sol = solve_affine(l.nilpart, tuple(-x for x in l.translation))
                    if sol is not None:
                        return False, (pres.normal_form(a, bb, c), sol[0])
        return True, None
    radius = word_radius if word_radius is not None else 3
    for g in G.word_ball(radius):
        if g.is_identity():
            continue
        fp = fixed_points(g)
        if fp is not None:
            return False, (g, fp[0])
    return True, None


# ---------------------------------------------------------------------------
# discrete Heisenberg presentations


class HeisenbergPresentation:
    """Two generators whose commutator is central: normal forms and coordinates.

    Every element is g1^a g2^b g3^c with g3 = [g1, g2] and a unique integer
    exponent triple; the log of that element is a L1 + b L2 + (ab/2 + c) L3.
    """

    __slots__ = ("g1", "g2", "g3", "l1", "l2", "l3")

    def __init__(self, g1: AffineIsometry, g2: AffineIsometry):
        g3 = commutator(g1, g2)
        if g3.is_identity():
            raise PreconditionError("generators commute; no Heisenberg structure")
        if not (commutes(g3, g1) and commutes(g3, g2)):
            raise PreconditionError("commutator is not central")
        self.g1, self.g2, self.g3 = g1, g2, g3
        self.l1 = log_affine(g1)
        self.l2 = log_affine(g2)
        self.l3 = log_affine(g3)
        if bracket(self.l1, self.l2) != self.l3:
            raise ConsistencyError("log bracket does not match the commutator log")
        if not (bracket(self.l1, self.l3).is_zero() and bracket(self.l2, self.l3).is_zero()):
            raise ConsistencyError("commutator log is not central in the log span")

    def element_log(self, a: int, b: int, c: int) -> AffineLog:
        lam = Fraction(a * b, 2) + c
        return self.l1.scale(a) + self.l2.scale(b) + self.l3.scale(lam)

    def normal_form(self, a: int, b: int, c: int) -> AffineIsometry:
        return (
            affine_power(self.g1, a)
            * affine_power(self.g2, b)
            * affine_power(self.g3, c)
        )

    def coordinates(self, g: AffineIsometry) -> Optional[tuple]:
        """Exponents (a, b, c) with g = g1^a g2^b g3^c, or None."""
        try:
            l = log_affine(g)
        except PreconditionError:
            return None
        cols = (self.l1.flatten(), self.l2.flatten(), self.l3.flatten())
        rows = [list(r) for r in zip(*cols)]
        sol = solve(rows, l.flatten(), 3)
        if sol is None:
            return None
        alpha, beta, lam = sol
        c = lam - Fraction(alpha * beta, 2)
        # exp(a l1 + b l2 + t l3) with fractional exponents is a perfectly
        # good isometry but not a lattice element; reject it here
        if any(Fraction(x).denominator != 1 for x in (alpha, beta, c)):
            return None
        if self.element_log(alpha, beta, c) != l:
            return None
        return (int(alpha), int(beta), int(c))


# ---------------------------------------------------------------------------
# built-in examples

EXAMPLE_NAMES = ("gamma44", "gamma77")

_I_TILDE = Mat.diag([1, 1, -1, -1])


def _example44() -> tuple:
    B1 = Mat([[-1, 0], [0, -1], [0, -1], [-1, 0]])
    w1 = (1, 0, 0, 1)
    B2 = Mat([[0, -1], [1, 0], [-1, 0], [0, 1]])
    w2 = (0, -1, 1, 0)
    Q = split_form(2, _I_TILDE)
    gens = []
    for B, w in ((B1, w1), (B2, w2)):
        lin = Mat.block(
            [
                [Mat.identity(2), -(B.T * _I_TILDE), Mat.zeros(2, 2)],
                [Mat.zeros(4, 2), Mat.identity(4), B],
                [Mat.zeros(2, 2), Mat.zeros(2, 4), Mat.identity(2)],
            ]
        )
        gens.append(AffineIsometry(lin, (0, 0) + w + (0, 0)))
    return Q, gens


def _example77() -> tuple:
    B1 = Mat([[-1, 0, 0, 0, 0], [0, -1, 0, 0, 0], [0, -1, 0, 0, 0], [-1, 0, 0, 0, 0]])
    C1 = Mat(
        [
            [0, 0, 0, 0, 0],
            [0, 0, 0, 0, 0],
            [0, 0, 0, 0, -1],
            [0, 0, 0, 0, 0],
            [0, 0, 1, 0, 0],
        ]
    )
    u1 = (0, 0, 0, -1, 0)
    B2 = Mat([[0, -1, 0, 0, 0], [1, 0, 0, 0, 0], [-1, 0, 0, 0, 0], [0, 1, 0, 0, 0]])
    C2 = Mat(
        [
            [0, 0, 0, 0, 0],
            [0, 0, 0, 0, 0],
            [0, 0, 0, 0, 0],
            [0, 0, 0, 0, -1],
            [0, 0, 0, 1, 0],
        ]
    )
    u2 = (0, 0, 1, 0, 0)
    Q = split_form(5, _I_TILDE)
    gens = []
    for B, C, u in ((B1, C1, u1), (B2, C2, u2)):
        lin = Mat.block(
            [
                [Mat.identity(5), -(B.T * _I_TILDE), C],
                [Mat.zeros(4, 5), Mat.identity(4), B],
                [Mat.zeros(5, 5), Mat.zeros(5, 4), Mat.identity(5)],
            ]
        )
        gens.append(AffineIsometry(lin, (0,) * 9 + u))
    return Q, gens


def build_example(name: str) -> tuple:
    """Construct a built-in group: returns (IsoGroup, HeisenbergPresentation)."""
    if name == "gamma44":
        Q, gens = _example44()
    elif name == "gamma77":
        Q, gens = _example77()
    else:
        raise KeyError(f"unknown example {name!r}; choose from {EXAMPLE_NAMES}")
    pres = HeisenbergPresentation(gens[0], gens[1])
    return IsoGroup(Q, gens, presentation=pres), pres
