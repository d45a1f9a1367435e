"""Exact JSON serialization for matrices, groups, forms, and reports.

Scalars serialize as bare integers or rational strings "p/q"; matrices
and vectors as nested arrays; subspaces as lists of basis vectors.
Parsing validates shape and exactness and reports the JSON path of the
first offending entry.  Serialization is deterministic: sorted keys,
two-space indent, trailing newline, so identical inputs give identical
bytes.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .affine import AffineIsometry, AffineLog
from .errors import PreconditionError
from .flatlie import MetricLieAlgebra, ThreeForm
from .forms import ScalarProduct
from .groups import HeisenbergPresentation, IsoGroup
from .linalg import Mat, Subspace

__all__ = [
    "dumps",
    "scalar_to_json",
    "scalar_from_json",
    "vector_to_json",
    "vector_from_json",
    "matrix_to_json",
    "matrix_from_json",
    "subspace_to_json",
    "affine_to_json",
    "affine_from_json",
    "log_to_json",
    "log_from_json",
    "group_to_json",
    "group_from_json",
    "threeform_to_json",
    "threeform_from_json",
    "algebra_to_json",
]


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def scalar_to_json(x):
    if isinstance(x, int):
        return x
    return f"{x.numerator}/{x.denominator}"


def scalar_from_json(v, path: str = "value"):
    if isinstance(v, bool):
        raise PreconditionError(f"{path}: booleans are not scalars")
    if isinstance(v, int):
        return v
    if isinstance(v, str):
        try:
            f = Fraction(v)
        except (ValueError, ZeroDivisionError):
            raise PreconditionError(f"{path}: cannot parse rational {v!r}")
        return int(f) if f.denominator == 1 else f
    if isinstance(v, float):
        raise PreconditionError(f"{path}: floats are inexact, use \"p/q\" strings")
    raise PreconditionError(f"{path}: expected integer or rational string")


def vector_to_json(v):
    return [scalar_to_json(x) for x in v]


def vector_from_json(v, path: str = "vector"):
    if not isinstance(v, list):
        raise PreconditionError(f"{path}: expected an array")
    return tuple(scalar_from_json(x, f"{path}[{i}]") for i, x in enumerate(v))


def matrix_to_json(M: Mat):
    return [vector_to_json(row) for row in M.rows]


def matrix_from_json(v, path: str = "matrix") -> Mat:
    if not isinstance(v, list) or not v:
        raise PreconditionError(f"{path}: expected a non-empty array of rows")
    rows = [vector_from_json(row, f"{path}[{i}]") for i, row in enumerate(v)]
    if len({len(r) for r in rows}) != 1:
        raise PreconditionError(f"{path}: ragged rows")
    return Mat(rows)


def subspace_to_json(U: Subspace):
    return [vector_to_json(b) for b in U.basis]


def affine_to_json(g: AffineIsometry):
    return {
        "linear": matrix_to_json(g.linear),
        "translation": vector_to_json(g.translation),
    }


def affine_from_json(v, path: str = "generator") -> AffineIsometry:
    if not isinstance(v, dict):
        raise PreconditionError(f"{path}: expected an object")
    if "linear" not in v or "translation" not in v:
        raise PreconditionError(f"{path}: needs 'linear' and 'translation'")
    linear = matrix_from_json(v["linear"], f"{path}.linear")
    translation = vector_from_json(v["translation"], f"{path}.translation")
    return AffineIsometry(linear, translation)


def log_to_json(l: AffineLog):
    return {
        "nilpart": matrix_to_json(l.nilpart),
        "translation": vector_to_json(l.translation),
    }


def log_from_json(v, path: str = "log") -> AffineLog:
    if not isinstance(v, dict) or "nilpart" not in v or "translation" not in v:
        raise PreconditionError(f"{path}: needs 'nilpart' and 'translation'")
    return AffineLog(
        matrix_from_json(v["nilpart"], f"{path}.nilpart"),
        vector_from_json(v["translation"], f"{path}.translation"),
    )


def group_to_json(G: IsoGroup, presentation=None):
    out = {
        "gram": matrix_to_json(G.Q.gram),
        "generators": [affine_to_json(g) for g in G.generators],
    }
    if presentation is not None:
        out["presentation"] = {"type": "heisenberg"}
    return out


def group_from_json(v, path: str = "group"):
    """Build (IsoGroup, presentation-or-None) from the group JSON schema."""
    if not isinstance(v, dict):
        raise PreconditionError(f"{path}: expected an object")
    if "gram" not in v or "generators" not in v:
        raise PreconditionError(f"{path}: needs 'gram' and 'generators'")
    gram = matrix_from_json(v["gram"], f"{path}.gram")
    Q = ScalarProduct(gram)
    gens_json = v["generators"]
    if not isinstance(gens_json, list) or not gens_json:
        raise PreconditionError(f"{path}.generators: expected a non-empty array")
    gens = [
        affine_from_json(g, f"{path}.generators[{i}]") for i, g in enumerate(gens_json)
    ]
    G = IsoGroup(Q, gens)
    pres = None
    spec = v.get("presentation")
    if spec is not None:
        if not isinstance(spec, dict) or spec.get("type") != "heisenberg":
            raise PreconditionError(f"{path}.presentation: unknown presentation type")
        if len(gens) < 2:
            raise PreconditionError(f"{path}.presentation: heisenberg needs two generators")
        pres = HeisenbergPresentation(gens[0], gens[1])
    return G, pres


def threeform_to_json(F: ThreeForm):
    return {
        "m": F.m,
        "values": [
            {"ijk": [i, j, k], "value": scalar_to_json(val)}
            for i, j, k, val in F.triples()
        ],
    }


_SIGN3 = {
    (0, 1, 2): 1,
    (1, 2, 0): 1,
    (2, 0, 1): 1,
    (0, 2, 1): -1,
    (1, 0, 2): -1,
    (2, 1, 0): -1,
}


def threeform_from_json(v, path: str = "form") -> ThreeForm:
    """Parse a 3-form table, normalizing arbitrary index orders by sign.

    Repeated indices with a nonzero value, or two entries for the same
    triple that disagree under the alternating sign rule, are rejected:
    such a table is not alternating.
    """
    if not isinstance(v, dict) or "m" not in v:
        raise PreconditionError(f"{path}: needs 'm' and 'values'")
    m = v["m"]
    if not isinstance(m, int) or isinstance(m, bool) or m < 0:
        raise PreconditionError(f"{path}.m: expected a non-negative integer")
    table = {}
    for idx, ent in enumerate(v.get("values", [])):
        where = f"{path}.values[{idx}]"
        if not isinstance(ent, dict) or "ijk" not in ent or "value" not in ent:
            raise PreconditionError(f"{where}: needs 'ijk' and 'value'")
        ijk = ent["ijk"]
        if (
            not isinstance(ijk, list)
            or len(ijk) != 3
            or any(not isinstance(t, int) or isinstance(t, bool) for t in ijk)
        ):
            raise PreconditionError(f"{where}.ijk: expected three integer indices")
        if any(t < 0 or t >= m for t in ijk):
            raise PreconditionError(f"{where}.ijk: index out of range for m={m}")
        val = scalar_from_json(ent["value"], f"{where}.value")
        i, j, k = ijk
        if len({i, j, k}) < 3:
            if val != 0:
                raise PreconditionError(
                    f"{where}: repeated index with nonzero value is not alternating"
                )
            continue
        order = sorted(ijk)
        sign = _SIGN3[(order.index(i), order.index(j), order.index(k))]
        key = tuple(order)
        normalized = sign * val
        if key in table and table[key] != normalized:
            raise PreconditionError(
                f"{where}: conflicting values for triple {key} are not alternating"
            )
        table[key] = normalized
    return ThreeForm(m, table)


def algebra_to_json(g: MetricLieAlgebra):
    return {
        "dim": g.dim,
        "structure": [
            [vector_to_json(vec) for vec in row] for row in g.structure
        ],
        "gram": matrix_to_json(g.gram),
    }
