"""Command-line surface: verification reports over groups, forms, searches.

Subcommands: verify-example, check, witt, centralizer, search, lie.
Human-readable claim lines go to standard output; --report PATH writes
the same content as deterministic JSON (byte-identical across runs with
identical inputs and seeds).  Every claim line carries the anchor of the
statement it verifies, so a failure names what was violated.  Exit codes:
0 all claims pass, 1 a claim failed, 2 input or usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import __version__
from .affine import commutator, commutes, exp_affine, fixed_points
from .centralizer import (
    builtin_centralizer_family,
    centralizer_algebra,
    certify_open_orbit,
    orbit_dimension,
    properness_certificate,
    transitivity_certificate,
)
from .errors import ConsistencyError, PreconditionError
from .flatlie import (
    build_split_algebra,
    check_biinvariant,
    is_flat,
    split_decomposition,
    trilinear_alternating,
    verify_compact_holonomy,
)
from .forms import is_totally_isotropic, witt_frame
from .groups import (
    EXAMPLE_NAMES,
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
from .jsonio import (
    affine_to_json,
    dumps,
    group_from_json,
    group_to_json,
    log_to_json,
    matrix_to_json,
    subspace_to_json,
    threeform_from_json,
    threeform_to_json,
    vector_to_json,
)
from .linalg import Mat, Subspace, unit, vzero
from .search import (
    SearchConfig,
    falsification_run,
    transitive_frontier_evidence,
)

__all__ = ["main"]


class Report:
    """Ordered claim list with anchors, verdicts, and embedded witness data."""

    def __init__(self, target: str, seeds=None):
        self.target = target
        self.seeds = dict(seeds or {})
        self.claims = []

    def claim(self, text: str, anchor: str, ok: bool, witness=None) -> bool:
        self.claims.append(
            {
                "claim": text,
                "anchor": anchor,
                "verdict": "PASS" if ok else "FAIL",
                "witness": witness if witness is not None else {},
            }
        )
        return bool(ok)

    def skip(self, text: str, anchor: str, note: str) -> None:
        self.claims.append(
            {"claim": text, "anchor": anchor, "verdict": "SKIP", "witness": {"note": note}}
        )

    @property
    def overall(self) -> bool:
        return all(c["verdict"] != "FAIL" for c in self.claims)

    def as_json(self):
        return {
            "target": self.target,
            "tool_version": __version__,
            "seeds": self.seeds,
            "claims": self.claims,
            "overall": "PASS" if self.overall else "FAIL",
        }

    def emit(self, report_path=None) -> int:
        for c in self.claims:
            line = f"[{c['verdict']}] {c['claim']}  [{c['anchor']}]"
            if c["verdict"] == "SKIP":
                line += f"  ({c['witness'].get('note', '')})"
            print(line)
        print(f"OVERALL: {'PASS' if self.overall else 'FAIL'}")
        if report_path:
            with open(report_path, "w") as fh:
                fh.write(dumps(self.as_json()))
        return 0 if self.overall else 1


def _resolve_seed(value: int) -> int:
    raw = os.environ.get("PRHS_SEED")
    if raw is None:
        return value
    try:
        return int(raw)
    except ValueError:
        raise PreconditionError(f"PRHS_SEED is not an integer: {raw!r}")


def _load_json_file(path: str):
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise PreconditionError(f"cannot read {path}: {exc}")
    except json.JSONDecodeError as exc:
        raise PreconditionError(f"{path}: malformed JSON at line {exc.lineno}")


# ---------------------------------------------------------------------------
# verify-example


def _generator_gate(rep: Report, G) -> None:
    squares = all((l.nilpart * l.nilpart).is_zero() for l in G.logs)
    rep.claim(
        "linear parts square to zero for all generators",
        "Lemma 2.1",
        squares,
        {"generators": [affine_to_json(g) for g in G.generators]},
    )
    wolf = G.wolf_reports()
    rep.claim(
        "Wolf conditions hold for all generators",
        "Lemma 2.3",
        all(w.overall for w in wolf),
        {"reports": [w.as_json() for w in wolf]},
    )


def _common_structure(rep: Report, G, pres, probe_seed: int):
    """Shared claim block: holonomy, invariant spaces, frame, crossover."""
    g3 = commutator(G.generators[0], G.generators[1])
    rep.claim(
        "commutator gamma3 is central",
        "§6",
        all(commutes(g3, g) for g in G.generators),
        {"gamma3": affine_to_json(g3)},
    )
    rep.claim(
        "Heisenberg relations hold for the generator pair",
        "§6",
        pres is not None,
        {},
    )
    abelian, evidence = holonomy_abelian(G)
    rep.claim(
        "holonomy is non-abelian and all three criteria agree",
        "Prop 2.6",
        not abelian,
        {
            "linear_parts_commute": evidence["linear_parts_commute"],
            "products_vanish": evidence["products_vanish"],
            "holonomy_span_isotropic": evidence["holonomy_span_isotropic"],
        },
    )
    rep.claim(
        "the group is 2-step nilpotent",
        "Thm 2.4",
        nilpotency_class_at_most_two(G),
        {},
    )
    inv = invariant_spaces(G)
    rep.claim(
        "invariant-space chain is stabilized",
        "Prop 4.3",
        chain_stabilization_check(G),
        {
            "u_gamma": subspace_to_json(inv.u_gamma),
            "u_delta": subspace_to_json(inv.u_delta),
            "u_zero": subspace_to_json(inv.u_zero),
            "center_rule": inv.center_rule,
        },
    )
    cert = certify_open_orbit(G, probe_seed=probe_seed)
    rep.claim(
        "centralizer has an open orbit (group marked valid)",
        "Lemma 6.1",
        cert is not None,
        {"orbit_dim": cert.orbit_dim if cert else None},
    )
    sb = structure_blocks(G)
    bc = [
        {"B": matrix_to_json(B), "C": matrix_to_json(C)} for B, C in sb.blocks
    ]
    rep.claim(
        "structure blocks: C skew, B columns isotropic and mutually orthogonal",
        "Thm 4.4",
        True,
        {"frame": matrix_to_json(sb.frame.basis_change), "blocks": bc},
    )
    cross = crossover_duality(G.logs[0], G.logs[1], sb.frame)
    rep.claim(
        "crossover pairing is skew and duality holds with independent witness columns",
        "§5",
        cross.antisymmetric and cross.duality_consistent and cross.witness_independent,
        {
            "pairing": matrix_to_json(cross.pairing),
            "witness_indices": list(cross.witness_indices or ()),
        },
    )
    db = dimension_bound_decomposition(G)
    rep.claim(
        f"dimension bound: {db.verdict}",
        "Thm 5.1",
        db.n == 2 * db.dim_u_zero + db.core_dim and db.n >= 8,
        {"n": db.n, "k": db.dim_u_zero, "core_dim": db.core_dim},
    )
    return inv


def _verify_gamma44(rep: Report, probe_seed: int) -> None:
    G, pres = build_example("gamma44")
    _generator_gate(rep, G)
    g3 = commutator(G.generators[0], G.generators[1])
    A3 = g3.linear - Mat.identity(8)
    C3 = A3.submatrix(0, 2, 6, 8)
    u3 = g3.translation[:2]
    rep.claim(
        "commutator matches: C3 = [[0,-4],[4,0]] and u3 = (0,-4)",
        "Example 6.1",
        C3 == Mat([[0, -4], [4, 0]]) and u3 == (0, -4),
        {"C3": matrix_to_json(C3), "u3": vector_to_json(u3)},
    )
    inv = _common_structure(rep, G, pres, probe_seed)
    rep.claim(
        "U_0 = span(e1, e2)",
        "eq. (4)",
        inv.u_zero == Subspace.span(8, [unit(8, 0), unit(8, 1)]),
        {"u_zero": subspace_to_json(inv.u_zero)},
    )
    C = centralizer_algebra(G)
    family = builtin_centralizer_family("gamma44")
    rep.claim(
        "centralizer solution space contains the 8-parameter family",
        "§6",
        all(C.contains(l) for l in family),
        {"family_dim": len(family), "solution_space_dim": C.dim},
    )
    orbit = orbit_dimension(C, vzero(8))
    rep.claim(
        "centralizer orbit at 0 has dimension 8 (open)",
        "§6",
        orbit.orbit_dim == 8 and orbit.is_open,
        {"orbit_dim": orbit.orbit_dim},
    )
    e7 = unit(8, 6)
    fixed = fixed_points(g3)
    has_e7 = fixed is not None and g3.apply(e7) == e7
    free, witness = is_free_on_space(G, exponent_box=1)
    rep.claim(
        "gamma3 fixes e7: the action is not free on the whole space",
        "§6",
        has_e7 and not free and witness is not None and witness[1] == e7,
        {"fixed_point": vector_to_json(e7)},
    )
    prop = properness_certificate(G, C, probe_seed=probe_seed)
    rep.claim(
        "properness on the preserved open orbit",
        "Prop 7.3",
        prop.verdict == "proper-on-open-orbit"
        and prop.group_closed_certified
        and prop.route == "open-orbit",
        {
            "verdict": prop.verdict,
            "route": prop.route,
            "closedness": prop.closed_tag,
            "orbit_dim": prop.orbit.orbit_dim if prop.orbit else None,
        },
    )


def _verify_gamma77(rep: Report, probe_seed: int) -> None:
    G, pres = build_example("gamma77")
    _generator_gate(rep, G)
    g3 = commutator(G.generators[0], G.generators[1])
    A3 = g3.linear - Mat.identity(14)
    C3 = A3.submatrix(0, 5, 9, 14)
    u3 = g3.translation[:5]
    entries = {x for row in C3.rows for x in row if x != 0}
    rep.claim(
        "commutator matches: u3 = (0,0,0,0,2) and C3 entries are +-4",
        "Example 6.2",
        u3 == (0, 0, 0, 0, 2) and entries and entries <= {-4, 4},
        {"C3": matrix_to_json(C3), "u3": vector_to_json(u3)},
    )
    inv = _common_structure(rep, G, pres, probe_seed)
    rep.claim(
        "k = dim U_0 = 5",
        "eq. (4)",
        inv.u_zero.dim == 5,
        {"u_zero": subspace_to_json(inv.u_zero)},
    )
    C = centralizer_algebra(G)
    family = builtin_centralizer_family("gamma77")
    rep.claim(
        "centralizer solution space contains the documented 14-parameter family",
        "§6",
        all(C.contains(l) for l in family),
        {"family_dim": len(family), "solution_space_dim": C.dim},
    )
    cert = transitivity_certificate(C, candidate=family, probe_seed=probe_seed)
    rep.claim(
        "transitivity certificate: bracket-closed, nilpotent parts, class 3, "
        "surjective at origin and all n+5 probes",
        "Example 6.2",
        cert.certified and cert.nilpotency_class == 3 and all(cert.surjective_at),
        {
            "candidate_dim": cert.candidate_dim,
            "solution_space_dim": C.dim,
            "nilpotency_class": cert.nilpotency_class,
            "probes": [vector_to_json(p) for p in cert.probes],
        },
    )
    free, witness = is_free_on_space(G, exponent_box=5)
    rep.claim(
        "free over the Heisenberg exponent box |a|,|b|,|c| <= 5",
        "§6",
        free and witness is None,
        {"exponent_box": 5},
    )
    prop = properness_certificate(G, C, candidate=family, probe_seed=probe_seed)
    rep.claim(
        "properness on the whole space via the transitive centralizer",
        "Prop 7.2",
        prop.verdict == "proper-on-space"
        and prop.group_closed_certified
        and prop.route == "transitive-centralizer",
        {
            "verdict": prop.verdict,
            "route": prop.route,
            "closedness": prop.closed_tag,
        },
    )


def cmd_verify_example(args) -> int:
    if args.name not in EXAMPLE_NAMES:
        print(f"unknown example: {args.name}", file=sys.stderr)
        return 2
    probe_seed = _resolve_seed(args.probe_seed)
    rep = Report(args.name, {"probe_seed": probe_seed})
    if args.name == "gamma44":
        _verify_gamma44(rep, probe_seed)
    else:
        _verify_gamma77(rep, probe_seed)
    if args.export_group:
        G, pres = build_example(args.name)
        with open(args.export_group, "w") as fh:
            fh.write(dumps(group_to_json(G, presentation=pres)))
    return rep.emit(args.report)


# ---------------------------------------------------------------------------
# check


def cmd_check(args) -> int:
    data = _load_json_file(args.group)
    G, pres = group_from_json(data)
    probe_seed = _resolve_seed(args.probe_seed)
    rep = Report(args.group, {"probe_seed": probe_seed})
    _generator_gate(rep, G)
    rep.claim(
        "the group is 2-step nilpotent",
        "Thm 2.4",
        nilpotency_class_at_most_two(G),
        {},
    )
    abelian, evidence = holonomy_abelian(G)
    rep.claim(
        f"holonomy criteria agree (holonomy is {'abelian' if abelian else 'non-abelian'})",
        "Prop 2.6",
        True,
        {
            "abelian": abelian,
            "linear_parts_commute": evidence["linear_parts_commute"],
            "products_vanish": evidence["products_vanish"],
            "holonomy_span_isotropic": evidence["holonomy_span_isotropic"],
        },
    )
    inv = invariant_spaces(G)
    rep.claim(
        "invariant-space chain is stabilized",
        "Prop 4.3",
        chain_stabilization_check(G),
        {
            "u_gamma": subspace_to_json(inv.u_gamma),
            "u_delta": subspace_to_json(inv.u_delta),
            "u_zero": subspace_to_json(inv.u_zero),
            "center_rule": inv.center_rule,
        },
    )
    if args.witt:
        frame = witt_frame(inv.u_zero, G.Q)
        rep.claim(
            "Witt frame reproduces the split gram",
            "eq. (5)",
            frame.check(G.Q),
            {
                "basis_change": matrix_to_json(frame.basis_change),
                "core_gram": matrix_to_json(frame.gram_w),
                "k": frame.k,
            },
        )
        cert = certify_open_orbit(G, probe_seed=probe_seed)
        if cert is None:
            rep.skip(
                "structure blocks in the Witt frame",
                "Thm 4.4",
                "no open centralizer orbit found at the seeded probes",
            )
        else:
            sb = structure_blocks(G, frame)
            rep.claim(
                "structure blocks: C skew, B columns isotropic and mutually orthogonal",
                "Thm 4.4",
                True,
                {
                    "blocks": [
                        {"B": matrix_to_json(B), "C": matrix_to_json(Cm)}
                        for B, Cm in sb.blocks
                    ]
                },
            )
    if args.centralizer:
        C = centralizer_algebra(G)
        rep.claim(
            f"centralizer solution space solved (dim {C.dim})",
            "§6",
            True,
            {"dim": C.dim, "basis": [log_to_json(l) for l in C.basis]},
        )
        orbit = orbit_dimension(C, vzero(G.n))
        rep.claim(
            f"centralizer orbit at 0 has dimension {orbit.orbit_dim}"
            f" ({'open' if orbit.is_open else 'not open'})",
            "§6",
            True,
            {"orbit_dim": orbit.orbit_dim, "is_open": orbit.is_open},
        )
        cert = transitivity_certificate(C, probe_seed=probe_seed)
        rep.claim(
            f"transitivity certificate computed"
            f" ({'certified' if cert.certified else 'not certified'})",
            "§6",
            True,
            {
                "certified": cert.certified,
                "bracket_closed": cert.bracket_closed,
                "all_parts_nilpotent": cert.all_parts_nilpotent,
                "nilpotency_class": cert.nilpotency_class,
            },
        )
        prop = properness_certificate(G, C, probe_seed=probe_seed)
        rep.claim(
            f"properness certificate: {prop.verdict}",
            "Prop 7.2",
            True,
            {"verdict": prop.verdict, "route": prop.route, "closedness": prop.closed_tag},
        )
    if args.free_box is not None:
        if pres is not None:
            free, witness = is_free_on_space(G, exponent_box=args.free_box)
        else:
            free, witness = is_free_on_space(G, word_radius=args.free_box)
        rep.claim(
            f"free of nonidentity fixed points over box {args.free_box}",
            "§6",
            free,
            {
                "witness_point": vector_to_json(witness[1]) if witness else None,
            },
        )
    return rep.emit(args.report)


# ---------------------------------------------------------------------------
# witt


def cmd_witt(args) -> int:
    data = _load_json_file(args.group)
    G, _ = group_from_json(data)
    probe_seed = _resolve_seed(args.probe_seed)
    rep = Report(args.group, {"probe_seed": probe_seed})
    inv = invariant_spaces(G)
    frame = witt_frame(inv.u_zero, G.Q)
    rep.claim(
        "Witt frame reproduces the split gram",
        "eq. (5)",
        frame.check(G.Q),
        {
            "basis_change": matrix_to_json(frame.basis_change),
            "core_gram": matrix_to_json(frame.gram_w),
            "k": frame.k,
            "u_zero": subspace_to_json(inv.u_zero),
        },
    )
    abelian, _ = holonomy_abelian(G)
    if abelian:
        rep.skip(
            "crossover pairing and dimension bound",
            "Thm 5.1",
            "holonomy is abelian; the bound applies to non-abelian holonomy",
        )
        return rep.emit(args.report)
    cert = certify_open_orbit(G, probe_seed=probe_seed)
    if cert is None:
        rep.skip(
            "structure blocks in the Witt frame",
            "Thm 4.4",
            "no open centralizer orbit found at the seeded probes",
        )
        return rep.emit(args.report)
    sb = structure_blocks(G, frame)
    rep.claim(
        "structure blocks: C skew, B columns isotropic and mutually orthogonal",
        "Thm 4.4",
        True,
        {
            "blocks": [
                {"B": matrix_to_json(B), "C": matrix_to_json(Cm)}
                for B, Cm in sb.blocks
            ]
        },
    )
    db = dimension_bound_decomposition(G)
    rep.claim(
        f"dimension bound: {db.verdict}",
        "Thm 5.1",
        db.n >= 8,
        {"n": db.n, "k": db.dim_u_zero, "core_dim": db.core_dim},
    )
    return rep.emit(args.report)


# ---------------------------------------------------------------------------
# centralizer


def cmd_centralizer(args) -> int:
    data = _load_json_file(args.group)
    G, _ = group_from_json(data)
    probe_seed = _resolve_seed(args.probe_seed)
    rep = Report(args.group, {"probe_seed": probe_seed})
    C = centralizer_algebra(G)
    rep.claim(
        f"centralizer solution space solved (dim {C.dim})",
        "§6",
        True,
        {"dim": C.dim, "basis": [log_to_json(l) for l in C.basis]},
    )
    orbit = orbit_dimension(C, vzero(G.n))
    rep.claim(
        f"orbit at 0 has dimension {orbit.orbit_dim}"
        f" ({'open' if orbit.is_open else 'not open'})",
        "§6",
        True,
        {"orbit_dim": orbit.orbit_dim, "is_open": orbit.is_open},
    )
    cert = transitivity_certificate(C, probe_seed=probe_seed)
    rep.claim(
        f"transitivity certificate ({'certified' if cert.certified else 'not certified'})",
        "§6",
        True,
        {
            "certified": cert.certified,
            "bracket_closed": cert.bracket_closed,
            "all_parts_nilpotent": cert.all_parts_nilpotent,
            "nilpotency_class": cert.nilpotency_class,
            "surjective_at": list(cert.surjective_at),
        },
    )
    prop = properness_certificate(G, C, probe_seed=probe_seed)
    rep.claim(
        f"properness certificate: {prop.verdict}",
        "Prop 7.2",
        True,
        {"verdict": prop.verdict, "route": prop.route, "closedness": prop.closed_tag},
    )
    return rep.emit(args.report)


# ---------------------------------------------------------------------------
# search


def _parse_cells(spec: str):
    cells = []
    for part in spec.split(","):
        part = part.strip()
        if not part:
            continue
        try:
            n, k = part.split(":")
            cells.append((int(n), int(k)))
        except ValueError:
            raise PreconditionError(f"bad cell {part!r}; expected n:k")
    return cells


def cmd_search(args) -> int:
    seed = _resolve_seed(args.seed)
    if args.frontier:
        cells = _parse_cells(args.frontier)
        table = transitive_frontier_evidence(cells, trials=args.trials, seed=seed)
        rep = Report("search-frontier", {"seed": seed})
        for row in table.rows:
            rep.claim(
                f"n={row.n} k={row.k} [{row.source}]: "
                f"{row.nonabelian_found} non-abelian, "
                f"{row.certified_transitive} certified transitive ({table.label})",
                "Remark 5.2",
                True,
                {
                    "n": row.n,
                    "k": row.k,
                    "source": row.source,
                    "pairs_tested": row.pairs_tested,
                    "nonabelian_found": row.nonabelian_found,
                    "certified_transitive": row.certified_transitive,
                    "label": table.label,
                },
            )
        return rep.emit(args.report)
    cfg = SearchConfig(
        n=args.dim,
        k=args.k,
        entry_bound=args.entry_bound,
        trials=args.trials,
        seed=seed,
    )
    out = falsification_run(cfg, include_known_pair=args.include_known_pair)
    rep = Report(f"search n={cfg.n} k={cfg.k}", {"seed": seed})
    witness_json = [
        {"a1": log_to_json(a), "a2": log_to_json(b)} for a, b in out.witnesses
    ]
    counts = {
        "trials_run": out.trials_run,
        "admissible_pairs": out.admissible_pairs,
        "nonabelian_pairs": out.nonabelian_pairs,
        "witnesses": witness_json,
        "witnesses_capped": out.witnesses_capped,
    }
    if cfg.n < 8:
        rep.claim(
            f"no admissible pair below n=8 has A1 A2 != 0 "
            f"({out.admissible_pairs} admissible in {out.trials_run} trials)",
            "Thm 5.1",
            out.nonabelian_pairs == 0,
            counts,
        )
    else:
        rep.claim(
            f"cell at n >= 8: {out.nonabelian_pairs} non-abelian admissible pairs "
            f"({out.admissible_pairs} admissible in {out.trials_run} trials)",
            "Thm 5.1",
            True,
            counts,
        )
    if args.emit_witness and out.witnesses:
        os.makedirs(args.emit_witness, exist_ok=True)
        for idx, (a, b) in enumerate(out.witnesses):
            doc = group_to_json(IsoGroup(cfg.form(), [exp_affine(a), exp_affine(b)]))
            with open(os.path.join(args.emit_witness, f"witness-{idx}.json"), "w") as fh:
                fh.write(dumps(doc))
    return rep.emit(args.report)


# ---------------------------------------------------------------------------
# lie


def cmd_lie(args) -> int:
    data = _load_json_file(args.form)
    F = threeform_from_json(data)
    rep = Report(args.form, {})
    g = build_split_algebra(F, dim_z0=args.z0)
    rep.claim(
        f"split algebra built: dim {g.dim}, signature {g.form.signature}",
        "Thm 3.3",
        True,
        {"three_form": threeform_to_json(F), "gram": matrix_to_json(g.gram)},
    )
    biinv = check_biinvariant(g)
    rep.claim("biinvariance holds on all basis triples", "eq. (2)", biinv, {})
    rep.claim(
        "the trilinear form of the bracket is alternating",
        "eq. (2)",
        trilinear_alternating(g) == biinv and biinv,
        {},
    )
    rep.claim("the metric is flat (2-step nilpotent)", "§3", is_flat(g), {})
    derived = g.derived_subspace()
    rep.claim(
        "[g,g] is totally isotropic",
        "§3",
        is_totally_isotropic(derived, g.form),
        {"derived": subspace_to_json(derived)},
    )
    n = g.dim
    basis = [unit(n, i) for i in range(n)]
    hol = verify_compact_holonomy(g, basis)
    rep.claim(
        "development images are Wolf-valid with pairwise-zero products"
        " and their span is [g,g]",
        "Thm 3.1",
        hol.overall,
        {
            "abelian_images": hol.abelian_images,
            "span_is_derived": hol.span_is_derived,
            "holonomy_dim": hol.holonomy_dim,
        },
    )
    dec = split_decomposition(g)
    again = split_decomposition(dec.rebuilt)
    rep.claim(
        "splitting roundtrip: rebuilt algebra matches and re-splitting is stable",
        "Thm 3.3",
        again.three_form == dec.three_form and again.core_gram == dec.core_gram,
        {
            "extracted_form": threeform_to_json(dec.three_form),
            "core_gram": matrix_to_json(dec.core_gram),
            "a": subspace_to_json(dec.a),
            "a_star": subspace_to_json(dec.a_star),
            "z0": subspace_to_json(dec.z0),
        },
    )
    return rep.emit(args.report)


# ---------------------------------------------------------------------------
# argument parsing


def _build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="prhs",
        description="Exact certificates for flat pseudo-Riemannian homogeneous geometry.",
    )
    p.add_argument("--version", action="version", version=f"prhs {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    pv = sub.add_parser("verify-example", help="verify a built-in example end to end")
    pv.add_argument("name", help="gamma44 or gamma77")
    pv.add_argument("--report", help="write the JSON report here")
    pv.add_argument("--probe-seed", type=int, default=0)
    pv.add_argument("--export-group", help="also write the group JSON here")
    pv.set_defaults(func=cmd_verify_example)

    pc = sub.add_parser("check", help="run the verification pipeline on a group file")
    pc.add_argument("group", help="group JSON file")
    pc.add_argument("--witt", action="store_true", help="add Witt frame and blocks")
    pc.add_argument("--centralizer", action="store_true", help="add centralizer suite")
    pc.add_argument("--free-box", type=int, help="check freeness over this box")
    pc.add_argument("--report", help="write the JSON report here")
    pc.add_argument("--probe-seed", type=int, default=0)
    pc.set_defaults(func=cmd_check)

    pw = sub.add_parser("witt", help="Witt frame and structure blocks of a group file")
    pw.add_argument("group", help="group JSON file")
    pw.add_argument("--report", help="write the JSON report here")
    pw.add_argument("--probe-seed", type=int, default=0)
    pw.set_defaults(func=cmd_witt)

    pz = sub.add_parser("centralizer", help="centralizer algebra and certificates")
    pz.add_argument("group", help="group JSON file")
    pz.add_argument("--report", help="write the JSON report here")
    pz.add_argument("--probe-seed", type=int, default=0)
    pz.set_defaults(func=cmd_centralizer)

    ps = sub.add_parser("search", help="seeded falsification search")
    ps.add_argument("--dim", type=int, help="ambient dimension n")
    ps.add_argument("--k", type=int, help="dim U_0")
    ps.add_argument("--trials", type=int, default=100_000)
    ps.add_argument("--seed", type=int, default=0)
    ps.add_argument("--entry-bound", type=int, default=3)
    ps.add_argument("--include-known-pair", action="store_true")
    ps.add_argument("--emit-witness", help="directory for witness group files")
    ps.add_argument("--frontier", help="evidence table over cells, e.g. 8:2,10:3")
    ps.add_argument("--report", help="write the JSON report here")
    ps.set_defaults(func=cmd_search)

    pl = sub.add_parser("lie", help="build and check a split metric Lie algebra")
    pl.add_argument("form", help="3-form JSON file")
    pl.add_argument("--z0", type=int, default=0, help="dimension of the z0 factor")
    pl.add_argument("--report", help="write the JSON report here")
    pl.set_defaults(func=cmd_lie)
    return p


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    if args.command == "search" and not args.frontier:
        if args.dim is None or args.k is None:
            parser.error("search needs --dim and --k (or --frontier)")
    try:
        return args.func(args)
    except PreconditionError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 2
    except ConsistencyError as exc:
        print(f"consistency failure: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
