"""Command-line interface.

Subcommands: orbits, graded-orbits, grading, triple, parabolic, primes,
fibers, stalks.  Every subcommand supports --json; output is deterministic
byte for byte.  Exit codes: 0 success, 2 argument errors, 3 verification
mismatches reported by ``fibers``.
"""

from __future__ import annotations

import argparse
import json
import sys

from .cohom import load_case, stalk_table
from .exactlin import RatMatrix, format_matrix_text, parse_matrix_text
from .ffgeom import verify_fiber_counts
from .liegrade import (
    Cocharacter,
    Sl2Triple,
    adapted_sl2_triple,
    build_algebra,
    canonical_parabolic,
    check_n_rigid,
    graded_component,
    weight_matrix,
)
from .orbitlib import graded_orbit_reps_typeA, nilpotent_orbits


def _parse_cochar(text: str) -> Cocharacter:
    return Cocharacter.of(int(x) for x in text.split(","))


def _emit(args, text_lines, payload) -> None:
    if args.quiet:
        return
    if args.json:
        print(json.dumps(payload, sort_keys=True))
    else:
        for line in text_lines:
            print(line)


def _table(rows, headers):
    widths = [
        max(len(str(headers[i])), max((len(str(r[i])) for r in rows), default=0))
        for i in range(len(headers))
    ]
    lines = ["  ".join(str(h).ljust(w) for h, w in zip(headers, widths)).rstrip()]
    for r in rows:
        lines.append("  ".join(str(x).ljust(w) for x, w in zip(r, widths)).rstrip())
    return lines


def cmd_orbits(args) -> int:
    orbits = nilpotent_orbits(args.type, args.n)
    rows = [
        (o.partition.label(), o.dimension, o.component_group.label()) for o in orbits
    ]
    payload = {
        "type": args.type,
        "n": args.n,
        "orbits": [
            {
                "partition": list(o.partition.parts),
                "label": o.partition.label(),
                "dim": o.dimension,
                "component_group": o.component_group.label(),
                "component_group_order": o.component_group.order,
            }
            for o in orbits
        ],
    }
    _emit(args, _table(rows, ("orbit", "dim", "pi1")), payload)
    return 0


def _levi_shape_for(rep, chi, n, alg):
    if rep.representative.is_zero():
        triple = Sl2Triple.zero(alg.dim_ambient)
    else:
        triple = adapted_sl2_triple(alg, chi, n, RatMatrix.from_int(rep.representative))
    datum = canonical_parabolic(alg, chi, triple, n)
    return datum, triple


def cmd_graded_orbits(args) -> int:
    chi = _parse_cochar(args.cochar)
    n = args.degree
    reps = graded_orbit_reps_typeA(chi, n)
    alg = build_algebra("sl", len(chi))
    rows = []
    recs = []
    for rep in reps:
        datum, _ = _levi_shape_for(rep, chi, n, alg)
        shape = ",".join(str(s) for s in datum.levi_block_shape)
        rows.append(
            (
                rep.label(),
                format_matrix_text(rep.representative),
                rep.dimension,
                shape,
            )
        )
        recs.append(
            {
                "decomposition": [list(seg) for seg in rep.decomposition],
                "label": rep.label(),
                "representative": format_matrix_text(rep.representative),
                "dim": rep.dimension,
                "levi_blocks": list(datum.levi_block_shape),
            }
        )
    payload = {"cochar": list(chi.weights), "degree": n, "orbits": recs}
    _emit(args, _table(rows, ("decomposition", "representative", "dim", "levi")), payload)
    return 0


def cmd_grading(args) -> int:
    chi = _parse_cochar(args.cochar)
    alg = build_algebra(args.type, args.d)
    comp = graded_component(alg, chi, args.degree)
    wm = weight_matrix(chi)
    lines = [
        f"weight_matrix: {format_matrix_text(wm)}",
        f"degree: {args.degree}",
        f"dim: {comp.dimension}",
    ]
    basis_texts = [b.text() for b in comp.basis]
    for t in basis_texts:
        lines.append(f"basis: {t}")
    payload = {
        "weight_matrix": format_matrix_text(wm),
        "degree": args.degree,
        "dim": comp.dimension,
        "basis": basis_texts,
    }
    _emit(args, lines, payload)
    return 0


def cmd_triple(args) -> int:
    chi = _parse_cochar(args.cochar)
    alg = build_algebra(args.type, args.d)
    x = RatMatrix.from_int(parse_matrix_text(args.x))
    triple = adapted_sl2_triple(alg, chi, args.degree, x)
    from .liegrade import chi_prime

    weights, _ = chi_prime(triple, chi)
    lines = [
        f"e: {triple.e.text()}",
        f"h: {triple.h.text()}",
        f"f: {triple.f.text()}",
        "chi_prime: " + ",".join(str(w) for w in weights.weights),
    ]
    payload = {
        "e": triple.e.text(),
        "h": triple.h.text(),
        "f": triple.f.text(),
        "chi_prime": list(weights.weights),
    }
    _emit(args, lines, payload)
    return 0


def cmd_parabolic(args) -> int:
    chi = _parse_cochar(args.cochar)
    alg = build_algebra(args.type, args.d)
    x = RatMatrix.from_int(parse_matrix_text(args.x))
    n = args.degree
    if x.is_zero():
        triple = Sl2Triple.zero(alg.dim_ambient)
    else:
        triple = adapted_sl2_triple(alg, chi, n, x)
    datum = canonical_parabolic(alg, chi, triple, n)
    rigid = check_n_rigid(datum.l_basis, chi, triple, n)
    lines = [
        "chi_prime: " + ",".join(str(w) for w in datum.chi_prime.weights),
        f"chi_prime_matrix: {format_matrix_text(weight_matrix(datum.chi_prime))}",
        f"indicator: {format_matrix_text(datum.indicator)}",
        f"p_mask: {format_matrix_text(datum.mask('p'))}",
        f"n_mask: {format_matrix_text(datum.mask('n'))}",
        f"l_mask: {format_matrix_text(datum.mask('l'))}",
        "levi_blocks: " + ",".join(str(s) for s in datum.levi_block_shape),
        f"levi_rigid: {'yes' if rigid.is_rigid else 'no'}",
    ]
    payload = {
        "chi_prime": list(datum.chi_prime.weights),
        "chi_prime_matrix": format_matrix_text(weight_matrix(datum.chi_prime)),
        "indicator": format_matrix_text(datum.indicator),
        "p_mask": format_matrix_text(datum.mask("p")),
        "n_mask": format_matrix_text(datum.mask("n")),
        "l_mask": format_matrix_text(datum.mask("l")),
        "levi_blocks": list(datum.levi_block_shape),
        "levi_rigid": rigid.is_rigid,
    }
    _emit(args, lines, payload)
    return 0


def cmd_primes(args) -> int:
    from .rootdata import prime_report, standard_root_datum

    rd = standard_root_datum(args.type, args.n)
    rep = prime_report(rd)
    payload = rep.as_dict()
    lines = [
        "good_excluded: " + (",".join(map(str, rep.good_excluded)) or "-"),
        "torsion: " + (",".join(map(str, rep.torsion)) or "-"),
        "pretty_good_excluded: "
        + (",".join(map(str, rep.pretty_good_excluded)) or "-"),
        "rather_good_excluded: "
        + (",".join(map(str, rep.rather_good_excluded)) or "-"),
    ]
    _emit(args, lines, payload)
    return 0


def cmd_fibers(args) -> int:
    case = load_case(args.case)
    primes = [int(x) for x in args.primes.split(",")]
    report = verify_fiber_counts(case, primes)
    rows = [
        (r.orbit, r.prime, r.stratum, r.count, r.predicted, "ok" if r.match else "MISMATCH")
        for r in report.rows
    ]
    payload = {
        "case": report.case,
        "primes": primes,
        "all_match": report.all_match,
        "rows": [
            {
                "orbit": r.orbit,
                "prime": r.prime,
                "stratum": r.stratum,
                "count": r.count,
                "predicted": r.predicted,
                "match": r.match,
            }
            for r in report.rows
        ],
    }
    _emit(
        args,
        _table(rows, ("orbit", "prime", "stratum", "count", "predicted", "verdict")),
        payload,
    )
    return 0 if report.all_match else 3


def cmd_stalks(args) -> int:
    case = load_case(args.case)
    table = stalk_table(case, args.char, allow_char_two=args.allow_char_2)
    labels = [o.partition.label() for o in case.orbits]
    degrees = sorted(
        {d for col in table.columns.values() for d in col}, reverse=True
    )
    rows = []
    for d in degrees:
        rows.append(
            (d, *(table.columns[label].get(d, "") for label in labels))
        )
    lines = _table(rows, ("degree", *labels)) if degrees else ["(all columns empty)"]
    _emit(args, lines, table.as_dict())
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gradedorbits",
        description="Exact computations for cocharacter-graded classical Lie algebras.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit JSON")
    common.add_argument("--quiet", action="store_true", help="suppress output")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_parser(name, **kwargs):
        return sub.add_parser(name, parents=[common], **kwargs)

    p = add_parser("orbits", help="nilpotent orbit table")
    p.add_argument("--type", required=True, choices=["sl", "sp"])
    p.add_argument("--n", required=True, type=int)
    p.set_defaults(func=cmd_orbits)

    p = add_parser("graded-orbits", help="orbits in a graded piece (type A)")
    p.add_argument("--cochar", required=True)
    p.add_argument("--degree", required=True, type=int)
    p.set_defaults(func=cmd_graded_orbits)

    p = add_parser("grading", help="weight matrix and graded component basis")
    p.add_argument("--type", required=True, choices=["sl", "sp"])
    p.add_argument("--d", required=True, type=int)
    p.add_argument("--cochar", required=True)
    p.add_argument("--degree", required=True, type=int)
    p.set_defaults(func=cmd_grading)

    p = add_parser("triple", help="graded sl2-triple through a nilpotent")
    p.add_argument("--type", required=True, choices=["sl", "sp"])
    p.add_argument("--d", required=True, type=int)
    p.add_argument("--cochar", required=True)
    p.add_argument("--x", required=True, help="matrix in ';'/',' text format")
    p.add_argument("--degree", required=True, type=int)
    p.set_defaults(func=cmd_triple)

    p = add_parser("parabolic", help="canonical parabolic of a graded nilpotent")
    p.add_argument("--type", required=True, choices=["sl", "sp"])
    p.add_argument("--d", required=True, type=int)
    p.add_argument("--cochar", required=True)
    p.add_argument("--x", required=True)
    p.add_argument("--degree", required=True, type=int)
    p.set_defaults(func=cmd_parabolic)

    p = add_parser("primes", help="prime classifiers of a root datum")
    p.add_argument("--type", required=True, choices=["sl", "sp"])
    p.add_argument("--n", required=True, type=int)
    p.set_defaults(func=cmd_primes)

    p = add_parser("fibers", help="finite-field fiber count verification")
    p.add_argument("--case", required=True, choices=["sp4", "sl4"])
    p.add_argument("--primes", required=True)
    p.set_defaults(func=cmd_fibers)

    p = add_parser("stalks", help="stalk table of the induced cuspidal system")
    p.add_argument("--case", required=True, choices=["sp4", "sl4"])
    p.add_argument("--char", required=True, type=int)
    p.add_argument("--allow-char-2", action="store_true")
    p.set_defaults(func=cmd_stalks)

    return parser


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except (ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main(argv=None) -> None:
    raise SystemExit(run(argv))


if __name__ == "__main__":
    main()
