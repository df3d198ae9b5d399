"""Batch command-line front end.

Every subcommand reads the documented file formats, dispatches to the
kernel, and prints a canonical, byte-stable report.  Exit codes: 0 for
success or a passing check, 1 for a check that verifiably fails, 2 for
input errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .algebra import AlgebraSpec, Polynomial
from .atlas import check_cocycle, check_symmetric, cover_atlas, descend, roundtrip
from .covering import (
    build_covering,
    canonical_covering,
    lift,
    quotient_category_lift,
    verify_no_vb_covering,
    verify_universal,
)
from .invariants import decompose_invariant, orbit_vanishes, primitivize, push_down, symmetrize
from .morphism import GradedMorphism
from .textio import (
    ParseError,
    parse_atlas,
    parse_morphism,
    parse_polynomial,
    parse_spec,
    parse_weight_system,
    print_atlas,
    print_morphism,
    print_spec,
    print_weight_system,
)
from .weights import EVEN, ODD, deck_group, parity_from_name


def _read(path: str) -> str:
    return Path(path).read_text(encoding="utf-8")


def _load_spec(path: str, quotient_override: bool | None) -> AlgebraSpec:
    spec = parse_spec(_read(path))
    if quotient_override is not None and spec.is_delta:
        spec = spec.with_quotient(quotient_override)
    return spec


def _block(title: str, body: str) -> str:
    indented = "\n".join("  " + line for line in body.splitlines())
    return f"{title} {{\n{indented}\n}}"


def _morphism_dict(m: GradedMorphism) -> dict:
    out = {}
    for i, img in enumerate(m.base_images):
        out[m.target.base_var_name(i + 1)] = str(img)
    for w, j in m.target.fiber_variables():
        out[m.target.fiber_var_name(w, j)] = str(m.fiber_images[(w, j)])
    return out


# -- subcommand handlers; each returns (exit code, json dict, text) -----------

def _cmd_cover(args):
    base = _load_spec(args.target, None)
    system = parse_weight_system(_read(args.delta))
    cov = build_covering(base, system)
    text = "\n\n".join(
        [
            _block("total", print_spec(cov.total).rstrip("\n")),
            _block("projection", print_morphism(cov.projection).rstrip("\n")),
        ]
    )
    payload = {
        "total": print_spec(cov.total),
        "projection": _morphism_dict(cov.projection),
    }
    return 0, payload, text


def _cmd_lift(args):
    source = _load_spec(args.source, args.quotient)
    target = _load_spec(args.target, None)
    system = parse_weight_system(_read(args.delta))
    psi = parse_morphism(_read(args.morphism), source, target)
    cov = build_covering(target, system)
    lifted = lift(psi, cov)
    report = verify_universal(psi, cov, lifted)
    ok = report.commutes and report.unique
    text = "\n\n".join(
        [
            _block("lift", print_morphism(lifted).rstrip("\n")),
            "triangle: " + ("yes" if ok else "no"),
        ]
    )
    payload = {"lift": _morphism_dict(lifted), "triangle": ok}
    return (0 if ok else 1), payload, text


def _cmd_symmetrize(args):
    spec = _load_spec(args.spec, args.quotient)
    poly = parse_polynomial(_read(args.polynomial), spec)
    result = symmetrize(poly)
    return 0, {"result": str(result)}, str(result)


def _cmd_decompose(args):
    spec = _load_spec(args.spec, args.quotient)
    poly = parse_polynomial(_read(args.polynomial), spec)
    pairs = decompose_invariant(poly)
    if not pairs:
        return 0, {"terms": []}, "0"
    lines = []
    terms = []
    for coeff, prim in pairs:
        mono = str(Polynomial.monomial(spec, prim.factors))
        lines.append(f"({coeff}) * orbit({mono})")
        terms.append({"coefficient": str(coeff), "primitive": mono})
    return 0, {"terms": terms}, "\n".join(lines)


def _cmd_pushdown(args):
    spec = _load_spec(args.spec, args.quotient)
    poly = parse_polynomial(_read(args.polynomial), spec)
    cov = canonical_covering(spec)
    result = push_down(poly, cov)
    return 0, {"result": str(result)}, str(result)


def _cmd_orbit_vanishes(args):
    spec = _load_spec(args.spec, args.quotient)
    poly = parse_polynomial(_read(args.polynomial), spec)
    monos = poly.fiber_monomials()
    if len(monos) != 1:
        raise ParseError("orbit-vanishes expects a single monomial")
    sign, prim = primitivize(monos[0], spec)
    vanishes = orbit_vanishes(prim, spec)
    text = "\n".join(
        [
            f"primitive: {Polynomial.monomial(spec, prim.factors)}",
            f"sign: {sign}",
            "vanishes: " + ("yes" if vanishes else "no"),
        ]
    )
    payload = {
        "primitive": str(Polynomial.monomial(spec, prim.factors)),
        "sign": sign,
        "vanishes": vanishes,
    }
    return 0, payload, text


def _cmd_deck(args):
    system = parse_weight_system(_read(args.delta))
    group = deck_group(system)
    group.sort(key=lambda s: s.images)
    lines = [
        print_weight_system(system).splitlines()[2],
        f"order = {len(group)}",
    ]
    lines += [s.cycle_string() for s in group]
    payload = {
        "delta": print_weight_system(system),
        "order": len(group),
        "elements": [s.cycle_string() for s in group],
    }
    return 0, payload, "\n".join(lines)


def _cmd_check_cocycle(args):
    atlas = parse_atlas(_read(args.atlas))
    report = check_cocycle(atlas)
    payload = {"cocycle": report.ok, "failures": report.failures}
    return (0 if report.ok else 1), payload, str(report)


def _cmd_cover_atlas(args):
    atlas = parse_atlas(_read(args.atlas))
    system = parse_weight_system(_read(args.delta))
    covered = cover_atlas(atlas, system)
    chunks = [print_atlas(covered.atlas).rstrip("\n")]
    for i in sorted(covered.coverings):
        chunks.append(
            _block(
                f"projection {i}",
                print_morphism(covered.coverings[i].projection).rstrip("\n"),
            )
        )
    payload = {
        "atlas": print_atlas(covered.atlas),
        "projections": {
            str(i): _morphism_dict(covered.coverings[i].projection)
            for i in covered.coverings
        },
        "symmetric": check_symmetric(covered.atlas),
    }
    return 0, payload, "\n\n".join(chunks)


def _cmd_descend(args):
    atlas = parse_atlas(_read(args.atlas))
    graded, coverings = descend(atlas)
    chunks = [print_atlas(graded).rstrip("\n")]
    for i in sorted(coverings):
        chunks.append(
            _block(
                f"projection {i}",
                print_morphism(coverings[i].projection).rstrip("\n"),
            )
        )
    payload = {
        "atlas": print_atlas(graded),
        "projections": {
            str(i): _morphism_dict(coverings[i].projection) for i in coverings
        },
    }
    return 0, payload, "\n\n".join(chunks)


def _cmd_roundtrip(args):
    atlas = parse_atlas(_read(args.atlas))
    system = parse_weight_system(_read(args.delta))
    ok, details = roundtrip(atlas, system)
    lines = ["roundtrip: " + ("yes" if ok else "no")] + ["  " + d for d in details]
    return (0 if ok else 1), {"roundtrip": ok, "details": details}, "\n".join(lines)


def _cmd_verify_universal(args):
    source = _load_spec(args.source, args.quotient)
    target = _load_spec(args.target, None)
    system = parse_weight_system(_read(args.delta))
    psi = parse_morphism(_read(args.morphism), source, target)
    cov = build_covering(target, system)
    report = verify_universal(psi, cov)
    ok = report.commutes and report.unique
    payload = {
        "commutes": report.commutes,
        "unique": report.unique,
        "details": report.details,
    }
    return (0 if ok else 1), payload, str(report)


def _cmd_verify_no_vb_cover(args):
    parities = (EVEN, ODD) if args.parity is None else (parity_from_name(args.parity),)
    chunks = []
    payload_reports = []
    all_infeasible = True
    for par in parities:
        for unit in (True, False):
            report = verify_no_vb_covering(parity=par, unit_cross_coefficient=unit)
            chunks.append(str(report))
            payload_reports.append(
                {
                    "parity": report.parity,
                    "unit_cross_coefficient": report.unit_cross_coefficient,
                    "feasible": report.feasible,
                }
            )
            all_infeasible = all_infeasible and not report.feasible
    quotient_ok = True
    for par in parities:
        q = quotient_category_lift(parity=par)
        quotient_ok = quotient_ok and q.commutes and q.unique
    chunks.append(
        "quotient-category lift: " + ("exists" if quotient_ok else "missing")
    )
    ok = all_infeasible and quotient_ok
    chunks.append(
        "verdict: "
        + (
            "no covering exists in the 2-fold vector bundle category"
            if ok
            else "fixture did not behave as expected"
        )
    )
    payload = {
        "reports": payload_reports,
        "quotient_lift": quotient_ok,
        "verdict": ok,
    }
    return (0 if ok else 1), payload, "\n\n".join(chunks)


def _add_quotient_flag(parser):
    parser.add_argument(
        "--quotient",
        action=argparse.BooleanOptionalAction,
        default=None,
        help="override the quotient flag of the parsed algebra spec",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mfcover",
        description="Exact kernel for multiplicity-free coverings of graded manifolds.",
    )
    sub = parser.add_subparsers(dest="verb", required=True)

    def add(name, handler, **kwargs):
        p = sub.add_parser(name, **kwargs)
        p.set_defaults(handler=handler)
        p.add_argument("--json", action="store_true", help="emit a JSON report")
        return p

    p = add("cover", _cmd_cover, help="build the covering of a graded domain")
    p.add_argument("--target", required=True, help="graded (length-type) algebra spec file")
    p.add_argument("--delta", required=True, help="S_n-invariant weight system file")

    p = add("lift", _cmd_lift, help="lift a morphism through a covering")
    p.add_argument("--source", required=True, help="multiplicity-free source spec file")
    p.add_argument("--target", required=True, help="covered graded domain spec file")
    p.add_argument("--delta", required=True, help="weight system file for the covering")
    p.add_argument("--morphism", required=True, help="morphism assignment file")
    _add_quotient_flag(p)

    for name, handler, helptext in (
        ("symmetrize", _cmd_symmetrize, "sum a polynomial over all permutations"),
        ("decompose", _cmd_decompose, "decompose an invariant into primitive orbits"),
        ("pushdown", _cmd_pushdown, "invert the covering pullback on an invariant"),
        ("orbit-vanishes", _cmd_orbit_vanishes, "test whether an orbit sum cancels"),
    ):
        p = add(name, handler, help=helptext)
        p.add_argument("--spec", required=True, help="vector-weight algebra spec file")
        p.add_argument("polynomial", help="polynomial file")
        _add_quotient_flag(p)

    p = add("deck", _cmd_deck, help="enumerate the deck transformation group")
    p.add_argument("delta", help="weight system file")

    p = add("check-cocycle", _cmd_check_cocycle, help="verify atlas cocycle conditions")
    p.add_argument("atlas", help="atlas file")

    p = add("cover-atlas", _cmd_cover_atlas, help="cover an atlas chart by chart")
    p.add_argument("atlas", help="atlas file")
    p.add_argument("--delta", required=True, help="weight system file")

    p = add("descend", _cmd_descend, help="descend a symmetric atlas to a graded one")
    p.add_argument("atlas", help="atlas file")

    p = add("roundtrip", _cmd_roundtrip, help="cover then descend and compare")
    p.add_argument("atlas", help="atlas file")
    p.add_argument("--delta", required=True, help="weight system file")

    p = add("verify-universal", _cmd_verify_universal, help="check the universal property")
    p.add_argument("--source", required=True)
    p.add_argument("--target", required=True)
    p.add_argument("--delta", required=True)
    p.add_argument("--morphism", required=True)
    _add_quotient_flag(p)

    p = add("verify-no-vb-cover", _cmd_verify_no_vb_cover,
            help="reproduce the impossibility of vector bundle coverings")
    p.add_argument("--parity", choices=("even", "odd"), default=None)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        code, payload, text = args.handler(args)
    except (ParseError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if args.json:
        print(json.dumps(payload, sort_keys=True, indent=2))
    else:
        print(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
