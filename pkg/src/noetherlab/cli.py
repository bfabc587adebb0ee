"""Command-line entry point.

Subcommands: verify, list, catalog, perm, construct.  Exit status: 0 on
success, 1 when verification checks fail, 2 on usage errors.
"""

import argparse
import difflib
import json
import os
import sys

from . import catalog, constructions, verifier
from .perms import CycleParseError, parse_cycles
from .scalars import QQ, Field


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="noetherlab",
        description="Exact symbolic checks for the constructive steps behind "
                    "the rationality results for fixed fields of transitive "
                    "degree-14 groups.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_verify = sub.add_parser("verify", help="run verification scenarios")
    p_verify.add_argument("--all", action="store_true", help="run every scenario")
    p_verify.add_argument("--scenario", metavar="NAME", help="run one scenario")
    p_verify.add_argument("--json", action="store_true", help="emit the JSON report")
    p_verify.add_argument("--jobs", type=int, default=os.cpu_count() or 1,
                          help="scenario-level parallelism (default: cores)")

    p_list = sub.add_parser("list", help="list scenario names")
    p_list.add_argument("filter", nargs="?", default=None,
                        help="substring filter on names")
    p_list.add_argument("--json", action="store_true")

    p_catalog = sub.add_parser("catalog", help="inspect the group catalog")
    p_catalog.add_argument("action", choices=["dump"], help="dump the full table")

    p_perm = sub.add_parser("perm", help="work with cycle notation")
    p_perm.add_argument("action", choices=["parse"])
    p_perm.add_argument("expr", help="permutation in cycle notation")
    p_perm.add_argument("--degree", type=int, required=True)
    p_perm.add_argument("--json", action="store_true")

    p_construct = sub.add_parser("construct", help="print a construction")
    p_construct.add_argument("name", help="construction name (see README)")
    p_construct.add_argument("--params", default="",
                             help="comma-separated key=value parameters")
    p_construct.add_argument("--json", action="store_true")
    return parser


def _parse_params(text):
    params = {}
    if not text:
        return params
    for piece in text.split(","):
        piece = piece.strip()
        if not piece:
            continue
        key, eq, value = piece.partition("=")
        if not eq:
            raise ValueError(f"parameter {piece!r} is not of the form key=value")
        value = value.strip()
        try:
            params[key.strip()] = int(value)
        except ValueError:
            params[key.strip()] = value
    return params


def _field_from_params(params, default_char):
    char = params.get("char", default_char)
    return QQ if char == 0 else Field(char)


_CONSTRUCT_USAGE = {
    "hajja": "n (>= 2), char (default 0)",
    "lemma2.9": "p (odd prime), char",
    "question1.4": "char (default 7)",
    "thm1.7-linear": "p, a",
    "thm1.7-artin-schreier": "p, a",
    "sec5.2": "id (2, 4, or 10), char (default 0)",
    "sec5.4": "class (4, 5, or 6and9), char (default 7)",
    "sec5.5": "p, d, a",
    "sec5.5-g2g4": "(no parameters)",
    "affine-fixed": "kind (scaling|translation), c, order, char",
}


def _run_construct(name, params):
    if name == "hajja":
        return constructions.hajja_transform(params["n"],
                                             _field_from_params(params, 0))
    if name == "lemma2.9":
        return constructions.lemma29_invariants(params["p"],
                                                _field_from_params(params, 0))
    if name == "question1.4":
        cert = constructions.question14_reduction(_field_from_params(params, 7))
        return {
            "name": "question1.4-reduction",
            "parameters": {"n": cert.n, "d": cert.d, "a": cert.a, "b": cert.b,
                           "order": cert.order},
            "u": str(cert.u),
            "checks": [{"label": label, "ok": ok, "witness": witness}
                       for label, ok, witness in cert.checks],
        }
    if name == "thm1.7-linear":
        return constructions.thm17_linear_change(params["p"], params["a"])
    if name == "thm1.7-artin-schreier":
        return constructions.thm17_artin_schreier(params["p"], params["a"])
    if name == "sec5.2":
        return constructions.sec52_fold(params["id"], _field_from_params(params, 0))
    if name == "sec5.4":
        return constructions.sec54_invariants(str(params["class"]),
                                              _field_from_params(params, 7))
    if name == "sec5.5":
        return constructions.sec55_kuniyoshi(params["p"], params["d"], params["a"])
    if name == "sec5.5-g2g4":
        return constructions.sec55_g2_g4()
    if name == "affine-fixed":
        return constructions.affine_fixed_generator(
            params["kind"], c=params.get("c"), order=params.get("order"),
            field=_field_from_params(params, 0))
    raise KeyError(name)


def emit_report(report, mode="text", stream=None):
    """Render a suite report; text mode is an aligned table, json the schema."""
    stream = stream if stream is not None else sys.stdout
    if mode == "json":
        json.dump(report.to_json(), stream, indent=2)
        stream.write("\n")
        return
    width = max((len(c.claim) for s in report.scenarios for c in s.checks),
                default=20)
    width = min(width, 88)
    for s in report.scenarios:
        stream.write(f"{s.name}  ({s.anchor})\n")
        for c in s.checks:
            claim = c.claim if len(c.claim) <= width else c.claim[:width - 3] + "..."
            witness = c.witness if len(c.witness) <= 60 else c.witness[:57] + "..."
            stream.write(f"  {c.status.upper():7} {claim:{width}}  {witness}\n")
    totals = report.totals
    stream.write(f"totals: pass {totals['pass']}, fail {totals['fail']}, "
                 f"skipped {totals['skipped']}\n")


def _print_construction_text(payload):
    out = sys.stdout
    out.write(f"{payload.get('name', 'construction')}\n")
    if "field" in payload:
        out.write(f"field: {payload['field']}\n")
    for key in ("parameters", "u"):
        if key in payload:
            out.write(f"{key}: {payload[key]}\n")
    for name, expr in payload.get("elements", {}).items():
        shown = expr if len(expr) <= 100 else expr[:97] + "..."
        out.write(f"  {name} = {shown}\n")
    for claim in payload.get("claims", []):
        if "eigenfactor" in claim:
            out.write(f"  claim: {claim['map']} scales {claim['element']} "
                      f"by {claim['eigenfactor']}\n")
        else:
            shown = claim["expected"]
            shown = shown if len(shown) <= 80 else shown[:77] + "..."
            out.write(f"  claim: {claim['map']}({claim['element']}) = {shown}\n")
    for rel in payload.get("relations", []):
        out.write(f"  relation: {rel['label']}\n")
    for fact in payload.get("facts", []):
        out.write(f"  fact: {fact['label']} -> {'ok' if fact['ok'] else 'FAIL'}\n")
    for check in payload.get("checks", []):
        out.write(f"  check: {check['label']} -> "
                  f"{'ok' if check['ok'] else 'FAIL'}\n")


def _skip_set():
    raw = os.environ.get("NOETHERLAB_SKIP", "")
    return frozenset(name.strip() for name in raw.split(",") if name.strip())


def main(argv=None):
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if exc.code is not None else 2

    if args.command == "list":
        names = verifier.list_scenarios(args.filter)
        if args.json:
            json.dump(names, sys.stdout, indent=2)
            sys.stdout.write("\n")
        else:
            for name in names:
                scenario = verifier.get_scenario(name)
                sys.stdout.write(f"{name}  -  {scenario.description}\n")
        return 0

    if args.command == "verify":
        if bool(args.all) == bool(args.scenario):
            sys.stderr.write("verify needs exactly one of --all or --scenario NAME\n")
            return 2
        skip = _skip_set()
        if args.scenario:
            if args.scenario not in verifier.list_scenarios():
                names = verifier.list_scenarios()
                near = difflib.get_close_matches(args.scenario, names, n=3,
                                                 cutoff=0.4) or names[:3]
                sys.stderr.write(f"unknown scenario {args.scenario!r}; "
                                 "nearest names: " + ", ".join(near) + "\n")
                return 2
            report = verifier.run_all(parallelism=1, skip=skip,
                                      names=[args.scenario])
        else:
            report = verifier.run_all(parallelism=max(args.jobs, 1), skip=skip)
        emit_report(report, "json" if args.json else "text")
        return 0 if report.totals["fail"] == 0 else 1

    if args.command == "catalog":
        json.dump(catalog.dump(), sys.stdout, indent=2)
        sys.stdout.write("\n")
        return 0

    if args.command == "perm":
        try:
            perm = parse_cycles(args.expr, args.degree)
        except CycleParseError as exc:
            sys.stderr.write(f"parse error: {exc}\n")
            return 2
        if args.json:
            json.dump({"degree": perm.degree, "images": list(perm.images),
                       "cycles": perm.cycle_string()}, sys.stdout, indent=2)
            sys.stdout.write("\n")
        else:
            sys.stdout.write(f"images: {list(perm.images)}\n")
            sys.stdout.write(f"cycles: {perm.cycle_string() or '(identity)'}\n")
        return 0

    if args.command == "construct":
        if args.name not in _CONSTRUCT_USAGE:
            sys.stderr.write(f"unknown construction {args.name!r}; available: "
                             + ", ".join(sorted(_CONSTRUCT_USAGE)) + "\n")
            return 2
        try:
            params = _parse_params(args.params)
            result = _run_construct(args.name, params)
        except KeyError as exc:
            sys.stderr.write(f"missing parameter {exc} for {args.name}; expected: "
                             f"{_CONSTRUCT_USAGE[args.name]}\n")
            return 2
        except (ValueError, ZeroDivisionError) as exc:
            sys.stderr.write(f"error: {exc}\n")
            return 2
        payload = result if isinstance(result, dict) else result.to_json()
        if args.json:
            json.dump(payload, sys.stdout, indent=2)
            sys.stdout.write("\n")
        else:
            _print_construction_text(payload)
        return 0

    return 2


if __name__ == "__main__":
    sys.exit(main())
