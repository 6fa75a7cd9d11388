"""Command-line interface.

Commands: ``validate``, ``present``, ``verify``, ``plan``, ``rank``.
All output is JSON on stdout (or ``--output``).  Exit codes: 0 success,
1 a verification verdict failed, 2 semantic precondition violated,
3 schema or I/O problem, 4 a resource bound was exceeded.
"""

import argparse
import json
import sys

from .errors import InputError, ResourceError, SchemaError
from .homcount import count_homs
from .limits import DEFAULT_LIMITS
from .oracle import compare
from .pi1 import pi1_closed_form, pi1_connected_singular, pi1_devissage
from .scheme import (build_patch, build_patch_complement, build_union,
                     devissage_order, free_rank, intersection, validate)
from .schema import parse_scheme_config, pi1_result_to_json

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_INPUT = 2
EXIT_SCHEMA = 3
EXIT_RESOURCE = 4


def _common(sub):
    sub.add_argument("path", help="configuration JSON file")
    sub.add_argument("--bound-order", type=int, default=None,
                     help="largest allowed finite group order")
    sub.add_argument("--bound-degree", type=int, default=None,
                     help="largest symmetric-group degree")
    sub.add_argument("--ceiling", type=int, default=None,
                     help="largest admissible enumeration size")
    sub.add_argument("--output", default=None,
                     help="write JSON here instead of stdout")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="singular-pi1",
        description="Fundamental-group presentations of singular schemes "
                    "from dual-graph gluing data, with oracle verification.")
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("validate", help="check a configuration")
    _common(p)

    p = subs.add_parser("present", help="compute the fundamental group")
    _common(p)
    p.add_argument("--route", choices=("auto", "connected", "devissage",
                                       "closed"), default="auto")
    p.add_argument("--form", choices=("i", "ii", "iii", "iv"), default="i",
                   help="van Kampen form used while assembling")
    p.add_argument("--simplify", choices=("true", "false"), default="true",
                   help="emit the simplified (default) or raw presentation")
    p.add_argument("--degrees", default=None,
                   help="comma-separated degrees to append hom counts for")

    p = subs.add_parser("verify", help="compare against the cover oracle")
    _common(p)
    p.add_argument("--degree-max", type=int, default=3)
    p.add_argument("--connected", action="store_true",
                   help="also compare connected covers against transitive "
                        "hom counts")

    p = subs.add_parser("plan", help="show the dévissage plan")
    _common(p)

    p = subs.add_parser("rank", help="show the free-rank arithmetic")
    _common(p)
    return parser


def _limits_from(args):
    limits = DEFAULT_LIMITS
    if args.bound_order is not None:
        limits = limits.replace(order_bound=args.bound_order)
    if args.bound_degree is not None:
        limits = limits.replace(degree_bound=args.bound_degree)
    if args.ceiling is not None:
        limits = limits.replace(ceiling=args.ceiling)
    return limits


def _emit(args, payload):
    text = json.dumps(payload, indent=2)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _load(args, limits):
    try:
        with open(args.path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise SchemaError("$", f"cannot read {args.path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise SchemaError("$", f"not valid JSON: {exc}") from None
    return parse_scheme_config(doc, limits)


def _cmd_validate(args, limits):
    cfg = _load(args, limits)
    result = validate(cfg)
    _emit(args, result.to_json())
    return EXIT_OK if result.ok else EXIT_INPUT


def _cmd_present(args, limits):
    cfg = _load(args, limits)
    route = args.route
    if route == "closed":
        result = pi1_closed_form(cfg, limits=limits)
    elif route == "connected":
        result = pi1_connected_singular(cfg, form=args.form, limits=limits)
    else:
        result = pi1_devissage(cfg, form=args.form, limits=limits)
    payload = pi1_result_to_json(result, simplified=args.simplify == "true")
    if args.degrees:
        degrees = [int(x) for x in args.degrees.split(",") if x.strip()]
        pres = result.presentation if args.simplify == "true" \
            else result.raw_presentation
        payload["hom_counts"] = {str(d): count_homs(pres, d, limits)
                                 for d in degrees}
    _emit(args, payload)
    return EXIT_OK


def _cmd_verify(args, limits):
    cfg = _load(args, limits)
    result = pi1_devissage(cfg, limits=limits)
    reports = []
    hit_resource = False
    all_pass = True
    for d in range(2, args.degree_max + 1):
        try:
            report = compare(cfg, d, result, limits=limits,
                             connected=args.connected)
        except ResourceError as exc:
            reports.append({"degree": d, "error": str(exc)})
            hit_resource = True
            continue
        reports.append(report.to_json())
        if not report.verdict:
            all_pass = False
        if args.connected and report.connected["verdict"] != "pass":
            all_pass = False
    _emit(args, {"reports": reports})
    if hit_resource:
        return EXIT_RESOURCE
    return EXIT_OK if all_pass else EXIT_FAIL


def _cmd_plan(args, limits):
    cfg = _load(args, limits)
    if cfg.m == 0:
        _emit(args, {"error": "regular scheme, nothing to plan"})
        return EXIT_INPUT
    order = devissage_order(cfg)
    splits = []
    scope = cfg
    for r in range(len(order), 1, -1):
        prefix = list(order[:r])
        anchor = order[r - 1]
        scope = cfg if r == len(order) else build_union(cfg, prefix)
        patch = build_patch(scope, anchor)
        complement = build_patch_complement(scope, anchor)
        report = intersection(scope, patch, complement)
        rank_total = free_rank(scope)
        rank_patch = free_rank(patch)
        rank_rest = free_rank(complement)
        row = report.to_json()
        row.update({
            "scope": prefix,
            "anchor": anchor,
            "rank_total": rank_total,
            "rank_patch": rank_patch,
            "rank_complement": rank_rest,
            "additivity_ok": rank_total == rank_patch + rank_rest
                             + report.d - 1,
        })
        splits.append(row)
    _emit(args, {"order": list(order), "splits": splits})
    return EXIT_OK


def _cmd_rank(args, limits):
    cfg = _load(args, limits)
    rank = free_rank(cfg)
    _emit(args, {"n": cfg.n, "m": cfg.m, "m_tilde": cfg.m_tilde,
                 "rank": rank, "cycle_rank": rank})
    return EXIT_OK


_COMMANDS = {
    "validate": _cmd_validate,
    "present": _cmd_present,
    "verify": _cmd_verify,
    "plan": _cmd_plan,
    "rank": _cmd_rank,
}


def main(argv=None):
    args = build_parser().parse_args(argv)
    limits = _limits_from(args)
    try:
        return _COMMANDS[args.command](args, limits)
    except SchemaError as exc:
        _emit(args, {"error": {"kind": "schema", "path": exc.path,
                               "message": exc.message}})
        return EXIT_SCHEMA
    except InputError as exc:
        _emit(args, {"error": {"kind": "input", "message": str(exc)}})
        return EXIT_INPUT
    except ResourceError as exc:
        _emit(args, {"error": {"kind": "resource", "message": str(exc)}})
        return EXIT_RESOURCE


if __name__ == "__main__":
    sys.exit(main())
