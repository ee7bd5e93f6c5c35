"""Command-line front end: every pipeline stage behind one reproducible tool.

Each run prints a single report to stdout: JSON by default, TSV with
--format tsv (tabs, no quoting, LF endings).  The envelope carries the
command name, field parameters, and wall time; payloads are documented by
the schemas under docs/schemas/.  Exit status: 0 on success, 1 on domain
errors (degenerate parameters, unsupported degree), 2 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
import time

from . import coset, curves, oracle
from .gf2m import make_field

DEFAULT_SEED = 20260810


def _hex(value: int) -> str:
    return f"0x{value:x}"


def _parse_element(text: str) -> int:
    try:
        return int(text, 16)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a hex element: {text!r}")


def _profile_payload(profile: curves.TraceProfile, params: curves.CurveParams) -> dict:
    return {
        "tr_a": params.trace_class_a,
        "b": _hex(params.b),
        "lambda": _hex(params.lam),
        "j_invariant": _hex(params.j_invariant),
        "n": list(profile.n),
        "t1": profile.t1,
        "t3": profile.t3,
        "t5": profile.t5,
        "tg": profile.tg,
        "t_combined": profile.t_combined,
        "t_prym": profile.t_prym,
    }


def _cmd_field(args) -> dict:
    field = make_field(args.m, args.modulus)
    return {"m": field.m, "modulus": _hex(field.modulus), "q": field.q}


def _cmd_nab(args) -> dict:
    field = make_field(args.m, args.modulus)
    if (args.a is None) == (args.tr_a is None):
        raise UsageError("give exactly one of --tr-a or --a")
    if args.a is not None:
        value = coset.N_of_general(field, args.a, args.b)
        return {"a": _hex(args.a), "b": _hex(args.b), "N": value}
    value = coset.N_of(field, args.tr_a, args.b)
    return {"tr_a": args.tr_a, "b": _hex(args.b), "N": value}


def _cmd_table(args) -> dict:
    table = coset.distribution(args.m, args.modulus)
    payload = table.to_json_dict()
    payload["_tsv"] = table.to_tsv()
    return payload


def _cmd_bounds(args) -> dict:
    report = coset.bounds(args.m)
    return {
        "q": report.q,
        "weil": list(report.weil),
        "refined_even": list(report.refined_even),
        "heuristic_even": list(report.heuristic_even),
    }


def _cmd_gamma(args) -> dict:
    gamma = coset.load_gamma(args.gamma_file)
    report = coset.gamma_report(args.m, gamma)
    residual_nonzero = {str(l): r for l, r in report.residual.items() if r}
    missing = [coset.GAMMA_BASE + 2 * l for l, c in report.histogram.items() if c == 0]
    return {
        "base_value": coset.GAMMA_BASE,
        "histogram": {str(l): c for l, c in report.histogram.items()},
        "residual_nonzero": residual_nonzero,
        "missing_values": missing,
    }


def _cmd_traces(args) -> dict:
    field = make_field(args.m, args.modulus)
    if args.tr_a is not None:
        params = curves.curve_params(field, args.tr_a, args.b)
        return _profile_payload(curves.curve_traces(params), params)
    out = {}
    for cls in (0, 1):
        params = curves.curve_params(field, cls, args.b)
        out[f"tr_a_{cls}"] = _profile_payload(curves.curve_traces(params), params)
    return out


def _cmd_split(args) -> dict:
    field = make_field(args.m, args.modulus)
    params = curves.curve_params(field, args.tr_a, args.b)
    count = curves.split_count(args.subset, params)
    interval = curves.split_interval(args.subset, field, args.tr_a)
    return {
        "subset": args.subset,
        "tr_a": args.tr_a,
        "b": _hex(args.b),
        "M": count,
        "interval": list(interval) if interval else None,
    }


def _cmd_verify(args) -> dict:
    field = make_field(args.m, args.modulus)
    q = field.q
    if args.exhaustive and args.samples is not None:
        raise UsageError("--exhaustive and --samples are mutually exclusive")
    exhaustive = args.exhaustive or (args.samples is None and q <= 128)
    if exhaustive:
        pairs = [(cls, b) for cls in (0, 1) for b in range(q) if b != 1]
    else:
        count = args.samples if args.samples is not None else 50
        rng = random.Random(args.seed)
        pairs = []
        while len(pairs) < count:
            cls, b = rng.randrange(2), rng.randrange(q)
            if b != 1:
                pairs.append((cls, b))
    mismatches = [
        {"tr_a": cls, "b": _hex(b)}
        for cls, b in pairs
        if coset.N_of(field, cls, b) != oracle.brute_N(field, cls, b, jobs=args.jobs)
    ]
    payload = {
        "mode": "exhaustive" if exhaustive else "sampled",
        "seed": None if exhaustive else args.seed,
        "checked": len(pairs),
        "mismatches": mismatches,
    }
    if args.m in (5, 7):
        boundary = coset.calibrate_boundary(args.m)
        payload["boundary"] = {str(cls): v for cls, v in boundary.items()}
    if mismatches:
        raise DomainFailure("oracle disagreement", payload)
    return payload


def _cmd_covering_radius(args) -> dict:
    report = oracle.covering_radius(args.m, allow_large=args.allow_large)
    return report.to_json_dict()


class UsageError(Exception):
    pass


class DomainFailure(Exception):
    """A check ran to completion and failed; carries the payload."""

    def __init__(self, message, payload):
        super().__init__(message)
        self.payload = payload


def _flatten(prefix: str, value, rows: list[tuple[str, str]]) -> None:
    if isinstance(value, dict):
        for key, sub in value.items():
            _flatten(f"{prefix}.{key}" if prefix else str(key), sub, rows)
    elif isinstance(value, (list, tuple)):
        rows.append((prefix, ",".join(str(v) for v in value)))
    else:
        rows.append((prefix, str(value)))


def _emit(report: dict, fmt: str) -> None:
    tsv_block = report["payload"].pop("_tsv", None)
    if fmt == "json":
        sys.stdout.write(json.dumps(report) + "\n")
        return
    lines = []
    for key in ("command", "m", "modulus", "elapsed_s"):
        lines.append(f"{key}\t{report[key]}")
    if tsv_block is not None:
        sys.stdout.write("\n".join(lines) + "\n" + tsv_block)
        return
    rows: list[tuple[str, str]] = []
    _flatten("", report["payload"], rows)
    for key, value in rows:
        lines.append(f"{key}\t{value}")
    sys.stdout.write("\n".join(lines) + "\n")


_COMMANDS = {
    "field": _cmd_field,
    "nab": _cmd_nab,
    "table": _cmd_table,
    "bounds": _cmd_bounds,
    "gamma": _cmd_gamma,
    "traces": _cmd_traces,
    "split": _cmd_split,
    "verify": _cmd_verify,
    "covering-radius": _cmd_covering_radius,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bch3",
        description="coset weight invariants of triple-error-correcting BCH codes",
    )
    parser.add_argument("--format", choices=("json", "tsv"), default="json")
    parser.add_argument(
        "--jobs",
        type=int,
        default=int(os.environ.get("BCH3_JOBS", "1")),
        help="worker count for the exhaustive checks (results are identical for any value)",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, **kwargs):
        p = sub.add_parser(name, **kwargs)
        p.add_argument("--m", type=int, required=True)
        return p

    p = add("field", help="validate and print a field specification")
    p.add_argument("--modulus", type=_parse_element, default=None)

    p = add("nab", help="the weight-4 invariant for one parameter pair")
    p.add_argument("--modulus", type=_parse_element, default=None)
    p.add_argument("--tr-a", type=int, choices=(0, 1), default=None)
    p.add_argument("--a", type=_parse_element, default=None)
    p.add_argument("--b", type=_parse_element, required=True)

    p = add("table", help="full value distribution for one field size")
    p.add_argument("--modulus", type=_parse_element, default=None)

    add("bounds", help="value enclosures for one field size")

    p = add("gamma", help="compare the m=13 histogram against the reference profile")
    p.add_argument("--gamma-file", default=None)

    p = add("traces", help="fibre counts and Frobenius traces for one parameter")
    p.add_argument("--modulus", type=_parse_element, default=None)
    p.add_argument("--b", type=_parse_element, required=True)
    p.add_argument("--tr-a", type=int, choices=(0, 1), default=None)

    p = add("split", help="complete-splitting pair count for a cover subset")
    p.add_argument("--modulus", type=_parse_element, default=None)
    p.add_argument("--b", type=_parse_element, required=True)
    p.add_argument("--subset", choices=sorted(curves.SUBSETS), required=True)
    p.add_argument("--tr-a", type=int, choices=(0, 1), default=0)

    p = add("verify", help="cross-check the closed form against the exhaustive oracle")
    p.add_argument("--modulus", type=_parse_element, default=None)
    p.add_argument("--exhaustive", action="store_true")
    p.add_argument("--samples", type=int, default=None)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)

    p = add("covering-radius", help="exact covering radius by syndrome BFS")
    p.add_argument("--allow-large", action="store_true")

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handler = _COMMANDS[args.command]
    start = time.perf_counter()
    try:
        payload = handler(args)
        failed = False
    except UsageError as exc:
        parser.error(str(exc))  # exits 2
    except DomainFailure as exc:
        payload = exc.payload
        failed = True
    except (ValueError, ZeroDivisionError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1
    elapsed = time.perf_counter() - start
    modulus = payload.get("modulus")
    if modulus is None and getattr(args, "modulus", None) is not None:
        modulus = _hex(args.modulus)
    if modulus is None and hasattr(args, "m"):
        try:
            modulus = _hex(make_field(args.m).modulus)
        except ValueError:
            modulus = None
    report = {
        "command": args.command,
        "m": args.m,
        "modulus": modulus,
        "elapsed_s": round(elapsed, 6),
        "payload": payload,
    }
    _emit(report, args.format)
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
