"""Command-line front end: analyze one instance, sweep a radicand range, or
re-verify a serialized report.

Exit codes: 0 free, 10 not free, 20 wild, 2 input/schema error, 3 resource
bound exceeded.  Sweeps exit 0 on success; verify exits 0 on pass and 1 on a
failed verification.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys

from .basefield import DEFAULT_MAX_NORM
from .errors import RadfreeError, ResourceLimitError, SchemaError
from .report import (
    EXIT_INPUT_ERROR,
    EXIT_RESOURCE,
    analyze,
    canonical_json,
    parse_base,
    parse_kelem,
    render_text,
    verify_report,
)

CHECKPOINT_SCHEMA = "radfree-checkpoint/1"


def _max_norm_default() -> int:
    env = os.environ.get("RADFREE_MAX_NORM")
    return int(env) if env else DEFAULT_MAX_NORM


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="radfree",
        description="Freeness of rings of integers in tame degree-p radical "
                    "extensions over the associated order")
    sub = ap.add_subparsers(dest="command", required=True)

    pa = sub.add_parser("analyze", help="analyze a single extension K(a^(1/p))")
    pa.add_argument("--base", default="Q", help="Q or Qsqrt<-d> (e.g. Qsqrt-5)")
    pa.add_argument("--p", type=int, required=True, help="odd prime degree")
    pa.add_argument("--a", required=True,
                    help="radicand, 'x+y*w' with w the quadratic integral generator")
    pa.add_argument("--format", choices=("json", "text", "csv"), default="text")
    pa.add_argument("--max-norm", type=int, default=None,
                    help="norm factorization bound (default 2^64; "
                         "env RADFREE_MAX_NORM overrides)")

    ps = sub.add_parser("sweep", help="analyze every radicand in a range")
    ps.add_argument("--base", default="Q")
    ps.add_argument("--p", type=int, required=True)
    ps.add_argument("--a-min", type=int, required=True)
    ps.add_argument("--a-max", type=int, required=True)
    ps.add_argument("--format", choices=("csv", "json"), default="csv")
    ps.add_argument("--out", default=None, help="output file (default stdout)")
    ps.add_argument("--checkpoint", default=None,
                    help="checkpoint file for resumable sweeps (requires --out)")
    ps.add_argument("--max-norm", type=int, default=None)

    pv = sub.add_parser("verify", help="re-verify a serialized analysis report")
    pv.add_argument("report", help="path to a JSON report from analyze")
    return ap


def _cmd_analyze(args) -> int:
    field = parse_base(args.base)
    a = parse_kelem(field, args.a)
    max_norm = args.max_norm if args.max_norm else _max_norm_default()
    report, code = analyze(field, args.p, a, max_norm)
    if args.format == "json":
        sys.stdout.write(canonical_json(report))
    elif args.format == "csv":
        sys.stdout.write("a,tame,verdict,generator_hash\n")
        sys.stdout.write(_sweep_row(args.a, report) + "\n")
    else:
        sys.stdout.write(render_text(report))
    return code


def _generator_hash(report: dict) -> str:
    gen = report.get("freeness", {}).get("generator")
    if gen is None:
        return ""
    blob = json.dumps(gen["coords"], sort_keys=True).encode()
    return hashlib.sha256(blob).hexdigest()[:16]


def _sweep_row(a_str: str, report: dict) -> str:
    tame = report["tameness"]["tame"]
    return f"{a_str},{str(tame).lower()},{report['verdict']},{_generator_hash(report)}"


def _load_checkpoint(path: str, params: dict) -> int | None:
    if not os.path.exists(path):
        return None
    with open(path) as fh:
        ck = json.load(fh)
    if ck.get("schema") != CHECKPOINT_SCHEMA:
        raise SchemaError(f"checkpoint schema {ck.get('schema')!r} unsupported")
    if ck.get("params") != params:
        raise SchemaError("checkpoint parameters do not match this sweep")
    return int(ck["next_a"])


def _save_checkpoint(path: str, params: dict, next_a: int):
    tmp = f"{path}.tmp"
    with open(tmp, "w") as fh:
        json.dump({"schema": CHECKPOINT_SCHEMA, "params": params,
                   "next_a": next_a}, fh, sort_keys=True)
        fh.write("\n")
    os.replace(tmp, path)


def _cmd_sweep(args) -> int:
    from .errors import DegenerateExtensionError

    field = parse_base(args.base)
    max_norm = args.max_norm if args.max_norm else _max_norm_default()
    params = {"base": args.base, "p": args.p, "a_min": args.a_min,
              "a_max": args.a_max, "format": args.format, "max_norm": max_norm}
    if args.checkpoint and not args.out:
        raise SchemaError("--checkpoint requires --out")

    start = args.a_min
    if args.checkpoint:
        resumed = _load_checkpoint(args.checkpoint, params)
        if resumed is not None:
            start = resumed

    out = open(args.out, "a") if args.out else sys.stdout
    try:
        if args.format == "csv" and start == args.a_min:
            out.write("a,tame,verdict,generator_hash\n")
        for a_int in range(start, args.a_max + 1):
            try:
                report, _ = analyze(field, args.p, field.elem(a_int), max_norm)
            except DegenerateExtensionError:
                continue     # p-th powers are inadmissible, no row
            if args.format == "csv":
                out.write(_sweep_row(str(a_int), report) + "\n")
            else:
                row = {"a": a_int, "tame": report["tameness"]["tame"],
                       "verdict": report["verdict"],
                       "generator_hash": _generator_hash(report)}
                out.write(json.dumps(row, sort_keys=True) + "\n")
            out.flush()
            if args.checkpoint:
                _save_checkpoint(args.checkpoint, params, a_int + 1)
    finally:
        if args.out:
            out.close()
    return 0


def _cmd_verify(args) -> int:
    with open(args.report) as fh:
        try:
            report = json.load(fh)
        except json.JSONDecodeError as exc:
            raise SchemaError(f"report is not valid JSON: {exc}") from exc
    ok, problems = verify_report(report)
    if ok:
        print("PASS: report verifies against recomputation")
        return 0
    for p in problems:
        print(f"FAIL: {p}", file=sys.stderr)
    return 1


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "analyze":
            return _cmd_analyze(args)
        if args.command == "sweep":
            return _cmd_sweep(args)
        return _cmd_verify(args)
    except ResourceLimitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except (RadfreeError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
