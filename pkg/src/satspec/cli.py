"""Command-line entry point and JSON report schema.

Exit status: 0 when every theorem check passes, 1 when at least one fails
(the failing reports carry their certificates), 2 on usage or parse errors.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from datetime import datetime, timezone
from pathlib import Path
from typing import Any, Optional, Sequence

from . import __version__
from .cliques import is_saturated
from .enumeration import enum_saturated, min_rho_saturated, sample_saturated
from .graph_core import MOORE_KINDS, make_moore, make_split_star, split_star_edge_count
from .graph6 import Graph6Error, decode, encode
from .spectral import ASSERT_TOL, b_matrix_summary, eig_sym, kkko_lower_bound, rho_split_star
from .verify import run_all

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE = 0, 1, 2
FLOAT_DIGITS = 12


class UsageError(Exception):
    pass


def round_floats(obj: Any) -> Any:
    """Round every float to 12 significant digits so JSON output is reproducible."""
    if isinstance(obj, bool) or obj is None:
        return obj
    if isinstance(obj, float):
        if not math.isfinite(obj):
            return None
        return float(f"{obj:.{FLOAT_DIGITS}g}")
    if isinstance(obj, dict):
        return {str(k): round_floats(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [round_floats(v) for v in obj]
    if hasattr(obj, "item"):  # numpy scalars
        return round_floats(obj.item())
    return obj


def dumps(report: dict) -> str:
    return json.dumps(round_floats(report), indent=2, sort_keys=False) + "\n"


def build_report(config: dict, timestamp: str, records=(), reports=(), extra=None) -> dict:
    failed = [rep for rep in reports if not rep.holds]
    summary = {
        "counts": {
            "records": len(records),
            "reports": len(reports),
            "passed": len(reports) - len(failed),
            "failed": len(failed),
            "suspicious": sum(rep.suspicious for rep in reports),
        },
        "min_rho": min((rec.rho for rec in records), default=None),
        "violations": [rep.to_json() for rep in failed],
    }
    if extra:
        summary.update(extra)
    return {
        "header": {"version": __version__, "config": config, "timestamp": timestamp},
        "records": [rec.to_json() for rec in records],
        "reports": [rep.to_json() for rep in reports],
        "summary": summary,
    }


def _read_graphs(path: str):
    text = sys.stdin.read() if path == "-" else Path(path).read_text()
    graphs = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if not line:
            continue
        try:
            graphs.append(decode(line))
        except Graph6Error as exc:
            raise UsageError(f"{path}:{lineno}: {exc}") from exc
    return graphs


def _write(args, text: str) -> None:
    if args.output and args.output != "-":
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)


def _config(args) -> dict:
    return {k: v for k, v in sorted(vars(args).items()) if k != "func"}


def _timestamp(args) -> str:
    return args.timestamp or datetime.now(timezone.utc).isoformat(timespec="seconds")


# -- subcommands ---------------------------------------------------------------


def cmd_construct(args) -> int:
    if args.split_star:
        n, r = args.split_star
        try:
            g = make_split_star(n, r)
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
    else:
        g = make_moore(args.moore)
    _write(args, encode(g) + "\n")
    return EXIT_OK


def cmd_check(args) -> int:
    graphs = _read_graphs(args.file)
    reports = []
    skipped = []
    for g in graphs:
        if g.n <= args.r:
            skipped.append(encode(g))
            continue
        verdict = is_saturated(g, args.r)
        if not verdict.is_saturated:
            skipped.append(encode(g))
            continue
        reports.extend(run_all(g, args.r, verdict, tol=args.tol))
    report = build_report(_config(args), _timestamp(args), reports=reports,
                          extra={"not_saturated": skipped})
    _write(args, dumps(report))
    return EXIT_VIOLATION if report["summary"]["counts"]["failed"] else EXIT_OK


def cmd_spectra(args) -> int:
    graphs = _read_graphs(args.file)
    spectra = []
    for g in graphs:
        s = eig_sym(g)
        entry = {
            "graph6": encode(g),
            "n": g.n,
            "m": g.m,
            "rho": s.rho,
            "eigenvalues": list(s.eigenvalues),
            "perron_vector": list(s.perron_vector),
            "residual": s.residual,
        }
        if args.r is not None:
            b = b_matrix_summary(g, args.r, s)
            entry.update(b_rho=b.b_rho, b_nonneg=b.b_nonneg,
                         f_lambda1=b.f_lambda1, f_lambdan=b.f_lambdan)
        spectra.append(entry)
    report = build_report(_config(args), _timestamp(args), extra={"spectra": spectra})
    _write(args, dumps(report))
    return EXIT_OK


def _records_report(args, records, extra=None) -> int:
    reports = [rep for rec in records for rep in rec.reports]
    report = build_report(_config(args), _timestamp(args), records, reports, extra)
    if args.g6_out:
        Path(args.g6_out).write_text("".join(rec.canonical_g6 + "\n" for rec in records))
    _write(args, dumps(report))
    return EXIT_VIOLATION if report["summary"]["counts"]["failed"] else EXIT_OK


def cmd_enumerate(args) -> int:
    progress = None
    if args.progress:
        def progress(done, total):
            print(f"shard {done}/{total}", file=sys.stderr)
    try:
        records = enum_saturated(args.n, args.r, allow_n8=args.allow_n8, progress=progress)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    for rec in records:
        rec.reports = run_all(rec.graph, args.r, tol=args.tol)
    best = min_rho_saturated(args.n, args.r, records)
    extra = {"minimizers": [rec.canonical_g6 for rec in best.minimizers],
             "min_rho_conforms": best.conforms(args.r)}
    return _records_report(args, records, extra)


def cmd_sample(args) -> int:
    try:
        records = sample_saturated(args.n, args.r, args.trials, args.seed)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    return _records_report(args, records)


def cmd_bounds(args) -> int:
    n, r = args.n, args.r
    if not 2 <= r < n:
        raise UsageError(f"bounds need n > r >= 2, got n={n}, r={r}")
    table = {
        "n": n,
        "r": r,
        "rho_split_star": rho_split_star(n, r - 1),
        "kkko_lower_bound": kkko_lower_bound(n, r) if r >= 3 else None,
        "split_star_edges": split_star_edge_count(n, r - 1),
        "degree_square_rhs": (r - 1) * (n - r + 1) * n,
    }
    if args.table:
        width = max(len(k) for k in table)
        _write(args, "".join(f"{k:<{width}}  {round_floats(v)}\n" for k, v in table.items()))
    else:
        _write(args, dumps(build_report(_config(args), _timestamp(args), extra={"bounds": table})))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="satspec",
                                     description="Spectral checks for K_{r+1}-saturated graphs.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, tol=True):
        p.add_argument("-o", "--output", help="write output here instead of stdout")
        p.add_argument("--timestamp", help="fixed report timestamp (for reproducible output)")
        if tol:
            p.add_argument("--tol", type=float, default=ASSERT_TOL,
                           help="floating tolerance for spectral comparisons")

    p = sub.add_parser("construct", help="emit an extremal graph as graph6")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--split-star", nargs=2, type=int, metavar=("N", "R"))
    group.add_argument("--moore", choices=MOORE_KINDS)
    common(p, tol=False)
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("check", help="run every theorem check on graphs from a graph6 file")
    p.add_argument("file")
    p.add_argument("--r", type=int, required=True)
    common(p)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("spectra", help="adjacency spectra of graphs from a graph6 file")
    p.add_argument("file")
    p.add_argument("--r", type=int, help="also report B = A^2 - (r-2)A data")
    common(p, tol=False)
    p.set_defaults(func=cmd_spectra)

    p = sub.add_parser("enumerate", help="all K_{r+1}-saturated graphs of order n")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--allow-n8", action="store_true", help="permit the slow n = 8 sweep")
    p.add_argument("--progress", action="store_true", help="report shard progress on stderr")
    p.add_argument("--g6-out", help="write canonical graph6 lines here")
    common(p)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("sample", help="random saturated graphs by greedy completion")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--g6-out", help="write graph6 lines here")
    common(p)
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("bounds", help="closed-form values for given n and r")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--table", action="store_true", help="plain text table instead of JSON")
    common(p, tol=False)
    p.set_defaults(func=cmd_bounds)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        return args.func(args)
    except (UsageError, Graph6Error, OSError) as exc:
        print(f"satspec: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except Exception as exc:  # keep the exit-code contract total
        print(f"satspec: internal error: {exc!r}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
