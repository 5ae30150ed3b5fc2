"""Batch front-end: ``stpef build | verify | bench``.

Exit codes: 0 on success (for ``verify``: every check passed), 1 when a
verification fails or the input is rejected, 2 for usage errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Optional, Sequence

from . import formulations as fm
from .graph import GraphError, Multigraph
from .graphio import dump_json, load_graph
from .planar import NonPlanarError, PlanarizerStrategy, is_planar
from .polyhedra import ExtForm, FormulationError
from .surface import EmbeddingError, RotationSystem, euler_genus
from .verify import (
    BENCH_METHODS,
    FAMILIES,
    VerificationError,
    bench_csv,
    bench_family,
    bench_summary,
    verify_nesubp,
    verify_stp_exact,
    verify_stp_sampled,
)

METHODS = ("martin", "williams", "subp", "nesubp", "genus", "kapex")


class CliError(Exception):
    pass


def _vertex_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip() != ""]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated vertex indices, got {text!r}") from None


def _method_list(text: str) -> list[str]:
    items = [t.strip() for t in text.split(",") if t.strip()]
    bad = [t for t in items if t not in BENCH_METHODS]
    if bad or not items:
        raise argparse.ArgumentTypeError(f"methods must be drawn from {', '.join(BENCH_METHODS)}")
    return items


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="stpef", description="Build and verify spanning tree extended formulations.")
    sub = parser.add_subparsers(dest="command", required=True)

    b = sub.add_parser("build", help="construct a formulation from a graph JSON file")
    b.add_argument("--input", required=True, help="graph JSON")
    b.add_argument("--method", required=True, choices=METHODS)
    b.add_argument("--apex-set", type=_vertex_list, default=None, help="vertex set X, e.g. 0,4")
    b.add_argument("--planarizer", choices=("greedy-degree", "bfs-layers"), default="bfs-layers")
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--out", required=True, help="formulation JSON to write")

    v = sub.add_parser("verify", help="check a formulation file against a graph with an oracle")
    v.add_argument("--ef", required=True, help="formulation JSON")
    v.add_argument("--graph", required=True, help="graph JSON")
    v.add_argument("--mode", required=True, choices=("exact", "sampled", "nesubp"))
    v.add_argument("--trials", type=int, default=100)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--out", default=None, help="report JSON (default: stdout)")
    v.add_argument("--timing", action="store_true", help="include wall-clock seconds in the report")

    t = sub.add_parser("bench", help="tabulate formulation sizes over a graph family")
    t.add_argument("--family", required=True, choices=FAMILIES)
    t.add_argument("--kmin", type=int, required=True)
    t.add_argument("--kmax", type=int, required=True)
    t.add_argument("--methods", type=_method_list, default=["martin", "genus"])
    t.add_argument("--seed", type=int, default=0)
    t.add_argument("--out", default=None, help="CSV file (default: stdout)")
    t.add_argument("--timing", action="store_true", help="add build-time columns")
    return parser


def _size_report(method: str, g: Multigraph, form: ExtForm, genus: Optional[int]) -> dict:
    report = fm.SizeReport(method, g.n, g.m, genus, [], {method: form.size()}, 2 * g.n * g.m)
    return report.to_json()


def _build(g: Multigraph, rot: Optional[RotationSystem], genus: Optional[int], args: argparse.Namespace) -> tuple[ExtForm, dict]:
    if rot is not None:
        genus = euler_genus(g, rot)
    method = args.method
    if method == "subp":
        form = fm.subp_ef(g)
        return form, _size_report(method, g, form, genus)
    if method == "martin":
        form = fm.martin_stp(g)
        return form, _size_report(method, g, form, genus)
    if method == "williams":
        if rot is not None and genus == 0:
            form = fm.williams_stp(g, rot)
        else:
            if not is_planar(g).planar:
                raise CliError("graph is non-planar; williams needs a planar graph")
            form = fm.williams_stp(g)
        return form, _size_report(method, g, form, 0)
    if method == "nesubp":
        if args.apex_set:
            form = fm.nesubp_deletion_ef(g, args.apex_set)
        elif is_planar(g).planar:
            form = fm.nesubp_planar_ef(g)
        else:
            raise CliError("graph is non-planar; pass --apex-set to delete a planarizing set")
        return form, _size_report(method, g, form, genus)
    if method == "genus":
        if args.apex_set:
            form, rep = fm.bounded_genus_stp(g, genus=genus, removed=args.apex_set)
        else:
            strategy = PlanarizerStrategy(args.planarizer, args.seed, genus=genus)
            form, rep = fm.bounded_genus_stp(g, genus=genus, strategy=strategy)
        return form, rep.to_json()
    if method == "kapex":
        if args.apex_set is None:
            raise CliError("kapex needs --apex-set")
        form, rep = fm.kapex_stp(g, args.apex_set)
        return form, rep.to_json()
    raise CliError(f"unknown method {method}")


def cmd_build(args: argparse.Namespace) -> int:
    g, rot, genus = load_graph(args.input)
    form, report = _build(g, rot, genus, args)
    Path(args.out).write_text(dump_json(form.to_json()), encoding="utf-8")
    sys.stdout.write(dump_json(report))
    return 0


def cmd_verify(args: argparse.Namespace) -> int:
    g, _, _ = load_graph(args.graph)
    try:
        data = json.loads(Path(args.ef).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise CliError(f"{args.ef}: invalid JSON ({exc})") from None
    form = ExtForm.from_json(data)
    gid = Path(args.graph).stem
    if args.mode == "exact":
        report = verify_stp_exact(form, g, graph_id=gid, seed=args.seed)
    elif args.mode == "sampled":
        report = verify_stp_sampled(form, g, args.trials, args.seed, graph_id=gid)
    else:
        report = verify_nesubp(form, g, seed=args.seed, graph_id=gid)
    text = report.dumps(include_timing=args.timing)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
        sys.stdout.write(f"{report.status}\n")
    else:
        sys.stdout.write(text)
    return 0 if report.passed else 1


def cmd_bench(args: argparse.Namespace) -> int:
    rows = bench_family(args.family, args.kmin, args.kmax, args.methods, args.seed, args.timing)
    text = bench_csv(rows, args.methods, args.timing)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
        sys.stdout.write(dump_json({"rows": len(rows), **bench_summary(rows)}))
    else:
        sys.stdout.write(text)
    return 0


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handlers = {"build": cmd_build, "verify": cmd_verify, "bench": cmd_bench}
    try:
        return handlers[args.command](args)
    except (CliError, NonPlanarError) as exc:
        msg = str(exc)
        if "non-planar" not in msg and isinstance(exc, NonPlanarError):
            msg = f"non-planar: {msg}"
        sys.stderr.write(f"stpef: error: {msg}\n")
        return 1
    except (GraphError, EmbeddingError, FormulationError, VerificationError, OSError, ValueError) as exc:
        sys.stderr.write(f"stpef: error: {exc}\n")
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
