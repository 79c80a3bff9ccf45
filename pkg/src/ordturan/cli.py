"""Command-line entry point.

Subcommands: build, gen-qr, gen-gd, certify, claim-check, solve, rho-bound,
bounds, verify, report.  Exit code 0 on full pass, 1 on any check failure,
2 on usage errors.  Files written through --out are byte-reproducible for a
fixed configuration (timings go to stdout only).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

from . import catalog, geometry, harness, ordgraph, solver

FORMATS = ("text", "csv", "json")


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    seed: int = 0
    budget_nodes: int = solver.DEFAULT_NODE_BUDGET
    budget_resample: int = geometry.DEFAULT_RESAMPLE_BUDGET
    out: Optional[str] = None
    format: str = "text"
    args: dict = field(default_factory=dict)


def parse_graph_spec(spec: str) -> ordgraph.OrderedGraph:
    """Family strings: P:5, Q:2,2, B:2,9, M:3, Hd:3, Hstair:4,
    pat:1-6,2-3,4-5 (optionally pat:...;n=8), or a graph file path."""
    if ":" not in spec:
        return ordgraph.load_graph(spec)
    fam, _, rest = spec.partition(":")
    fam = fam.lower()
    try:
        if fam == "p":
            return catalog.build_P(int(rest))
        if fam == "q":
            a, b = (int(x) for x in rest.split(","))
            return catalog.build_Q(a, b)
        if fam == "b":
            a, n = (int(x) for x in rest.split(","))
            return catalog.build_B(a, n)
        if fam == "m":
            return catalog.build_M(int(rest))
        if fam == "hd":
            return catalog.build_H_d(int(rest))
        if fam == "hstair":
            return catalog.build_H_stair(int(rest))
        if fam == "pat":
            body, _, tail = rest.partition(";")
            n = None
            if tail.startswith("n="):
                n = int(tail[2:])
            edges = []
            if body:
                for token in body.split(","):
                    u, _, v = token.partition("-")
                    edges.append((int(u), int(v)))
            return catalog.build_pattern(edges, n=n)
    except (ValueError, TypeError) as exc:
        raise ValueError(f"bad graph spec {spec!r}: {exc}") from exc
    raise ValueError(f"unknown graph family in {spec!r}")


def parse_indices(spec: str) -> list[int]:
    """'2..6' or '2,3,5'."""
    if ".." in spec:
        lo, hi = spec.split("..")
        return list(range(int(lo), int(hi) + 1))
    return [int(x) for x in spec.split(",")]


def _witness_family(name: str, params: dict[str, int]) -> Callable[[int], ordgraph.OrderedGraph]:
    fam = name.lower()
    if fam == "b":
        a = params.get("a", 2)
        return lambda ell: catalog.build_B(a, a * ell + 1)
    if fam == "m":
        return catalog.build_M
    if fam == "hd":
        return catalog.build_H_d
    if fam == "p":
        return catalog.build_P
    if fam == "hstair":
        return catalog.build_H_stair
    raise ValueError(f"unknown witness family {name!r}")


def _parse_params(tokens: Sequence[str]) -> dict[str, int]:
    out = {}
    for tok in tokens:
        key, _, val = tok.partition("=")
        if not val:
            raise ValueError(f"expected key=value, got {tok!r}")
        out[key] = int(val)
    return out


def _emit(cfg: RunConfig, text: str, file_text: Optional[str] = None) -> None:
    sys.stdout.write(text if text.endswith("\n") else text + "\n")
    if cfg.out:
        with open(cfg.out, "w") as fh:
            fh.write(file_text if file_text is not None else text)


def _rows_to_format(rows: list[dict], columns: Sequence[str], fmt: str) -> str:
    if fmt == "json":
        return json.dumps(rows, indent=2) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=list(columns))
        writer.writeheader()
        writer.writerows(rows)
        return buf.getvalue()
    lines = []
    for row in rows:
        lines.append("  ".join(f"{c}={row[c]}" for c in columns))
    return "\n".join(lines) + ("\n" if lines else "")


# ---------------------------------------------------------------------------
# subcommand handlers


def _cmd_build(cfg: RunConfig, ns: argparse.Namespace) -> int:
    fam = ns.family.lower()
    params = ns.params
    try:
        if fam == "pattern":
            edges = []
            for tok in params:
                sep = "-" if "-" in tok else ","
                u, _, v = tok.partition(sep)
                edges.append((int(u), int(v)))
            g = catalog.build_pattern(edges, n=ns.n)
        else:
            builders = {
                "p": catalog.build_P,
                "q": catalog.build_Q,
                "b": catalog.build_B,
                "m": catalog.build_M,
                "hd": catalog.build_H_d,
                "hstair": catalog.build_H_stair,
            }
            if fam not in builders:
                raise ValueError(f"unknown family {ns.family!r}")
            g = builders[fam](*(int(p) for p in params))
    except (TypeError, ValueError) as exc:
        raise UsageError(str(exc)) from exc
    payload = ordgraph.dumps_graph(g)
    _emit(cfg, payload, payload)
    return 0


def _cmd_gen_qr(cfg: RunConfig, ns: argparse.Namespace) -> int:
    gm = geometry.gen_quasirandom(ns.n, ns.eps, cfg.seed, resample_budget=cfg.budget_resample)
    payload = geometry.dumps_matching(gm)
    _emit(cfg, payload, payload)
    return 0


def _cmd_gen_gd(cfg: RunConfig, ns: argparse.Namespace) -> int:
    gm = geometry.build_G_d(
        ns.d, ns.n, ns.eps, cfg.seed,
        certify_layers=ns.certify_layers, resample_budget=cfg.budget_resample,
    )
    payload = geometry.dumps_matching(gm)
    _emit(cfg, payload, payload)
    return 0


def _cmd_certify(cfg: RunConfig, ns: argparse.Namespace) -> int:
    gm = geometry.load_matching(ns.file)
    rep = geometry.certify_quasirandom(gm, ns.eps)
    rows = [{
        "passed": rep.passed,
        "n": rep.n,
        "t": rep.t,
        "bound": rep.bound,
        "max_deviation": rep.max_deviation,
        "witness_left": f"({rep.witness_left[0]:.17g}, {rep.witness_left[1]:.17g})",
        "witness_right": f"({rep.witness_right[0]:.17g}, {rep.witness_right[1]:.17g})",
    }]
    text = _rows_to_format(rows, list(rows[0].keys()), cfg.format)
    _emit(cfg, text, text)
    return 0 if rep.passed else 1


def _cmd_claim_check(cfg: RunConfig, ns: argparse.Namespace) -> int:
    if ns.infile:
        sub = geometry.load_matching(ns.infile)
    else:
        gm = geometry.build_G_d(ns.d, ns.n, ns.eps, cfg.seed, resample_budget=cfg.budget_resample)
        view = geometry.to_ordered_graph(gm)
        rep = solver.max_free_greedy(view, geometry.CLAIM_PATTERN, policy="random", seed=cfg.seed)
        kept = set(view.sorted_edges) - set(rep.deleted)
        sub = geometry.subgraph_from_ordered_edges(gm, kept)
    claim = geometry.check_claim(sub, ns.d, ns.n, ns.eps)
    rows = [{
        "passed": claim.passed,
        "edges": claim.edges,
        "bound": f"{claim.bound:.17g}",
        "slack": f"{claim.slack:.17g}",
        "t": f"{claim.t:.17g}",
        "covered_intervals": claim.interval_count,
        "seed": cfg.seed,
    }]
    text = _rows_to_format(rows, list(rows[0].keys()), cfg.format)
    _emit(cfg, text, text)
    return 0 if claim.passed else 1


def _solve_rows(rep: solver.SolveReport, include_time: bool) -> list[dict]:
    row = {
        "optimum": rep.optimum,
        "deleted": json.dumps([list(e) for e in rep.deleted]),
        "status": rep.status,
        "nodes": rep.nodes_explored,
    }
    if include_time:
        row["time"] = f"{rep.wall_time:.6f}"
    if rep.seed is not None:
        row["seed"] = rep.seed
    return [row]


def _cmd_solve(cfg: RunConfig, ns: argparse.Namespace) -> int:
    host = parse_graph_spec(ns.host)
    if ns.mode == "bipartite":
        rep = solver.bipartite_half(host, seed=cfg.seed)
    else:
        pattern = parse_graph_spec(ns.pattern)
        if ns.mode == "greedy":
            rep = solver.max_free_greedy(host, pattern, policy=ns.policy, seed=cfg.seed)
        else:
            rep = solver.min_deletion_exact(host, pattern, budget=cfg.budget_nodes)
    with_time = _solve_rows(rep, include_time=True)
    without_time = _solve_rows(rep, include_time=False)
    cols = list(with_time[0].keys())
    _emit(
        cfg,
        _rows_to_format(with_time, cols, cfg.format),
        _rows_to_format(without_time, [c for c in cols if c != "time"], cfg.format),
    )
    return 0


def _cmd_rho_bound(cfg: RunConfig, ns: argparse.Namespace) -> int:
    fam = _witness_family(ns.family, _parse_params(ns.params))
    pattern = parse_graph_spec(ns.pattern)
    results = solver.rho_upper_from_witness(
        fam, pattern, parse_indices(ns.indices), budget=cfg.budget_nodes
    )
    rows = [
        {
            "index": r.index,
            "optimum": r.optimum,
            "edges": r.edges,
            "ratio": str(r.ratio),
            "certified": r.certified,
        }
        for r in results
    ]
    best = solver.best_certified_ratio(results)
    text = _rows_to_format(rows, ("index", "optimum", "edges", "ratio", "certified"), cfg.format)
    if cfg.format == "text":
        text += f"best_certified_upper_bound={best}\n"
    _emit(cfg, text, text)
    return 0


def _cmd_bounds(cfg: RunConfig, ns: argparse.Namespace) -> int:
    from .densities import bounds_report

    pattern = parse_graph_spec(ns.pattern)
    witness = None
    indices: list[int] = []
    if ns.witness:
        witness = _witness_family(ns.witness, _parse_params(ns.params))
        indices = parse_indices(ns.indices) if ns.indices else []
    rep = bounds_report(
        pattern, name=ns.pattern, witness=witness, witness_name=ns.witness or "witness",
        indices=indices, budget=cfg.budget_nodes,
    )
    rows = [{
        "pattern": rep.pattern,
        "vec_pi": str(rep.vec_pi),
        "pi": str(rep.pi) if rep.pi is not None else "",
        "rho_lower": str(rep.rho_lower),
        "rho_upper": str(rep.rho_upper),
        "lower_provenance": rep.lower_provenance,
        "upper_provenance": rep.upper_provenance,
        "valid": rep.valid,
    }]
    text = _rows_to_format(rows, list(rows[0].keys()), cfg.format)
    _emit(cfg, text, text)
    return 0 if rep.valid else 1


def _cmd_verify(cfg: RunConfig, ns: argparse.Namespace) -> int:
    ids = list(harness.VERIFY_IDS) if "all" in ns.theorems else ns.theorems
    for tid in ids:
        if tid not in harness.VERIFY_IDS:
            raise UsageError(f"unknown theorem id {tid!r}")
    lines = []
    failed_check: Optional[harness.CheckResult] = None
    all_passed = True
    for tid in ids:
        rep = harness.run_verify(
            tid, seed=cfg.seed,
            node_budget=cfg.budget_nodes, resample_budget=cfg.budget_resample,
        )
        for r in rep.results:
            mark = "PASS" if r.passed else "FAIL"
            lines.append(f"[{mark}] {tid} :: {r.name} ({r.elapsed:.2f}s): {r.detail}")
            if not r.passed and failed_check is None:
                failed_check = r
        agg = "PASS" if rep.passed else "FAIL"
        lines.append(f"[{agg}] {tid} aggregate ({rep.elapsed:.2f}s, seed={cfg.seed})")
        all_passed = all_passed and rep.passed
    text = "\n".join(lines) + "\n"
    if failed_check is not None:
        text += "first counterexample: " + json.dumps(
            {"check": failed_check.name, "data": failed_check.counterexample}
        ) + "\n"
    _emit(cfg, text, text)
    return 0 if all_passed else 1


def _cmd_report(cfg: RunConfig, ns: argparse.Namespace) -> int:
    patterns = [(spec, parse_graph_spec(spec)) for spec in ns.patterns]
    rows = harness.report_rows(patterns)
    fmt = "csv" if cfg.format == "text" else cfg.format  # the report is a table
    text = _rows_to_format(rows, harness.REPORT_COLUMNS, fmt)
    if fmt == "csv" and not rows:
        buf = io.StringIO()
        csv.DictWriter(buf, fieldnames=list(harness.REPORT_COLUMNS)).writeheader()
        text = buf.getvalue()
    _emit(cfg, text, text)
    return 0


# ---------------------------------------------------------------------------
# wiring


def _build_parser() -> argparse.ArgumentParser:
    shared = argparse.ArgumentParser(add_help=False)
    shared.add_argument("--seed", type=int, default=0, help="seed for every randomized step")
    shared.add_argument("--budget-nodes", type=int, default=solver.DEFAULT_NODE_BUDGET)
    shared.add_argument("--budget-resample", type=int, default=geometry.DEFAULT_RESAMPLE_BUDGET)
    shared.add_argument("--out", default=None, help="also write the result to this file")
    shared.add_argument("--format", choices=FORMATS, default="text")

    parser = argparse.ArgumentParser(
        prog="ordturan",
        description="ordered-graph invariants, pattern-free optimization, quasirandom matchings",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", parents=[shared], help="emit a catalog graph")
    p.add_argument("family", help="P | Q | B | M | pattern | Hd | Hstair")
    p.add_argument("params", nargs="*", help="family parameters (pattern: edge pairs u-v)")
    p.add_argument("--n", type=int, default=None, help="vertex count override for pattern")
    p.set_defaults(handler=_cmd_build)

    p = sub.add_parser("gen-qr", parents=[shared], help="certified quasirandom layer")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--eps", type=float, required=True)
    p.set_defaults(handler=_cmd_gen_qr)

    p = sub.add_parser("gen-gd", parents=[shared], help="recursive geometric host")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--eps", type=float, required=True)
    p.add_argument("--certify-layers", action="store_true")
    p.set_defaults(handler=_cmd_gen_gd)

    p = sub.add_parser("certify", parents=[shared], help="grid discrepancy certificate")
    p.add_argument("--eps", type=float, required=True)
    p.add_argument("file")
    p.set_defaults(handler=_cmd_certify)

    p = sub.add_parser("claim-check", parents=[shared], help="coverage claim on a pattern-free subgraph")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--eps", type=float, required=True)
    p.add_argument("--in", dest="infile", default=None, help="check this matching file instead")
    p.set_defaults(handler=_cmd_claim_check)

    p = sub.add_parser("solve", parents=[shared], help="max pattern-free subgraph")
    p.add_argument("--host", required=True, help="graph file or family spec")
    p.add_argument("--pattern", help="graph file or family spec")
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--exact", dest="mode", action="store_const", const="exact")
    mode.add_argument("--greedy", dest="mode", action="store_const", const="greedy")
    mode.add_argument("--bipartite", dest="mode", action="store_const", const="bipartite")
    p.add_argument("--policy", choices=("given", "random", "degree"), default="given")
    p.set_defaults(handler=_cmd_solve, mode="exact")

    p = sub.add_parser("rho-bound", parents=[shared], help="certified density upper bounds from witnesses")
    p.add_argument("--family", required=True)
    p.add_argument("--params", nargs="*", default=[], help="family parameters as key=value")
    p.add_argument("--pattern", required=True)
    p.add_argument("--indices", required=True, help="e.g. 2..6 or 2,4,8")
    p.set_defaults(handler=_cmd_rho_bound)

    p = sub.add_parser("bounds", parents=[shared], help="density bracket for a pattern")
    p.add_argument("--pattern", required=True)
    p.add_argument("--witness", default=None)
    p.add_argument("--params", nargs="*", default=[])
    p.add_argument("--indices", default=None)
    p.set_defaults(handler=_cmd_bounds)

    p = sub.add_parser("verify", parents=[shared], help="run named verification suites")
    p.add_argument("theorems", nargs="+", help=f"ids from {harness.VERIFY_IDS} or 'all'")
    p.set_defaults(handler=_cmd_verify)

    p = sub.add_parser("report", parents=[shared], help="CSV table of pattern invariants")
    p.add_argument("patterns", nargs="*", help="pattern specs, e.g. Q:2,2 M:3")
    p.set_defaults(handler=_cmd_report)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = _build_parser()
    ns = parser.parse_args(argv)
    cfg = RunConfig(
        command=ns.command,
        seed=ns.seed,
        budget_nodes=ns.budget_nodes,
        budget_resample=ns.budget_resample,
        out=ns.out,
        format=ns.format,
    )
    if ns.command == "solve" and ns.mode != "bipartite" and not ns.pattern:
        parser.error("solve requires --pattern unless --bipartite")
    try:
        return ns.handler(cfg, ns)
    except (UsageError, ValueError, FileNotFoundError) as exc:
        sys.stderr.write(f"usage error: {exc}\n")
        return 2
    except geometry.ResampleBudgetError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
