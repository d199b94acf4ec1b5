"""Command-line interface.

Subcommands mirror the library modules: instance generation, counting,
DPLL and SLS solving, ensemble construction, acceptance-probability
estimation, and the benchmark sweeps.  All randomized commands take a
--seed and reproduce their output byte for byte.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

import numpy as np

from . import bench, counting, dpll, localsearch
from ._backend import backend_name, kernels
from . import _pure
from .cnf import Formula, parse_dimacs, write_dimacs
from .ensemble import EnsembleSpec, build_ensemble, estimate_p_r1
from .generator import GenSpec, alpha_to_m, generate
from .localsearch import SlsParams
from .rng import stream_seed

_ALG_ALIASES = {
    "gwsat": "gwsat",
    "walksat": "walksat",
    "anovelty+": "adaptive-novelty-plus",
    "adaptive-novelty-plus": "adaptive-novelty-plus",
}


def _read_formula(path: str | None, strict: bool = True) -> Formula:
    text = sys.stdin.read() if path in (None, "-") else Path(path).read_text()
    return parse_dimacs(text, strict=strict)


def _resolve_m(args) -> int:
    if args.m is not None:
        return args.m
    if args.alpha is not None:
        return alpha_to_m(args.alpha, args.n)
    raise SystemExit("one of --m or --alpha is required")


def _cmd_generate(args) -> int:
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    m = _resolve_m(args)
    manifest_lines = []
    for i in range(args.count):
        seed = stream_seed(args.seed, i)
        f = generate(GenSpec(n=args.n, m=m, seed=seed))
        name = f"inst_{i:05d}.cnf"
        (out_dir / name).write_text(write_dimacs(f))
        manifest_lines.append(json.dumps(
            {"n": args.n, "m": m, "seed": seed, "file": name}, sort_keys=True))
    (out_dir / "manifest.jsonl").write_text("\n".join(manifest_lines) + "\n")
    print(f"wrote {args.count} instances to {out_dir}")
    return 0


def _cmd_count(args) -> int:
    f = _read_formula(args.file)
    res = counting.count_solutions(f, cap=args.cap)
    print(json.dumps({"count": res.count, "capped": res.capped}))
    return 0


def _cmd_energy_states(args) -> int:
    f = _read_formula(args.file)
    count = counting.count_energy_states(f, args.k)
    print(json.dumps({"count": count, "capped": False}))
    return 0


def _cmd_dpll(args) -> int:
    f = _read_formula(args.file)
    record = args.tree is not None
    cfg = dpll.DpllConfig(
        value_order=args.value_order,
        seed=args.seed,
        unit_rule=args.unit_prop == "on",
        record_tree=record,
    )
    out = dpll.solve(f, cfg)
    print(json.dumps({"status": "SAT" if out.satisfiable else "UNSAT",
                      "calls": out.calls}))
    if record:
        tree = out.tree
        labels = "depth"
        if args.annotate == "excited":
            dpll.annotate_excited(tree, f)
            labels = "excited"
        text = dpll.export_tree(tree, args.tree, labels=labels)
        Path(args.tree_out).write_text(text)
    return 0


def _cmd_sls(args) -> int:
    f = _read_formula(args.file)
    algorithm = _ALG_ALIASES[args.alg]
    for run_idx in range(args.runs):
        seed = stream_seed(args.seed, run_idx)
        params = SlsParams(
            algorithm=algorithm, p=args.p, wp=args.wp,
            max_flips=args.max_flips, tries=args.tries, seed=seed,
        )
        res = localsearch.run(f, params)
        print(json.dumps({"found": res.found, "flips": res.flips,
                          "try": res.tries_used, "seed": seed}))
    return 0


def _cmd_ensemble(args) -> int:
    kind = {"r1": "r1", "sat": "sat", "any": "any"}[args.kind]
    spec = EnsembleSpec.from_alpha(
        kind=kind, n=args.n, alpha=args.alpha, target_count=args.count,
        master_seed=args.seed, max_attempts=args.max_attempts,
    )
    records, stats = build_ensemble(spec, workers=args.workers)
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    manifest_lines = []
    for rec in records:
        name = f"{kind}_{rec.index:05d}.cnf"
        (out_dir / name).write_text(write_dimacs(rec.formula))
        manifest_lines.append(json.dumps({
            "index": rec.index, "seed": rec.seed, "n": rec.formula.n,
            "m": rec.formula.m, "r": rec.r, "r_capped": rec.r_capped,
            "attempts_before": rec.attempts_before, "file": name,
        }, sort_keys=True))
    (out_dir / "manifest.jsonl").write_text("\n".join(manifest_lines) + "\n")
    print(json.dumps({
        "accepted": stats.accepted, "attempts": stats.attempts,
        "p_hat": stats.p_hat, "shortfall": stats.shortfall,
    }))
    return 0 if not stats.shortfall else 1


def _cmd_p_r1(args) -> int:
    rows = ["alpha,p_hat,half_width,samples"]
    for alpha in args.alpha_list:
        stats = estimate_p_r1(args.n, alpha, args.samples, args.seed,
                              workers=args.workers)
        rows.append(f"{alpha!r},{stats.p_hat!r},{stats.half_width!r},{stats.attempts}")
    text = "\n".join(rows) + "\n"
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return 0


def _cmd_bench(args) -> int:
    cfg = bench.SweepConfig.from_json(Path(args.config).read_text())
    if args.mode == "alpha-sweep":
        curves = bench.alpha_sweep(cfg)
    else:
        curves = bench.scaling_run(cfg)
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    for curve in curves:
        (out_dir / f"{curve.label}.csv").write_text(bench.stats_to_csv(curve.stats))
        if args.emit_plot_data:
            (out_dir / f"{curve.label}.dat").write_text(bench.plot_data(curve.stats))
    (out_dir / "summary.json").write_text(bench.summary_json(cfg, curves))
    print(f"wrote {len(curves)} curves to {out_dir}")
    return 0


def _cmd_kernel_bench(args) -> int:
    """Compare the compiled and pure backends on a fixed workload."""
    try:
        from . import _core
    except ImportError:
        _core = None
    backends = [("pure", _pure)] + ([("compiled", _core)] if _core else [])
    n, workload_m = args.n, alpha_to_m(3.0, args.n)
    lits = np.empty(3 * workload_m, dtype=np.int32)
    _pure.fill_random_clauses(n, workload_m, 12345, lits)
    rows = []
    for name, mod in backends:
        t0 = time.perf_counter()
        for i in range(args.reps):
            mod.count_solutions(n, lits, 2)
        t_count = time.perf_counter() - t0
        t0 = time.perf_counter()
        for i in range(args.reps):
            mod.dpll_solve(n, lits, 0, 0, False, 0)
        t_dpll = time.perf_counter() - t0
        t0 = time.perf_counter()
        for i in range(args.reps):
            mod.sls_run(_pure.ALG_GWSAT, n, lits, 0.5, 0.01, 10000, 1, i)
        t_sls = time.perf_counter() - t0
        rows.append((name, t_count, t_dpll, t_sls))
    print(f"active backend: {backend_name()}")
    print(f"{'backend':>10} {'count(cap2)':>12} {'dpll':>12} {'gwsat':>12}")
    for name, tc, td, ts in rows:
        print(f"{name:>10} {tc:>11.4f}s {td:>11.4f}s {ts:>11.4f}s")
    if len(rows) == 2:
        print(f"{'speedup':>10} {rows[0][1] / rows[1][1]:>11.1f}x "
              f"{rows[0][2] / rows[1][2]:>11.1f}x {rows[0][3] / rows[1][3]:>11.1f}x")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="satlab",
        description="Random 3-SAT ensembles, solvers, and hardness benchmarks",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="generate random 3-SAT instances")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--alpha", type=float)
    p.add_argument("--m", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=1)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_generate)

    p = sub.add_parser("count", help="count solutions (optionally capped)")
    p.add_argument("--cap", type=int, default=None)
    p.add_argument("file", nargs="?", default=None, help="DIMACS file (default stdin)")
    p.set_defaults(func=_cmd_count)

    p = sub.add_parser("energy-states",
                       help="count assignments violating exactly k clauses")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("file", nargs="?", default=None)
    p.set_defaults(func=_cmd_energy_states)

    p = sub.add_parser("dpll", help="solve with DPLL")
    p.add_argument("--tree", choices=["dot", "net"], default=None,
                   help="record the search tree and export it in this format")
    p.add_argument("--tree-out", default="tree.out",
                   help="path for the exported tree file")
    p.add_argument("--annotate", choices=["excited"], default=None,
                   help="label tree nodes with excited-state counts")
    p.add_argument("--unit-prop", choices=["on", "off"], default="off")
    p.add_argument("--value-order", choices=["true-first", "false-first", "random"],
                   default="true-first")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("file", nargs="?", default=None)
    p.set_defaults(func=_cmd_dpll)

    p = sub.add_parser("sls", help="stochastic local search")
    p.add_argument("--alg", choices=sorted(_ALG_ALIASES), default="gwsat")
    p.add_argument("--p", type=float, default=0.5)
    p.add_argument("--wp", type=float, default=0.01)
    p.add_argument("--max-flips", type=int, default=10**6)
    p.add_argument("--tries", type=int, default=1)
    p.add_argument("--runs", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("file", nargs="?", default=None)
    p.set_defaults(func=_cmd_sls)

    p = sub.add_parser("ensemble", help="build a filtered instance ensemble")
    p.add_argument("--kind", choices=["r1", "sat", "any"], required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--count", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-attempts", type=int, default=10**9)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_ensemble)

    p = sub.add_parser("p-r1", help="estimate the single-solution probability")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--alpha-list", type=float, nargs="+", required=True)
    p.add_argument("--samples", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_p_r1)

    p = sub.add_parser("bench", help="run a configured experiment sweep")
    p.add_argument("mode", choices=["alpha-sweep", "scaling"])
    p.add_argument("--config", required=True, help="JSON sweep configuration")
    p.add_argument("--out", required=True)
    p.add_argument("--emit-plot-data", action="store_true")
    p.set_defaults(func=_cmd_bench)

    p = sub.add_parser("kernel-bench",
                       help="compare compiled and pure kernel backends")
    p.add_argument("--n", type=int, default=20)
    p.add_argument("--reps", type=int, default=20)
    p.set_defaults(func=_cmd_kernel_bench)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
