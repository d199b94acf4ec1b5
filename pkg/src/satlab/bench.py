"""Experiment harness: density sweeps at fixed n, size scaling at fixed
density, summary statistics, and growth-law fits.

The running-time metric is algorithmic work (DPLL recursive calls, SLS
flips), never wall clock.  Per point, instances come from a freshly built
ensemble; for stochastic solvers each instance is summarized by the median
over its independent runs, and the point reports mean/median/max over
instance summaries.  Points whose SLS success rate is not above 1/2, or
whose ensemble generation fell short, are marked censored and never enter
fits.
"""

from __future__ import annotations

import io
import json
import math
from dataclasses import asdict, dataclass
from typing import Sequence

import numpy as np

from . import localsearch
from .cnf import Formula
from .dpll import DpllConfig, solve
from .ensemble import EnsembleSpec, build_ensemble
from .generator import alpha_to_m
from .localsearch import SlsParams
from .rng import ROLE_POINT, ROLE_SLS_RUNS, role_seed, stream_seed

CSV_COLUMNS = ("x", "mean", "median", "max", "success_rate", "samples", "censored")


@dataclass(frozen=True)
class RunStats:
    """Summary of one benchmark point (one ensemble at one axis value)."""

    label: float
    samples: int
    mean: float
    median: float
    max: float
    success_rate: float
    censored: bool


@dataclass(frozen=True)
class FitResult:
    """Least-squares growth-law fit in log space.

    exponential: T = a * 2**(b*n), fit of log2(T) against n.
    powerlaw:    T = c * n**k,     fit of log(T) against log(n).
    rss_log is the residual sum of squares in natural-log space for either
    model, so the two are directly comparable on the same points.
    """

    model: str
    params: tuple[float, float]
    rss_log: float


@dataclass(frozen=True)
class Curve:
    label: str
    kind: str
    stats: tuple[RunStats, ...]
    fits: dict[str, FitResult] | None = None


@dataclass(frozen=True)
class SweepConfig:
    solver: dict
    ensembles: tuple[dict, ...]
    axis_kind: str                   # "alpha" | "n"
    axis: tuple[float, ...]
    fixed_n: int | None = None       # required for axis_kind="alpha"
    instances_per_point: int = 200
    runs_per_instance: int = 100
    seed: int = 0
    max_attempts_per_instance: int = 10**6
    workers: int = 1

    def __post_init__(self):
        if self.axis_kind not in ("alpha", "n"):
            raise ValueError("axis_kind must be 'alpha' or 'n'")
        if not self.axis:
            raise ValueError("axis must be nonempty")
        if self.axis_kind == "alpha" and self.fixed_n is None:
            raise ValueError("alpha sweep needs fixed_n")
        if self.instances_per_point < 1:
            raise ValueError("instances_per_point must be >= 1")
        if self.runs_per_instance < 1:
            raise ValueError("runs_per_instance must be >= 1")

    @classmethod
    def from_json(cls, text: str) -> "SweepConfig":
        raw = json.loads(text)
        axis = raw["axis"]
        return cls(
            solver=raw["solver"],
            ensembles=tuple(raw["ensembles"]),
            axis_kind=axis["kind"],
            axis=tuple(axis["values"]),
            fixed_n=axis.get("n"),
            instances_per_point=raw.get("instances_per_point", 200),
            runs_per_instance=raw.get("runs_per_instance", 100),
            seed=raw.get("seed", 0),
            max_attempts_per_instance=raw.get("max_attempts_per_instance", 10**6),
            workers=raw.get("workers", 1),
        )


# ---------------------------------------------------------------------------
# aggregation


def aggregate(
    samples: Sequence[float],
    runs_per_instance: int = 1,
    label: float = 0.0,
    success_rate: float = 1.0,
    censored: bool = False,
) -> RunStats:
    """Summarize flat per-run samples: consecutive groups of
    ``runs_per_instance`` belong to one instance, each instance contributes
    the median of its runs, and the point reports mean/median/max over the
    instance summaries."""
    if not samples:
        raise ValueError("no samples to aggregate")
    if len(samples) % runs_per_instance != 0:
        raise ValueError("sample count not divisible by runs_per_instance")
    arr = np.asarray(samples, dtype=float).reshape(-1, runs_per_instance)
    per_instance = np.median(arr, axis=1)
    return RunStats(
        label=label,
        samples=len(per_instance),
        mean=float(np.mean(per_instance)),
        median=float(np.median(per_instance)),
        max=float(np.max(per_instance)),
        success_rate=success_rate,
        censored=censored,
    )


# ---------------------------------------------------------------------------
# growth-law fits


def _check_fit_points(points) -> tuple[np.ndarray, np.ndarray]:
    if len(points) < 2:
        raise ValueError("fit needs at least 2 points")
    x = np.asarray([p[0] for p in points], dtype=float)
    y = np.asarray([p[1] for p in points], dtype=float)
    if np.any(y <= 0):
        raise ValueError("fit requires positive running times")
    if np.all(x == x[0]):
        raise ValueError("fit requires at least two distinct x values")
    return x, y


def fit_exponential(points: Sequence[tuple[float, float]]) -> FitResult:
    """Fit T = a * 2**(b*n) by least squares of log2(T) on n."""
    x, y = _check_fit_points(points)
    b, intercept = np.polyfit(x, np.log2(y), 1)
    a = float(2.0**intercept)
    model_ln = math.log(a) + b * math.log(2.0) * x
    rss = float(np.sum((np.log(y) - model_ln) ** 2))
    return FitResult(model="exponential", params=(a, float(b)), rss_log=rss)


def fit_powerlaw(points: Sequence[tuple[float, float]]) -> FitResult:
    """Fit T = c * n**k by least squares of log(T) on log(n)."""
    x, y = _check_fit_points(points)
    if np.any(x <= 0):
        raise ValueError("power-law fit requires positive x")
    k, intercept = np.polyfit(np.log(x), np.log(y), 1)
    c = float(math.exp(intercept))
    model_ln = intercept + k * np.log(x)
    rss = float(np.sum((np.log(y) - model_ln) ** 2))
    return FitResult(model="powerlaw", params=(c, float(k)), rss_log=rss)


def fit_curve(stats: Sequence[RunStats], metric: str = "median") -> dict[str, FitResult]:
    """Both growth-law fits on the uncensored points of a scaling curve."""
    pts = [(s.label, getattr(s, metric)) for s in stats if not s.censored]
    if len(pts) < 3:
        raise ValueError(f"need >= 3 uncensored points to fit, have {len(pts)}")
    return {"exponential": fit_exponential(pts), "powerlaw": fit_powerlaw(pts)}


# ---------------------------------------------------------------------------
# sweep execution


def _solve_point(
    cfg: SweepConfig, records, point_seed: int
) -> tuple[list[float], float]:
    """Per-instance summaries plus overall success rate for one point."""
    solver = dict(cfg.solver)
    name = solver.pop("name")
    if name == "dpll":
        dc = DpllConfig(**solver)
        return [float(solve(rec.formula, dc).calls) for rec in records], 1.0
    if name not in localsearch.ALGORITHMS:
        raise ValueError(f"unknown solver {name!r}")
    run_root = role_seed(point_seed, ROLE_SLS_RUNS)
    summaries = []
    successes = 0
    total_runs = 0
    for rec in records:
        inst_root = stream_seed(run_root, rec.index)
        flips = []
        for j in range(cfg.runs_per_instance):
            params = SlsParams(algorithm=name, seed=stream_seed(inst_root, j), **solver)
            out = localsearch.run(rec.formula, params)
            flips.append(float(out.flips))
            successes += out.found
            total_runs += 1
        summaries.append(float(np.median(flips)))
    return summaries, successes / total_runs


def _run_point(cfg: SweepConfig, kind: str, n: int, m: int, label: float,
               point_seed: int) -> RunStats:
    spec = EnsembleSpec(
        kind=kind, n=n, m=m, target_count=cfg.instances_per_point,
        master_seed=point_seed,
        max_attempts=cfg.max_attempts_per_instance * cfg.instances_per_point,
    )
    records, stats = build_ensemble(spec, workers=cfg.workers)
    if not records:
        return RunStats(label=label, samples=0, mean=float("nan"),
                        median=float("nan"), max=float("nan"),
                        success_rate=0.0, censored=True)
    summaries, success_rate = _solve_point(cfg, records, point_seed)
    censored = stats.shortfall or success_rate <= 0.5
    point = aggregate(summaries, 1, label=label, success_rate=success_rate,
                      censored=censored)
    return point


def _points(cfg: SweepConfig):
    point_root = role_seed(cfg.seed, ROLE_POINT)
    index = 0
    for template in cfg.ensembles:
        rows = []
        for x in cfg.axis:
            if cfg.axis_kind == "alpha":
                n = cfg.fixed_n
                m = alpha_to_m(float(x), n)
            else:
                n = int(x)
                m = alpha_to_m(float(template["alpha"]), n)
            rows.append((template["kind"], n, m, float(x), stream_seed(point_root, index)))
            index += 1
        yield template, rows


def _curve_label(cfg: SweepConfig, template: dict) -> str:
    solver = cfg.solver["name"]
    if cfg.axis_kind == "alpha":
        return f"{solver}_{template['kind']}_n{cfg.fixed_n}"
    return f"{solver}_{template['kind']}_alpha{template['alpha']:g}"


def alpha_sweep(cfg: SweepConfig) -> list[Curve]:
    """One RunStats row per (ensemble, alpha) at fixed n."""
    if cfg.axis_kind != "alpha":
        raise ValueError("alpha_sweep requires axis_kind='alpha'")
    curves = []
    for template, rows in _points(cfg):
        stats = tuple(
            _run_point(cfg, kind, n, m, label, seed)
            for kind, n, m, label, seed in rows
        )
        curves.append(Curve(label=_curve_label(cfg, template),
                            kind=template["kind"], stats=stats))
    return curves


def scaling_run(cfg: SweepConfig) -> list[Curve]:
    """One RunStats row per (ensemble, n) at that ensemble's fixed density,
    with both growth-law fits attached per curve."""
    if cfg.axis_kind != "n":
        raise ValueError("scaling_run requires axis_kind='n'")
    curves = []
    for template, rows in _points(cfg):
        stats = tuple(
            _run_point(cfg, kind, n, m, label, seed)
            for kind, n, m, label, seed in rows
        )
        curves.append(Curve(label=_curve_label(cfg, template),
                            kind=template["kind"], stats=stats,
                            fits=fit_curve(stats)))
    return curves


# ---------------------------------------------------------------------------
# table serialization


def stats_to_csv(rows: Sequence[RunStats]) -> str:
    out = io.StringIO()
    out.write(",".join(CSV_COLUMNS) + "\n")
    for r in rows:
        out.write(
            f"{r.label!r},{r.mean!r},{r.median!r},{r.max!r},"
            f"{r.success_rate!r},{r.samples},{int(r.censored)}\n"
        )
    return out.getvalue()


def stats_from_csv(text: str) -> tuple[RunStats, ...]:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines or lines[0] != ",".join(CSV_COLUMNS):
        raise ValueError("unrecognized stats CSV header")
    rows = []
    for ln in lines[1:]:
        x, mean, median, mx, sr, samples, censored = ln.split(",")
        rows.append(RunStats(
            label=float(x), samples=int(samples), mean=float(mean),
            median=float(median), max=float(mx), success_rate=float(sr),
            censored=bool(int(censored)),
        ))
    return tuple(rows)


def plot_data(rows: Sequence[RunStats]) -> str:
    """Whitespace-separated columns (x, median, mean, max) for plotting."""
    lines = ["# x median mean max"]
    for r in rows:
        lines.append(f"{r.label!r} {r.median!r} {r.mean!r} {r.max!r}")
    return "\n".join(lines) + "\n"


def summary_json(cfg: SweepConfig, curves: Sequence[Curve]) -> str:
    payload = {
        "config": asdict(cfg),
        "curves": [
            {
                "label": c.label,
                "kind": c.kind,
                "fits": {
                    name: {"model": f.model, "params": list(f.params),
                           "rss_log": f.rss_log}
                    for name, f in c.fits.items()
                }
                if c.fits
                else None,
            }
            for c in curves
        ],
    }
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"
