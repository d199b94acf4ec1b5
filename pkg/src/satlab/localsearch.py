"""Stochastic local search: GWSAT, Walksat (SKC), and Adaptive Novelty+.

All three start from a uniform random assignment and flip one variable per
step until no clause is unsatisfied or the flip budget runs out; the flip
count is the running-time metric.  A run that fails within its budget is a
valid outcome (reported with found=False and tries*max_flips flips), not an
error.

Parameter defaults (p=0.5, wp=0.01, and the adaptive-noise constants) are
conventions; they are echoed back in every result so recorded experiments
carry their exact configuration.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from . import _pure
from ._backend import kernels
from .cnf import Formula

ALGORITHMS = {
    "gwsat": _pure.ALG_GWSAT,
    "walksat": _pure.ALG_WALKSAT,
    "adaptive-novelty-plus": _pure.ALG_NOVELTY,
}


@dataclass(frozen=True)
class SlsParams:
    algorithm: str = "gwsat"
    p: float = 0.5              # random-walk probability (gwsat), noise (walksat)
    wp: float = 0.01            # random-walk probability (novelty+)
    max_flips: int = 10**6      # per-try cutoff
    tries: int = 1              # restarts
    seed: int = 0
    noise_increase: float = 0.2
    noise_decrease: float = 0.1
    adapt_theta: float = 1.0 / 6.0  # stagnation window as a fraction of m
    check_every: int = 0        # debug: recount energy every k flips (0 = off)

    def __post_init__(self):
        if self.algorithm not in ALGORITHMS:
            raise ValueError(f"unknown algorithm {self.algorithm!r}")
        for name in ("p", "wp", "noise_increase", "noise_decrease"):
            x = getattr(self, name)
            if not 0.0 <= x <= 1.0:
                raise ValueError(f"{name} must be in [0, 1], got {x}")
        if self.max_flips < 1:
            raise ValueError("max_flips must be >= 1")
        if self.tries < 1:
            raise ValueError("tries must be >= 1")


@dataclass(frozen=True)
class SlsRun:
    found: bool
    flips: int
    tries_used: int
    assignment: tuple[bool, ...] | None
    params: SlsParams


def run(f: Formula, params: SlsParams) -> SlsRun:
    """Run the algorithm selected by ``params`` on ``f``."""
    found, flips, tries_used, witness = kernels.sls_run(
        ALGORITHMS[params.algorithm],
        f.n,
        f.packed(),
        params.p,
        params.wp,
        params.max_flips,
        params.tries,
        params.seed & ((1 << 64) - 1),
        params.noise_increase,
        params.noise_decrease,
        params.adapt_theta,
        params.check_every,
    )
    assignment = tuple(b == 1 for b in witness) if witness is not None else None
    return SlsRun(
        found=found, flips=flips, tries_used=tries_used,
        assignment=assignment, params=params,
    )


def gwsat(f: Formula, params: SlsParams) -> SlsRun:
    """GSAT steps (flip maximizing satisfied clauses, ties uniform) mixed
    with probability-p random walks on unsatisfied-clause variables."""
    return run(f, replace(params, algorithm="gwsat"))


def walksat(f: Formula, params: SlsParams) -> SlsRun:
    """Walksat with the SKC break-count rule."""
    return run(f, replace(params, algorithm="walksat"))


def adaptive_novelty_plus(f: Formula, params: SlsParams) -> SlsRun:
    """Novelty+ with the self-adjusting noise schedule."""
    return run(f, replace(params, algorithm="adaptive-novelty-plus"))
