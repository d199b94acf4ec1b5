"""Seeded uniform random 3-SAT instance generation.

Each clause draws 3 distinct variables (rejection sampling) and negates
each with probability 1/2, giving the uniform distribution over the
8*C(n,3) possible clauses.  Clauses are drawn independently, so duplicate
clauses within a formula are possible (and at the sizes studied here,
negligible).  Output is fully determined by (n, m, seed).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._backend import kernels
from .cnf import Clause, Formula
from .rng import Xoshiro256, stream_seed
from . import _pure


def alpha_to_m(alpha: float, n: int) -> int:
    """Clause count for density alpha: round(alpha*n), half away from zero."""
    x = alpha * n
    return int(math.floor(x + 0.5)) if x >= 0 else -int(math.floor(-x + 0.5))


@dataclass(frozen=True)
class GenSpec:
    """Parameters of one generated instance; output is a pure function of
    these three fields."""

    n: int
    m: int
    seed: int

    def __post_init__(self):
        if self.n < 3:
            raise ValueError("generation requires n >= 3")
        if self.m < 0:
            raise ValueError("clause count must be nonnegative")

    @classmethod
    def from_alpha(cls, n: int, alpha: float, seed: int) -> "GenSpec":
        return cls(n=n, m=alpha_to_m(alpha, n), seed=seed)


def random_clause(n: int, rng: Xoshiro256) -> Clause:
    """Draw one clause over 3 distinct variables in [1, n]."""
    return _pure.draw_clause(n, rng)


def generate(spec: GenSpec) -> Formula:
    """Generate the formula determined by ``spec``."""
    out = np.empty(3 * spec.m, dtype=np.int32)
    kernels.fill_random_clauses(spec.n, spec.m, spec.seed & ((1 << 64) - 1), out)
    lits = out.tolist()
    clauses = tuple(
        (lits[i], lits[i + 1], lits[i + 2]) for i in range(0, len(lits), 3)
    )
    return Formula(n=spec.n, clauses=clauses)


def batch_seeds(master_seed: int, count: int) -> list[int]:
    """Per-instance seeds for a batch, independent of evaluation order."""
    return [stream_seed(master_seed, i) for i in range(count)]
