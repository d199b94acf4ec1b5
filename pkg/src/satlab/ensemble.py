"""Filter-based construction of the studied ensembles.

Random instances are generated from seeds derived by attempt index and kept
when they pass the kind's acceptance rule:

* ``r1``   -- counting with cap 2 finishes at exactly 1 solution,
* ``sat``  -- counting with cap 1 reaches a solution,
* ``any``  -- every instance accepted (the plain random ensemble).

Because acceptance depends only on the attempt index and master seed, a
build produces the identical instance set at any worker count or chunk
size.  The acceptance frequency is reported alongside the instances; at
density m/n=3 it decays exponentially with n, which is what makes large
single-solution instances expensive to produce.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from ._backend import kernels
from .cnf import Formula
from .counting import count_solutions
from .generator import GenSpec, alpha_to_m, generate
from .rng import ROLE_GENERATE, role_seed, stream_seed

_KINDS = ("r1", "sat", "any")

_SCAN_CHUNK = 4096


@dataclass(frozen=True)
class EnsembleSpec:
    kind: str
    n: int
    m: int
    target_count: int
    master_seed: int
    max_attempts: int = 10**9
    exact_counts: bool = False  # kind="any": also store exact r per instance

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise ValueError(f"kind must be one of {_KINDS}, got {self.kind!r}")
        if self.n < 3:
            raise ValueError("n must be >= 3")
        if self.m < 0:
            raise ValueError("m must be >= 0")
        if self.target_count < 1:
            raise ValueError("target_count must be >= 1")
        if self.max_attempts < 1:
            raise ValueError("max_attempts must be >= 1")

    @classmethod
    def from_alpha(cls, kind: str, n: int, alpha: float, target_count: int,
                   master_seed: int, **kw) -> "EnsembleSpec":
        return cls(kind=kind, n=n, m=alpha_to_m(alpha, n),
                   target_count=target_count, master_seed=master_seed, **kw)

    @property
    def alpha(self) -> float:
        return self.m / self.n


@dataclass(frozen=True)
class InstanceRecord:
    index: int           # acceptance order within the ensemble
    seed: int            # generation seed; regenerates the formula exactly
    formula: Formula
    r: int | None        # solution count, None when not computed
    r_capped: bool       # True when r is a cap, not the exact count
    attempts_before: int # generation attempts preceding this acceptance


@dataclass(frozen=True)
class AcceptanceStats:
    attempts: int
    accepted: int
    p_hat: float
    half_width: float    # 95% normal-approximation half width
    shortfall: bool = False


def _stats(attempts: int, accepted: int, shortfall: bool = False) -> AcceptanceStats:
    p = accepted / attempts if attempts else 0.0
    hw = 1.96 * (p * (1.0 - p) / attempts) ** 0.5 if attempts else 0.0
    return AcceptanceStats(attempts=attempts, accepted=accepted, p_hat=p,
                           half_width=hw, shortfall=shortfall)


def _scan_chunk(args: tuple[int, int, int, int, int, int]) -> tuple[int, bytes]:
    n, m, gen_root, start, count, cap = args
    out = np.empty(count, dtype=np.uint8)
    kernels.scan_attempts(n, m, gen_root, start, count, cap, out)
    return start, out.tobytes()


def _accepted_in(kind: str, counts: bytes) -> list[int]:
    if kind == "r1":
        return [i for i, c in enumerate(counts) if c == 1]
    return [i for i, c in enumerate(counts) if c >= 1]


def _scan_stream(chunk_args, workers: int):
    """Yield (start, counts) per chunk in submission order; with workers > 1
    a bounded window of chunks is scanned concurrently.  Outputs depend only
    on chunk arguments, so the yielded stream is identical either way."""
    if workers <= 1:
        for args in chunk_args:
            yield _scan_chunk(args)
        return
    with ProcessPoolExecutor(max_workers=workers) as pool:
        window: list = []
        it = iter(chunk_args)
        try:
            for args in it:
                window.append(pool.submit(_scan_chunk, args))
                if len(window) >= 2 * workers:
                    yield window.pop(0).result()
            while window:
                yield window.pop(0).result()
        finally:
            for fut in window:
                fut.cancel()


def build_ensemble(
    spec: EnsembleSpec, workers: int = 1, chunk: int = _SCAN_CHUNK
) -> tuple[list[InstanceRecord], AcceptanceStats]:
    """Generate-and-filter until ``target_count`` instances are accepted or
    the attempt budget runs out (partial result, stats.shortfall=True)."""
    gen_root = role_seed(spec.master_seed, ROLE_GENERATE)
    if spec.kind == "any":
        if spec.target_count > spec.max_attempts:
            raise ValueError("target_count exceeds max_attempts")
        records = [
            _materialize(spec, gen_root, i, i) for i in range(spec.target_count)
        ]
        return records, _stats(spec.target_count, spec.target_count)

    cap = 2 if spec.kind == "r1" else 1
    accepted_idx: list[int] = []
    scanned = 0

    def chunks():
        start = 0
        while start < spec.max_attempts:
            size = min(chunk, spec.max_attempts - start)
            yield (spec.n, spec.m, gen_root, start, size, cap)
            start += size

    for start, counts in _scan_stream(chunks(), workers):
        hits = _accepted_in(spec.kind, counts)
        accepted_idx.extend(start + i for i in hits)
        scanned = start + len(counts)
        if len(accepted_idx) >= spec.target_count:
            break

    accepted_idx = accepted_idx[: spec.target_count]
    if len(accepted_idx) == spec.target_count:
        attempts = accepted_idx[-1] + 1
        shortfall = False
    else:
        attempts = scanned
        shortfall = True
    records = [
        _materialize(spec, gen_root, rank, idx)
        for rank, idx in enumerate(accepted_idx)
    ]
    return records, _stats(attempts, len(records), shortfall)


def _materialize(spec: EnsembleSpec, gen_root: int, rank: int, attempt: int) -> InstanceRecord:
    seed = stream_seed(gen_root, attempt)
    formula = generate(GenSpec(n=spec.n, m=spec.m, seed=seed))
    if spec.kind == "r1":
        r: int | None = 1
        r_capped = False
    elif spec.kind == "sat":
        r = 1
        r_capped = True
    elif spec.exact_counts:
        res = count_solutions(formula)
        r = res.count
        r_capped = res.capped
    else:
        r = None
        r_capped = False
    return InstanceRecord(index=rank, seed=seed, formula=formula, r=r,
                          r_capped=r_capped, attempts_before=attempt)


def estimate_p_r1(
    n: int, alpha: float, samples: int, seed: int, workers: int = 1,
    chunk: int = _SCAN_CHUNK,
) -> AcceptanceStats:
    """Fraction of fresh random instances at (n, alpha) with exactly one
    solution, from ``samples`` attempts."""
    if samples < 1:
        raise ValueError("samples must be >= 1")
    m = alpha_to_m(alpha, n)
    gen_root = role_seed(seed, ROLE_GENERATE)
    args = [
        (n, m, gen_root, start, min(chunk, samples - start), 2)
        for start in range(0, samples, chunk)
    ]
    hits = 0
    for _, counts in _scan_stream(args, workers):
        hits += sum(1 for c in counts if c == 1)
    return _stats(samples, hits)
