"""Exact, threshold-capped model counting and derived analyses.

This is the oracle that defines the single-solution ensemble (a formula is
accepted when counting with cap 2 finishes at exactly 1) and the
energy-level analysis: ``count_energy_states(f, 1)`` is the number of
assignments violating exactly one clause.

The counter is a DPLL-style exhaustive backtracker that keeps searching
past solutions; no component caching or other #SAT machinery, by design:
exactness and auditability over speed, which is ample at n <= 40 with the
early cap-2 abort.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._backend import kernels
from . import _pure
from .cnf import Assignment, Formula, PartialAssignment

_ENUM_CAP_DEFAULT = 1 << 16

_METHODS = {"auto": _pure.METHOD_AUTO, "sweep": _pure.METHOD_SWEEP, "branch": _pure.METHOD_BRANCH}


@dataclass(frozen=True)
class CountResult:
    """Solution count, possibly stopped early at a cap.

    ``capped`` means the search stopped once ``count`` reached the cap, so
    the true count is >= count; otherwise count is exact.
    """

    count: int
    capped: bool
    solutions: tuple[tuple[bool, ...], ...] | None = None


def _pack_fixed(f: Formula, pa: PartialAssignment | None) -> np.ndarray | None:
    if pa is None:
        return None
    fixed = np.full(f.n + 1, -1, dtype=np.int8)
    for v, b in pa.items():
        if not 1 <= v <= f.n:
            raise ValueError(f"variable {v} out of range for n={f.n}")
        fixed[v] = 1 if b else 0
    return fixed


def count_solutions(f: Formula, cap: int | None = None) -> CountResult:
    """Count satisfying assignments, stopping early at ``cap`` (None =
    unlimited).  cap=2 decides r=1 cheaply: accept iff count==1 uncapped."""
    if cap is not None and cap < 1:
        raise ValueError("cap must be >= 1")
    kcap = _pure.UNLIMITED_CAP if cap is None else min(cap, _pure.UNLIMITED_CAP)
    count, capped = kernels.count_solutions(f.n, f.packed(), kcap)
    return CountResult(count=count, capped=capped)


def enumerate_solutions(f: Formula, cap: int | None = None) -> CountResult:
    """Materialize satisfying assignments (cap-guarded).

    Lives on the Python side independently of the counting kernels; tests
    cross-check the two.  Enumeration order is deterministic.
    """
    if cap is not None and cap < 1:
        raise ValueError("cap must be >= 1")
    limit = cap if cap is not None else 1 << f.n
    st = _pure._State(f.n, f.packed())
    sols: list[tuple[bool, ...]] = []

    def emit_leaf() -> bool:
        free = [v for v in range(1, f.n + 1) if st.val[v] < 0]
        for bits in range(1 << len(free)):
            vals = list(st.val[1:])
            for j, v in enumerate(free):
                vals[v - 1] = (bits >> j) & 1
            sols.append(tuple(x == 1 for x in vals))
            if len(sols) >= limit:
                return True
        return False

    def rec(scan_from: int) -> bool:
        if st.num_empty > 0:
            return False
        if st.num_sat == st.m:
            return emit_leaf()
        c = st.first_unsat(scan_from)
        v = st.branch_var(c)
        for b in (1, 0):
            st.assign(v, b)
            stop = rec(c)
            st.unassign(v)
            if stop:
                return True
        return False

    capped = rec(0)
    return CountResult(count=len(sols), capped=capped, solutions=tuple(sols))


def backbone(f: Formula, enumeration_cap: int = _ENUM_CAP_DEFAULT) -> dict[int, bool]:
    """Variables taking the same value in every solution, with that value.

    Enumerates solutions when there are at most ``enumeration_cap`` of
    them; otherwise probes each variable with two cap-1 satisfiability
    counts.  Undefined (ValueError) for unsatisfiable formulas.
    """
    enum = enumerate_solutions(f, cap=enumeration_cap)
    if not enum.capped:
        if enum.count == 0:
            raise ValueError("backbone undefined for unsatisfiable formula")
        forced: dict[int, bool] = dict(enumerate(enum.solutions[0], start=1))
        for sol in enum.solutions[1:]:
            for v in list(forced):
                if sol[v - 1] != forced[v]:
                    del forced[v]
            if not forced:
                break
        return forced
    return _backbone_probe(f)


def _backbone_probe(f: Formula) -> dict[int, bool]:
    lits = f.packed()
    count, _ = kernels.count_solutions(f.n, lits, 1)
    if count == 0:
        raise ValueError("backbone undefined for unsatisfiable formula")
    forced: dict[int, bool] = {}
    fixed = np.full(f.n + 1, -1, dtype=np.int8)
    for v in range(1, f.n + 1):
        fixed[v] = 1
        sat_true = kernels.count_solutions(f.n, lits, 1, fixed)[0] > 0
        fixed[v] = 0
        sat_false = kernels.count_solutions(f.n, lits, 1, fixed)[0] > 0
        fixed[v] = -1
        if sat_true != sat_false:
            forced[v] = sat_true
    return forced


def count_energy_states(f: Formula, k: int, method: str = "auto") -> int:
    """Number of total assignments with exactly k unsatisfied clauses.

    k=0 gives the solution count r, k=1 the excited states.
    """
    if not 0 <= k <= f.m:
        raise ValueError(f"k must be in [0, m={f.m}]")
    return kernels.count_energy_states(f.n, f.packed(), k, None, _METHODS[method])


def count_energy_states_under(
    f: Formula, pa: PartialAssignment, k: int, method: str = "auto"
) -> int:
    """Number of total assignments extending ``pa`` with energy exactly k."""
    if not 0 <= k <= f.m:
        raise ValueError(f"k must be in [0, m={f.m}]")
    fixed = _pack_fixed(f, pa)
    return kernels.count_energy_states(f.n, f.packed(), k, fixed, _METHODS[method])
