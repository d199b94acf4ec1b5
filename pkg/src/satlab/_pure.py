"""Pure-Python kernels for the hot operations.

This module defines the reference semantics; ``satlab._core`` is a Cython
translation of the same algorithms (including identical RNG consumption)
and is preferred at import time when built.  Cross-backend equality is
enforced by the test suite, so keep the two in lockstep.

Kernel calling convention: formulas arrive as flat buffers of 3m DIMACS
literals (int32), partial assignments as (n+1)-long tri-state buffers
(-1 unassigned / 0 false / 1 true, index 0 unused), and assignments are
returned as ``bytes`` of 0/1 per variable.
"""

from __future__ import annotations

import math

from .rng import Xoshiro256, stream_seed

BACKEND_NAME = "pure"

# Internal ceiling used when callers ask for an unlimited solution count.
UNLIMITED_CAP = 1 << 62


# ---------------------------------------------------------------------------
# random instance generation


def draw_clause(n: int, rng: Xoshiro256) -> tuple[int, int, int]:
    """One uniform clause: 3 distinct variables (rejection sampling, in draw
    order), then one sign bit per variable."""
    if n < 3:
        raise ValueError("need n >= 3 to draw 3 distinct variables")
    v1 = 1 + rng.below(n)
    v2 = 1 + rng.below(n)
    while v2 == v1:
        v2 = 1 + rng.below(n)
    v3 = 1 + rng.below(n)
    while v3 == v1 or v3 == v2:
        v3 = 1 + rng.below(n)
    lits = []
    for v in (v1, v2, v3):
        lits.append(-v if rng.below(2) else v)
    return (lits[0], lits[1], lits[2])


def fill_random_clauses(n: int, m: int, seed: int, out) -> None:
    """Write 3m literals of m independently drawn clauses into ``out``."""
    if n < 3 and m > 0:
        raise ValueError("need n >= 3 to draw 3 distinct variables")
    rng = Xoshiro256(seed)
    pos = 0
    for _ in range(m):
        l1, l2, l3 = draw_clause(n, rng)
        out[pos] = l1
        out[pos + 1] = l2
        out[pos + 2] = l3
        pos += 3


# ---------------------------------------------------------------------------
# shared solver state


class _State:
    """Clause/occurrence bookkeeping for backtracking search."""

    __slots__ = (
        "n", "m", "lits", "val", "ntrue", "nfalse", "occ",
        "num_sat", "num_empty", "nassigned",
    )

    def __init__(self, n: int, lits):
        self.n = n
        self.m = len(lits) // 3
        self.lits = [int(x) for x in lits]
        self.val = [-1] * (n + 1)
        self.ntrue = [0] * self.m
        self.nfalse = [0] * self.m
        occ: list[list[tuple[int, int]]] = [[] for _ in range(n + 1)]
        for i, lit in enumerate(self.lits):
            v = abs(lit)
            if v < 1 or v > n:
                raise ValueError(f"literal {lit} out of range for n={n}")
            occ[v].append((i // 3, 1 if lit > 0 else -1))
        self.occ = occ
        self.num_sat = 0
        self.num_empty = 0
        self.nassigned = 0

    def assign(self, v: int, b: int) -> None:
        self.val[v] = b
        self.nassigned += 1
        for c, s in self.occ[v]:
            if (s > 0) == (b == 1):
                self.ntrue[c] += 1
                if self.ntrue[c] == 1:
                    self.num_sat += 1
            else:
                self.nfalse[c] += 1
                if self.nfalse[c] == 3:
                    self.num_empty += 1

    def unassign(self, v: int) -> None:
        b = self.val[v]
        self.val[v] = -1
        self.nassigned -= 1
        for c, s in self.occ[v]:
            if (s > 0) == (b == 1):
                self.ntrue[c] -= 1
                if self.ntrue[c] == 0:
                    self.num_sat -= 1
            else:
                if self.nfalse[c] == 3:
                    self.num_empty -= 1
                self.nfalse[c] -= 1

    def apply_fixed(self, fixed) -> None:
        for v in range(1, self.n + 1):
            b = int(fixed[v])
            if b >= 0:
                self.assign(v, b)

    def first_unsat(self, start: int) -> int:
        c = start
        while self.ntrue[c] > 0:
            c += 1
        return c

    def branch_var(self, c: int) -> int:
        for j in range(3 * c, 3 * c + 3):
            v = abs(self.lits[j])
            if self.val[v] < 0:
                return v
        raise AssertionError("no unassigned literal in branch clause")


# ---------------------------------------------------------------------------
# exhaustive (capped) solution counting


def count_solutions(n: int, lits, cap: int, fixed=None) -> tuple[int, bool]:
    """Exact number of satisfying total assignments, stopping early at
    ``cap``.  Returns (count clamped at cap, stopped-early flag).

    Unit propagation is sound here: a clause with one unassigned and no
    true literal forces that literal in every satisfying extension.
    """
    if cap < 1:
        raise ValueError("cap must be >= 1")
    if n > 62:
        raise ValueError("counting kernels support n <= 62")
    st = _State(n, lits)
    if fixed is not None:
        st.apply_fixed(fixed)
        if st.num_empty > 0:
            return (0, False)
    box = [0]

    def rec(scan_from: int) -> bool:
        if st.num_empty > 0:
            return False
        trail: list[int] = []
        while st.num_sat < st.m and st.num_empty == 0:
            unit = -1
            for c in range(scan_from, st.m):
                if st.ntrue[c] == 0 and st.nfalse[c] == 2:
                    unit = c
                    break
            if unit < 0:
                break
            for j in range(3 * unit, 3 * unit + 3):
                lit = st.lits[j]
                v = abs(lit)
                if st.val[v] < 0:
                    st.assign(v, 1 if lit > 0 else 0)
                    trail.append(v)
                    break
        capped = False
        if st.num_empty == 0:
            if st.num_sat == st.m:
                box[0] += 1 << (st.n - st.nassigned)
                if box[0] >= cap:
                    box[0] = cap
                    capped = True
            else:
                c = st.first_unsat(scan_from)
                v = st.branch_var(c)
                for b in (1, 0):
                    st.assign(v, b)
                    capped = rec(c)
                    st.unassign(v)
                    if capped:
                        break
        for v in reversed(trail):
            st.unassign(v)
        return capped

    capped = rec(0)
    return (box[0], capped)


# ---------------------------------------------------------------------------
# energy-level counting (assignments violating exactly k clauses)

METHOD_AUTO = 0
METHOD_SWEEP = 1
METHOD_BRANCH = 2

_SWEEP_MAX_FREE = 24


def count_energy_states(n: int, lits, k: int, fixed=None, method: int = 0) -> int:
    """Number of total assignments extending ``fixed`` with exactly ``k``
    unsatisfied clauses.

    Gray-code sweep of all extensions up to 24 free variables, otherwise a
    branch-and-bound that prunes once the violated-clause count can no
    longer land on k; both agree wherever both apply.
    """
    if n > 62:
        raise ValueError("counting kernels support n <= 62")
    m = len(lits) // 3
    free = [v for v in range(1, n + 1)] if fixed is None else [
        v for v in range(1, n + 1) if fixed[v] < 0
    ]
    if method == METHOD_AUTO:
        method = METHOD_SWEEP if len(free) <= _SWEEP_MAX_FREE else METHOD_BRANCH
    if method == METHOD_SWEEP:
        return _energy_sweep(n, lits, m, k, fixed, free)
    if method == METHOD_BRANCH:
        return _energy_branch(n, lits, m, k, fixed, free)
    raise ValueError(f"unknown method {method}")


def _energy_sweep(n, lits, m, k, fixed, free) -> int:
    if len(free) > _SWEEP_MAX_FREE:
        raise ValueError("sweep supports at most 24 free variables")
    val = [0] * (n + 1)
    if fixed is not None:
        for v in range(1, n + 1):
            if fixed[v] > 0:
                val[v] = 1
    occ: list[list[tuple[int, int]]] = [[] for _ in range(n + 1)]
    nfalse = [0] * m
    lits = [int(x) for x in lits]
    for i, lit in enumerate(lits):
        v = abs(lit)
        occ[v].append((i // 3, 1 if lit > 0 else -1))
        if (lit > 0) != (val[v] == 1):
            nfalse[i // 3] += 1
    e = sum(1 for x in nfalse if x == 3)
    count = 1 if e == k else 0
    for t in range(1, 1 << len(free)):
        v = free[(t & -t).bit_length() - 1]
        old = val[v]
        val[v] = 1 - old
        for c, s in occ[v]:
            if (s > 0) == (old == 1):
                nfalse[c] += 1
                if nfalse[c] == 3:
                    e += 1
            else:
                if nfalse[c] == 3:
                    e -= 1
                nfalse[c] -= 1
        if e == k:
            count += 1
    return count


def _energy_branch(n, lits, m, k, fixed, free) -> int:
    st = _State(n, lits)
    violated = [0]
    undetermined = [m]

    def adjust_assign(v, b):
        st.val[v] = b
        st.nassigned += 1
        for c, s in st.occ[v]:
            if (s > 0) == (b == 1):
                st.ntrue[c] += 1
                if st.ntrue[c] == 1:
                    undetermined[0] -= 1
            else:
                st.nfalse[c] += 1
                if st.nfalse[c] == 3:
                    violated[0] += 1
                    undetermined[0] -= 1

    def adjust_unassign(v):
        b = st.val[v]
        st.val[v] = -1
        st.nassigned -= 1
        for c, s in st.occ[v]:
            if (s > 0) == (b == 1):
                st.ntrue[c] -= 1
                if st.ntrue[c] == 0:
                    undetermined[0] += 1
            else:
                if st.nfalse[c] == 3:
                    violated[0] -= 1
                    undetermined[0] += 1
                st.nfalse[c] -= 1

    if fixed is not None:
        for v in range(1, n + 1):
            if fixed[v] >= 0:
                adjust_assign(v, int(fixed[v]))
    count = [0]

    def rec(idx: int) -> None:
        if violated[0] > k or violated[0] + undetermined[0] < k:
            return
        if idx == len(free):
            if violated[0] == k:
                count[0] += 1
            return
        v = free[idx]
        for b in (1, 0):
            adjust_assign(v, b)
            rec(idx + 1)
            adjust_unassign(v)

    rec(0)
    return count[0]


# ---------------------------------------------------------------------------
# DPLL decision solver

VALUE_TRUE_FIRST = 0
VALUE_FALSE_FIRST = 1
VALUE_RANDOM = 2

BRANCH_FIRST_UNSAT = 0
BRANCH_LOWEST_INDEX = 1


def _snapshot(st: _State) -> bytes:
    # Variables still unassigned when all clauses are satisfied are free;
    # they are reported as True.
    return bytes(0 if st.val[v] == 0 else 1 for v in range(1, st.n + 1))


def _find_unit(st: _State, scan_from: int) -> int:
    """First clause (from scan_from) with no true literal and exactly one
    unassigned; its literal is forced in every satisfying extension."""
    for c in range(scan_from, st.m):
        if st.ntrue[c] == 0 and st.nfalse[c] == 2:
            return c
    return -1


def _forced_literal(st: _State, c: int) -> int:
    for j in range(3 * c, 3 * c + 3):
        lit = st.lits[j]
        if st.val[abs(lit)] < 0:
            return lit
    raise AssertionError("no unassigned literal in unit clause")


def dpll_solve(
    n: int,
    lits,
    value_order: int = VALUE_TRUE_FIRST,
    seed: int = 0,
    unit_rule: bool = True,
    branch_rule: int = BRANCH_FIRST_UNSAT,
) -> tuple[bool, int, bytes | None]:
    """Recursive DPLL decision search; every call assigns one variable.

    A unit clause forces its literal through a single-child call; otherwise
    the branch variable is the first unassigned one of the first
    not-yet-satisfied clause (in stored order).  Returns (satisfiable,
    recursive calls, witness assignment or None).
    """
    st = _State(n, lits)
    rng = Xoshiro256(seed) if value_order == VALUE_RANDOM else None
    calls = [0]
    witness: list[bytes | None] = [None]

    def rec(scan_from: int) -> bool:
        calls[0] += 1
        if st.num_empty > 0:
            return False
        if st.num_sat == st.m:
            witness[0] = _snapshot(st)
            return True
        if unit_rule:
            c = _find_unit(st, scan_from)
            if c >= 0:
                lit = _forced_literal(st, c)
                st.assign(abs(lit), 1 if lit > 0 else 0)
                found = rec(scan_from)
                st.unassign(abs(lit))
                return found
        if branch_rule == BRANCH_FIRST_UNSAT:
            c = st.first_unsat(scan_from)
            v = st.branch_var(c)
        else:
            c = scan_from
            v = 1
            while st.val[v] >= 0:
                v += 1
        if value_order == VALUE_TRUE_FIRST:
            first = 1
        elif value_order == VALUE_FALSE_FIRST:
            first = 0
        else:
            first = 1 if rng.below(2) == 0 else 0
        for b in (first, 1 - first):
            st.assign(v, b)
            found = rec(c)
            st.unassign(v)
            if found:
                return True
        return False

    sat = rec(0)
    return (sat, calls[0], witness[0])


def dpll_solve_recorded(
    n: int,
    lits,
    value_order: int = VALUE_TRUE_FIRST,
    seed: int = 0,
    unit_rule: bool = True,
    branch_rule: int = BRANCH_FIRST_UNSAT,
) -> tuple[bool, int, bytes | None, list[tuple]]:
    """Like :func:`dpll_solve` but records the search tree.

    Node tuples are (id, parent_id, depth, branch_literal, kind) with kind
    in {"internal", "contradiction", "solution"}; depth is the number of
    assigned variables, branch_literal 0 for the root.  Unit-forced nodes
    are internal nodes with a single child.  RNG use matches dpll_solve.
    """
    st = _State(n, lits)
    rng = Xoshiro256(seed) if value_order == VALUE_RANDOM else None
    nodes: list[tuple] = []
    witness: list[bytes | None] = [None]

    def rec(scan_from: int, parent: int, branch_lit: int) -> bool:
        node_id = len(nodes)
        if st.num_empty > 0:
            nodes.append((node_id, parent, st.nassigned, branch_lit, "contradiction"))
            return False
        if st.num_sat == st.m:
            witness[0] = _snapshot(st)
            nodes.append((node_id, parent, st.nassigned, branch_lit, "solution"))
            return True
        nodes.append((node_id, parent, st.nassigned, branch_lit, "internal"))
        if unit_rule:
            c = _find_unit(st, scan_from)
            if c >= 0:
                lit = _forced_literal(st, c)
                st.assign(abs(lit), 1 if lit > 0 else 0)
                found = rec(scan_from, node_id, lit)
                st.unassign(abs(lit))
                return found
        if branch_rule == BRANCH_FIRST_UNSAT:
            c = st.first_unsat(scan_from)
            v = st.branch_var(c)
        else:
            c = scan_from
            v = 1
            while st.val[v] >= 0:
                v += 1
        if value_order == VALUE_TRUE_FIRST:
            first = 1
        elif value_order == VALUE_FALSE_FIRST:
            first = 0
        else:
            first = 1 if rng.below(2) == 0 else 0
        for b in (first, 1 - first):
            st.assign(v, b)
            found = rec(c, node_id, v if b else -v)
            st.unassign(v)
            if found:
                return True
        return False

    sat = rec(0, -1, 0)
    return (sat, len(nodes), witness[0], nodes)


# ---------------------------------------------------------------------------
# stochastic local search

ALG_GWSAT = 0
ALG_WALKSAT = 1
ALG_NOVELTY = 2


class SlsEngine:
    """Incremental SLS state: per-clause true-literal counts, the unsatisfied
    clause list, and make/break counters per variable.

    Exposed (rather than hidden inside sls_run) so tests can drive single
    steps and verify each selection rule against from-scratch recomputation.
    """

    def __init__(self, n: int, lits, seed: int):
        self.n = n
        self.m = len(lits) // 3
        self.lits = [int(x) for x in lits]
        occ: list[list[tuple[int, int]]] = [[] for _ in range(n + 1)]
        for i, lit in enumerate(self.lits):
            v = abs(lit)
            if v < 1 or v > n:
                raise ValueError(f"literal {lit} out of range for n={n}")
            occ[v].append((i // 3, 1 if lit > 0 else -1))
        self.occ = occ
        self.rng = Xoshiro256(seed)
        self.val = [0] * (n + 1)
        self.ntrue = [0] * self.m
        self.unsat: list[int] = []
        self.pos = [-1] * self.m
        self.make = [0] * (n + 1)
        self.brk = [0] * (n + 1)
        self.critvar = [0] * self.m
        self.last_flip = [0] * (n + 1)
        self.step = 0
        self.energy = 0
        self.last_step_kind = ""

    # -- state setup ------------------------------------------------------

    def init_assignment(self) -> None:
        """Draw a fresh uniform assignment (one bit per variable, in index
        order) and rebuild the incremental structures."""
        for v in range(1, self.n + 1):
            self.val[v] = self.rng.below(2)
        self.rebuild()
        for v in range(1, self.n + 1):
            self.last_flip[v] = 0
        self.step = 0

    def rebuild(self) -> None:
        lits = self.lits
        val = self.val
        self.ntrue = [0] * self.m
        self.unsat = []
        self.pos = [-1] * self.m
        self.make = [0] * (self.n + 1)
        self.brk = [0] * (self.n + 1)
        self.critvar = [0] * self.m
        for c in range(self.m):
            nt = 0
            tv = 0
            for j in range(3 * c, 3 * c + 3):
                lit = lits[j]
                if (lit > 0) == (val[abs(lit)] == 1):
                    nt += 1
                    tv = abs(lit)
            self.ntrue[c] = nt
            if nt == 0:
                self.pos[c] = len(self.unsat)
                self.unsat.append(c)
                for j in range(3 * c, 3 * c + 3):
                    self.make[abs(lits[j])] += 1
            elif nt == 1:
                self.critvar[c] = tv
                self.brk[tv] += 1
        self.energy = len(self.unsat)

    def energy_from_scratch(self) -> int:
        count = 0
        for c in range(self.m):
            sat = False
            for j in range(3 * c, 3 * c + 3):
                lit = self.lits[j]
                if (lit > 0) == (self.val[abs(lit)] == 1):
                    sat = True
                    break
            if not sat:
                count += 1
        return count

    def assignment_bytes(self) -> bytes:
        return bytes(self.val[1:])

    # -- incremental flip -------------------------------------------------

    def _unsat_add(self, c: int) -> None:
        self.pos[c] = len(self.unsat)
        self.unsat.append(c)

    def _unsat_remove(self, c: int) -> None:
        i = self.pos[c]
        last = self.unsat.pop()
        if last != c:
            self.unsat[i] = last
            self.pos[last] = i
        self.pos[c] = -1

    def flip(self, v: int) -> None:
        old = self.val[v]
        self.val[v] = 1 - old
        lits = self.lits
        for c, s in self.occ[v]:
            if (s > 0) == (old == 1):
                # this literal turns false
                self.ntrue[c] -= 1
                if self.ntrue[c] == 0:
                    self._unsat_add(c)
                    self.energy += 1
                    for j in range(3 * c, 3 * c + 3):
                        self.make[abs(lits[j])] += 1
                    self.brk[v] -= 1
                elif self.ntrue[c] == 1:
                    for j in range(3 * c, 3 * c + 3):
                        lit = lits[j]
                        if (lit > 0) == (self.val[abs(lit)] == 1):
                            self.critvar[c] = abs(lit)
                            self.brk[abs(lit)] += 1
                            break
            else:
                # this literal turns true
                self.ntrue[c] += 1
                if self.ntrue[c] == 1:
                    self._unsat_remove(c)
                    self.energy -= 1
                    for j in range(3 * c, 3 * c + 3):
                        self.make[abs(lits[j])] -= 1
                    self.critvar[c] = v
                    self.brk[v] += 1
                elif self.ntrue[c] == 2:
                    self.brk[self.critvar[c]] -= 1
        self.step += 1
        self.last_flip[v] = self.step

    # -- step rules --------------------------------------------------------

    def _random_unsat_var(self) -> int:
        c = self.unsat[self.rng.below(len(self.unsat))]
        return abs(self.lits[3 * c + self.rng.below(3)])

    def gwsat_step(self, p: float) -> int:
        """With probability p a random variable from a random unsatisfied
        clause, else the flip maximizing satisfied clauses (ties uniform)."""
        if self.rng.unit() < p:
            v = self._random_unsat_var()
            self.last_step_kind = "walk"
        else:
            best = None
            ties: list[int] = []
            for u in range(1, self.n + 1):
                g = self.make[u] - self.brk[u]
                if best is None or g > best:
                    best = g
                    ties = [u]
                elif g == best:
                    ties.append(u)
            v = ties[self.rng.below(len(ties))]
            self.last_step_kind = "gsat"
        self.flip(v)
        return v

    def walksat_step(self, p: float) -> int:
        """SKC rule: zero-break variable if one exists in a random
        unsatisfied clause, else noise p random / greedy min-break."""
        c = self.unsat[self.rng.below(len(self.unsat))]
        vs = [abs(self.lits[3 * c]), abs(self.lits[3 * c + 1]), abs(self.lits[3 * c + 2])]
        breaks = [self.brk[u] for u in vs]
        minb = min(breaks)
        if minb == 0:
            cands = [u for u, b in zip(vs, breaks) if b == 0]
            v = cands[self.rng.below(len(cands))]
            self.last_step_kind = "freebie"
        elif self.rng.unit() < p:
            v = vs[self.rng.below(3)]
            self.last_step_kind = "walk"
        else:
            cands = [u for u, b in zip(vs, breaks) if b == minb]
            v = cands[self.rng.below(len(cands))]
            self.last_step_kind = "greedy"
        self.flip(v)
        return v

    def novelty_step(self, wp: float, noise: float) -> int:
        """Novelty+ rule: random walk with probability wp; otherwise rank the
        variables of a random unsatisfied clause by score (break ties in
        favor of the least recently flipped, then clause order) and flip the
        best, unless it is the clause's most recently flipped variable, in
        which case the second best is taken with probability ``noise``."""
        if self.rng.unit() < wp:
            v = self._random_unsat_var()
            self.last_step_kind = "walk"
        else:
            c = self.unsat[self.rng.below(len(self.unsat))]
            vs = [abs(self.lits[3 * c]), abs(self.lits[3 * c + 1]), abs(self.lits[3 * c + 2])]
            ranked = sorted(
                range(3),
                key=lambda i: (self.brk[vs[i]] - self.make[vs[i]], self.last_flip[vs[i]], i),
            )
            best, second = vs[ranked[0]], vs[ranked[1]]
            youngest = vs[0]
            for u in vs[1:]:
                if self.last_flip[u] > self.last_flip[youngest]:
                    youngest = u
            if best != youngest:
                v = best
                self.last_step_kind = "novelty-best"
            elif self.rng.unit() < noise:
                v = second
                self.last_step_kind = "novelty-second"
            else:
                v = best
                self.last_step_kind = "novelty-best"
        self.flip(v)
        return v


def sls_run(
    alg: int,
    n: int,
    lits,
    p: float,
    wp: float,
    max_flips: int,
    tries: int,
    seed: int,
    noise_inc: float = 0.2,
    noise_dec: float = 0.1,
    adapt_theta: float = 1.0 / 6.0,
    check_every: int = 0,
) -> tuple[bool, int, int, bytes | None]:
    """Run one SLS algorithm; returns (found, total flips, tries used,
    witness assignment or None).

    Failed runs report exactly tries*max_flips flips.  For adaptive
    Novelty+ the noise starts at 0 each try, rises by (1-noise)*noise_inc
    after round(m*adapt_theta) steps without improving the best energy seen
    since the last adaptation, and falls by noise*noise_dec on improvement.
    """
    eng = SlsEngine(n, lits, seed)
    m = eng.m
    # floor(x+0.5), not round(): half-up in both backends, no banker's rounding
    thresh = max(1, int(math.floor(m * adapt_theta + 0.5)))
    total = 0
    for t in range(1, tries + 1):
        eng.init_assignment()
        if eng.energy == 0:
            return (True, total, t, eng.assignment_bytes())
        noise = 0.0
        best_e = eng.energy
        last_adapt = 0
        for step in range(1, max_flips + 1):
            if alg == ALG_GWSAT:
                eng.gwsat_step(p)
            elif alg == ALG_WALKSAT:
                eng.walksat_step(p)
            elif alg == ALG_NOVELTY:
                eng.novelty_step(wp, noise)
                if eng.energy < best_e:
                    best_e = eng.energy
                    noise -= noise * noise_dec
                    last_adapt = step
                elif step - last_adapt > thresh:
                    noise += (1.0 - noise) * noise_inc
                    best_e = eng.energy
                    last_adapt = step
            else:
                raise ValueError(f"unknown algorithm id {alg}")
            total += 1
            if check_every and total % check_every == 0:
                if eng.energy != eng.energy_from_scratch():
                    raise RuntimeError("incremental energy diverged from recount")
            if eng.energy == 0:
                return (True, total, t, eng.assignment_bytes())
    return (False, total, tries, None)


# ---------------------------------------------------------------------------
# batched generate-and-count scanning (the r=1 filter hot loop)


def scan_attempts(n: int, m: int, gen_root: int, start: int, count: int, cap: int, out) -> None:
    """For attempt indices start..start+count-1: generate the formula from
    stream_seed(gen_root, index) and store its cap-limited solution count
    (clamped to 255) in ``out``."""
    if cap < 1 or cap > 255:
        raise ValueError("scan cap must be in 1..255")
    scratch = [0] * (3 * m)
    for i in range(count):
        seed = stream_seed(gen_root, start + i)
        fill_random_clauses(n, m, seed, scratch)
        c, _ = count_solutions(n, scratch, cap)
        out[i] = c
