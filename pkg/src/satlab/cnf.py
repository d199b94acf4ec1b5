"""3-CNF formulas, truth assignments, evaluation, and DIMACS round-trips.

Literals follow the DIMACS convention: the positive literal of variable
``v`` (numbered from 1) is the integer ``v``, its negation is ``-v``.  An
assignment is a sequence of ``n`` booleans where index ``i`` holds the
value of variable ``i+1``; the spin encoding maps value True to spin +1.

Formulas are immutable; clause order is significant and preserved by the
DIMACS writer, so seeded generation round-trips byte for byte.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping, Sequence

import numpy as np

Literal = int
Clause = tuple[Literal, ...]
Assignment = Sequence[bool]
PartialAssignment = Mapping[int, bool]


class DimacsError(ValueError):
    """Malformed DIMACS CNF input."""


@dataclass(frozen=True)
class Formula:
    """A CNF formula over variables 1..n.

    Instances produced by the generator are strictly 3-CNF with pairwise
    distinct variables per clause; :func:`parse_dimacs` can relax both
    checks (``strict=False``) for interoperability, but the solver kernels
    accept strict 3-CNF only.
    """

    n: int
    clauses: tuple[Clause, ...]

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("variable count must be nonnegative")
        object.__setattr__(self, "clauses", tuple(tuple(c) for c in self.clauses))
        for clause in self.clauses:
            for lit in clause:
                if lit == 0 or abs(lit) > self.n:
                    raise ValueError(f"literal {lit} out of range for n={self.n}")

    @property
    def m(self) -> int:
        return len(self.clauses)

    @property
    def alpha(self) -> float:
        """Clause density m/n."""
        if self.n == 0:
            raise ValueError("alpha undefined for n=0")
        return len(self.clauses) / self.n

    def is_strict_3cnf(self) -> bool:
        return all(
            len(c) == 3 and len({abs(l) for l in c}) == 3 for c in self.clauses
        )

    @cached_property
    def _packed(self) -> np.ndarray:
        if not self.is_strict_3cnf():
            raise ValueError("solver kernels require strict 3-CNF clauses")
        arr = np.fromiter(
            (lit for clause in self.clauses for lit in clause),
            dtype=np.int32,
            count=3 * len(self.clauses),
        )
        arr.flags.writeable = False
        return arr

    def packed(self) -> np.ndarray:
        """Flat int32 literal array (3 per clause) for the solver kernels."""
        return self._packed


def clause_satisfied(clause: Clause, a: Assignment) -> bool:
    return any(a[abs(lit) - 1] == (lit > 0) for lit in clause)


def evaluate(f: Formula, a: Assignment) -> bool:
    """True iff every clause has at least one literal satisfied by ``a``."""
    if len(a) != f.n:
        raise ValueError(f"assignment has {len(a)} values, formula has n={f.n}")
    return all(clause_satisfied(c, a) for c in f.clauses)


def energy(f: Formula, a: Assignment) -> int:
    """Number of clauses unsatisfied by ``a`` (0 exactly for solutions)."""
    if len(a) != f.n:
        raise ValueError(f"assignment has {len(a)} values, formula has n={f.n}")
    return sum(not clause_satisfied(c, a) for c in f.clauses)


@dataclass(frozen=True)
class SimplifiedFormula:
    """Residual formula after assigning literals; clauses may shrink below 3.

    Internal to the solving machinery: the public :class:`Formula` stays
    strictly 3-CNF.  ``has_empty_clause`` marks a contradiction,
    ``satisfied`` that no clauses remain.
    """

    n: int
    clauses: tuple[Clause, ...]
    has_empty_clause: bool
    satisfied: bool


def simplify(f: Formula | SimplifiedFormula, lit: Literal) -> SimplifiedFormula:
    """Assign ``lit`` true: drop satisfied clauses, strip falsified literals.

    Solutions of the residual (over the remaining variables) are exactly
    the solutions of ``f`` restricted to ``lit`` being true.
    """
    if lit == 0 or abs(lit) > f.n:
        raise ValueError(f"literal {lit} out of range for n={f.n}")
    residual = []
    has_empty = False
    for clause in f.clauses:
        if lit in clause:
            continue
        reduced = tuple(l for l in clause if l != -lit)
        if not reduced:
            has_empty = True
        residual.append(reduced)
    return SimplifiedFormula(
        n=f.n,
        clauses=tuple(residual),
        has_empty_clause=has_empty,
        satisfied=not residual,
    )


def write_dimacs(f: Formula, comments: Iterable[str] = ()) -> str:
    lines = [f"c {c}" for c in comments]
    lines.append(f"p cnf {f.n} {f.m}")
    for clause in f.clauses:
        lines.append(" ".join(str(lit) for lit in clause) + " 0")
    return "\n".join(lines) + "\n"


def parse_dimacs(text: str, strict: bool = True) -> Formula:
    """Parse DIMACS CNF text.

    ``strict`` additionally requires every clause to have exactly 3
    pairwise-distinct variables (the generation invariant).
    """
    n = m = None
    clauses: list[Clause] = []
    current: list[int] = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        if line.startswith("p"):
            if n is not None:
                raise DimacsError("duplicate problem line")
            parts = line.split()
            if len(parts) != 4 or parts[1] != "cnf":
                raise DimacsError(f"malformed problem line: {line!r}")
            try:
                n, m = int(parts[2]), int(parts[3])
            except ValueError as exc:
                raise DimacsError(f"malformed problem line: {line!r}") from exc
            if n < 0 or m < 0:
                raise DimacsError(f"negative counts in problem line: {line!r}")
            continue
        if n is None:
            raise DimacsError("clause data before problem line")
        for tok in line.split():
            try:
                lit = int(tok)
            except ValueError as exc:
                raise DimacsError(f"bad token {tok!r}") from exc
            if lit == 0:
                clauses.append(tuple(current))
                current.clear()
            else:
                if abs(lit) > n:
                    raise DimacsError(f"literal {lit} out of range for n={n}")
                current.append(lit)
    if n is None:
        raise DimacsError("missing problem line")
    if current:
        raise DimacsError("unterminated clause at end of input")
    if len(clauses) != m:
        raise DimacsError(f"header declares {m} clauses, found {len(clauses)}")
    if strict:
        for i, clause in enumerate(clauses):
            if len(clause) != 3:
                raise DimacsError(f"clause {i + 1} has width {len(clause)}, want 3")
            if len({abs(l) for l in clause}) != 3:
                raise DimacsError(f"clause {i + 1} repeats a variable")
    return Formula(n=n, clauses=tuple(clauses))
