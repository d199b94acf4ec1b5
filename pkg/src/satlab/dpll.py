"""Complete DPLL search with its recursive-call metric and search trees.

Every recursive call assigns exactly one variable, so tree depth equals
the number of assigned variables at that node.  When a clause is reduced
to a single unassigned literal, that literal is forced through a
single-child call (the classic unit-clause rule; on by default and
disableable for experiments).  Otherwise the solver branches on the first
unassigned variable of the first clause, in stored order, that the current
partial assignment does not yet satisfy; the true branch is tried first by
default.  The number of recursive calls is the running-time metric.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import _pure, counting
from ._backend import kernels
from .cnf import Formula

_VALUE_ORDERS = {
    "true-first": _pure.VALUE_TRUE_FIRST,
    "false-first": _pure.VALUE_FALSE_FIRST,
    "random": _pure.VALUE_RANDOM,
}

_BRANCH_RULES = {
    "first-unsat-clause": _pure.BRANCH_FIRST_UNSAT,
    "lowest-index": _pure.BRANCH_LOWEST_INDEX,
}


@dataclass(frozen=True)
class DpllConfig:
    branching: str = "first-unsat-clause"
    value_order: str = "true-first"
    seed: int = 0  # used only by value_order="random"
    unit_rule: bool = True
    record_tree: bool = False

    def __post_init__(self):
        if self.branching not in _BRANCH_RULES:
            raise ValueError(f"unknown branching rule {self.branching!r}")
        if self.value_order not in _VALUE_ORDERS:
            raise ValueError(f"unknown value order {self.value_order!r}")


@dataclass
class TreeNode:
    """One recursive call; depth equals variables assigned on entry."""

    id: int
    parent: int | None
    depth: int
    branch_literal: int | None  # literal assigned entering this node; None at root
    kind: str                   # "internal" | "contradiction" | "solution"
    excited: int | None = None


@dataclass
class SearchTree:
    nodes: list[TreeNode] = field(default_factory=list)

    @property
    def node_count(self) -> int:
        return len(self.nodes)

    def children(self, node_id: int) -> list[int]:
        return [nd.id for nd in self.nodes if nd.parent == node_id]

    def prefix_assignment(self, node_id: int) -> dict[int, bool]:
        """Partial assignment in effect at a node (its branch path)."""
        lits: list[int] = []
        nd = self.nodes[node_id]
        while True:
            if nd.branch_literal:
                lits.append(nd.branch_literal)
            if nd.parent is None:
                break
            nd = self.nodes[nd.parent]
        return {abs(l): l > 0 for l in lits}


@dataclass(frozen=True)
class DpllOutcome:
    satisfiable: bool
    assignment: tuple[bool, ...] | None
    calls: int
    tree: SearchTree | None = None


def solve(f: Formula, cfg: DpllConfig = DpllConfig()) -> DpllOutcome:
    """Decide satisfiability, stopping at the first solution found."""
    order = _VALUE_ORDERS[cfg.value_order]
    rule = _BRANCH_RULES[cfg.branching]
    seed = cfg.seed & ((1 << 64) - 1)
    if cfg.record_tree:
        sat, calls, witness, raw = _pure.dpll_solve_recorded(
            f.n, f.packed(), order, seed, cfg.unit_rule, rule
        )
        nodes = [
            TreeNode(
                id=nid,
                parent=None if parent < 0 else parent,
                depth=depth,
                branch_literal=branch or None,
                kind=kind,
            )
            for nid, parent, depth, branch, kind in raw
        ]
        tree = SearchTree(nodes=nodes)
    else:
        sat, calls, witness = kernels.dpll_solve(
            f.n, f.packed(), order, seed, cfg.unit_rule, rule
        )
        tree = None
    assignment = tuple(b == 1 for b in witness) if witness is not None else None
    return DpllOutcome(satisfiable=sat, assignment=assignment, calls=calls, tree=tree)


def annotate_excited(tree: SearchTree, f: Formula) -> SearchTree:
    """Attach to every node the number of assignments extending its partial
    assignment that violate exactly one clause."""
    for nd in tree.nodes:
        pa = tree.prefix_assignment(nd.id)
        for v in pa:
            if not 1 <= v <= f.n:
                raise ValueError(f"tree variable {v} outside formula range n={f.n}")
        nd.excited = counting.count_energy_states_under(f, pa, 1)
    return tree


def export_tree(tree: SearchTree, format: str, labels: str = "depth") -> str:
    """Serialize a search tree for plotting.

    ``format``: "dot" or "net" (Pajek).  ``labels``: "depth" (assigned
    variables per node) or "excited" (requires annotate_excited first).
    Nodes are emitted in id order, which is the order calls were made.
    """
    if labels == "depth":
        text = {nd.id: str(nd.depth) for nd in tree.nodes}
    elif labels == "excited":
        if any(nd.excited is None for nd in tree.nodes):
            raise ValueError("tree has no excited-state annotations")
        text = {nd.id: str(nd.excited) for nd in tree.nodes}
    else:
        raise ValueError(f"unknown label mode {labels!r}")
    nodes = sorted(tree.nodes, key=lambda nd: nd.id)
    if format == "dot":
        lines = ["digraph searchtree {"]
        for nd in nodes:
            lines.append(f'  n{nd.id} [label="{text[nd.id]}"];')
        for nd in nodes:
            if nd.parent is not None:
                lines.append(f"  n{nd.parent} -> n{nd.id};")
        lines.append("}")
        return "\n".join(lines) + "\n"
    if format in ("net", "pajek-net"):
        lines = [f"*Vertices {len(nodes)}"]
        for nd in nodes:
            lines.append(f'{nd.id + 1} "{text[nd.id]}"')
        lines.append("*Arcs")
        for nd in nodes:
            if nd.parent is not None:
                lines.append(f"{nd.parent + 1} {nd.id + 1}")
        return "\n".join(lines) + "\n"
    raise ValueError(f"unknown tree format {format!r}")
