"""satlab: random 3-SAT ensembles with a fixed number of solutions.

Generation of seeded uniform random 3-SAT instances, exact (capped) model
counting, filter-based construction of single-solution ensembles, an
instrumented DPLL solver with search-tree recording, GWSAT / Walksat /
Adaptive Novelty+ local search, and a benchmark harness for density sweeps
and size-scaling fits.

Hot kernels run in the compiled extension ``satlab._core`` when built,
with a bit-identical pure-Python fallback; see ``satlab.backend_name()``.
"""

from ._backend import backend_name
from .cnf import (
    Assignment,
    Clause,
    DimacsError,
    Formula,
    Literal,
    PartialAssignment,
    SimplifiedFormula,
    energy,
    evaluate,
    parse_dimacs,
    simplify,
    write_dimacs,
)
from .counting import (
    CountResult,
    backbone,
    count_energy_states,
    count_energy_states_under,
    count_solutions,
    enumerate_solutions,
)
from .dpll import DpllConfig, DpllOutcome, SearchTree, TreeNode, annotate_excited, export_tree, solve
from .ensemble import AcceptanceStats, EnsembleSpec, InstanceRecord, build_ensemble, estimate_p_r1
from .generator import GenSpec, alpha_to_m, generate, random_clause
from .localsearch import SlsParams, SlsRun, adaptive_novelty_plus, gwsat, walksat
from .bench import (
    Curve,
    FitResult,
    RunStats,
    SweepConfig,
    aggregate,
    alpha_sweep,
    fit_exponential,
    fit_powerlaw,
    scaling_run,
)

__version__ = "0.1.0"

__all__ = [
    "AcceptanceStats", "Assignment", "Clause", "CountResult", "Curve",
    "DimacsError", "DpllConfig", "DpllOutcome", "EnsembleSpec", "FitResult",
    "Formula", "GenSpec", "InstanceRecord", "Literal", "PartialAssignment",
    "RunStats", "SearchTree", "SimplifiedFormula", "SlsParams", "SlsRun",
    "SweepConfig", "TreeNode", "adaptive_novelty_plus", "aggregate",
    "alpha_sweep", "alpha_to_m", "annotate_excited", "backbone",
    "backend_name", "build_ensemble", "count_energy_states",
    "count_energy_states_under", "count_solutions", "energy",
    "enumerate_solutions", "estimate_p_r1", "evaluate", "export_tree",
    "fit_exponential", "fit_powerlaw", "generate", "gwsat", "parse_dimacs",
    "random_clause", "scaling_run", "simplify", "solve", "walksat",
    "write_dimacs",
]
