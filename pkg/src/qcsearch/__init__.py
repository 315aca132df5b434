"""qcsearch: hybrid quantum-then-classical search, measured and modeled.

The library answers one question from several directions: how many
oracle queries does it take to find a hidden n-bit string when quantum
search hands off to a classical scan at Hamming radius k?

* :mod:`qcsearch.query_model` - exact analytic costs and gains, the
  optimal switchover radius, and reconciliation against published
  reference gains.
* :mod:`qcsearch.grover` - a dense statevector simulator for desk-scale
  widths (n <= 24).
* :mod:`qcsearch.hybrid` - query-counted strategies (hybrid, pure
  quantum, pure classical, distance-guided bit repair) under a
  reproducible Monte Carlo harness.
* :mod:`qcsearch.service` / :mod:`qcsearch.cli` - FastAPI service plus a
  thin CLI client.
"""

__version__ = "0.1.0"

from .bitstring import BallSpec, BitString, ball_iter, ball_rank, ball_unrank, hamming_distance, random_bitstring
from .combinatorics import LogReal, ball_count, binomial, log_pow2, m_opt_continuous, to_log
from .errors import AdmissibilityError, InvariantError
from .grover import GroverPlan, StateVector, init_uniform, grover_iterate, marked_mass, measure, plan, run
from .hybrid import (
    MonteCarloConfig,
    MonteCarloSummary,
    TrialRecord,
    classical_phase,
    hybrid_search,
    monte_carlo,
    pure_classical,
    pure_quantum,
    smart_classical,
)
from .oracles import (
    PromiseFunction,
    QueryLedger,
    SolutionInstance,
    dist_query,
    equality_query,
    marked_set,
    promise_query,
    threshold_query,
)
from .query_model import (
    HybridModel,
    PromiseModel,
    evaluate,
    evaluate_promise,
    g_min_closed_form,
    k_opt,
    n_c,
    n_g,
    reference_table,
)

__all__ = [
    "__version__",
    "AdmissibilityError",
    "BallSpec",
    "BitString",
    "GroverPlan",
    "HybridModel",
    "InvariantError",
    "LogReal",
    "MonteCarloConfig",
    "MonteCarloSummary",
    "PromiseFunction",
    "PromiseModel",
    "QueryLedger",
    "SolutionInstance",
    "StateVector",
    "TrialRecord",
    "ball_count",
    "ball_iter",
    "ball_rank",
    "ball_unrank",
    "binomial",
    "classical_phase",
    "dist_query",
    "equality_query",
    "evaluate",
    "evaluate_promise",
    "g_min_closed_form",
    "grover_iterate",
    "hamming_distance",
    "hybrid_search",
    "init_uniform",
    "k_opt",
    "log_pow2",
    "m_opt_continuous",
    "marked_mass",
    "marked_set",
    "measure",
    "monte_carlo",
    "n_c",
    "n_g",
    "plan",
    "promise_query",
    "pure_classical",
    "pure_quantum",
    "random_bitstring",
    "reference_table",
    "run",
    "smart_classical",
    "threshold_query",
    "to_log",
]
