"""End-to-end search strategies and their Monte Carlo evaluation.

Four strategies, all Las Vegas (they restart until the answer is
verified, so every trial ends found):

* ``hybrid``          - amplitude amplification against the radius-k
                        threshold oracle, then a classical scan of the
                        ball around the measured string.
* ``pure_quantum``    - amplitude amplification against the equality
                        oracle alone.
* ``pure_classical``  - shuffled scan of the whole cube.
* ``smart_classical`` - bit-by-bit repair driven by the distance oracle:
                        flip each bit in ascending position order, keep
                        the flip iff the distance decreased, stop at 0.

Two quantum engines: ``statevector`` runs the dense simulator (n <= 24);
``idealized`` samples measurement outcomes from their exact distribution
(marked and unmarked amplitudes each stay equal, so the outcome is a
uniform marked element with probability p, else a uniform unmarked one),
which extends Monte Carlo to widths where 2^n amplitudes are
unthinkable.  The idealized engine also samples the classical scan's
stopping position from its exact law instead of materializing up to
M ~ 1e9 probes; the final, successful probe is issued for real so every
trial still ends with a verifying query.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .bitstring import (
    BallSpec,
    BitString,
    _shell_unrank,
    ball_rank,
    ball_unrank,
    random_bitstring,
)
from .combinatorics import ball_count
from .errors import InvariantError
from .grover import MAX_QUBITS, GroverPlan, plan, _run_indices, _sample_index
from .oracles import (
    QueryLedger,
    SolutionInstance,
    dist_query,
    equality_query,
    simulator_view,
    threshold_marked_indices,
    threshold_query,
)
from .query_model import HybridModel, evaluate

STRATEGIES = ("hybrid", "pure_quantum", "pure_classical", "smart_classical")
ENGINES = ("statevector", "idealized")
ORDERS = ("shuffled", "canonical")

# Above this ball size a shuffled scan would materialize an impractical
# permutation; callers should be on the idealized engine well before.
MAX_EXPLICIT_SCAN = 1 << 26


@dataclass
class TrialRecord:
    """Outcome and cost accounting of one search trial."""

    strategy: str
    n: int
    k: Optional[int]
    restarts: int
    ledger: QueryLedger
    found: bool
    measured: Optional[BitString] = None
    solution_position_in_scan: Optional[int] = None
    seed: int = 0


@dataclass(frozen=True)
class CounterStats:
    """Summary statistics of one counter across trials."""

    mean: float
    stddev: float
    min: float
    max: float
    ci95_low: float
    ci95_high: float


@dataclass(frozen=True)
class MonteCarloSummary:
    strategy: str
    n: int
    k: Optional[int]
    trials: int
    seed: int
    engine: str
    order: str
    per_kind: dict[str, CounterStats]
    restarts: CounterStats
    found_rate: float
    model: Optional[HybridModel]


@dataclass(frozen=True)
class MonteCarloConfig:
    strategy: str
    n: int
    trials: int
    seed: int
    k: Optional[int] = None
    engine: str = "statevector"
    order: str = "shuffled"

    def __post_init__(self) -> None:
        if self.strategy not in STRATEGIES:
            raise ValueError(f"strategy must be one of {STRATEGIES}, got {self.strategy!r}")
        if self.engine not in ENGINES:
            raise ValueError(f"engine must be one of {ENGINES}, got {self.engine!r}")
        if self.order not in ORDERS:
            raise ValueError(f"order must be one of {ORDERS}, got {self.order!r}")
        if self.trials < 2:
            raise ValueError(f"trials must be >= 2, got {self.trials}")
        if self.n < 1:
            raise ValueError(f"n must be >= 1, got {self.n}")
        if self.strategy == "hybrid":
            if self.k is None:
                raise ValueError("hybrid strategy requires k")
            if not 0 <= self.k <= self.n:
                raise ValueError(f"k must be in [0, n={self.n}], got {self.k}")
        if self.engine == "statevector" and self.strategy in ("hybrid", "pure_quantum"):
            if self.n > MAX_QUBITS:
                raise ValueError(
                    f"statevector engine is capped at n={MAX_QUBITS}; "
                    f"use engine='idealized' for n={self.n}"
                )


def _rand_below(rng: np.random.Generator, bound: int) -> int:
    """Uniform integer in [0, bound) for arbitrary-precision bounds."""
    if bound <= 0:
        raise ValueError(f"bound must be positive, got {bound}")
    bits = bound.bit_length()
    nbytes = (bits + 7) // 8
    mask = (1 << bits) - 1
    while True:
        v = int.from_bytes(rng.bytes(nbytes), "little") & mask
        if v < bound:
            return v


def _sample_shell(rng: np.random.Generator, center: BitString, d: int) -> BitString:
    """Uniform member of the distance-d shell around center."""
    n = center.width
    r = _rand_below(rng, math.comb(n, d))
    return BitString(n, _shell_unrank(center.value, d, r, n))


def _sample_outside_ball(rng: np.random.Generator, center: BitString, k: int) -> BitString:
    """Uniform string at distance > k from center, sampled shell-by-shell."""
    n = center.width
    weights = [math.comb(n, d) for d in range(k + 1, n + 1)]
    total = sum(weights)
    if total == 0:
        raise ValueError("ball covers the whole cube; no outside strings exist")
    pick = _rand_below(rng, total)
    for offset, w in enumerate(weights):
        if pick < w:
            return _sample_shell(rng, center, k + 1 + offset)
        pick -= w
    raise AssertionError("shell sampling walked past the last shell")


def _sample_in_ball(rng: np.random.Generator, center: BitString, k: int) -> BitString:
    """Uniform string at distance <= k from center."""
    spec = BallSpec(center, k)
    return ball_unrank(spec, _rand_below(rng, spec.size))


# -- quantum phases ----------------------------------------------------------


def _quantum_phase_statevector(
    inst: SolutionInstance,
    k: int,
    gp: GroverPlan,
    rng: np.random.Generator,
    ledger: QueryLedger,
) -> BitString:
    idx = threshold_marked_indices(inst, k)
    amps = _run_indices(inst.n, idx, gp.iterations, ledger)
    return BitString(inst.n, _sample_index(amps, rng))


def _quantum_phase_idealized(
    inst: SolutionInstance,
    k: int,
    gp: GroverPlan,
    rng: np.random.Generator,
    ledger: QueryLedger,
) -> BitString:
    """Sample the measurement outcome from its exact distribution."""
    ledger.quantum_oracle_calls += gp.iterations
    x_sol = simulator_view(inst)
    if rng.random() < gp.predicted_success:
        return _sample_in_ball(rng, x_sol, k)
    return _sample_outside_ball(rng, x_sol, k)


# -- classical phases ---------------------------------------------------------


def classical_phase(
    a: BitString,
    k: int,
    inst: SolutionInstance,
    order: str,
    rng: np.random.Generator,
    ledger: QueryLedger,
) -> int:
    """Scan ball(a, k) issuing equality queries until the solution is hit.

    Returns the 1-based position of the successful query.  The shuffled
    order applies a seeded uniform permutation of ranks, so the expected
    position is exactly (M+1)/2; canonical order walks ranks 0..M-1.
    """
    if order not in ORDERS:
        raise ValueError(f"order must be one of {ORDERS}, got {order!r}")
    spec = BallSpec(a, k)
    size = spec.size
    if order == "shuffled":
        if size > MAX_EXPLICIT_SCAN:
            raise ValueError(
                f"ball of {size} strings is too large for an explicit shuffled scan"
            )
        ranks = rng.permutation(size)
    else:
        ranks = range(size)
    for position, r in enumerate(ranks, start=1):
        if equality_query(inst, ball_unrank(spec, int(r)), ledger):
            return position
    raise InvariantError(
        "classical scan exhausted the ball without finding the solution"
    )


def _classical_phase_idealized(
    a: BitString,
    k: int,
    inst: SolutionInstance,
    order: str,
    rng: np.random.Generator,
    ledger: QueryLedger,
) -> int:
    """Charge the scan's stopping position without materializing probes.

    Under a uniform shuffle the solution's position is uniform on 1..M;
    in canonical order it is its ball rank + 1.  The ledger picks up the
    position-1 misses, then the final probe runs for real.
    """
    x_sol = simulator_view(inst)
    spec = BallSpec(a, k)
    if order == "shuffled":
        position = _rand_below(rng, spec.size) + 1
    else:
        position = ball_rank(spec, x_sol) + 1
    ledger.equality_queries += position - 1
    if not equality_query(inst, x_sol, ledger):
        raise InvariantError("verification query rejected the solution")
    return position


# -- strategies ---------------------------------------------------------------


def hybrid_search(
    inst: SolutionInstance,
    k: int,
    engine: str,
    rng: np.random.Generator,
    *,
    order: str = "shuffled",
    ledger: Optional[QueryLedger] = None,
) -> TrialRecord:
    """Quantum search on the radius-k threshold oracle, then a ball scan.

    Each measurement is checked with one threshold query; a miss restarts
    the quantum phase.  Once a marked string a is in hand the classical
    phase scans ball(a, k), which must contain the solution.
    """
    n = inst.n
    if engine not in ENGINES:
        raise ValueError(f"engine must be one of {ENGINES}, got {engine!r}")
    if not 0 <= k <= n:
        raise ValueError(f"k must be in [0, n={n}], got {k}")
    if engine == "statevector" and n > MAX_QUBITS:
        raise ValueError(f"statevector engine is capped at n={MAX_QUBITS}, got n={n}")
    ledger = ledger if ledger is not None else QueryLedger()
    gp = plan(n, ball_count(n, k))
    quantum = (
        _quantum_phase_statevector if engine == "statevector" else _quantum_phase_idealized
    )
    restarts = 0
    while True:
        a = quantum(inst, k, gp, rng, ledger)
        if threshold_query(inst, k, a, ledger):
            break
        restarts += 1
    if engine == "statevector":
        position = classical_phase(a, k, inst, order, rng, ledger)
    else:
        position = _classical_phase_idealized(a, k, inst, order, rng, ledger)
    return TrialRecord(
        strategy="hybrid",
        n=n,
        k=k,
        restarts=restarts,
        ledger=ledger,
        found=True,
        measured=a,
        solution_position_in_scan=position,
    )


def pure_quantum(
    inst: SolutionInstance,
    engine: str,
    rng: np.random.Generator,
    *,
    ledger: Optional[QueryLedger] = None,
) -> TrialRecord:
    """Amplitude amplification against the equality oracle alone.

    Each attempt costs plan(n, 1).iterations oracle calls plus one
    equality query to verify the measurement; failures restart.
    """
    n = inst.n
    if engine not in ENGINES:
        raise ValueError(f"engine must be one of {ENGINES}, got {engine!r}")
    if engine == "statevector" and n > MAX_QUBITS:
        raise ValueError(f"statevector engine is capped at n={MAX_QUBITS}, got n={n}")
    ledger = ledger if ledger is not None else QueryLedger()
    gp = plan(n, 1)
    x_sol = simulator_view(inst)
    restarts = 0
    while True:
        if engine == "statevector":
            idx = threshold_marked_indices(inst, 0)
            amps = _run_indices(n, idx, gp.iterations, ledger)
            a = BitString(n, _sample_index(amps, rng))
        else:
            ledger.quantum_oracle_calls += gp.iterations
            if rng.random() < gp.predicted_success:
                a = x_sol
            else:
                a = _sample_outside_ball(rng, x_sol, 0)
        if equality_query(inst, a, ledger):
            break
        restarts += 1
    return TrialRecord(
        strategy="pure_quantum",
        n=n,
        k=None,
        restarts=restarts,
        ledger=ledger,
        found=True,
    )


def pure_classical(
    inst: SolutionInstance,
    rng: np.random.Generator,
    *,
    ledger: Optional[QueryLedger] = None,
) -> TrialRecord:
    """Shuffled scan of the full cube; expected (2^n + 1)/2 queries.

    Beyond 2^20 candidates the permutation is not materialized: the
    stopping position is sampled from its exact uniform law and the
    final probe runs for real.
    """
    n = inst.n
    ledger = ledger if ledger is not None else QueryLedger()
    size = 1 << n
    position = None
    if n <= 20:
        for position, v in enumerate(rng.permutation(size), start=1):
            if equality_query(inst, BitString(n, int(v)), ledger):
                break
        else:
            raise InvariantError("full-cube scan missed the solution")
    else:
        position = _rand_below(rng, size) + 1
        ledger.equality_queries += position - 1
        if not equality_query(inst, simulator_view(inst), ledger):
            raise InvariantError("verification query rejected the solution")
    return TrialRecord(
        strategy="pure_classical",
        n=n,
        k=None,
        restarts=0,
        ledger=ledger,
        found=True,
        solution_position_in_scan=position,
    )


def smart_classical(
    inst: SolutionInstance,
    start: BitString,
    ledger: Optional[QueryLedger] = None,
) -> TrialRecord:
    """Bit-by-bit repair using the distance oracle, O(n) queries.

    One initial distance query, then per ascending bit position: flip,
    re-query, keep the flip iff the distance decreased.  Exits as soon
    as the distance reaches zero, so the total is at most n+1 queries.
    """
    n = inst.n
    if start.width != n:
        raise ValueError(f"width mismatch: {start.width} != {n}")
    ledger = ledger if ledger is not None else QueryLedger()
    current = start
    distance = dist_query(inst, current, ledger)
    for i in range(n):
        if distance == 0:
            break
        candidate = current.flip(i)
        flipped_distance = dist_query(inst, candidate, ledger)
        if flipped_distance < distance:
            current = candidate
            distance = flipped_distance
    if distance != 0:
        raise InvariantError("bit-repair pass ended away from the solution")
    return TrialRecord(
        strategy="smart_classical",
        n=n,
        k=None,
        restarts=0,
        ledger=ledger,
        found=True,
    )


# -- Monte Carlo harness -------------------------------------------------------


_COUNTER_KINDS = (
    "distance_queries",
    "threshold_queries",
    "promise_queries",
    "equality_queries",
    "quantum_oracle_calls",
)


def _stats(values: np.ndarray) -> CounterStats:
    mean = float(values.mean())
    stddev = float(values.std(ddof=1))
    half = 1.96 * stddev / math.sqrt(len(values))
    return CounterStats(
        mean=mean,
        stddev=stddev,
        min=float(values.min()),
        max=float(values.max()),
        ci95_low=mean - half,
        ci95_high=mean + half,
    )


def run_trial(
    config: MonteCarloConfig, rng: np.random.Generator
) -> TrialRecord:
    """One independent trial with a fresh uniform solution."""
    inst = SolutionInstance.random(config.n, rng)
    if config.strategy == "hybrid":
        assert config.k is not None
        return hybrid_search(inst, config.k, config.engine, rng, order=config.order)
    if config.strategy == "pure_quantum":
        return pure_quantum(inst, config.engine, rng)
    if config.strategy == "pure_classical":
        return pure_classical(inst, rng)
    start = random_bitstring(config.n, rng)
    return smart_classical(inst, start)


def monte_carlo(config: MonteCarloConfig) -> MonteCarloSummary:
    """Run independent trials and summarize per-oracle query costs.

    Trial t draws its generator from SeedSequence(seed).spawn(trials)[t],
    so results are reproducible and independent of execution order; a
    fresh solution is drawn per trial.
    """
    root = np.random.SeedSequence(config.seed)
    children = root.spawn(config.trials)
    counters = np.zeros((config.trials, len(_COUNTER_KINDS)), dtype=np.float64)
    restarts = np.zeros(config.trials, dtype=np.float64)
    found = 0
    for t, child in enumerate(children):
        rng = np.random.default_rng(child)
        record = run_trial(config, rng)
        record.seed = int(child.generate_state(1, np.uint64)[0])
        snapshot = record.ledger.as_dict()
        for j, kind in enumerate(_COUNTER_KINDS):
            counters[t, j] = snapshot[kind]
        restarts[t] = record.restarts
        found += int(record.found)
    per_kind = {
        kind: _stats(counters[:, j]) for j, kind in enumerate(_COUNTER_KINDS)
    }
    per_kind["total"] = _stats(counters.sum(axis=1))
    return MonteCarloSummary(
        strategy=config.strategy,
        n=config.n,
        k=config.k,
        trials=config.trials,
        seed=config.seed,
        engine=config.engine,
        order=config.order,
        per_kind=per_kind,
        restarts=_stats(restarts),
        found_rate=found / config.trials,
        model=_attach_model(config),
    )


def _attach_model(config: MonteCarloConfig) -> Optional[HybridModel]:
    if config.strategy == "hybrid":
        assert config.k is not None
        return evaluate(config.n, config.k)
    if config.strategy == "pure_quantum":
        return evaluate(config.n, 0)
    if config.strategy == "pure_classical":
        return evaluate(config.n, config.n)
    return None
