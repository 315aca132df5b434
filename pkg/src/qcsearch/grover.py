"""Dense statevector simulation of amplitude amplification.

One iteration is the standard pair: phase-flip the marked amplitudes,
then invert every amplitude about the mean (diffusion).  The state never
leaves the two-dimensional span of the uniform-marked and
uniform-unmarked vectors, so the marked-set mass after j iterations is
exactly sin^2((2j+1) * theta) with theta = asin(sqrt(M/N)); tests lean
on that identity.

Oracles stay black boxes: the simulator consumes an explicit marked set
and applies the phase flip itself.  One quantum oracle call is charged
per iteration.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .bitstring import BitString
from .errors import InvariantError
from .oracles import QueryLedger

MAX_QUBITS = 24

NORM_TOL = 1e-9


@dataclass(frozen=True)
class GroverPlan:
    """Iteration plan and analytic prediction for one (n, M) instance.

    ``iterations`` is the success-maximizing integer floor(pi/(4 theta));
    ``smooth_calls`` records the model's smooth (pi/4) sqrt(N/M) next to
    it for model-vs-simulation comparison.
    """

    n: int
    size: int
    marked: int
    theta: float
    iterations: int
    predicted_success: float
    smooth_calls: float


def plan(n: int, marked: int) -> GroverPlan:
    """Plan amplitude amplification for M marked states out of N = 2^n.

    When floor(pi/(4 theta)) is 0 (more than half the space marked), a
    single iteration is used only if it does not push the success
    probability below the M/N baseline of measuring immediately.
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    size = 1 << n
    if not 1 <= marked <= size:
        raise ValueError(f"marked count must be in [1, {size}], got {marked}")
    ratio = marked / size
    theta = math.asin(math.sqrt(ratio))
    iterations = int(math.pi / (4.0 * theta))
    if iterations == 0:
        one_step = math.sin(3.0 * theta) ** 2
        if one_step >= ratio:
            iterations = 1
    success = math.sin((2 * iterations + 1) * theta) ** 2
    return GroverPlan(
        n=n,
        size=size,
        marked=marked,
        theta=theta,
        iterations=iterations,
        predicted_success=success,
        smooth_calls=(math.pi / 4.0) * math.sqrt(size / marked),
    )


@dataclass
class StateVector:
    """2^n complex amplitudes; kept normalized to 1 within NORM_TOL."""

    n: int
    amplitudes: np.ndarray

    def norm_sq(self) -> float:
        return float(np.sum(np.abs(self.amplitudes) ** 2))


def init_uniform(n: int) -> StateVector:
    """The uniform superposition: every amplitude 2^(-n/2), real."""
    if not 1 <= n <= MAX_QUBITS:
        raise ValueError(f"n must be in [1, {MAX_QUBITS}], got {n}")
    size = 1 << n
    amps = np.full(size, 1.0 / math.sqrt(size), dtype=np.complex128)
    return StateVector(n=n, amplitudes=amps)


def _marked_indices(marked: set[BitString], n: int) -> np.ndarray:
    if not marked:
        raise ValueError("marked set must be nonempty")
    for b in marked:
        if b.width != n:
            raise ValueError(f"marked state width {b.width} != register width {n}")
    return np.sort(np.fromiter((b.value for b in marked), dtype=np.int64))


def _iterate_in_place(amps: np.ndarray, idx: np.ndarray) -> None:
    # Phase flip on the marked indices, then inversion about the mean.
    amps[idx] *= -1.0
    mean = amps.mean()
    np.negative(amps, out=amps)
    amps += 2.0 * mean


def grover_iterate(
    state: StateVector, marked: set[BitString], ledger: QueryLedger
) -> StateVector:
    """One oracle + diffusion round; returns a new state, charges one call."""
    idx = _marked_indices(marked, state.n)
    amps = state.amplitudes.copy()
    _iterate_in_place(amps, idx)
    ledger.quantum_oracle_calls += 1
    return StateVector(n=state.n, amplitudes=amps)


def run(
    n: int, marked: set[BitString], iterations: int, ledger: QueryLedger
) -> StateVector:
    """Run ``iterations`` rounds from the uniform state."""
    if iterations < 0:
        raise ValueError(f"iterations must be >= 0, got {iterations}")
    state = init_uniform(n)
    idx = _marked_indices(marked, n)
    for _ in range(iterations):
        _iterate_in_place(state.amplitudes, idx)
        ledger.quantum_oracle_calls += 1
    return state


def _run_indices(n: int, idx: np.ndarray, iterations: int, ledger: QueryLedger) -> np.ndarray:
    """Fast path used by the strategies: amplitudes for precomputed indices."""
    state = init_uniform(n)
    for _ in range(iterations):
        _iterate_in_place(state.amplitudes, idx)
    ledger.quantum_oracle_calls += iterations
    return state.amplitudes


def measure(state: StateVector, rng: np.random.Generator) -> BitString:
    """Sample one basis state with Born probabilities."""
    return BitString(state.n, _sample_index(state.amplitudes, rng))


def _sample_index(amps: np.ndarray, rng: np.random.Generator) -> int:
    probs = np.abs(amps) ** 2
    total = float(probs.sum())
    if abs(total - 1.0) > NORM_TOL:
        raise InvariantError(
            f"statevector norm drifted: sum of probabilities = {total!r}"
        )
    cumulative = np.cumsum(probs)
    i = int(np.searchsorted(cumulative, rng.random() * total, side="right"))
    return min(i, len(amps) - 1)


def marked_mass(state: StateVector, marked: set[BitString]) -> float:
    """Total probability mass on the marked set."""
    idx = _marked_indices(marked, state.n)
    return float(np.sum(np.abs(state.amplitudes[idx]) ** 2))
