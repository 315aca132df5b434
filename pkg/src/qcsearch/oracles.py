"""Query-counted oracles around a hidden solution string.

Search strategies never touch the solution directly: they hold a
:class:`SolutionInstance` and interrogate it through the query functions
here, each of which ticks exactly one counter on the caller's
:class:`QueryLedger`.  The ledger is the single channel for cost
accounting; a strategy that never queries reports zero cost.

The simulator layer is deliberately solution-aware (it builds marked
sets and samples measurement outcomes), so its entry points live here
too and are documented as non-queries.
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from functools import lru_cache
from typing import Callable

import numpy as np

from .bitstring import BallSpec, BitString, ball_iter, hamming_distance, random_bitstring
from .combinatorics import ball_count

MAX_ENUM_BITS = 24


@dataclass
class QueryLedger:
    """Monotone per-oracle query counters for one trial."""

    distance_queries: int = 0
    threshold_queries: int = 0
    promise_queries: int = 0
    equality_queries: int = 0
    quantum_oracle_calls: int = 0

    def total(self) -> int:
        return (
            self.distance_queries
            + self.threshold_queries
            + self.promise_queries
            + self.equality_queries
            + self.quantum_oracle_calls
        )

    def snapshot(self) -> "QueryLedger":
        return replace(self)

    def as_dict(self) -> dict[str, int]:
        return {
            "distance_queries": self.distance_queries,
            "threshold_queries": self.threshold_queries,
            "promise_queries": self.promise_queries,
            "equality_queries": self.equality_queries,
            "quantum_oracle_calls": self.quantum_oracle_calls,
        }


class SolutionInstance:
    """Holds the hidden solution.  Read it only through the query
    functions below (or through :func:`simulator_view` inside engine
    code, which is not a query)."""

    __slots__ = ("_x_sol",)

    def __init__(self, x_sol: BitString):
        self._x_sol = x_sol

    @property
    def n(self) -> int:
        return self._x_sol.width

    @classmethod
    def random(cls, n: int, rng: np.random.Generator) -> "SolutionInstance":
        return cls(random_bitstring(n, rng))


def simulator_view(inst: SolutionInstance) -> BitString:
    """Solution handle for simulator internals (marked-set construction,
    idealized measurement sampling).  Never touches a ledger."""
    return inst._x_sol


@dataclass(frozen=True)
class PromiseFunction:
    """A scoring function g with threshold l and promised diameter bound k:
    any two strings scoring <= l are within Hamming distance k."""

    name: str
    g: Callable[[BitString, BitString], int]
    l: int
    k: int


# -- query functions -------------------------------------------------------


def dist_query(inst: SolutionInstance, a: BitString, ledger: QueryLedger) -> int:
    """Hamming distance from ``a`` to the solution (one distance query)."""
    d = hamming_distance(a, inst._x_sol)
    ledger.distance_queries += 1
    return d


def threshold_query(
    inst: SolutionInstance, k: int, a: BitString, ledger: QueryLedger
) -> int:
    """1 iff ``a`` is within distance k of the solution (one threshold query)."""
    if not 0 <= k <= inst.n:
        raise ValueError(f"k must be in [0, {inst.n}], got {k}")
    d = hamming_distance(a, inst._x_sol)
    ledger.threshold_queries += 1
    return 1 if d <= k else 0


def promise_query(
    inst: SolutionInstance, pf: PromiseFunction, a: BitString, ledger: QueryLedger
) -> int:
    """1 iff g(a, solution) <= l (one promise query)."""
    score = pf.g(a, inst._x_sol)
    ledger.promise_queries += 1
    return 1 if score <= pf.l else 0


def equality_query(inst: SolutionInstance, a: BitString, ledger: QueryLedger) -> int:
    """1 iff ``a`` equals the solution (one equality query)."""
    hamming_distance(a, inst._x_sol)  # width check
    ledger.equality_queries += 1
    return 1 if a.value == inst._x_sol.value else 0


# -- simulator-side marked sets (not queries) --------------------------------


def marked_set(
    inst: SolutionInstance,
    *,
    threshold: int | None = None,
    promise: PromiseFunction | None = None,
) -> set[BitString]:
    """Exact marked set for the simulator, without ledger accounting.

    Exactly one of ``threshold`` (ball radius) or ``promise`` must be
    given.  Enumeration is capped at n <= MAX_ENUM_BITS.
    """
    if (threshold is None) == (promise is None):
        raise ValueError("specify exactly one of threshold= or promise=")
    n = inst.n
    if n > MAX_ENUM_BITS:
        raise ValueError(f"n={n} too large for enumeration (max {MAX_ENUM_BITS})")
    if threshold is not None:
        if not 0 <= threshold <= n:
            raise ValueError(f"threshold must be in [0, {n}], got {threshold}")
        return set(ball_iter(BallSpec(inst._x_sol, threshold)))
    assert promise is not None
    x = inst._x_sol
    return {
        a
        for v in range(1 << n)
        if promise.g((a := BitString(n, v)), x) <= promise.l
    }


@lru_cache(maxsize=64)
def _ball_masks(n: int, k: int) -> np.ndarray:
    """All XOR masks of weight <= k over n bits, as a sorted uint64 array."""
    spec = BallSpec(BitString.zeros(n), k)
    return np.sort(np.fromiter((b.value for b in ball_iter(spec)), dtype=np.uint64))


def threshold_marked_indices(inst: SolutionInstance, k: int) -> np.ndarray:
    """Statevector indices of the radius-k ball around the solution.

    Simulator-internal; no ledger involvement.
    """
    n = inst.n
    if n > MAX_ENUM_BITS:
        raise ValueError(f"n={n} too large for a statevector (max {MAX_ENUM_BITS})")
    return np.sort(_ball_masks(n, k) ^ np.uint64(inst._x_sol.value)).astype(np.int64)


# -- built-in promise functions ----------------------------------------------


def distance_promise(n: int, l: int, k: int | None = None) -> PromiseFunction:
    """g = Hamming distance with threshold l.

    The sublevel set is the radius-l ball, whose tight pairwise diameter
    is 2l; that is the default promised bound.
    """
    if not 0 <= l <= n:
        raise ValueError(f"l must be in [0, {n}], got {l}")
    bound = min(2 * l, n) if k is None else k
    return PromiseFunction(name="distance", g=hamming_distance, l=l, k=bound)


def prefix_promise(n: int, bits: int, l: int, k: int | None = None) -> PromiseFunction:
    """g = Hamming distance restricted to the first ``bits`` positions
    (LSB side).  Strings scoring <= l agree up to l flips on the prefix
    and are free elsewhere, so the tight diameter bound is 2l + (n - bits).
    """
    if not 1 <= bits <= n:
        raise ValueError(f"prefix bits must be in [1, {n}], got {bits}")
    if not 0 <= l <= bits:
        raise ValueError(f"l must be in [0, {bits}], got {l}")
    mask = (1 << bits) - 1

    def g(a: BitString, x: BitString) -> int:
        return ((a.value ^ x.value) & mask).bit_count()

    bound = min(2 * l + (n - bits), n) if k is None else k
    return PromiseFunction(name=f"prefix:{bits}", g=g, l=l, k=bound)


_PROMISE_BUILDERS: dict[str, Callable[[int, str | None, int, int | None], PromiseFunction]] = {}


def register_promise(
    name: str,
    builder: Callable[[int, str | None, int, int | None], PromiseFunction],
) -> None:
    """Register a custom g-spec: builder(n, arg, l, k) -> PromiseFunction."""
    _PROMISE_BUILDERS[name] = builder


def build_promise(gspec: str, n: int, l: int, k: int | None = None) -> PromiseFunction:
    """Construct a promise function from a textual spec.

    Built-ins: ``distance`` and ``prefix:<bits>``; anything else must
    have been registered via :func:`register_promise`.
    """
    name, _, arg = gspec.partition(":")
    if name == "distance":
        return distance_promise(n, l, k)
    if name == "prefix":
        try:
            bits = int(arg)
        except ValueError:
            raise ValueError(f"prefix spec needs an integer bit count, got {gspec!r}")
        return prefix_promise(n, bits, l, k)
    if name in _PROMISE_BUILDERS:
        return _PROMISE_BUILDERS[name](n, arg or None, l, k)
    raise ValueError(f"unknown promise spec {gspec!r}; use 'distance' or 'prefix:<bits>'")


def analytic_sublevel_count(gspec: str, n: int, l: int) -> int:
    """Closed-form |{a : g(a, x) <= l}| for the built-in promise specs.

    Both built-ins have solution-independent counts: the distance score
    sublevel is a radius-l ball, and a prefix score frees the suffix.
    """
    name, _, arg = gspec.partition(":")
    if name == "distance":
        return ball_count(n, l)
    if name == "prefix":
        bits = int(arg)
        if not 1 <= bits <= n:
            raise ValueError(f"prefix bits must be in [1, {n}], got {bits}")
        return ball_count(bits, l) << (n - bits)
    raise ValueError(f"no analytic count for promise spec {gspec!r}")


def validate_promise_instance(
    pf: PromiseFunction, inst: SolutionInstance
) -> tuple[int, int]:
    """Exhaustively enumerate the sublevel set and measure its diameter.

    Returns (member count, max pairwise Hamming distance).  Used to
    validate analytic counts and the promised diameter bound on small
    instances; capped at n <= 16.
    """
    n = inst.n
    if n > 16:
        raise ValueError(f"exhaustive promise validation is capped at n=16, got {n}")
    members = marked_set(inst, promise=pf)
    values = np.fromiter((b.value for b in members), dtype=np.uint32)
    diameter = 0
    step = 2048
    for start in range(0, len(values), step):
        chunk = values[start : start + step, None] ^ values[None, :]
        diameter = max(diameter, int(np.bitwise_count(chunk).max()))
    return len(values), diameter
