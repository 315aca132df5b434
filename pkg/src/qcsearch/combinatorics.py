"""Exact counting and log-domain arithmetic for search cost models.

Counts (binomial coefficients, Hamming-ball volumes) are kept as exact
Python integers for all supported widths; nothing is rounded until a
final real-valued expression is needed.  Gains at n=1000 sit around
1e-50 while intermediate terms reach 2^500, far outside double range,
so nonnegative reals are carried as natural logarithms with an explicit
zero state (:class:`LogReal`) instead of relying on -inf sentinels.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

MAX_WIDTH = 1024

_LN2 = math.log(2.0)
_LN10 = math.log(10.0)


def binomial(n: int, i: int) -> int:
    """Exact binomial coefficient C(n, i) for 0 <= i <= n <= MAX_WIDTH."""
    if n < 0 or i < 0 or i > n:
        raise ValueError(f"binomial requires 0 <= i <= n, got n={n}, i={i}")
    if n > MAX_WIDTH:
        raise ValueError(f"n={n} exceeds the supported maximum {MAX_WIDTH}")
    return math.comb(n, i)


def ball_count(n: int, k: int) -> int:
    """Exact Hamming-ball volume M(n, k) = sum_{i=0}^{k} C(n, i)."""
    if n < 0 or k < 0 or k > n:
        raise ValueError(f"ball_count requires 0 <= k <= n, got n={n}, k={k}")
    if n > MAX_WIDTH:
        raise ValueError(f"n={n} exceeds the supported maximum {MAX_WIDTH}")
    return sum(math.comb(n, i) for i in range(k + 1))


@dataclass(frozen=True)
class LogReal:
    """A nonnegative real carried as its natural log, with an exact zero.

    Addition uses log-sum-exp; multiplication and division are log-domain
    sums.  The explicit zero avoids NaN propagation that -inf arithmetic
    would cause inside log1p/exp compositions.
    """

    ln: float
    is_zero: bool = False

    # -- constructors ---------------------------------------------------

    @classmethod
    def zero(cls) -> "LogReal":
        return cls(float("-inf"), True)

    @classmethod
    def one(cls) -> "LogReal":
        return cls(0.0)

    @classmethod
    def from_ln(cls, ln: float) -> "LogReal":
        return cls(float(ln))

    @classmethod
    def from_float(cls, x: float) -> "LogReal":
        if x < 0:
            raise ValueError(f"LogReal represents nonnegative reals, got {x}")
        if x == 0:
            return cls.zero()
        return cls(math.log(x))

    @classmethod
    def from_int(cls, value: int) -> "LogReal":
        """Natural log of an exact (arbitrary-precision) integer."""
        if value < 0:
            raise ValueError(f"LogReal represents nonnegative reals, got {value}")
        if value == 0:
            return cls.zero()
        # math.log handles ints beyond double range exactly enough (~1 ulp).
        return cls(math.log(value))

    # -- views -----------------------------------------------------------

    @property
    def log10(self) -> float:
        return float("-inf") if self.is_zero else self.ln / _LN10

    def to_float(self) -> float:
        """Round-trip to double; overflows saturate to inf."""
        if self.is_zero:
            return 0.0
        try:
            return math.exp(self.ln)
        except OverflowError:
            return math.inf

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other: "LogReal") -> "LogReal":
        if self.is_zero:
            return other
        if other.is_zero:
            return self
        hi, lo = (self.ln, other.ln) if self.ln >= other.ln else (other.ln, self.ln)
        return LogReal(hi + math.log1p(math.exp(lo - hi)))

    def __mul__(self, other: "LogReal") -> "LogReal":
        if self.is_zero or other.is_zero:
            return LogReal.zero()
        return LogReal(self.ln + other.ln)

    def __truediv__(self, other: "LogReal") -> "LogReal":
        if other.is_zero:
            raise ZeroDivisionError("division by exact-zero LogReal")
        if self.is_zero:
            return LogReal.zero()
        return LogReal(self.ln - other.ln)

    def __pow__(self, exponent: float) -> "LogReal":
        if self.is_zero:
            if exponent > 0:
                return LogReal.zero()
            if exponent == 0:
                return LogReal.one()
            raise ZeroDivisionError("zero LogReal to a negative power")
        return LogReal(self.ln * exponent)

    def sqrt(self) -> "LogReal":
        return self ** 0.5

    # -- ordering ----------------------------------------------------------

    def _key(self) -> float:
        return float("-inf") if self.is_zero else self.ln

    def __lt__(self, other: "LogReal") -> bool:
        return self._key() < other._key()

    def __le__(self, other: "LogReal") -> bool:
        return self._key() <= other._key()

    def __gt__(self, other: "LogReal") -> bool:
        return self._key() > other._key()

    def __ge__(self, other: "LogReal") -> bool:
        return self._key() >= other._key()


def to_log(count: int) -> LogReal:
    """Log-domain view of an exact count (zero maps to the exact zero)."""
    return LogReal.from_int(count)


def log_pow2(exponent: float) -> LogReal:
    """2**exponent as a LogReal; the exponent may be fractional."""
    return LogReal(float(exponent) * _LN2)


def m_opt_continuous(n: int) -> LogReal:
    """Stationary point of the gain treated as a function of a continuous
    marked count: M* = ((pi/4) * 2^(n/2))^(2/3).

    This is the continuous relaxation used to reconcile the published
    optimal-gain table; the integer optimum is found by :func:`qcsearch.
    query_model.k_opt`.
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    return LogReal((2.0 / 3.0) * (math.log(math.pi / 4.0) + (n / 2.0) * _LN2))
