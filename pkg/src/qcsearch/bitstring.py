"""Fixed-width bit vectors, Hamming geometry, and Hamming-ball enumeration.

Conventions, fixed once for the whole package:

* Bit 0 is the least significant bit ("first bit" means the LSB).
* The textual form is hex with an explicit width, e.g. ``0x5A/8``.
* Hamming balls enumerate in canonical order: ascending distance shell,
  then ascending unsigned integer value within a shell.  ``ball_rank`` /
  ``ball_unrank`` are the mutually inverse bijection onto ``0..M-1`` for
  exactly this order, which keeps large-ball scans O(1) in memory.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations
from typing import Iterator

import numpy as np

from .combinatorics import MAX_WIDTH, ball_count


@dataclass(frozen=True)
class BitString:
    """An immutable bit vector of fixed width, packed into one integer."""

    width: int
    value: int

    def __post_init__(self) -> None:
        if not 1 <= self.width <= MAX_WIDTH:
            raise ValueError(f"width must be in [1, {MAX_WIDTH}], got {self.width}")
        if not 0 <= self.value < (1 << self.width):
            raise ValueError(
                f"value {self.value:#x} does not fit in {self.width} bits"
            )

    @classmethod
    def zeros(cls, width: int) -> "BitString":
        return cls(width, 0)

    @classmethod
    def from_hex(cls, text: str) -> "BitString":
        """Parse the ``0x5A/8`` textual form (hex digits, slash, width)."""
        try:
            digits, width_part = text.strip().split("/")
            return cls(int(width_part), int(digits, 16))
        except ValueError as exc:
            raise ValueError(f"expected '0x<hex>/<width>', got {text!r}") from exc

    def to_hex(self) -> str:
        return f"0x{self.value:0{(self.width + 3) // 4}X}/{self.width}"

    def bit(self, i: int) -> int:
        if not 0 <= i < self.width:
            raise IndexError(f"bit index {i} out of range for width {self.width}")
        return (self.value >> i) & 1

    def flip(self, i: int) -> "BitString":
        if not 0 <= i < self.width:
            raise IndexError(f"bit index {i} out of range for width {self.width}")
        return BitString(self.width, self.value ^ (1 << i))

    def popcount(self) -> int:
        return self.value.bit_count()

    def __xor__(self, other: "BitString") -> "BitString":
        _require_same_width(self, other)
        return BitString(self.width, self.value ^ other.value)

    def __int__(self) -> int:
        return self.value

    def __str__(self) -> str:
        return self.to_hex()


def _require_same_width(a: BitString, b: BitString) -> None:
    if a.width != b.width:
        raise ValueError(f"width mismatch: {a.width} != {b.width}")


def hamming_distance(a: BitString, b: BitString) -> int:
    """Number of differing bit positions between two equal-width strings."""
    _require_same_width(a, b)
    return (a.value ^ b.value).bit_count()


@dataclass(frozen=True)
class BallSpec:
    """A Hamming ball: all strings within ``radius`` of ``center``."""

    center: BitString
    radius: int

    def __post_init__(self) -> None:
        if not 0 <= self.radius <= self.center.width:
            raise ValueError(
                f"radius must be in [0, {self.center.width}], got {self.radius}"
            )

    @property
    def size(self) -> int:
        return ball_count(self.center.width, self.radius)


def ball_iter(spec: BallSpec) -> Iterator[BitString]:
    """Yield every ball member in canonical (shell, value) order.

    Each distance-d shell is materialized and sorted, so memory is
    O(max shell size); intended for desk-scale widths.  Large-ball scans
    should go through ``ball_unrank`` instead.
    """
    n = spec.center.width
    c = spec.center.value
    for d in range(spec.radius + 1):
        shell = sorted(
            c ^ _positions_mask(positions)
            for positions in combinations(range(n), d)
        )
        for v in shell:
            yield BitString(n, v)


def _positions_mask(positions: tuple[int, ...]) -> int:
    mask = 0
    for p in positions:
        mask |= 1 << p
    return mask


def ball_rank(spec: BallSpec, x: BitString) -> int:
    """Canonical-order rank of ``x`` inside the ball (0-based)."""
    _require_same_width(spec.center, x)
    n = spec.center.width
    d = hamming_distance(x, spec.center)
    if d > spec.radius:
        raise ValueError(
            f"{x} lies at distance {d} from the center, outside radius {spec.radius}"
        )
    below_shells = ball_count(n, d - 1) if d > 0 else 0
    return below_shells + _shell_rank(spec.center.value, x.value, d, n)


def ball_unrank(spec: BallSpec, r: int) -> BitString:
    """Inverse of :func:`ball_rank`: the ball member with canonical rank r."""
    n = spec.center.width
    size = spec.size
    if not 0 <= r < size:
        raise ValueError(f"rank {r} out of range [0, {size})")
    d = 0
    while True:
        shell = math.comb(n, d)
        if r < shell:
            break
        r -= shell
        d += 1
    return BitString(n, _shell_unrank(spec.center.value, d, r, n))


def _shell_rank(center: int, x: int, d: int, n: int) -> int:
    """Count shell-d members strictly below x (by unsigned value).

    Walks bits MSB-first; fixing a 1-bit of x to 0 frees the i lower
    positions, which contribute C(i, remaining-diffs) shell members.
    """
    count = 0
    diffs = 0
    for i in range(n - 1, -1, -1):
        xi = (x >> i) & 1
        ci = (center >> i) & 1
        if xi == 1:
            need = d - diffs - (1 if ci == 1 else 0)
            if 0 <= need <= i:
                count += math.comb(i, need)
        if xi != ci:
            diffs += 1
    return count


def _shell_unrank(center: int, d: int, r: int, n: int) -> int:
    """The rank-r member (by unsigned value) of the distance-d shell."""
    y = 0
    diffs = 0
    for i in range(n - 1, -1, -1):
        ci = (center >> i) & 1
        need_if_zero = d - diffs - (1 if ci == 1 else 0)
        count_if_zero = (
            math.comb(i, need_if_zero) if 0 <= need_if_zero <= i else 0
        )
        if r < count_if_zero:
            if ci == 1:
                diffs += 1
        else:
            r -= count_if_zero
            y |= 1 << i
            if ci == 0:
                diffs += 1
    if r != 0 or diffs != d:
        raise AssertionError("shell unrank walked off the shell")
    return y


def random_bitstring(width: int, rng: np.random.Generator) -> BitString:
    """Uniform random bit string of the given width, reproducible per seed."""
    if not 1 <= width <= MAX_WIDTH:
        raise ValueError(f"width must be in [1, {MAX_WIDTH}], got {width}")
    raw = int.from_bytes(rng.bytes((width + 7) // 8), "little")
    return BitString(width, raw & ((1 << width) - 1))
