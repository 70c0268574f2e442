"""
Bitmask calculus on relation indices.

A relation index g in [0, 2^n - 1] encodes the set of coordinates in which two
points differ: bit a-1 of g is set iff position a belongs to the support P(g).
Positions are 1-indexed on the API surface, bits are 0-indexed internally.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import reduce
from operator import mul
from typing import FrozenSet, Iterator, Sequence, Tuple

from terwilliger.errors import ParameterError

RelIndex = int


# --------- Parameters ---------

@dataclass(frozen=True)
class SchemeParams:
    """Defining data (n, u_1..u_n) of a factorial scheme and its derived constants."""

    u: Tuple[int, ...]
    wide_mask: int = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        u = tuple(int(x) for x in self.u)
        if not u:
            raise ParameterError("a factorial scheme needs at least one factor (n >= 1)")
        bad = [x for x in u if x < 2]
        if bad:
            raise ParameterError(f"every factor size must be >= 2, got {list(u)}")
        object.__setattr__(self, "u", u)
        object.__setattr__(
            self, "wide_mask", sum(1 << a for a, x in enumerate(u) if x > 2)
        )

    @classmethod
    def parse(cls, text: str) -> "SchemeParams":
        """Build params from a comma-separated list such as ``"2,3"``."""
        try:
            values = tuple(int(tok) for tok in text.split(",") if tok.strip())
        except ValueError as e:
            raise ParameterError(f"cannot parse factor sizes from {text!r}") from e
        return cls(values)

    @property
    def n(self) -> int:
        return len(self.u)

    @property
    def d(self) -> int:
        return (1 << self.n) - 1

    @property
    def n2(self) -> int:
        return sum(1 for x in self.u if x > 2)

    @property
    def thin_mask(self) -> int:
        """Bitmask of the positions with u_a = 2."""
        return self.d & ~self.wide_mask

    @property
    def d1(self) -> int:
        return 1 << (self.n - self.n2)

    @property
    def point_count(self) -> int:
        return reduce(mul, self.u, 1)

    def check(self, g: RelIndex) -> RelIndex:
        if not isinstance(g, int) or not 0 <= g <= self.d:
            raise ParameterError(f"relation index {g!r} outside [0, {self.d}]")
        return g

    def indices(self) -> range:
        return range(self.d + 1)

    def label(self) -> str:
        return ",".join(str(x) for x in self.u)


# --------- Supports and order ---------

def _non_negative(*values: int) -> None:
    for v in values:
        if not isinstance(v, int) or v < 0:
            raise ParameterError(f"relation index {v!r} must be a non-negative integer")


def support(g: RelIndex, n: int) -> FrozenSet[int]:
    """P(g): the 1-indexed positions of the 1-bits of g."""
    if not isinstance(g, int) or not 0 <= g < (1 << n):
        raise ParameterError(f"relation index {g!r} outside [0, {(1 << n) - 1}]")
    return frozenset(a + 1 for a in range(n) if g >> a & 1)


def from_support(positions: Sequence[int]) -> RelIndex:
    """Inverse of :func:`support`."""
    g = 0
    for a in positions:
        if a < 1:
            raise ParameterError(f"positions are 1-indexed, got {a}")
        g |= 1 << (a - 1)
    return g


def weight(g: RelIndex) -> int:
    """|P(g)|."""
    return bin(g).count("1")


def le2(g: RelIndex, h: RelIndex) -> bool:
    """g <=_2 h iff P(g) is a subset of P(h)."""
    _non_negative(g, h)
    return g & ~h == 0


def join(g: RelIndex, h: RelIndex) -> RelIndex:
    return g | h


def meet(g: RelIndex, h: RelIndex) -> RelIndex:
    return g & h


def diff(g: RelIndex, h: RelIndex) -> RelIndex:
    return g & ~h


def symdiff(g: RelIndex, h: RelIndex) -> RelIndex:
    return g ^ h


# --------- Scheme-specific maps ---------

def tilde(g: RelIndex, params: SchemeParams) -> RelIndex:
    """The index supported on P_2(g) = {a in P(g) : u_a > 2}."""
    return g & params.wide_mask


def odot(g: RelIndex, h: RelIndex, params: SchemeParams) -> RelIndex:
    """g (.) h = (g xor h) | tilde(g & h)."""
    return (g ^ h) | tilde(g & h, params)


def m5(g: RelIndex, h: RelIndex, i: RelIndex, j: RelIndex, k: RelIndex,
       params: SchemeParams) -> RelIndex:
    """m(g,h,i,j,k) = (g xor k) | (t \\ i) | ((h | j) & t & i) with t = tilde(g & k)."""
    t = tilde(g & k, params)
    return (g ^ k) | (t & ~i) | ((h | j) & t & i)


# --------- Enumeration ---------

def submasks(g: RelIndex) -> Iterator[RelIndex]:
    """All a <=_2 g, in increasing numeric order."""
    a = 0
    while True:
        yield a
        if a == g:
            return
        a = (a - g) & g


def interval(low: RelIndex, high: RelIndex) -> Iterator[RelIndex]:
    """All a with low <=_2 a <=_2 high (empty when low is not below high)."""
    if not le2(low, high):
        return
    for extra in submasks(high & ~low):
        yield low | extra
