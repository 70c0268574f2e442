"""
Exact arithmetic in the prime field F_p, or in the rationals when p = 0.

Characteristic-zero conventions: "p | z" means z = 0 and "u = 1 (mod p)" means
u = 1. ``FieldSpec`` also exposes raw-value helpers (plain ``int`` residues or
``Fraction``) used by the vectorised linear algebra of the oracle.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from sympy import isprime

from terwilliger.errors import FieldError, ParameterError

RawValue = Union[int, Fraction]


@dataclass(frozen=True)
class FieldSpec:
    p: int = 0

    def __post_init__(self) -> None:
        if not isinstance(self.p, int) or self.p < 0:
            raise ParameterError(f"characteristic must be 0 or a prime, got {self.p!r}")
        if self.p and not isprime(self.p):
            raise ParameterError(f"characteristic {self.p} is not prime")

    @classmethod
    def parse(cls, text: str) -> "FieldSpec":
        try:
            p = int(text)
        except ValueError as e:
            raise ParameterError(f"cannot parse characteristic from {text!r}") from e
        return cls(p)

    # ---- raw values ----

    def reduce(self, z: RawValue) -> RawValue:
        """Canonical raw value of an integer (or a rational when p = 0)."""
        if self.p:
            if isinstance(z, Fraction):
                return z.numerator * pow(z.denominator, -1, self.p) % self.p
            return int(z) % self.p
        return Fraction(z)

    def inverse_value(self, v: RawValue) -> RawValue:
        if not v:
            raise ZeroDivisionError("inverse of zero in the coefficient field")
        if self.p:
            return pow(int(v), -1, self.p)
        return 1 / Fraction(v)

    # ---- elements ----

    def elem(self, z: RawValue) -> "FieldElem":
        return FieldElem(self, self.reduce(z))

    def zero(self) -> "FieldElem":
        return self.elem(0)

    def one(self) -> "FieldElem":
        return self.elem(1)

    def divides(self, z: int) -> bool:
        """The predicate p | z (z = 0 in characteristic zero)."""
        if z < 0:
            raise ParameterError(f"divisibility test expects z >= 0, got {z}")
        return z % self.p == 0 if self.p else z == 0

    def congruent_one(self, u: int) -> bool:
        """u = 1 (mod p); in characteristic zero, u = 1."""
        return (u - 1) % self.p == 0 if self.p else u == 1

    def __str__(self) -> str:
        return f"F_{self.p}" if self.p else "Q"


class FieldElem:
    """Immutable element of ``F_p`` or ``Q`` in canonical form."""

    __slots__ = ("spec", "value")

    def __init__(self, spec: FieldSpec, value: RawValue):
        object.__setattr__(self, "spec", spec)
        object.__setattr__(self, "value", spec.reduce(value))

    def __setattr__(self, key, value):
        raise AttributeError("FieldElem is immutable")

    def _coerce(self, other: Union["FieldElem", int, Fraction]) -> "FieldElem":
        if isinstance(other, FieldElem):
            if other.spec != self.spec:
                raise FieldError(f"cannot combine elements of {self.spec} and {other.spec}")
            return other
        if isinstance(other, (int, Fraction)):
            return FieldElem(self.spec, other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElem(self.spec, self.value + o.value)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElem(self.spec, self.value - o.value)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElem(self.spec, o.value - self.value)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElem(self.spec, self.value * o.value)

    __rmul__ = __mul__

    def __neg__(self) -> "FieldElem":
        return FieldElem(self.spec, -self.value)

    def inverse(self) -> "FieldElem":
        return FieldElem(self.spec, self.spec.inverse_value(self.value))

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __pow__(self, exponent: int) -> "FieldElem":
        if exponent < 0:
            return self.inverse() ** -exponent
        result = self.spec.one()
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def __bool__(self) -> bool:
        return bool(self.value)

    def __eq__(self, other) -> bool:
        # elements compare only with elements, so equal objects hash equal
        if isinstance(other, FieldElem):
            return self.spec == other.spec and self.value == other.value
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.spec.p, self.value))

    def __str__(self) -> str:
        if self.spec.p:
            return str(self.value)
        v = Fraction(self.value)
        return f"{v.numerator}/{v.denominator}"

    def __repr__(self) -> str:
        return f"FieldElem({self}, {self.spec})"


# --------- Functional surface ---------

def from_int(z: int, spec: FieldSpec) -> FieldElem:
    return spec.elem(z)


def add(a: FieldElem, b: FieldElem) -> FieldElem:
    return a + b


def mul(a: FieldElem, b: FieldElem) -> FieldElem:
    return a * b


def neg(a: FieldElem) -> FieldElem:
    return -a


def inv(a: FieldElem) -> FieldElem:
    return a.inverse()


def divides(spec: FieldSpec, z: int) -> bool:
    return spec.divides(z)
