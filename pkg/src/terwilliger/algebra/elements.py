"""
Elements of T on the B-basis.

``B_{g,h,i}`` is the sum of ``E_g* A_j E_i*`` over ``g xor i <=_2 j <=_2 h``. Two basis
elements multiply to a single scaled basis element, so ``TElement`` is a sparse
coefficient map and the product is computed term by term.
"""

from __future__ import annotations

import logging
from fractions import Fraction
from typing import Dict, Iterable, Iterator, List, Mapping, NamedTuple, Tuple, Union

from terwilliger.errors import FieldError, ParameterError
from terwilliger.exact_field import FieldElem, FieldSpec
from terwilliger.index_algebra import RelIndex, SchemeParams, le2, m5, odot
from terwilliger.scheme import valency

logger = logging.getLogger(__name__)

Scalar = Union[FieldElem, int, Fraction]


class BTriple(NamedTuple):
    """Index (g, h, i) of the basis element B_{g,h,i}; ordered lexicographically."""

    g: RelIndex
    h: RelIndex
    i: RelIndex

    def is_valid(self, params: SchemeParams) -> bool:
        """g xor h <=_2 i <=_2 g (.) h, i.e. p_{gh}^i != 0."""
        if not all(isinstance(v, int) and 0 <= v <= params.d for v in self):
            return False
        return le2(self.g ^ self.h, self.i) and le2(self.i, odot(self.g, self.h, params))

    def check(self, params: SchemeParams) -> "BTriple":
        if not self.is_valid(params):
            raise ParameterError(f"B{tuple(self)} is not a basis element for u={params.u}")
        return self

    def transpose(self) -> "BTriple":
        return BTriple(self.i, self.h, self.g)

    def __str__(self) -> str:
        return f"B_{{{self.g},{self.h},{self.i}}}"


def b_mul(t1: BTriple, t2: BTriple, params: SchemeParams, spec: FieldSpec) -> "TElement":
    """B_{g,h,i} B_{l,j,k} = [i = l] k_{h & i & j} B_{g, m(g,h,i,j,k), k}."""
    g, h, i = BTriple(*t1).check(params)
    l, j, k = BTriple(*t2).check(params)
    if i != l:
        return TElement.zero(params, spec)
    coeff = spec.elem(valency(h & i & j, params))
    return TElement.basis(BTriple(g, m5(g, h, i, j, k, params), k), params, spec, coeff)


class TElement:
    """Immutable sparse combination of B-basis elements; zero coefficients are never stored."""

    __slots__ = ("params", "spec", "_coeffs")

    def __init__(self, params: SchemeParams, spec: FieldSpec,
                 coeffs: Mapping[BTriple, Scalar] = ()):
        self.params = params
        self.spec = spec
        clean: Dict[BTriple, FieldElem] = {}
        for t, c in dict(coeffs).items():
            t = BTriple(*t).check(params)
            c = self._scalar(c)
            if c:
                clean[t] = c
        self._coeffs = clean

    def _scalar(self, c: Scalar) -> FieldElem:
        if isinstance(c, FieldElem):
            if c.spec != self.spec:
                raise FieldError(f"coefficient in {c.spec} for an element over {self.spec}")
            return c
        return self.spec.elem(c)

    @classmethod
    def _trusted(cls, params: SchemeParams, spec: FieldSpec,
                 coeffs: Dict[BTriple, FieldElem]) -> "TElement":
        obj = cls.__new__(cls)
        obj.params, obj.spec = params, spec
        obj._coeffs = {t: c for t, c in coeffs.items() if c}
        return obj

    # ---- constructors ----

    @classmethod
    def zero(cls, params: SchemeParams, spec: FieldSpec) -> "TElement":
        return cls._trusted(params, spec, {})

    @classmethod
    def basis(cls, t: BTriple, params: SchemeParams, spec: FieldSpec,
              coeff: Scalar = 1) -> "TElement":
        return cls(params, spec, {BTriple(*t): coeff})

    @classmethod
    def identity(cls, params: SchemeParams, spec: FieldSpec) -> "TElement":
        """I = sum of E_g* = sum of B_{g,0,g}."""
        return cls._trusted(params, spec, {BTriple(g, 0, g): spec.one() for g in params.indices()})

    # ---- access ----

    def coeff(self, t: BTriple) -> FieldElem:
        return self._coeffs.get(BTriple(*t), self.spec.zero())

    def support(self) -> List[BTriple]:
        """Supp_B: the basis elements with a nonzero coefficient, sorted."""
        return sorted(self._coeffs)

    def items(self) -> Iterator[Tuple[BTriple, FieldElem]]:
        for t in self.support():
            yield t, self._coeffs[t]

    def __len__(self) -> int:
        return len(self._coeffs)

    def __bool__(self) -> bool:
        return bool(self._coeffs)

    def __iter__(self) -> Iterator[BTriple]:
        return iter(self.support())

    # ---- arithmetic ----

    def _same_algebra(self, other: "TElement") -> None:
        if not isinstance(other, TElement):
            raise TypeError(f"expected TElement, got {type(other).__name__}")
        if other.params != self.params:
            raise ParameterError(f"elements of T for u={self.params.u} and u={other.params.u}")
        if other.spec != self.spec:
            raise FieldError(f"elements over {self.spec} and {other.spec}")

    def __add__(self, other: "TElement") -> "TElement":
        self._same_algebra(other)
        out = dict(self._coeffs)
        for t, c in other._coeffs.items():
            out[t] = out[t] + c if t in out else c
        return TElement._trusted(self.params, self.spec, out)

    def __neg__(self) -> "TElement":
        return TElement._trusted(self.params, self.spec, {t: -c for t, c in self._coeffs.items()})

    def __sub__(self, other: "TElement") -> "TElement":
        return self + (-other)

    def scale(self, c: Scalar) -> "TElement":
        c = self._scalar(c)
        return TElement._trusted(self.params, self.spec, {t: v * c for t, v in self._coeffs.items()})

    def __mul__(self, other):
        if isinstance(other, TElement):
            return t_mul(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, exponent: int) -> "TElement":
        if exponent < 0:
            raise ParameterError("negative powers are not defined in T")
        result = TElement.identity(self.params, self.spec)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def __eq__(self, other) -> bool:
        if not isinstance(other, TElement):
            return NotImplemented
        return self.params == other.params and self.spec == other.spec and self._coeffs == other._coeffs

    __hash__ = None

    # ---- serialisation ----

    def to_json(self) -> List[Dict[str, Union[int, str]]]:
        return [{"g": t.g, "h": t.h, "i": t.i, "coeff": str(c)} for t, c in self.items()]

    @classmethod
    def from_json(cls, data: Iterable[Mapping], params: SchemeParams, spec: FieldSpec) -> "TElement":
        coeffs: Dict[BTriple, Scalar] = {}
        for term in data:
            t = BTriple(int(term["g"]), int(term["h"]), int(term["i"]))
            coeffs[t] = Fraction(str(term["coeff"]))
        return cls(params, spec, coeffs)

    def __str__(self) -> str:
        if not self:
            return "0"
        return " + ".join(f"{c}*{t}" for t, c in self.items())

    def __repr__(self) -> str:
        return f"TElement({self}, {self.spec})"


def t_mul(a: TElement, b: TElement) -> TElement:
    """Bilinear extension of the one-term basis product."""
    a._same_algebra(b)
    params, spec = a.params, a.spec
    by_left: Dict[RelIndex, List[Tuple[BTriple, FieldElem]]] = {}
    for t, c in b._coeffs.items():
        by_left.setdefault(t.g, []).append((t, c))
    out: Dict[BTriple, FieldElem] = {}
    for (g, h, i), c1 in a._coeffs.items():
        for (_, j, k), c2 in by_left.get(i, ()):
            scale = valency(h & i & j, params)
            if spec.divides(scale):
                continue
            t = BTriple(g, m5(g, h, i, j, k, params), k)
            term = c1 * c2 * scale
            out[t] = out[t] + term if t in out else term
    return TElement._trusted(params, spec, out)
