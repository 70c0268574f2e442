"""
Exact |X| x |X| matrices over F_p or Q, backed by numpy.

Storage is ``int64`` whenever entries are integers that provably fit: residues in
[0, p) for p > 0, plain integers for p = 0. Rationals (only produced by scaling
with inverses) and products that could overflow switch to ``object`` arrays of
Python ints / Fractions, so no value is ever rounded.
"""

from __future__ import annotations

import logging
from fractions import Fraction
from typing import Iterable, List, Union

import numpy as np

from terwilliger.errors import FieldError, ParameterError
from terwilliger.exact_field import FieldElem, FieldSpec, RawValue
from terwilliger.index_algebra import RelIndex, SchemeParams
from terwilliger.scheme import FactorialScheme, Point, scheme_for

logger = logging.getLogger(__name__)

_INT_LIMIT = 1 << 62
_SMALL_PRIME = 1 << 31
_FLOAT_EXACT = 1 << 53


def int_safe(spec: FieldSpec) -> bool:
    """Products of two residues fit in int64."""
    return spec.p < _SMALL_PRIME


def _max_abs(data: np.ndarray) -> int:
    return int(np.abs(data).max()) if data.size else 0


def normalize(data: np.ndarray, spec: FieldSpec) -> np.ndarray:
    """Canonical storage of raw entries: reduced, int64 when exact."""
    if spec.p:
        if data.dtype == object or not int_safe(spec):
            reduced = np.frompyfunc(spec.reduce, 1, 1)(data)
            return reduced.astype(np.int64) if int_safe(spec) else reduced
        return np.mod(data, spec.p).astype(np.int64, copy=False)
    if data.dtype != object:
        return data.astype(np.int64, copy=False)
    integral = all(Fraction(v).denominator == 1 for v in data.flat)
    if integral:
        ints = np.frompyfunc(int, 1, 1)(data)
        if _max_abs(ints) < _INT_LIMIT:
            return ints.astype(np.int64)
        return ints
    return np.frompyfunc(Fraction, 1, 1)(data)


def safe_matmul(a: np.ndarray, b: np.ndarray, spec: FieldSpec) -> np.ndarray:
    """a @ b without int64 overflow; broadcasts over leading axes like ``np.matmul``."""
    if a.dtype != object and b.dtype != object:
        bound = _max_abs(a) * _max_abs(b) * a.shape[-1]
        if bound < _FLOAT_EXACT:
            # integer partial sums below 2^53 are exact in float64
            product = np.matmul(a.astype(np.float64), b.astype(np.float64))
            return normalize(np.rint(product).astype(np.int64), spec)
        if bound >= _INT_LIMIT:
            logger.debug("int64 bound exceeded, multiplying with Python integers")
            a, b = a.astype(object), b.astype(object)
    return normalize(np.matmul(a, b), spec)


class DenseMatrix:
    """Square matrix with exact entries; rows and columns indexed by encoded points."""

    __slots__ = ("data", "spec")

    def __init__(self, data: np.ndarray, spec: FieldSpec):
        data = np.asarray(data)
        if data.ndim != 2 or data.shape[0] != data.shape[1]:
            raise ParameterError(f"matrix must be square, got shape {data.shape}")
        self.data = normalize(data, spec)
        self.spec = spec

    # ---- constructors ----

    @classmethod
    def zeros(cls, size: int, spec: FieldSpec) -> "DenseMatrix":
        return cls(np.zeros((size, size), dtype=np.int64), spec)

    @classmethod
    def identity(cls, size: int, spec: FieldSpec) -> "DenseMatrix":
        return cls(np.eye(size, dtype=np.int64), spec)

    # ---- access ----

    @property
    def size(self) -> int:
        return self.data.shape[0]

    def entry(self, y: int, z: int) -> FieldElem:
        return self.spec.elem(self._raw(self.data[y, z]))

    @staticmethod
    def _raw(value) -> RawValue:
        return value if isinstance(value, Fraction) else int(value)

    def is_zero(self) -> bool:
        return not np.any(self.data != 0)

    def trace(self) -> FieldElem:
        return self.spec.elem(self._raw(np.trace(self.data)))

    def transpose(self) -> "DenseMatrix":
        return DenseMatrix(self.data.T.copy(), self.spec)

    @property
    def T(self) -> "DenseMatrix":
        return self.transpose()

    def flat(self) -> np.ndarray:
        return self.data.reshape(-1)

    def row_sums(self) -> List[FieldElem]:
        return [self.spec.elem(self._raw(v)) for v in self.data.sum(axis=1)]

    # ---- arithmetic ----

    def _check(self, other: "DenseMatrix") -> None:
        if not isinstance(other, DenseMatrix):
            raise TypeError(f"expected DenseMatrix, got {type(other).__name__}")
        if other.spec != self.spec:
            raise FieldError(f"cannot combine matrices over {self.spec} and {other.spec}")
        if other.size != self.size:
            raise ParameterError(f"size mismatch: {self.size} vs {other.size}")

    def _combine(self, a: np.ndarray, b: np.ndarray, sign: int) -> np.ndarray:
        if a.dtype != object and b.dtype != object and max(_max_abs(a), _max_abs(b)) * 2 >= _INT_LIMIT:
            a, b = a.astype(object), b.astype(object)
        return a + b if sign > 0 else a - b

    def __add__(self, other: "DenseMatrix") -> "DenseMatrix":
        self._check(other)
        return DenseMatrix(self._combine(self.data, other.data, 1), self.spec)

    def __sub__(self, other: "DenseMatrix") -> "DenseMatrix":
        self._check(other)
        return DenseMatrix(self._combine(self.data, other.data, -1), self.spec)

    def __neg__(self) -> "DenseMatrix":
        return DenseMatrix(-self.data, self.spec)

    def __matmul__(self, other: "DenseMatrix") -> "DenseMatrix":
        self._check(other)
        return DenseMatrix(safe_matmul(self.data, other.data, self.spec), self.spec)

    def scale(self, c: Union[FieldElem, int, Fraction]) -> "DenseMatrix":
        value = c.value if isinstance(c, FieldElem) else self.spec.reduce(c)
        if isinstance(c, FieldElem) and c.spec != self.spec:
            raise FieldError(f"cannot scale a matrix over {self.spec} by an element of {c.spec}")
        if isinstance(value, Fraction) and value.denominator == 1:
            value = value.numerator
        data = self.data
        if isinstance(value, Fraction) or (data.dtype != object and _max_abs(data) * abs(value) >= _INT_LIMIT):
            data = data.astype(object)
        return DenseMatrix(data * value, self.spec)

    def permuted(self, perm: np.ndarray) -> "DenseMatrix":
        """P M P^T for the permutation y -> perm[y]."""
        perm = np.asarray(perm)
        if perm.shape != (self.size,):
            raise ParameterError(f"permutation of length {perm.shape} for a {self.size}x{self.size} matrix")
        data = np.empty_like(self.data)
        data[np.ix_(perm, perm)] = self.data
        return DenseMatrix(data, self.spec)

    def __mul__(self, c):
        if isinstance(c, DenseMatrix):
            return NotImplemented
        return self.scale(c)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, DenseMatrix):
            return NotImplemented
        return (
            self.spec == other.spec
            and self.size == other.size
            and not np.any(self.data != other.data)
        )

    __hash__ = None

    def __repr__(self) -> str:
        return f"DenseMatrix(size={self.size}, field={self.spec})"


def matrix_sum(terms: Iterable[DenseMatrix], size: int, spec: FieldSpec) -> DenseMatrix:
    total = DenseMatrix.zeros(size, spec)
    for m in terms:
        total = total + m
    return total


# --------- Scheme matrices ---------

def as_scheme(scheme: Union[FactorialScheme, SchemeParams]) -> FactorialScheme:
    return scheme if isinstance(scheme, FactorialScheme) else scheme_for(scheme)


def adjacency_matrix(g: RelIndex, scheme: Union[FactorialScheme, SchemeParams],
                     spec: FieldSpec) -> DenseMatrix:
    """A_g(y, z) = 1 iff z in yR_g."""
    scheme = as_scheme(scheme)
    scheme.params.check(g)
    return DenseMatrix((scheme.relation_table == g).astype(np.int64), spec)


def dual_idempotent(g: RelIndex, x: Point, scheme: Union[FactorialScheme, SchemeParams],
                    spec: FieldSpec) -> DenseMatrix:
    """E_g*(x): diagonal, (y, y) = 1 iff y in xR_g."""
    scheme = as_scheme(scheme)
    scheme.params.check(g)
    return DenseMatrix(np.diag(scheme.neighbourhood(x, g).astype(np.int64)), spec)
