"""B-basis of T: enumeration, dimension count, and the bridge to explicit matrices."""

from __future__ import annotations

import logging
from typing import List, Optional, Union

import numpy as np
from sympy import binomial

from terwilliger.algebra.elements import BTriple, TElement
from terwilliger.exact_field import FieldSpec
from terwilliger.index_algebra import RelIndex, SchemeParams, interval, odot, submasks, weight
from terwilliger.oracle.matrix import DenseMatrix, as_scheme, matrix_sum
from terwilliger.scheme import FactorialScheme, Point

logger = logging.getLogger(__name__)


def b_triples(params: SchemeParams, spec: Optional[FieldSpec] = None) -> List[BTriple]:
    """All (g, h, i) with g xor h <=_2 i <=_2 g (.) h, in lexicographic order.

    The basis does not depend on the field; ``spec`` is accepted for symmetry.
    """
    out = []
    for g in params.indices():
        for h in params.indices():
            out.extend(BTriple(g, h, i) for i in interval(g ^ h, odot(g, h, params)))
    out.sort()
    return out


def dim_formula(params: SchemeParams) -> int:
    """Closed-form dimension of T as a quadruple binomial sum."""
    n, n2 = params.n, params.n2
    total = 0
    for g in range(n2 + 1):
        for h in range(n - n2 + 1):
            for i in range(g + 1):
                for j in range(h + 1):
                    total += (
                        binomial(n2, g) * binomial(n - n2, h) * binomial(g, i) * binomial(h, j)
                        * 2 ** (n - g - h + i)
                    )
    return int(total)


def eae_to_b(g: RelIndex, h: RelIndex, i: RelIndex, params: SchemeParams,
             spec: FieldSpec) -> TElement:
    """E_g* A_h E_i* on the B-basis, by inclusion-exclusion over the window below h."""
    BTriple(g, h, i).check(params)
    coeffs = {
        BTriple(g, j, i): (-1) ** (weight(h) - weight(j))
        for j in interval(g ^ i, h)
    }
    return TElement(params, spec, coeffs)


# --------- Matrices ---------

Scheme = Union[FactorialScheme, SchemeParams]


def _block(scheme: FactorialScheme, x: Point, g: RelIndex, i: RelIndex,
           allowed: List[RelIndex]) -> np.ndarray:
    table = scheme.relation_table
    rows = scheme.neighbourhood(x, g)
    cols = scheme.neighbourhood(x, i)
    return (rows[:, None] & cols[None, :] & np.isin(table, allowed)).astype(np.int64)


def eae_matrix(g: RelIndex, h: RelIndex, i: RelIndex, x: Point, scheme: Scheme,
               spec: FieldSpec) -> DenseMatrix:
    """E_g*(x) A_h E_i*(x) read directly off the relation table."""
    scheme = as_scheme(scheme)
    return DenseMatrix(_block(scheme, x, g, i, [h]), spec)


def b_to_matrix(t: BTriple, x: Point, scheme: Scheme, spec: FieldSpec) -> DenseMatrix:
    """B_{g,h,i} as an explicit matrix at base point x."""
    scheme = as_scheme(scheme)
    g, h, i = BTriple(*t).check(scheme.params)
    return DenseMatrix(_block(scheme, x, g, i, list(interval(g ^ i, h))), spec)


def element_to_matrix(a: TElement, x: Point, scheme: Optional[Scheme] = None) -> DenseMatrix:
    scheme = as_scheme(scheme if scheme is not None else a.params)
    size = scheme.params.point_count
    return matrix_sum(
        (b_to_matrix(t, x, scheme, a.spec).scale(c) for t, c in a.items()),
        size,
        a.spec,
    )


def local_window(g: RelIndex, params: SchemeParams) -> List[RelIndex]:
    """The h with (g, h, g) a basis element: h <=_2 tilde(g)."""
    return list(submasks(g & params.wide_mask))
