"""
D-elements and the local algebras E_g* T E_g*.

D_{g,h,i} is an alternating combination of the B_{g,a,i} with h <=_2 a <=_2 g (.) i
and p not dividing k_a. It is defined only when p does not divide k_h. The
closed-form product rules for B*D and D*D are kept here as post-checks of the
products computed through ``t_mul``.
"""

from __future__ import annotations

import logging
from typing import List, Optional

from terwilliger.algebra.basis import b_triples, local_window
from terwilliger.algebra.elements import BTriple, TElement, t_mul
from terwilliger.errors import ParameterError, VerificationError
from terwilliger.exact_field import FieldSpec
from terwilliger.index_algebra import RelIndex, SchemeParams, interval, odot, tilde, weight
from terwilliger.scheme import valency

logger = logging.getLogger(__name__)


# --------- Counting helpers ---------

def n_hj(h: RelIndex, j: RelIndex, params: SchemeParams, spec: FieldSpec) -> int:
    """|{a in P(j) minus P(h) : u_a != 1 (mod p)}|."""
    rest = j & ~h
    return sum(1 for a, size in enumerate(params.u) if rest >> a & 1 and not spec.congruent_one(size))


def u_set(h: RelIndex, j: RelIndex, k: int, params: SchemeParams, spec: FieldSpec) -> List[RelIndex]:
    """{a : h <=_2 a <=_2 j, p does not divide k_a, |P(a)| - |P(h)| = k}."""
    return [
        a for a in interval(h, j)
        if weight(a) - weight(h) == k and not spec.divides(valency(a, params))
    ]


# --------- D-elements ---------

def is_d_defined(t: BTriple, params: SchemeParams, spec: FieldSpec) -> bool:
    return BTriple(*t).is_valid(params) and not spec.divides(valency(t[1], params))


def d_element(g: RelIndex, h: RelIndex, i: RelIndex, params: SchemeParams,
              spec: FieldSpec) -> TElement:
    BTriple(g, h, i).check(params)
    if spec.divides(valency(h, params)):
        raise ParameterError(f"D_{{{g},{h},{i}}} needs p not dividing k_{h} = {valency(h, params)}")
    top = odot(g, i, params)
    coeffs = {}
    for k in range(n_hj(h, top, params, spec) + 1):
        sign = -1 if k & 1 else 1
        for a in u_set(h, top, k, params, spec):
            coeffs[BTriple(g, a, i)] = spec.elem(valency(i & a, params)).inverse() * sign
    element = TElement(params, spec, coeffs)
    if not element:
        raise VerificationError(f"D_{{{g},{h},{i}}} vanished", {"triple": [g, h, i]})
    return element


def bd_rule(left: BTriple, right: BTriple, params: SchemeParams, spec: FieldSpec) -> TElement:
    """Closed form of B_{j,k,l} D_{g,h,i}: zero, or k_{g & k} D_{j,m,i}."""
    j, k, l = BTriple(*left).check(params)
    g, h, i = BTriple(*right).check(params)
    if spec.divides(valency(h, params) * valency(k, params)):
        raise ParameterError("the B*D rule needs p not dividing k_h k_k")
    if g != l or tilde(g & i, params) & k & ~h:
        return TElement.zero(params, spec)
    m = (i ^ j) | (tilde(i & j, params) & h)
    return d_element(j, m, i, params, spec).scale(valency(g & k, params))


def dd_rule(left: BTriple, right: BTriple, params: SchemeParams, spec: FieldSpec) -> TElement:
    """Closed form of D_{j,k,l} D_{g,h,i}: zero, or D_{j,m,i}."""
    j, k, l = BTriple(*left).check(params)
    g, h, i = BTriple(*right).check(params)
    if spec.divides(valency(h, params) * valency(k, params)):
        raise ParameterError("the D*D rule needs p not dividing k_h k_k")
    nonzero = (
        g == l
        and not (tilde(g & i, params) & ~h & ~j)
        and k == (g ^ j) | (tilde(g & j, params) & h)
    )
    if not nonzero:
        return TElement.zero(params, spec)
    m = (i ^ j) | (tilde(i & j, params) & h)
    return d_element(j, m, i, params, spec)


def _checked(product: TElement, expected: TElement, what: str, left: BTriple, right: BTriple) -> TElement:
    if product != expected:
        raise VerificationError(
            f"{what} product disagrees with its closed form",
            {"left": list(left), "right": list(right), "product": product.to_json(),
             "expected": expected.to_json()},
        )
    return product


def bd_mul(left: BTriple, right: BTriple, params: SchemeParams, spec: FieldSpec) -> TElement:
    """B_left * D_right through t_mul, checked against the B*D rule."""
    product = t_mul(TElement.basis(left, params, spec), d_element(*right, params, spec))
    return _checked(product, bd_rule(left, right, params, spec), "B*D", left, right)


def d_mul(left: BTriple, right: BTriple, params: SchemeParams, spec: FieldSpec) -> TElement:
    """D_left * D_right through t_mul, checked against the D*D rule."""
    product = t_mul(d_element(*left, params, spec), d_element(*right, params, spec))
    return _checked(product, dd_rule(left, right, params, spec), "D*D", left, right)


# --------- Local algebras ---------

def local_basis(g: RelIndex, params: SchemeParams) -> List[BTriple]:
    """Basis {B_{g,a,g} : a <=_2 tilde(g)} of E_g* T E_g*."""
    params.check(g)
    return [BTriple(g, a, g) for a in local_window(g, params)]


def local_radical(g: RelIndex, params: SchemeParams, spec: FieldSpec) -> List[BTriple]:
    return [t for t in local_basis(g, params) if spec.divides(valency(t.h, params))]


def local_nilpotency(g: RelIndex, params: SchemeParams, spec: FieldSpec) -> int:
    params.check(g)
    return 1 + sum(
        1 for a, size in enumerate(params.u) if g >> a & 1 and spec.congruent_one(size)
    )


def local_quotient_dim(g: RelIndex, params: SchemeParams, spec: FieldSpec) -> int:
    params.check(g)
    return 1 << n_hj(0, tilde(g, params), params, spec)


def local_idempotents(g: RelIndex, params: SchemeParams, spec: FieldSpec) -> List[TElement]:
    """The D_{g,h,g} with h <=_2 tilde(g) and p not dividing k_h."""
    return [
        d_element(g, t.h, g, params, spec)
        for t in local_basis(g, params)
        if not spec.divides(valency(t.h, params))
    ]


def local_is_semisimple(g: RelIndex, params: SchemeParams, spec: FieldSpec) -> bool:
    params.check(g)
    return not spec.divides(valency(g, params))


def d_triples(params: SchemeParams, spec: FieldSpec, triples: Optional[List[BTriple]] = None) -> List[BTriple]:
    """The triples where D is defined, from ``triples`` or the whole B-basis."""
    source = triples if triples is not None else b_triples(params)
    return [t for t in source if not spec.divides(valency(t.h, params))]
