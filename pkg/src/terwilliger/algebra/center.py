from __future__ import annotations

import logging
from typing import List, Tuple

from terwilliger.algebra.elements import BTriple, TElement
from terwilliger.errors import ParameterError
from terwilliger.exact_field import FieldElem, FieldSpec
from terwilliger.index_algebra import RelIndex, SchemeParams, le2, submasks
from terwilliger.scheme import valency

logger = logging.getLogger(__name__)


def center_indices(params: SchemeParams) -> List[RelIndex]:
    """The a <=_2 tilde(d) that index the center basis."""
    return list(submasks(params.wide_mask))


def _require_central(g: RelIndex, params: SchemeParams) -> None:
    params.check(g)
    if not le2(g, params.wide_mask):
        raise ParameterError(f"C_{g} is defined only for g <=_2 tilde(d) = {params.wide_mask}")


def c_element(g: RelIndex, params: SchemeParams, spec: FieldSpec) -> TElement:
    """C_g = sum over i of k_{g minus i} B_{i, g & i, i}."""
    _require_central(g, params)
    return TElement(
        params,
        spec,
        {BTriple(i, g & i, i): valency(g & ~i, params) for i in params.indices()},
    )


def center_basis(params: SchemeParams, spec: FieldSpec) -> List[TElement]:
    return [c_element(g, params, spec) for g in center_indices(params)]


def c_mul(g: RelIndex, h: RelIndex, params: SchemeParams, spec: FieldSpec) -> Tuple[FieldElem, RelIndex]:
    """C_g C_h = k_{g & h} C_{g | h}, returned as (coefficient, g | h)."""
    _require_central(g, params)
    _require_central(h, params)
    return spec.elem(valency(g & h, params)), g | h


def c_pow(g: RelIndex, exponent: int, params: SchemeParams, spec: FieldSpec) -> Tuple[FieldElem, RelIndex]:
    """C_g^e for e >= 1, by repeated squaring on (coefficient, index) pairs."""
    if exponent < 1:
        raise ParameterError(f"exponent must be positive, got {exponent}")
    result = None
    base = (spec.one(), g)
    while exponent:
        if exponent & 1:
            if result is None:
                result = base
            else:
                c, top = c_mul(result[1], base[1], params, spec)
                result = (result[0] * base[0] * c, top)
        c, top = c_mul(base[1], base[1], params, spec)
        base = (base[0] * base[0] * c, top)
        exponent >>= 1
    return result
