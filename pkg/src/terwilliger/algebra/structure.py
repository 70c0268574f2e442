"""
Wedderburn decomposition of T / Rad(T).

The triples (g, h, i) with p not dividing k_h are grouped by the signature
tilde(g & i) minus h. Each group is a full matrix algebra whose size is the number
of its diagonal triples (a, b, a).
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Dict, List, Tuple

from terwilliger.algebra.basis import b_triples, dim_formula
from terwilliger.algebra.elements import BTriple, TElement
from terwilliger.algebra.idempotents import d_element, d_triples
from terwilliger.algebra.radical import radical_basis
from terwilliger.errors import ParameterError, VerificationError
from terwilliger.exact_field import FieldSpec
from terwilliger.index_algebra import RelIndex, SchemeParams, tilde

logger = logging.getLogger(__name__)


def signature(t: BTriple, params: SchemeParams) -> RelIndex:
    g, h, i = t
    return tilde(g & i, params) & ~h


@dataclass(frozen=True)
class ApproxClass:
    class_index: int
    signature: RelIndex
    triples: Tuple[BTriple, ...]
    diag_indices: Tuple[RelIndex, ...]

    @property
    def size(self) -> int:
        return len(self.diag_indices)

    def unit_triple(self, a: RelIndex, b: RelIndex) -> BTriple:
        """The unique class member (a, h, b)."""
        for t in self.triples:
            if t.g == a and t.i == b:
                return t
        raise ParameterError(f"no triple ({a}, *, {b}) in class {self.class_index}")


@dataclass(frozen=True)
class WedderburnType:
    block_sizes: Tuple[int, ...]
    radical_dim: int

    @property
    def irreducible_count(self) -> int:
        return len(self.block_sizes)

    @property
    def dim(self) -> int:
        return self.radical_dim + sum(s * s for s in self.block_sizes)


def approx_classes(params: SchemeParams, spec: FieldSpec) -> List[ApproxClass]:
    groups: Dict[RelIndex, List[BTriple]] = {}
    for t in d_triples(params, spec):
        groups.setdefault(signature(t, params), []).append(t)

    classes = []
    for number, sig in enumerate(sorted(groups), start=1):
        triples = tuple(sorted(groups[sig]))
        diag = tuple(sorted({t.g for t in triples if t.g == t.i}))
        if len(triples) != len(diag) ** 2 or {(t.g, t.i) for t in triples} != {(a, b) for a in diag for b in diag}:
            raise VerificationError(
                f"class with signature {sig} is not indexed by pairs of its diagonal",
                {"signature": sig, "triples": [list(t) for t in triples], "diagonal": list(diag)},
            )
        classes.append(ApproxClass(number, sig, triples, diag))
    logger.debug("u=%s over %s: %d classes, sizes %s",
                 params.u, spec, len(classes), [c.size for c in classes])
    return classes


def matrix_unit(cls: ApproxClass, a: RelIndex, b: RelIndex, params: SchemeParams,
                spec: FieldSpec) -> TElement:
    """D_{a,b}(m): the D-element of the class member with ends a and b."""
    return d_element(*cls.unit_triple(a, b), params, spec)


def wedderburn_type(params: SchemeParams, spec: FieldSpec) -> WedderburnType:
    sizes = tuple(sorted((c.size for c in approx_classes(params, spec)), reverse=True))
    result = WedderburnType(sizes, len(radical_basis(params, spec)))
    expected = dim_formula(params)
    if result.dim != expected or len(b_triples(params)) != expected:
        raise VerificationError(
            "radical and blocks do not add up to dim T",
            {"radicalDim": result.radical_dim, "blocks": list(sizes), "dimT": expected},
        )
    return result
