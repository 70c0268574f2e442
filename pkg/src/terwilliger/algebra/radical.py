"""
Jacobson radical of T: its B-basis, nilpotency (closed form and by search),
semisimplicity tests for T and for its center.
"""

from __future__ import annotations

import logging
from typing import Dict, List, Tuple

import numpy as np
from sympy import zeros as sym_zeros

from terwilliger.algebra.basis import b_triples
from terwilliger.algebra.center import c_mul, c_pow, center_indices
from terwilliger.algebra.elements import BTriple, b_mul
from terwilliger.exact_field import FieldSpec
from terwilliger.index_algebra import SchemeParams
from terwilliger.oracle.echelon import EchelonBasis
from terwilliger.scheme import valency

logger = logging.getLogger(__name__)


def radical_basis(params: SchemeParams, spec: FieldSpec) -> List[BTriple]:
    """The B_{g,h,i} with p | k_h; they span Rad(T)."""
    return [t for t in b_triples(params) if spec.divides(valency(t.h, params))]


def congruent_one_count(params: SchemeParams, spec: FieldSpec) -> int:
    return sum(1 for size in params.u if spec.congruent_one(size))


def radical_nilpotency(params: SchemeParams, spec: FieldSpec) -> int:
    return 2 * congruent_one_count(params, spec) + 1


def is_semisimple(params: SchemeParams, spec: FieldSpec) -> bool:
    """p does not divide k_d = prod(u_a - 1)."""
    return not spec.divides(valency(params.d, params))


def _radical_chains(params: SchemeParams, spec: FieldSpec) -> List[Dict[BTriple, Tuple[BTriple, ...]]]:
    """
    Level r maps each basis element spanning Rad(T)^r to one chain of r radical
    basis elements whose product is a nonzero multiple of it.
    """
    radical = radical_basis(params, spec)
    by_left: Dict[int, List[BTriple]] = {}
    for t in radical:
        by_left.setdefault(t.g, []).append(t)
    level = {t: (t,) for t in radical}
    levels = []
    while level:
        levels.append(level)
        nxt: Dict[BTriple, Tuple[BTriple, ...]] = {}
        for top, chain in sorted(level.items()):
            for s in by_left.get(top.i, ()):
                product = b_mul(top, s, params, spec)
                if product:
                    nxt.setdefault(product.support()[0], chain + (s,))
        level = nxt
    return levels


def radical_nilpotency_search(params: SchemeParams, spec: FieldSpec) -> int:
    """1 + the longest chain of radical basis elements with a nonzero product."""
    levels = _radical_chains(params, spec)
    logger.debug("radical power dimensions for u=%s over %s: %s",
                 params.u, spec, [len(level) for level in levels])
    return len(levels) + 1


def radical_power_witness(params: SchemeParams, spec: FieldSpec) -> List[BTriple]:
    """A longest list of radical basis elements whose product is nonzero (empty if Rad(T) = 0)."""
    levels = _radical_chains(params, spec)
    if not levels:
        return []
    return list(min(levels[-1].values()))


def center_is_semisimple(params: SchemeParams, spec: FieldSpec) -> bool:
    """
    Semisimplicity of the commutative algebra Z(T) on the C-basis: the Frobenius
    map x -> x^p is injective when p > 0, the trace form is nondegenerate when p = 0.
    """
    indices = center_indices(params)
    position = {a: n for n, a in enumerate(indices)}
    if spec.p:
        images = EchelonBasis(spec, len(indices))
        for a in indices:
            coeff, top = c_pow(a, spec.p, params, spec)
            vector = np.zeros(len(indices), dtype=np.int64)
            vector[position[top]] = int(coeff.value)
            images.add(vector)
        return images.dim == len(indices)

    gram = sym_zeros(len(indices), len(indices))
    for r, g in enumerate(indices):
        for s, h in enumerate(indices):
            trace = 0
            for a in indices:
                c1, gh = c_mul(g, h, params, spec)
                c2, top = c_mul(gh, a, params, spec)
                if top == a:
                    trace += c1.value * c2.value
            gram[r, s] = trace
    return gram.det() != 0
