"""
Span closure of matrix sets: the unital algebra they generate, its center,
ideal membership and nilpotency certificates.
"""

from __future__ import annotations

import logging
import time
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Union

import numpy as np

from terwilliger.config import closure_strategy as configured_strategy
from terwilliger.errors import NotNilpotentError, ParameterError
from terwilliger.exact_field import FieldSpec
from terwilliger.index_algebra import SchemeParams
from terwilliger.oracle.echelon import EchelonBasis
from terwilliger.oracle.matrix import (
    DenseMatrix,
    adjacency_matrix,
    as_scheme,
    dual_idempotent,
    safe_matmul,
)
from terwilliger.scheme import FactorialScheme, Point

logger = logging.getLogger(__name__)


@dataclass
class SpannedAlgebra:
    """A subalgebra of M_X(F): independent basis, the generators it was built from."""

    spec: FieldSpec
    size: int
    basis: List[DenseMatrix]
    generators: List[DenseMatrix]
    echelon: EchelonBasis = field(repr=False)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def contains(self, m: DenseMatrix) -> bool:
        return self.echelon.contains(m.flat())


def _sizes(mats: Sequence[DenseMatrix]) -> int:
    sizes = {m.size for m in mats}
    specs = {m.spec for m in mats}
    if len(sizes) != 1 or len(specs) != 1:
        raise ParameterError("matrices must share one size and one field")
    return sizes.pop()


def _stack(mats: Sequence[np.ndarray]) -> np.ndarray:
    if any(m.dtype == object for m in mats):
        return np.stack([m.astype(object) for m in mats])
    return np.stack(mats)


def span_rank(mats: Sequence[DenseMatrix]) -> int:
    if not mats:
        return 0
    size = _sizes(mats)
    basis = EchelonBasis(mats[0].spec, size * size)
    basis.extend_batch(_stack([m.data for m in mats]))
    return basis.dim


def algebra_closure(generators: Sequence[DenseMatrix], strategy: Optional[str] = None) -> SpannedAlgebra:
    """
    Smallest unital subalgebra containing ``generators``.

    ``generators`` strategy left-multiplies every new element by each generator,
    which reaches every word in the generators. ``pairwise`` multiplies the newest
    elements by the whole current basis on both sides.
    """
    if not generators:
        raise ParameterError("closure needs at least one generator")
    strategy = configured_strategy(strategy)
    size = _sizes(generators)
    spec = generators[0].spec
    start = time.perf_counter()

    echelon = EchelonBasis(spec, size * size)
    frontier = echelon.extend_batch(
        _stack([DenseMatrix.identity(size, spec).data] + [g.data for g in generators])
    )
    gens = _stack([g.data for g in generators])
    rounds = 0
    while frontier:
        rounds += 1
        fresh: List[np.ndarray] = []
        for vec in frontier:
            m = vec.reshape(size, size)
            if strategy == "generators":
                fresh += echelon.extend_batch(safe_matmul(gens, m, spec))
            else:
                known = _stack([e.reshape(size, size) for e in echelon.elements])
                fresh += echelon.extend_batch(safe_matmul(known, m, spec))
                fresh += echelon.extend_batch(safe_matmul(m, known, spec))
        logger.debug("closure round %d: +%d (dim %d)", rounds, len(fresh), echelon.dim)
        frontier = fresh

    basis = [DenseMatrix(e.reshape(size, size), spec) for e in echelon.elements]
    logger.debug("closure dim %d after %d rounds in %.3fs (%s)",
                 len(basis), rounds, time.perf_counter() - start, strategy)
    return SpannedAlgebra(spec, size, basis, list(generators), echelon)


def terwilliger_generators(scheme: Union[FactorialScheme, SchemeParams], x: Point,
                           spec: FieldSpec) -> List[DenseMatrix]:
    """E_0*(x), ..., E_d*(x), A_0, ..., A_d."""
    scheme = as_scheme(scheme)
    indices = scheme.params.indices()
    return [dual_idempotent(g, x, scheme, spec) for g in indices] + [
        adjacency_matrix(g, scheme, spec) for g in indices
    ]


def terwilliger_closure(scheme: Union[FactorialScheme, SchemeParams], x: Point, spec: FieldSpec,
                        strategy: Optional[str] = None) -> SpannedAlgebra:
    """The Terwilliger algebra T(x) as an explicit span."""
    scheme = as_scheme(scheme)
    x.check(scheme.params)
    algebra = algebra_closure(terwilliger_generators(scheme, x, spec), strategy)
    logger.info("T(x) for u=%s over %s at x=%s: dim %d", scheme.params.u, spec, x, algebra.dim)
    return algebra


def center_dim(alg: SpannedAlgebra) -> int:
    """
    dim Z(alg): basis size minus the rank of a -> ([a, G])_G over the generators.

    Commutators lie in alg, whose echelon rows are fully reduced, so each one is
    determined by its entries at the pivot columns.
    """
    gens = alg.generators or alg.basis
    pivots = np.array(alg.echelon.pivots(), dtype=np.int64)
    images = EchelonBasis(alg.spec, len(pivots) * len(gens))
    for b in alg.basis:
        images.add(_stack([(b @ g - g @ b).flat()[pivots] for g in gens]).reshape(-1))
    return alg.dim - images.dim


def is_two_sided_ideal(span: Sequence[DenseMatrix], alg: SpannedAlgebra) -> bool:
    """True iff G*s and s*G lie in span(span) for every generator G of alg."""
    if not span:
        return True
    echelon = EchelonBasis(alg.spec, alg.size * alg.size)
    echelon.extend_batch(_stack([s.data for s in span]))
    if any(not alg.contains(s) for s in span):
        return False
    gens = _stack([g.data for g in (alg.generators or alg.basis)])
    for s in span:
        for products in (safe_matmul(gens, s.data, alg.spec), safe_matmul(s.data, gens, alg.spec)):
            for prod in products:
                if not echelon.contains(prod):
                    return False
    return True


def nilpotency_index(span: Sequence[DenseMatrix]) -> int:
    """Smallest h with span^h = 0 (1 for the zero span)."""
    if not span:
        return 1
    size = _sizes(span)
    spec = span[0].spec
    base = EchelonBasis(spec, size * size)
    base.extend_batch(_stack([s.data for s in span]))
    if not base.dim:
        return 1
    factors = _stack([e.reshape(size, size) for e in base.elements])
    power, h = base, 1
    while True:
        nxt = EchelonBasis(spec, size * size)
        for e in power.elements:
            nxt.extend_batch(safe_matmul(e.reshape(size, size), factors, spec))
        h += 1
        logger.debug("span power %d: dim %d", h, nxt.dim)
        if not nxt.dim:
            return h
        stalled = nxt.dim == power.dim and all(power.contains(v) for v in nxt.elements)
        if stalled or h > size * size:
            raise NotNilpotentError(f"span powers stabilise at dimension {nxt.dim}")
        power = nxt
