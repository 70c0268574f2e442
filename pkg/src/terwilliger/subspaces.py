"""Subspaces of F_2^m: RREF enumeration, Gaussian binomials, Galois numbers."""

from __future__ import annotations

from itertools import combinations, product
from typing import FrozenSet, Iterator, List, Sequence

from terwilliger.errors import ParameterError


def span_gf2(generators: Sequence[int]) -> FrozenSet[int]:
    """All XOR combinations of the given bit vectors."""
    vectors = {0}
    for g in generators:
        vectors |= {v ^ g for v in vectors}
    return frozenset(vectors)


def rref_generators(m: int) -> Iterator[List[int]]:
    """
    Every subspace of F_2^m exactly once, as the rows of its reduced row echelon
    generator matrix. Bit m-1-c of a row holds column c, so pivots are leading bits.
    """
    for k in range(m + 1):
        for pivots in combinations(range(m), k):
            pivot_set = set(pivots)
            # free entries: right of the row's pivot, outside every pivot column
            slots = [
                (r, c)
                for r, pc in enumerate(pivots)
                for c in range(pc + 1, m)
                if c not in pivot_set
            ]
            for bits in product((0, 1), repeat=len(slots)):
                rows = [1 << (m - 1 - pc) for pc in pivots]
                for (r, c), bit in zip(slots, bits):
                    if bit:
                        rows[r] |= 1 << (m - 1 - c)
                yield rows


def subspaces_gf2(m: int) -> List[FrozenSet[int]]:
    return [span_gf2(rows) for rows in rref_generators(m)]


def gaussian_binomial(m: int, k: int, q: int = 2) -> int:
    """The Gaussian binomial coefficient [m choose k]_q."""
    if k < 0 or k > m:
        return 0
    num = den = 1
    for i in range(k):
        num *= q ** (m - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


def galois_number_g2(m: int) -> int:
    """G_2(m): the number of subspaces of an m-dimensional space over F_2."""
    if m < 0:
        raise ParameterError(f"dimension must be non-negative, got {m}")
    return sum(gaussian_binomial(m, k) for k in range(m + 1))


def count_subspaces_brute(m: int) -> int:
    """Count subsets of F_2^m that contain 0 and are closed under XOR."""
    universe = range(1, 1 << m)
    total = 0
    for mask in range(1 << len(universe)):
        members = {0} | {v for b, v in enumerate(universe) if mask >> b & 1}
        if all(a ^ b in members for a in members for b in members):
            total += 1
    return total
