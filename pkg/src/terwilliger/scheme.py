"""
The factorial scheme on X = U_1 x ... x U_n with U_a = [0, u_a - 1].

Closed forms (valencies, intersection numbers, closed subsets) sit next to the
brute-force point scans that certify them. Points are encoded mixed-radix,
little-endian: coordinate 1 is the least significant digit.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import cached_property, lru_cache
from itertools import combinations
from typing import Dict, FrozenSet, Iterable, List, Optional, Tuple

import numpy as np

from terwilliger.config import max_points as configured_max_points
from terwilliger.errors import OracleLimitError, ParameterError, VerificationError
from terwilliger.index_algebra import (
    RelIndex,
    SchemeParams,
    le2,
    odot,
    submasks,
    support,
    tilde,
)
from terwilliger.subspaces import galois_number_g2, subspaces_gf2

logger = logging.getLogger(__name__)


# --------- Points ---------

@dataclass(frozen=True, order=True)
class Point:
    coords: Tuple[int, ...]

    @classmethod
    def parse(cls, text: str, params: SchemeParams) -> "Point":
        try:
            coords = tuple(int(tok) for tok in text.split(","))
        except ValueError as e:
            raise ParameterError(f"cannot parse point from {text!r}") from e
        point = cls(coords)
        point.check(params)
        return point

    @classmethod
    def origin(cls, params: SchemeParams) -> "Point":
        return cls((0,) * params.n)

    @classmethod
    def decode(cls, idx: int, params: SchemeParams) -> "Point":
        if not 0 <= idx < params.point_count:
            raise ParameterError(f"point index {idx} outside [0, {params.point_count - 1}]")
        coords = []
        for size in params.u:
            idx, c = divmod(idx, size)
            coords.append(c)
        return cls(tuple(coords))

    def check(self, params: SchemeParams) -> "Point":
        if len(self.coords) != params.n:
            raise ParameterError(
                f"point {self} has {len(self.coords)} coordinates, scheme has n = {params.n}"
            )
        for c, size in zip(self.coords, params.u):
            if not 0 <= c < size:
                raise ParameterError(f"point {self} has coordinate {c} outside [0, {size - 1}]")
        return self

    def encode(self, params: SchemeParams) -> int:
        self.check(params)
        idx = 0
        for c, size in zip(reversed(self.coords), reversed(params.u)):
            idx = idx * size + c
        return idx

    def __str__(self) -> str:
        return ",".join(str(c) for c in self.coords)


def rel(x: Point, y: Point) -> RelIndex:
    """Bitmask of the coordinates in which x and y differ."""
    if len(x.coords) != len(y.coords):
        raise ParameterError(f"points {x} and {y} have different dimensions")
    return sum(1 << a for a, (s, t) in enumerate(zip(x.coords, y.coords)) if s != t)


# --------- Closed forms ---------

def valency(g: RelIndex, params: SchemeParams) -> int:
    """k_g = product of (u_a - 1) over a in P(g)."""
    params.check(g)
    k = 1
    for a, size in enumerate(params.u):
        if g >> a & 1:
            k *= size - 1
    return k


def intersection_number(g: RelIndex, h: RelIndex, i: RelIndex, params: SchemeParams) -> int:
    """p_{gh}^i, zero outside the window g xor h <=_2 i <=_2 g (.) h."""
    for v in (g, h, i):
        params.check(v)
    low = g ^ h
    if not (le2(low, i) and le2(i, odot(g, h, params))):
        return 0
    chosen = i & ~low
    rest = tilde(g & h, params) & ~chosen
    value = 1
    for a, size in enumerate(params.u):
        if chosen >> a & 1:
            value *= size - 2
        elif rest >> a & 1:
            value *= size - 1
    return value


# --------- Closed subsets ---------

@dataclass(frozen=True)
class ClosedSubset:
    members: FrozenSet[RelIndex]
    is_closed: bool
    is_strongly_normal: bool
    thin_radical: FrozenSet[RelIndex]
    thin_residue: FrozenSet[RelIndex]
    p_max: RelIndex

    def sorted_members(self) -> List[RelIndex]:
        return sorted(self.members)

    def sort_key(self) -> Tuple[int, List[RelIndex]]:
        return len(self.members), self.sorted_members()


class FactorialScheme:
    """A factorial scheme together with its brute-force point oracle."""

    def __init__(self, params: SchemeParams, max_points: Optional[int] = None):
        self.params = params
        self._max_points = max_points

    def __repr__(self) -> str:
        return f"FactorialScheme(u={self.params.u})"

    @property
    def max_points(self) -> int:
        """Resolved on every access, so TERWILLIGER_MAX_POINTS also binds cached schemes."""
        return configured_max_points(self._max_points)

    # ---- points and relations ----

    def require_oracle(self) -> None:
        cap = self.max_points
        if self.params.point_count > cap:
            raise OracleLimitError(self.params.point_count, cap)

    def points(self) -> List[Point]:
        self.require_oracle()
        return [Point.decode(idx, self.params) for idx in range(self.params.point_count)]

    def rel(self, x: Point, y: Point) -> RelIndex:
        x.check(self.params)
        y.check(self.params)
        return rel(x, y)

    @cached_property
    def relation_table(self) -> np.ndarray:
        """R[y, z] = rel(y, z) for every ordered pair of encoded points."""
        self.require_oracle()
        count = self.params.point_count
        dtype = np.uint8 if self.params.n <= 8 else np.uint16
        idx = np.arange(count)
        table = np.zeros((count, count), dtype=dtype)
        for a, size in enumerate(self.params.u):
            idx, coord = np.divmod(idx, size)
            table |= np.where(coord[:, None] != coord[None, :], 1 << a, 0).astype(dtype)
        logger.debug("relation table built for u=%s (|X|=%d)", self.params.u, count)
        return table

    def neighbourhood(self, x: Point, g: RelIndex) -> np.ndarray:
        """Boolean mask of xR_g."""
        return self.relation_table[x.encode(self.params)] == g

    def translation(self, source: Point, target: Point) -> np.ndarray:
        """
        Encoded permutation y -> y - source + target (coordinatewise mod u_a).

        Translations preserve every relation, so ``perm[y]`` conjugates T(source) onto T(target).
        """
        self.require_oracle()
        source.check(self.params)
        target.check(self.params)
        idx = np.arange(self.params.point_count)
        image = np.zeros_like(idx)
        stride = 1
        for size, s, t in zip(self.params.u, source.coords, target.coords):
            idx, coord = np.divmod(idx, size)
            image += (coord - s + t) % size * stride
            stride *= size
        return image

    # ---- valencies and intersection numbers ----

    def valency(self, g: RelIndex) -> int:
        return valency(g, self.params)

    def valencies(self) -> List[int]:
        return [valency(g, self.params) for g in self.params.indices()]

    def thin_indices(self) -> List[RelIndex]:
        return [g for g in self.params.indices() if valency(g, self.params) == 1]

    def intersection_number(self, g: RelIndex, h: RelIndex, i: RelIndex) -> int:
        return intersection_number(g, h, i, self.params)

    def witness_pair(self, i: RelIndex) -> Tuple[Point, Point]:
        """A pair (x, y) in R_i: the origin and the point with 1 on P(i)."""
        self.params.check(i)
        x = Point.origin(self.params)
        y = Point(tuple(i >> a & 1 for a in range(self.params.n)))
        return x, y

    def intersection_number_oracle(self, g: RelIndex, h: RelIndex, i: RelIndex,
                                   check_all_pairs: bool = False) -> int:
        """|{a : (x,a) in R_g, (a,y) in R_h}| counted on points for (x, y) in R_i."""
        table = self.relation_table
        x, y = self.witness_pair(i)
        xi, yi = x.encode(self.params), y.encode(self.params)
        count = int(np.count_nonzero((table[xi] == g) & (table[:, yi] == h)))
        if check_all_pairs:
            xs, ys = np.nonzero(table == i)
            for s, t in zip(xs.tolist(), ys.tolist()):
                other = int(np.count_nonzero((table[s] == g) & (table[:, t] == h)))
                if other != count:
                    raise VerificationError(
                        "intersection number depends on the chosen pair",
                        {"g": g, "h": h, "i": i, "pair": [s, t], "counts": [count, other]},
                    )
        return count

    def triple_intersection(self, x: Point, y: Point, z: Point,
                            g: RelIndex, h: RelIndex, i: RelIndex) -> int:
        """|xR_g & yR_h & zR_i| by a point scan."""
        table = self.relation_table
        rows = [p.encode(self.params) for p in (x, y, z)]
        mask = (table[rows[0]] == g) & (table[rows[1]] == h) & (table[rows[2]] == i)
        return int(np.count_nonzero(mask))

    def check_triple_regularity(self, x: Optional[Point] = None) -> bool:
        """True iff |xR_g & yR_h & zR_i| depends only on rel(x,y), rel(x,z), rel(y,z)."""
        table = self.relation_table.astype(np.int64)
        x = x or Point.origin(self.params)
        size = self.params.d + 1
        row_x = table[x.encode(self.params)]
        seen: Dict[Tuple[int, int, int], bytes] = {}
        count = self.params.point_count
        for y in range(count):
            code_xy = row_x * size + table[y]
            for z in range(count):
                key = (int(row_x[y]), int(row_x[z]), int(table[y, z]))
                counts = np.bincount(code_xy * size + table[z], minlength=size ** 3)
                digest = counts.tobytes()
                if seen.setdefault(key, digest) != digest:
                    logger.debug("triple regularity broken at y=%d z=%d", y, z)
                    return False
        return True

    # ---- complex multiplication ----

    def complex_product(self, U: Iterable[RelIndex], V: Iterable[RelIndex]) -> FrozenSet[RelIndex]:
        U, V = frozenset(U), frozenset(V)
        if not U or not V:
            raise ParameterError("complex multiplication needs nonempty subsets")
        return frozenset(
            a
            for a in self.params.indices()
            if any(intersection_number(b, c, a, self.params) for b in U for c in V)
        )

    def is_closed(self, U: Iterable[RelIndex]) -> bool:
        U = frozenset(U)
        return bool(U) and self.complex_product(U, U) <= U

    def is_strongly_normal(self, U: Iterable[RelIndex]) -> bool:
        U = frozenset(U)
        if not self.is_closed(U):
            return False
        return all(
            self.complex_product(self.complex_product({g}, U), {g}) <= U
            for g in self.params.indices()
        )

    def generated_members(self, U: Iterable[RelIndex]) -> FrozenSet[RelIndex]:
        """<U>: the fixed point of U -> U | UU starting from U | {0}."""
        current = frozenset(U) | {0}
        while True:
            grown = current | self.complex_product(current, current)
            if grown == current:
                return current
            current = grown

    def tilde_in_square(self, g: RelIndex) -> RelIndex:
        """The unique R_h in R_gR_g with P(h) = P_2(h) = P_2(g), found on points."""
        self.params.check(g)
        wide = support(self.params.wide_mask, self.params.n)
        target = support(g, self.params.n) & wide
        candidates = [
            h for h in self.params.indices()
            if self.intersection_number_oracle(g, g, h)
            and support(h, self.params.n) == target
        ]
        if len(candidates) != 1:
            raise VerificationError("R_gR_g has no unique wide element", {"g": g, "found": candidates})
        return candidates[0]

    def _require_closed(self, U: FrozenSet[RelIndex]) -> None:
        if not self.is_closed(U):
            raise ParameterError(f"{sorted(U)} is not a closed subset")

    def thin_radical(self, U: Iterable[RelIndex]) -> FrozenSet[RelIndex]:
        U = frozenset(U)
        self._require_closed(U)
        return frozenset(a for a in U if valency(a, self.params) == 1)

    def thin_residue(self, U: Iterable[RelIndex]) -> FrozenSet[RelIndex]:
        U = frozenset(U)
        self._require_closed(U)
        squares = frozenset().union(*(self.complex_product({g}, {g}) for g in U))
        return self.generated_members(squares)

    def closed_subset(self, U: Iterable[RelIndex]) -> ClosedSubset:
        """Classify U; ``is_closed`` is computed, the derived sets need it to hold."""
        U = frozenset(U)
        closed = self.is_closed(U)
        if not closed:
            return ClosedSubset(U, False, False, frozenset(), frozenset(), 0)
        top = 0
        for a in U:
            top |= tilde(a, self.params)
        return ClosedSubset(
            members=U,
            is_closed=True,
            is_strongly_normal=self.is_strongly_normal(U),
            thin_radical=self.thin_radical(U),
            thin_residue=self.thin_residue(U),
            p_max=top,
        )

    def generated_closed_subset(self, U: Iterable[RelIndex]) -> ClosedSubset:
        return self.closed_subset(self.generated_members(U))

    # ---- classification ----

    def _thin_subgroups(self) -> List[FrozenSet[RelIndex]]:
        """Subgroups of the thin radical: subspaces of F_2^m on the u_a = 2 positions."""
        positions = [a for a in range(self.params.n) if self.params.thin_mask >> a & 1]
        m = len(positions)

        def lift(vector: int) -> RelIndex:
            return sum(1 << positions[b] for b in range(m) if vector >> b & 1)

        return [frozenset(lift(v) for v in space) for space in subspaces_gf2(m)]

    def _check_family(self, family: List[ClosedSubset], expected: int, what: str) -> None:
        bad = [c.sorted_members() for c in family if not c.is_closed]
        if bad:
            raise VerificationError(f"{what}: generated subset is not closed", {"subset": bad[0]})
        if len({c.members for c in family}) != len(family) or len(family) != expected:
            raise VerificationError(
                f"{what}: count {len(family)} differs from the closed form {expected}",
                {"count": len(family), "expected": expected},
            )

    def enumerate_closed_subsets(self) -> List[ClosedSubset]:
        """All closed subsets as <R_g>V, g = tilde(g), V a subgroup of the thin radical."""
        family = []
        for g in submasks(self.params.wide_mask):
            for group in self._thin_subgroups():
                members = frozenset(h | v for h in submasks(g) for v in group)
                family.append(self.closed_subset(members))
        family.sort(key=ClosedSubset.sort_key)
        self._check_family(family, self.closed_subset_count(), "closed subsets")
        logger.debug("u=%s: %d closed subsets", self.params.u, len(family))
        return family

    def enumerate_strongly_normal(self) -> List[ClosedSubset]:
        """All strongly normal closed subsets: the thin residue times a thin subgroup."""
        residue = list(submasks(self.params.wide_mask))
        family = [
            self.closed_subset(frozenset(h | v for h in residue for v in group))
            for group in self._thin_subgroups()
        ]
        family.sort(key=ClosedSubset.sort_key)
        self._check_family(family, self.strongly_normal_count(), "strongly normal subsets")
        if not all(c.is_strongly_normal for c in family):
            raise VerificationError("a generated subset is not strongly normal")
        return family

    def closed_subset_count(self) -> int:
        return (1 << self.params.n2) * galois_number_g2(self.params.n - self.params.n2)

    def strongly_normal_count(self) -> int:
        return galois_number_g2(self.params.n - self.params.n2)

    def closed_subsets_by_scan(self) -> List[FrozenSet[RelIndex]]:
        """Naive scan over every subset containing R_0 (oracle, d <= 15)."""
        if self.params.d > 15:
            raise OracleLimitError(1 << self.params.d, 1 << 15)
        others = list(range(1, self.params.d + 1))
        found = []
        for size in range(len(others) + 1):
            for extra in combinations(others, size):
                U = frozenset((0,) + extra)
                if self.is_closed(U):
                    found.append(U)
        return sorted(found, key=lambda U: (len(U), sorted(U)))


@lru_cache(maxsize=None)
def scheme_for(params: SchemeParams, max_points: Optional[int] = None) -> FactorialScheme:
    return FactorialScheme(params, max_points)
