"""
Incremental reduced row echelon basis over F_p or Q.

Rows are sparse dicts ``column -> raw value`` kept in fully reduced form, so a
vector is reduced by a single pass over its pivot columns. The pivot of a row is
its first nonzero coordinate (row-major order for flattened matrices).
"""

from __future__ import annotations

import logging
from fractions import Fraction
from typing import Dict, Hashable, Iterable, List, Set

import numpy as np

from terwilliger.exact_field import FieldSpec, RawValue
from terwilliger.oracle.matrix import int_safe

logger = logging.getLogger(__name__)

SparseRow = Dict[int, RawValue]


def to_sparse(vector: np.ndarray, spec: FieldSpec) -> SparseRow:
    out: SparseRow = {}
    for c in np.flatnonzero(vector != 0).tolist():
        value = vector[c]
        out[c] = spec.reduce(value if isinstance(value, Fraction) else int(value))
    return {c: v for c, v in out.items() if v}


def canonical_rows(batch: np.ndarray, spec: FieldSpec) -> List[np.ndarray]:
    """
    Nonzero rows of ``batch`` scaled to a canonical representative of their line,
    duplicates removed. Scaling never changes a span, so callers may feed these
    rows to the echelon instead of the originals.
    """
    batch = batch.reshape(batch.shape[0], -1)
    batch = batch[np.any(batch != 0, axis=1)]
    if not len(batch):
        return []
    if batch.dtype != object and int_safe(spec):
        lead = batch[np.arange(len(batch)), np.argmax(batch != 0, axis=1)]
        if spec.p:
            inv = np.array([pow(int(v), -1, spec.p) for v in lead], dtype=np.int64)
            batch = batch * inv[:, None] % spec.p
        else:
            g = np.gcd.reduce(np.abs(batch), axis=1)
            batch = batch // g[:, None] * np.sign(lead)[:, None]
        return list(np.unique(batch, axis=0))

    rows, seen = [], set()
    for row in batch:
        nz = np.flatnonzero(row != 0)
        lead = spec.inverse_value(spec.reduce(row[nz[0]]))
        scaled = np.array([spec.reduce(v * lead) for v in row], dtype=object)
        key = tuple(scaled.tolist())
        if key not in seen:
            seen.add(key)
            rows.append(scaled)
    return rows


def _row_key(row: np.ndarray) -> Hashable:
    if row.dtype == object:
        return tuple(row.tolist())
    return row.tobytes()


class EchelonBasis:
    """
    Span of vectors of a fixed length, maintained in reduced row echelon form.

    ``elements`` keeps the accepted input vectors themselves: they are linearly
    independent and span the same space as the echelon rows.
    """

    def __init__(self, spec: FieldSpec, length: int):
        self.spec = spec
        self.length = length
        self._rows: Dict[int, SparseRow] = {}
        self.elements: List[np.ndarray] = []
        self._seen: Set[Hashable] = set()

    @property
    def dim(self) -> int:
        return len(self._rows)

    def __len__(self) -> int:
        return self.dim

    def pivots(self) -> List[int]:
        return sorted(self._rows)

    # ---- reduction ----

    def _axpy(self, target: SparseRow, coef: RawValue, row: SparseRow) -> None:
        """target -= coef * row."""
        p = self.spec.p
        for c, r in row.items():
            value = target.get(c, 0) - coef * r
            if p:
                value %= p
            if value:
                target[c] = value
            else:
                target.pop(c, None)

    def reduce(self, vector: SparseRow) -> SparseRow:
        residue = dict(vector)
        for c in sorted(residue.keys() & self._rows.keys()):
            coef = residue.get(c)
            if coef:
                self._axpy(residue, coef, self._rows[c])
        return residue

    def contains(self, vector: np.ndarray) -> bool:
        return not self.reduce(to_sparse(np.asarray(vector).reshape(-1), self.spec))

    # ---- insertion ----

    def add(self, vector: np.ndarray) -> bool:
        """Insert ``vector``; True iff it was outside the current span."""
        vector = np.asarray(vector).reshape(-1)
        if len(vector) != self.length:
            raise ValueError(f"vector of length {len(vector)} in a space of length {self.length}")
        key = _row_key(vector)
        if key in self._seen:
            return False
        self._seen.add(key)
        residue = self.reduce(to_sparse(vector, self.spec))
        if not residue:
            return False

        pivot = min(residue)
        scale = self.spec.inverse_value(residue[pivot])
        residue = {c: self.spec.reduce(v * scale) for c, v in residue.items()}
        for row in self._rows.values():
            coef = row.get(pivot)
            if coef:
                self._axpy(row, coef, residue)
        self._rows[pivot] = residue
        self.elements.append(vector)
        return True

    def extend(self, vectors: Iterable[np.ndarray]) -> List[np.ndarray]:
        return [v for v in vectors if self.add(v)]

    def extend_batch(self, batch: np.ndarray) -> List[np.ndarray]:
        """Insert every row of ``batch`` (any trailing shape); returns the accepted rows."""
        if not len(batch):
            return []
        return self.extend(canonical_rows(batch, self.spec))
