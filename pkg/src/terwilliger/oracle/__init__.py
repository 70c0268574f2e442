from terwilliger.oracle.closure import (
    SpannedAlgebra,
    algebra_closure,
    center_dim,
    is_two_sided_ideal,
    nilpotency_index,
    span_rank,
    terwilliger_closure,
    terwilliger_generators,
)
from terwilliger.oracle.echelon import EchelonBasis
from terwilliger.oracle.matrix import DenseMatrix, adjacency_matrix, dual_idempotent, matrix_sum

__all__ = [
    "DenseMatrix",
    "EchelonBasis",
    "SpannedAlgebra",
    "adjacency_matrix",
    "algebra_closure",
    "center_dim",
    "dual_idempotent",
    "is_two_sided_ideal",
    "matrix_sum",
    "nilpotency_index",
    "span_rank",
    "terwilliger_closure",
    "terwilliger_generators",
]
