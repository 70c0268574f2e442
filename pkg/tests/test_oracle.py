# tests/test_oracle.py
import os
import sys
from fractions import Fraction

import numpy as np
import pytest

sys.path.append(os.path.abspath(os.path.join(os.path.dirname(__file__), "../src")))
from terwilliger.errors import FieldError, NotNilpotentError, ParameterError
from terwilliger.exact_field import FieldSpec
from terwilliger.index_algebra import SchemeParams
from terwilliger.oracle import (
    DenseMatrix,
    EchelonBasis,
    adjacency_matrix,
    algebra_closure,
    center_dim,
    dual_idempotent,
    is_two_sided_ideal,
    matrix_sum,
    nilpotency_index,
    span_rank,
    terwilliger_closure,
    terwilliger_generators,
)
from terwilliger.oracle.echelon import canonical_rows
from terwilliger.oracle.matrix import safe_matmul
from terwilliger.scheme import FactorialScheme, Point

Q, F2, F3 = FieldSpec(0), FieldSpec(2), FieldSpec(3)


def unit(size, r, c, spec):
    data = np.zeros((size, size), dtype=np.int64)
    data[r, c] = 1
    return DenseMatrix(data, spec)


# --- Dense matrices --------------------------------------------------------

def test_entries_are_reduced_mod_p():
    m = DenseMatrix(np.array([[4, -1], [3, 7]]), F3)
    assert m.data.tolist() == [[1, 2], [0, 1]]
    assert m.trace() == F3.elem(2)


def test_rational_scaling_stays_exact():
    m = DenseMatrix.identity(2, Q).scale(Fraction(1, 3))
    assert m.entry(0, 0).value == Fraction(1, 3)
    assert (m @ DenseMatrix.identity(2, Q).scale(3)) == DenseMatrix.identity(2, Q)


def test_large_integers_do_not_overflow():
    big = DenseMatrix(np.full((2, 2), 1 << 40, dtype=np.int64), Q)
    square = big @ big
    assert int(square.data[0, 0]) == 2 * (1 << 80)


def test_safe_matmul_broadcasts():
    stack = np.stack([np.eye(3, dtype=np.int64), 2 * np.eye(3, dtype=np.int64)])
    out = safe_matmul(stack, np.ones((3, 3), dtype=np.int64), F3)
    assert out.shape == (2, 3, 3)
    assert out[1].tolist() == [[2, 2, 2]] * 3


def test_mixing_fields_and_sizes_raises():
    with pytest.raises(FieldError):
        DenseMatrix.identity(2, F2) + DenseMatrix.identity(2, F3)
    with pytest.raises(ParameterError):
        DenseMatrix.identity(2, F2) @ DenseMatrix.identity(3, F2)
    with pytest.raises(ParameterError):
        DenseMatrix(np.zeros((2, 3)), F2)


def test_scheme_matrices_satisfy_the_basic_identities():
    scheme = FactorialScheme(SchemeParams((2, 3)))
    x = Point.origin(scheme.params)
    size = scheme.params.point_count
    adj = [adjacency_matrix(g, scheme, Q) for g in scheme.params.indices()]
    dual = [dual_idempotent(g, x, scheme, Q) for g in scheme.params.indices()]
    assert matrix_sum(adj, size, Q) == DenseMatrix(np.ones((size, size), dtype=np.int64), Q)
    assert matrix_sum(dual, size, Q) == DenseMatrix.identity(size, Q)
    assert [m.trace() for m in dual] == [Q.elem(k) for k in scheme.valencies()]
    assert adj[2].row_sums() == [Q.elem(2)] * size
    assert adj[3] @ adj[3] == adj[0].scale(2) + adj[2]


def test_translation_conjugates_the_generators():
    scheme = FactorialScheme(SchemeParams((2, 3)))
    x, y = Point((0, 0)), Point((1, 2))
    perm = scheme.translation(x, y)
    for g in scheme.params.indices():
        assert dual_idempotent(g, x, scheme, F3).permuted(perm) == dual_idempotent(g, y, scheme, F3)
        assert adjacency_matrix(g, scheme, F3).permuted(perm) == adjacency_matrix(g, scheme, F3)
    with pytest.raises(ParameterError):
        DenseMatrix.identity(6, F3).permuted(perm[:3])


# --- Echelon ---------------------------------------------------------------

def test_echelon_rank_and_membership():
    basis = EchelonBasis(F3, 3)
    assert basis.add(np.array([1, 2, 0]))
    assert basis.add(np.array([0, 1, 1]))
    assert not basis.add(np.array([1, 0, 1]))
    assert basis.dim == 2
    assert basis.contains(np.array([2, 1, 0]))
    assert not basis.contains(np.array([0, 0, 1]))
    assert basis.pivots() == [0, 1]


def test_echelon_rank_depends_on_the_field():
    vectors = np.array([[1, 1], [1, -1]])
    assert EchelonBasis(Q, 2).extend_batch(vectors).__len__() == 2
    f2 = EchelonBasis(F2, 2)
    f2.extend_batch(vectors)
    assert f2.dim == 1


def test_canonical_rows_dedupe_scaled_copies():
    rows = canonical_rows(np.array([[2, 4], [1, 2], [0, 0], [-3, -6]]), Q)
    assert len(rows) == 1
    assert rows[0].tolist() == [1, 2]


def test_echelon_rejects_wrong_length():
    with pytest.raises(ValueError):
        EchelonBasis(Q, 3).add(np.array([1, 0]))


# --- Closure ---------------------------------------------------------------

@pytest.mark.parametrize("strategy", ["generators", "pairwise"])
def test_closure_of_matrix_units(strategy):
    gens = [unit(3, 0, 1, Q), unit(3, 1, 2, Q)]
    alg = algebra_closure(gens, strategy)
    # I, e01, e12, e02
    assert alg.dim == 4
    assert alg.contains(unit(3, 0, 2, Q))
    assert not alg.contains(unit(3, 2, 0, Q))


def test_unknown_strategy_is_rejected():
    with pytest.raises(ParameterError):
        algebra_closure([DenseMatrix.identity(2, Q)], "triples")


def test_terwilliger_closure_dimension_of_worked_example():
    scheme = FactorialScheme(SchemeParams((2, 3)))
    x = Point.origin(scheme.params)
    assert len(terwilliger_generators(scheme, x, Q)) == 8
    for spec in (Q, F2, F3):
        assert terwilliger_closure(scheme, x, spec).dim == 20


@pytest.mark.parametrize("u, spec", [((2, 3), F2), ((2, 3), Q), ((2, 2), F3)])
def test_closure_strategies_span_the_same_algebra(u, spec):
    scheme = FactorialScheme(SchemeParams(u))
    x = Point.origin(scheme.params)
    by_generators = terwilliger_closure(scheme, x, spec, "generators")
    by_pairs = terwilliger_closure(scheme, x, spec, "pairwise")
    assert by_generators.dim == by_pairs.dim
    assert all(by_pairs.contains(m) for m in by_generators.basis)


@pytest.mark.parametrize("u, p, expected", [((2, 3), 0, 2), ((2, 3), 2, 2), ((3, 3), 3, 4), ((2,), 0, 1)])
def test_center_dimension(u, p, expected):
    scheme = FactorialScheme(SchemeParams(u))
    alg = terwilliger_closure(scheme, Point.origin(scheme.params), FieldSpec(p))
    assert center_dim(alg) == expected


def test_span_rank_ideal_and_nilpotency():
    gens = [unit(3, 0, 1, Q), unit(3, 1, 2, Q)]
    alg = algebra_closure(gens)
    strict = [unit(3, 0, 1, Q), unit(3, 1, 2, Q), unit(3, 0, 2, Q)]
    assert span_rank(strict + [unit(3, 0, 2, Q).scale(5)]) == 3
    assert is_two_sided_ideal(strict, alg)
    assert not is_two_sided_ideal([unit(3, 0, 1, Q)], alg)
    assert nilpotency_index(strict) == 3
    assert nilpotency_index([]) == 1


def test_nilpotency_of_non_nilpotent_span():
    with pytest.raises(NotNilpotentError):
        nilpotency_index([DenseMatrix.identity(2, Q)])
