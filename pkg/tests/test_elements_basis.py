# tests/test_elements_basis.py
import os
import sys
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

sys.path.append(os.path.abspath(os.path.join(os.path.dirname(__file__), "../src")))
from terwilliger.algebra import (
    BTriple,
    TElement,
    b_mul,
    b_to_matrix,
    b_triples,
    dim_formula,
    eae_matrix,
    eae_to_b,
    element_to_matrix,
    t_mul,
)
from terwilliger.errors import FieldError, ParameterError
from terwilliger.exact_field import FieldSpec
from terwilliger.index_algebra import SchemeParams
from terwilliger.oracle import DenseMatrix, span_rank, terwilliger_closure
from terwilliger.scheme import FactorialScheme, Point, intersection_number

U23 = SchemeParams((2, 3))
Q, F2, F3 = FieldSpec(0), FieldSpec(2), FieldSpec(3)


# --- Basis -----------------------------------------------------------------

def test_worked_example_has_twenty_basis_elements():
    triples = b_triples(U23)
    assert len(triples) == 20 == dim_formula(U23)
    assert triples == sorted(triples)
    assert BTriple(2, 3, 3) in triples
    assert BTriple(1, 1, 2) not in triples


@pytest.mark.parametrize("u", [(2,), (3,), (2, 2), (2, 3), (3, 4), (2, 3, 4), (4, 4, 4), (2, 2, 2, 3)])
def test_dimension_formula_counts_nonzero_intersection_numbers(u):
    params = SchemeParams(u)
    nonzero = sum(
        1 for g in params.indices() for h in params.indices() for i in params.indices()
        if intersection_number(g, h, i, params)
    )
    assert dim_formula(params) == len(b_triples(params)) == nonzero


@pytest.mark.parametrize("u, expected", [((2,), 4), ((3,), 5), ((2, 2), 16)])
def test_small_dimensions(u, expected):
    assert dim_formula(SchemeParams(u)) == expected


def test_invalid_triple_is_rejected():
    with pytest.raises(ParameterError):
        BTriple(1, 1, 2).check(U23)
    with pytest.raises(ParameterError):
        TElement.basis((1, 1, 2), U23, Q)


# --- Products --------------------------------------------------------------

def test_product_from_worked_example():
    left, right = BTriple(2, 3, 3), BTriple(3, 2, 3)
    for spec in (Q, F3):
        assert b_mul(left, right, U23, spec) == TElement.basis(left, U23, spec, 2)
    assert not b_mul(left, right, U23, F2)


def test_products_with_mismatched_ends_vanish():
    assert not b_mul(BTriple(2, 3, 3), BTriple(2, 0, 2), U23, Q)


def test_local_product_at_the_top_index():
    # B_{3,2,3} B_{3,2,3} = k_2 B_{3,2,3}
    b = BTriple(3, 2, 3)
    assert b_mul(b, b, U23, F3) == TElement.basis(b, U23, F3, 2)
    with pytest.raises(ParameterError):
        b_mul(BTriple(3, 1, 3), b, U23, F3)


def test_identity_is_neutral():
    one = TElement.identity(U23, F3)
    for t in b_triples(U23):
        b = TElement.basis(t, U23, F3)
        assert t_mul(one, b) == b == t_mul(b, one)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(b_triples(U23)), st.sampled_from(b_triples(U23)), st.sampled_from(b_triples(U23)),
       st.sampled_from([Q, F2, F3]))
def test_basis_product_is_associative(t1, t2, t3, spec):
    a, b, c = (TElement.basis(t, U23, spec) for t in (t1, t2, t3))
    assert t_mul(t_mul(a, b), c) == t_mul(a, t_mul(b, c))


def test_elements_of_different_fields_do_not_mix():
    with pytest.raises(FieldError):
        TElement.identity(U23, F2) + TElement.identity(U23, F3)


def test_arithmetic_and_powers():
    b = TElement.basis(BTriple(3, 2, 3), U23, Q)
    assert (b + b) == b.scale(2)
    assert not (b - b)
    assert b ** 2 == b.scale(2)
    assert b ** 0 == TElement.identity(U23, Q)
    assert len(b.scale(Fraction(1, 2)) + TElement.basis(BTriple(0, 0, 0), U23, Q)) == 2


def test_json_round_trip_keeps_rationals():
    element = TElement(U23, Q, {BTriple(3, 2, 3): Fraction(-1, 2), BTriple(0, 0, 0): 1})
    data = element.to_json()
    assert data == [
        {"g": 0, "h": 0, "i": 0, "coeff": "1/1"},
        {"g": 3, "h": 2, "i": 3, "coeff": "-1/2"},
    ]
    assert TElement.from_json(data, U23, Q) == element


# --- Change of basis and matrices ------------------------------------------

def test_eae_expansion_of_worked_example():
    expansion = eae_to_b(2, 3, 3, U23, Q)
    assert expansion == TElement(U23, Q, {BTriple(2, 3, 3): 1, BTriple(2, 1, 3): -1})


@pytest.mark.parametrize("u", [(2, 3), (3, 3), (2, 2, 3)])
def test_b_elements_are_independent_and_faithful(u):
    params = SchemeParams(u)
    scheme = FactorialScheme(params)
    x = Point.origin(params)
    mats = {t: b_to_matrix(t, x, scheme, F3) for t in b_triples(params)}
    assert span_rank(list(mats.values())) == len(mats)
    alg = terwilliger_closure(scheme, x, F3)
    assert alg.dim == len(mats)
    for t1, m1 in mats.items():
        assert alg.contains(m1)
        assert m1.T == mats[t1.transpose()]
        for t2, m2 in mats.items():
            if t1.i == t2.g:
                assert m1 @ m2 == element_to_matrix(b_mul(t1, t2, params, F3), x, scheme)


def test_eae_to_b_matches_matrix_blocks():
    scheme = FactorialScheme(U23)
    x = Point((1, 2))
    for g, h, i in b_triples(U23):
        assert element_to_matrix(eae_to_b(g, h, i, U23, Q), x, scheme) == eae_matrix(g, h, i, x, scheme, Q)


def test_identity_matrix():
    scheme = FactorialScheme(U23)
    x = Point.origin(U23)
    assert element_to_matrix(TElement.identity(U23, Q), x, scheme) == DenseMatrix.identity(6, Q)
