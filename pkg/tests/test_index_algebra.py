# tests/test_index_algebra.py
import os
import sys
from itertools import product

import pytest
from hypothesis import given, strategies as st

sys.path.append(os.path.abspath(os.path.join(os.path.dirname(__file__), "../src")))
from terwilliger.errors import ParameterError
from terwilliger.index_algebra import (
    SchemeParams,
    diff,
    from_support,
    interval,
    join,
    le2,
    m5,
    meet,
    odot,
    submasks,
    support,
    symdiff,
    tilde,
    weight,
)


# --- Strategies ------------------------------------------------------------

sizes = st.lists(st.integers(min_value=2, max_value=5), min_size=1, max_size=5)


@st.composite
def params_and_indices(draw, count=2):
    params = SchemeParams(tuple(draw(sizes)))
    index = st.integers(min_value=0, max_value=params.d)
    return (params,) + tuple(draw(index) for _ in range(count))


# --- Parameters ------------------------------------------------------------

def test_params_derived_constants():
    params = SchemeParams((2, 3))
    assert params.n == 2
    assert params.d == 3
    assert params.n2 == 1
    assert params.d1 == 2
    assert params.wide_mask == 0b10
    assert params.thin_mask == 0b01
    assert params.point_count == 6
    assert list(params.indices()) == [0, 1, 2, 3]


def test_params_parse_and_label():
    params = SchemeParams.parse("2, 3,4")
    assert params.u == (2, 3, 4)
    assert params.label() == "2,3,4"


@pytest.mark.parametrize("bad", [(), (1,), (2, 0), (3, 1, 4)])
def test_params_reject_bad_sizes(bad):
    with pytest.raises(ParameterError):
        SchemeParams(bad)


def test_params_reject_unparsable_text():
    with pytest.raises(ParameterError):
        SchemeParams.parse("2,x")


def test_check_rejects_out_of_range_index():
    params = SchemeParams((2, 3))
    assert params.check(3) == 3
    with pytest.raises(ParameterError):
        params.check(4)
    with pytest.raises(ParameterError):
        params.check(-1)


# --- Supports and order ----------------------------------------------------

def test_support_is_one_indexed():
    assert support(0b101, 3) == frozenset({1, 3})
    assert from_support([1, 3]) == 0b101
    with pytest.raises(ParameterError):
        support(8, 3)
    with pytest.raises(ParameterError):
        from_support([0])


@given(st.integers(min_value=0, max_value=255))
def test_support_round_trip(g):
    assert from_support(support(g, 8)) == g
    assert len(support(g, 8)) == weight(g)


@given(st.integers(min_value=0, max_value=255), st.integers(min_value=0, max_value=255))
def test_lattice_operations_match_supports(g, h):
    a, b = support(g, 8), support(h, 8)
    assert support(join(g, h), 8) == a | b
    assert support(meet(g, h), 8) == a & b
    assert support(diff(g, h), 8) == a - b
    assert support(symdiff(g, h), 8) == a ^ b


def test_tilde_and_odot_on_worked_example():
    params = SchemeParams((2, 3))
    assert tilde(3, params) == 2
    assert tilde(1, params) == 0
    assert odot(3, 3, params) == 2
    assert odot(2, 3, params) == 3
    assert odot(1, 1, params) == 0


def test_m5_on_worked_example():
    params = SchemeParams((2, 3))
    assert m5(2, 3, 3, 2, 3, params) == 3
    assert m5(3, 1, 3, 2, 3, params) == 2


@pytest.mark.parametrize("u", [(2,), (3,), (2, 3), (3, 3), (2, 2, 3)])
def test_m5_lies_between_xor_and_odot(u):
    params = SchemeParams(u)
    for g, h, i, j, k in product(params.indices(), repeat=5):
        m = m5(g, h, i, j, k, params)
        assert le2(g ^ k, m), (g, h, i, j, k)
        assert le2(m, odot(g, k, params)), (g, h, i, j, k)


@given(params_and_indices(count=2))
def test_odot_is_symmetric_and_bounds_xor(data):
    params, g, h = data
    assert odot(g, h, params) == odot(h, g, params)
    assert le2(g ^ h, odot(g, h, params))
    assert le2(odot(g, h, params), g | h)


@given(params_and_indices(count=3))
def test_window_symmetry(data):
    params, g, h, i = data
    forward = le2(g ^ h, i) and le2(i, odot(g, h, params))
    swapped = le2(g ^ i, h) and le2(h, odot(g, i, params))
    assert forward == swapped


@given(params_and_indices(count=1))
def test_tilde_is_idempotent_and_below(data):
    params, g = data
    assert tilde(tilde(g, params), params) == tilde(g, params)
    assert le2(tilde(g, params), g)


# --- Enumeration -----------------------------------------------------------

def test_submasks_are_increasing():
    assert list(submasks(0b101)) == [0, 1, 4, 5]
    assert list(submasks(0)) == [0]


@given(st.integers(min_value=0, max_value=1023))
def test_submasks_count(g):
    found = list(submasks(g))
    assert len(found) == 1 << weight(g)
    assert all(le2(a, g) for a in found)
    assert found == sorted(set(found))


@given(st.integers(min_value=0, max_value=255), st.integers(min_value=0, max_value=255))
def test_interval_members(low, high):
    found = list(interval(low, high))
    if not le2(low, high):
        assert found == []
    else:
        assert len(found) == 1 << weight(high & ~low)
        assert all(le2(low, a) and le2(a, high) for a in found)


@given(st.integers(min_value=0, max_value=255), st.integers(min_value=0, max_value=255))
def test_le2_is_a_partial_order(g, h):
    assert le2(g, g)
    if le2(g, h) and le2(h, g):
        assert g == h
    assert le2(g & h, g) and le2(g, g | h)
