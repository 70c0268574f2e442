# tests/test_radical_structure.py
import os
import sys

import pytest

sys.path.append(os.path.abspath(os.path.join(os.path.dirname(__file__), "../src")))
from terwilliger.algebra import (
    BTriple,
    TElement,
    approx_classes,
    b_to_matrix,
    b_triples,
    d_triples,
    dim_formula,
    is_semisimple,
    matrix_unit,
    radical_basis,
    radical_nilpotency,
    radical_nilpotency_search,
    radical_power_witness,
    t_mul,
    wedderburn_type,
)
from terwilliger.algebra.radical import congruent_one_count
from terwilliger.algebra.structure import signature
from terwilliger.errors import ParameterError
from terwilliger.exact_field import FieldSpec
from terwilliger.index_algebra import SchemeParams
from terwilliger.oracle import is_two_sided_ideal, nilpotency_index, terwilliger_closure
from terwilliger.scheme import FactorialScheme, Point

U23 = SchemeParams((2, 3))
Q, F2, F3 = FieldSpec(0), FieldSpec(2), FieldSpec(3)


# --- Radical ---------------------------------------------------------------

def test_radical_of_worked_example():
    radical = radical_basis(U23, F2)
    assert len(radical) == 12
    assert {t.h for t in radical} == {2, 3}
    assert radical_basis(U23, F3) == []
    assert radical_basis(U23, Q) == []


@pytest.mark.parametrize("p, expected", [(0, True), (2, False), (3, True), (5, True), (7, True)])
def test_semisimplicity_of_worked_example(p, expected):
    assert is_semisimple(U23, FieldSpec(p)) is expected


@pytest.mark.parametrize("u, p, expected", [
    ((2, 3), 2, 3),
    ((2, 3), 3, 1),
    ((3, 3), 2, 5),
    ((4, 4, 4), 3, 7),
    ((3, 4), 2, 3),
    ((2, 2), 2, 1),
])
def test_nilpotency_formula_and_search_agree(u, p, expected):
    params, spec = SchemeParams(u), FieldSpec(p)
    assert radical_nilpotency(params, spec) == expected
    assert radical_nilpotency_search(params, spec) == expected
    assert len(radical_power_witness(params, spec)) == expected - 1
    assert radical_nilpotency(params, spec) == 2 * congruent_one_count(params, spec) + 1


def test_power_witness_has_a_nonzero_product():
    params, spec = SchemeParams((3, 3)), F2
    witness = radical_power_witness(params, spec)
    product = TElement.basis(witness[0], params, spec)
    for t in witness[1:]:
        product = t_mul(product, TElement.basis(t, params, spec))
    assert product
    assert all(t in radical_basis(params, spec) for t in witness)


@pytest.mark.parametrize("u, p", [((2, 3), 2), ((3, 3), 2), ((2, 4), 3)])
def test_radical_is_a_nilpotent_ideal_of_the_matrix_algebra(u, p):
    params, spec = SchemeParams(u), FieldSpec(p)
    scheme = FactorialScheme(params)
    x = Point.origin(params)
    alg = terwilliger_closure(scheme, x, spec)
    mats = [b_to_matrix(t, x, scheme, spec) for t in radical_basis(params, spec)]
    assert is_two_sided_ideal(mats, alg)
    assert nilpotency_index(mats) == radical_nilpotency(params, spec)


# --- Wedderburn structure --------------------------------------------------

@pytest.mark.parametrize("u, p, blocks, radical_dim", [
    ((2, 3), 2, (2, 2), 12),
    ((2, 3), 3, (4, 2), 0),
    ((2, 3), 0, (4, 2), 0),
    ((3,), 0, (2, 1), 0),
    ((2,), 0, (2,), 0),
])
def test_wedderburn_type(u, p, blocks, radical_dim):
    params = SchemeParams(u)
    structure = wedderburn_type(params, FieldSpec(p))
    assert structure.block_sizes == blocks
    assert structure.radical_dim == radical_dim
    assert structure.irreducible_count == len(blocks)
    assert structure.dim == dim_formula(params)


def test_classes_of_worked_example_over_f2():
    classes = approx_classes(U23, F2)
    assert [c.signature for c in classes] == [0, 2]
    assert [c.diag_indices for c in classes] == [(0, 1), (2, 3)]
    assert classes[1].triples == (BTriple(2, 0, 2), BTriple(2, 1, 3), BTriple(3, 0, 3), BTriple(3, 1, 2))
    assert classes[0].unit_triple(0, 1) == BTriple(0, 1, 1)
    with pytest.raises(ParameterError):
        classes[0].unit_triple(0, 2)


def test_signature():
    assert signature(BTriple(3, 0, 3), U23) == 2
    assert signature(BTriple(3, 2, 3), U23) == 0


@pytest.mark.parametrize("u", [(2, 3), (3, 3), (2, 3, 4)])
@pytest.mark.parametrize("p", [0, 2, 3])
def test_classes_partition_the_d_triples(u, p):
    params, spec = SchemeParams(u), FieldSpec(p)
    classes = approx_classes(params, spec)
    members = [t for c in classes for t in c.triples]
    assert sorted(members) == sorted(d_triples(params, spec))
    assert sum(c.size ** 2 for c in classes) + len(radical_basis(params, spec)) == len(b_triples(params))


@pytest.mark.parametrize("u, p", [((2, 3), 0), ((2, 3), 2), ((3, 3), 3), ((2, 3, 4), 5)])
def test_matrix_unit_table(u, p):
    params, spec = SchemeParams(u), FieldSpec(p)
    zero = TElement.zero(params, spec)
    for cls in approx_classes(params, spec):
        units = {(a, b): matrix_unit(cls, a, b, params, spec)
                 for a in cls.diag_indices for b in cls.diag_indices}
        for (a, b), left in units.items():
            for (c, e), right in units.items():
                assert t_mul(left, right) == (units[a, e] if b == c else zero)
