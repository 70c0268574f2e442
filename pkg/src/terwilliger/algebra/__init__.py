from terwilliger.algebra.basis import (
    b_to_matrix,
    b_triples,
    dim_formula,
    eae_matrix,
    eae_to_b,
    element_to_matrix,
)
from terwilliger.algebra.center import c_element, c_mul, c_pow, center_basis, center_indices
from terwilliger.algebra.elements import BTriple, TElement, b_mul, t_mul
from terwilliger.algebra.idempotents import (
    bd_mul,
    bd_rule,
    d_element,
    d_mul,
    d_triples,
    dd_rule,
    local_basis,
    local_idempotents,
    local_is_semisimple,
    local_nilpotency,
    local_quotient_dim,
    local_radical,
    n_hj,
)
from terwilliger.algebra.radical import (
    center_is_semisimple,
    is_semisimple,
    radical_basis,
    radical_nilpotency,
    radical_nilpotency_search,
    radical_power_witness,
)
from terwilliger.algebra.structure import (
    ApproxClass,
    WedderburnType,
    approx_classes,
    matrix_unit,
    wedderburn_type,
)

__all__ = [
    "ApproxClass",
    "BTriple",
    "TElement",
    "WedderburnType",
    "approx_classes",
    "b_mul",
    "b_to_matrix",
    "b_triples",
    "bd_mul",
    "bd_rule",
    "c_element",
    "c_mul",
    "c_pow",
    "center_basis",
    "center_indices",
    "center_is_semisimple",
    "d_element",
    "d_mul",
    "d_triples",
    "dd_rule",
    "dim_formula",
    "eae_matrix",
    "eae_to_b",
    "element_to_matrix",
    "is_semisimple",
    "local_basis",
    "local_idempotents",
    "local_is_semisimple",
    "local_nilpotency",
    "local_quotient_dim",
    "local_radical",
    "matrix_unit",
    "n_hj",
    "radical_basis",
    "radical_nilpotency",
    "radical_nilpotency_search",
    "radical_power_witness",
    "t_mul",
    "wedderburn_type",
]
