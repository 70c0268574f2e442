"""
The invariant report of a factorial scheme, assembled from closed forms only.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence, Union

from terwilliger.algebra import (
    center_indices,
    dim_formula,
    is_semisimple,
    radical_nilpotency,
    wedderburn_type,
)
from terwilliger.config import report_indent
from terwilliger.errors import VerificationError
from terwilliger.exact_field import FieldSpec
from terwilliger.index_algebra import SchemeParams
from terwilliger.scheme import Point, valency
from terwilliger.subspaces import galois_number_g2

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Report:
    params: SchemeParams
    spec: FieldSpec
    valencies: List[int]
    dim_t: int
    dim_z: int
    closed_subset_count: int
    strongly_normal_count: int
    semisimple: bool
    radical_dim: int
    radical_nilpotency: int
    wedderburn_blocks: List[int]
    center_probability_check: str
    base_point: str

    @property
    def irreducible_count(self) -> int:
        return len(self.wedderburn_blocks)

    def to_dict(self) -> Dict[str, Any]:
        """JSON document with the published field names, in a fixed order."""
        return {
            "params": {"n": self.params.n, "u": list(self.params.u), "p": self.spec.p},
            "d": self.params.d,
            "n2": self.params.n2,
            "d1": self.params.d1,
            "valencies": list(self.valencies),
            "dimT": self.dim_t,
            "dimZ": self.dim_z,
            "closedSubsetCount": self.closed_subset_count,
            "stronglyNormalCount": self.strongly_normal_count,
            "semisimple": self.semisimple,
            "radicalDim": self.radical_dim,
            "radicalNilpotency": self.radical_nilpotency,
            "wedderburnBlocks": list(self.wedderburn_blocks),
            "irreducibleCount": self.irreducible_count,
            "centerProbabilityCheck": self.center_probability_check,
            "basePoint": self.base_point,
        }

    def to_json(self, indent: Optional[int] = None) -> str:
        indent = report_indent() if indent is None else indent
        return json.dumps(self.to_dict(), indent=indent or None)


def rational_string(value: Fraction) -> str:
    return f"{value.numerator}/{value.denominator}"


def _as_params(u: Union[SchemeParams, str, Sequence[int]]) -> SchemeParams:
    if isinstance(u, SchemeParams):
        return u
    if isinstance(u, str):
        return SchemeParams.parse(u)
    return SchemeParams(tuple(u))


def _as_spec(p: Union[FieldSpec, int, str]) -> FieldSpec:
    if isinstance(p, FieldSpec):
        return p
    if isinstance(p, str):
        return FieldSpec.parse(p)
    return FieldSpec(p)


def run_report(u: Union[SchemeParams, str, Sequence[int]], p: Union[FieldSpec, int, str],
               base_point: Optional[Union[Point, str]] = None) -> Report:
    params, spec = _as_params(u), _as_spec(p)
    if base_point is None:
        point = Point.origin(params)
    elif isinstance(base_point, Point):
        point = base_point.check(params)
    else:
        point = Point.parse(base_point, params)

    m = params.n - params.n2
    strongly_normal = galois_number_g2(m)
    closed = (1 << params.n2) * strongly_normal
    dim_z = len(center_indices(params))
    ratio = Fraction(strongly_normal, closed)
    if ratio != Fraction(1, dim_z):
        raise VerificationError(
            "strongly normal fraction differs from 1/dim Z(T)",
            {"ratio": rational_string(ratio), "dimZ": dim_z},
        )

    structure = wedderburn_type(params, spec)
    report = Report(
        params=params,
        spec=spec,
        valencies=[valency(g, params) for g in params.indices()],
        dim_t=dim_formula(params),
        dim_z=dim_z,
        closed_subset_count=closed,
        strongly_normal_count=strongly_normal,
        semisimple=is_semisimple(params, spec),
        radical_dim=structure.radical_dim,
        radical_nilpotency=radical_nilpotency(params, spec),
        wedderburn_blocks=list(structure.block_sizes),
        center_probability_check=rational_string(ratio),
        base_point=str(point),
    )
    logger.info("report for u=%s over %s: dim T %d, blocks %s",
                params.u, spec, report.dim_t, report.wedderburn_blocks)
    return report
