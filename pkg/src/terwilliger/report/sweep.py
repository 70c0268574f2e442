"""Reports (and optionally verifications) over every parameter tuple of a grid."""

from __future__ import annotations

import logging
from itertools import product
from typing import Any, Dict, Iterator, Sequence

from terwilliger.exact_field import FieldSpec
from terwilliger.index_algebra import SchemeParams
from terwilliger.report.report import run_report
from terwilliger.report.verify import run_verify

logger = logging.getLogger(__name__)


def sweep_params(values: Sequence[int], n_max: int) -> Iterator[SchemeParams]:
    """Every (u_1..u_n) with 1 <= n <= n_max and entries from ``values``, n first."""
    for n in range(1, n_max + 1):
        for u in product(sorted(set(values)), repeat=n):
            yield SchemeParams(u)


def run_sweep(values: Sequence[int], n_max: int, primes: Sequence[int],
              verify: bool = False) -> Iterator[Dict[str, Any]]:
    """
    One JSON-ready record per (u, p): the report, plus the verification outcome
    (overall status and the first failing check, if any) when ``verify`` is set.
    """
    specs = [FieldSpec(p) for p in primes]
    for params in sweep_params(values, n_max):
        for spec in specs:
            record = run_report(params, spec).to_dict()
            if verify:
                result = run_verify(params, spec)
                failure = result.first_failure
                record["verify"] = {
                    "overall": result.overall,
                    "checks": len(result.checks),
                    "failure": failure.to_dict() if failure else None,
                }
                if not result.overall:
                    logger.error("u=%s over %s: check %s failed", params.u, spec, failure.name)
            yield record
