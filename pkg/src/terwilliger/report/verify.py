"""
Oracle verification suite: every closed form of the report checked against explicit
matrices and point scans.

Checks run in a fixed order and stop at the first failure, whose counterexample is
kept in the failing check's ``detail``.
"""

from __future__ import annotations

import logging
import time
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from terwilliger.algebra import (
    BTriple,
    TElement,
    approx_classes,
    b_mul,
    b_to_matrix,
    b_triples,
    bd_mul,
    c_element,
    c_mul,
    center_basis,
    center_indices,
    center_is_semisimple,
    d_mul,
    d_triples,
    dim_formula,
    eae_matrix,
    eae_to_b,
    is_semisimple,
    local_idempotents,
    local_is_semisimple,
    local_nilpotency,
    local_quotient_dim,
    local_radical,
    matrix_unit,
    radical_basis,
    radical_nilpotency,
    radical_nilpotency_search,
    radical_power_witness,
    t_mul,
    wedderburn_type,
)
from terwilliger.constant import EXHAUSTIVE_POINTS
from terwilliger.errors import NotNilpotentError, VerificationError
from terwilliger.exact_field import FieldSpec
from terwilliger.index_algebra import SchemeParams, tilde
from terwilliger.log import run_context, with_spinner
from terwilliger.oracle import (
    DenseMatrix,
    SpannedAlgebra,
    adjacency_matrix,
    center_dim,
    dual_idempotent,
    is_two_sided_ideal,
    matrix_sum,
    nilpotency_index,
    span_rank,
    terwilliger_closure,
)
from terwilliger.report.report import _as_params, _as_spec, run_report
from terwilliger.scheme import FactorialScheme, Point, scheme_for

logger = logging.getLogger(__name__)

# The naive closed-subset scan visits 2^d subsets.
_SCAN_MAX_D = 7


@dataclass
class CheckResult:
    name: str
    status: str
    detail: Dict[str, Any] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def to_dict(self) -> Dict[str, Any]:
        return {"name": self.name, "status": self.status, "detail": self.detail}


@dataclass
class VerifyResult:
    params: SchemeParams
    spec: FieldSpec
    checks: List[CheckResult] = field(default_factory=list)

    @property
    def overall(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def first_failure(self) -> Optional[CheckResult]:
        return next((c for c in self.checks if not c.passed), None)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "params": {"n": self.params.n, "u": list(self.params.u), "p": self.spec.p},
            "checks": [c.to_dict() for c in self.checks],
            "overall": self.overall,
        }


def _fail(message: str, **detail: Any) -> None:
    raise VerificationError(message, detail)


class VerifyContext:
    """Shared state of one verification run; matrices are built once and cached."""

    def __init__(self, params: SchemeParams, spec: FieldSpec, scheme: FactorialScheme, x: Point):
        self.params = params
        self.spec = spec
        self.scheme = scheme
        self.x = x
        self._b_matrices: Dict[BTriple, DenseMatrix] = {}

    @property
    def exhaustive(self) -> bool:
        return self.params.point_count <= EXHAUSTIVE_POINTS

    @cached_property
    def triples(self) -> List[BTriple]:
        return b_triples(self.params)

    @cached_property
    def algebra(self) -> SpannedAlgebra:
        return terwilliger_closure(self.scheme, self.x, self.spec)

    def b_matrix(self, t: BTriple) -> DenseMatrix:
        if t not in self._b_matrices:
            self._b_matrices[t] = b_to_matrix(t, self.x, self.scheme, self.spec)
        return self._b_matrices[t]

    def matrix(self, a: TElement) -> DenseMatrix:
        return matrix_sum(
            (self.b_matrix(t).scale(c) for t, c in a.items()),
            self.params.point_count,
            self.spec,
        )


# --------- Scheme ---------

def check_scheme_axioms(ctx: VerifyContext) -> Dict[str, Any]:
    params, scheme = ctx.params, ctx.scheme
    table = scheme.relation_table.astype(np.int64)
    if np.any(table != table.T):
        _fail("relation table is not symmetric")
    if np.any(np.diag(table) != 0):
        _fail("diagonal pairs are not in R_0")
    counts = np.stack([np.bincount(row, minlength=params.d + 1) for row in table])
    expected = np.array(scheme.valencies())
    bad = np.nonzero(np.any(counts != expected, axis=1))[0]
    if bad.size:
        y = int(bad[0])
        _fail("neighbourhood sizes differ from the valencies",
              point=str(Point.decode(y, params)), counts=counts[y].tolist(), valencies=expected.tolist())

    k = scheme.valencies()
    p = {(g, h, i): scheme.intersection_number(g, h, i)
         for g in params.indices() for h in params.indices() for i in params.indices()}
    for g in params.indices():
        for h in params.indices():
            if p[0, g, h] != (g == h) or p[g, h, 0] != (k[g] if g == h else 0):
                _fail("trivial intersection numbers are wrong", g=g, h=h)
            if sum(p[g, h, i] * k[i] for i in params.indices()) != k[g] * k[h]:
                _fail("sum over i of p_gh^i k_i is not k_g k_h", g=g, h=h)
            for i in params.indices():
                if p[g, h, i] != p[h, g, i] or k[i] * p[g, h, i] != k[g] * p[i, h, g]:
                    _fail("intersection numbers break a symmetry identity", g=g, h=h, i=i)
        for i in params.indices():
            if sum(p[g, h, i] for h in params.indices()) != k[g]:
                _fail("sum over h of p_gh^i is not k_g", g=g, i=i)
    return {"points": params.point_count, "relations": params.d + 1}


def check_intersection_numbers(ctx: VerifyContext) -> Dict[str, Any]:
    params, scheme = ctx.params, ctx.scheme
    for g in params.indices():
        for h in params.indices():
            for i in params.indices():
                closed = scheme.intersection_number(g, h, i)
                counted = scheme.intersection_number_oracle(g, h, i, check_all_pairs=ctx.exhaustive)
                if closed != counted:
                    _fail("intersection number differs from the point count",
                          g=g, h=h, i=i, closedForm=closed, oracle=counted)
    for g in params.indices():
        if scheme.tilde_in_square(g) != tilde(g, params):
            _fail("tilde map differs from the wide element of R_gR_g",
                  g=g, tilde=tilde(g, params), found=scheme.tilde_in_square(g))
    return {"triples": (params.d + 1) ** 3, "allPairs": ctx.exhaustive}


def check_triple_regularity(ctx: VerifyContext) -> Dict[str, Any]:
    points = ctx.scheme.points() if ctx.exhaustive else [ctx.x]
    for x in points:
        if not ctx.scheme.check_triple_regularity(x):
            _fail("triple intersection numbers are not determined by the pairwise relations",
                  basePoint=str(x))
    return {"basePoints": len(points)}


def check_closed_subsets(ctx: VerifyContext) -> Dict[str, Any]:
    params, scheme = ctx.params, ctx.scheme
    family = scheme.enumerate_closed_subsets()
    strong = scheme.enumerate_strongly_normal()
    residue = scheme.thin_residue(params.indices())

    for c in family:
        if c.thin_residue & c.thin_radical != {0}:
            _fail("thin residue and thin radical meet outside R_0", subset=c.sorted_members())
        if scheme.complex_product(c.thin_residue, c.thin_radical) != c.members:
            _fail("closed subset is not its thin residue times its thin radical",
                  subset=c.sorted_members())
        if c.is_strongly_normal != (residue <= c.members):
            _fail("strong normality differs from containing the thin residue",
                  subset=c.sorted_members())

    ratio = Fraction(len(strong), len(family))
    if ratio != Fraction(1, 1 << params.n2):
        _fail("strongly normal fraction is not 1/dim Z(T)", ratio=str(ratio))

    scanned = None
    if params.d <= _SCAN_MAX_D:
        found = scheme.closed_subsets_by_scan()
        scanned = len(found)
        if set(found) != {c.members for c in family}:
            _fail("scan and enumeration disagree on the closed subsets",
                  scanned=[sorted(U) for U in found],
                  enumerated=[c.sorted_members() for c in family])
        strong_scan = {U for U in found if scheme.is_strongly_normal(U)}
        if strong_scan != {c.members for c in strong}:
            _fail("scan and enumeration disagree on the strongly normal subsets",
                  scanned=sorted(sorted(U) for U in strong_scan))
    return {"closed": len(family), "stronglyNormal": len(strong), "scanned": scanned}


# --------- Matrices ---------

def check_matrix_identities(ctx: VerifyContext) -> Dict[str, Any]:
    params, scheme, spec, x = ctx.params, ctx.scheme, ctx.spec, ctx.x
    size = params.point_count
    adj = [adjacency_matrix(g, scheme, spec) for g in params.indices()]
    dual = [dual_idempotent(g, x, scheme, spec) for g in params.indices()]
    identity = DenseMatrix.identity(size, spec)

    if adj[0] != identity or matrix_sum(dual, size, spec) != identity:
        _fail("A_0 or the sum of the E_g* is not the identity")
    if matrix_sum(adj, size, spec) != DenseMatrix(np.ones((size, size), dtype=np.int64), spec):
        _fail("the A_g do not sum to J")
    for g in params.indices():
        if adj[g].T != adj[g]:
            _fail("A_g is not symmetric", g=g)
        if dual[g].trace() != spec.elem(scheme.valency(g)):
            _fail("trace of E_g* is not k_g", g=g)
        for h in params.indices():
            product = dual[g] @ dual[h]
            if product != (dual[g] if g == h else DenseMatrix.zeros(size, spec)):
                _fail("dual idempotents are not orthogonal idempotents", g=g, h=h)
            expected = matrix_sum(
                (adj[i].scale(scheme.intersection_number(g, h, i)) for i in params.indices()),
                size, spec,
            )
            if adj[g] @ adj[h] != expected:
                _fail("A_g A_h differs from the sum of p_gh^i A_i", g=g, h=h)
            for i in params.indices():
                block = eae_matrix(g, h, i, x, scheme, spec)
                nonzero = not np.all(block.data == 0)
                if nonzero != bool(scheme.intersection_number(g, h, i)):
                    _fail("E_g* A_h E_i* vanishes exactly when p_gh^i does not",
                          g=g, h=h, i=i)
    return {"generators": 2 * (params.d + 1)}


def check_dimension(ctx: VerifyContext) -> Dict[str, Any]:
    params = ctx.params
    nonzero = sum(
        1 for g in params.indices() for h in params.indices() for i in params.indices()
        if ctx.scheme.intersection_number(g, h, i)
    )
    dims = {
        "closure": ctx.algebra.dim,
        "formula": dim_formula(params),
        "basis": len(ctx.triples),
        "nonzeroIntersectionNumbers": nonzero,
    }
    if len(set(dims.values())) != 1:
        _fail("dimension of T disagrees between its certificates", **dims)
    return dims


def check_b_basis(ctx: VerifyContext) -> Dict[str, Any]:
    params, spec, alg = ctx.params, ctx.spec, ctx.algebra
    mats = [ctx.b_matrix(t) for t in ctx.triples]
    outside = [list(t) for t, m in zip(ctx.triples, mats) if not alg.contains(m)]
    if outside:
        _fail("B-element outside the closure", triple=outside[0])
    rank = span_rank(mats)
    if rank != len(mats):
        _fail("B-elements are linearly dependent", rank=rank, count=len(mats))

    known = set(ctx.triples)
    for t in ctx.triples:
        if t.transpose() not in known or ctx.b_matrix(t).T != ctx.b_matrix(t.transpose()):
            _fail("transpose of B_{g,h,i} is not B_{i,h,g}", triple=list(t))
        g, h, i = t
        if ctx.matrix(eae_to_b(g, h, i, params, spec)) != eae_matrix(g, h, i, ctx.x, ctx.scheme, spec):
            _fail("E_g* A_h E_i* differs from its B-expansion", triple=list(t))
    if ctx.matrix(TElement.identity(params, spec)) != DenseMatrix.identity(params.point_count, spec):
        _fail("sum of the B_{g,0,g} is not the identity")
    return {"rank": rank}


def check_products(ctx: VerifyContext) -> Dict[str, Any]:
    params, spec = ctx.params, ctx.spec
    by_left: Dict[int, List[BTriple]] = {}
    for t in ctx.triples:
        by_left.setdefault(t.g, []).append(t)
    pairs = 0
    for t1 in ctx.triples:
        for t2 in by_left.get(t1.i, ()):
            pairs += 1
            symbolic = b_mul(t1, t2, params, spec)
            if ctx.b_matrix(t1) @ ctx.b_matrix(t2) != ctx.matrix(symbolic):
                _fail("B-product differs from the matrix product",
                      left=list(t1), right=list(t2), symbolic=symbolic.to_json())
    return {"pairs": pairs}


# --------- Algebra structure ---------

def check_center(ctx: VerifyContext) -> Dict[str, Any]:
    params, spec, alg = ctx.params, ctx.spec, ctx.algebra
    expected = 1 << params.n2
    basis = center_basis(params, spec)
    for g, c in zip(center_indices(params), basis):
        for t in ctx.triples:
            b = TElement.basis(t, params, spec)
            if t_mul(c, b) != t_mul(b, c):
                _fail("C_g does not commute with a basis element", g=g, triple=list(t))
        for h in center_indices(params):
            coeff, top = c_mul(g, h, params, spec)
            if t_mul(c, c_element(h, params, spec)) != c_element(top, params, spec).scale(coeff):
                _fail("C_g C_h differs from k_{g & h} C_{g | h}", g=g, h=h)

    mats = [ctx.matrix(c) for c in basis]
    for g, m in zip(center_indices(params), mats):
        if any(m @ gen != gen @ m for gen in alg.generators):
            _fail("matrix of C_g does not commute with the generators", g=g)
    rank = span_rank(mats)
    oracle = center_dim(alg)
    if not rank == oracle == expected:
        _fail("center dimension disagrees between its certificates",
              cRank=rank, oracle=oracle, formula=expected)
    if center_is_semisimple(params, spec) != is_semisimple(params, spec):
        _fail("semisimplicity of Z(T) differs from that of T",
              center=center_is_semisimple(params, spec), algebra=is_semisimple(params, spec))
    return {"dimZ": oracle}


def check_radical(ctx: VerifyContext) -> Dict[str, Any]:
    params, spec, alg = ctx.params, ctx.spec, ctx.algebra
    radical = radical_basis(params, spec)
    mats = [ctx.b_matrix(t) for t in radical]
    if not is_two_sided_ideal(mats, alg):
        _fail("span of the radical basis is not a two-sided ideal", radicalDim=len(radical))
    try:
        oracle = nilpotency_index(mats)
    except NotNilpotentError as e:
        _fail("span of the radical basis is not nilpotent", reason=str(e))
    formula = radical_nilpotency(params, spec)
    search = radical_nilpotency_search(params, spec)
    if not oracle == formula == search:
        _fail("nilpotency index disagrees between its certificates",
              oracle=oracle, formula=formula, search=search)

    witness = radical_power_witness(params, spec)
    if len(witness) != formula - 1:
        _fail("longest nonvanishing radical product has the wrong length",
              witness=[list(t) for t in witness], expected=formula - 1)
    if witness:
        product = TElement.basis(witness[0], params, spec)
        matrix = ctx.b_matrix(witness[0])
        for t in witness[1:]:
            product = t_mul(product, TElement.basis(t, params, spec))
            matrix = matrix @ ctx.b_matrix(t)
        if not product or matrix.is_zero() or matrix != ctx.matrix(product):
            _fail("radical power witness vanishes", witness=[list(t) for t in witness])

    semisimple = is_semisimple(params, spec)
    if semisimple != (not radical) or semisimple != local_is_semisimple(params.d, params, spec):
        _fail("semisimplicity tests disagree", semisimple=semisimple, radicalDim=len(radical))
    return {"radicalDim": len(radical), "nilpotency": oracle}


def check_local_algebras(ctx: VerifyContext) -> Dict[str, Any]:
    params, spec = ctx.params, ctx.spec
    for g in params.indices():
        idempotents = local_idempotents(g, params, spec)
        if len(idempotents) != local_quotient_dim(g, params, spec):
            _fail("local idempotent count differs from the quotient dimension",
                  g=g, count=len(idempotents), expected=local_quotient_dim(g, params, spec))
        for r, e in enumerate(idempotents):
            for s, f in enumerate(idempotents):
                if t_mul(e, f) != (e if r == s else TElement.zero(params, spec)):
                    _fail("local D-elements are not orthogonal idempotents",
                          g=g, left=e.to_json(), right=f.to_json())
        radical = local_radical(g, params, spec)
        if local_is_semisimple(g, params, spec) != (not radical):
            _fail("local semisimplicity differs from a zero local radical", g=g)
        try:
            oracle = nilpotency_index([ctx.b_matrix(t) for t in radical])
        except NotNilpotentError as e:
            _fail("local radical is not nilpotent", g=g, reason=str(e))
        if oracle != local_nilpotency(g, params, spec):
            _fail("local nilpotency index differs from its closed form",
                  g=g, oracle=oracle, formula=local_nilpotency(g, params, spec))
    return {"localAlgebras": params.d + 1}


def check_d_products(ctx: VerifyContext) -> Dict[str, Any]:
    params, spec = ctx.params, ctx.spec
    defined = d_triples(params, spec)
    by_end: Dict[int, List[BTriple]] = {}
    for t in ctx.triples:
        by_end.setdefault(t.i, []).append(t)
    bd = dd = 0
    defined_set = set(defined)
    for right in defined:
        for left in by_end.get(right.g, ()):
            if left in defined_set:
                bd_mul(left, right, params, spec)
                d_mul(left, right, params, spec)
                bd += 1
                dd += 1
    return {"bdProducts": bd, "ddProducts": dd}


def check_wedderburn(ctx: VerifyContext) -> Dict[str, Any]:
    params, spec = ctx.params, ctx.spec
    structure = wedderburn_type(params, spec)
    classes = approx_classes(params, spec)
    if structure.dim != len(ctx.triples) or sum(c.size ** 2 for c in classes) != len(d_triples(params, spec)):
        _fail("blocks and radical do not add up to dim T",
              blocks=list(structure.block_sizes), radicalDim=structure.radical_dim)
    zero = TElement.zero(params, spec)
    for cls in classes:
        units = {(a, b): matrix_unit(cls, a, b, params, spec)
                 for a in cls.diag_indices for b in cls.diag_indices}
        for (a, b), left in units.items():
            for (c, e), right in units.items():
                expected = units[a, e] if b == c else zero
                if t_mul(left, right) != expected:
                    _fail("matrix units break the multiplication table",
                          signature=cls.signature, left=[a, b], right=[c, e])
    return {"blocks": list(structure.block_sizes), "radicalDim": structure.radical_dim}


def _translation_mismatch(ctx: VerifyContext, x: Point, duals: Sequence[DenseMatrix],
                          radical: Sequence[BTriple]) -> Optional[str]:
    """
    What the translation ctx.x -> x fails to carry over, or None once it is certified
    to conjugate T(ctx.x) and its radical onto T(x) and the radical at x.
    """
    scheme, spec = ctx.scheme, ctx.spec
    perm = scheme.translation(ctx.x, x)
    if perm[ctx.x.encode(ctx.params)] != x.encode(ctx.params):
        return "base point"
    table = scheme.relation_table
    if np.any(table[np.ix_(perm, perm)] != table):
        return "relations"
    for g, dual in zip(ctx.params.indices(), duals):
        if dual.permuted(perm) != dual_idempotent(g, x, scheme, spec):
            return f"E*_{g}"
    for t in radical:
        if ctx.b_matrix(t).permuted(perm) != b_to_matrix(t, x, scheme, spec):
            return f"B{tuple(t)}"
    return None


def check_base_points(ctx: VerifyContext) -> Dict[str, Any]:
    if not ctx.exhaustive:
        return {"skipped": f"|X| > {EXHAUSTIVE_POINTS}"}
    params, spec = ctx.params, ctx.spec
    reference = run_report(params, spec, ctx.x).to_dict()
    reference.pop("basePoint")
    radical = radical_basis(params, spec)
    mats = [ctx.b_matrix(t) for t in radical]
    expected = {
        "dimT": ctx.algebra.dim,
        "dimZ": center_dim(ctx.algebra),
        "radicalDim": len(radical),
    }
    if span_rank(mats) != len(radical) or not is_two_sided_ideal(mats, ctx.algebra):
        _fail("radical span is not an ideal of T(x)", basePoint=str(ctx.x), expected=expected)
    duals = [dual_idempotent(g, ctx.x, ctx.scheme, spec) for g in params.indices()]

    # A certified translation carries every invariant; rebuild T(x) only without one.
    rebuilt = 0
    for x in ctx.scheme.points():
        report = run_report(params, spec, x).to_dict()
        report.pop("basePoint")
        if report != reference:
            _fail("report depends on the base point", basePoint=str(x))
        mismatch = _translation_mismatch(ctx, x, duals, radical)
        if mismatch is None:
            continue
        logger.warning("translation to x=%s does not carry %s, rebuilding T(x)", x, mismatch)
        rebuilt += 1
        alg = terwilliger_closure(ctx.scheme, x, spec)
        mats = [b_to_matrix(t, x, ctx.scheme, spec) for t in radical]
        found = {"dimT": alg.dim, "dimZ": center_dim(alg), "radicalDim": span_rank(mats)}
        if found != expected or not is_two_sided_ideal(mats, alg):
            _fail("algebra invariants depend on the base point",
                  basePoint=str(x), expected=expected, found=found)
    return {"basePoints": params.point_count, "rebuilt": rebuilt}


CHECKS: Tuple[Tuple[str, Callable[[VerifyContext], Dict[str, Any]]], ...] = (
    ("scheme_axioms", check_scheme_axioms),
    ("intersection_numbers", check_intersection_numbers),
    ("triple_regularity", check_triple_regularity),
    ("closed_subsets", check_closed_subsets),
    ("matrix_identities", check_matrix_identities),
    ("dimension", check_dimension),
    ("b_basis", check_b_basis),
    ("b_products", check_products),
    ("center", check_center),
    ("radical", check_radical),
    ("local_algebras", check_local_algebras),
    ("d_products", check_d_products),
    ("wedderburn", check_wedderburn),
    ("base_points", check_base_points),
)


@with_spinner("checking {name}")
def _run_check(name: str, check: Callable[[VerifyContext], Dict[str, Any]],
               ctx: VerifyContext) -> CheckResult:
    start = time.perf_counter()
    try:
        detail = check(ctx)
    except VerificationError as e:
        logger.error("check %s failed: %s", name, e, extra={"detail": e.detail})
        return CheckResult(name, "fail", {"message": str(e), **e.detail})
    logger.info("check %s passed in %.2fs", name, time.perf_counter() - start)
    return CheckResult(name, "pass", detail)


def run_verify(u: Union[SchemeParams, str, Sequence[int]], p: Union[FieldSpec, int, str],
               max_points: Optional[int] = None, base_point: Optional[Union[Point, str]] = None,
               only: Optional[Sequence[str]] = None) -> VerifyResult:
    """
    Run the verification suite, stopping at the first failing check.

    Raises ``OracleLimitError`` before any work when |X| exceeds the oracle cap.
    ``only`` restricts the run to the named checks (in suite order).
    """
    params, spec = _as_params(u), _as_spec(p)
    scheme = scheme_for(params, max_points)
    scheme.require_oracle()
    if base_point is None:
        x = Point.origin(params)
    elif isinstance(base_point, Point):
        x = base_point.check(params)
    else:
        x = Point.parse(base_point, params)

    ctx = VerifyContext(params, spec, scheme, x)
    result = VerifyResult(params, spec)
    with run_context(f"u={params.label()} p={spec.p}"):
        for name, check in CHECKS:
            if only is not None and name not in only:
                continue
            outcome = _run_check(name, check, ctx)
            result.checks.append(outcome)
            if not outcome.passed:
                break
        logger.info("verification of u=%s over %s: %s", params.u, spec,
                    "pass" if result.overall else "fail")
    return result
