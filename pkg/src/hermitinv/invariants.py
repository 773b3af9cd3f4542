"""The invariant t of PGU(3,q) on the Hermitian function field and its relatives.

Notation used throughout: X = x^{q+1}, s = y^q + y (equal to X on the curve),
x_k = x^{q^k} and y_k = y^{q^k}.  The Dickson determinant D(e2, e3) has
columns (x, y, 1), (x_{e2}, y_{e2}, 1), (x_{e3}, y_{e3}, 1); D1 = D(2, 6),
D2 = D(2, 4) and E1 = D(4, 6).  With

    A = (y + y_5 - x^{q^5+1}) / (y + y_3 - x^{q^3+1})

the invariant is t = A * (D1 / E1)^q and u = D1^{q^2+1} / (E1^{q^2} D2) = t^q.
Every formula has coefficients in F_p, so symbolic forms are built in
whichever field a check works in.
"""
from __future__ import annotations

import functools
import itertools
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

import numpy as np
from tqdm import tqdm

from .curve import DELTA, RATIONAL, HermitianCurve, ProjectivePoint, on_curve
from .errors import BadParameters, NotOnCurve, ScaleExceeded
from .ff import FieldElement, FieldSpec, field_create, make_rng, random_raw, subfield_elements
from .group import UnitaryMatrix, apply, group_order, random_element
from .poly import (
    CurveResidue,
    EvalOutcome,
    Polynomial,
    RationalFunction,
    UniPoly,
    ratfun_eval,
    ratfun_reduce,
    reduce_mod_curve,
)
from .report import VerificationReport

LOGGER = logging.getLogger(__name__)

FORMULA_NAMES = ("eq1_pgl2", "t_xy", "t_x", "t_y", "u_borges", "dickson")

EXPONENT_NOTE = (
    "first factor uses the integral exponent q^4-q^3+q^2-q+1 = (q^5+1)/(q+1); "
    "(q^5-1)/(q+1) is not an integer"
)
DENOMINATOR_NOTE = "first factor denominator taken as y + y^(q^3) - x^(q^3+1)"
DICKSON_SIGN_NOTE = (
    "with columns (x,y,1), (x_2,y_2,1), (x_m,y_m,1) the determinant equals "
    "(x - x^(q^2)) * (x^(q^m+q) - y^q - y^(q^m)) on the curve"
)


def _exponents(q: int) -> Dict[str, int]:
    return {
        "e5": q ** 4 - q ** 3 + q ** 2 - q + 1,
        "e3": q ** 2 - q + 1,
        "a6": (q ** 6 - 1) // (q + 1),
        "a4": (q ** 4 - 1) // (q + 1),
    }


# -- pointwise evaluation ------------------------------------------------------

Point = Union[ProjectivePoint, Tuple[FieldElement, FieldElement]]


def _affine(P: Point) -> Tuple[FieldSpec, int, int]:
    if isinstance(P, ProjectivePoint):
        if P.is_infinity:
            raise BadParameters("evaluation needs an affine point")
        return P.spec, P.X, P.Y
    x, y = P
    return x.spec, x.value, y.value


def _require_on_curve(spec: FieldSpec, x: int, y: int) -> None:
    if not on_curve(ProjectivePoint(spec, x, y, 1)):
        raise NotOnCurve(f"({x}, {y}) is not on H_{spec.q}")


def _det_columns(spec: FieldSpec, c1: Sequence[int], c2: Sequence[int], c3: Sequence[int]) -> int:
    k = spec.kernel
    mul, sub, add = k.mul, k.sub, k.add
    t0 = mul(c1[0], sub(mul(c2[1], c3[2]), mul(c3[1], c2[2])))
    t1 = mul(c2[0], sub(mul(c1[1], c3[2]), mul(c3[1], c1[2])))
    t2 = mul(c3[0], sub(mul(c1[1], c2[2]), mul(c2[1], c1[2])))
    return add(sub(t0, t1), t2)


def dickson_det_projective(spec: FieldSpec, v: Sequence[int], e2: int, e3: int) -> int:
    """det(v, v^(q^e2), v^(q^e3)) for a column vector v of encodings."""
    if not 0 < e2 < e3:
        raise BadParameters(f"need 0 < e2 < e3, got {e2}, {e3}")
    k = spec.kernel
    f2, f3 = spec.q ** e2, spec.q ** e3
    return _det_columns(spec, v, [k.pow(c, f2) for c in v], [k.pow(c, f3) for c in v])


def dickson_det(P: Point, e2: int, e3: int) -> FieldElement:
    """Determinant with columns (x, y, 1), (x_{e2}, y_{e2}, 1), (x_{e3}, y_{e3}, 1)."""
    spec, x, y = _affine(P)
    return FieldElement(spec, dickson_det_projective(spec, (x, y, 1), e2, e3))


def _dickson_triple(spec: FieldSpec, x: int, y: int) -> Tuple[int, int, int]:
    """(D1, D2, E1) at an affine point."""
    k = spec.kernel
    q = spec.q
    xs = {e: k.pow(x, q ** e) for e in (2, 4, 6)}
    ys = {e: k.pow(y, q ** e) for e in (2, 4, 6)}
    base = (x, y, 1)

    def col(e: int) -> Tuple[int, int, int]:
        return (xs[e], ys[e], 1)

    return (
        _det_columns(spec, base, col(2), col(6)),
        _det_columns(spec, base, col(2), col(4)),
        _det_columns(spec, base, col(4), col(6)),
    )


def _first_factor(spec: FieldSpec, x: int, y: int) -> EvalOutcome:
    k = spec.kernel
    q = spec.q
    num = k.sub(k.add(y, k.pow(y, q ** 5)), k.pow(x, q ** 5 + 1))
    den = k.sub(k.add(y, k.pow(y, q ** 3)), k.pow(x, q ** 3 + 1))
    return EvalOutcome.fraction(FieldElement(spec, num), FieldElement(spec, den))


def eval_u(P: Point) -> EvalOutcome:
    """D1^{q^2+1} / (E1^{q^2} D2)."""
    spec, x, y = _affine(P)
    _require_on_curve(spec, x, y)
    k = spec.kernel
    q2 = spec.q ** 2
    d1, d2, e1 = _dickson_triple(spec, x, y)
    num = k.pow(d1, q2 + 1)
    den = k.mul(k.pow(e1, q2), d2)
    return EvalOutcome.fraction(FieldElement(spec, num), FieldElement(spec, den))


def eval_t(P: Point) -> EvalOutcome:
    """A * (D1/E1)^q; a 0/0 in either factor makes the outcome Indeterminate."""
    spec, x, y = _affine(P)
    _require_on_curve(spec, x, y)
    d1, _, e1 = _dickson_triple(spec, x, y)
    ratio = EvalOutcome.fraction(FieldElement(spec, d1), FieldElement(spec, e1))
    return _first_factor(spec, x, y) * ratio ** spec.q


def _alt_sum(k, terms: Sequence[Tuple[int, int]]) -> int:
    acc = 0
    for sign, value in terms:
        acc = k.add(acc, value) if sign > 0 else k.sub(acc, value)
    return acc


def eval_t_x(xi: FieldElement) -> EvalOutcome:
    """The x-only form of t."""
    spec = xi.spec
    k = spec.kernel
    q = spec.q
    e = _exponents(q)
    x = xi.value
    X = k.pow(x, q + 1)
    Xp = [k.pow(X, q ** i) for i in range(6)]
    xp = {i: k.pow(x, q ** i) for i in (2, 4, 6)}
    a_num = _alt_sum(k, [(1, Xp[4]), (-1, Xp[3]), (1, Xp[2]), (-1, Xp[1]), (1, Xp[0]), (-1, k.pow(X, e["e5"]))])
    a_den = _alt_sum(k, [(1, Xp[2]), (-1, Xp[1]), (1, Xp[0]), (-1, k.pow(X, e["e3"]))])
    s1 = _alt_sum(k, [(1, Xp[2]), (-1, Xp[3]), (1, Xp[4]), (-1, Xp[5])])
    b_num = k.add(k.mul(k.sub(x, xp[2]), s1), k.mul(k.sub(xp[6], xp[2]), k.sub(Xp[0], Xp[1])))
    t2 = _alt_sum(k, [(1, Xp[0]), (-1, Xp[1]), (1, Xp[2]), (-1, Xp[3])])
    b_den = k.add(k.mul(k.sub(xp[6], xp[4]), t2), k.mul(k.sub(x, xp[4]), k.sub(Xp[4], Xp[5])))
    first = EvalOutcome.fraction(FieldElement(spec, a_num), FieldElement(spec, a_den))
    second = EvalOutcome.fraction(FieldElement(spec, b_num), FieldElement(spec, b_den))
    return first * second ** q


def eval_t_y(eta: FieldElement) -> EvalOutcome:
    """The y-only form of t."""
    spec = eta.spec
    k = spec.kernel
    q = spec.q
    e = _exponents(q)
    y = eta.value
    s = k.add(k.pow(y, q), y)
    yp = {i: k.pow(y, q ** i) for i in (2, 3, 4, 5, 6)}
    a_num = k.sub(k.add(y, yp[5]), k.pow(s, e["e5"]))
    a_den = k.sub(k.add(y, yp[3]), k.pow(s, e["e3"]))
    s_a6 = k.pow(s, e["a6"])
    b_num = k.add(
        k.add(k.mul(k.sub(y, yp[2]), s_a6), k.mul(k.sub(yp[6], y), k.pow(s, q - 1))),
        k.sub(yp[2], yp[6]),
    )
    b_den = k.add(
        k.add(k.mul(k.sub(y, yp[4]), s_a6), k.mul(k.sub(yp[6], y), k.pow(s, e["a4"]))),
        k.sub(yp[4], yp[6]),
    )
    first = EvalOutcome.fraction(FieldElement(spec, a_num), FieldElement(spec, a_den))
    second = EvalOutcome.fraction(FieldElement(spec, b_num), FieldElement(spec, b_den))
    return first * second ** q


def eval_pgl2(xi: FieldElement) -> EvalOutcome:
    """(x^{q^2} - x)^{q+1} / (x^q - x)^{q^2+1}."""
    spec = xi.spec
    k = spec.kernel
    q = spec.q
    x = xi.value
    num = k.pow(k.sub(k.pow(x, q * q), x), q + 1)
    den = k.pow(k.sub(k.pow(x, q), x), q * q + 1)
    return EvalOutcome.fraction(FieldElement(spec, num), FieldElement(spec, den))


# -- symbolic forms ------------------------------------------------------------------

def _signed(spec: FieldSpec, terms: Sequence[Tuple[int, int]]) -> UniPoly:
    return UniPoly.signed_sum(spec, terms)


@functools.lru_cache(maxsize=None)
def _tx_parts(spec: FieldSpec) -> Tuple[UniPoly, UniPoly, UniPoly, UniPoly]:
    """(A_num, A_den, B_num, B_den) of t_x = (A_num/A_den) * (B_num/B_den)^q."""
    q = spec.q
    E = [(q + 1) * q ** i for i in range(6)]
    a_num = _signed(spec, [(E[4], 1), (E[3], -1), (E[2], 1), (E[1], -1), (E[0], 1), (q ** 5 + 1, -1)])
    a_den = _signed(spec, [(E[2], 1), (E[1], -1), (E[0], 1), (q ** 3 + 1, -1)])
    s1 = _signed(spec, [(E[2], 1), (E[3], -1), (E[4], 1), (E[5], -1)])
    x_minus_x2 = _signed(spec, [(1, 1), (q ** 2, -1)])
    x6_minus_x2 = _signed(spec, [(q ** 6, 1), (q ** 2, -1)])
    X_minus_Xq = _signed(spec, [(E[0], 1), (E[1], -1)])
    b_num = x_minus_x2 * s1 + x6_minus_x2 * X_minus_Xq
    t1 = _signed(spec, [(E[4], 1), (E[5], -1)])
    t2 = _signed(spec, [(E[0], 1), (E[1], -1), (E[2], 1), (E[3], -1)])
    x6_minus_x4 = _signed(spec, [(q ** 6, 1), (q ** 4, -1)])
    x_minus_x4 = _signed(spec, [(1, 1), (q ** 4, -1)])
    b_den = x6_minus_x4 * t2 + x_minus_x4 * t1
    return a_num, a_den, b_num, b_den


@functools.lru_cache(maxsize=None)
def _ty_parts(spec: FieldSpec) -> Tuple[UniPoly, UniPoly, UniPoly, UniPoly]:
    q = spec.q
    e = _exponents(q)
    s = _signed(spec, [(q, 1), (1, 1)])

    def mono(n: int, sign: int = 1) -> UniPoly:
        return _signed(spec, [(n, sign)])

    y = mono(1)
    y2, y3, y4, y5, y6 = (mono(q ** i) for i in (2, 3, 4, 5, 6))
    a_num = y + y5 - s ** e["e5"]
    a_den = y + y3 - s ** e["e3"]
    s_a6 = s ** e["a6"]
    b_num = (y - y2) * s_a6 + (y6 - y) * s ** (q - 1) + y2 - y6
    b_den = (y - y4) * s_a6 + (y6 - y) * s ** e["a4"] + y4 - y6
    return a_num, a_den, b_num, b_den


def _dickson_poly(spec: FieldSpec, e2: int, e3: int, variables: Sequence[str] = ("x", "y")) -> Polynomial:
    """Affine Dickson determinant as a sparse polynomial in x, y."""
    q = spec.q
    a, b = q ** e2, q ** e3
    terms = {
        (1, a): 1, (1, b): -1,
        (a, 1): -1, (a, b): 1,
        (b, 1): 1, (b, a): -1,
    }
    return Polynomial.from_terms(spec, terms, variables)


def dickson_homogeneous(spec: FieldSpec, e2: int, e3: int) -> Polynomial:
    """det(v, v^(q^e2), v^(q^e3)) for v = (X, Y, Z), as a polynomial in X, Y, Z."""
    q = spec.q
    exps = (1, q ** e2, q ** e3)
    out: Dict[Tuple[int, int, int], int] = {}
    for perm in itertools.permutations(range(3)):
        sign = _perm_sign(perm)
        key = [0, 0, 0]
        for column, row in enumerate(perm):
            key[row] += exps[column]
        out[tuple(key)] = sign
    return Polynomial.from_terms(spec, out, ("X", "Y", "Z"))


def _perm_sign(perm: Sequence[int]) -> int:
    sign = 1
    seen = list(perm)
    for i in range(len(seen)):
        for j in range(i + 1, len(seen)):
            if seen[i] > seen[j]:
                sign = -sign
    return sign


@dataclass(frozen=True)
class InvariantFormula:
    name: str
    spec: FieldSpec
    e2: int = 0
    e3: int = 0

    def __post_init__(self) -> None:
        if self.name not in FORMULA_NAMES:
            raise BadParameters(f"unknown formula {self.name!r}")
        if self.name == "dickson" and not 0 < self.e2 < self.e3:
            raise BadParameters("dickson needs 0 < e2 < e3")

    @property
    def q(self) -> int:
        return self.spec.q

    @property
    def univariate(self) -> bool:
        return self.name in ("eq1_pgl2", "t_x", "t_y")

    def rational_function(self) -> RationalFunction:
        return _rational_function(self)

    def reduced(self) -> Tuple[RationalFunction, int]:
        if not self.univariate:
            raise BadParameters(f"{self.name} is not univariate")
        return _reduced(self)

    def evaluate(self, point: Union[FieldElement, Point]) -> EvalOutcome:
        if self.name == "t_x":
            return eval_t_x(point)  # type: ignore[arg-type]
        if self.name == "t_y":
            return eval_t_y(point)  # type: ignore[arg-type]
        if self.name == "eq1_pgl2":
            return eval_pgl2(point)  # type: ignore[arg-type]
        if self.name == "t_xy":
            return eval_t(point)  # type: ignore[arg-type]
        if self.name == "u_borges":
            return eval_u(point)  # type: ignore[arg-type]
        return EvalOutcome.of_value(dickson_det(point, self.e2, self.e3))  # type: ignore[arg-type]


@functools.lru_cache(maxsize=None)
def _rational_function(formula: InvariantFormula) -> RationalFunction:
    spec, q = formula.spec, formula.q
    if formula.name == "t_x":
        a_num, a_den, b_num, b_den = _tx_parts(spec)
        return RationalFunction(a_num * b_num.frobenius(), a_den * b_den.frobenius())
    if formula.name == "t_y":
        a_num, a_den, b_num, b_den = _ty_parts(spec)
        return RationalFunction(a_num * b_num.frobenius(), a_den * b_den.frobenius())
    if formula.name == "eq1_pgl2":
        num = _signed(spec, [(q * q, 1), (1, -1)]) ** (q + 1)
        den = _signed(spec, [(q, 1), (1, -1)]) ** (q * q + 1)
        return RationalFunction(num, den)
    one = Polynomial.constant(spec, 1)
    if formula.name == "dickson":
        return RationalFunction(_dickson_poly(spec, formula.e2, formula.e3), one)
    d1, d2, e1 = _dickson_poly(spec, 2, 6), _dickson_poly(spec, 2, 4), _dickson_poly(spec, 4, 6)
    if formula.name == "u_borges":
        return RationalFunction(d1.frobenius(2) * d1, e1.frobenius(2) * d2)
    a_num = Polynomial.from_terms(spec, {(0, 1): 1, (0, q ** 5): 1, (q ** 5 + 1, 0): -1})
    a_den = Polynomial.from_terms(spec, {(0, 1): 1, (0, q ** 3): 1, (q ** 3 + 1, 0): -1})
    return RationalFunction(a_num * d1.frobenius(), a_den * e1.frobenius())


@functools.lru_cache(maxsize=None)
def _reduced(formula: InvariantFormula) -> Tuple[RationalFunction, int]:
    r = _rational_function(formula)
    LOGGER.debug("Reducing %s (q=%d): degrees %d/%d", formula.name, formula.q, r.num.degree, r.den.degree)
    return ratfun_reduce(r.num, r.den)


def t_relation(spec: FieldSpec, q: Optional[int] = None) -> Polynomial:
    """N(y) - t * D(y) for the reduced y-form N/D of t, over variables (y, t)."""
    if q is not None and q != spec.q:
        raise BadParameters(f"q={q} does not match {spec!r}")
    reduced, _ = InvariantFormula("t_y", spec).reduced()
    variables = ("y", "t")
    num = reduced.num.to_polynomial(variables, "y")
    den = reduced.den.to_polynomial(variables, "y")
    return num - den * Polynomial.variable(spec, "t", variables)


# -- residues for the symbolic provers ---------------------------------------------

class _ResidueForms:
    """x_k, y_k, D(e2, e3) and the pieces of t and u as curve residues."""

    def __init__(self, spec: FieldSpec) -> None:
        self.spec = spec
        self.q = spec.q
        self._y: Dict[int, CurveResidue] = {0: CurveResidue.y(spec, self.q)}

    def x(self, n: int) -> CurveResidue:
        return CurveResidue.from_x(UniPoly.monomial(self.spec, n), self.q)

    def y(self, k: int) -> CurveResidue:
        if k not in self._y:
            self._y[k] = self.y(k - 1).frobenius()
        return self._y[k]

    def dickson(self, e2: int, e3: int) -> CurveResidue:
        q = self.q
        x, x2, x3 = self.x(1), self.x(q ** e2), self.x(q ** e3)
        y, y2, y3 = self.y(0), self.y(e2), self.y(e3)
        return x * (y2 - y3) - x2 * (y - y3) + x3 * (y - y2)

    def first_factor(self) -> Tuple[CurveResidue, CurveResidue]:
        q = self.q
        num = self.y(0) + self.y(5) - self.x(q ** 5 + 1)
        den = self.y(0) + self.y(3) - self.x(q ** 3 + 1)
        return num, den


def _check_symbolic_q(q: int, max_q: int) -> None:
    if q > max_q:
        raise ScaleExceeded(f"symbolic checks capped at q <= {max_q}")


def symbolic_dm_identity(m: int, p: int = 2, h: int = 1, max_q: int = 3) -> VerificationReport:
    """D(2, m) + (x^{q^2} - x)(x^{q^m+q} - y^q - y^{q^m}) reduces to zero mod the curve."""
    if m not in (4, 6):
        raise BadParameters(f"m={m} must be 4 or 6")
    q = p ** h
    _check_symbolic_q(q, max_q)
    spec = field_create(p, h, 2 * h)
    lhs = _dickson_poly(spec, 2, m)
    factor = Polynomial.from_terms(spec, {(q * q, 0): 1, (1, 0): -1})
    second = Polynomial.from_terms(spec, {(q ** m + q, 0): 1, (0, q): -1, (0, q ** m): -1})
    residual = reduce_mod_curve(lhs + factor * second)
    witnesses = []
    if not residual.is_zero():
        witnesses.append({"kind": "polynomial", "residual": residual.to_text()})
    return VerificationReport.compare(
        "symbolic_dm_identity",
        q,
        {"residual_terms": 0},
        {"residual_terms": len(residual)},
        params={"m": m, "field": spec.to_dict()},
        witnesses=witnesses,
        notes=[DICKSON_SIGN_NOTE],
    )


def symbolic_consistency(q_p: int = 2, h: int = 1, max_q: int = 3) -> VerificationReport:
    """Cross-multiplied congruences mod the curve: t^q = u, t = t_x(x), t = t_y(y)."""
    p = q_p
    q = p ** h
    _check_symbolic_q(q, max_q)
    spec = field_create(p, h, 2 * h)
    forms = _ResidueForms(spec)
    d1, d2, e1 = forms.dickson(2, 6), forms.dickson(2, 4), forms.dickson(4, 6)
    a_num, a_den = forms.first_factor()
    t_num = a_num * d1.frobenius()
    t_den = a_den * e1.frobenius()
    u_num = d1.frobenius().frobenius() * d1
    u_den = e1.frobenius().frobenius() * d2
    LOGGER.info("symbolic consistency (q=%d): residues built", q)

    results: Dict[str, bool] = {}
    results["t_power_q_equals_u"] = (t_num.frobenius() * u_den - t_den.frobenius() * u_num).is_zero()

    tx = InvariantFormula("t_x", spec).rational_function()
    results["t_equals_t_x_of_x"] = (
        t_num * CurveResidue.from_x(tx.den, q) - t_den * CurveResidue.from_x(tx.num, q)
    ).is_zero()

    ty = InvariantFormula("t_y", spec).rational_function()
    results["t_equals_t_y_of_y"] = (
        t_num * CurveResidue.from_y_poly(ty.den, q) - t_den * CurveResidue.from_y_poly(ty.num, q)
    ).is_zero()

    witnesses = [{"kind": "congruence", "relation": name} for name, ok in results.items() if not ok]
    return VerificationReport.compare(
        "symbolic_consistency",
        q,
        {name: True for name in results},
        results,
        params={"field": spec.to_dict()},
        witnesses=witnesses,
        notes=[EXPONENT_NOTE, DENOMINATOR_NOTE],
    )


def degree_census(p: int = 2, h: int = 1, max_q: int = 3) -> VerificationReport:
    """Reduced degrees of t_x, t_y and the PGL(2,q) invariant against |G|/q, |G|/(q+1), q^3-q."""
    q = p ** h
    _check_symbolic_q(q, max_q)
    spec = field_create(p, h, 2 * h)
    order = group_order(q)
    expected = {"t_x": order // q, "t_y": order // (q + 1), "eq1_pgl2": q ** 3 - q}
    observed: Dict[str, Any] = {}
    details: Dict[str, Any] = {}
    for name in expected:
        reduced, degree = InvariantFormula(name, spec).reduced()
        observed[name] = degree
        details[name] = {"numerator_degree": reduced.num.degree, "denominator_degree": reduced.den.degree}
    return VerificationReport.compare(
        "degree_census",
        q,
        expected,
        observed,
        params={"field": spec.to_dict(), "group_order": order, "reduced": details},
        notes=[EXPONENT_NOTE],
    )


def _root_multiplicities(num: UniPoly, candidates: np.ndarray) -> Dict[int, int]:
    """Multiplicity of each candidate root by repeated exact division."""
    spec = num.spec
    k = spec.kernel
    values = num.evaluate_many(candidates)
    active = candidates[values == 0]
    mult = {int(r): 0 for r in active}
    current = num
    while len(active):
        linear = UniPoly.constant(spec, 1)
        for r in active.tolist():
            linear = linear * UniPoly(spec, [k.neg(int(r)), 1])
        current = current.exact_div(linear)
        for r in active.tolist():
            mult[int(r)] += 1
        active = active[current.evaluate_many(active) == 0]
    return mult


def zero_locus(p: int = 2, h: int = 1, max_q: int = 3, workers: int = 1) -> VerificationReport:
    """Roots over F_{q^6} of the reduced numerators of t_x and t_y against the coordinates of Delta."""
    q = p ** h
    _check_symbolic_q(q, max_q)
    curve = HermitianCurve(p, h)
    spec6 = curve.field(3)
    delta = curve.delta_set(workers=workers)
    base = curve.base
    candidates = np.arange(spec6.order, dtype=np.int64)
    fq2 = np.array(subfield_elements(spec6, 2 * h), dtype=np.int64)
    target = q * q - q + 1
    expected: Dict[str, Any] = {}
    observed: Dict[str, Any] = {}
    for name, coords, divisor in (("t_x", delta.x_values(), q), ("t_y", delta.y_values(), q + 1)):
        reduced, degree = InvariantFormula(name, base).reduced()
        num = reduced.num.over(spec6)
        mult = _root_multiplicities(num, candidates)
        roots = sorted(mult)
        expected.update({
            f"{name}_roots": len(delta) // divisor,
            f"{name}_multiplicities": [target],
            f"{name}_roots_in_fq2": 0,
            f"{name}_roots_equal_delta_coordinates": True,
            f"{name}_unaccounted_degree": 0,
        })
        observed.update({
            f"{name}_roots": len(roots),
            f"{name}_multiplicities": sorted(set(mult.values())),
            f"{name}_roots_in_fq2": int(np.isin(np.array(roots, dtype=np.int64), fq2).sum()),
            f"{name}_roots_equal_delta_coordinates": roots == list(coords),
            f"{name}_unaccounted_degree": num.degree - sum(mult.values()),
        })
        LOGGER.info("%s: %d roots over F_%d^%d", name, len(roots), p, spec6.m)
    return VerificationReport.compare(
        "zero_locus",
        q,
        expected,
        observed,
        params={"field": spec6.to_dict(), "delta": len(delta)},
    )


def divisor_census(p: int = 2, h: int = 1, max_q: int = 4, workers: int = 1) -> VerificationReport:
    """Degree bookkeeping of the divisors cut by the Dickson curves on H_q."""
    q = p ** h
    if q > max_q:
        raise ScaleExceeded(f"divisor census capped at q <= {max_q}")
    curve = HermitianCurve(p, h)
    base = curve.base
    deg = {
        name: dickson_homogeneous(base, e2, e3).total_degree()
        for name, (e2, e3) in (("D1", (2, 6)), ("D2", (2, 4)), ("E1", (4, 6)))
    }
    rational = curve.enumerate_points(1, workers=workers).count(RATIONAL)
    delta = curve.enumerate_points(3, workers=workers).count(DELTA)
    deg_f = deg["D1"] - deg["D2"]
    deg_g = deg["E1"] - deg["D2"]
    expected = {
        "deg_F": q ** 6 - q ** 4,
        "deg_G": q ** 6 - q ** 2,
        "F_intersection": q * delta,
        "G_intersection": q * q * (q * q - 1) * rational + delta,
        "delta_weight": q * group_order(q),
    }
    observed = {
        "deg_F": deg_f,
        "deg_G": deg_g,
        "F_intersection": (q + 1) * deg_f,
        "G_intersection": (q + 1) * deg_g,
        "delta_weight": (q * q + 1) * q * delta - q * q * delta,
    }
    return VerificationReport.compare(
        "divisor_census",
        q,
        expected,
        observed,
        params={"dickson_degrees": deg, "rational_points": rational, "delta": delta},
    )


# -- sweeps -------------------------------------------------------------------------

@dataclass
class _SweepTally:
    comparisons: int = 0
    value_value: int = 0
    images_at_infinity: int = 0
    outcomes: Dict[str, int] = field(default_factory=lambda: {k: 0 for k in ("value", "pole", "indeterminate")})
    violations: Dict[str, int] = field(default_factory=lambda: {k: 0 for k in ("t", "u", "power", "t_x", "t_y")})
    witnesses: List[Dict[str, Any]] = field(default_factory=list)

    def merge(self, other: "_SweepTally") -> None:
        self.comparisons += other.comparisons
        self.value_value += other.value_value
        self.images_at_infinity += other.images_at_infinity
        for key, n in other.outcomes.items():
            self.outcomes[key] += n
        for key, n in other.violations.items():
            self.violations[key] += n
        self.witnesses.extend(other.witnesses[: max(0, 10 - len(self.witnesses))])

    def violate(self, relation: str, witness: Dict[str, Any]) -> None:
        self.violations[relation] += 1
        if len(self.witnesses) < 10:
            self.witnesses.append({"kind": "violation", "relation": relation, **witness})
        LOGGER.debug("violation %s: %s", relation, witness)


def _value(outcome: EvalOutcome) -> Optional[int]:
    return outcome.value.value if outcome.is_value else None


def _sweep_point(P: ProjectivePoint, elements: Sequence[UnitaryMatrix]) -> _SweepTally:
    tally = _SweepTally()
    q = P.spec.q
    t_p, u_p = eval_t(P), eval_u(P)
    tally.outcomes[t_p.kind] += 1
    if t_p.is_value and u_p.is_value and (t_p.value ** q) != u_p.value:
        tally.violate("power", {"point": P.to_text()})
    tx, ty = eval_t_x(P.x), eval_t_y(P.y)
    if t_p.is_value and tx.is_value and tx.value != t_p.value:
        tally.violate("t_x", {"point": P.to_text(), "values": [_value(t_p), _value(tx)]})
    if t_p.is_value and ty.is_value and ty.value != t_p.value:
        tally.violate("t_y", {"point": P.to_text(), "values": [_value(t_p), _value(ty)]})
    for M in elements:
        image = apply(M, P)
        if image.is_infinity:
            tally.images_at_infinity += 1
            continue
        tally.comparisons += 1
        t_img = eval_t(image)
        tally.outcomes[t_img.kind] += 1
        if t_p.is_value and t_img.is_value:
            tally.value_value += 1
            if t_img.value != t_p.value:
                tally.violate("t", {"point": P.to_text(), "matrix": M.to_text(), "values": [_value(t_p), _value(t_img)]})
        u_img = eval_u(image)
        if u_p.is_value and u_img.is_value and u_img.value != u_p.value:
            tally.violate("u", {"point": P.to_text(), "matrix": M.to_text(), "values": [_value(u_p), _value(u_img)]})
    return tally


def verify_invariance(
    p: int,
    h: int,
    m: int,
    n_points: int,
    n_elements: int,
    seed: int,
    word_length: int = 6,
    workers: int = 1,
    progress: bool = False,
    min_value_fraction: float = 0.5,
    elements: Optional[Sequence[UnitaryMatrix]] = None,
) -> VerificationReport:
    """Sampled points against sampled group elements: t and u are constant on orbits."""
    q = p ** h
    spec = field_create(p, h, m)
    spec.require_fq2()
    rng = make_rng(seed)
    curve = HermitianCurve(p, h)
    points = [curve.sample_point(m, rng) for _ in range(n_points)]
    if elements is None:
        elements = [random_element(rng, word_length, spec) for _ in range(n_elements)]
    LOGGER.info("Invariance sweep q=%d over F_%d^%d: %d points x %d elements", q, p, m, len(points), len(elements))
    tally = _SweepTally()
    with ThreadPoolExecutor(max_workers=max(1, workers)) as pool:
        parts = pool.map(lambda P: _sweep_point(P, elements), points)
        for part in tqdm(parts, total=len(points), disable=not progress, desc="invariance"):
            tally.merge(part)
    vacuous = all(M.is_identity() for M in elements)
    fraction = tally.value_value / tally.comparisons if tally.comparisons else 0.0
    enough_values = vacuous or fraction >= min_value_fraction
    expected = {name: 0 for name in tally.violations}
    observed: Dict[str, Any] = dict(tally.violations)
    observed.update({
        "comparisons": tally.comparisons,
        "value_value": tally.value_value,
        "images_at_infinity": tally.images_at_infinity,
        "outcomes": tally.outcomes,
    })
    witnesses = list(tally.witnesses)
    if not enough_values:
        witnesses.append({"kind": "vacuity", "value_value_fraction": round(fraction, 6)})
    return VerificationReport.compare(
        "verify_invariance",
        q,
        expected,
        observed,
        params={
            "m": m,
            "points": len(points),
            "elements": len(elements),
            "word_length": word_length,
            "seed": seed,
            "min_value_fraction": min_value_fraction,
        },
        witnesses=witnesses,
        notes=[EXPONENT_NOTE, DENOMINATOR_NOTE],
        require=enough_values,
    )


def pgl2_maps(spec: FieldSpec) -> List[Tuple[int, int, int, int]]:
    """(a, b, c, d) over F_q with ad - bc != 0, first nonzero entry 1: the q^3 - q maps."""
    k = spec.kernel
    fq = subfield_elements(spec, spec.h)
    maps = []
    for a, b, c, d in itertools.product(fq, repeat=4):
        lead = next((v for v in (a, b, c, d) if v), 0)
        if lead != 1:
            continue
        if k.sub(k.mul(a, d), k.mul(b, c)):
            maps.append((a, b, c, d))
    return maps


def verify_pgl2_invariance(p: int, h: int, n_arguments: int, seed: int, progress: bool = False) -> VerificationReport:
    """Every fractional-linear map over F_q fixes the PGL(2,q) invariant at random arguments over F_{q^4}."""
    q = p ** h
    spec = field_create(p, h, 4 * h)
    k = spec.kernel
    rng = make_rng(seed)
    maps = pgl2_maps(spec)
    comparisons = value_value = violations = 0
    witnesses: List[Dict[str, Any]] = []
    for a, b, c, d in tqdm(maps, disable=not progress, desc="pgl2"):
        for _ in range(n_arguments):
            xi = random_raw(spec, rng)
            den = k.add(k.mul(c, xi), d)
            if not den:
                continue
            image = k.div(k.add(k.mul(a, xi), b), den)
            comparisons += 1
            before, after = eval_pgl2(FieldElement(spec, xi)), eval_pgl2(FieldElement(spec, image))
            if before.is_value and after.is_value:
                value_value += 1
                if before.value != after.value:
                    violations += 1
                    if len(witnesses) < 10:
                        witnesses.append({"kind": "violation", "map": [a, b, c, d], "argument": xi})
    return VerificationReport.compare(
        "verify_pgl2",
        q,
        {"maps": q ** 3 - q, "violations": 0},
        {"maps": len(maps), "violations": violations, "comparisons": comparisons, "value_value": value_value},
        params={"field": spec.to_dict(), "arguments_per_map": n_arguments, "seed": seed},
        witnesses=witnesses,
    )


def _random_gl3(spec: FieldSpec, rng: np.random.Generator, fq2: Sequence[int]) -> Tuple[int, ...]:
    while True:
        entries = tuple(fq2[int(rng.integers(0, len(fq2)))] for _ in range(9))
        det = _det_columns(spec, entries[0::3], entries[1::3], entries[2::3])
        if det:
            return entries


def verify_dickson_invariance(
    p: int,
    h: int,
    m: int,
    n_points: int,
    n_matrices: int,
    seed: int,
    progress: bool = False,
) -> VerificationReport:
    """D(Mv) = det(M) D(v) for M in GL(3, q^2) and D in {D1, D2, E1}."""
    q = p ** h
    spec = field_create(p, h, m)
    spec.require_fq2()
    k = spec.kernel
    rng = make_rng(seed)
    fq2 = subfield_elements(spec, 2 * h)
    vectors = [tuple(random_raw(spec, rng) for _ in range(3)) for _ in range(n_points)]
    matrices = [_random_gl3(spec, rng, fq2) for _ in range(n_matrices)]
    pairs = {"D1": (2, 6), "D2": (2, 4), "E1": (4, 6)}
    violations = {name: 0 for name in pairs}
    witnesses: List[Dict[str, Any]] = []
    for M in tqdm(matrices, disable=not progress, desc="dickson"):
        det_m = _det_columns(spec, M[0::3], M[1::3], M[2::3])
        for v in vectors:
            image = [k.add(k.add(k.mul(M[3 * i], v[0]), k.mul(M[3 * i + 1], v[1])), k.mul(M[3 * i + 2], v[2]))
                     for i in range(3)]
            for name, (e2, e3) in pairs.items():
                lhs = dickson_det_projective(spec, image, e2, e3)
                rhs = k.mul(det_m, dickson_det_projective(spec, v, e2, e3))
                if lhs != rhs:
                    violations[name] += 1
                    if len(witnesses) < 10:
                        witnesses.append({"kind": "violation", "determinant": name, "matrix": list(M), "vector": list(v)})
    return VerificationReport.compare(
        "verify_dickson",
        q,
        {name: 0 for name in pairs},
        violations,
        params={"field": spec.to_dict(), "vectors": n_points, "matrices": n_matrices, "seed": seed},
        witnesses=witnesses,
    )
