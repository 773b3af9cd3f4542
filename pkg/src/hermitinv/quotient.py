"""Plane models of quotient curves by resultant elimination.

A function w = V1/V2 fixed by a subgroup H of PGU(3,q) is tied to the curve
by eliminating x from y^q + y - x^{q+1} and V1 - v*V2, giving G(y, v).
Eliminating y between G and the relation N(y) - t*D(y) of the invariant t
gives a plane model F(t, v).
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Sequence, Tuple

from .curve import HermitianCurve, ProjectivePoint
from .errors import BadParameters, DegenerateEliminant, ScaleExceeded, ZeroDenominator
from .ff import FieldElement, FieldSpec, field_create, make_rng
from .group import UnitaryMatrix, apply, subgroup
from .invariants import eval_t, t_relation
from .poly import XY, EvalOutcome, Polynomial, UniPoly, gcd_uni, reduce_mod_curve, resultant
from .report import VerificationReport

LOGGER = logging.getLogger(__name__)

FIXED_FUNCTIONS = ("x", "y", "norm_x")
CHECK_MODES = ("pointwise", "exhaustive", "symbolic")
DEFAULT_SYLVESTER_BUDGET = 10 ** 4
ORIENTATION_NOTE = "eliminant taken as V1 - v*V2 for v = V1/V2"


@dataclass(frozen=True)
class FixedFunction:
    """w = V1/V2 on the curve together with the group elements expected to fix it."""

    V1: Polynomial
    V2: Polynomial
    subgroup: Tuple[UnitaryMatrix, ...]
    label: str = "w"

    def __post_init__(self) -> None:
        if self.V2.is_zero():
            raise ZeroDenominator(f"{self.label}: V2 is zero")
        if not self.subgroup:
            raise BadParameters(f"{self.label}: empty subgroup")
        for f in (self.V1, self.V2):
            if f.variables != XY:
                raise BadParameters(f"{self.label}: expected variables {XY}, got {f.variables}")
            if f.spec != self.V1.spec:
                raise BadParameters(f"{self.label}: V1 and V2 live in different fields")

    @property
    def spec(self) -> FieldSpec:
        return self.V1.spec

    def evaluate(self, P: ProjectivePoint) -> EvalOutcome:
        point = {"x": P.X, "y": P.Y}
        return EvalOutcome.fraction(
            FieldElement(self.spec, self.V1.evaluate(point)),
            FieldElement(self.spec, self.V2.evaluate(point)),
        )

    def over(self, spec: FieldSpec) -> "FixedFunction":
        """Same F_p-rational V1/V2 in another field; the subgroup is rebuilt only for the standard functions."""
        if self.label in FIXED_FUNCTIONS:
            return standard_fixed_function(self.label, spec)
        if spec == self.spec:
            return self
        raise BadParameters(f"{self.label}: cannot move its subgroup to {spec!r}")


def _product(spec: FieldSpec, a: Sequence[UnitaryMatrix], b: Sequence[UnitaryMatrix]) -> Tuple[UnitaryMatrix, ...]:
    return tuple(sorted({g @ h for g in a for h in b}, key=lambda M: M.entries))


def standard_fixed_function(name: str, spec: FieldSpec) -> FixedFunction:
    """x fixed by Psi, y fixed by Lambda, x^{q+1} fixed by Psi*Lambda."""
    q = spec.q
    one = Polynomial.constant(spec, 1)
    if name == "x":
        return FixedFunction(Polynomial.variable(spec, "x"), one, subgroup("Psi", spec), name)
    if name == "y":
        return FixedFunction(Polynomial.variable(spec, "y"), one, subgroup("Lambda", spec), name)
    if name == "norm_x":
        group = _product(spec, subgroup("Psi", spec), subgroup("Lambda", spec))
        return FixedFunction(Polynomial.monomial(spec, {"x": q + 1}), one, group, name)
    raise BadParameters(f"unknown fixed function {name!r}; choose from {FIXED_FUNCTIONS}")


def _linear_forms(M: UnitaryMatrix) -> Dict[str, Polynomial]:
    spec = M.spec
    x, y = Polynomial.variable(spec, "x"), Polynomial.variable(spec, "y")
    e = M.entries
    forms = {}
    for i, var in enumerate(("x", "y", "z")):
        forms[var] = x.scale(e[3 * i]) + y.scale(e[3 * i + 1]) + Polynomial(spec, XY, {0: e[3 * i + 2]})
    return forms


def _symbolic_fixed(w: FixedFunction, M: UnitaryMatrix) -> bool:
    """V1(Mv) V2(v) - V2(Mv) V1(v) reduces to zero mod the curve, v = (x, y, 1)."""
    d = max(w.V1.total_degree(), w.V2.total_degree())
    forms = _linear_forms(M)
    image_1 = w.V1.homogenize("z", d).substitute(forms, XY)
    image_2 = w.V2.homogenize("z", d).substitute(forms, XY)
    return reduce_mod_curve(image_1 * w.V2 - image_2 * w.V1).is_zero()


def fixed_function_check(
    w: FixedFunction,
    n_points: int = 100,
    seed: int = 0,
    mode: str = "pointwise",
    max_symbolic_q: int = 3,
) -> VerificationReport:
    """w(sigma P) = w(P) for sigma in the subgroup, on sampled or all points, or symbolically."""
    if mode not in CHECK_MODES:
        raise BadParameters(f"unknown mode {mode!r}")
    spec = w.spec
    spec.require_fq2()
    q = spec.q
    params: Dict[str, Any] = {"function": w.label, "mode": mode, "subgroup_order": len(w.subgroup),
                              "field": spec.to_dict()}
    witnesses: List[Dict[str, Any]] = []
    if mode == "symbolic":
        if q > max_symbolic_q:
            raise ScaleExceeded(f"symbolic fixed-function check capped at q <= {max_symbolic_q}")
        failures = [M for M in w.subgroup if not _symbolic_fixed(w, M)]
        witnesses = [{"kind": "matrix", "matrix": M.to_text()} for M in failures[:10]]
        return VerificationReport.compare(
            "fixed_function", q, {"violations": 0}, {"violations": len(failures)},
            params=params, witnesses=witnesses,
        )

    curve = HermitianCurve(spec.p, spec.h)
    if mode == "exhaustive":
        points = [P for P in curve.enumerate_points(spec.m // (2 * spec.h)) if not P.is_infinity]
    else:
        rng = make_rng(seed)
        points = [curve.sample_point(spec.m, rng) for _ in range(n_points)]
        params.update({"points": n_points, "seed": seed})
    comparisons = value_value = violations = 0
    for P in points:
        before = w.evaluate(P)
        for M in w.subgroup:
            image = apply(M, P)
            if image.is_infinity:
                continue
            comparisons += 1
            after = w.evaluate(image)
            if before.is_value and after.is_value:
                value_value += 1
                if before.value != after.value:
                    violations += 1
                    if len(witnesses) < 10:
                        witnesses.append({"kind": "violation", "point": P.to_text(), "matrix": M.to_text()})
    LOGGER.info("%s: %d comparisons, %d violations", w.label, comparisons, violations)
    return VerificationReport.compare(
        "fixed_function",
        q,
        {"violations": 0},
        {"violations": violations, "comparisons": comparisons, "value_value": value_value},
        params=params,
        witnesses=witnesses,
        require=value_value > 0,
    )


def _check_budget(total_degree: int, budget: int) -> None:
    if total_degree * total_degree > budget:
        raise ScaleExceeded(f"Sylvester dimension {total_degree} exceeds the budget {budget}")


def normalize_eliminant(f: Polynomial) -> Polynomial:
    """Remove the content over F[second variable], then make the lex-leading coefficient 1."""
    if f.is_zero():
        raise DegenerateEliminant("resultant vanishes identically")
    if f.is_constant():
        raise DegenerateEliminant("resultant is a nonzero constant")
    first, second = f.variables
    parts = {d: c.to_unipoly(second) for d, c in f.coefficients(first).items()}
    content = UniPoly.zero(f.spec)
    for part in parts.values():
        content = gcd_uni(content, part)
    if content.degree > 0:
        LOGGER.debug("removing content of degree %d in %s", content.degree, second)
        out = Polynomial.zero(f.spec, f.variables)
        for d, part in parts.items():
            out = out + part.exact_div(content).to_polynomial(f.variables, second).times_var(first, d)
        f = out
        if f.is_constant():
            raise DegenerateEliminant("eliminant is pure content")
    _, lead = f.lex_leading()
    return f.scale(f.spec.kernel.inv(lead))


def curve_equation(spec: FieldSpec, variables: Sequence[str] = XY) -> Polynomial:
    """y^q + y - x^{q+1} in ``variables`` (which must contain x and y)."""
    q = spec.q
    x, y = Polynomial.variable(spec, "x", variables), Polynomial.variable(spec, "y", variables)
    return y ** q + y - x ** (q + 1)


def eliminate_x(w: FixedFunction, v_symbol: str = "v", budget: int = DEFAULT_SYLVESTER_BUDGET) -> Polynomial:
    """Res_x(y^q + y - x^{q+1}, V1 - v*V2), normalized, in (y, v)."""
    spec = w.spec
    variables = ("x", "y", v_symbol)
    curve_eq = curve_equation(spec, variables)
    v = Polynomial.variable(spec, v_symbol, variables)
    g = w.V1.with_variables(variables) - w.V2.with_variables(variables) * v
    _check_budget(curve_eq.degree("x") + g.degree("x"), budget)
    LOGGER.info("Eliminating x for %s (q=%d)", w.label, spec.q)
    return normalize_eliminant(resultant(curve_eq, g, "x"))


def eliminate_y(G: Polynomial, T: Polynomial, budget: int = DEFAULT_SYLVESTER_BUDGET) -> Polynomial:
    """Res_y(G(y, v), T(y, t)), normalized, in (t, v)."""
    if G.variables[0] != "y" or T.variables[0] != "y":
        raise BadParameters("both inputs must have y as their first variable")
    _check_budget(G.degree("y") + T.degree("y"), budget)
    variables = ("y", T.variables[1], G.variables[1])
    LOGGER.info("Eliminating y: degrees %d and %d", G.degree("y"), T.degree("y"))
    res = resultant(G.with_variables(variables), T.with_variables(variables), "y")
    return normalize_eliminant(res)


def plane_model_soundness(
    model: Polynomial,
    w: FixedFunction,
    m: int,
    n_points: int,
    seed: int,
    eliminant: Optional[Polynomial] = None,
) -> VerificationReport:
    """F(t(P), w(P)) = 0 (and G(y(P), w(P)) = 0 when given) on sampled curve points over F_{p^m}."""
    base = model.spec
    spec = field_create(base.p, base.h, m)
    spec.require_fq2()
    curve = HermitianCurve(base.p, base.h)
    rng = make_rng(seed)
    w_m = w.over(spec)
    model_m = model.over(spec)
    eliminant_m = eliminant.over(spec) if eliminant is not None else None
    t_var, v_var = model.variables
    evaluated = model_failures = eliminant_failures = 0
    witnesses: List[Dict[str, Any]] = []
    for _ in range(n_points):
        P = curve.sample_point(m, rng)
        wv = w_m.evaluate(P)
        if not wv.is_value:
            continue
        if eliminant_m is not None:
            g_var, v_g = eliminant_m.variables
            if eliminant_m.evaluate({g_var: P.Y, v_g: wv.value.value}):
                eliminant_failures += 1
                if len(witnesses) < 10:
                    witnesses.append({"kind": "eliminant", "point": P.to_text()})
        tv = eval_t(P)
        if not tv.is_value:
            continue
        evaluated += 1
        if model_m.evaluate({t_var: tv.value.value, v_var: wv.value.value}):
            model_failures += 1
            if len(witnesses) < 10:
                witnesses.append({"kind": "point", "point": P.to_text(), "t": tv.value.value, "w": wv.value.value})
    return VerificationReport.compare(
        "plane_model_soundness",
        base.q,
        {"model_failures": 0, "eliminant_failures": 0},
        {"model_failures": model_failures, "eliminant_failures": eliminant_failures, "evaluated": evaluated},
        params={"function": w.label, "m": m, "points": n_points, "seed": seed, "model_terms": len(model)},
        witnesses=witnesses[:10],
        notes=[ORIENTATION_NOTE],
        require=evaluated > 0,
    )


def default_sampling_degree(p: int, h: int) -> int:
    """Ambient degree m for soundness sampling; F_{q^4} points make every Dickson factor vanish."""
    q = p ** h
    return {2: 10, 3: 8, 4: 16}.get(q, 8 * h)


def _expected_eliminant(spec: FieldSpec, name: str) -> Polynomial:
    q = spec.q
    variables = ("y", "v")
    y, v = Polynomial.variable(spec, "y", variables), Polynomial.variable(spec, "v", variables)
    if name == "norm_x":
        return (y ** q + y - v) ** (q + 1)
    return y ** q + y - v ** (q + 1)


def elimination_check(p: int, h: int, budget: int = DEFAULT_SYLVESTER_BUDGET) -> VerificationReport:
    """Res_x against the closed forms (y^q+y-v)^{q+1} for w = x^{q+1} and y^q+y-v^{q+1} for w = x."""
    spec = field_create(p, h, 2 * h)
    observed: Dict[str, bool] = {}
    texts: Dict[str, str] = {}
    for name in ("norm_x", "x"):
        G = eliminate_x(standard_fixed_function(name, spec), budget=budget)
        observed[name] = G == _expected_eliminant(spec, name)
        texts[name] = G.to_text()
    witnesses = [{"kind": "polynomial", "function": n, "eliminant": texts[n]} for n, ok in observed.items() if not ok]
    return VerificationReport.compare(
        "quotient_eliminate_x",
        spec.q,
        {name: True for name in observed},
        observed,
        params={"field": spec.to_dict(), "eliminants": texts},
        witnesses=witnesses,
        notes=[ORIENTATION_NOTE],
    )


def plane_model_check(
    p: int,
    h: int,
    n_points: int,
    seed: int,
    m: Optional[int] = None,
    budget: int = DEFAULT_SYLVESTER_BUDGET,
    function: str = "norm_x",
) -> VerificationReport:
    """Build F(t, v) for a standard fixed function and check it on sampled points."""
    spec = field_create(p, h, 2 * h)
    w = standard_fixed_function(function, spec)
    G = eliminate_x(w, budget=budget)
    T = t_relation(spec)
    model = eliminate_y(G, T, budget=budget)
    LOGGER.info("Plane model for %s: %d terms, deg_t %d, deg_v %d",
                function, len(model), model.degree("t"), model.degree("v"))
    return plane_model_soundness(model, w, m or default_sampling_degree(p, h), n_points, seed, eliminant=G)
