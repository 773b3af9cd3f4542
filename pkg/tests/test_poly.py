import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hermitinv.errors import (
    DegreeZeroInVar,
    DivisionByZero,
    FieldMismatch,
    NotDivisible,
    ZeroDenominator,
    ZeroPolynomial,
)
from hermitinv.ff import FieldElement, field_create
from hermitinv.poly import (
    CurveResidue,
    EvalOutcome,
    RationalFunction,
    Polynomial,
    UniPoly,
    frobenius_y_power,
    gcd_uni,
    ratfun_eval,
    ratfun_reduce,
    reduce_mod_curve,
    resultant,
    sylvester_matrix,
)

F16 = field_create(2, 1, 4)
F9 = field_create(3, 1, 2)
F4 = field_create(2, 1, 2)

coeffs16 = st.lists(st.integers(min_value=0, max_value=15), max_size=8)


def _x(spec, variables=("x", "y")):
    return Polynomial.variable(spec, "x", variables)


def _y(spec, variables=("x", "y")):
    return Polynomial.variable(spec, "y", variables)


@given(coeffs16, coeffs16)
def test_division_with_remainder(a, b):
    f, g = UniPoly(F16, a), UniPoly(F16, b)
    if g.is_zero():
        with pytest.raises(DivisionByZero):
            f.divmod(g)
        return
    quot, rem = f.divmod(g)
    assert quot * g + rem == f
    assert rem.degree < g.degree


@given(coeffs16, coeffs16)
def test_gcd_divides_both(a, b):
    f, g = UniPoly(F16, a), UniPoly(F16, b)
    d = gcd_uni(f, g)
    if d.is_zero():
        assert f.is_zero() and g.is_zero()
        return
    assert d.leading == 1
    assert (f % d).is_zero() and (g % d).is_zero()


def test_gcd_of_shared_linear_factor(f4):
    one = UniPoly.constant(f4, 1)
    x = UniPoly.monomial(f4, 1)
    common = x + one
    omega = FieldElement(f4, 2)
    f = common * (x + UniPoly.constant(f4, omega))
    g = common * (x + UniPoly.constant(f4, omega * omega))
    assert f.degree == g.degree == 2
    assert gcd_uni(f, g) == common
    assert gcd_uni(f, UniPoly.zero(f4)) == f.monic()


def test_frobenius_is_qth_power(f16):
    f = UniPoly(f16, [3, 0, 7, 1])
    assert f.frobenius() == f ** 2
    assert f.frobenius(2) == f ** 4


def test_move_between_fields(f4, f16):
    f = UniPoly(f4, [1, 0, 1, 1])
    assert f.over(f16).evaluate(1) == 1
    with pytest.raises(FieldMismatch):
        UniPoly(f4, [2, 1]).over(f16)
    P = Polynomial.from_terms(f4, {(2, 1): 1, (0, 0): 1})
    assert P.over(f16).variables == P.variables
    assert len(P.over(f16)) == 2


def test_polynomial_ring_operations(f9):
    x, y = _x(f9), _y(f9)
    f = (x + y) ** 3
    assert f == x ** 3 + y ** 3
    g = x * x - y * y
    assert g.exact_divide(x + y) == x - y
    with pytest.raises(NotDivisible):
        (x * x + 1).exact_divide(x + y)
    assert g.degree("x") == 2
    assert g.total_degree() == 2


def test_text_form_round_trips(f9):
    f = Polynomial.from_terms(f9, {(3, 1): 5, (0, 2): 2, (0, 0): 1})
    assert Polynomial.from_text(f9, f.to_text()) == f
    assert Polynomial.from_text(f9, "0") == Polynomial.zero(f9)


def test_homogenize_appends_variable(f9):
    f = Polynomial.from_terms(f9, {(2, 0): 1, (0, 1): 1, (0, 0): 1})
    H = f.homogenize("z")
    assert H.variables == ("x", "y", "z")
    assert H == Polynomial.from_terms(f9, {(2, 0, 0): 1, (0, 1, 1): 1, (0, 0, 2): 1}, ("x", "y", "z"))
    assert H.evaluate({"x": 4, "y": 7, "z": 1}) == f.evaluate({"x": 4, "y": 7})


def test_curve_reduction(f4, f9):
    for spec in (f4, f9):
        q = spec.q
        x, y = _x(spec), _y(spec)
        assert reduce_mod_curve(y ** q) == x ** (q + 1) - y
        assert reduce_mod_curve(y ** q + y - x ** (q + 1)).is_zero()
        assert frobenius_y_power(spec, q, 1) == reduce_mod_curve(y ** q)
        assert reduce_mod_curve(y ** (q * q)).degree("y") < q


def test_curve_residue_frobenius(f9):
    x, y = _x(f9), _y(f9)
    for f in (x + y, x * y + 2, y ** 2 + x ** 5):
        residue = CurveResidue.from_polynomial(f)
        assert residue.frobenius() == CurveResidue.from_polynomial(f ** 3)
    assert CurveResidue.from_polynomial(x * y) * CurveResidue.y(f9, 3) == CurveResidue.from_polynomial(x * y * y)


def test_resultant_signs_in_odd_characteristic(f9):
    variables = ("x", "a", "b")
    x, a, b = (Polynomial.variable(f9, v, variables) for v in variables)
    rest = ("a", "b")
    A, B = (Polynomial.variable(f9, v, rest) for v in rest)

    for method in ("auto", "sylvester"):
        assert resultant(x * x - a, x - b, "x", method) == B * B - A
        assert resultant(x - a, x - b, "x", method) == A - B
        assert resultant(a * x - 1, x - b, "x", method) == 1 - A * B


def test_sylvester_layout(f9):
    variables = ("x", "a")
    x, a = (Polynomial.variable(f9, v, variables) for v in variables)
    rows = sylvester_matrix(x ** 3 + a, x ** 2 - 1, "x")
    assert len(rows) == 5
    assert all(len(row) == 5 for row in rows)
    assert rows[0][0] == Polynomial.constant(f9, 1, variables)
    assert rows[0][3] == a


def test_resultant_errors(f9):
    variables = ("x", "a")
    x, a = (Polynomial.variable(f9, v, variables) for v in variables)
    with pytest.raises(DegreeZeroInVar):
        resultant(x, a, "x")
    with pytest.raises(ZeroPolynomial):
        resultant(x, Polynomial.zero(f9, variables), "x")


def test_rational_function_cancels_common_factor(f4):
    x = UniPoly.monomial(f4, 1)
    one = UniPoly.constant(f4, 1)
    shift = UniPoly.constant(f4, FieldElement(f4, 2))
    reduced, degree = ratfun_reduce((x + one) * x, (x + one) * (x + shift))
    assert reduced.num == x
    assert reduced.den == x + shift
    assert degree == 1
    with pytest.raises(ZeroDenominator):
        ratfun_reduce(x, UniPoly.zero(f4))
    assert ratfun_eval(reduced, FieldElement(f4, 2)).kind == EvalOutcome.POLE
    assert ratfun_eval(reduced, FieldElement(f4, 1)).value == FieldElement(f4, 1) / FieldElement(f4, 3)


def test_outcome_algebra(f9):
    one, zero = f9.one, f9.zero
    assert EvalOutcome.fraction(zero, zero).kind == EvalOutcome.INDETERMINATE
    assert EvalOutcome.fraction(one, zero).kind == EvalOutcome.POLE
    pole = EvalOutcome.pole()
    assert (pole * EvalOutcome.of_value(one)).kind == EvalOutcome.POLE
    assert (pole * EvalOutcome.of_value(zero)).kind == EvalOutcome.INDETERMINATE
    assert (pole * pole).kind == EvalOutcome.POLE
    assert (EvalOutcome.indeterminate() * EvalOutcome.of_value(one)).kind == EvalOutcome.INDETERMINATE
    assert (EvalOutcome.of_value(FieldElement(f9, 3)) ** 2).value == FieldElement(f9, 2)


def _y_power_closed_form(spec, k):
    """y + sum_{i<k} (-1)^(i+1) x^(q^(i+1) + q^i) for even k."""
    q = spec.q
    x, y = _x(spec), _y(spec)
    out = y
    for i in range(k):
        term = x ** (q ** (i + 1) + q ** i)
        out = out + term if i % 2 else out - term
    return out


@pytest.mark.parametrize("spec", [F4, F9], ids=["q2", "q3"])
@pytest.mark.parametrize("k", [2, 6])
def test_iterated_frobenius_of_y(spec, k):
    q = spec.q
    expected = _y_power_closed_form(spec, k)
    assert reduce_mod_curve(_y(spec) ** (q ** k)) == expected
    assert frobenius_y_power(spec, q, k) == expected


def test_gcd_worked_examples():
    for spec in (F4, F9):
        q = spec.q
        small = UniPoly.signed_sum(spec, [(q, 1), (1, -1)])
        big = UniPoly.signed_sum(spec, [(q * q, 1), (1, -1)])
        assert gcd_uni(small, big) == small
    quartic = UniPoly.signed_sum(F4, [(4, 1), (1, -1)])
    quadratic = UniPoly.signed_sum(F4, [(2, 1), (1, -1)])
    assert gcd_uni(quartic ** 3, quadratic ** 5) == quadratic ** 3
    assert gcd_uni(UniPoly(F4, [2, 0, 2]), UniPoly.zero(F4)) == UniPoly(F4, [1, 0, 1])


sparse9 = st.dictionaries(
    st.tuples(st.integers(min_value=0, max_value=7), st.integers(min_value=0, max_value=7)),
    st.integers(min_value=1, max_value=8),
    max_size=5,
)


def _sparse(spec, terms):
    return Polynomial.from_terms(spec, {e: FieldElement(spec, c) for e, c in terms.items()})


@given(sparse9, sparse9)
@settings(max_examples=40, deadline=None)
def test_curve_reduction_is_multiplicative(a, b):
    f, g = _sparse(F9, a), _sparse(F9, b)
    assert reduce_mod_curve(f * g) == reduce_mod_curve(reduce_mod_curve(f) * reduce_mod_curve(g))
    assert reduce_mod_curve(reduce_mod_curve(f)) == reduce_mod_curve(f)
    assert reduce_mod_curve(f).degree("y") < 3


def _split_in_x(spec, roots):
    x = _x(spec)
    out = Polynomial.constant(spec, 1)
    for r in roots:
        out = out * (x - r)
    return out


def _roots_f4():
    y = _y(F4)
    one = Polynomial.constant(F4, 1)
    omega = Polynomial.constant(F4, FieldElement(F4, 2))
    return y, one, omega


@pytest.mark.parametrize("case", range(3))
def test_resultant_vanishes_exactly_on_shared_roots(case):
    y, one, omega = _roots_f4()
    zero = Polynomial.zero(F4)
    f_roots, g_roots = [
        ([y, one], [y * y, omega]),
        ([y + one, y * omega], [y, zero]),
        ([y * y, y * y, one], [y + omega, omega * omega]),
    ][case]
    f, g = _split_in_x(F4, f_roots), _split_in_x(F4, g_roots)
    res = resultant(f, g, "x")
    assert res.variables == ("y",)
    assert not res.is_zero()
    for v in range(F4.order):
        shared = any(
            f.evaluate({"x": a, "y": v}) == 0 and g.evaluate({"x": a, "y": v}) == 0
            for a in range(F4.order)
        )
        assert (res.evaluate({"y": v}) == 0) == shared


def test_resultant_against_cube_relation():
    variables = ("x", "y", "s")
    x, y, s = (Polynomial.variable(F4, v, variables) for v in variables)
    res = resultant(y * y + y - x ** 3, x ** 3 - s, "x")
    Y, S = (Polynomial.variable(F4, v, ("y", "s")) for v in ("y", "s"))
    assert res == (Y * Y + Y - S) ** 3


@given(coeffs16, coeffs16, st.lists(st.integers(min_value=0, max_value=15), min_size=2, max_size=4))
@settings(max_examples=60, deadline=None)
def test_reduced_fraction_keeps_values(a, b, c):
    num, den, common = UniPoly(F16, a), UniPoly(F16, b), UniPoly(F16, c)
    if den.is_zero() or common.is_zero():
        return
    raw = RationalFunction(num * common, den * common)
    reduced, _ = ratfun_reduce(raw.num, raw.den)
    for v in range(F16.order):
        point = FieldElement(F16, v)
        before = ratfun_eval(raw, point)
        if before.is_value:
            assert ratfun_eval(reduced, point) == before
