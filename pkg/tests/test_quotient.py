import pytest

from hermitinv.errors import BadParameters, DegenerateEliminant, ScaleExceeded, ZeroDenominator
from hermitinv.ff import field_create
from hermitinv.group import subgroup
from hermitinv.poly import Polynomial, resultant
from hermitinv.quotient import (
    FIXED_FUNCTIONS,
    FixedFunction,
    curve_equation,
    default_sampling_degree,
    eliminate_x,
    eliminate_y,
    elimination_check,
    fixed_function_check,
    normalize_eliminant,
    plane_model_check,
    plane_model_soundness,
    standard_fixed_function,
)


def _vars(spec, names):
    return [Polynomial.variable(spec, v, names) for v in names]


def test_fixed_function_validation(f4):
    x, y = _vars(f4, ("x", "y"))
    with pytest.raises(ZeroDenominator):
        FixedFunction(x, Polynomial.zero(f4), subgroup("Psi", f4))
    with pytest.raises(BadParameters):
        FixedFunction(x, y, ())
    with pytest.raises(BadParameters):
        standard_fixed_function("z", f4)


@pytest.mark.parametrize("name", FIXED_FUNCTIONS)
def test_standard_functions_are_fixed(name):
    spec = field_create(2, 1, 8)
    report = fixed_function_check(standard_fixed_function(name, spec), n_points=30, seed=3)
    assert report.passed
    assert report.observed["violations"] == 0


@pytest.mark.parametrize("name", FIXED_FUNCTIONS)
def test_standard_functions_symbolically_fixed(name, f9):
    assert fixed_function_check(standard_fixed_function(name, f9), mode="symbolic").passed


def test_moved_function_is_caught(f4):
    x, y = _vars(f4, ("x", "y"))
    w = FixedFunction(y, Polynomial.constant(f4, 1), subgroup("Psi", f4), label="y_under_psi")
    report = fixed_function_check(w, mode="exhaustive")
    assert not report.passed
    assert report.witnesses
    assert not fixed_function_check(w, mode="symbolic").passed
    with pytest.raises(BadParameters):
        fixed_function_check(w, mode="random")


def test_symbolic_mode_budget():
    spec = field_create(2, 2, 4)
    with pytest.raises(ScaleExceeded):
        fixed_function_check(standard_fixed_function("x", spec), mode="symbolic")


@pytest.mark.parametrize("p", [2, 3])
def test_eliminate_x_closed_forms(p):
    spec = field_create(p, 1, 2)
    q = spec.q
    y, v = _vars(spec, ("y", "v"))
    assert eliminate_x(standard_fixed_function("x", spec)) == y ** q + y - v ** (q + 1)
    assert eliminate_x(standard_fixed_function("norm_x", spec)) == (y ** q + y - v) ** (q + 1)


def test_elimination_report():
    report = elimination_check(3, 1)
    assert report.passed
    assert set(report.params["eliminants"]) == {"norm_x", "x"}


def test_normalize_removes_content(f9):
    y, v = _vars(f9, ("y", "v"))
    assert normalize_eliminant((v + 1) * (y + v)) == y + v
    assert normalize_eliminant((y - v).scale(2)) == y - v
    with pytest.raises(DegenerateEliminant):
        normalize_eliminant(Polynomial.zero(f9, ("y", "v")))
    with pytest.raises(DegenerateEliminant):
        normalize_eliminant(Polynomial.constant(f9, 2, ("y", "v")))
    with pytest.raises(DegenerateEliminant):
        normalize_eliminant(v * v + 1)


def test_eliminate_y_small_case(f9):
    y, v = _vars(f9, ("y", "v"))
    yt, t = _vars(f9, ("y", "t"))
    T, V = _vars(f9, ("t", "v"))
    assert eliminate_y(y - v, yt * yt - t) == T - V * V
    with pytest.raises(BadParameters):
        eliminate_y(Polynomial.variable(f9, "v", ("v", "y")), yt - t)


def test_eliminate_y_shared_factor_is_degenerate(f9):
    y, v = _vars(f9, ("y", "v"))
    yt, t = _vars(f9, ("y", "t"))
    with pytest.raises(DegenerateEliminant):
        eliminate_y((y - v) * (y + 1), (yt - t) * (yt + 1))


def test_eliminate_y_input_order(f9):
    y, v = _vars(f9, ("y", "v"))
    yt, t = _vars(f9, ("y", "t"))
    G, T = y ** 3 - v, yt - t
    joint = ("y", "t", "v")
    forward = resultant(G.with_variables(joint), T.with_variables(joint), "y")
    backward = resultant(T.with_variables(joint), G.with_variables(joint), "y")
    tt, vv = _vars(f9, ("t", "v"))
    assert forward == vv - tt ** 3
    assert backward == -forward
    swapped = eliminate_y(T, G)
    assert swapped.variables == ("v", "t")
    assert normalize_eliminant(swapped.with_variables(("t", "v"))) == eliminate_y(G, T) == tt ** 3 - vv


def test_sylvester_budget(f9):
    y, v = _vars(f9, ("y", "v"))
    yt, t = _vars(f9, ("y", "t"))
    with pytest.raises(ScaleExceeded):
        eliminate_y(y ** 60 - v, yt ** 50 - t)
    with pytest.raises(ScaleExceeded):
        eliminate_x(standard_fixed_function("norm_x", f9), budget=4)


def test_curve_equation_vanishes_on_points(f9):
    eq = curve_equation(f9)
    assert eq.evaluate({"x": 0, "y": 0}) == 0
    assert eq.evaluate({"x": 1, "y": 0}) != 0


def test_wrong_model_is_rejected(f4):
    T, V = _vars(f4, ("t", "v"))
    report = plane_model_soundness(T - V, standard_fixed_function("norm_x", f4), m=8, n_points=30, seed=1)
    assert report.observed["evaluated"] > 0
    assert report.observed["model_failures"] > 0
    assert not report.passed


def test_soundness_witnesses_are_capped(f4):
    T, V = _vars(f4, ("t", "v"))
    Y, W = _vars(f4, ("y", "v"))
    report = plane_model_soundness(T - V, standard_fixed_function("norm_x", f4), m=8, n_points=60, seed=2,
                                   eliminant=Y - W)
    assert report.observed["eliminant_failures"] > 10
    assert not report.passed
    assert 0 < len(report.witnesses) <= 10


def test_sampling_degree_defaults():
    assert default_sampling_degree(2, 1) == 10
    assert default_sampling_degree(3, 1) == 8
    assert default_sampling_degree(5, 1) == 8


@pytest.mark.slow
def test_plane_model_q2():
    report = plane_model_check(2, 1, n_points=40, seed=0)
    assert report.passed
    assert report.observed["model_failures"] == 0
    assert report.observed["eliminant_failures"] == 0
