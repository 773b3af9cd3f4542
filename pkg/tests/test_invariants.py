import pytest

from hermitinv.curve import HermitianCurve, ProjectivePoint
from hermitinv.errors import BadParameters, NotOnCurve, ScaleExceeded
from hermitinv.ff import FieldElement, field_create, make_rng
from hermitinv.group import UnitaryMatrix, apply, random_element
from hermitinv.invariants import (
    InvariantFormula,
    degree_census,
    dickson_det,
    dickson_det_projective,
    divisor_census,
    eval_pgl2,
    eval_t,
    eval_t_x,
    eval_t_y,
    eval_u,
    pgl2_maps,
    symbolic_consistency,
    symbolic_dm_identity,
    t_relation,
    verify_dickson_invariance,
    verify_invariance,
    verify_pgl2_invariance,
    zero_locus,
)
from hermitinv.poly import EvalOutcome


def _sample(p, h, m, n, seed):
    curve = HermitianCurve(p, h)
    rng = make_rng(seed)
    return [curve.sample_point(m, rng) for _ in range(n)]


@pytest.mark.parametrize("p,h,m", [(2, 1, 8), (3, 1, 8)])
def test_pointwise_forms_agree(p, h, m):
    q = p ** h
    values = 0
    for P in _sample(p, h, m, 40, seed=11):
        t, u = eval_t(P), eval_u(P)
        if t.is_value and u.is_value:
            values += 1
            assert t.value ** q == u.value
        tx, ty = eval_t_x(P.x), eval_t_y(P.y)
        if t.is_value and tx.is_value:
            assert tx.value == t.value
        if t.is_value and ty.is_value:
            assert ty.value == t.value
    assert values > 0


def test_t_is_constant_on_orbits():
    spec = field_create(2, 1, 8)
    rng = make_rng(2)
    elements = [random_element(rng, 6, spec) for _ in range(10)]
    for P in _sample(2, 1, 8, 20, seed=4):
        before = eval_t(P)
        for M in elements:
            image = apply(M, P)
            if image.is_infinity:
                continue
            after = eval_t(image)
            if before.is_value and after.is_value:
                assert after.value == before.value


def test_evaluation_requires_curve_point(f16):
    off = (FieldElement(f16, 1), FieldElement(f16, 0))
    with pytest.raises(NotOnCurve):
        eval_t(off)
    with pytest.raises(BadParameters):
        eval_u(ProjectivePoint.infinity(f16))


def test_dickson_determinant_parameters(f16):
    with pytest.raises(BadParameters):
        dickson_det_projective(f16, (1, 0, 1), 4, 2)
    with pytest.raises(BadParameters):
        dickson_det_projective(f16, (1, 0, 1), 0, 2)
    assert dickson_det_projective(f16, (0, 0, 1), 2, 4) == 0
    assert dickson_det(ProjectivePoint.affine(f16, 0, 1), 2, 4) == f16.zero


def test_pgl2_invariant_under_translation():
    spec = field_create(2, 1, 4)
    for v in range(spec.order):
        xi = FieldElement(spec, v)
        before, after = eval_pgl2(xi), eval_pgl2(xi + 1)
        assert before.kind == after.kind
        if before.is_value:
            assert before.value == after.value
    assert eval_pgl2(spec.one).kind == EvalOutcome.INDETERMINATE


def test_pgl2_map_count():
    assert len(pgl2_maps(field_create(2, 1, 4))) == 6
    assert len(pgl2_maps(field_create(3, 1, 4))) == 24


def test_formula_catalogue(f4):
    with pytest.raises(BadParameters):
        InvariantFormula("t_z", f4)
    with pytest.raises(BadParameters):
        InvariantFormula("dickson", f4, 0, 2)
    with pytest.raises(BadParameters):
        InvariantFormula("t_xy", f4).reduced()
    reduced, degree = InvariantFormula("eq1_pgl2", f4).reduced()
    assert degree == 6
    assert reduced.den.leading == 1


def test_t_relation_shape(f4):
    relation = t_relation(f4)
    assert relation.variables == ("y", "t")
    assert relation.degree("y") == 72
    assert relation.degree("t") == 1
    with pytest.raises(BadParameters):
        t_relation(f4, q=3)


@pytest.mark.parametrize("m", [4, 6])
def test_dm_identity_q2(m):
    report = symbolic_dm_identity(m, 2, 1)
    assert report.passed
    assert report.observed == {"residual_terms": 0}


def test_dm_identity_rejects_other_m():
    with pytest.raises(BadParameters):
        symbolic_dm_identity(5)


def test_symbolic_consistency_q2():
    report = symbolic_consistency(2, 1)
    assert report.passed
    assert all(report.observed.values())


def test_degree_census_q2():
    report = degree_census(2, 1)
    assert report.passed
    assert report.observed == {"t_x": 108, "t_y": 72, "eq1_pgl2": 6}


def test_symbolic_budget():
    with pytest.raises(ScaleExceeded):
        degree_census(5, 1)
    with pytest.raises(ScaleExceeded):
        symbolic_consistency(2, 2)


def test_zero_locus_q2():
    report = zero_locus(2, 1)
    assert report.passed
    assert report.observed["t_x_roots"] == 36
    assert report.observed["t_y_roots"] == 24
    assert report.observed["t_x_multiplicities"] == [3]
    assert report.observed["t_y_multiplicities"] == [3]


def test_divisor_census_q2():
    report = divisor_census(2, 1)
    assert report.passed
    assert report.observed["deg_F"] == 48
    assert report.observed["deg_G"] == 60


def test_dickson_transformation_rule():
    assert verify_dickson_invariance(2, 1, 8, n_points=20, n_matrices=5, seed=0).passed
    assert verify_dickson_invariance(3, 1, 8, n_points=10, n_matrices=4, seed=1).passed


@pytest.mark.parametrize("p,h,maps", [(2, 1, 6), (3, 1, 24), (2, 2, 60)])
def test_pgl2_sweep(p, h, maps):
    report = verify_pgl2_invariance(p, h, n_arguments=10, seed=0)
    assert report.passed
    assert report.observed["maps"] == maps


@pytest.mark.parametrize("m", [8, 10])
def test_invariance_sweep_q2(m):
    report = verify_invariance(2, 1, m, n_points=30, n_elements=10, seed=1)
    assert report.passed
    assert report.observed["comparisons"] > 0
    assert report.params["points"] == 30


def test_invariance_sweep_is_deterministic():
    one = verify_invariance(2, 1, 8, n_points=15, n_elements=5, seed=9)
    many = verify_invariance(2, 1, 8, n_points=15, n_elements=5, seed=9, workers=3)
    assert one.observed == many.observed


def test_identity_only_sweep_is_vacuous_but_passes():
    spec = field_create(2, 1, 8)
    report = verify_invariance(2, 1, 8, n_points=5, n_elements=1, seed=0,
                               elements=[UnitaryMatrix.identity(spec)])
    assert report.passed


@pytest.mark.slow
@pytest.mark.parametrize("m", [4, 6])
def test_dm_identity_q3(m):
    assert symbolic_dm_identity(m, 3, 1).passed


@pytest.mark.slow
def test_symbolic_consistency_q3():
    assert symbolic_consistency(3, 1).passed


@pytest.mark.slow
def test_degree_census_q3():
    report = degree_census(3, 1)
    assert report.observed == {"t_x": 2016, "t_y": 1512, "eq1_pgl2": 24}


@pytest.mark.slow
def test_zero_locus_q3():
    report = zero_locus(3, 1)
    assert report.observed["t_x_roots"] == 288
    assert report.observed["t_y_roots"] == 216
    assert report.observed["t_x_multiplicities"] == [7]
    assert report.passed


@pytest.mark.slow
def test_invariance_sweep_q3():
    assert verify_invariance(3, 1, 8, n_points=20, n_elements=10, seed=2).passed
