import pytest

from hermitinv.curve import (
    DELTA,
    OTHER,
    RATIONAL,
    HermitianCurve,
    PointSet,
    ProjectivePoint,
    on_curve,
    point_tag,
)
from hermitinv.errors import BadParameters, ScaleExceeded
from hermitinv.ff import field_create, field_from_modulus, make_rng


def test_projective_normalization(f4):
    P = ProjectivePoint.create(f4, 2, 2, 2)
    assert (P.X, P.Y, P.Z) == (1, 1, 1)
    assert ProjectivePoint.create(f4, 0, 3, 0) == ProjectivePoint.infinity(f4)
    with pytest.raises(BadParameters):
        ProjectivePoint.create(f4, 0, 0, 0)
    with pytest.raises(BadParameters):
        ProjectivePoint.infinity(f4).x


def test_membership(f4):
    assert on_curve(ProjectivePoint.infinity(f4))
    assert on_curve(ProjectivePoint.affine(f4, 0, 0))
    assert on_curve(ProjectivePoint.affine(f4, 0, 1))
    assert not on_curve(ProjectivePoint.affine(f4, 1, 0))


@pytest.mark.parametrize("p,h,k,count", [(2, 1, 1, 9), (3, 1, 1, 28), (2, 1, 3, 81), (2, 1, 2, 9), (3, 1, 3, 892)])
def test_point_counts(p, h, k, count):
    curve = HermitianCurve(p, h)
    assert curve.expected_count(k) == count
    points = curve.enumerate_points(k)
    assert len(points) == count
    assert all(on_curve(P) for P in points)
    assert points.points[-1].is_infinity


def test_unital_points_are_all_rational():
    points = HermitianCurve(3, 1).enumerate_points(1)
    assert points.count(RATIONAL) == 28
    affine = [P.sort_key() for P in points if not P.is_infinity]
    assert affine == sorted(affine)


def test_delta_over_f64():
    curve = HermitianCurve(2, 1)
    points = curve.enumerate_points(3)
    assert points.count(RATIONAL) == 9
    assert points.count(DELTA) == curve.delta_size() == 72
    assert points.count(OTHER) == 0
    delta = curve.delta_set()
    assert len(delta) == 72
    assert all(point_tag(P) == DELTA for P in delta)


def test_count_check_reports():
    curve = HermitianCurve(2, 1)
    report = curve.count_check(3, workers=2)
    assert report.passed
    assert report.observed["delta"] == 72
    assert report.observed["delta_x_in_fq2"] == 0
    assert report.observed["rational_plus_delta"] == 81
    assert HermitianCurve(3, 1).count_check(1).observed["unital"] == 28
    big = HermitianCurve(3, 1).count_check(3)
    assert big.passed
    assert big.observed["delta"] == 864


def test_enumeration_budget():
    with pytest.raises(ScaleExceeded):
        HermitianCurve(3, 1).enumerate_points(3, max_order=700)
    with pytest.raises(ScaleExceeded):
        HermitianCurve(2, 1).enumerate_points(3, max_order=63)
    assert len(HermitianCurve(2, 1).enumerate_points(3, max_order=64)) == 81
    with pytest.raises(BadParameters):
        HermitianCurve(2, 1).enumerate_points(0)


@pytest.mark.parametrize(
    "p,k,modulus,expected",
    [
        (2, 2, (1, 0, 0, 1, 1), 9),
        (2, 3, (1, 0, 0, 0, 0, 1, 1), 81),
        (3, 1, (2, 1, 1), 28),
    ],
)
def test_counts_do_not_depend_on_modulus(p, k, modulus, expected):
    curve = HermitianCurve(p, 1)
    spec = field_from_modulus(p, 1, modulus)
    assert spec.modulus != curve.field(k).modulus
    points = curve.enumerate_points(k, spec=spec)
    assert points.spec == spec
    assert len(points) == len(curve.enumerate_points(k)) == expected
    assert points.count(RATIONAL) == p ** 3 + 1
    assert all(on_curve(P) for P in points.points)
    with pytest.raises(BadParameters):
        curve.enumerate_points(k + 1, spec=spec)


def test_sampled_points_lie_on_curve():
    curve = HermitianCurve(3, 1)
    rng = make_rng(3)
    for _ in range(20):
        P = curve.sample_point(4, rng)
        assert on_curve(P)
        assert P.spec == field_create(3, 1, 4)


def test_point_set_text_form():
    points = HermitianCurve(2, 1).enumerate_points(1)
    again = PointSet.from_text(points.to_text())
    assert again.points == points.points
    assert again.tags == points.tags
    with pytest.raises(BadParameters):
        PointSet.from_text("0 1 0 rational\n")
