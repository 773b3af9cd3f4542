import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hermitinv.errors import (
    BadParameters,
    BadSubfieldDegree,
    DegreeTooLarge,
    DivisionByZero,
    FieldMismatch,
    FieldTooSmall,
    NonPrimeP,
)
from hermitinv.ff import (
    FieldElement,
    arith,
    field_create,
    field_from_modulus,
    frob_q,
    in_subfield,
    is_irreducible,
    is_prime,
    make_rng,
    norm_tilde,
    random_raw,
    solve_affine_q,
    split_prime_power,
    subfield_elements,
    trace_kernel,
)

F16 = field_create(2, 1, 4)
F81 = field_create(3, 1, 4)
F2_20 = field_create(2, 1, 20)
F2_24 = field_create(2, 2, 24)

nonzero16 = st.integers(min_value=1, max_value=F16.order - 1)
any16 = st.integers(min_value=0, max_value=F16.order - 1)
any81 = st.integers(min_value=0, max_value=F81.order - 1)


@pytest.mark.parametrize(
    "p,h,m,modulus",
    [
        (2, 1, 2, (1, 1, 1)),
        (3, 1, 2, (1, 0, 1)),
        (2, 1, 6, (1, 1, 0, 0, 0, 0, 1)),
    ],
)
def test_least_modulus(p, h, m, modulus):
    spec = field_create(p, h, m)
    assert spec.modulus == modulus
    assert spec.order == p ** m
    assert is_irreducible(spec.modulus, p)


def test_field_create_rejects_bad_parameters():
    with pytest.raises(NonPrimeP):
        field_create(4, 1, 2)
    with pytest.raises(DegreeTooLarge):
        field_create(2, 1, 65)
    with pytest.raises(BadParameters):
        field_from_modulus(2, 1, (1, 0, 1))


def test_small_field_tables(f4, f9):
    omega = FieldElement(f4, 2)
    assert omega ** 2 == FieldElement(f4, 3)
    assert omega ** 3 == f4.one
    assert omega + omega ** 2 == f4.one
    i = FieldElement(f9, 3)
    assert i * i == FieldElement(f9, 2)
    assert i ** 4 == f9.one


@given(any81, any81, any81)
def test_field_axioms_odd(a, b, c):
    x, y, z = (FieldElement(F81, v) for v in (a, b, c))
    assert x + y == y + x
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert x - x == F81.zero
    assert -x + x == F81.zero


@given(nonzero16, any16)
def test_division_inverts_multiplication(a, b):
    x, y = FieldElement(F16, a), FieldElement(F16, b)
    assert (y * x) / x == y
    assert x * x.inverse() == F16.one
    assert x ** -1 == x.inverse()


@given(st.integers(min_value=0, max_value=F2_20.order - 1), st.integers(min_value=0, max_value=F2_20.order - 1))
@settings(max_examples=50, deadline=None)
def test_frobenius_is_additive(a, b):
    x, y = FieldElement(F2_20, a), FieldElement(F2_20, b)
    assert (x + y) ** 2 == x ** 2 + y ** 2
    assert frob_q(x, 20) == x


@given(st.integers(min_value=0, max_value=(1 << 24) - 1))
@settings(max_examples=25, deadline=None)
def test_untabulated_field_arithmetic(a):
    x = FieldElement(F2_24, a)
    assert not F2_24.kernel.tabulated
    assert frob_q(x, 12) == x
    if a:
        assert x * x.inverse() == F2_24.one


def test_division_by_zero(f16):
    with pytest.raises(DivisionByZero):
        f16.one / f16.zero
    with pytest.raises(ZeroDivisionError):
        f16.zero.inverse()


def test_mixed_fields_rejected(f16):
    other = field_create(2, 2, 4)
    with pytest.raises(FieldMismatch):
        f16.one + other.one
    with pytest.raises(FieldMismatch):
        arith(f16.one, other.one, "mul")


def test_arith_dispatch(f16):
    a, b = FieldElement(f16, 7), FieldElement(f16, 11)
    assert arith(a, b, "add") == a + b
    assert arith(a, b, "div") == a / b
    assert arith(a, 5, "pow") == a ** 5
    with pytest.raises(BadParameters):
        arith(a, -1, "pow")
    with pytest.raises(BadParameters):
        arith(a, b, "mod")


def test_norm_lands_in_fq(f16):
    for a in subfield_elements(f16, 2):
        n = norm_tilde(FieldElement(f16, a))
        assert in_subfield(n, 1)


def test_affine_equation_over_f4(f4):
    omega = FieldElement(f4, 2)
    assert solve_affine_q(f4.one) == (omega, omega ** 2)
    assert trace_kernel(f4) == (0, 1)
    assert solve_affine_q(f4.zero) == (FieldElement(f4, 0), FieldElement(f4, 1))
    assert solve_affine_q(omega) == ()


@given(any16)
def test_affine_solutions_satisfy_equation(c):
    value = FieldElement(F16, c)
    solutions = solve_affine_q(value)
    assert len(solutions) in (0, F16.q)
    for y in solutions:
        assert y ** F16.q + y == value
    assert list(solutions) == sorted(solutions)


def test_affine_equation_needs_fq2():
    odd = field_create(2, 1, 3)
    with pytest.raises(FieldTooSmall):
        solve_affine_q(odd.one)


def test_subfields(f16, f81):
    assert len(subfield_elements(f16, 2)) == 4
    assert len(subfield_elements(f81, 2)) == 9
    assert all(in_subfield(FieldElement(f81, v), 2) for v in subfield_elements(f81, 2))
    with pytest.raises(BadSubfieldDegree):
        in_subfield(f16.one, 3)


def test_prime_helpers():
    assert [n for n in range(20) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19]
    assert split_prime_power(9) == (3, 2)
    assert split_prime_power(2) == (2, 1)
    with pytest.raises(NonPrimeP):
        split_prime_power(12)
    assert not is_irreducible((1, 0, 1), 2)


def test_seeded_draws_repeat(f64):
    a = [random_raw(f64, make_rng(7)) for _ in range(3)]
    b = [random_raw(f64, make_rng(7)) for _ in range(3)]
    assert a == b
