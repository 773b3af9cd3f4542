import numpy as np
import pytest

from hermitinv.ff import field_create, make_rng


@pytest.fixture
def f4():
    return field_create(2, 1, 2)


@pytest.fixture
def f16():
    return field_create(2, 1, 4)


@pytest.fixture
def f64():
    return field_create(2, 1, 6)


@pytest.fixture
def f9():
    return field_create(3, 1, 2)


@pytest.fixture
def f81():
    return field_create(3, 1, 4)


@pytest.fixture
def rng() -> np.random.Generator:
    return make_rng(12345)
