from pathlib import Path

import numpy as np
import pytest

from igeuler.fields.families import offset_scalar_bump, random_tensor_field
from igeuler.fields.profiles import make_bump_profile, make_polynomial_profile
from igeuler.fields.solutions import radial_solution
from igeuler.operators import FDSpec
from igeuler.quadrature import QuadratureSpec


def pytest_collection_modifyitems(items):
    """Modify test items in place to ensure test modules run in a given order."""
    module_order = [
        "test_geometry",
        "test_quadrature",
        "test_fields",
        "test_transforms",
        "test_operators",
        "test_verify",
        "test_igeuler",
        "test_cli",
    ]
    # remember to add new test modules to the order constant:
    assert len(module_order) == len(list(Path(__file__).parent.rglob("test_*.py")))
    items.sort(key=lambda i: module_order.index(i.module.__name__))


@pytest.fixture(scope="session")
def quadrature() -> QuadratureSpec:
    return QuadratureSpec()


@pytest.fixture(scope="session")
def fd() -> FDSpec:
    return FDSpec()


@pytest.fixture(scope="session")
def polybump():
    """Provide ψ(s) = (1 − s)⁴ on the unit ball"""
    return make_polynomial_profile(1.0, 1.0)


@pytest.fixture(scope="session")
def bump():
    """Provide ψ(s) = exp(−1/(1 − s)) on the unit ball"""
    return make_bump_profile(1.0, 1.0)


@pytest.fixture(scope="session")
def poly_solution(polybump):
    """Provide the radial velocity/pressure pair of the polynomial profile"""
    return radial_solution(polybump, 32)


@pytest.fixture(scope="session")
def bump_solution(bump):
    """Provide the radial velocity/pressure pair of the smooth bump"""
    return radial_solution(bump)


@pytest.fixture(scope="session")
def vector_field():
    """Provide an off-center, non-radial vector field (not a solution)"""
    return random_tensor_field(1, np.random.default_rng(7))


@pytest.fixture(scope="session")
def scalar_bump():
    return offset_scalar_bump(np.array([0.1, -0.05, 0.05]), 0.7, 1.0)


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(1234)
