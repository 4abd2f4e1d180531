import numpy as np
import pytest

from casimir import QuadratureConfig


@pytest.fixture(scope="session")
def quad_fast():
    """Loose tolerance for sweeps where only the verdict matters."""
    return QuadratureConfig(rel_tol=1e-6)


@pytest.fixture(scope="session")
def quad_tight():
    return QuadratureConfig(rel_tol=1e-8)


@pytest.fixture
def rng():
    return np.random.default_rng(20240811)
