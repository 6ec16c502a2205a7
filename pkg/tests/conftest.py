import numpy as np
import pytest


@pytest.fixture
def rng() -> np.random.Generator:
    """Fresh deterministic generator per test, independent of library streams."""
    return np.random.default_rng(20240813)
