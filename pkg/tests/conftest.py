import numpy as np
import pytest

from asymtop import TopParams


@pytest.fixture
def p321() -> TopParams:
    return TopParams(3.0, 2.0, 1.0)


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20260817)
