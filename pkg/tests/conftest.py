import numpy as np
import pytest

import crystalflex as cf


@pytest.fixture
def square_grid():
    return cf.builtin_framework("square_grid")


@pytest.fixture
def kagome():
    return cf.builtin_framework("kagome")


@pytest.fixture
def hexahedron():
    return cf.builtin_framework("hexahedron")


@pytest.fixture
def rng():
    return np.random.default_rng(20250810)


@pytest.fixture(params=["square_grid", "kagome", "hexahedron"])
def any_builtin(request):
    return cf.builtin_framework(request.param)
