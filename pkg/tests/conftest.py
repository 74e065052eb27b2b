import pytest

from hardylab.profiles import Dimension


@pytest.fixture(scope="session")
def dim3() -> Dimension:
    return Dimension(3)


@pytest.fixture(scope="session")
def dim4() -> Dimension:
    return Dimension(4)
