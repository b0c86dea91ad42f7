import pytest

from cbhseries.hpreal import PrecisionContext


@pytest.fixture(scope="session")
def ctx32():
    return PrecisionContext(32)


@pytest.fixture(scope="session")
def ctx40():
    return PrecisionContext(40)


@pytest.fixture(scope="session")
def ctx64():
    return PrecisionContext(64)
