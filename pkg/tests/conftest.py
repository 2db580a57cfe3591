import pytest

from tempiric import builtin


@pytest.fixture(scope="session")
def sl2r():
    return builtin("SL2R")


@pytest.fixture(scope="session")
def so31():
    return builtin("SO31")


@pytest.fixture(scope="session")
def sp11():
    return builtin("Sp11")
