import pytest

from nonarch.field import FieldParams


@pytest.fixture(scope="session")
def q3():
    return FieldParams("padic", 3, 12)


@pytest.fixture(scope="session")
def q5():
    return FieldParams("padic", 5, 12)


@pytest.fixture(scope="session")
def q7():
    return FieldParams("padic", 7, 10)


@pytest.fixture(scope="session")
def l3():
    return FieldParams("laurent", 3, 12)
