import pytest

from helpers import fgh_diagram, xyzw_diagram


@pytest.fixture
def fgh():
    return fgh_diagram()


@pytest.fixture
def xyzw():
    return xyzw_diagram()
