from fractions import Fraction

import pytest

from qlidstone import QContext


@pytest.fixture(scope="session")
def ctx_half():
    return QContext(Fraction(1, 2))


@pytest.fixture(scope="session")
def ctx_threefifths():
    return QContext(Fraction(3, 5))


@pytest.fixture(scope="session", params=[Fraction(1, 2), Fraction(3, 5)])
def ctx(request):
    return QContext(request.param)
