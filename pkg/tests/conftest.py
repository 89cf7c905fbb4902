import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from cremona.fixtures import (no_name, noether, p4_monomial, polar_quartic,
                              standard_quadratic, sub_hankel)
from cremona.maps import invert
from cremona.symbolic import SymbolicFiltration


@pytest.fixture(scope="session")
def std():
    return standard_quadratic()


@pytest.fixture(scope="session")
def p4():
    return p4_monomial()


@pytest.fixture(scope="session")
def p4_inverse(p4):
    return invert(p4.spec)


@pytest.fixture(scope="session")
def p4_filtration(p4):
    return SymbolicFiltration(p4.ideal, p4.target)


@pytest.fixture(scope="session")
def polar():
    return polar_quartic()


@pytest.fixture(scope="session")
def polar_filtration(polar):
    return SymbolicFiltration(polar.ideal, polar.target)


@pytest.fixture(scope="session")
def hankel():
    return sub_hankel()


@pytest.fixture(scope="session")
def hankel_inverse(hankel):
    return invert(hankel.spec)


@pytest.fixture(scope="session")
def noether_fixture():
    return noether()


@pytest.fixture(scope="session")
def no_name_fixture():
    return no_name()
