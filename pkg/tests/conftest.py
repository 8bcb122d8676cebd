from fractions import Fraction
from pathlib import Path

import pytest

from hnnlat.matrices import RationalMatrix
from hnnlat.words import validate_group

REPO_ROOT = Path(__file__).resolve().parent.parent


@pytest.fixture(scope="session")
def flagship_matrix():
    return RationalMatrix(
        [[Fraction(3, 5), Fraction(-4, 5)], [Fraction(4, 5), Fraction(3, 5)]]
    )


@pytest.fixture(scope="session")
def flagship(flagship_matrix):
    # rotation by arccos(3/5); domain lattice spanned by (2,-1) and (1,2)
    return validate_group(2, flagship_matrix, [(2, -1), (1, 2)])


@pytest.fixture(scope="session")
def bs12():
    return validate_group(1, RationalMatrix([[2]]), [(1,)])


@pytest.fixture(scope="session")
def finite_order():
    return validate_group(2, RationalMatrix([[0, -1], [1, 0]]), [(2, 0), (0, 2)])


@pytest.fixture(scope="session")
def configs_dir():
    return REPO_ROOT / "configs"
