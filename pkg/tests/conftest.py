import sys
from fractions import Fraction
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from qcl.weights import WeightScheme  # noqa: E402


@pytest.fixture
def half():
    return Fraction(1, 2)


@pytest.fixture
def schur_half():
    return WeightScheme.schur(Fraction(1, 2))


@pytest.fixture
def macdonald():
    return WeightScheme.macdonald(Fraction(1, 3), Fraction(1, 2))
