import random
from fractions import Fraction

import pytest

from ordlift.circle import MoebiusLift, PLMap


@pytest.fixture
def rng():
    return random.Random(0)


@pytest.fixture
def half_translation():
    return PLMap.translation(Fraction(1, 2))


@pytest.fixture
def contracting_map():
    """Fixes the integers and lies below the identity elsewhere."""
    return PLMap(((Fraction(0), Fraction(0)), (Fraction(1, 2), Fraction(1, 4))))


@pytest.fixture
def quarter_turn():
    return MoebiusLift((0, -1, 1, 0))
