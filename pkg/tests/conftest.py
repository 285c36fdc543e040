from fractions import Fraction

import pytest

from scaledyn import build_okamoto

OKAMOTO_PARAMS = [Fraction(1, 4), Fraction(1, 3), Fraction(1, 2),
                  Fraction(2, 3), Fraction(5, 6)]


@pytest.fixture(scope="session")
def okamoto_depth8():
    """One depth-8 Okamoto function per canonical parameter, built once."""
    return {a: build_okamoto(a, 8) for a in OKAMOTO_PARAMS}
