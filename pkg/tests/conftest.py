import random

import pytest
import sympy

from nullcones.exact import Matrix, gr


def mat(rows):
    """Matrix from nested lists of ints, Fractions, complex ints or scalar strings."""
    return Matrix.from_rows([[gr(x) for x in r] for r in rows])


@pytest.fixture
def rng():
    return random.Random("tests")


def to_sympy(m: Matrix) -> sympy.Matrix:
    return sympy.Matrix(m.rows, m.cols,
                        [sympy.Rational(x.re.numerator, x.re.denominator)
                         + sympy.I * sympy.Rational(x.im.numerator, x.im.denominator)
                         for x in m.entries])
