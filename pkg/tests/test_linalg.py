from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qcsolve import linalg

small = st.integers(min_value=-4, max_value=4)


def test_inverse_of_antidiagonal():
    g = [[0, 0, 1], [0, 1, 0], [1, 0, 0]]
    assert linalg.inverse(g) == [[Fraction(x) for x in row] for row in g]


def test_singular_inverse_raises():
    with pytest.raises(ZeroDivisionError):
        linalg.inverse([[1, 2], [2, 4]])


def test_nullspace_and_primitive():
    ker = linalg.nullspace([[1, 1, 0]], 3)
    assert len(ker) == 2
    for v in ker:
        assert linalg.dot([1, 1, 0], v) == 0
    assert linalg.primitive([Fraction(2, 3), Fraction(-4, 3)]) == (1, -2)


@settings(max_examples=60, deadline=None)
@given(st.lists(st.lists(small, min_size=3, max_size=3), min_size=3, max_size=3))
def test_inverse_roundtrip(m):
    if linalg.rank(m) < 3:
        return
    inv = linalg.inverse(m)
    prod = [[sum(Fraction(m[i][k]) * inv[k][j] for k in range(3)) for j in range(3)]
            for i in range(3)]
    assert prod == [[Fraction(int(i == j)) for j in range(3)] for i in range(3)]
