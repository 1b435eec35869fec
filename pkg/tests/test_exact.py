from fractions import Fraction

import pytest
from hypothesis import assume, given, strategies as st

from difflab.exact import identity, matmul, matvec, nullspace, rref, solve

small = st.integers(-5, 5)


def square(n):
    return st.lists(st.lists(small, min_size=n, max_size=n), min_size=n, max_size=n)


def test_rref_and_pivots():
    m, piv = rref([[1, 2, 3], [2, 4, 6], [1, 0, 1]])
    assert piv == [0, 1]
    assert m[0] == [1, 0, 1] and m[1] == [0, 1, 1] and m[2] == [0, 0, 0]


def test_solve_singular():
    with pytest.raises(ValueError, match="singular"):
        solve([[1, 2], [2, 4]], [1, 2])


@given(st.integers(1, 4).flatmap(square), st.lists(small, min_size=4, max_size=4))
def test_solve_round_trip(a, b):
    n = len(a)
    _, piv = rref(a)
    assume(len(piv) == n)
    x = solve(a, b[:n])
    assert matvec(a, x) == [Fraction(v) for v in b[:n]]


@given(st.integers(1, 4).flatmap(lambda n: st.lists(st.lists(small, min_size=n, max_size=n), min_size=1, max_size=4)))
def test_nullspace_vectors_vanish(rows):
    ns = nullspace(rows)
    _, piv = rref(rows)
    assert len(ns) + len(piv) == len(rows[0])
    for v in ns:
        assert all(x == 0 for x in matvec(rows, v))


@given(st.integers(1, 4).flatmap(square))
def test_identity_is_neutral(a):
    n = len(a)
    assert matmul(a, identity(n)) == matmul(identity(n), a) == [[Fraction(x) for x in row] for row in a]
