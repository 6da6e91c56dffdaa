from fractions import Fraction

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from hodge_forge.linalg import Echelon, in_span, inverse, nullspace, rank, rref, solve

from oracles import qq_rank

small = st.integers(-3, 3)


def matrices(max_rows=5, max_cols=5):
    return st.integers(1, max_rows).flatmap(
        lambda m: st.integers(1, max_cols).flatmap(
            lambda n: st.lists(st.lists(small.map(Fraction), min_size=n, max_size=n), min_size=m, max_size=m)))


def test_rref_known():
    rows, piv = rref([[2, 4], [1, 3]])
    assert piv == [0, 1]
    assert rows == [[1, 0], [0, 1]]


def test_rref_prefers_smallest_pivots():
    _, piv = rref([[0, 1, 1], [0, 2, 2]])
    assert piv == [1]


@given(matrices())
def test_rref_matches_sympy(a):
    rows, piv = rref(a)
    ref, ref_piv = sympy.Matrix(a).rref()
    assert tuple(piv) == ref_piv
    for r, row in enumerate(rows):
        assert [sympy.Rational(x.numerator, x.denominator) for x in row] == list(ref.row(r))


@given(matrices())
def test_rank_matches_oracle(a):
    assert rank(a) == qq_rank(a, len(a[0]))


@given(matrices())
def test_nullspace_is_kernel(a):
    n = len(a[0])
    ker = nullspace(a, n)
    assert len(ker) == n - rank(a)
    for v in ker:
        assert all(sum(x * y for x, y in zip(row, v)) == 0 for row in a)
    if ker:
        assert rank(ker) == len(ker)


@given(matrices(), st.lists(small, min_size=5, max_size=5))
def test_solve(a, x0):
    n = len(a[0])
    x0 = [Fraction(x) for x in x0[:n]]
    b = [sum(r * x for r, x in zip(row, x0)) for row in a]
    x = solve(a, b, n)
    assert x is not None
    assert [sum(r * t for r, t in zip(row, x)) for row in a] == b


def test_solve_inconsistent():
    assert solve([[1, 1], [2, 2]], [1, 3], 2) is None


def test_inverse():
    a = [[Fraction(2), Fraction(1)], [Fraction(1), Fraction(1)]]
    inv = inverse(a)
    assert inv == [[1, -1], [-1, 2]]
    with pytest.raises(ZeroDivisionError):
        inverse([[Fraction(1), Fraction(2)], [Fraction(2), Fraction(4)]])


def test_in_span():
    assert in_span([[1, 0, 0]], [0, 0, 0])
    assert in_span([[1, 1, 0]], [2, 2, 0])
    assert not in_span([[1, 1, 0]], [1, 0, 0])
    assert not in_span([], [1])


@given(matrices(6, 6))
def test_echelon_rank_and_canonical_reduction(a):
    e = Echelon()
    for row in a:
        e.add({c: x for c, x in enumerate(row) if x})
    assert len(e) == rank(a)
    for row in a:
        assert e.reduce({c: x for c, x in enumerate(row) if x}) == {}
    # a vector and the same vector plus a row-space element reduce identically
    v = {0: Fraction(1), len(a[0]) - 1: Fraction(2)}
    w = dict(v)
    for c, x in enumerate(a[0]):
        w[c] = w.get(c, 0) + 3 * x
    assert e.reduce(v) == e.reduce({c: x for c, x in w.items() if x})
    assert all(c not in e.pivots for c in e.reduce(v))
