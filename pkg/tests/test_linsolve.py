from fractions import Fraction

import pytest
import sympy
from hypothesis import given, strategies as st

from pdsreduce.pctl import SingularSystemError, solve_sparse

entries = st.fractions(min_value=-3, max_value=3, max_denominator=5)


@st.composite
def systems(draw):
    # strictly diagonally dominant, hence nonsingular; rows shuffled so pivots must be searched for
    n = draw(st.integers(1, 6))
    small = st.fractions(min_value=-1, max_value=1, max_denominator=5)
    rows = []
    for i in range(n):
        cols = draw(st.lists(st.integers(0, n - 1), max_size=n, unique=True))
        row = {c: draw(small) for c in cols if c != i}
        row[i] = draw(st.sampled_from([-1, 1])) * draw(st.fractions(min_value=n, max_value=2 * n, max_denominator=3))
        rows.append(row)
    order = draw(st.permutations(range(n)))
    rhs = [draw(entries) for _ in range(n)]
    return [rows[i] for i in order], [rhs[i] for i in order]


def _dense(rows, n):
    return sympy.Matrix([[sympy.Rational(r.get(c, 0).numerator, r.get(c, 0).denominator) if c in r else 0
                          for c in range(n)] for r in rows])


@given(systems())
def test_matches_sympy(system):
    rows, rhs = system
    n = len(rows)
    a = _dense(rows, n)
    assert a.det() != 0
    b = sympy.Matrix([sympy.Rational(x.numerator, x.denominator) for x in rhs])
    expected = a.LUsolve(b)
    got = solve_sparse(rows, rhs)
    assert [sympy.Rational(x.numerator, x.denominator) for x in got] == list(expected)


def test_singular():
    with pytest.raises(SingularSystemError):
        solve_sparse([{0: Fraction(1), 1: Fraction(1)}, {0: Fraction(2), 1: Fraction(2)}], [Fraction(1), Fraction(2)])


def test_shape_checks():
    with pytest.raises(ValueError):
        solve_sparse([{0: Fraction(1)}], [])
    with pytest.raises(ValueError):
        solve_sparse([{3: Fraction(1)}], [Fraction(1)])


def test_absorption_chain():
    # x0 = 1/2 x1 + 1/2, x1 = 1/2 x0  ->  x0 = 2/3, x1 = 1/3
    rows = [{0: Fraction(1), 1: Fraction(-1, 2)}, {1: Fraction(1), 0: Fraction(-1, 2)}]
    assert solve_sparse(rows, [Fraction(1, 2), Fraction(0)]) == [Fraction(2, 3), Fraction(1, 3)]
