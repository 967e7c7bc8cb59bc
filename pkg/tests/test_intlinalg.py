from fractions import Fraction
from math import gcd

from hypothesis import assume, given, strategies as st

from nicehf.intlinalg import HermiteSystem, feasible_nonneg, integer_kernel

small = st.integers(-4, 4)


def matrices(max_rows=5, max_cols=7):
    return st.integers(1, max_rows).flatmap(
        lambda m: st.integers(1, max_cols).flatmap(
            lambda n: st.lists(st.lists(small, min_size=n, max_size=n), min_size=m, max_size=m)
        )
    )


def rational_rank(rows):
    a = [[Fraction(x) for x in row] for row in rows]
    r = 0
    ncols = len(a[0]) if a else 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(a)) if a[i][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        for i in range(len(a)):
            if i != r and a[i][c]:
                f = a[i][c] / a[r][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        r += 1
    return r


def apply(rows, v):
    return [sum(a * b for a, b in zip(row, v)) for row in rows]


@given(matrices())
def test_kernel_dimension_and_membership(rows):
    n = len(rows[0])
    ker = integer_kernel(rows, n)
    assert len(ker) == n - rational_rank(rows)
    for v in ker:
        assert not any(apply(rows, v))


@given(matrices(), st.lists(small, min_size=3, max_size=3))
def test_kernel_is_saturated(rows, coefs):
    n = len(rows[0])
    ker = integer_kernel(rows, n)
    assume(ker)
    v = [sum(c * k[i] for c, k in zip(coefs, ker)) for i in range(n)]
    g = 0
    for x in v:
        g = gcd(g, x)
    assume(g)
    v = [x // g for x in v]
    # v / g is an integer kernel vector, so it must be an integer combination
    cols = [[k[i] for k in ker] for i in range(n)]
    assert HermiteSystem(cols, len(ker)).solve(v) is not None


@given(matrices(), st.lists(small, min_size=7, max_size=7))
def test_solve_consistent(rows, x):
    n = len(rows[0])
    x = x[:n]
    b = apply(rows, x)
    c = HermiteSystem(rows, n).solve(b)
    assert c is not None and apply(rows, c) == b


def test_solve_detects_non_integral():
    assert HermiteSystem([[2, 4]], 2).solve([3]) is None
    assert HermiteSystem([[1, 1], [1, 1]], 2).solve([1, 2]) is None


@given(st.lists(st.lists(st.integers(0, 3), min_size=4, max_size=4), min_size=1, max_size=4),
       st.lists(st.integers(0, 3), min_size=4, max_size=4))
def test_feasible_when_constructed(M, z):
    b = apply(M, z)
    sol = feasible_nonneg(M, b)
    assert sol is not None
    assert all(s >= 0 for s in sol)
    assert apply(M, sol) == b


def test_infeasible():
    assert feasible_nonneg([[1, 1]], [-1]) is None
    assert feasible_nonneg([[1, -1], [1, 1]], [2, 0]) is None
    assert feasible_nonneg([[1, 0], [0, 1]], [Fraction(1, 2), 3]) == [Fraction(1, 2), 3]
