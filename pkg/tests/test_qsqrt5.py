from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from fibzeta import arith
from fibzeta.errors import DomainError
from fibzeta.qsqrt5 import (
    ALPHA, BETA, SQRT5, QS5, alpha_pow, beta_pow, compare, fib, floor, format_qs5, lucas, parse_qs5,
)
from fibzeta.series import converges

rationals = st.fractions(min_value=-50, max_value=50, max_denominator=60)
qs5s = st.builds(QS5, rationals, rationals)


@given(qs5s, qs5s, qs5s)
def test_field_axioms(x, y, w):
    assert (x + y) + w == x + (y + w)
    assert (x * y) * w == x * (y * w)
    assert x * (y + w) == x * y + x * w
    assert x - x == QS5(0)
    if x:
        assert x * x.inverse() == QS5(1)
        assert (y / x) * x == y


@given(qs5s, qs5s)
def test_norm_multiplicative_and_conj(x, y):
    assert (x * y).norm() == x.norm() * y.norm()
    assert x * x.conj() == QS5(x.norm())
    assert (x * y).conj() == x.conj() * y.conj()


@given(qs5s, qs5s)
def test_order_matches_numerics(x, y):
    c = compare(x, y)
    d = x.to_real(60) - y.to_real(60)
    if c == 0:
        assert x == y
    else:
        assert (d > 0) == (c > 0)


@given(qs5s)
def test_floor_agrees_with_high_precision(x):
    f = floor(x)
    assert QS5(f) <= x < QS5(f + 1)
    from mpmath import mp
    with mp.workdps(80):
        assert int(mp.floor(x.to_real(80))) == f


def test_floor_near_integer():
    # (alpha^40 + beta^40) is the integer L_40, alpha^40 sits just below it
    x = alpha_pow(40)
    assert floor(x) == lucas(40) - 1
    assert floor(beta_pow(40)) == 0
    assert floor(-alpha_pow(41)) == -lucas(41) - 1


def test_to_real_cancellation():
    # alpha^60 - L_60 = -beta^60, about 3e-13; needs the conjugate route
    x = alpha_pow(60) - lucas(60)
    got = x.to_real(50)
    want = -beta_pow(60).to_real(50)
    assert abs(got / want - 1) < arith.tolerance(48, 50)


@pytest.mark.parametrize("n", range(-40, 41))
def test_binet_and_lucas_identities(n):
    assert alpha_pow(n) - beta_pow(n) == SQRT5 * fib(n)
    assert alpha_pow(n) + beta_pow(n) == QS5(lucas(n))
    assert lucas(n) ** 2 - 5 * fib(n) ** 2 == 4 * (-1) ** n
    assert alpha_pow(n).norm() == (-1) ** n
    assert fib(n + 1) == fib(n) + fib(n - 1)
    assert lucas(n) == fib(n - 1) + fib(n + 1)
    assert fib(-n) == (-1) ** (n + 1) * fib(n)


def test_known_values():
    assert [fib(n) for n in range(12)] == [0, 1, 1, 2, 3, 5, 8, 13, 21, 34, 55, 89]
    assert [lucas(n) for n in range(8)] == [2, 1, 3, 4, 7, 11, 18, 29]
    assert fib(300) == 222232244629420445529739893461909967206666939096499764990979600
    assert ALPHA + BETA == QS5(1) and ALPHA * BETA == QS5(-1)


@pytest.mark.parametrize("r", range(1, 11))
def test_convergence_parity_law(r):
    ok, ratio = converges(r, Fraction(1, lucas(r)))
    assert ok == (r % 2 == 0)
    # alpha^r / L_r = 1/(1 + beta^r/alpha^r) with beta^r/alpha^r = (-1)^r alpha^-2r
    assert ratio == alpha_pow(r) / lucas(r)


def test_parse_and_format():
    assert parse_qs5("3/4") == QS5(Fraction(3, 4))
    assert parse_qs5("1, 1/2") == QS5(1, Fraction(1, 2))
    with pytest.raises(DomainError):
        parse_qs5("x")
    assert format_qs5(alpha_pow(3) / 2) == "(2+sqrt5)/2"
    assert format_qs5(BETA) == "(1-sqrt5)/2"
    assert format_qs5(-SQRT5) == "-sqrt5"
    assert format_qs5(QS5(Fraction(3, 7))) == "3/7"


def test_division_by_zero():
    with pytest.raises((ZeroDivisionError, DomainError)):
        QS5(1) / QS5(0)
