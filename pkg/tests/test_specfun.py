import math
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, strategies as st

from fibzeta import arith
from fibzeta.errors import DomainError, PoleError
from fibzeta.qsqrt5 import ALPHA, QS5
from fibzeta.specfun import (
    bernoulli, cot_deriv, cot_deriv_poly, inject_fault, polygamma, zeta_int,
)

P = 50


def test_bernoulli_known():
    assert bernoulli(0) == 1
    assert bernoulli(1) == Fraction(-1, 2)
    assert bernoulli(2) == Fraction(1, 6)
    assert bernoulli(12) == Fraction(-691, 2730)
    assert all(bernoulli(n) == 0 for n in range(3, 40, 2))


@pytest.mark.parametrize("n", [4, 10, 30, 60, 101, 120])
def test_bernoulli_against_mpmath(n):
    assert bernoulli(n) == Fraction(*map(int, mpmath.bernfrac(n)))


def test_bernoulli_fault_is_scoped():
    with inject_fault("bernoulli_sign"):
        assert bernoulli(2) == Fraction(-1, 6)
    assert bernoulli(2) == Fraction(1, 6)
    with pytest.raises(DomainError):
        with inject_fault("nope"):
            pass


def zeta3_oracle(digits: int) -> tuple[Fraction, Fraction]:
    """Integer fixed-point partial sum plus an integral enclosure of the tail."""
    N = 10 ** 4
    scale = 10 ** (digits + 8)
    head = sum(scale // (n ** 3) for n in range(1, N))
    # sum_{n>=N} n^-3 lies in [1/(2N^2), 1/(2(N-1)^2)]
    lo = Fraction(head - N, scale) + Fraction(1, 2 * N * N)
    hi = Fraction(head, scale) + Fraction(1, 2 * (N - 1) ** 2)
    return lo, hi


def test_zeta3_brute_force_enclosure():
    lo, hi = zeta3_oracle(40)
    z = zeta_int(3, P)
    assert arith.real(lo, 60) <= z <= arith.real(hi, 60)


def test_zeta_even_closed_forms():
    pi = arith.const_pi(P + 10)
    assert abs(zeta_int(2, P) - pi**2 / 6) < arith.tolerance(P - 2, P)
    assert abs(zeta_int(4, P) - pi**4 / 90) < arith.tolerance(P - 2, P)
    # zeta(2k) = (-1)^(k+1) B_2k (2 pi)^2k / (2 (2k)!)
    for k in (6, 13, 25):
        want = abs(arith.real(bernoulli(2 * k), P + 10)) * (2 * pi) ** (2 * k) / (2 * math.factorial(2 * k))
        assert abs(zeta_int(2 * k, P) - want) < arith.tolerance(P - 2, P)


@pytest.mark.parametrize("k", [3, 5, 7, 11, 40, 170])
def test_zeta_against_mpmath(k):
    with mpmath.workdps(P + 10):
        assert abs(zeta_int(k, P) - mpmath.zeta(k)) < arith.tolerance(P - 1, P)


def test_zeta_domain():
    with pytest.raises(DomainError):
        zeta_int(1, P)


def test_cot_deriv_poly_low_orders():
    assert cot_deriv_poly(0).coeffs == (0, 1)
    assert cot_deriv_poly(1).coeffs == (-1, 0, -1)
    assert cot_deriv_poly(2).coeffs == (0, 2, 0, 2)
    assert cot_deriv_poly(3).coeffs == (-2, 0, -8, 0, -6)
    for m in range(8):
        assert cot_deriv_poly(m).degree == m + 1


@pytest.mark.parametrize("m", range(0, 6))
def test_cot_deriv_against_numeric_differentiation(m):
    x = Fraction(3, 11)
    with mpmath.workdps(40):
        want = mpmath.diff(lambda t: mpmath.cot(mpmath.pi * t), mpmath.mpf(3) / 11, m)
        got = cot_deriv(m, x, 30)
        assert abs(got - want) < mpmath.mpf(10) ** -20 * max(1, abs(want))


def hurwitz_enclosure(m: int, x, K: int = 2000, dps: int = 40):
    """psi^(m)(x) = (-1)^(m+1) m! sum_{k>=0} (x+k)^-(m+1).

    The tail over k > K lies between the integrals from K+1 and from K,
    i.e. in [1/(m (x+K+1)^m), 1/(m (x+K)^m)].
    """
    with mpmath.workdps(dps):
        xs = mpmath.mpf(x)
        head = mpmath.fsum((xs + k) ** (-(m + 1)) for k in range(K + 1))
        lo = head + 1 / (m * (xs + K + 1) ** m)
        hi = head + 1 / (m * (xs + K) ** m)
        c = (-1) ** (m + 1) * math.factorial(m)
        return sorted((c * lo, c * hi))


@pytest.mark.parametrize("m", [1, 2, 3, 4])
@pytest.mark.parametrize("x", [Fraction(3, 10), Fraction(17, 10), ALPHA], ids=["0.3", "1.7", "alpha"])
def test_polygamma_within_hurwitz_enclosure(m, x):
    xr = x.to_real(40) if isinstance(x, QS5) else arith.real(x, 40)
    lo, hi = hurwitz_enclosure(m, xr)
    v = polygamma(m, x, 40)
    assert lo <= v <= hi
    assert hi - lo < mpmath.mpf(10) ** -5


def test_digamma_and_trigamma_at_one():
    with mpmath.workdps(P + 10):
        assert abs(polygamma(0, 1, P) + mpmath.euler) < arith.tolerance(38, P)
        assert abs(polygamma(1, 1, P) - mpmath.pi**2 / 6) < arith.tolerance(38, P)


def test_frozen_values():
    # computed once with mpmath.psi at 70 digits
    x = QS5(Fraction(1, 3), Fraction(1, 7))
    want3 = "34.0311301855810304374752920040909633883979218874725543815101"
    want0 = "2.86033701278484009902623061192631544955720937994375108280571"
    assert abs(polygamma(3, x, P) - arith.real(want3, 70)) < arith.tolerance(46, 70)
    assert abs(polygamma(0, Fraction(-7, 3), P) - arith.real(want0, 70)) < arith.tolerance(48, 70)


@pytest.mark.parametrize("x", [0, -1, -5, QS5(-3), Fraction(-2)])
def test_polygamma_poles(x):
    with pytest.raises(PoleError):
        polygamma(1, x, 40)


@given(st.integers(0, 5), st.fractions(min_value=Fraction(-9, 2), max_value=9, max_denominator=50))
def test_polygamma_recurrence(m, q):
    if q.denominator == 1 and q <= 0:
        return
    Pp = 40
    lhs = polygamma(m, q + 1, Pp)
    rhs = polygamma(m, q, Pp) + (-1) ** m * math.factorial(m) * arith.real(q, Pp + 10) ** (-(m + 1))
    assert abs(lhs - rhs) < arith.tolerance(Pp - 8, Pp) * max(1, abs(rhs), abs(lhs))


@given(st.integers(0, 4), st.fractions(min_value=Fraction(1, 30), max_value=20, max_denominator=30))
def test_polygamma_matches_mpmath(m, q):
    Pp = 40
    with mpmath.workdps(Pp + 10):
        want = mpmath.psi(m, mpmath.mpf(q.numerator) / q.denominator)
        assert abs(polygamma(m, q, Pp) - want) < mpmath.mpf(10) ** (8 - Pp) * max(1, abs(want))


def test_polygamma_real_argument_and_precision_retention():
    x = arith.real(Fraction(5, 4), 60)
    assert arith.digits_of(polygamma(2, x, 60)) == 60
