from fractions import Fraction

import mpmath
import pytest

from fibzeta import arith
from fibzeta.closedform import (
    CotDerivAt, FactorialAtom, FibAtom, LucasAtom, PiPow, Scalar,
    constant_part, cot_csc2, csc2, pi_cot_deriv, same_normal_form, sec2, tan_sec2,
)
from fibzeta.errors import PoleError
from fibzeta.qsqrt5 import QS5, SQRT5

P = 50


def mp_close(got, want, digits=45):
    return abs(got - want) < mpmath.mpf(10) ** -digits * max(1, abs(want))


@pytest.mark.parametrize("t", [SQRT5 / 2, SQRT5 / 6, 3 * SQRT5 / 14, QS5(Fraction(2, 7))])
def test_trig_helpers_against_mpmath(t):
    with mpmath.workdps(70):
        x = mpmath.pi * t.to_real(70)
        assert mp_close(csc2(t).evaluate(P), mpmath.csc(x) ** 2)
        assert mp_close(sec2(t).evaluate(P), mpmath.sec(x) ** 2)
        assert mp_close(cot_csc2(t).evaluate(P), mpmath.cot(x) * mpmath.csc(x) ** 2)
        assert mp_close(tan_sec2(t).evaluate(P), mpmath.tan(x) * mpmath.sec(x) ** 2)


def test_atoms():
    assert FibAtom(10).evaluate(P) == 55
    assert LucasAtom(5).evaluate(P) == 11
    assert FactorialAtom(5).evaluate(P) == 120
    assert abs(PiPow(-2).evaluate(P) * arith.const_pi(P) ** 2 - 1) < arith.tolerance(48, P)


@pytest.mark.parametrize("arg", [0, 3, QS5(-2), Fraction(5)])
def test_cot_atom_rejects_integers(arg):
    with pytest.raises(PoleError):
        CotDerivAt(1, arg)


def test_arithmetic_and_normal_form():
    e = 16 * FibAtom(9) + Scalar(Fraction(16, 25)) - 3
    assert constant_part(e) == QS5(Fraction(13616, 25) - 3)
    assert abs(e.evaluate(P) - arith.real(Fraction(13616, 25) - 3, P)) < arith.tolerance(45, P)
    # cot atoms are identified modulo 1
    a = pi_cot_deriv(2, SQRT5 / 2)
    b = pi_cot_deriv(2, SQRT5 / 2 + 5)
    assert same_normal_form(a, b)
    assert not same_normal_form(a, pi_cot_deriv(1, SQRT5 / 2))
    assert (a - b).normal_form() == {}


def test_printed_shape_equals_derivative_shape():
    # pi^2 sec^2(pi t) = -pi D^1 cot at 1/2 - t
    t = 3 * SQRT5 / 14
    assert same_normal_form(PiPow(2) * sec2(t), -pi_cot_deriv(1, Fraction(1, 2) - t))
    # (2/sqrt5) pi^3 cot csc^2 = (1/sqrt5) pi D^2 cot
    lhs = Scalar(2 / SQRT5) * PiPow(3) * cot_csc2(SQRT5 / 2)
    assert same_normal_form(lhs, Scalar(1 / SQRT5) * pi_cot_deriv(2, SQRT5 / 2))


def test_relative_accuracy_near_pole():
    # cot-derivative atom at a point 1e-20 from an integer still evaluates to P digits
    t = QS5(Fraction(1, 10**20))
    got = CotDerivAt(1, t).evaluate(P)
    with mpmath.workdps(100):
        x = mpmath.pi / mpmath.mpf(10) ** 20
        want = -mpmath.pi * mpmath.csc(x) ** 2
        assert abs(got / want - 1) < mpmath.mpf(10) ** (12 - P)


def test_render_is_text():
    s = (PiPow(2) * sec2(SQRT5 / 2) - 3).render()
    assert "D1cot" in s and "pi" in s
