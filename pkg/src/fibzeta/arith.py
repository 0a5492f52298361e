"""Extended-precision real arithmetic substrate.

Every numeric value in the package is a ``Real``: an mpmath ``mpf`` owned by
a per-precision context.  Contexts are created once per precision and never
mutated afterwards, so there is no shared global precision knob; a value
carries its working precision with it.  Other modules only use the functions
below plus ordinary operators on ``Real`` values, which keeps the backend
swappable.

Precision ``P`` is always given in decimal digits.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from typing import Union

from mpmath.ctx_mp import MPContext
from mpmath.ctx_mp_python import _mpf
from mpmath.libmp import from_rational

from fibzeta.errors import DomainError, PoleError

Real = _mpf
Number = Union[int, Fraction, _mpf]

DEFAULT_PRECISION = 50
MIN_PRECISION = 30
# Extra digits carried inside kernels; results are rounded back to P.
GUARD = 10


@lru_cache(maxsize=None)
def context(P: int) -> MPContext:
    """Return the (shared, never-mutated) arithmetic context for ``P`` digits."""
    if P < 5:
        raise DomainError(f"precision must be at least 5 digits, got {P}")
    ctx = MPContext()
    ctx.dps = P
    return ctx


def _check_precision(P: int) -> None:
    if P < MIN_PRECISION:
        raise DomainError(f"precision P={P} is below the minimum of {MIN_PRECISION}")


def is_real(x: object) -> bool:
    return isinstance(x, _mpf)


def real_from_rational(p: int, q: int, P: int) -> Real:
    """``p/q`` correctly rounded to ``P`` digits."""
    if q == 0:
        raise DomainError("zero denominator")
    if q < 0:
        p, q = -p, -q
    ctx = context(P)
    return ctx.make_mpf(from_rational(p, q, ctx.prec, "n"))


def real(x: Number | str, P: int) -> Real:
    """Convert an int, Fraction, decimal string or Real to a Real at ``P`` digits."""
    if isinstance(x, bool):
        x = int(x)
    if isinstance(x, int):
        return real_from_rational(x, 1, P)
    if isinstance(x, Fraction):
        return real_from_rational(x.numerator, x.denominator, P)
    if isinstance(x, (_mpf, str)):
        return context(P).mpf(x)
    raise TypeError(f"cannot convert {type(x).__name__} to Real")


def rounded(x: Real, P: int) -> Real:
    """Round ``x`` (possibly from a wider context) to ``P`` digits."""
    return context(P).mpf(x)


def tolerance(exponent: int, P: int) -> Real:
    """``10**(-exponent)`` as a Real."""
    return context(P).mpf(10) ** (-exponent)


def const_pi(P: int) -> Real:
    _check_precision(P)
    return +context(P).pi


@lru_cache(maxsize=None)
def const_sqrt5(P: int) -> Real:
    _check_precision(P)
    ctx = context(P)
    return ctx.sqrt(ctx.mpf(5))


def const_euler_gamma(P: int) -> Real:
    """Euler's constant computed as ``-psi(1)`` through the digamma kernel."""
    _check_precision(P)
    from fibzeta.specfun import polygamma

    return -polygamma(0, 1, P)


def ln(x: Real | Number, P: int) -> Real:
    ctx = context(P)
    return ctx.ln(real(x, P))


def _cot_pi_fraction_part(t: Real, P: int) -> Real:
    # t in (0, 1); fold (1/2, 1) onto (0, 1/2) so the small distance to the
    # nearest pole is formed exactly before multiplying by pi.
    ctx = context(P)
    if t > 0.5:
        return -ctx.cot(ctx.pi * (1 - t))
    return ctx.cot(ctx.pi * t)


def cot_pi(x, P: int) -> Real:
    """``cot(pi*x)`` for a QS5/rational point or a Real.

    QS5 and rational arguments are reduced modulo 1 exactly; Real arguments
    are reduced numerically and rejected when within ``10**(5-P)`` of an
    integer.
    """
    from fibzeta.qsqrt5 import QS5, as_qs5

    if isinstance(x, (int, Fraction)):
        x = as_qs5(x)
    if isinstance(x, QS5):
        if x.is_integer():
            raise PoleError(f"cot(pi*x) has a pole at integer x={x}")
        frac = x - x.floor()
        wide = P + GUARD
        if frac > Fraction(1, 2):
            val = -context(wide).cot(const_pi(wide) * (1 - frac).to_real(wide))
        else:
            val = context(wide).cot(const_pi(wide) * frac.to_real(wide))
        return rounded(val, P)
    if isinstance(x, _mpf):
        wide = P + GUARD
        ctx = context(wide)
        xw = ctx.mpf(x)
        t = xw - ctx.floor(xw)
        gap = min(t, 1 - t)
        if gap <= ctx.mpf(10) ** (5 - P):
            raise PoleError(f"cot(pi*x) too close to a pole at x={context(P).nstr(x, 15)}")
        return rounded(_cot_pi_fraction_part(t, wide), P)
    raise TypeError(f"unsupported argument type {type(x).__name__}")


def nstr(x: Real, P: int) -> str:
    """Locale-free decimal rendering carrying ``P`` significant digits."""
    return context(P).nstr(context(P).mpf(x), P, strip_zeros=False)


def digits_of(x: Real) -> int:
    """Decimal precision of the context that owns ``x``."""
    return x.context.dps


def log10_abs(x: Real) -> float:
    """Approximate ``log10|x|`` as a float; ``-inf`` for zero."""
    if not x:
        return -math.inf
    man, exp = x.man_exp
    return math.log10(abs(man)) + exp * math.log10(2)
