"""Direct summation of the Fibonacci/Lucas zeta series

    F:  sum_{j>=1} (-1)^(j+1) (m+j)!/j! zeta(m+j+1) F_{rj} z^j
    L:  sum_{j>=0} (-1)^j     (m+j)!/j! zeta(m+j+1) L_{rj} z^j

with exact convergence classification and a rigorous geometric tail bound.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Literal

from fibzeta import arith
from fibzeta.errors import TruncationError, UsageError
from fibzeta.qsqrt5 import QS5, alpha_pow, beta_pow, fib, lucas
from fibzeta.specfun import zeta_int

Kind = Literal["F", "L"]
DEFAULT_MAX_TERMS = 20000


@dataclass(frozen=True)
class SeriesSpec:
    kind: Kind
    m: int
    r: int
    z: Fraction

    def __post_init__(self) -> None:
        if self.kind not in ("F", "L"):
            raise UsageError(f"series kind must be 'F' or 'L', got {self.kind!r}")
        if not isinstance(self.m, int) or self.m < 0:
            raise UsageError(f"m must be a non-negative integer, got {self.m!r}")
        if self.kind == "L" and self.m < 1:
            raise UsageError("the Lucas series needs m >= 1")
        object.__setattr__(self, "z", Fraction(self.z))

    @property
    def start(self) -> int:
        return 1 if self.kind == "F" else 0


@dataclass
class SumResult:
    value: arith.Real | None
    terms_used: int
    tail_bound: arith.Real | None
    classification: Literal["convergent", "divergent"]
    ratio: QS5 = field(default_factory=QS5)


def converges(r: int, z) -> tuple[bool, QS5]:
    """Exact test of ``alpha^|r| * |z| < 1``; also returns that ratio.

    ``alpha^|r|`` dominates ``|beta^r|`` and ``|alpha^r|`` for every sign of r,
    so this is the Taylor-disc condition for both golden-ratio arguments.
    """
    ratio = alpha_pow(abs(r)) * abs(Fraction(z))
    return ratio < 1, ratio


def _upper(x: QS5, bits: int = 96) -> Fraction:
    return x.bounds(bits)[1]


def _ratio_bound_factory(spec: SeriesSpec):
    """Return ``q(J)``: an exact rational bound on ``|t_{j+1}/t_j|`` for all j >= J.

    |t_{j+1}/t_j| = (m+j+1)/(j+1) * zeta(m+j+2)/zeta(m+j+1) * |X_{r(j+1)}/X_{rj}| * |z|
    where zeta is decreasing (ratio <= 1) and, with rho = alpha^-2,
    |X_{n+|r|}/X_n| <= alpha^|r| (1 + rho^n)/(1 - rho^n) for n = |r| j.
    """
    ra = abs(spec.r)
    az = abs(spec.z)
    if ra == 0:
        return lambda J: Fraction(spec.m + J + 1, J + 1) * az
    growth = _upper(alpha_pow(ra))
    # alpha^-2 = 0.3819... <= 2/5; exponent capped to keep fractions small,
    # which only loosens the bound
    rho = Fraction(2, 5)

    def q(J: int) -> Fraction | None:
        if J < 1:
            return None
        rn = rho ** min(ra * J, 160)
        if rn >= 1:
            return None
        return Fraction(spec.m + J + 1, J + 1) * growth * az * (1 + rn) / (1 - rn)

    return q


def _fraction_to_real(num: int, den: int, P: int) -> arith.Real:
    return arith.real_from_rational(num, den, P)


def sum_series(
    spec: SeriesSpec,
    P: int,
    tol: arith.Real,
    max_terms: int = DEFAULT_MAX_TERMS,
) -> SumResult:
    """Sum the series until the geometric tail bound drops below ``tol``.

    All integer factors, ``(m+j)!/j!``, ``F_{rj}`` or ``L_{rj}`` and ``z**j``,
    are exact; only ``zeta`` and the final division are rounded.
    """
    ok, ratio = converges(spec.r, spec.z)
    if not ok:
        return SumResult(None, 0, None, "divergent", ratio)

    wide = P + arith.GUARD
    ctx = arith.context(wide)
    tol_w = ctx.mpf(tol)
    m, r = spec.m, spec.r
    p, q = spec.z.numerator, spec.z.denominator
    q_of = _ratio_bound_factory(spec)

    # X_j = F_{rj} or L_{rj}; X_{j+1} = L_r X_j - (-1)^r X_{j-1}
    lr = lucas(r)
    sr = -1 if r % 2 else 1
    if spec.kind == "F":
        x_prev, x_cur = 0, fib(r)
        sgn = 1  # (-1)^(j+1) at j = 1
    else:
        x_prev, x_cur = lucas(-r), 2  # X_{-1} keeps the recurrence valid at j = 0
        sgn = 1
    j = spec.start
    rising = math.factorial(m + j) // math.factorial(j)
    pj, qj = p**j, q**j

    total = ctx.mpf(0)
    tail = None
    used = 0
    while True:
        coeff_num = sgn * rising * x_cur * pj
        term = _fraction_to_real(coeff_num, qj, wide) * zeta_int(m + j + 1, wide)
        total += term
        used += 1
        if p == 0 or (r == 0 and spec.kind == "F"):
            # every later term vanishes
            tail = ctx.mpf(0)
            break
        bound = q_of(j)
        if bound is not None and bound < 1:
            bq = _fraction_to_real(bound.numerator, bound.denominator, wide)
            tail = abs(term) * bq / (1 - bq)
            if tail < tol_w:
                break
        if used >= max_terms:
            partial = SumResult(
                arith.rounded(total, P), used,
                None if tail is None else arith.rounded(tail, P), "convergent", ratio,
            )
            raise TruncationError(
                f"series did not reach tolerance within {max_terms} terms", partial
            )
        # advance j -> j+1
        rising = rising * (m + j + 1) // (j + 1)
        x_prev, x_cur = x_cur, lr * x_cur - sr * x_prev
        pj *= p
        qj *= q
        sgn = -sgn
        j += 1

    return SumResult(arith.rounded(total, P), used, arith.rounded(tail, P), "convergent", ratio)


def shifted_polygamma_series(
    m: int, x: arith.Real, P: int, tol: arith.Real, max_terms: int = DEFAULT_MAX_TERMS
) -> tuple[arith.Real, int]:
    """``S(x) = sum_j (-1)^(j+1) (m+j)!/j! zeta(m+j+1) x^j`` for a Real ``|x| < 1``.

    Equals ``(-1)^m psi^(m)(1+x)`` for m >= 1.  For m = 0 the j = 0 term is
    undefined and is left out, so the result is ``psi(1+x) + gamma``.
    Returns ``(value, terms_used)``.
    """
    wide = P + arith.GUARD
    ctx = arith.context(wide)
    xw = ctx.mpf(x)
    ax = abs(xw)
    if ax >= 1:
        raise UsageError("shifted_polygamma_series needs |x| < 1")
    tol_w = ctx.mpf(tol)
    j = 1 if m == 0 else 0
    rising = math.factorial(m + j) // math.factorial(j)
    power = xw**j
    total = ctx.mpf(0)
    for used in range(1, max_terms + 1):
        term = rising * zeta_int(m + j + 1, P) * power
        total += term if j % 2 else -term
        bound = ctx.mpf(m + j + 1) / (j + 1) * ax
        if bound < 1 and abs(term) * bound / (1 - bound) < tol_w:
            return arith.rounded(total, P), used
        rising = rising * (m + j + 1) // (j + 1)
        power *= xw
        j += 1
    raise TruncationError(f"Taylor series at x={ctx.nstr(xw, 10)} did not converge")


def binet_split_sum(spec: SeriesSpec, P: int, tol: arith.Real) -> arith.Real:
    """The same series assembled from two independent Taylor sums at alpha^r z
    and beta^r z (Binet's formula replayed numerically)."""
    ok, _ = converges(spec.r, spec.z)
    if not ok:
        raise UsageError("binet_split_sum needs a convergent spec")

    xa = (alpha_pow(spec.r) * spec.z).to_real(P + arith.GUARD)
    xb = (beta_pow(spec.r) * spec.z).to_real(P + arith.GUARD)
    sa, _ = shifted_polygamma_series(spec.m, xa, P, tol)
    sb, _ = shifted_polygamma_series(spec.m, xb, P, tol)
    if spec.kind == "F":
        return (sa - sb) / arith.const_sqrt5(P)
    return -(sa + sb)
