"""Bernoulli numbers, integer zeta values, cotangent derivative polynomials
and polygamma functions at extended precision."""

from __future__ import annotations

import contextlib
import math
import threading
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb

from fibzeta import arith
from fibzeta.errors import DomainError, PoleError, PrecisionError
from fibzeta.qsqrt5 import QS5

# Test hook: names of deliberately injected faults (see ``inject_fault``).
_FAULTS: set[str] = set()
KNOWN_FAULTS = ("bernoulli_sign",)

_bernoulli_table: list[Fraction] = [Fraction(1)]
_bernoulli_lock = threading.Lock()


def _extend_bernoulli(n: int) -> None:
    with _bernoulli_lock:
        table = _bernoulli_table
        while len(table) <= n:
            m = len(table)
            if m >= 3 and m % 2:
                table.append(Fraction(0))
                continue
            # sum_{j=0}^{m} C(m+1, j) B_j = 0, solved for B_m
            s = sum(comb(m + 1, j) * table[j] for j in range(m))
            table.append(-s / (m + 1))


def bernoulli(n: int) -> Fraction:
    """Exact ``B_n`` with the ``B_1 = -1/2`` convention (memoized)."""
    if n < 0:
        raise DomainError(f"bernoulli index must be >= 0, got {n}")
    if n >= len(_bernoulli_table):
        _extend_bernoulli(n)
    value = _bernoulli_table[n]
    if n == 2 and "bernoulli_sign" in _FAULTS:
        return -value
    return value


@contextlib.contextmanager
def inject_fault(name: str):
    """Temporarily corrupt a kernel input; used to prove the checks can fail."""
    if name not in KNOWN_FAULTS:
        raise DomainError(f"unknown fault {name!r}")
    _FAULTS.add(name)
    _zeta_cached.cache_clear()
    try:
        yield
    finally:
        _FAULTS.discard(name)
        _zeta_cached.cache_clear()


def enable_fault(name: str) -> None:
    """Process-wide variant of ``inject_fault`` for worker initializers."""
    if name not in KNOWN_FAULTS:
        raise DomainError(f"unknown fault {name!r}")
    _FAULTS.add(name)
    _zeta_cached.cache_clear()


# -- zeta at integers --------------------------------------------------------


def _direct_cutoff(k: int, digits: int) -> int | None:
    # smallest N <= 64 with sum_{n>=N} n^-k <= N^-k (1 + N/(k-1)) < 10^-digits
    for N in range(2, 65):
        bound = -k * math.log10(N) + math.log10(1 + N / (k - 1))
        if bound < -digits:
            return N
    return None


@lru_cache(maxsize=None)
def _zeta_cached(k: int, P: int) -> arith.Real:
    wide = P + arith.GUARD
    ctx = arith.context(wide)
    N = _direct_cutoff(k, wide + 1)
    if N is not None:
        s = ctx.mpf(0)
        for n in range(N - 1, 0, -1):
            s += ctx.mpf(n) ** (-k)
        return arith.rounded(s, P)

    eps = ctx.mpf(10) ** (-wide - 2)
    N = max(20, k) + wide // 2
    for _ in range(4):
        head = ctx.mpf(0)
        for n in range(N - 1, 0, -1):
            head += ctx.mpf(n) ** (-k)
        Nr = ctx.mpf(N)
        npow = Nr ** (-k)
        tail = Nr * npow / (k - 1) + npow / 2
        # Euler-Maclaurin corrections B_2j/(2j)! * k(k+1)...(k+2j-2) * N^(-k-2j+1)
        rising = k
        npow = npow / Nr
        inv_n2 = 1 / (Nr * Nr)
        prev = None
        converged = False
        for j in range(1, 400):
            coeff = bernoulli(2 * j) / math.factorial(2 * j)
            term = arith.real(coeff * rising, wide) * npow
            tail += term
            mag = abs(term)
            if mag < eps * head:
                converged = True
                break
            if prev is not None and mag > prev:
                break
            prev = mag
            rising *= (k + 2 * j - 1) * (k + 2 * j)
            npow *= inv_n2
        if converged:
            return arith.rounded(head + tail, P)
        N *= 2
    raise PrecisionError(f"zeta({k}) did not converge at P={P}")


def zeta_int(k: int, P: int) -> arith.Real:
    """Riemann zeta at an integer ``k >= 2``; memoized per ``(k, P)``."""
    if not isinstance(k, int) or k < 2:
        raise DomainError(f"zeta_int needs an integer k >= 2, got {k!r}")
    return _zeta_cached(k, P)


# -- derivatives of cot ------------------------------------------------------


@dataclass(frozen=True)
class CotDerivPoly:
    """``P_m`` with ``d^m/dz^m cot(z) = P_m(cot z)``; ``coeffs[i]`` multiplies ``u**i``."""

    order: int
    coeffs: tuple[int, ...]

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, u):
        acc = 0 * u
        for c in reversed(self.coeffs):
            acc = acc * u + c
        return acc


@lru_cache(maxsize=None)
def cot_deriv_poly(m: int) -> CotDerivPoly:
    if m < 0:
        raise DomainError(f"derivative order must be >= 0, got {m}")
    if m == 0:
        return CotDerivPoly(0, (0, 1))
    prev = cot_deriv_poly(m - 1).coeffs
    deriv = [i * prev[i] for i in range(1, len(prev))]
    # -(1 + u^2) * P'(u)
    out = [0] * (len(deriv) + 2)
    for i, c in enumerate(deriv):
        out[i] -= c
        out[i + 2] -= c
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return CotDerivPoly(m, tuple(out))


def cot_deriv(m: int, x, P: int) -> arith.Real:
    """``d^m/dz^m cot(pi z)`` at ``z = x``, i.e. ``pi**m * P_m(cot(pi x))``."""
    wide = P + arith.GUARD
    u = arith.cot_pi(x, wide)
    value = arith.const_pi(wide) ** m * cot_deriv_poly(m)(u)
    return arith.rounded(value, P)


# -- polygamma ---------------------------------------------------------------


def _as_point(x):
    if isinstance(x, bool):
        x = int(x)
    if isinstance(x, (int, Fraction)):
        return QS5(x)
    if isinstance(x, QS5) or arith.is_real(x):
        return x
    raise TypeError(f"unsupported polygamma argument type {type(x).__name__}")


def _check_pole(x, P: int) -> None:
    if isinstance(x, QS5):
        if x.is_integer() and x.a <= 0:
            raise PoleError(f"polygamma has a pole at {x}")
        return
    ctx = arith.context(P)
    nearest = ctx.nint(x)
    if nearest <= 0 and abs(x - nearest) <= ctx.mpf(10) ** (5 - P):
        raise PoleError(f"polygamma argument {ctx.nstr(x, 15)} is at a pole")


def _asymptotic(m: int, w: arith.Real, wide: int) -> arith.Real:
    ctx = arith.context(wide)
    eps = ctx.mpf(10) ** (-wide - 2)
    inv_w = 1 / w
    inv_w2 = inv_w * inv_w
    if m == 0:
        acc = ctx.ln(w) - inv_w / 2
        wpow = inv_w2
        prev = None
        for k in range(1, 500):
            term = arith.real(bernoulli(2 * k) / (2 * k), wide) * wpow
            acc -= term
            mag = abs(term)
            if mag < eps * abs(acc):
                return acc
            if prev is not None and mag > prev:
                break
            prev = mag
            wpow *= inv_w2
        raise PrecisionError("digamma asymptotic series stalled")

    wm = inv_w**m
    acc = math.factorial(m - 1) * wm + math.factorial(m) * wm * inv_w / 2
    wpow = wm * inv_w2
    prev = None
    for k in range(1, 500):
        coeff = bernoulli(2 * k) * Fraction(math.factorial(2 * k + m - 1), math.factorial(2 * k))
        term = arith.real(coeff, wide) * wpow
        acc += term
        mag = abs(term)
        if mag < eps * abs(acc):
            return acc if m % 2 else -acc
        if prev is not None and mag > prev:
            break
        prev = mag
        wpow *= inv_w2
    raise PrecisionError(f"polygamma({m}) asymptotic series stalled")


def _shift_point(x, k: int, xr: arith.Real, wide: int) -> arith.Real:
    # x + k as a Real; near zero the exact QS5 sum avoids cancellation
    if isinstance(x, QS5) and -1 <= x.floor() + k <= 0:
        return (x + k).to_real(wide)
    return xr + k


def polygamma(m: int, x, P: int) -> arith.Real:
    """``psi^(m)(x)`` for a QS5/rational point or a Real, at ``P`` digits.

    The argument is moved up to ``W`` with the recurrence
    ``psi^(m)(x) = psi^(m)(x+1) - (-1)^m m!/x^(m+1)`` (this also covers
    negative non-integer arguments) and the Bernoulli asymptotic expansion is
    applied there.
    """
    if not isinstance(m, int) or m < 0:
        raise DomainError(f"polygamma order must be an integer >= 0, got {m!r}")
    x = _as_point(x)
    _check_pole(x, P)
    wide = P + arith.GUARD
    ctx = arith.context(wide)
    xr = x.to_real(wide) if isinstance(x, QS5) else ctx.mpf(x)
    fl = x.floor() if isinstance(x, QS5) else int(ctx.floor(xr))

    base_w = max(10, math.ceil(0.8 * wide))
    for attempt in range(4):
        W = base_w << attempt
        K = max(0, W - fl)
        shift = ctx.mpf(0)
        for k in range(K):
            shift += _shift_point(x, k, xr, wide) ** (-(m + 1))
        try:
            asym = _asymptotic(m, xr + K, wide)
        except PrecisionError:
            continue
        sign = -1 if m % 2 else 1
        value = asym - sign * math.factorial(m) * shift
        return arith.rounded(value, P)
    raise PrecisionError(f"polygamma({m}, x) failed to converge at P={P}")
