"""Exact arithmetic in Q(sqrt 5), Fibonacci and Lucas numbers."""

from __future__ import annotations

import math
from fractions import Fraction
from functools import total_ordering
from math import floor as _floor, isqrt
from typing import Union

from fibzeta import arith
from fibzeta.errors import DomainError

Rational = Union[int, Fraction]


@total_ordering
class QS5:
    """The number ``a + b*sqrt(5)`` with rational ``a`` and ``b``.

    Instances are immutable and hashable.  Components are ``Fraction`` objects,
    which keep themselves in lowest terms with a positive denominator.
    """

    __slots__ = ("a", "b")

    def __init__(self, a: Rational = 0, b: Rational = 0) -> None:
        object.__setattr__(self, "a", Fraction(a))
        object.__setattr__(self, "b", Fraction(b))

    def __setattr__(self, name, value):
        raise AttributeError("QS5 is immutable")

    def __reduce__(self):
        return (QS5, (self.a, self.b))

    # -- structure -----------------------------------------------------------
    def __repr__(self) -> str:
        return f"QS5({self.a}, {self.b})"

    def __str__(self) -> str:
        if not self.b:
            return str(self.a)
        b = "" if abs(self.b) == 1 else f"{abs(self.b)}*"
        sign = "-" if self.b < 0 else "+"
        if not self.a:
            return f"{'-' if self.b < 0 else ''}{b}sqrt5"
        return f"{self.a} {sign} {b}sqrt5"

    def __hash__(self) -> int:
        if not self.b:
            return hash(self.a)
        return hash((self.a, self.b))

    def __eq__(self, other) -> bool:
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.a == other.a and self.b == other.b

    def __bool__(self) -> bool:
        return bool(self.a) or bool(self.b)

    def is_rational(self) -> bool:
        return not self.b

    def is_integer(self) -> bool:
        return not self.b and self.a.denominator == 1

    # -- field operations ----------------------------------------------------
    def __neg__(self) -> QS5:
        return QS5(-self.a, -self.b)

    def __pos__(self) -> QS5:
        return self

    def __add__(self, other) -> QS5:
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return QS5(self.a + other.a, self.b + other.b)

    __radd__ = __add__

    def __sub__(self, other) -> QS5:
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return QS5(self.a - other.a, self.b - other.b)

    def __rsub__(self, other) -> QS5:
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other - self

    def __mul__(self, other) -> QS5:
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b, c, d = self.a, self.b, other.a, other.b
        return QS5(a * c + 5 * b * d, a * d + b * c)

    __rmul__ = __mul__

    def inverse(self) -> QS5:
        n = self.norm()
        if not n:
            raise ZeroDivisionError("QS5 division by zero")
        return QS5(self.a / n, -self.b / n)

    def __truediv__(self, other) -> QS5:
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other) -> QS5:
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, n: int) -> QS5:
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result, base = QS5(1), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def conj(self) -> QS5:
        return QS5(self.a, -self.b)

    def norm(self) -> Fraction:
        """``x * conj(x) = a**2 - 5*b**2``."""
        return self.a * self.a - 5 * self.b * self.b

    # -- order ---------------------------------------------------------------
    def sign(self) -> int:
        """Exact sign of ``a + b*sqrt(5)`` using rational arithmetic only."""
        sa = (self.a > 0) - (self.a < 0)
        sb = (self.b > 0) - (self.b < 0)
        if sb == 0:
            return sa
        if sa == 0 or sa == sb:
            return sb
        # mixed signs: the larger of a**2 and 5*b**2 wins
        n = self.norm()
        return sa if n > 0 else sb

    def __lt__(self, other) -> bool:
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return (self - other).sign() < 0

    def __abs__(self) -> QS5:
        return -self if self.sign() < 0 else self

    def floor(self) -> int:
        """Greatest integer not exceeding the value, decided exactly."""
        if not self.b:
            return _floor(self.a)
        k = 8
        while True:
            lo_s, hi_s = sqrt5_bounds(k)
            if self.b > 0:
                lo, hi = self.a + self.b * lo_s, self.a + self.b * hi_s
            else:
                lo, hi = self.a + self.b * hi_s, self.a + self.b * lo_s
            f = _floor(lo)
            # the value is irrational, so it never equals the integer f + 1
            if hi < f + 1:
                return f
            k *= 2

    def frac(self) -> QS5:
        return self - self.floor()

    def bounds(self, bits: int = 64) -> tuple[Fraction, Fraction]:
        """Rational enclosure ``lo <= x <= hi`` of width about ``|b| * 2**-bits``."""
        if not self.b:
            return self.a, self.a
        lo_s, hi_s = sqrt5_bounds(bits)
        ends = (self.a + self.b * lo_s, self.a + self.b * hi_s)
        return min(ends), max(ends)

    # -- numerics ------------------------------------------------------------
    def to_real(self, P: int) -> arith.Real:
        """Evaluate at ``P`` digits.

        When ``a`` and ``b*sqrt5`` nearly cancel, the value is formed as
        ``norm / conj`` instead, which has no cancellation.
        """
        wide = P + arith.GUARD
        s5 = arith.const_sqrt5(wide)
        a = arith.real(self.a, wide)
        if not self.b:
            return arith.rounded(a, P)
        b = arith.real(self.b, wide)
        if (self.a > 0) != (self.b > 0) and self.a:
            n = arith.real(self.norm(), wide)
            return arith.rounded(n / (a - b * s5), P)
        return arith.rounded(a + b * s5, P)

    def __float__(self) -> float:
        return float(self.to_real(30))


def _coerce(x):
    if isinstance(x, QS5):
        return x
    if isinstance(x, (int, Fraction)) and not isinstance(x, bool):
        return QS5(x)
    return NotImplemented


def as_qs5(x) -> QS5:
    """Convert int, Fraction or QS5 to QS5 (exactly)."""
    y = _coerce(x)
    if y is NotImplemented:
        raise TypeError(f"cannot convert {type(x).__name__} to QS5")
    return y


def sqrt5_bounds(bits: int) -> tuple[Fraction, Fraction]:
    """Dyadic rationals ``lo < sqrt(5) < hi`` with ``hi - lo = 2**-bits``."""
    s = isqrt(5 << (2 * bits))
    return Fraction(s, 1 << bits), Fraction(s + 1, 1 << bits)


SQRT5 = QS5(0, 1)
ALPHA = QS5(Fraction(1, 2), Fraction(1, 2))
BETA = QS5(Fraction(1, 2), Fraction(-1, 2))


def alpha_pow(n: int) -> QS5:
    """Exact ``alpha**n`` by repeated squaring; negative ``n`` allowed."""
    return ALPHA**n


def beta_pow(n: int) -> QS5:
    return BETA**n


def _fib_pair(n: int) -> tuple[int, int]:
    # (F_n, F_{n+1}) by fast doubling, n >= 0
    if n == 0:
        return 0, 1
    f, g = _fib_pair(n >> 1)
    c = f * (2 * g - f)
    d = f * f + g * g
    if n & 1:
        return d, c + d
    return c, d


def fib(n: int) -> int:
    """Fibonacci number ``F_n`` for any integer ``n``."""
    if n < 0:
        v = _fib_pair(-n)[0]
        return v if n % 2 else -v
    return _fib_pair(n)[0]


def lucas(n: int) -> int:
    """Lucas number ``L_n`` for any integer ``n``; ``L_{-n} = (-1)**n L_n``."""
    m = abs(n)
    f, g = _fib_pair(m)
    v = 2 * g - f
    if n < 0 and m % 2:
        return -v
    return v


def compare(x, y) -> int:
    """Exact three-way comparison: -1, 0 or 1 for x < y, x == y, x > y."""
    return (as_qs5(x) - as_qs5(y)).sign()


def floor(x) -> int:
    return as_qs5(x).floor()


def to_real(x, P: int) -> arith.Real:
    return as_qs5(x).to_real(P)


def parse_qs5(text: str) -> QS5:
    """Parse ``"p/q"`` or ``"a,b"`` (meaning a + b*sqrt5) into QS5."""
    text = text.strip()
    try:
        if "," in text:
            a, b = text.split(",", 1)
            return QS5(Fraction(a.strip()), Fraction(b.strip()))
        return QS5(Fraction(text))
    except (ValueError, ZeroDivisionError) as exc:
        raise DomainError(f"cannot parse {text!r} as a rational or a,b pair") from exc


def format_qs5(x) -> str:
    """``(A+B*sqrt5)/d`` with integer A, B, d."""
    x = as_qs5(x)
    d = math.lcm(x.a.denominator, x.b.denominator)
    A, B = int(x.a * d), int(x.b * d)
    if not B:
        return str(x.a)
    coef = "" if abs(B) == 1 else f"{abs(B)}*"
    inner = f"{coef}sqrt5" if not A else f"{A}{'-' if B < 0 else '+'}{coef}sqrt5"
    if not A and B < 0:
        inner = "-" + inner
    if d == 1:
        return inner
    return f"({inner})/{d}"
