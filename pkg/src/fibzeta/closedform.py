"""Expression trees for the right-hand sides of the series identities.

Atoms are exact scalars in Q(sqrt5), powers of pi, derivatives of
``cot(pi z)`` at exact points, Fibonacci/Lucas numbers and factorials.
Trees can be evaluated numerically or expanded into a normal form (a map from
monomials in pi and cot-derivative atoms to exact QS5 coefficients), which is
how two differently written right-hand sides are compared exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Tuple

from fibzeta import arith
from fibzeta.errors import PoleError
from fibzeta.qsqrt5 import QS5, as_qs5, fib, lucas
from fibzeta.specfun import cot_deriv

# A monomial is a sorted tuple of (atom key, exponent).
Monomial = Tuple[Tuple[tuple, int], ...]
NormalForm = Dict[Monomial, QS5]


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    powers: dict[tuple, int] = dict(a)
    for key, e in b:
        powers[key] = powers.get(key, 0) + e
    return tuple(sorted((k, e) for k, e in powers.items() if e))


def _nf_add(a: NormalForm, b: NormalForm) -> NormalForm:
    out = dict(a)
    for mono, c in b.items():
        out[mono] = out.get(mono, QS5(0)) + c
    return {k: v for k, v in out.items() if v}


def _nf_mul(a: NormalForm, b: NormalForm) -> NormalForm:
    out: NormalForm = {}
    for ma, ca in a.items():
        for mb, cb in b.items():
            mono = _mono_mul(ma, mb)
            out[mono] = out.get(mono, QS5(0)) + ca * cb
    return {k: v for k, v in out.items() if v}


class Expr:
    """Base node.  Supports ``+``, ``-``, ``*`` with other nodes and numbers."""

    def evaluate(self, P: int) -> arith.Real:
        return arith.rounded(self._eval(P + arith.GUARD), P)

    def _eval(self, P: int) -> arith.Real:  # pragma: no cover - abstract
        raise NotImplementedError

    def normal_form(self) -> NormalForm:  # pragma: no cover - abstract
        raise NotImplementedError

    def render(self) -> str:  # pragma: no cover - abstract
        raise NotImplementedError

    def __str__(self) -> str:
        return self.render()

    def __add__(self, other) -> Expr:
        return Add((self, _lift(other)))

    def __radd__(self, other) -> Expr:
        return Add((_lift(other), self))

    def __sub__(self, other) -> Expr:
        return Add((self, Neg(_lift(other))))

    def __rsub__(self, other) -> Expr:
        return Add((_lift(other), Neg(self)))

    def __mul__(self, other) -> Expr:
        return Mul((self, _lift(other)))

    def __rmul__(self, other) -> Expr:
        return Mul((_lift(other), self))

    def __neg__(self) -> Expr:
        return Neg(self)


def _lift(x) -> Expr:
    if isinstance(x, Expr):
        return x
    return Scalar(as_qs5(x))


@dataclass(frozen=True, eq=False)
class Scalar(Expr):
    value: QS5

    def __post_init__(self) -> None:
        object.__setattr__(self, "value", as_qs5(self.value))

    def _eval(self, P):
        return self.value.to_real(P)

    def normal_form(self):
        return {(): self.value} if self.value else {}

    def render(self):
        return f"({self.value})"


@dataclass(frozen=True, eq=False)
class PiPow(Expr):
    k: int

    def _eval(self, P):
        return arith.const_pi(P) ** self.k

    def normal_form(self):
        return {((("pi",), self.k),) if self.k else (): QS5(1)}

    def render(self):
        return "pi" if self.k == 1 else f"pi^{self.k}"


@dataclass(frozen=True, eq=False)
class CotDerivAt(Expr):
    """``d^m/dz^m cot(pi z)`` evaluated at an exact point."""

    m: int
    arg: QS5

    def __post_init__(self) -> None:
        arg = as_qs5(self.arg)
        if arg.is_integer():
            raise PoleError(f"cot derivative requested at integer point {arg}")
        object.__setattr__(self, "arg", arg)

    def _eval(self, P):
        return cot_deriv(self.m, self.arg, P)

    def key(self) -> tuple:
        # cot(pi z) has period 1, so the atom is identified by the fractional part
        frac = self.arg.frac()
        return ("cot", self.m, frac.a, frac.b)

    def normal_form(self):
        return {((self.key(), 1),): QS5(1)}

    def render(self):
        return f"D{self.m}cot[{self.arg}]"


@dataclass(frozen=True, eq=False)
class FibAtom(Expr):
    n: int

    def _eval(self, P):
        return arith.real(fib(self.n), P)

    def normal_form(self):
        return {(): QS5(fib(self.n))}

    def render(self):
        return f"F({self.n})"


@dataclass(frozen=True, eq=False)
class LucasAtom(Expr):
    n: int

    def _eval(self, P):
        return arith.real(lucas(self.n), P)

    def normal_form(self):
        return {(): QS5(lucas(self.n))}

    def render(self):
        return f"L({self.n})"


@dataclass(frozen=True, eq=False)
class FactorialAtom(Expr):
    n: int

    def _eval(self, P):
        return arith.real(math.factorial(self.n), P)

    def normal_form(self):
        return {(): QS5(math.factorial(self.n))}

    def render(self):
        return f"{self.n}!"


@dataclass(frozen=True, eq=False)
class Add(Expr):
    terms: tuple

    def _eval(self, P):
        return arith.context(P).fsum(t._eval(P) for t in self.terms)

    def normal_form(self):
        out: NormalForm = {}
        for t in self.terms:
            out = _nf_add(out, t.normal_form())
        return out

    def render(self):
        return "(" + " + ".join(t.render() for t in self.terms) + ")"


@dataclass(frozen=True, eq=False)
class Mul(Expr):
    factors: tuple

    def _eval(self, P):
        acc = arith.real(1, P)
        for f in self.factors:
            acc *= f._eval(P)
        return acc

    def normal_form(self):
        out: NormalForm = {(): QS5(1)}
        for f in self.factors:
            out = _nf_mul(out, f.normal_form())
        return out

    def render(self):
        return "*".join(f.render() for f in self.factors)


@dataclass(frozen=True, eq=False)
class Neg(Expr):
    inner: Expr

    def _eval(self, P):
        return -self.inner._eval(P)

    def normal_form(self):
        return {k: -v for k, v in self.inner.normal_form().items()}

    def render(self):
        return f"-{self.inner.render()}"


def same_normal_form(a: Expr, b: Expr) -> bool:
    return a.normal_form() == b.normal_form()


def constant_part(e: Expr) -> QS5:
    """Coefficient of the empty monomial (the pi- and cot-free part)."""
    return e.normal_form().get((), QS5(0))


# -- printed trigonometric shapes, expressed through cot derivatives ---------

HALF = Fraction(1, 2)


def pi_cot_deriv(m: int, t) -> Expr:
    """``pi * d^m/dz^m cot(pi z)`` at ``z = t``."""
    return PiPow(1) * CotDerivAt(m, as_qs5(t))


def csc2(t) -> Expr:
    """``csc(pi t)**2 = -(1/pi) d/dz cot(pi z)`` at t."""
    return Neg(PiPow(-1) * CotDerivAt(1, as_qs5(t)))


def cot_csc2(t) -> Expr:
    """``cot(pi t) csc(pi t)**2 = (1/(2 pi^2)) d^2/dz^2 cot(pi z)`` at t."""
    return Scalar(HALF) * PiPow(-2) * CotDerivAt(2, as_qs5(t))


def sec2(t) -> Expr:
    """``sec(pi t)**2 = csc(pi (1/2 - t))**2``."""
    return csc2(HALF - as_qs5(t))


def tan_sec2(t) -> Expr:
    """``tan(pi t) sec(pi t)**2 = cot csc^2`` at ``1/2 - t``."""
    return cot_csc2(HALF - as_qs5(t))
