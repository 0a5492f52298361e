"""Residual evaluators for the polygamma functional equations and for the
closed-form evaluations at golden-ratio points.

Every equation is written as two lists of terms (left side, right side).  The
reported residual is ``|sum(lhs) - sum(rhs)|`` divided by the size of the
largest term (never less than 1), so one contract covers both order-one
values and the ``m!/x**(m+1)`` sized terms that appear near poles.
"""

from __future__ import annotations

import enum
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from fibzeta import arith
from fibzeta.errors import UsageError
from fibzeta.qsqrt5 import QS5, SQRT5, alpha_pow, beta_pow, fib, lucas
from fibzeta.specfun import cot_deriv, polygamma

HALF = Fraction(1, 2)


@dataclass(frozen=True)
class Sides:
    lhs: arith.Real
    rhs: arith.Real
    scale: arith.Real

    @property
    def abs_error(self) -> arith.Real:
        return abs(self.lhs - self.rhs)

    @property
    def residual(self) -> arith.Real:
        return self.abs_error / self.scale


def _combine(lhs: Sequence[arith.Real], rhs: Sequence[arith.Real], P: int) -> Sides:
    ctx = arith.context(P)
    scale = max([ctx.mpf(1)] + [abs(t) for t in (*lhs, *rhs)])
    return Sides(ctx.fsum(lhs), ctx.fsum(rhs), scale)


class _Eval:
    """Term builders for points that are all QS5 (exact) or all Real."""

    def __init__(self, m: int, P: int, exact: bool) -> None:
        self.m = m
        self.P = P
        self.exact = exact
        self.sign = -1 if m % 2 else 1
        self.fact = math.factorial(m)

    def c(self, q):
        return QS5(q) if self.exact else arith.real(q, self.P)

    def val(self, x) -> arith.Real:
        return x.to_real(self.P) if isinstance(x, QS5) else arith.rounded(x, self.P)

    def psi(self, x) -> arith.Real:
        return polygamma(self.m, x, self.P)

    def cot(self, x) -> arith.Real:
        """``pi * d^m/dz^m cot(pi z)`` at ``x``."""
        return arith.const_pi(self.P) * cot_deriv(self.m, x, self.P)

    def recip(self, x) -> arith.Real:
        """``m! / x**(m+1)``."""
        return self.val(self.fact / x ** (self.m + 1))


class FuncEqId(enum.Enum):
    RECURRENCE = "recurrence"
    REFLECTION = "reflection"
    DUPLICATION = "duplication"
    DUP_DIFF_EVEN = "dup_diff_even"
    DUP_SUM_ODD = "dup_sum_odd"
    NEG_DIFF_EVEN = "neg_diff_even"
    NEG_SUM_ODD = "neg_sum_odd"
    HALF_REFLECT = "half_reflect"
    ONE_PM = "one_pm"
    UNIT_SHIFT = "unit_shift"
    SUM_ONE = "sum_one"
    SHIFT_DIFF = "shift_diff"
    SHIFT_SUM = "shift_sum"
    GEN_DIFF = "gen_diff"
    GEN_SUM = "gen_sum"
    XY1_DIFF_EVEN = "xy1_diff_even"
    XY1_SUM_ODD = "xy1_sum_odd"
    XY2_DIFF_EVEN = "xy2_diff_even"
    XY2_SUM_ODD = "xy2_sum_odd"
    HALF_GEN_DIFF = "half_gen_diff"
    HALF_GEN_SUM = "half_gen_sum"
    HALF_DIFF_EVEN = "half_diff_even"
    HALF_SUM_ODD = "half_sum_odd"


@dataclass(frozen=True)
class EquationInfo:
    arity: int
    parity: str | None  # "even", "odd" or None
    # None (free), or (kind, value) with kind "sum" (x+y=value) or "diff" (x-y=value)
    constraint: tuple[str, int] | None
    # points that must avoid the value 1/2 (half-argument forms)
    avoid_half: bool
    terms: Callable[[_Eval, Sequence], tuple[list, list]]
    text: str


def _eq_recurrence(E, a):
    (z,) = a
    return [E.psi(z + 1)], [E.psi(z), E.sign * E.recip(z)]


def _eq_reflection(E, a):
    (z,) = a
    return [E.sign * E.psi(1 - z), -E.psi(z)], [E.cot(z)]


def _eq_duplication(E, a):
    (z,) = a
    return [E.psi(-z), -E.sign * E.psi(z)], [E.sign * E.cot(z), E.recip(z)]


def _eq_dup_diff_even(E, a):
    x, y = a
    return (
        [E.psi(-x), -E.psi(-y)],
        [E.psi(x), -E.psi(y), E.recip(x), -E.recip(y), E.cot(x), -E.cot(y)],
    )


def _eq_dup_sum_odd(E, a):
    x, y = a
    return (
        [E.psi(-x), E.psi(-y)],
        [-E.psi(x), -E.psi(y), E.recip(x), E.recip(y), -E.cot(x), -E.cot(y)],
    )


def _eq_neg_diff_even(E, a):
    x, y = a
    return [E.psi(-x), -E.psi(-y)], [-E.cot(y), E.recip(x), -E.recip(y)]


def _eq_neg_sum_odd(E, a):
    x, y = a
    return [E.psi(-x), E.psi(-y)], [-E.cot(y), E.recip(x), E.recip(y)]


def _eq_half_reflect(E, a):
    (z,) = a
    h = E.c(HALF)
    return [E.sign * E.psi(h + z), -E.psi(h - z)], [E.cot(h - z)]


def _eq_one_pm(E, a):
    (z,) = a
    return [E.psi(1 + z), -E.sign * E.psi(1 - z)], [-E.cot(z), E.sign * E.recip(z)]


def _eq_unit_shift(E, a):
    x, y = a
    return [E.psi(x), -E.psi(y)], [E.sign * E.recip(y)]


def _eq_sum_one(E, a):
    x, y = a
    return [E.psi(x), -E.sign * E.psi(y)], [-E.cot(x)]


def _power_ratio(E, x, y, sign: int):
    k = E.m + 1
    return E.val(E.fact * (x**k + sign * y**k) / (x * y) ** k)


def _eq_shift_diff(E, a):
    x, y = a
    return (
        [E.psi(x + 1), -E.psi(y + 1)],
        [E.psi(x), -E.psi(y), -E.sign * _power_ratio(E, x, y, -1)],
    )


def _eq_shift_sum(E, a):
    x, y = a
    return (
        [E.psi(x + 1), E.psi(y + 1)],
        [E.psi(x), E.psi(y), E.sign * _power_ratio(E, x, y, 1)],
    )


def _eq_gen_diff(E, a):
    x, y = a
    s = E.sign
    return (
        [E.psi(1 + x), -E.psi(1 + y)],
        [s * E.psi(1 - x), -s * E.psi(1 - y), -E.cot(x), E.cot(y), s * E.recip(x), -s * E.recip(y)],
    )


def _eq_gen_sum(E, a):
    x, y = a
    s = E.sign
    return (
        [E.psi(1 + x), E.psi(1 + y)],
        [s * E.psi(1 - x), s * E.psi(1 - y), -E.cot(x), -E.cot(y), s * E.recip(x), s * E.recip(y)],
    )


def _eq_xy1_diff_even(E, a):
    x, y = a
    return [E.psi(1 + x), -E.psi(1 + y)], [E.cot(y), E.recip(x), -E.recip(y)]


def _eq_xy1_sum_odd(E, a):
    x, y = a
    return [E.psi(1 + x), E.psi(1 + y)], [-E.cot(y), -E.recip(x), -E.recip(y)]


def _eq_xy2_diff_even(E, a):
    x, y = a
    return (
        [E.psi(1 + x), -E.psi(1 + y)],
        [-E.cot(x), E.recip(1 - y), E.recip(x), -E.recip(y)],
    )


def _eq_xy2_sum_odd(E, a):
    x, y = a
    return (
        [E.psi(1 + x), E.psi(1 + y)],
        [-E.cot(x), -E.recip(1 - y), -E.recip(x), -E.recip(y)],
    )


def _eq_half_gen_diff(E, a):
    x, y = a
    h = E.c(HALF)
    s = E.sign
    return (
        [s * E.psi(h + x), -s * E.psi(h + y)],
        [E.psi(h - x), -E.psi(h - y), E.cot(h - x), -E.cot(h - y)],
    )


def _eq_half_gen_sum(E, a):
    x, y = a
    h = E.c(HALF)
    s = E.sign
    return (
        [s * E.psi(h + x), s * E.psi(h + y)],
        [E.psi(h - x), E.psi(h - y), E.cot(h - x), E.cot(h - y)],
    )


def _eq_half_diff_even(E, a):
    x, y = a
    h = E.c(HALF)
    return [E.psi(h + x), -E.psi(h + y)], [-E.cot(h - y), E.recip(x - h)]


def _eq_half_sum_odd(E, a):
    x, y = a
    h = E.c(HALF)
    return [E.psi(h + x), E.psi(h + y)], [-E.cot(h - y), -E.recip(x - h)]


F = FuncEqId
EQUATIONS: dict[FuncEqId, EquationInfo] = {
    F.RECURRENCE: EquationInfo(1, None, None, False, _eq_recurrence,
                               "psi(z+1) = psi(z) + (-1)^m m!/z^(m+1)"),
    F.REFLECTION: EquationInfo(1, None, None, False, _eq_reflection,
                               "(-1)^m psi(1-z) - psi(z) = pi D^m cot(pi z)"),
    F.DUPLICATION: EquationInfo(1, None, None, False, _eq_duplication,
                                "psi(-z) - (-1)^m psi(z) = (-1)^m pi D^m cot(pi z) + m!/z^(m+1)"),
    F.DUP_DIFF_EVEN: EquationInfo(2, "even", None, False, _eq_dup_diff_even,
                                  "psi(-x) - psi(-y) in terms of psi(x) - psi(y)"),
    F.DUP_SUM_ODD: EquationInfo(2, "odd", None, False, _eq_dup_sum_odd,
                                "psi(-x) + psi(-y) in terms of psi(x) + psi(y)"),
    F.NEG_DIFF_EVEN: EquationInfo(2, "even", ("sum", 1), False, _eq_neg_diff_even,
                                  "psi(-x) - psi(-y), x+y=1"),
    F.NEG_SUM_ODD: EquationInfo(2, "odd", ("sum", 1), False, _eq_neg_sum_odd,
                                "psi(-x) + psi(-y), x+y=1"),
    F.HALF_REFLECT: EquationInfo(1, None, None, True, _eq_half_reflect,
                                 "(-1)^m psi(1/2+z) - psi(1/2-z) = pi D^m cot at 1/2-z"),
    F.ONE_PM: EquationInfo(1, None, None, False, _eq_one_pm,
                           "psi(1+z) - (-1)^m psi(1-z) = -pi D^m cot(pi z) + (-1)^m m!/z^(m+1)"),
    F.UNIT_SHIFT: EquationInfo(2, None, ("diff", 1), False, _eq_unit_shift,
                               "psi(x) - psi(y) = (-1)^m m!/y^(m+1), x-y=1"),
    F.SUM_ONE: EquationInfo(2, None, ("sum", 1), False, _eq_sum_one,
                            "psi(x) - (-1)^m psi(y) = -pi D^m cot at x, x+y=1"),
    F.SHIFT_DIFF: EquationInfo(2, None, None, False, _eq_shift_diff,
                               "psi(x+1) - psi(y+1) via psi(x) - psi(y)"),
    F.SHIFT_SUM: EquationInfo(2, None, None, False, _eq_shift_sum,
                              "psi(x+1) + psi(y+1) via psi(x) + psi(y)"),
    F.GEN_DIFF: EquationInfo(2, None, None, False, _eq_gen_diff,
                             "psi(1+x) - psi(1+y) via psi(1-x) - psi(1-y)"),
    F.GEN_SUM: EquationInfo(2, None, None, False, _eq_gen_sum,
                            "psi(1+x) + psi(1+y) via psi(1-x) + psi(1-y)"),
    F.XY1_DIFF_EVEN: EquationInfo(2, "even", ("sum", 1), False, _eq_xy1_diff_even,
                                  "psi(1+x) - psi(1+y), x+y=1"),
    F.XY1_SUM_ODD: EquationInfo(2, "odd", ("sum", 1), False, _eq_xy1_sum_odd,
                                "psi(1+x) + psi(1+y), x+y=1"),
    F.XY2_DIFF_EVEN: EquationInfo(2, "even", ("sum", 2), False, _eq_xy2_diff_even,
                                  "psi(1+x) - psi(1+y), x+y=2"),
    F.XY2_SUM_ODD: EquationInfo(2, "odd", ("sum", 2), False, _eq_xy2_sum_odd,
                                "psi(1+x) + psi(1+y), x+y=2"),
    F.HALF_GEN_DIFF: EquationInfo(2, None, None, True, _eq_half_gen_diff,
                                  "psi(1/2+x) - psi(1/2+y) via psi(1/2-x) - psi(1/2-y)"),
    F.HALF_GEN_SUM: EquationInfo(2, None, None, True, _eq_half_gen_sum,
                                 "psi(1/2+x) + psi(1/2+y) via psi(1/2-x) + psi(1/2-y)"),
    F.HALF_DIFF_EVEN: EquationInfo(2, "even", ("sum", 1), True, _eq_half_diff_even,
                                   "psi(1/2+x) - psi(1/2+y), x+y=1"),
    F.HALF_SUM_ODD: EquationInfo(2, "odd", ("sum", 1), True, _eq_half_sum_odd,
                                 "psi(1/2+x) + psi(1/2+y), x+y=1"),
}
del F


def parity_ok(parity: str | None, m: int) -> bool:
    if parity is None:
        return True
    return (m % 2 == 0) == (parity == "even")


def admissible_orders(parity: str | None, m_max: int) -> list[int]:
    return [m for m in range(m_max + 1) if parity_ok(parity, m)]


def _normalize_args(args: Sequence) -> tuple[list, bool]:
    out = []
    for x in args:
        if isinstance(x, bool):
            x = int(x)
        if isinstance(x, (int, Fraction)):
            x = QS5(x)
        elif not (isinstance(x, QS5) or arith.is_real(x)):
            raise UsageError(f"unsupported argument type {type(x).__name__}")
        out.append(x)
    kinds = {isinstance(x, QS5) for x in out}
    if len(kinds) > 1:
        raise UsageError("arguments must be all exact (QS5) or all Real")
    return out, kinds == {True}


def _check_constraint(info: EquationInfo, args: list, exact: bool, P: int) -> None:
    if info.constraint is None:
        return
    kind, value = info.constraint
    x, y = args
    got = x + y if kind == "sum" else x - y
    if exact:
        ok = got == value
    else:
        ok = abs(got - value) <= arith.context(P).mpf(10) ** (5 - P)
    if not ok:
        op = "+" if kind == "sum" else "-"
        raise UsageError(f"arguments violate x {op} y = {value}")


def funceq_sides(eq: FuncEqId, m: int, args: Sequence, P: int) -> Sides:
    info = EQUATIONS[eq]
    if not isinstance(m, int) or m < 0:
        raise UsageError(f"order m must be a non-negative integer, got {m!r}")
    if not parity_ok(info.parity, m):
        raise UsageError(f"{eq.name} requires m {info.parity}, got m={m}")
    if len(args) != info.arity:
        raise UsageError(f"{eq.name} takes {info.arity} argument(s), got {len(args)}")
    points, exact = _normalize_args(args)
    _check_constraint(info, points, exact, P)
    lhs, rhs = info.terms(_Eval(m, P, exact), points)
    return _combine(lhs, rhs, P)


def funceq_residual(eq: FuncEqId, m: int, args: Sequence, P: int) -> arith.Real:
    """Scaled residual ``|LHS - RHS| / max(1, largest term)`` of one equation."""
    return funceq_sides(eq, m, args, P).residual


def _random_unit(rng: random.Random, quadratic: bool, avoid_half: bool) -> QS5:
    while True:
        q = rng.randint(2, 64)
        t = QS5(Fraction(rng.randint(1, q - 1), q))
        if quadratic:
            q2 = rng.randint(1, 64)
            t = (t + QS5(0, Fraction(rng.randint(1, q2), q2))).frac()
        if avoid_half and t == HALF:
            continue
        return t


def sample_args(eq: FuncEqId, rng: random.Random, quadratic: bool = False) -> tuple[QS5, ...]:
    """One random admissible argument tuple; linear constraints hold exactly.

    Points are rationals with denominator at most 64 in (0, 1); with
    ``quadratic`` a random multiple of sqrt5 is added and the result reduced
    back into (0, 1).
    """
    info = EQUATIONS[eq]
    x = _random_unit(rng, quadratic, info.avoid_half)
    if info.arity == 1:
        return (x,)
    if info.constraint is None:
        return x, _random_unit(rng, quadratic, info.avoid_half)
    kind, value = info.constraint
    if kind == "sum":
        return x, value - x
    return x + value, x


# -- evaluations at golden-ratio points --------------------------------------


class LemmaId(enum.Enum):
    AT_ALPHA_DIFF_EVEN = "at_alpha_diff_even"
    AT_ALPHA_SUM_ODD = "at_alpha_sum_odd"
    AT_ALPHA2_DIFF_EVEN = "at_alpha2_diff_even"
    AT_ALPHA2_SUM_ODD = "at_alpha2_sum_odd"
    AT_ALPHA3_DIFF_EVEN = "at_alpha3_diff_even"
    AT_ALPHA3_SUM_ODD = "at_alpha3_sum_odd"
    AT_ALPHA3_HALF_DIFF_EVEN = "at_alpha3_half_diff_even"
    AT_ALPHA3_HALF_SUM_ODD = "at_alpha3_half_sum_odd"
    AT_AR_OVER_LR_DIFF_EVEN = "at_ar_over_lr_diff_even"
    AT_AR_OVER_LR_SUM_ODD = "at_ar_over_lr_sum_odd"
    AT_AR_OVER_FR_SQRT5_DIFF = "at_ar_over_fr_sqrt5_diff"
    AT_ONE_PLUS_2AR_LR_DIFF_EVEN = "at_one_plus_2ar_lr_diff_even"
    AT_ONE_PLUS_2AR_LR_SUM_ODD = "at_one_plus_2ar_lr_sum_odd"
    AT_NEG_AR_LR_DIFF_EVEN = "at_neg_ar_lr_diff_even"
    AT_NEG_AR_LR_SUM_ODD = "at_neg_ar_lr_sum_odd"


@dataclass(frozen=True)
class LemmaInfo:
    parity: str | None
    uses_r: bool
    # (m, r) -> (x, y, combine sign): lhs = psi(x) + sign*psi(y)
    points: Callable[[int, int | None], tuple[QS5, QS5, int]]
    # (m, r) -> (cot derivative point or None, cot coefficient, exact QS5 part)
    closed: Callable[[int, int | None], tuple[QS5 | None, int, QS5]]


def _lemma_table() -> dict[LemmaId, LemmaInfo]:
    a, b = alpha_pow, beta_pow
    fact = math.factorial
    L = LemmaId

    def ar_lr(r):
        return a(r) / lucas(r), b(r) / lucas(r)

    return {
        L.AT_ALPHA_DIFF_EVEN: LemmaInfo(
            "even", False, lambda m, r: (a(1), b(1), -1), lambda m, r: (a(1), -1, QS5(0))),
        L.AT_ALPHA_SUM_ODD: LemmaInfo(
            "odd", False, lambda m, r: (a(1), b(1), 1), lambda m, r: (a(1), -1, QS5(0))),
        L.AT_ALPHA2_DIFF_EVEN: LemmaInfo(
            "even", False, lambda m, r: (a(2), b(2), -1),
            lambda m, r: (b(1), 1, fact(m) * fib(m + 1) * SQRT5)),
        L.AT_ALPHA2_SUM_ODD: LemmaInfo(
            "odd", False, lambda m, r: (a(2), b(2), 1),
            lambda m, r: (b(1), -1, QS5(-fact(m) * lucas(m + 1)))),
        L.AT_ALPHA3_DIFF_EVEN: LemmaInfo(
            "even", False, lambda m, r: (a(3), b(3), -1),
            lambda m, r: (2 * b(1), 1,
                          fact(m) / SQRT5 ** (m + 1)
                          + Fraction(fact(m), 2 ** (m + 1)) * fib(m + 1) * SQRT5)),
        L.AT_ALPHA3_SUM_ODD: LemmaInfo(
            "odd", False, lambda m, r: (a(3), b(3), 1),
            lambda m, r: (2 * b(1), -1,
                          -fact(m) / SQRT5 ** (m + 1)
                          - QS5(Fraction(fact(m) * lucas(m + 1), 2 ** (m + 1))))),
        L.AT_ALPHA3_HALF_DIFF_EVEN: LemmaInfo(
            "even", False, lambda m, r: (a(3) / 2, b(3) / 2, -1),
            lambda m, r: (SQRT5 / 2, -1, fact(m) * 2 ** (m + 1) / SQRT5 ** (m + 1))),
        L.AT_ALPHA3_HALF_SUM_ODD: LemmaInfo(
            "odd", False, lambda m, r: (a(3) / 2, b(3) / 2, 1),
            lambda m, r: (SQRT5 / 2, -1, -fact(m) * 2 ** (m + 1) / SQRT5 ** (m + 1))),
        L.AT_AR_OVER_LR_DIFF_EVEN: LemmaInfo(
            "even", True, lambda m, r: (*ar_lr(r), -1),
            lambda m, r: (ar_lr(r)[0], -1, QS5(0))),
        L.AT_AR_OVER_LR_SUM_ODD: LemmaInfo(
            "odd", True, lambda m, r: (*ar_lr(r), 1),
            lambda m, r: (ar_lr(r)[0], -1, QS5(0))),
        L.AT_AR_OVER_FR_SQRT5_DIFF: LemmaInfo(
            None, True,
            lambda m, r: (a(r) / (fib(r) * SQRT5), b(r) / (fib(r) * SQRT5), -1),
            lambda m, r: (None, 0,
                          (-1) ** ((r * m + r + m) % 2) * fact(m) * fib(r) ** (m + 1)
                          * (a(r) * SQRT5) ** (m + 1))),
        L.AT_ONE_PLUS_2AR_LR_DIFF_EVEN: LemmaInfo(
            "even", True,
            lambda m, r: (1 + 2 * ar_lr(r)[0], 1 + 2 * ar_lr(r)[1], -1),
            lambda m, r: (2 * ar_lr(r)[0], -1,
                          fact(m) * lucas(r) ** (m + 1) / (fib(r) * SQRT5) ** (m + 1)
                          - Fraction((-1) ** (r % 2) * fact(m) * lucas(r) ** (m + 1)
                                     * fib(r * (m + 1)), 2 ** (m + 1)) * SQRT5)),
        L.AT_ONE_PLUS_2AR_LR_SUM_ODD: LemmaInfo(
            "odd", True,
            lambda m, r: (1 + 2 * ar_lr(r)[0], 1 + 2 * ar_lr(r)[1], 1),
            lambda m, r: (2 * ar_lr(r)[0], -1,
                          -fact(m) * lucas(r) ** (m + 1) / (fib(r) * SQRT5) ** (m + 1)
                          - QS5(Fraction(fact(m) * lucas(r) ** (m + 1) * lucas(r * (m + 1)),
                                         2 ** (m + 1))))),
        L.AT_NEG_AR_LR_DIFF_EVEN: LemmaInfo(
            "even", True, lambda m, r: (-ar_lr(r)[0], -ar_lr(r)[1], -1),
            lambda m, r: (ar_lr(r)[1], -1,
                          -fact(m) * lucas(r) ** (m + 1) * (-1) ** (r % 2)
                          * fib(r * (m + 1)) * SQRT5)),
        L.AT_NEG_AR_LR_SUM_ODD: LemmaInfo(
            "odd", True, lambda m, r: (-ar_lr(r)[0], -ar_lr(r)[1], 1),
            lambda m, r: (ar_lr(r)[1], -1,
                          QS5(fact(m) * lucas(r) ** (m + 1) * lucas(r * (m + 1))))),
    }


LEMMAS: dict[LemmaId, LemmaInfo] = _lemma_table()


def lemma_sides(lemma: LemmaId, m: int, r: int | None, P: int) -> Sides:
    """Both sides of one golden-ratio evaluation, computed independently.

    The left side only uses polygamma values at exact QS5 points; the right
    side only uses the cot-derivative kernel and exact Fibonacci/Lucas/sqrt5
    constants.
    """
    info = LEMMAS[lemma]
    if not isinstance(m, int) or m < 0:
        raise UsageError(f"order m must be a non-negative integer, got {m!r}")
    if not parity_ok(info.parity, m):
        raise UsageError(f"{lemma.name} requires m {info.parity}, got m={m}")
    if info.uses_r:
        if not isinstance(r, int) or r == 0:
            raise UsageError(f"{lemma.name} needs a nonzero integer r")
    elif r is not None:
        raise UsageError(f"{lemma.name} takes no r parameter")

    x, y, sign = info.points(m, r)
    px = polygamma(m, x, P)
    py = sign * polygamma(m, y, P)
    where, coeff, exact = info.closed(m, r)
    rhs_terms = [exact.to_real(P)]
    if where is not None:
        rhs_terms.append(coeff * arith.const_pi(P) * cot_deriv(m, where, P))
    return _combine([px, py], rhs_terms, P)


def lemma_grid(m_max: int = 7, r_values: Sequence[int] = range(1, 7)):
    """All admissible ``(lemma, m, r)`` triples for the default grid."""
    for lemma, info in LEMMAS.items():
        for m in admissible_orders(info.parity, m_max):
            if info.uses_r:
                for r in r_values:
                    yield lemma, m, r
            else:
                yield lemma, m, None
