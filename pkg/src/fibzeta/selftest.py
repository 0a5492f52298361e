"""Suites run by ``fibzeta selftest``: kernel oracles, functional-equation and
golden-ratio grids, shift identities and the identity catalog."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

import mpmath

from fibzeta import arith
from fibzeta.errors import FibZetaError
from fibzeta.funceq import EQUATIONS, admissible_orders, funceq_residual, lemma_grid, lemma_sides, sample_args
from fibzeta.identities import shift_identity_check
from fibzeta.specfun import bernoulli, polygamma, zeta_int


@dataclass
class SuiteResult:
    name: str
    count: int = 0
    passed: int = 0
    max_residual: arith.Real | None = None
    failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.count > 0 and self.passed == self.count

    def record(self, label: str, residual, tol) -> None:
        self.count += 1
        if self.max_residual is None or residual > self.max_residual:
            self.max_residual = residual
        if residual < tol:
            self.passed += 1
        else:
            self.failures.append(label)

    def record_error(self, label: str, exc: Exception) -> None:
        self.count += 1
        self.failures.append(f"{label}: {type(exc).__name__}: {exc}")


def residual_tolerance(P: int) -> arith.Real:
    return arith.tolerance(P - 12, P)


def _guarded(suite: SuiteResult, label: str, fn: Callable[[], arith.Real], tol) -> None:
    try:
        suite.record(label, fn(), tol)
    except (FibZetaError, ArithmeticError) as exc:
        suite.record_error(label, exc)


def kernel_suite(P: int) -> SuiteResult:
    """Compare the kernels against mpmath's independent implementations."""
    suite = SuiteResult("kernels")
    tol = residual_tolerance(P)
    with mpmath.workdps(P + 10):
        pi = mpmath.pi
        _guarded(suite, "psi1(1) = pi^2/6", lambda: abs(polygamma(1, 1, P) - pi**2 / 6), tol)
        _guarded(suite, "psi(1) = -gamma", lambda: abs(polygamma(0, 1, P) + mpmath.euler), tol)
        for k in (2, 3, 5, 10, 41):
            _guarded(suite, f"zeta({k})", lambda k=k: abs(zeta_int(k, P) - mpmath.zeta(k)), tol)
        for m in range(0, 5):
            for x in (Fraction(3, 10), Fraction(17, 10), Fraction(-7, 3)):
                xm = mpmath.mpf(x.numerator) / x.denominator
                _guarded(
                    suite, f"psi{m}({x})",
                    lambda m=m, x=x, xm=xm: abs(polygamma(m, x, P) - mpmath.psi(m, xm))
                    / max(1, abs(mpmath.psi(m, xm))),
                    tol,
                )
        _guarded(suite, "B12", lambda: abs(arith.real(bernoulli(12) - Fraction(-691, 2730), P)), tol)
        _guarded(suite, "B2", lambda: abs(arith.real(bernoulli(2) - Fraction(1, 6), P)), tol)
    return suite


def funceq_suite(P: int, seed: int, points: int = 10, m_max: int = 6) -> SuiteResult:
    suite = SuiteResult("funceq")
    tol = residual_tolerance(P)
    rng = random.Random(seed)
    for eq, info in EQUATIONS.items():
        for m in admissible_orders(info.parity, m_max):
            for i in range(points):
                args = sample_args(eq, rng, quadratic=bool(i % 2))
                label = f"{eq.name} m={m} at {', '.join(map(str, args))}"
                _guarded(suite, label, lambda eq=eq, m=m, args=args: funceq_residual(eq, m, args, P), tol)
    return suite


def lemma_suite(P: int, m_max: int = 7) -> SuiteResult:
    suite = SuiteResult("lemmas")
    tol = residual_tolerance(P)
    for lemma, m, r in lemma_grid(m_max):
        label = f"{lemma.name} m={m} r={r}"
        _guarded(suite, label, lambda lemma=lemma, m=m, r=r: lemma_sides(lemma, m, r, P).residual, tol)
    return suite


SHIFT_CASES = (
    ("F", 0, 1, Fraction(1, 10)),
    ("F", 2, 3, Fraction(1, 2)),
    ("F", 2, 2, Fraction(-1, 3)),
    ("F", 4, -2, Fraction(2, 7)),
    ("L", 1, 1, Fraction(1)),
    ("L", 3, 4, Fraction(1, 7)),
    ("L", 5, -3, Fraction(-3, 4)),
)


def shift_suite(P: int) -> SuiteResult:
    suite = SuiteResult("shift")
    tol = residual_tolerance(P)
    for kind, m, r, z in SHIFT_CASES:
        _guarded(suite, f"{kind} m={m} r={r} z={z}",
                 lambda kind=kind, m=m, r=r, z=z: shift_identity_check(kind, m, r, z, P), tol)
    return suite


def all_suites(P: int, seed: int) -> list[SuiteResult]:
    return [kernel_suite(P), funceq_suite(P, seed), lemma_suite(P), shift_suite(P)]
