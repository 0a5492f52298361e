"""The identity catalog and its verification.

An identity says ``lhs_sign * S(kind, m, r, z) = rhs`` where ``S`` is one of
the two series in :mod:`fibzeta.series` and ``rhs`` is a closed form.  Each
one can be checked two ways: by summing the series directly (only when it
converges) and by evaluating the polygamma form of the series, which is valid
for every admissible ``z``.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Literal, Sequence

from fibzeta import arith
from fibzeta.closedform import (
    Expr,
    FactorialAtom,
    FibAtom,
    LucasAtom,
    Mul,
    PiPow,
    Scalar,
    cot_csc2,
    csc2,
    pi_cot_deriv,
    sec2,
    tan_sec2,
)
from fibzeta.errors import FibZetaError, TruncationError, UsageError
from fibzeta.qsqrt5 import SQRT5, alpha_pow, beta_pow, fib, format_qs5, lucas
from fibzeta.series import DEFAULT_MAX_TERMS, SeriesSpec, converges, sum_series
from fibzeta.specfun import polygamma

FAMILIES = (
    "THEOREM_F", "THEOREM_L",
    "COR2_F", "COR2_L", "COR3_F", "COR3_L",
    "COR4_F", "COR4_L", "COR5_F", "COR5_L",
    "EXAMPLE",
)
COROLLARY_FAMILIES = FAMILIES[2:10]

Mode = Literal["direct_sum", "polygamma_form"]
Verdict = Literal["pass", "fail", "divergent_skipped_direct"]

# direct sums aim this factor below the verdict tolerance so that the
# truncation error cannot use up the whole budget
SUM_HEADROOM = 1000


def default_tolerance(P: int) -> arith.Real:
    return arith.tolerance(P - 20, P)


@dataclass(frozen=True, eq=False)
class Identity:
    id: str
    family: str
    m: int
    r: int
    z: Fraction
    lhs: SeriesSpec
    rhs: Expr
    convergent: bool
    locator: str
    lhs_sign: int = 1
    derived_from: str | None = None

    @property
    def kind(self) -> str:
        return self.lhs.kind


# -- polygamma form of the series ---------------------------------------------


def _check_theorem_args(kind: str, m: int) -> None:
    if kind not in ("F", "L"):
        raise UsageError(f"kind must be 'F' or 'L', got {kind!r}")
    if m < 0 or (kind == "L" and m < 1):
        raise UsageError(f"kind {kind} needs m >= {0 if kind == 'F' else 1}, got {m}")


def theorem_rhs(kind: str, m: int, r: int, z, P: int) -> arith.Real:
    """Polygamma form of the series: valid wherever the arguments avoid poles.

    F: ``(-1)^m/sqrt5 (psi^(m)(1 + alpha^r z) - psi^(m)(1 + beta^r z))``
    L: ``(-1)^(m-1)   (psi^(m)(1 + alpha^r z) + psi^(m)(1 + beta^r z))``
    """
    _check_theorem_args(kind, m)
    z = Fraction(z)
    wide = P + arith.GUARD
    pa = polygamma(m, 1 + alpha_pow(r) * z, wide)
    pb = polygamma(m, 1 + beta_pow(r) * z, wide)
    if kind == "F":
        value = (pa - pb) / arith.const_sqrt5(wide)
        if m % 2:
            value = -value
    else:
        value = pa + pb
        if m % 2 == 0:
            value = -value
    return arith.rounded(value, P)


def shift_identity_check(kind: str, m: int, r: int, z, P: int) -> arith.Real:
    """Residual of moving the polygamma arguments from ``1 + x`` down to ``x``.

    F (m even): psi(1+a) - psi(1+b) = psi(a) - psi(b) - (-1)^r m!/z^(m+1) F_{r(m+1)} sqrt5
    L (m odd):  psi(1+a) + psi(1+b) = psi(a) + psi(b) - m!/z^(m+1) L_{r(m+1)}
    with ``a = alpha^r z`` and ``b = beta^r z``.  Scaled like the
    functional-equation residuals.
    """
    _check_theorem_args(kind, m)
    if (kind == "F") != (m % 2 == 0):
        raise UsageError(f"the {kind} shift form needs m {'even' if kind == 'F' else 'odd'}")
    z = Fraction(z)
    if z == 0:
        raise UsageError("z must be non-zero")
    wide = P + arith.GUARD
    ctx = arith.context(wide)
    a, b = alpha_pow(r) * z, beta_pow(r) * z
    pa1, pb1 = polygamma(m, 1 + a, wide), polygamma(m, 1 + b, wide)
    pa0, pb0 = polygamma(m, a, wide), polygamma(m, b, wide)
    corr_q = Fraction(math.factorial(m)) / z ** (m + 1)
    if kind == "F":
        sign = -1 if r % 2 else 1
        corr = (SQRT5 * (sign * corr_q * fib(r * (m + 1)))).to_real(wide)
        lhs, rhs = [pa1, -pb1], [pa0, -pb0, -corr]
    else:
        corr = arith.real(corr_q * lucas(r * (m + 1)), wide)
        lhs, rhs = [pa1, pb1], [pa0, pb0, -corr]
    scale = max([ctx.mpf(1)] + [abs(t) for t in lhs + rhs])
    return arith.rounded(abs(ctx.fsum(lhs) - ctx.fsum(rhs)) / scale, P)


# -- corollary families -------------------------------------------------------

INV_SQRT5 = SQRT5.inverse()


def _fact(m: int) -> Expr:
    return FactorialAtom(m)


def _lucas_pow(r: int, k: int) -> Expr:
    return Mul(tuple(LucasAtom(r) for _ in range(k)))


def _parity_check(family: str, m: int) -> None:
    want_even = family.endswith("_F")
    if m < 0 or (m % 2 == 0) != want_even:
        raise UsageError(f"{family} needs {'even' if want_even else 'odd'} m >= 0, got m={m}")


@dataclass(frozen=True)
class FamilyInstance:
    spec: SeriesSpec
    lhs_sign: int
    rhs: Expr
    locator: str


def family_instance(family: str, m: int, r: int) -> FamilyInstance:
    """Series and right-hand side of a corollary family at ``(m, r)``."""
    if family not in COROLLARY_FAMILIES:
        raise UsageError(f"unknown corollary family {family!r}")
    _parity_check(family, m)
    kind = family[-1]
    f = _fact(m)
    k = m + 1

    if family.startswith("COR2"):
        if r != 3:
            raise UsageError("COR2 is the r = 3, z = 1/2 family")
        t = SQRT5 / 2
        b_term = Scalar(Fraction(2**k) * INV_SQRT5**k) * f
        c_scale = Scalar(2**k) * f
        if kind == "F":
            rhs = -Scalar(INV_SQRT5) * (pi_cot_deriv(m, t) - b_term) + c_scale * FibAtom(3 * k)
            loc = "z=1/2, r=3, even m, alternating F series"
        else:
            rhs = -pi_cot_deriv(m, t) - b_term - c_scale * LucasAtom(3 * k)
            loc = "z=1/2, r=3, odd m, L series; grouped display read as -A - B - C"
        return FamilyInstance(SeriesSpec(kind, m, 3, Fraction(1, 2)), 1, rhs, loc)

    if r == 0 or (family[:4] in ("COR4", "COR5") and abs(r) <= 1):
        raise UsageError(f"{family} is not defined at r={r}")
    lr = lucas(r)
    sr = -1 if r % 2 else 1
    t_beta = beta_pow(r) / lr

    if family.startswith("COR3"):
        spec = SeriesSpec(kind, m, r, Fraction(1, lr))
        if kind == "F":
            rhs = Scalar(INV_SQRT5) * pi_cot_deriv(m, t_beta) - Scalar(sr) * f * _lucas_pow(r, k) * FibAtom(r * k)
        else:
            rhs = -pi_cot_deriv(m, t_beta) - f * _lucas_pow(r, k) * LucasAtom(r * k)
        return FamilyInstance(spec, 1, rhs, f"z=1/L_r, r={r}, {'alternating F' if kind == 'F' else 'L'} series")

    if family.startswith("COR4"):
        spec = SeriesSpec(kind, m, r, Fraction(2, lr))
        t_alpha = 2 * alpha_pow(r) / lr
        b_term = f * _lucas_pow(r, k) * Scalar((INV_SQRT5 / fib(r)) ** k)
        c_scale = f * _lucas_pow(r, k) * Scalar(Fraction(1, 2**k))
        if kind == "F":
            rhs = -Scalar(INV_SQRT5) * (pi_cot_deriv(m, t_alpha) - b_term) - Scalar(sr) * c_scale * FibAtom(r * k)
        else:
            rhs = -pi_cot_deriv(m, t_alpha) - b_term - c_scale * LucasAtom(r * k)
        return FamilyInstance(spec, 1, rhs, f"z=2/L_r, r={r}, {'alternating F' if kind == 'F' else 'L'} series")

    # COR5: the non-alternating series, i.e. z = -1/L_r
    spec = SeriesSpec(kind, m, r, Fraction(-1, lr))
    if kind == "F":
        return FamilyInstance(spec, -1, Scalar(INV_SQRT5) * pi_cot_deriv(m, t_beta),
                              f"non-alternating F series over L_r^j, r={r}")
    return FamilyInstance(spec, 1, -pi_cot_deriv(m, t_beta),
                          f"non-alternating L series over L_r^j, r={r}")


def generate(family: str, m: int, r: int, ident: str | None = None) -> Identity:
    inst = family_instance(family, m, r)
    s = inst.spec
    tag = family.replace("COR", "cor").replace("_", "")
    if ident is None:
        ident = f"{tag}-m{m}" if family.startswith("COR2") else f"{tag}-m{m}-r{r}"
    return Identity(
        id=ident, family=family, m=m, r=s.r, z=s.z, lhs=s, rhs=inst.rhs,
        convergent=converges(s.r, s.z)[0], locator=inst.locator, lhs_sign=inst.lhs_sign,
    )


# -- printed examples ---------------------------------------------------------

_R5_6 = SQRT5 / 6
_R5_2 = SQRT5 / 2


def _examples() -> list[tuple[str, str, int, int, Expr]]:
    two_r5 = Scalar(2 * INV_SQRT5)
    return [
        ("s1a2ufl", "COR2_F", 2, 3,
         -two_r5 * PiPow(3) * cot_csc2(_R5_2) + Scalar(Fraction(13616, 25))),
        ("ew630ib", "COR2_L", 1, 3,
         PiPow(2) * csc2(_R5_2) - Scalar(Fraction(364, 5))),
        ("s1u6y4q", "COR3_F", 2, 2,
         two_r5 * PiPow(3) * tan_sec2(_R5_6) - Scalar(432)),
        ("fc0zaz6", "COR3_L", 1, 1,
         PiPow(2) * sec2(_R5_2) - Scalar(3)),
        ("wi3ql4i", "COR4_F", 2, 3,
         Scalar(Fraction(13616, 25)) - two_r5 * PiPow(3) * cot_csc2(_R5_2)),
        ("allakva", "COR4_L", 1, 3,
         PiPow(2) * csc2(_R5_2) - Scalar(Fraction(364, 5))),
        ("pnj960x", "COR5_F", 2, 2,
         two_r5 * PiPow(3) * tan_sec2(_R5_6)),
        ("gluacxg", "COR5_L", 1, 4,
         PiPow(2) * sec2(3 * SQRT5 / 14)),
    ]


def example(label: str) -> Identity:
    for lab, family, m, r, rhs in _examples():
        if lab == label:
            inst = family_instance(family, m, r)
            s = inst.spec
            return Identity(
                id=f"ex-{lab}", family="EXAMPLE", m=m, r=s.r, z=s.z, lhs=s, rhs=rhs,
                convergent=converges(s.r, s.z)[0],
                locator=f"printed example ({family}): {inst.locator}",
                lhs_sign=inst.lhs_sign, derived_from=family,
            )
    raise UsageError(f"unknown example {label!r}")


def build_catalog() -> list[Identity]:
    """Printed examples followed by generic instances of every family."""
    out = [example(lab) for lab, *_ in _examples()]
    for family in COROLLARY_FAMILIES:
        start = 0 if family.endswith("_F") else 1
        if family.startswith("COR2"):
            rs = [3]
        elif family.startswith("COR3"):
            rs = [1, 2, 3, 4]
        else:
            rs = [2, 3, 4]
        for r in rs:
            for m in range(start, 6, 2):
                out.append(generate(family, m, r))
    return out


def catalog_index(catalog: Sequence[Identity] | None = None) -> dict[str, Identity]:
    return {i.id: i for i in (catalog if catalog is not None else build_catalog())}


def perturbed(identity: Identity, delta) -> Identity:
    """Copy of ``identity`` with ``delta`` added to its right-hand side."""
    return replace(identity, rhs=identity.rhs + Scalar(delta))


# -- verification -------------------------------------------------------------


@dataclass(frozen=True)
class VerificationReport:
    identity: str
    mode: Mode
    lhs_value: arith.Real | None
    rhs_value: arith.Real | None
    abs_error: arith.Real | None
    rel_error: arith.Real | None
    terms_used: int
    precision: int
    elapsed_ms: float
    verdict: Verdict
    diagnostic: str | None = None

    @property
    def passed(self) -> bool:
        return self.verdict == "pass"

    def to_dict(self) -> dict:
        def num(x):
            return None if x is None else arith.nstr(x, self.precision)

        return {
            "identity": self.identity,
            "mode": self.mode,
            "lhs_value": num(self.lhs_value),
            "rhs_value": num(self.rhs_value),
            "abs_error": num(self.abs_error),
            "rel_error": num(self.rel_error),
            "terms_used": str(self.terms_used),
            "precision": str(self.precision),
            "elapsed_ms": f"{self.elapsed_ms:.3f}",
            "verdict": self.verdict,
            "diagnostic": self.diagnostic,
        }


def _errors(lhs, rhs, P):
    err = abs(lhs - rhs)
    rel = err / abs(rhs) if rhs else err
    return arith.rounded(err, P), arith.rounded(rel, P)


def verify(
    identity: Identity,
    P: int = arith.DEFAULT_PRECISION,
    tol: arith.Real | None = None,
    modes: Sequence[Mode] | None = None,
    max_terms: int = DEFAULT_MAX_TERMS,
) -> list[VerificationReport]:
    """Check ``identity`` in every applicable mode; one report per mode.

    By default a convergent identity is checked by direct summation and in
    polygamma form, a divergent one in polygamma form only.  Asking for
    ``direct_sum`` on a divergent identity yields a ``divergent_skipped_direct``
    report instead of a sum.
    """
    if tol is None:
        tol = default_tolerance(P)
    if modes is None:
        modes = ("direct_sum", "polygamma_form") if identity.convergent else ("polygamma_form",)
    reports = []
    try:
        rhs = identity.rhs.evaluate(P)
    except (FibZetaError, ArithmeticError) as exc:
        rhs = None
        rhs_error = f"{type(exc).__name__}: {exc}"
    for mode in modes:
        t0 = time.perf_counter()
        lhs, terms, diag, skipped = None, 0, None, False
        if rhs is None:
            diag = rhs_error
        elif mode == "direct_sum":
            if not identity.convergent:
                skipped = True
                _, ratio = converges(identity.r, identity.z)
                diag = f"divergent: |alpha^r z| = {format_qs5(ratio)} > 1"
            else:
                try:
                    res = sum_series(identity.lhs, P, tol / SUM_HEADROOM, max_terms)
                    lhs, terms = identity.lhs_sign * res.value, res.terms_used
                except TruncationError as exc:
                    terms = exc.partial.terms_used if exc.partial else 0
                    diag = f"TruncationError: {exc}"
                except (FibZetaError, ArithmeticError) as exc:
                    diag = f"{type(exc).__name__}: {exc}"
        elif mode == "polygamma_form":
            try:
                s = identity.lhs
                lhs = identity.lhs_sign * theorem_rhs(s.kind, s.m, s.r, s.z, P)
            except (FibZetaError, ArithmeticError) as exc:
                diag = f"{type(exc).__name__}: {exc}"
        else:
            raise UsageError(f"unknown verification mode {mode!r}")
        elapsed = (time.perf_counter() - t0) * 1000.0
        if skipped:
            verdict = "divergent_skipped_direct"
            err = rel = None
        elif lhs is None:
            verdict = "fail"
            err = rel = None
        else:
            err, rel = _errors(lhs, rhs, P)
            verdict = "pass" if err < tol else "fail"
        reports.append(VerificationReport(
            identity.id, mode, lhs, rhs, err, rel, terms, P, elapsed, verdict, diag,
        ))
    return reports


def cross_check(a: Identity, b: Identity, P: int = arith.DEFAULT_PRECISION) -> arith.Real:
    """``|rhs(a) - rhs(b)|`` for two identities about the same series."""
    sa, sb = a.lhs, b.lhs
    if (sa.kind, sa.m, sa.r, sa.z, a.lhs_sign) != (sb.kind, sb.m, sb.r, sb.z, b.lhs_sign):
        raise UsageError(f"{a.id} and {b.id} are not statements about the same series")
    return abs(a.rhs.evaluate(P) - b.rhs.evaluate(P))
