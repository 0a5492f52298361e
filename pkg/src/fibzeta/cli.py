"""Command-line front end.

    fibzeta list      [--family F] [--convergent | --divergent]
    fibzeta verify    (ID ... | --all) [--mode MODE]
    fibzeta sum       --kind F|L --m M --r R --z P/Q
    fibzeta eval      FUNC [--m M] [--x X] [--n N]
    fibzeta generate  --family COR3_F --m M --r R
    fibzeta selftest

Common options (--digits, --tol-exp, --max-terms, --seed, --json, --out,
--jobs, --inject-fault) can also be set through FIBZETA_* environment
variables; a flag on the command line wins over the environment.

Exit codes: 0 all checks passed, 1 a mathematical check failed, 2 usage error.
"""

from __future__ import annotations

import argparse
import contextlib
import datetime as _dt
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from fibzeta import __version__, arith
from fibzeta.errors import DomainError, FibZetaError, UsageError
from fibzeta.identities import (
    FAMILIES,
    Identity,
    build_catalog,
    family_instance,
    generate,
    perturbed,
    theorem_rhs,
    verify,
)
from fibzeta.qsqrt5 import fib, format_qs5, lucas, parse_qs5
from fibzeta.series import DEFAULT_MAX_TERMS, SeriesSpec, converges, sum_series
from fibzeta.specfun import bernoulli, cot_deriv, enable_fault, inject_fault, polygamma, zeta_int

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
ENV_PREFIX = "FIBZETA_"

FAULTS = {"bernoulli-sign": "bernoulli_sign", "catalog-constant": None}
# the catalog-constant fault turns the printed "- 432" into "- 433"
PERTURBED_ID = "ex-s1u6y4q"
PERTURBATION = -1


class _UsageExit(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # keep exit code 2 but make it testable in-process
        self.print_usage(sys.stderr)
        raise _UsageExit(f"{self.prog}: error: {message}")


# -- configuration ------------------------------------------------------------


def _env(name: str) -> str | None:
    value = os.environ.get(ENV_PREFIX + name)
    return value if value not in (None, "") else None


def _env_int(name: str) -> int | None:
    raw = _env(name)
    if raw is None:
        return None
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"{ENV_PREFIX}{name}={raw!r} is not an integer") from None


def _env_bool(name: str) -> bool:
    raw = _env(name)
    return raw is not None and raw.lower() in ("1", "true", "yes", "on")


class RunConfig:
    """Resolved options: command line, then environment, then defaults."""

    def __init__(self, args: argparse.Namespace) -> None:
        def pick(attr, env_name, default):
            value = getattr(args, attr, None)
            if value is not None:
                return value
            value = _env_int(env_name)
            return default if value is None else value

        self.P = pick("digits", "DIGITS", arith.DEFAULT_PRECISION)
        if self.P < arith.MIN_PRECISION:
            raise UsageError(f"--digits must be at least {arith.MIN_PRECISION}, got {self.P}")
        self.tol_exp = pick("tol_exp", "TOL_EXP", self.P - 20)
        if self.tol_exp >= self.P - 10:
            raise UsageError(f"--tol-exp must be below digits - 10 = {self.P - 10}")
        self.max_terms = pick("max_terms", "MAX_TERMS", DEFAULT_MAX_TERMS)
        if self.max_terms < 1:
            raise UsageError("--max-terms must be positive")
        self.seed = pick("seed", "SEED", 0)
        self.jobs = pick("jobs", "JOBS", os.cpu_count() or 1)
        if self.jobs < 1:
            raise UsageError("--jobs must be positive")
        self.json = bool(getattr(args, "json", False)) or _env_bool("JSON")
        self.out = getattr(args, "out", None) or _env("OUT")
        faults = getattr(args, "inject_fault", None) or []
        if not faults and _env("INJECT_FAULT"):
            faults = [f.strip() for f in _env("INJECT_FAULT").split(",") if f.strip()]
        for f in faults:
            if f not in FAULTS:
                raise UsageError(f"unknown fault {f!r}; choose from {', '.join(FAULTS)}")
        self.faults = tuple(sorted(set(faults)))

    @property
    def tol(self) -> arith.Real:
        return arith.tolerance(self.tol_exp, self.P)

    def header(self) -> dict:
        epoch = os.environ.get("SOURCE_DATE_EPOCH")
        if epoch is not None and epoch.isdigit():
            when = _dt.datetime.fromtimestamp(int(epoch), _dt.timezone.utc)
        else:
            when = _dt.datetime.now(_dt.timezone.utc).replace(microsecond=0)
        return {
            "tool_version": __version__,
            "precision": str(self.P),
            "tolerance_exponent": str(self.tol_exp),
            "seed": str(self.seed),
            "timestamp": when.isoformat(),
        }


@contextlib.contextmanager
def _kernel_faults(faults: Sequence[str]):
    with contextlib.ExitStack() as stack:
        for f in faults:
            if FAULTS[f]:
                stack.enter_context(inject_fault(FAULTS[f]))
        yield


# -- output ---------------------------------------------------------------------


def render_json(doc) -> str:
    """Canonical JSON text; ``render_json(json.loads(s)) == s`` for its output."""
    return json.dumps(doc, indent=2, sort_keys=True, ensure_ascii=True) + "\n"


def _emit(config: RunConfig, text: str) -> None:
    if config.out:
        with open(config.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _table(rows: list[list[str]], footer: str | None = None) -> str:
    widths = [max(len(r[i]) for r in rows) for i in range(len(rows[0]))]
    lines = ["  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in rows]
    if footer:
        lines.append(footer)
    return "\n".join(lines) + "\n"


def _short(x: str | None) -> str:
    if x is None:
        return "-"
    return arith.context(15).nstr(arith.context(15).mpf(x), 3)


# -- catalog access -------------------------------------------------------------


@lru_cache(maxsize=None)
def _catalog() -> tuple[Identity, ...]:
    return tuple(build_catalog())


def _lookup(ident: str, faults: Sequence[str]) -> Identity:
    for item in _catalog():
        if item.id == ident:
            if "catalog-constant" in faults and ident == PERTURBED_ID:
                return perturbed(item, PERTURBATION)
            return item
    raise UsageError(f"unknown identity id {ident!r}")


def _verify_ids(ident: str, P: int, tol_exp: int, max_terms: int, faults, modes) -> list[dict]:
    identity = _lookup(ident, faults)
    reports = verify(identity, P, arith.tolerance(tol_exp, P), modes, max_terms)
    return [r.to_dict() for r in reports]


def _worker_init(faults: Sequence[str]) -> None:
    for f in faults:
        if FAULTS[f]:
            enable_fault(FAULTS[f])


def run_verifications(ids: Sequence[str], config: RunConfig, modes=None) -> list[dict]:
    """Verify ``ids`` (in the given order) and return serialized reports."""
    for ident in ids:
        _lookup(ident, ())
    args = [(i, config.P, config.tol_exp, config.max_terms, config.faults, modes) for i in ids]
    if config.jobs <= 1 or len(ids) <= 1:
        with _kernel_faults(config.faults):
            results = [_verify_ids(*a) for a in args]
    else:
        with ProcessPoolExecutor(
            max_workers=min(config.jobs, len(ids)),
            initializer=_worker_init, initargs=(config.faults,),
        ) as pool:
            # map keeps submission order, so output order never depends on timing
            results = list(pool.map(_verify_ids, *zip(*args)))
    return [rep for group in results for rep in group]


def _report_rows(reports: list[dict]) -> list[list[str]]:
    rows = [["identity", "mode", "verdict", "terms", "abs_error", "ms", "note"]]
    for r in reports:
        rows.append([
            r["identity"], r["mode"], r["verdict"], r["terms_used"],
            _short(r["abs_error"]), r["elapsed_ms"], r["diagnostic"] or "",
        ])
    return rows


def _tally(reports: list[dict]) -> tuple[int, int]:
    counted = [r for r in reports if r["verdict"] != "divergent_skipped_direct"]
    return sum(r["verdict"] == "pass" for r in counted), len(counted)


# -- commands -------------------------------------------------------------------


def _filter_catalog(family: str | None, convergence: str | None) -> list[Identity]:
    out = []
    for item in _catalog():
        if family and item.family != family:
            continue
        if convergence == "convergent" and not item.convergent:
            continue
        if convergence == "divergent" and item.convergent:
            continue
        out.append(item)
    return out


def _convergence_arg(args) -> str | None:
    if getattr(args, "convergence", None):
        return args.convergence
    raw = _env("CONVERGENCE")
    if raw not in (None, "convergent", "divergent"):
        raise UsageError(f"{ENV_PREFIX}CONVERGENCE must be 'convergent' or 'divergent'")
    return raw


def _family_arg(args) -> str | None:
    family = getattr(args, "family", None) or _env("FAMILY")
    if family is not None and family not in FAMILIES:
        raise UsageError(f"unknown family {family!r}")
    return family


def cmd_list(args, config: RunConfig) -> int:
    items = _filter_catalog(_family_arg(args), _convergence_arg(args))
    entries = [
        {
            "id": i.id, "family": i.family, "kind": i.kind, "m": str(i.m), "r": str(i.r),
            "z": str(i.z), "lhs_sign": str(i.lhs_sign),
            "convergent": "true" if i.convergent else "false", "locator": i.locator,
        }
        for i in items
    ]
    if config.json:
        _emit(config, render_json({"header": config.header(), "identities": entries}))
    else:
        rows = [["id", "family", "kind", "m", "r", "z", "convergent", "locator"]]
        rows += [[e["id"], e["family"], e["kind"], e["m"], e["r"], e["z"], e["convergent"], e["locator"]]
                 for e in entries]
        _emit(config, _table(rows, f"{len(entries)} identities"))
    return EXIT_OK


def _emit_reports(config: RunConfig, reports: list[dict]) -> int:
    passed, total = _tally(reports)
    if config.json:
        _emit(config, render_json({"header": config.header(), "reports": reports}))
    else:
        _emit(config, _table(_report_rows(reports), f"passed {passed}/{total}"))
    return EXIT_OK if passed == total else EXIT_FAIL


def cmd_verify(args, config: RunConfig) -> int:
    ids = list(args.ids or []) + list(args.id or [])
    if args.all:
        if ids:
            raise UsageError("give identity ids or --all, not both")
        ids = [i.id for i in _filter_catalog(_family_arg(args), _convergence_arg(args))]
    if not ids:
        raise UsageError("no identities selected (give ids or --all)")
    modes = tuple(args.mode) if args.mode else None
    return _emit_reports(config, run_verifications(ids, config, modes))


def cmd_sum(args, config: RunConfig) -> int:
    try:
        z = Fraction(args.z)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"cannot parse z={args.z!r} as a rational p/q") from None
    spec = SeriesSpec(args.kind, args.m, args.r, z)
    P, tol = config.P, config.tol
    ok, ratio = converges(spec.r, spec.z)
    with _kernel_faults(config.faults):
        poly = theorem_rhs(spec.kind, spec.m, spec.r, spec.z, P)
        doc = {
            "kind": spec.kind, "m": str(spec.m), "r": str(spec.r), "z": str(spec.z),
            "ratio": format_qs5(ratio),
            "classification": "convergent" if ok else "divergent",
            "polygamma_value": arith.nstr(poly, P),
        }
        status = EXIT_OK
        if ok:
            res = sum_series(spec, P, tol / 1000, config.max_terms)
            err = abs(res.value - poly)
            doc.update({
                "sum": arith.nstr(res.value, P),
                "tail_bound": arith.nstr(res.tail_bound, P),
                "terms_used": str(res.terms_used),
                "abs_difference": arith.nstr(err, P),
                "agree": "true" if err < tol else "false",
            })
            if err >= tol:
                status = EXIT_FAIL
    if config.json:
        _emit(config, render_json({"header": config.header(), "sum": doc}))
        return status
    rel = "<" if ok else ">"
    lines = [
        f"series          {spec.kind}  m={spec.m}  r={spec.r}  z={spec.z}",
        f"classification  {doc['classification']} (|alpha^r z| = {doc['ratio']} {rel} 1)",
    ]
    if ok:
        lines += [
            f"direct sum      {doc['sum']}",
            f"tail bound      {doc['tail_bound']}",
            f"terms used      {doc['terms_used']}",
        ]
    lines.append(f"polygamma form  {doc['polygamma_value']}")
    if ok:
        lines.append(f"difference      {doc['abs_difference']} ({'agree' if status == EXIT_OK else 'DISAGREE'})")
    _emit(config, "\n".join(lines) + "\n")
    return status


EVAL_FUNCS = ("psi", "zeta", "cotd", "bernoulli", "fib", "lucas", "gamma", "pi", "sqrt5")


def cmd_eval(args, config: RunConfig) -> int:
    P = config.P
    f = args.func

    def need(name):
        value = getattr(args, name)
        if value is None:
            raise UsageError(f"eval {f} needs --{name}")
        return value

    with _kernel_faults(config.faults):
        if f == "psi":
            value = arith.nstr(polygamma(need("m"), parse_qs5(need("x")), P), P)
        elif f == "zeta":
            value = arith.nstr(zeta_int(need("n"), P), P)
        elif f == "cotd":
            value = arith.nstr(cot_deriv(need("m"), parse_qs5(need("x")), P), P)
        elif f == "bernoulli":
            value = str(bernoulli(need("n")))
        elif f == "fib":
            value = str(fib(need("n")))
        elif f == "lucas":
            value = str(lucas(need("n")))
        elif f == "gamma":
            value = arith.nstr(arith.const_euler_gamma(P), P)
        elif f == "pi":
            value = arith.nstr(arith.const_pi(P), P)
        else:
            value = arith.nstr(arith.const_sqrt5(P), P)
    if config.json:
        _emit(config, render_json({"header": config.header(), "function": f, "value": value}))
    else:
        _emit(config, value + "\n")
    return EXIT_OK


def cmd_generate(args, config: RunConfig) -> int:
    family = args.family or _env("FAMILY")
    if family is None:
        raise UsageError("generate needs --family")
    family_instance(family, args.m, args.r)  # validates before any work
    identity = generate(family, args.m, args.r)
    with _kernel_faults(config.faults):
        reports = [r.to_dict() for r in verify(identity, config.P, config.tol, None, config.max_terms)]
    passed, total = _tally(reports)
    info = {
        "id": identity.id, "family": family, "kind": identity.kind, "m": str(identity.m),
        "r": str(identity.r), "z": str(identity.z), "lhs_sign": str(identity.lhs_sign),
        "convergent": "true" if identity.convergent else "false",
        "rhs": identity.rhs.render(),
    }
    if config.json:
        _emit(config, render_json({"header": config.header(), "identity": info, "reports": reports}))
    else:
        head = [f"{k:10s}  {v}" for k, v in info.items()]
        _emit(config, "\n".join(head) + "\n" + _table(_report_rows(reports), f"passed {passed}/{total}"))
    return EXIT_OK if passed == total else EXIT_FAIL


def cmd_selftest(args, config: RunConfig) -> int:
    from fibzeta.selftest import all_suites

    with _kernel_faults(config.faults):
        suites = all_suites(config.P, config.seed)
    reports = run_verifications([i.id for i in _catalog()], config)
    passed, total = _tally(reports)
    worst = None
    for r in reports:
        if r["abs_error"] is not None:
            e = arith.real(r["abs_error"], config.P)
            worst = e if worst is None or e > worst else worst

    summary = [
        {
            "suite": s.name, "count": str(s.count), "passed": str(s.passed),
            "max_residual": None if s.max_residual is None else arith.nstr(s.max_residual, config.P),
            "failures": s.failures[:20],
        }
        for s in suites
    ]
    summary.append({
        "suite": "catalog", "count": str(total), "passed": str(passed),
        "max_residual": None if worst is None else arith.nstr(worst, config.P),
        "failures": [f"{r['identity']} {r['mode']}" for r in reports if r["verdict"] == "fail"][:20],
    })
    ok = all(s["count"] == s["passed"] and s["count"] != "0" for s in summary)
    if config.json:
        _emit(config, render_json({"header": config.header(), "suites": summary, "reports": reports}))
    else:
        rows = [["suite", "count", "passed", "max_residual"]]
        rows += [[s["suite"], s["count"], s["passed"], _short(s["max_residual"])] for s in summary]
        text = _table(rows, "selftest " + ("PASSED" if ok else "FAILED"))
        for s in summary:
            for fail in s["failures"]:
                text += f"  fail [{s['suite']}] {fail}\n"
        _emit(config, text)
    return EXIT_OK if ok else EXIT_FAIL


# -- argument parsing -------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--digits", type=int, help="working precision P in decimal digits (default 50)")
    common.add_argument("--tol-exp", type=int, help="verdict tolerance 10^-E (default P-20)")
    common.add_argument("--max-terms", type=int, help="term budget for direct sums")
    common.add_argument("--seed", type=int, help="seed for random test points")
    common.add_argument("--json", action="store_true", default=None, help="structured report output")
    common.add_argument("--out", help="write output to this file")
    common.add_argument("--jobs", type=int, help="worker processes (default: CPU count)")
    common.add_argument("--inject-fault", action="append", choices=sorted(FAULTS),
                        help="deliberately break one input to show that checks fail")

    def filters(p):
        p.add_argument("--family", choices=FAMILIES)
        g = p.add_mutually_exclusive_group()
        g.add_argument("--convergent", dest="convergence", action="store_const", const="convergent")
        g.add_argument("--divergent", dest="convergence", action="store_const", const="divergent")

    parser = _Parser(prog="fibzeta", description="Fibonacci/Lucas zeta-series identity checker.")
    parser.add_argument("--version", action="version", version=f"fibzeta {__version__}")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser, required=True)

    p = sub.add_parser("list", parents=[common], help="list the identity catalog")
    filters(p)
    p.set_defaults(handler=cmd_list)

    p = sub.add_parser("verify", parents=[common], help="verify catalog identities")
    p.add_argument("ids", nargs="*", help="identity ids")
    p.add_argument("--id", action="append", help="identity id (repeatable)")
    p.add_argument("--all", action="store_true", help="every (filtered) catalog entry")
    p.add_argument("--mode", action="append", choices=("direct_sum", "polygamma_form"))
    filters(p)
    p.set_defaults(handler=cmd_verify)

    p = sub.add_parser("sum", parents=[common], help="sum one series and compare with its polygamma form")
    p.add_argument("--kind", choices=("F", "L"), required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--z", required=True, help="rational p/q")
    p.set_defaults(handler=cmd_sum)

    p = sub.add_parser("eval", parents=[common], help="evaluate one kernel")
    p.add_argument("func", choices=EVAL_FUNCS)
    p.add_argument("--m", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--x", help="point as p/q or a,b meaning a+b*sqrt5")
    p.set_defaults(handler=cmd_eval)

    p = sub.add_parser("generate", parents=[common], help="build and verify a new corollary instance")
    p.add_argument("--family", choices=[f for f in FAMILIES if f.startswith("COR")])
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.set_defaults(handler=cmd_generate)

    p = sub.add_parser("selftest", parents=[common], help="run every check suite")
    p.set_defaults(handler=cmd_selftest)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        config = RunConfig(args)
        return args.handler(args, config)
    except _UsageExit as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    except (UsageError, DomainError) as exc:
        print(f"fibzeta: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except FibZetaError as exc:
        print(f"fibzeta: failed: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
