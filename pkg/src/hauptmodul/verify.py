"""Range checks for the sign theorem and the facts its proof relies on.

Every checker returns a :class:`VerificationReport`.  Failures are reported as
counterexamples, never raised.  Numerical inequalities are certified only when
the two sides are separated by more than an a-priori error bound; if they are
not, the check is repeated once at doubled precision and otherwise reported as
indeterminate.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Callable

from .identities import IdentityError, divisor_sums, kaneko_a, ohta_c, zagier_sum
from .numerics import BigFloat, const_euler, const_pi, real_exp, real_log, real_sqrt
from .qseries import named_series
from .traces import trace_t

__all__ = [
    "VerificationReport",
    "certify_less",
    "check_signs",
    "check_ckl_sign",
    "check_ckl_bounds",
    "check_robin",
    "check_case1_claim",
    "check_zagier",
    "check_ohta",
    "check_kaneko",
    "cross_check_coeffs",
    "asymptotic_ratio",
    "claim_sides",
    "ckl_envelope",
]

TraceSource = Callable[[int], int]

# A few dozen faithful operations, and exp arguments below 2^10, lose far fewer than 20 bits.
ERROR_SLACK_BITS = 20


@dataclass
class VerificationReport:
    check_name: str
    lo: int
    hi: int
    counterexamples: list[tuple[int, str]] = field(default_factory=list)
    elapsed_ms: int = 0

    @property
    def passed(self) -> bool:
        return not self.counterexamples

    def to_dict(self) -> dict:
        return {
            "check": self.check_name,
            "lo": self.lo,
            "hi": self.hi,
            "passed": self.passed,
            "counterexamples": [{"input": i, "detail": d} for i, d in self.counterexamples],
            "elapsed_ms": self.elapsed_ms,
        }


class _Timer:
    def __init__(self, report: VerificationReport):
        self.report = report

    def __enter__(self):
        self.start = time.perf_counter()
        return self.report

    def __exit__(self, *exc):
        self.report.elapsed_ms = int((time.perf_counter() - self.start) * 1000)
        return False


def _err(scale: BigFloat | int, p: int) -> BigFloat:
    return BigFloat(abs(scale.man), scale.exp + ERROR_SLACK_BITS - p, p) \
        if isinstance(scale, BigFloat) else BigFloat(abs(scale), ERROR_SLACK_BITS - p, p)


def certify_less(compute: Callable[[int], tuple], p: int) -> tuple[bool | None, str]:
    """Decide lhs < rhs where ``compute(prec)`` returns (lhs, rhs, scale).

    ``scale`` bounds the magnitude of every term; the error allowed on each side is
    scale * 2^(slack - prec).  Returns (True, detail), (False, detail) when the
    opposite strict inequality is certified, or (None, detail) if undecided.
    """
    detail = ""
    for prec in (p, 2 * p):
        lhs, rhs, scale = compute(prec)
        err = _err(scale, prec)
        detail = (f"lhs={_fmt(lhs)} rhs={_fmt(rhs)} err={_fmt(err)} prec={prec}")
        if lhs + err < rhs - err:
            return True, detail
        if lhs - err > rhs + err:
            return False, detail
    return None, "indeterminate: " + detail


def _fmt(x) -> str:
    if isinstance(x, BigFloat):
        return x.to_decimal(12)
    return str(x)


# --- exact sign scans -----------------------------------------------------------

def check_signs(series_name: str = "hauptmodul", n_max: int = 1000) -> VerificationReport:
    """(-1)^(n+1) c_n > 0 over the range; zero coefficients count as failures."""
    if n_max < 1:
        raise ValueError("n_max must be at least 1")
    if series_name == "hauptmodul":
        lo = -1
    elif series_name == "j_inverse":
        lo = 1
    else:
        raise ValueError(f"sign check is defined for hauptmodul and j_inverse, not {series_name!r}")
    report = VerificationReport(f"signs:{series_name}", lo, n_max)
    with _Timer(report):
        s = named_series(series_name, n_max + 1)
        for n in range(lo, n_max + 1):
            c = s[n]
            if c == 0:
                report.counterexamples.append((n, "coefficient vanishes"))
            elif (c > 0) != (n % 2 == 1):
                report.counterexamples.append((n, f"coefficient {c} has the wrong sign"))
    return report


def _discriminants(d_max: int) -> list[int]:
    return [d for d in range(3, d_max + 1) if d % 4 in (0, 3)]


def check_ckl_sign(d_max: int, trace: TraceSource = trace_t) -> VerificationReport:
    """t(d) > 0 for d = 0 mod 4 and t(d) < 0 for d = 3 mod 4."""
    report = VerificationReport("ckl-sign", 3, d_max)
    with _Timer(report):
        for d in _discriminants(d_max):
            t = trace(d)
            if (d % 4 == 0 and t <= 0) or (d % 4 == 3 and t >= 0):
                report.counterexamples.append((d, f"t({d})={t}"))
    return report


# --- certified numerical inequalities ---------------------------------------------

def ckl_envelope(d: int, p: int) -> tuple[BigFloat, BigFloat]:
    """(exp(pi sqrt d), (2 pi d)^(3/2) exp(pi sqrt d / 3) / 2) at p bits."""
    pi = const_pi(p)
    x = pi * real_sqrt(d, p)
    main = real_exp(x, p)
    two_pi_d = pi * (2 * d)
    spread = (two_pi_d * real_sqrt(two_pi_d, p) * real_exp(x / 3, p)).ldexp(-1)
    return main, spread


def check_ckl_bounds(d_max: int, p: int = 128, trace: TraceSource = trace_t) -> VerificationReport:
    """t(d) inside [M - E, M + E] (d = 0 mod 4) or [-M - E, E - M] (d = 3 mod 4)."""
    report = VerificationReport("ckl-bounds", 3, d_max)
    with _Timer(report):
        for d in _discriminants(d_max):
            t = trace(d)
            sign = 1 if d % 4 == 0 else -1

            def lower(prec, d=d, t=t, sign=sign):
                main, spread = ckl_envelope(d, prec)
                return sign * main - spread, t, main + spread

            def upper(prec, d=d, t=t, sign=sign):
                main, spread = ckl_envelope(d, prec)
                return t, sign * main + spread, main + spread

            for side, fn in (("lower", lower), ("upper", upper)):
                ok, detail = certify_less(fn, p)
                if not ok:
                    report.counterexamples.append((d, f"{side} bound: t={t} {detail}"))
    return report


def check_robin(n_max: int, p: int = 64) -> VerificationReport:
    """sigma(n) < e^gamma n log log n + n / log log n for 3 <= n <= n_max."""
    if n_max < 3:
        raise ValueError("n_max must be at least 3")
    report = VerificationReport("robin", 3, n_max)
    with _Timer(report):
        sig = divisor_sums(n_max)
        e_gamma = {p: real_exp(const_euler(p + 8), p)}

        for n in range(3, n_max + 1):
            def sides(prec, n=n):
                if prec not in e_gamma:
                    e_gamma[prec] = real_exp(const_euler(prec + 8), prec)
                loglog = real_log(real_log(n, prec + 8), prec)
                rhs = e_gamma[prec] * n * loglog + BigFloat(n, 0, prec) / loglog
                return sig[n], rhs, rhs

            ok, detail = certify_less(sides, p)
            if not ok:
                report.counterexamples.append((n, f"sigma={sig[n]} {detail}"))
    return report


def claim_sides(k: int, p: int) -> tuple[BigFloat, BigFloat]:
    """Both sides of 9 + 24(e^g k LL + k/LL) < (exp(pi sqrt(16k)) - (32 pi k)^(3/2) exp(pi sqrt(16k)/3) / 2) / 2."""
    loglog = real_log(real_log(k, p + 8), p)
    e_gamma = real_exp(const_euler(p + 8), p)
    lhs = 9 + 24 * (e_gamma * k * loglog + BigFloat(k, 0, p) / loglog)
    pi = const_pi(p)
    x = pi * real_sqrt(16 * k, p)
    base = pi * (32 * k)
    correction = (base * real_sqrt(base, p) * real_exp(x / 3, p)).ldexp(-1)
    rhs = (real_exp(x, p) - correction).ldexp(-1)
    return lhs, rhs


def check_case1_claim(k_min: int = 3, k_max: int = 50, p: int = 256) -> VerificationReport:
    """The sufficient inequality used for n = 4k; log log k needs k >= 3."""
    if k_min < 3:
        raise ValueError("k_min must be at least 3 (log log k <= 0 below that)")
    report = VerificationReport("claim", k_min, k_max)
    with _Timer(report):
        for k in range(k_min, k_max + 1):
            def sides(prec, k=k):
                lhs, rhs = claim_sides(k, prec)
                main = real_exp(const_pi(prec) * real_sqrt(16 * k, prec), prec)
                return lhs, rhs, abs(lhs) + main
            ok, detail = certify_less(sides, p)
            if not ok:
                report.counterexamples.append((k, detail))
    return report


# --- identity checks ------------------------------------------------------------

def check_zagier(n_max: int, trace: TraceSource = trace_t) -> VerificationReport:
    report = VerificationReport("zagier", 1, n_max)
    with _Timer(report):
        for n in range(1, n_max + 1):
            computed, expected = zagier_sum(n, trace)
            if computed != expected:
                report.counterexamples.append((n, f"sum={computed} expected={expected}"))
    return report


def _compare(report: VerificationReport, n: int, formula, series, trace: TraceSource) -> None:
    try:
        value = formula(n, trace)
    except IdentityError as exc:
        report.counterexamples.append((n, str(exc)))
        return
    if value != series[n]:
        report.counterexamples.append((n, f"formula={value} series={series[n]}"))


def check_ohta(n_max: int, trace: TraceSource = trace_t) -> VerificationReport:
    report = VerificationReport("ohta", 1, n_max)
    with _Timer(report):
        series = named_series("hauptmodul", n_max + 1)
        for n in range(1, n_max + 1):
            _compare(report, n, ohta_c, series, trace)
    return report


def check_kaneko(n_max: int, trace: TraceSource = trace_t) -> VerificationReport:
    report = VerificationReport("kaneko", 1, n_max)
    with _Timer(report):
        series = named_series("j", n_max + 1)
        for n in range(1, n_max + 1):
            _compare(report, n, kaneko_a, series, trace)
    return report


def cross_check_coeffs(n_max: int, trace: TraceSource = trace_t) -> VerificationReport:
    """Trace formulas against the exact q-series: Ohta up to n_max, Kaneko up to min(n_max, 20)."""
    report = VerificationReport("coeffs", 1, n_max)
    with _Timer(report):
        ohta = check_ohta(n_max, trace)
        kaneko = check_kaneko(min(n_max, 20), trace)
        report.counterexamples.extend((n, "ohta: " + d) for n, d in ohta.counterexamples)
        report.counterexamples.extend((n, "kaneko: " + d) for n, d in kaneko.counterexamples)
    return report


def asymptotic_ratio(n_max: int, p: int = 128) -> list[tuple[int, BigFloat]]:
    """c(n) * 2 n^(3/4) / exp(2 pi sqrt n) for 1 <= n <= n_max."""
    series = named_series("hauptmodul", n_max + 1)
    two_pi = const_pi(p + 16).ldexp(1)
    out = []
    for n in range(1, n_max + 1):
        root = real_sqrt(n, p + 16)
        growth = real_exp(two_pi * root, p + 16)
        ratio = (root * real_sqrt(root, p + 16) * (2 * series[n])) / growth
        out.append((n, ratio.with_prec(p)))
    return out
