"""Coefficient formulas in terms of traces of singular moduli.

* ohta_c:   n c(n) = sum_r t(n - r^2) + (-1)^n sum_{r odd} t(4n - r^2) + 24 sigma_odd(n)
* kaneko_a: n a(n) = sum_r t(n - r^2) + sum_{r odd} ((-1)^n t(4n - r^2) - t(16n - r^2))
* zagier_sum: sum_{|r| < 2 sqrt n} t(4n - r^2) in {-4, 2, 0}

Every function takes an optional ``trace`` callable so precomputed tables
can be plugged in; the default computes traces on demand.
"""

from __future__ import annotations

import math
from typing import Callable

from .traces import trace_t

__all__ = [
    "IdentityError",
    "divisor_sum",
    "divisor_sums",
    "ohta_c",
    "kaneko_a",
    "zagier_sum",
]

TraceSource = Callable[[int], int]


class IdentityError(ArithmeticError):
    """A bracketed sum that should be divisible by n was not."""


def divisor_sum(n: int, odd_only: bool = False) -> int:
    if n < 1:
        raise ValueError("divisor_sum needs n >= 1")
    if odd_only:
        while n % 2 == 0:
            n //= 2
    total = 0
    for d in range(1, math.isqrt(n) + 1):
        if n % d == 0:
            total += d
            e = n // d
            if e != d:
                total += e
    return total


def divisor_sums(n_max: int) -> list[int]:
    """sigma(n) for 0 <= n <= n_max by sieving (index 0 holds 0)."""
    sig = [0] * (n_max + 1)
    for d in range(1, n_max + 1):
        for m in range(d, n_max + 1, d):
            sig[m] += d
    return sig


def _sum_over_all_r(m: int, trace: TraceSource) -> int:
    # r ranges over Z; t vanishes below -1, so r^2 <= m + 1 suffices.
    total = trace(m)
    r = 1
    while r * r <= m + 1:
        total += 2 * trace(m - r * r)
        r += 1
    return total


def _sum_over_odd_r(m: int, trace: TraceSource) -> int:
    total = 0
    r = 1
    while r * r <= m + 1:
        total += trace(m - r * r)
        r += 2
    return total


def _exact_quotient(braced: int, n: int, what: str) -> int:
    q, rem = divmod(braced, n)
    if rem:
        raise IdentityError(f"{what}: bracketed sum {braced} is not divisible by n={n}")
    return q


def ohta_c(n: int, trace: TraceSource = trace_t) -> int:
    """c(n) of eta^24(tau)/eta^24(2 tau) from traces, for n >= 1."""
    if n < 1:
        raise ValueError("ohta_c needs n >= 1")
    sign = -1 if n % 2 else 1
    braced = (_sum_over_all_r(n, trace) + sign * _sum_over_odd_r(4 * n, trace)
              + 24 * divisor_sum(n, odd_only=True))
    return _exact_quotient(braced, n, f"ohta_c({n})")


def kaneko_a(n: int, trace: TraceSource = trace_t) -> int:
    """a(n) of j from traces, for n >= 1."""
    if n < 1:
        raise ValueError("kaneko_a needs n >= 1")
    sign = -1 if n % 2 else 1
    braced = (_sum_over_all_r(n, trace) + sign * _sum_over_odd_r(4 * n, trace)
              - _sum_over_odd_r(16 * n, trace))
    return _exact_quotient(braced, n, f"kaneko_a({n})")


def zagier_sum(n: int, trace: TraceSource = trace_t) -> tuple[int, int]:
    """(computed, expected) for the sum of t(4n - r^2) over |r| < 2 sqrt(n)."""
    if n < 1:
        raise ValueError("zagier_sum needs n >= 1")
    m = 4 * n
    computed = trace(m)
    r = 1
    while r * r < m:  # strict: r = 2 sqrt(n) would contribute t(0)
        computed += 2 * trace(m - r * r)
        r += 1
    if math.isqrt(n) ** 2 == n:
        expected = -4
    elif math.isqrt(4 * n + 1) ** 2 == 4 * n + 1:
        expected = 2
    else:
        expected = 0
    return computed, expected
