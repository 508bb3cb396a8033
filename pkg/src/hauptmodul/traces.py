"""Traces of singular moduli.

t(d) is the sum of (j(alpha_Q) - 744) / w_Q over reduced forms Q of
discriminant -d, with t(0) = 2, t(-1) = -1 and t(d) = 0 for d < -1 or
d = 1, 2 mod 4.  The sum is evaluated numerically from the q-expansion of j
and rounded only after checking that it really is close to an integer.
"""

from __future__ import annotations

import csv
import io
import logging
import math
import os
import tempfile
import threading
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from pathlib import Path
from typing import Callable, Iterable

from .bqf import enumerate_reduced, form_root, stabilizer_order
from .numerics import BigComplex, BigFloat
from .numerics import qparam
from .qseries import named_series

__all__ = [
    "TraceRecord",
    "TraceIntegralityError",
    "CacheFormatError",
    "working_precision",
    "series_cutoff",
    "eval_j",
    "weighted_sum",
    "rounding_residual",
    "trace_record",
    "trace_t",
    "trace_table",
    "read_cache",
    "write_cache",
    "make_trace_source",
    "CACHE_HEADER",
]

log = logging.getLogger(__name__)

CACHE_HEADER = ("d", "t", "class_size", "precision_bits")
RESIDUAL_LIMIT = Fraction(1, 10**6)
MAX_RETRIES = 3


class TraceIntegralityError(RuntimeError):
    """The weighted CM sum did not round cleanly even after raising precision."""


class CacheFormatError(ValueError):
    pass


@dataclass(frozen=True)
class TraceRecord:
    d: int
    t: int
    class_size: int
    precision_bits: int


def working_precision(d: int) -> int:
    """Bits needed so that e^(pi sqrt d) still leaves 64 guard bits plus class-size slack."""
    return (math.ceil(math.pi * math.sqrt(d) / math.log(2)) + 64
            + 8 * math.ceil(math.log2(d + 2)))


def series_cutoff(p: int) -> int:
    """Smallest M with pi*sqrt(3)*M - 4*pi*sqrt(M) >= (p + 8) ln 2.

    Uses |q| <= exp(-pi sqrt 3) at reduced roots and |a(n)| <= exp(4 pi sqrt n).
    """
    target = (p + 8) * math.log(2)
    m = 1
    while math.pi * math.sqrt(3) * m - 4 * math.pi * math.sqrt(m) < target:
        m += 1
    return m


_j_lock = threading.Lock()
_j_coeffs: tuple[int, ...] = ()


def _j_coefficients(m: int) -> tuple[int, ...]:
    """a(0), ..., a(m) of j, extended on demand from the exact series."""
    global _j_coeffs
    with _j_lock:
        if len(_j_coeffs) <= m:
            order = max(m + 1, 2 * len(_j_coeffs), 64)
            j = named_series("j", order)
            _j_coeffs = tuple(j[n] for n in range(order))
        return _j_coeffs


def eval_j(alpha: BigComplex, p: int) -> BigComplex:
    """j(alpha) from its q-expansion, working at p bits.

    alpha must lie in the standard fundamental domain height (Im >= sqrt(3)/2),
    which holds for roots of reduced forms.
    """
    im = alpha.im
    # 4 Im^2 >= 3, with slack for the rounding of sqrt(d) / 2a.
    if im * im * 4 < 3 - Fraction(1, 1 << max(p // 2, 8)):
        raise ValueError("eval_j needs Im(alpha) >= sqrt(3)/2; reduce the form first")
    m = series_cutoff(p)
    coeffs = _j_coefficients(m)
    q = qparam(alpha, p)
    acc = BigComplex.from_parts(coeffs[m], 0, p)
    for n in range(m - 1, -1, -1):
        acc = acc * q + coeffs[n]
    return acc + q.reciprocal()


def weighted_sum(d: int, p: int) -> BigComplex:
    """Sum of (j(alpha_Q) - 744) / w_Q over reduced forms of discriminant -d, at p bits."""
    total = BigComplex.from_parts(0, 0, p)
    for f in enumerate_reduced(d):
        value = eval_j(form_root(f, p), p) - 744
        total = total + value * (6 // stabilizer_order(f))
    return total / 6


def rounding_residual(s: BigComplex) -> tuple[int, BigFloat]:
    """Nearest integer to s and the distance max(|Re s - n|, |Im s|)."""
    n = (s.re + Fraction(1, 2)).floor()
    residual = max(abs(s.re - n), abs(s.im))
    return n, residual


def trace_record(d: int, prec_bits: int | None = None) -> TraceRecord:
    """t(d) for d >= 3, d = 0, 3 mod 4, with integrality validation and precision retries."""
    forms = enumerate_reduced(d)
    p = max(working_precision(d), prec_bits or 0)
    for attempt in range(MAX_RETRIES + 1):
        n, residual = rounding_residual(weighted_sum(d, p))
        log.debug("t(%d): %d forms, %d bits, residual %.3e", d, len(forms), p, float(residual))
        if residual < RESIDUAL_LIMIT:
            return TraceRecord(d, n, len(forms), p)
        log.warning("t(%d): residual %.3e at %d bits, retrying", d, float(residual), p)
        p *= 2
    raise TraceIntegralityError(
        f"t({d}) failed to round to an integer after {MAX_RETRIES} precision doublings"
        f" (last residual {float(residual):.3e} at {p // 2} bits)"
    )


@lru_cache(maxsize=None)
def trace_t(d: int, prec_bits: int | None = None) -> int:
    if d == 0:
        return 2
    if d == -1:
        return -1
    if d < -1 or d % 4 in (1, 2):
        return 0
    return trace_record(d, prec_bits).t


# --- cache file ---------------------------------------------------------------

def read_cache(path: str | os.PathLike) -> tuple[dict[int, TraceRecord], list[str]]:
    """Parse a trace cache.  Returns the good records and one message per bad line."""
    records: dict[int, TraceRecord] = {}
    problems: list[str] = []
    text = Path(path).read_text(encoding="utf-8")
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if not lines:
        return records, problems
    if tuple(lines[0].split(",")) != CACHE_HEADER:
        problems.append(f"{path}:1: bad header {lines[0]!r}")
        start = 0 if lines[0][:1].isdigit() else 1
    else:
        start = 1
    last = None
    for lineno, line in enumerate(lines[start:], start=start + 1):
        try:
            fields = line.split(",")
            if len(fields) != 4:
                raise CacheFormatError(f"expected 4 fields, got {len(fields)}")
            d, t, size, bits = (int(x) for x in fields)
            if d < 3 or d % 4 not in (0, 3):
                raise CacheFormatError(f"d={d} is not a discriminant index")
            if last is not None and d <= last:
                raise CacheFormatError(f"d={d} does not increase")
            if size < 1 or bits < 2:
                raise CacheFormatError("class size and precision must be positive")
        except (ValueError, CacheFormatError) as exc:
            problems.append(f"{path}:{lineno}: {exc}")
            continue
        last = d
        records[d] = TraceRecord(d, t, size, bits)
    for msg in problems:
        log.warning("corrupt trace cache entry: %s", msg)
    return records, problems


def _format_rows(records: Iterable[TraceRecord]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    for r in records:
        writer.writerow((r.d, r.t, r.class_size, r.precision_bits))
    return buf.getvalue()


def write_cache(path: str | os.PathLike, records: Iterable[TraceRecord]) -> None:
    """Atomically (re)write the cache with records sorted by d."""
    path = Path(path)
    body = ",".join(CACHE_HEADER) + "\n" + _format_rows(sorted(records, key=lambda r: r.d))
    fd, tmp = tempfile.mkstemp(dir=path.parent or ".", prefix=path.name, suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(body)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


_cache_write_lock = threading.Lock()


def _compute(args: tuple[int, int | None]) -> TraceRecord:
    d, prec_bits = args
    return trace_record(d, prec_bits)


def trace_table(d_max: int, cache_path: str | os.PathLike | None = None, *,
                jobs: int = 1, prec_bits: int | None = None) -> list[TraceRecord]:
    """Records for every d = 0, 3 mod 4 in [3, d_max], reusing and extending a cache file."""
    if d_max < 3:
        raise ValueError("d_max must be at least 3")
    wanted = [d for d in range(3, d_max + 1) if d % 4 in (0, 3)]
    cached: dict[int, TraceRecord] = {}
    problems: list[str] = []
    if cache_path is not None and Path(cache_path).exists():
        cached, problems = read_cache(cache_path)
    missing = [d for d in wanted if d not in cached]
    if jobs > 1 and len(missing) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            fresh = list(pool.map(_compute, [(d, prec_bits) for d in missing]))
    else:
        fresh = [_compute((d, prec_bits)) for d in missing]
    if cache_path is not None and (fresh or problems):
        with _cache_write_lock:
            path = Path(cache_path)
            if cached and not problems and fresh[0].d > max(cached):
                with open(path, "a", encoding="utf-8", newline="") as fh:
                    fh.write(_format_rows(fresh))
            else:
                write_cache(path, list(cached.values()) + fresh)
    by_d = dict(cached)
    by_d.update((r.d, r) for r in fresh)
    return [by_d[d] for d in wanted]


def make_trace_source(records: Iterable[TraceRecord]) -> Callable[[int], int]:
    """A t(d) lookup backed by precomputed records, falling back to :func:`trace_t`."""
    table = {r.d: r.t for r in records}

    def source(d: int) -> int:
        if d in table:
            return table[d]
        return trace_t(d)

    return source
