"""Truncated Laurent series in q with exact integer coefficients.

A :class:`LaurentSeries` holds the coefficients of q^v, q^(v+1), ...,
q^(N-1) where v is the valuation and N the truncation order (the first
exponent that is *not* known).  Everything here is exact; there is no
floating point anywhere in this module.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

__all__ = [
    "LaurentSeries",
    "SeriesError",
    "series_mul",
    "series_invert",
    "series_pow",
    "series_dilate",
    "named_series",
    "pentagonal_series",
    "SERIES_NAMES",
]

# Below this length the schoolbook product is faster than packing.
_KRONECKER_CUTOFF = 48


class SeriesError(ValueError):
    """Raised for malformed series or operations outside the integral ring."""


@dataclass(frozen=True)
class LaurentSeries:
    valuation: int
    coefficients: tuple[int, ...]
    truncation: int

    def __post_init__(self):
        if self.truncation <= self.valuation:
            raise SeriesError(
                f"degenerate series: truncation {self.truncation} <= valuation {self.valuation}"
            )
        if len(self.coefficients) != self.truncation - self.valuation:
            raise SeriesError(
                f"expected {self.truncation - self.valuation} coefficients, "
                f"got {len(self.coefficients)}"
            )

    @classmethod
    def from_coefficients(cls, coefficients: Iterable[int], valuation: int = 0,
                          truncation: int | None = None) -> LaurentSeries:
        """Build a series from the coefficients of q^valuation, q^(valuation+1), ...

        Missing coefficients below ``truncation`` are zero; extra ones are dropped.
        """
        coeffs = [int(c) for c in coefficients]
        if truncation is None:
            truncation = valuation + len(coeffs)
        width = truncation - valuation
        if width <= 0:
            raise SeriesError("truncation must exceed valuation")
        coeffs = coeffs[:width] + [0] * max(0, width - len(coeffs))
        return cls(valuation, tuple(coeffs), truncation)

    @classmethod
    def constant(cls, value: int, truncation: int) -> LaurentSeries:
        return cls.from_coefficients([value], 0, truncation)

    @classmethod
    def monomial(cls, exponent: int, truncation: int, coefficient: int = 1) -> LaurentSeries:
        return cls.from_coefficients([coefficient], exponent, truncation)

    def __getitem__(self, exponent: int) -> int:
        if exponent >= self.truncation:
            raise IndexError(
                f"coefficient of q^{exponent} is beyond the truncation order {self.truncation}"
            )
        if exponent < self.valuation:
            return 0
        return self.coefficients[exponent - self.valuation]

    def items(self):
        """Yield ``(exponent, coefficient)`` for every represented exponent."""
        for i, c in enumerate(self.coefficients):
            yield self.valuation + i, c

    def leading(self) -> tuple[int, int]:
        """Return ``(exponent, coefficient)`` of the first nonzero term."""
        for e, c in self.items():
            if c:
                return e, c
        raise SeriesError(f"series is zero to order {self.truncation}")

    def normalized(self) -> LaurentSeries:
        """Drop leading zero coefficients (keeping at least one entry)."""
        coeffs = self.coefficients
        k = 0
        while k < len(coeffs) - 1 and coeffs[k] == 0:
            k += 1
        if k == 0:
            return self
        return LaurentSeries(self.valuation + k, coeffs[k:], self.truncation)

    def truncate(self, truncation: int) -> LaurentSeries:
        if truncation > self.truncation:
            raise SeriesError(
                f"cannot extend truncation from {self.truncation} to {truncation}"
            )
        return LaurentSeries.from_coefficients(self.coefficients, self.valuation, truncation)

    def shift(self, k: int) -> LaurentSeries:
        """Multiply by q^k."""
        return LaurentSeries(self.valuation + k, self.coefficients, self.truncation + k)

    def agrees_with(self, other: LaurentSeries) -> bool:
        """True when both series have the same coefficients on their common window."""
        top = min(self.truncation, other.truncation)
        low = min(self.valuation, other.valuation)
        return all(self[e] == other[e] for e in range(low, top))

    def __add__(self, other):
        if isinstance(other, int):
            other = LaurentSeries.constant(other, self.truncation)
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        top = min(self.truncation, other.truncation)
        low = min(self.valuation, other.valuation)
        if top <= low:
            raise SeriesError("sum has an empty coefficient window")
        return LaurentSeries.from_coefficients(
            [self[e] + other[e] for e in range(low, top)], low, top
        ).normalized()

    __radd__ = __add__

    def __neg__(self):
        return LaurentSeries(self.valuation, tuple(-c for c in self.coefficients), self.truncation)

    def __sub__(self, other):
        if isinstance(other, int):
            return self + (-other)
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return LaurentSeries(self.valuation, tuple(other * c for c in self.coefficients),
                                 self.truncation)
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        return series_mul(self, other)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        return series_pow(self, k)

    def __repr__(self):
        terms = []
        for e, c in self.items():
            if c and len(terms) < 6:
                terms.append(f"{c}*q^{e}")
        shown = " + ".join(terms) if terms else "0"
        return f"LaurentSeries({shown} + O(q^{self.truncation}))"


# --- integer convolution kernels -------------------------------------------

def _schoolbook(a: Sequence[int], b: Sequence[int], n: int) -> list[int]:
    out = [0] * n
    for i, x in enumerate(a[:n]):
        if x:
            for j, y in enumerate(b[: n - i]):
                out[i + j] += x * y
    return out


def _pack(c: Sequence[int], lo: int, hi: int, k: int) -> int:
    if hi - lo <= 16:
        acc = 0
        for i in range(hi - 1, lo - 1, -1):
            acc = (acc << k) + c[i]
        return acc
    mid = (lo + hi) // 2
    return _pack(c, lo, mid, k) + (_pack(c, mid, hi, k) << (k * (mid - lo)))


def _unpack(x: int, count: int, k: int, out: list[int]) -> None:
    # Balanced-digit split; every true coefficient is below 2^(k-1) in magnitude.
    if count <= 16:
        half = 1 << (k - 1)
        mask = (1 << k) - 1
        for _ in range(count):
            d = x & mask
            if d >= half:
                d -= 1 << k
            out.append(d)
            x = (x - d) >> k
        return
    m = count // 2
    width = k * m
    lo = x & ((1 << width) - 1)
    if lo >> (width - 1):
        lo -= 1 << width
    _unpack(lo, m, k, out)
    _unpack((x - lo) >> width, count - m, k, out)


def _kronecker(a: Sequence[int], b: Sequence[int], n: int) -> list[int]:
    a = list(a[:n])
    b = list(b[:n])
    bound = min(len(a), len(b)) * max(abs(x) for x in a) * max(abs(y) for y in b)
    if bound == 0:
        return [0] * n
    k = bound.bit_length() + 2
    x = _pack(a, 0, len(a), k) * _pack(b, 0, len(b), k)
    full = len(a) + len(b) - 1
    out: list[int] = []
    _unpack(x, full, k, out)
    out = out[:n]
    return out + [0] * (n - len(out))


def convolve(a: Sequence[int], b: Sequence[int], n: int) -> list[int]:
    """First ``n`` coefficients of the Cauchy product of ``a`` and ``b``."""
    if not a or not b or n <= 0:
        return [0] * max(n, 0)
    if min(len(a), len(b), n) < _KRONECKER_CUTOFF:
        return _schoolbook(a, b, n)
    return _kronecker(a, b, n)


def _unit_inverse(a: Sequence[int], n: int) -> list[int]:
    """Power-series inverse of ``a`` (a[0] = +-1) to ``n`` terms, by Newton iteration."""
    u = a[0]
    inv = [u]
    m = 1
    while m < n:
        m = min(2 * m, n)
        # b <- b * (2 - a*b), exact because the constant term is a unit.
        ab = convolve(a, inv, m)
        ab = [-c for c in ab]
        ab[0] += 2
        inv = convolve(inv, ab, m)
    return inv[:n]


# --- series operations ------------------------------------------------------

def series_mul(lhs: LaurentSeries, rhs: LaurentSeries) -> LaurentSeries:
    valuation = lhs.valuation + rhs.valuation
    truncation = min(lhs.truncation + rhs.valuation, rhs.truncation + lhs.valuation)
    coeffs = convolve(lhs.coefficients, rhs.coefficients, truncation - valuation)
    return LaurentSeries(valuation, tuple(coeffs), truncation).normalized()


def series_invert(s: LaurentSeries) -> LaurentSeries:
    """Multiplicative inverse of a series whose leading coefficient is +1 or -1."""
    s = s.normalized()
    v, lead = s.leading()
    if lead not in (1, -1):
        raise SeriesError(
            f"leading coefficient {lead} is not a unit; inverse would need rational coefficients"
        )
    truncation = s.truncation - 2 * v
    coeffs = _unit_inverse(s.coefficients, truncation + v)
    return LaurentSeries(-v, tuple(coeffs), truncation)


def series_pow(s: LaurentSeries, k: int) -> LaurentSeries:
    """k-th power by binary exponentiation; ``k = 0`` gives the constant 1."""
    if k < 0:
        raise SeriesError("negative power: invert the series first")
    s = s.normalized()
    if k == 0:
        # The window of s^0 is as precise as s relative to its own valuation.
        return LaurentSeries.constant(1, s.truncation - s.valuation)
    result = None
    base = s
    while True:
        if k & 1:
            result = base if result is None else series_mul(result, base)
        k >>= 1
        if not k:
            return result
        base = series_mul(base, base)


def series_dilate(s: LaurentSeries, m: int) -> LaurentSeries:
    """Substitute q -> q^m."""
    if m < 1:
        raise SeriesError("dilation factor must be a positive integer")
    if m == 1:
        return s
    coeffs = [0] * ((s.truncation - s.valuation) * m)
    coeffs[::m] = s.coefficients
    # Window runs from m*v to m*N; trailing slots after the last known term are known zeros.
    return LaurentSeries(m * s.valuation, tuple(coeffs), m * s.truncation)


@lru_cache(maxsize=None)
def pentagonal_series(truncation: int) -> LaurentSeries:
    """The product of (1 - q^n) over n >= 1, via generalized pentagonal numbers."""
    coeffs = [0] * truncation
    k = 0
    while True:
        hit = False
        for j in ((k, -k) if k else (0,)):
            e = j * (3 * j - 1) // 2
            if e < truncation:
                coeffs[e] += -1 if j % 2 else 1
                hit = True
        if not hit:
            break
        k += 1
    return LaurentSeries(0, tuple(coeffs), truncation)


def _sigma3_series(truncation: int) -> list[int]:
    sig = [0] * truncation
    for d in range(1, truncation):
        d3 = d ** 3
        for m in range(d, truncation, d):
            sig[m] += d3
    return sig


def _delta(truncation: int) -> LaurentSeries:
    # q * prod(1-q^n)^24 known to order N needs the product to order N-1.
    return series_pow(pentagonal_series(truncation - 1), 24).shift(1)


def _e4(truncation: int) -> LaurentSeries:
    sig = _sigma3_series(truncation)
    coeffs = [240 * x for x in sig]
    coeffs[0] = 1
    return LaurentSeries(0, tuple(coeffs), truncation)


def _j(truncation: int) -> LaurentSeries:
    # mul truncation = min(E - 1, T - 2) for e4 to order E, delta to order T.
    return series_mul(series_pow(_e4(truncation + 1), 3),
                      series_invert(_delta(truncation + 2)))


def _hauptmodul(truncation: int) -> LaurentSeries:
    half = (truncation + 4) // 2
    denominator = series_invert(series_dilate(_delta(half), 2))
    return series_mul(_delta(truncation + 2), denominator)


SERIES_NAMES = ("eta24", "delta", "e4", "j", "hauptmodul", "j_inverse")
_VALUATIONS = {"eta24": 1, "delta": 1, "e4": 0, "j": -1, "hauptmodul": -1, "j_inverse": 1}


@lru_cache(maxsize=32)
def named_series(name: str, order: int) -> LaurentSeries:
    """Exact expansion of a named series, truncated at q^order (exclusive).

    ``eta24`` and ``delta`` are the same series q*prod(1-q^n)^24;
    ``hauptmodul`` is delta(tau)/delta(2 tau).
    """
    if name not in _VALUATIONS:
        raise SeriesError(f"unknown series {name!r}; expected one of {', '.join(SERIES_NAMES)}")
    if order <= _VALUATIONS[name]:
        raise SeriesError(
            f"order {order} too small for {name} (valuation {_VALUATIONS[name]})"
        )
    if name in ("eta24", "delta"):
        s = _delta(order)
    elif name == "e4":
        s = _e4(order)
    elif name == "j":
        s = _j(order)
    elif name == "hauptmodul":
        s = _hauptmodul(order)
    else:
        s = series_invert(_j(order - 2))
    return s.truncate(order)
