"""Binary floating point with explicit precision, plus the few transcendental
functions needed to evaluate q = exp(2 pi i tau) at CM points.

A :class:`BigFloat` is ``man * 2**exp`` carried at ``prec`` bits.  Every
operation rounds to nearest, so a single operation has relative error at most
2^(1-prec).  Transcendentals are evaluated in fixed point with guard bits and
then rounded (faithful, not correctly rounded).

Integers are treated as exact operands; two BigFloats of different
precisions combine at the smaller one.
"""

from __future__ import annotations

import math
from decimal import Context, Decimal, ROUND_HALF_EVEN
from fractions import Fraction
from functools import lru_cache
from typing import Union

__all__ = [
    "BigFloat",
    "BigComplex",
    "const_pi",
    "const_ln2",
    "const_euler",
    "real_exp",
    "real_log",
    "real_cos_sin",
    "real_sqrt",
    "qparam",
]

Number = Union[int, Fraction, "BigFloat"]

_GUARD = 32


def _round(man: int, exp: int, prec: int) -> tuple[int, int]:
    bl = man.bit_length()
    if bl <= prec:
        return man, exp
    shift = bl - prec
    half = 1 << (shift - 1)
    if man >= 0:
        man = (man + half) >> shift
    else:
        man = -((-man + half) >> shift)
    return man, exp + shift


class BigFloat:
    __slots__ = ("man", "exp", "prec")

    def __init__(self, man: int, exp: int, prec: int, *, exact: bool = False):
        if prec < 2:
            raise ValueError("precision must be at least 2 bits")
        if not exact:
            man, exp = _round(man, exp, prec)
        self.man = man
        self.exp = exp
        self.prec = prec

    # --- construction ------------------------------------------------------

    @classmethod
    def from_int(cls, n: int, prec: int) -> BigFloat:
        return cls(int(n), 0, prec)

    @classmethod
    def from_fraction(cls, value: Fraction | int, prec: int) -> BigFloat:
        value = Fraction(value)
        num, den = value.numerator, value.denominator
        if num == 0:
            return cls(0, 0, prec)
        shift = prec + 3 + den.bit_length() - abs(num).bit_length()
        shift = max(shift, 0)
        q = (abs(num) << shift) // den
        return cls(q if num > 0 else -q, -shift, prec)

    @classmethod
    def from_decimal(cls, text: str, prec: int) -> BigFloat:
        return cls.from_fraction(Fraction(Decimal(text)), prec)

    @classmethod
    def from_float(cls, x: float, prec: int = 53) -> BigFloat:
        return cls.from_fraction(Fraction(x), prec)

    # --- conversion --------------------------------------------------------

    def __float__(self) -> float:
        man, exp = self.man, self.exp
        bl = man.bit_length()
        if bl > 60:
            man, exp = man >> (bl - 60) if man > 0 else -((-man) >> (bl - 60)), exp + bl - 60
        return math.ldexp(float(man), exp)

    def as_fraction(self) -> Fraction:
        if self.exp >= 0:
            return Fraction(self.man << self.exp)
        return Fraction(self.man, 1 << -self.exp)

    def to_decimal(self, digits: int) -> str:
        """Scientific notation rounded (half-even) to ``digits`` significant digits."""
        if self.exp >= 0:
            d = Decimal(self.man << self.exp)
        else:
            d = Decimal(self.man * 5 ** (-self.exp)).scaleb(self.exp)
        d = Context(prec=digits, rounding=ROUND_HALF_EVEN).plus(d)
        return format(d, f".{digits - 1}e")

    def with_prec(self, prec: int) -> BigFloat:
        return BigFloat(self.man, self.exp, prec)

    def is_zero(self) -> bool:
        return self.man == 0

    def magnitude(self) -> int:
        """Exponent e with 2^(e-1) <= |x| < 2^e (undefined for zero)."""
        return self.exp + self.man.bit_length()

    def floor(self) -> int:
        if self.exp >= 0:
            return self.man << self.exp
        return self.man >> -self.exp

    def sign(self) -> int:
        return (self.man > 0) - (self.man < 0)

    # --- arithmetic --------------------------------------------------------

    def _coerce(self, other) -> BigFloat | None:
        if isinstance(other, BigFloat):
            return other
        if isinstance(other, int):
            return BigFloat(other, 0, self.prec, exact=True)
        if isinstance(other, Fraction):
            return BigFloat.from_fraction(other, self.prec + _GUARD)
        return None

    def _add(self, other: BigFloat, prec: int) -> BigFloat:
        a, b = self, other
        if a.man == 0:
            return BigFloat(b.man, b.exp, prec)
        if b.man == 0:
            return BigFloat(a.man, a.exp, prec)
        if a.magnitude() < b.magnitude():
            a, b = b, a
        # An operand far below the rounding position only perturbs the sticky bit.
        if b.magnitude() < a.magnitude() - prec - 4:
            sh = max(prec + 4 - a.man.bit_length(), 2)
            return BigFloat((a.man << sh) + b.sign(), a.exp - sh, prec)
        if a.exp > b.exp:
            return BigFloat((a.man << (a.exp - b.exp)) + b.man, b.exp, prec)
        return BigFloat(a.man + (b.man << (b.exp - a.exp)), a.exp, prec)

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self._add(o, min(self.prec, o.prec))

    __radd__ = __add__

    def __neg__(self):
        return BigFloat(-self.man, self.exp, self.prec, exact=True)

    def __pos__(self):
        return self

    def __abs__(self):
        return self if self.man >= 0 else -self

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self._add(-o, min(self.prec, o.prec))

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o._add(-self, min(self.prec, o.prec))

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return BigFloat(self.man * o.man, self.exp + o.exp, min(self.prec, o.prec))

    __rmul__ = __mul__

    def _div(self, other: BigFloat, prec: int) -> BigFloat:
        if other.man == 0:
            raise ZeroDivisionError("BigFloat division by zero")
        if self.man == 0:
            return BigFloat(0, 0, prec)
        num, den = abs(self.man), abs(other.man)
        shift = max(prec + 3 + den.bit_length() - num.bit_length(), 0)
        q = (num << shift) // den
        if (self.man < 0) != (other.man < 0):
            q = -q
        return BigFloat(q, self.exp - other.exp - shift, prec)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self._div(o, min(self.prec, o.prec))

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o._div(self, min(self.prec, o.prec))

    def ldexp(self, k: int) -> BigFloat:
        """Exact multiplication by 2^k."""
        return BigFloat(self.man, self.exp + k, self.prec, exact=True)

    def sqrt(self) -> BigFloat:
        return real_sqrt(self, self.prec)

    # --- comparison (exact) ------------------------------------------------

    def _cmp(self, other) -> int:
        if isinstance(other, Fraction):
            f = self.as_fraction()
            return (f > other) - (f < other)
        o = self._coerce(other)
        if o is None:
            raise TypeError(f"cannot compare BigFloat with {type(other).__name__}")
        sa, sb = self.sign(), o.sign()
        if sa != sb:
            return (sa > sb) - (sa < sb)
        if sa == 0:
            return 0
        ma, mb = self.magnitude(), o.magnitude()
        if ma != mb:
            bigger = 1 if ma > mb else -1
            return bigger * sa
        if self.exp > o.exp:
            x, y = self.man << (self.exp - o.exp), o.man
        else:
            x, y = self.man, o.man << (o.exp - self.exp)
        return (x > y) - (x < y)

    def __eq__(self, other):
        try:
            return self._cmp(other) == 0
        except TypeError:
            return NotImplemented

    def __hash__(self):
        return hash(self.as_fraction())

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    def __repr__(self):
        return f"BigFloat({self.to_decimal(max(5, int(self.prec * 0.30103)))}, prec={self.prec})"


class BigComplex:
    __slots__ = ("re", "im")

    def __init__(self, re: BigFloat, im: BigFloat):
        self.re = re
        self.im = im

    @classmethod
    def from_parts(cls, re: Number, im: Number, prec: int) -> BigComplex:
        def conv(x):
            if isinstance(x, BigFloat):
                return x.with_prec(prec)
            return BigFloat.from_fraction(Fraction(x), prec)
        return cls(conv(re), conv(im))

    @property
    def prec(self) -> int:
        return min(self.re.prec, self.im.prec)

    def _parts(self, other):
        if isinstance(other, BigComplex):
            return other.re, other.im
        if isinstance(other, (int, BigFloat, Fraction)):
            return other, 0
        return None

    def __add__(self, other):
        p = self._parts(other)
        if p is None:
            return NotImplemented
        return BigComplex(self.re + p[0], self.im + p[1])

    __radd__ = __add__

    def __neg__(self):
        return BigComplex(-self.re, -self.im)

    def __sub__(self, other):
        p = self._parts(other)
        if p is None:
            return NotImplemented
        return BigComplex(self.re - p[0], self.im - p[1])

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, BigFloat, Fraction)):
            return BigComplex(self.re * other, self.im * other)
        if not isinstance(other, BigComplex):
            return NotImplemented
        a, b, c, d = self.re, self.im, other.re, other.im
        return BigComplex(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def conjugate(self) -> BigComplex:
        return BigComplex(self.re, -self.im)

    def abs_squared(self) -> BigFloat:
        return self.re * self.re + self.im * self.im

    def reciprocal(self) -> BigComplex:
        n = self.abs_squared()
        return BigComplex(self.re / n, -self.im / n)

    def __truediv__(self, other):
        if isinstance(other, (int, BigFloat, Fraction)):
            return BigComplex(self.re / other, self.im / other)
        if not isinstance(other, BigComplex):
            return NotImplemented
        return self * other.reciprocal()

    def __abs__(self) -> BigFloat:
        return self.abs_squared().sqrt()

    def __eq__(self, other):
        if not isinstance(other, BigComplex):
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        return f"BigComplex({self.re!r}, {self.im!r})"


# --- fixed-point kernels ----------------------------------------------------
# Values are integers scaled by 2^wp.  Each kernel errs by a handful of ulps.

def _atan_inv(n: int, wp: int) -> int:
    x = (1 << wp) // n
    n2 = n * n
    total, k, sign = x, 1, -1
    while x:
        x //= n2
        k += 2
        total += sign * (x // k)
        sign = -sign
    return total


def _atanh_inv(n: int, wp: int) -> int:
    x = (1 << wp) // n
    n2 = n * n
    total, k = x, 1
    while x:
        x //= n2
        k += 2
        total += x // k
    return total


@lru_cache(maxsize=64)
def _pi_fixed(wp: int) -> int:
    g = wp + 16
    return (16 * _atan_inv(5, g) - 4 * _atan_inv(239, g)) >> 16


@lru_cache(maxsize=64)
def _ln2_fixed(wp: int) -> int:
    g = wp + 16
    return (18 * _atanh_inv(26, g) - 2 * _atanh_inv(4801, g) + 8 * _atanh_inv(8749, g)) >> 16


def _to_fixed(x: BigFloat, wp: int) -> int:
    s = x.exp + wp
    if s >= 0:
        return x.man << s
    return x.man >> -s


def _exp_fixed(xf: int, wp: int) -> tuple[int, int]:
    """exp(xf / 2^wp) as (y, k) meaning y * 2^(k - wp)."""
    ln2 = _ln2_fixed(wp)
    k = (2 * xf + ln2) // (2 * ln2)
    r = xf - k * ln2
    # exp(r) = exp(r / 2^h)^(2^h); the squarings cost about h bits, which callers budget for.
    halvings = max(4, math.isqrt(wp) // 2)
    neg = r < 0
    rs = abs(r) >> halvings
    one = 1 << wp
    term, total, i = one, one, 1
    while term:
        term = (term * rs >> wp) // i
        total += -term if neg and i % 2 else term
        i += 1
    for _ in range(halvings):
        total = total * total >> wp
    return total, k


def _cos_sin_fixed(rf: int, wp: int) -> tuple[int, int]:
    """cos and sin of rf / 2^wp for |r| <= 1, in fixed point."""
    one = 1 << wp
    r2 = rf * rf >> wp
    c = term = one
    i, sign = 0, -1
    while term:
        term = (term * r2 >> wp) // ((i + 1) * (i + 2))
        c += sign * term
        i += 2
        sign = -sign
    s = term = abs(rf)
    i, sign = 1, -1
    while term:
        term = (term * r2 >> wp) // ((i + 1) * (i + 2))
        s += sign * term
        i += 2
        sign = -sign
    return c, (s if rf >= 0 else -s)


# --- public transcendental functions ----------------------------------------

def const_pi(p: int) -> BigFloat:
    if p < 2:
        raise ValueError("precision must be at least 2 bits")
    wp = p + _GUARD
    return BigFloat(_pi_fixed(wp), -wp, p)


def const_ln2(p: int) -> BigFloat:
    wp = p + _GUARD
    return BigFloat(_ln2_fixed(wp), -wp, p)


# Euler's constant, stored twice in independent radices.
_EULER_DECIMAL = (
    "0.57721566490153286060651209008240243104215933593992359880576723488486772677766467"
    "093694706329174674951463144725"
)
_EULER_HEX_320 = (
    "93c467e37db0c7a4d1be3f810152cb56a1cecc3af65cc0190c03df34709affbd8e4b59fa03a9f0ee"
)
_EULER_BITS = 320


def _euler_self_check() -> Fraction:
    from_hex = Fraction(int(_EULER_HEX_320, 16), 1 << _EULER_BITS)
    from_dec = Fraction(Decimal(_EULER_DECIMAL))
    if abs(from_hex - from_dec) >= Fraction(1, 1 << (_EULER_BITS - 2)):
        raise RuntimeError("stored values of Euler's constant disagree")
    return from_dec


_EULER = _euler_self_check()


def const_euler(p: int) -> BigFloat:
    """Euler's constant gamma (good to 318 bits)."""
    if p > _EULER_BITS - 2:
        raise ValueError(f"Euler's constant is only stored to {_EULER_BITS - 2} bits")
    return BigFloat.from_fraction(_EULER, p)


def _magnitude_bits(x: BigFloat) -> int:
    return max(0, x.magnitude()) if x.man else 0


def real_exp(x: BigFloat | int, p: int | None = None) -> BigFloat:
    if isinstance(x, int):
        x = BigFloat.from_int(x, p or 53)
    p = p or x.prec
    if x.man == 0:
        return BigFloat(1, 0, p)
    wp = p + _GUARD + int(math.isqrt(p + 64)) + 2 * _magnitude_bits(x)
    y, k = _exp_fixed(_to_fixed(x, wp), wp)
    return BigFloat(y, k - wp, p)


def real_log(x: BigFloat | int, p: int | None = None) -> BigFloat:
    if isinstance(x, int):
        x = BigFloat(x, 0, p or 53, exact=True)
    p = p or x.prec
    if x.man <= 0:
        raise ValueError("logarithm of a non-positive number")
    e = x.magnitude() - 1          # x = m * 2^e with m in [1, 2)
    wp = p + _GUARD
    while True:
        one = 1 << wp
        mf = _to_fixed(x.ldexp(-e), wp)
        ee = e
        if mf * mf > 2 * one * one:  # m > sqrt(2)
            mf >>= 1
            ee += 1
        if mf == one and ee == 0:
            return BigFloat(0, 0, p)
        z = (abs(mf - one) << wp) // (mf + one)
        z2 = z * z >> wp
        total = term = z
        k = 1
        while term:
            term = term * z2 >> wp
            k += 2
            total += term // k
        if mf < one:
            total = -total
        y = ee * _ln2_fixed(wp) + 2 * total
        # Near x = 1 the result is small; retry with enough bits to keep p significant ones.
        lost = wp - abs(y).bit_length()
        if lost <= _GUARD // 2 or wp > 4 * p + 256:
            return BigFloat(y, -wp, p)
        wp += lost


def real_cos_sin(x: BigFloat, p: int | None = None) -> tuple[BigFloat, BigFloat]:
    """(cos x, sin x), each with absolute error below 2^-p times max(1, |x|) scale."""
    p = p or x.prec
    wp = p + _GUARD + 2 * _magnitude_bits(x)
    while True:
        xf = _to_fixed(x, wp)
        half_pi = _pi_fixed(wp) >> 1
        n = (2 * xf + half_pi) // (2 * half_pi)
        r = xf - n * half_pi
        c, s = _cos_sin_fixed(r, wp)
        quadrant = n % 4
        if quadrant == 1:
            c, s = -s, c
        elif quadrant == 2:
            c, s = -c, -s
        elif quadrant == 3:
            c, s = s, -c
        small = min(abs(c).bit_length(), abs(s).bit_length())
        lost = wp - small
        if lost <= _GUARD // 2 or wp > 4 * p + 256 or x.man == 0:
            return BigFloat(c, -wp, p), BigFloat(s, -wp, p)
        wp += lost


def real_sqrt(x: BigFloat | int, p: int | None = None) -> BigFloat:
    if isinstance(x, int):
        x = BigFloat(x, 0, p or 53, exact=True)
    p = p or x.prec
    if x.man < 0:
        raise ValueError("square root of a negative number")
    if x.man == 0:
        return BigFloat(0, 0, p)
    shift = max(2 * (p + 2) - x.man.bit_length(), 0)
    if (x.exp - shift) % 2:
        shift += 1
    r = math.isqrt(x.man << shift)
    return BigFloat(r, (x.exp - shift) // 2, p)


def qparam(alpha: BigComplex, p: int | None = None) -> BigComplex:
    """q = exp(2 pi i alpha) for alpha in the upper half plane."""
    p = p or alpha.prec
    if alpha.im.man <= 0:
        raise ValueError("qparam needs a point with positive imaginary part")
    re = alpha.re
    # Exact reduction modulo 1 gives exact periodicity.
    if re.exp >= 0:
        frac = BigFloat(0, 0, p)
    else:
        whole = re.man >> -re.exp
        frac = BigFloat(re.man - (whole << -re.exp), re.exp, re.prec, exact=True)
    wp = p + 16
    two_pi = const_pi(wp).ldexp(1)
    c, s = real_cos_sin(two_pi * frac.with_prec(wp), wp)
    radius = real_exp(-(two_pi * alpha.im.with_prec(wp)), wp)
    return BigComplex((radius * c).with_prec(p), (radius * s).with_prec(p))
