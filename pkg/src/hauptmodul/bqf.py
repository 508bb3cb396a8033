"""Positive-definite integral binary quadratic forms [a, b, c] = aX^2 + bXY + cY^2."""

from __future__ import annotations

from fractions import Fraction
from typing import NamedTuple

from .numerics import BigComplex, BigFloat, real_sqrt

__all__ = [
    "QuadraticForm",
    "ReducedForm",
    "FormError",
    "reduce_form",
    "enumerate_reduced",
    "stabilizer_order",
    "hurwitz_class_number",
    "form_root",
]


class FormError(ValueError):
    pass


class QuadraticForm(NamedTuple):
    a: int
    b: int
    c: int

    def discriminant(self) -> int:
        return self.b * self.b - 4 * self.a * self.c

    def is_positive_definite(self) -> bool:
        return self.a > 0 and self.discriminant() < 0

    def is_reduced(self) -> bool:
        a, b, c = self
        if not (abs(b) <= a <= c):
            return False
        if (abs(b) == a or a == c) and b < 0:
            return False
        return True

    def act(self, p: int, q: int, r: int, s: int) -> QuadraticForm:
        """The form Q(pX + qY, rX + sY)."""
        a, b, c = self
        return QuadraticForm(
            a * p * p + b * p * r + c * r * r,
            2 * a * p * q + b * (p * s + q * r) + 2 * c * r * s,
            a * q * q + b * q * s + c * s * s,
        )

    def __str__(self):
        return f"[{self.a},{self.b},{self.c}]"


class ReducedForm(QuadraticForm):
    """A QuadraticForm that is known to satisfy the reduction inequalities."""

    __slots__ = ()

    def __new__(cls, a: int, b: int, c: int):
        f = super().__new__(cls, a, b, c)
        if not f.is_positive_definite() or not f.is_reduced():
            raise FormError(f"{QuadraticForm(a, b, c)} is not a reduced positive-definite form")
        return f


def reduce_form(f: QuadraticForm) -> ReducedForm:
    """Gauss reduction: the unique reduced form SL2(Z)-equivalent to ``f``."""
    a, b, c = f
    if not QuadraticForm(a, b, c).is_positive_definite():
        raise FormError(f"{QuadraticForm(a, b, c)} is not positive definite")
    while True:
        # Translate b into (-a, a].
        if not (-a < b <= a):
            k = (a - b) // (2 * a)
            b, c = b + 2 * k * a, a * k * k + b * k + c
        if a > c:
            a, b, c = c, -b, a
            continue
        break
    if b < 0 and (a == c or -b == a):
        b = -b
    return ReducedForm(a, b, c)


def _check_disc(d: int) -> None:
    if d < 3 or d % 4 not in (0, 3):
        raise FormError(f"no positive-definite forms of discriminant -{d}: need d >= 3, d = 0, 3 mod 4")


def enumerate_reduced(d: int) -> list[ReducedForm]:
    """All reduced forms of discriminant -d (imprimitive ones included), sorted by (a, b)."""
    _check_disc(d)
    forms = []
    b = d % 2
    while 3 * b * b <= d:
        m = (b * b + d) // 4
        a = max(b, 1)
        while a * a <= m:
            if m % a == 0:
                c = m // a
                forms.append(ReducedForm(a, b, c))
                if 0 < b < a < c:
                    forms.append(ReducedForm(a, -b, c))
            a += 1
        b += 2
    forms.sort(key=lambda f: (f.a, f.b))
    return forms


def stabilizer_order(f: QuadraticForm) -> int:
    """Order of the stabilizer of a reduced form in PSL2(Z)."""
    a, b, c = f
    if a == b == c:
        return 3
    if b == 0 and a == c:
        return 2
    return 1


def hurwitz_class_number(d: int) -> Fraction:
    return sum((Fraction(1, stabilizer_order(f)) for f in enumerate_reduced(d)), Fraction(0))


def form_root(f: QuadraticForm, p: int) -> BigComplex:
    """The root (-b + i sqrt(d)) / 2a of Q(X, 1) in the upper half plane."""
    a, b, c = f
    d = -QuadraticForm(a, b, c).discriminant()
    if a <= 0 or d <= 0:
        raise FormError(f"{QuadraticForm(a, b, c)} is not positive definite")
    re = BigFloat.from_fraction(Fraction(-b, 2 * a), p)
    im = real_sqrt(d, p + 4) / (2 * a)
    return BigComplex(re, im.with_prec(p))
