"""Slow, obviously-correct reference computations used only by the tests.

Nothing here imports the package; each routine is written from the
definitions so it can stand as an independent check.
"""

from fractions import Fraction
from itertools import product

import mpmath


def poly_mul(a, b, n):
    out = [0] * n
    for i in range(min(len(a), n)):
        for j in range(min(len(b), n - i)):
            out[i + j] += a[i] * b[j]
    return out


def euler_product_power(power, n):
    """Coefficients of prod_{k>=1} (1 - q^k)^power to q^(n-1), factor by factor."""
    acc = [1] + [0] * (n - 1)
    for k in range(1, n):
        factor = [0] * n
        factor[0] = 1
        factor[k] = -1
        for _ in range(power):
            acc = poly_mul(acc, factor, n)
    return acc


def long_division_inverse(a, n):
    """Inverse power series of a (a[0] = +-1) by the textbook recurrence."""
    b = [0] * n
    b[0] = Fraction(1, a[0])
    for k in range(1, n):
        b[k] = -sum(a[i] * b[k - i] for i in range(1, min(k, len(a) - 1) + 1)) / a[0]
    return [int(x) for x in b]


def sigma(k, n):
    return sum(d ** k for d in range(1, n + 1) if n % d == 0)


def j_coefficients(n):
    """a(-1), a(0), ..., a(n-2) of j = E4^3 / Delta, by naive arithmetic."""
    e4 = [1] + [240 * sigma(3, m) for m in range(1, n + 1)]
    e4_cubed = poly_mul(poly_mul(e4, e4, n + 1), e4, n + 1)
    delta_over_q = euler_product_power(24, n + 1)
    return poly_mul(e4_cubed, long_division_inverse(delta_over_q, n + 1), n)


def reduced_forms_bruteforce(d):
    """All reduced forms of discriminant -d by scanning every (a, b) with a <= sqrt(d/3)."""
    forms = []
    a = 1
    while 3 * a * a <= d:
        for b in range(-a, a + 1):
            if (b * b + d) % (4 * a):
                continue
            c = (b * b + d) // (4 * a)
            if c < a:
                continue
            if b < 0 and (b == -a or a == c):
                continue
            forms.append((a, b, c))
        a += 1
    return forms


def hurwitz_bruteforce(d):
    total = Fraction(0)
    for a, b, c in reduced_forms_bruteforce(d):
        w = 3 if a == b == c else 2 if (b == 0 and a == c) else 1
        total += Fraction(1, w)
    return total


def small_sl2_words(depth):
    """Matrices of SL2(Z) generated by T, T^-1, S words up to the given length."""
    gens = [(1, 1, 0, 1), (1, -1, 0, 1), (0, -1, 1, 0)]
    out = {(1, 0, 0, 1)}
    for n in range(1, depth + 1):
        for word in product(gens, repeat=n):
            m = (1, 0, 0, 1)
            for g in word:
                p, q, r, s = m
                a, b, c, e = g
                m = (p * a + q * c, p * b + q * e, r * a + s * c, r * b + s * e)
            out.add(m)
    return sorted(out)


def apply_matrix(form, m):
    a, b, c = form
    p, q, r, s = m
    return (a * p * p + b * p * r + c * r * r,
            2 * a * p * q + b * (p * s + q * r) + 2 * c * r * s,
            a * q * q + b * q * s + c * s * s)


def j_mpmath(tau_re, tau_im, dps=60):
    """j(tau) through mpmath's Klein invariant (j = 1728 * kleinj)."""
    with mpmath.workdps(dps):
        return 1728 * mpmath.kleinj(mpmath.mpc(tau_re, tau_im))


def trace_mpmath(d, dps=80):
    """t(d) from mpmath's j evaluated at every brute-force reduced root."""
    with mpmath.workdps(dps):
        total = mpmath.mpf(0)
        for a, b, c in reduced_forms_bruteforce(d):
            w = 3 if a == b == c else 2 if (b == 0 and a == c) else 1
            tau = mpmath.mpc(mpmath.mpf(-b) / (2 * a), mpmath.sqrt(d) / (2 * a))
            total += (1728 * mpmath.kleinj(tau) - 744).real / w
        return total
