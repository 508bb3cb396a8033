import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hauptmodul.bqf import (
    FormError,
    QuadraticForm,
    ReducedForm,
    enumerate_reduced,
    form_root,
    hurwitz_class_number,
    reduce_form,
    stabilizer_order,
)

import oracles

Q = QuadraticForm

HURWITZ_TABLE = {3: Fraction(1, 3), 4: Fraction(1, 2), 7: 1, 8: 1, 11: 1, 12: Fraction(4, 3),
                 15: 2, 16: Fraction(3, 2), 19: 1, 20: 2, 23: 3, 24: 2}


def test_hurwitz_table_oracle_first():
    # The frozen table itself against the brute-force scan.
    for d, h in HURWITZ_TABLE.items():
        assert oracles.hurwitz_bruteforce(d) == h


@pytest.mark.parametrize("d,h", sorted(HURWITZ_TABLE.items()))
def test_hurwitz_class_number(d, h):
    assert hurwitz_class_number(d) == h


@pytest.mark.parametrize("form,expected", [
    (Q(1, 0, 1), Q(1, 0, 1)),
    (Q(1, 5, 7), Q(1, 1, 1)),
    (Q(2, -1, 2), Q(2, 1, 2)),
    (Q(3, -3, 5), Q(3, 3, 5)),
    (Q(7, 9, 3), Q(1, 1, 1)),
    (Q(6, 11, 6), Q(1, 1, 6)),
])
def test_reduce_examples(form, expected):
    r = reduce_form(form)
    assert r == expected
    assert isinstance(r, ReducedForm)
    assert r.discriminant() == form.discriminant()


def test_reduce_rejects_indefinite():
    with pytest.raises(FormError):
        reduce_form(Q(1, 3, 1))
    with pytest.raises(FormError):
        reduce_form(Q(-1, 0, -1))


def test_reduced_form_validates():
    with pytest.raises(FormError):
        ReducedForm(2, -2, 3)
    with pytest.raises(FormError):
        ReducedForm(3, 1, 2)


@pytest.mark.parametrize("d,forms", [
    (3, [(1, 1, 1)]),
    (15, [(1, 1, 4), (2, 1, 2)]),
    (12, [(1, 0, 3), (2, 2, 2)]),
    (23, [(1, 1, 6), (2, -1, 3), (2, 1, 3)]),
])
def test_enumerate_examples(d, forms):
    assert [tuple(f) for f in enumerate_reduced(d)] == forms


@pytest.mark.parametrize("d", [1, 2, 5, 6, 0, -3])
def test_enumerate_rejects_bad_discriminant(d):
    with pytest.raises(FormError):
        enumerate_reduced(d)


def test_enumeration_matches_bruteforce():
    for d in range(3, 801):
        if d % 4 in (0, 3):
            got = sorted(tuple(f) for f in enumerate_reduced(d))
            assert got == sorted(oracles.reduced_forms_bruteforce(d)), d


def test_enumeration_invariants():
    for d in range(3, 401):
        if d % 4 not in (0, 3):
            continue
        forms = enumerate_reduced(d)
        assert forms == sorted(forms, key=lambda f: (f.a, f.b))
        for f in forms:
            assert f.discriminant() == -d
            assert f.is_reduced()
            assert 3 * f.a * f.a <= d
            assert (f.b * f.b + d) % 4 == 0


def test_stabilizer_orders():
    assert stabilizer_order(Q(1, 1, 1)) == 3
    assert stabilizer_order(Q(2, 2, 2)) == 3
    assert stabilizer_order(Q(1, 0, 1)) == 2
    assert stabilizer_order(Q(1, 1, 4)) == 1


def test_stabilizer_matches_automorphism_count():
    # Count the matrices in a bounded SL2(Z) ball fixing the form; divide by +-1.
    words = oracles.small_sl2_words(4)
    for f in [(1, 1, 1), (1, 0, 1), (1, 1, 4), (2, 1, 3), (2, 2, 2)]:
        fixing = {m for m in words if oracles.apply_matrix(f, m) == f}
        fixing |= {tuple(-x for x in m) for m in fixing}
        assert len(fixing) // 2 == stabilizer_order(Q(*f))


def test_form_root():
    r = form_root(Q(1, 0, 1), 64)
    assert r.re == 0 and r.im == 1
    r = form_root(Q(1, 1, 1), 64)
    assert r.re == Fraction(-1, 2)
    assert abs(float(r.im) - math.sqrt(3) / 2) < 1e-15
    r = form_root(Q(2, 1, 2), 64)
    assert r.re == Fraction(-1, 4)
    assert abs(float(r.im) - math.sqrt(15) / 4) < 1e-15


def test_reduced_roots_lie_high_enough():
    for d in (3, 4, 23, 100, 399):
        for f in enumerate_reduced(d):
            im = form_root(f, 64).im
            assert 4 * im * im >= 3 - Fraction(1, 2**50)


@st.composite
def definite_forms(draw):
    a = draw(st.integers(1, 60))
    b = draw(st.integers(-120, 120))
    lo = (b * b + 3 + 4 * a - 1) // (4 * a)
    hi = (b * b + 400) // (4 * a)
    if lo > hi:
        return draw(st.nothing())
    c = draw(st.integers(lo, hi))
    return Q(a, b, c)


@given(definite_forms())
@settings(max_examples=300, deadline=None)
def test_reduce_idempotent_and_enumerated(f):
    r = reduce_form(f)
    assert reduce_form(r) == r
    assert r.discriminant() == f.discriminant()
    assert r in enumerate_reduced(-f.discriminant())


def test_reduction_of_random_translates_recovers_original():
    rng = random.Random(20261014)
    discs = [d for d in range(3, 401) if d % 4 in (0, 3)]
    for _ in range(1000):
        d = rng.choice(discs)
        f = rng.choice(enumerate_reduced(d))
        g = tuple(f)
        for _ in range(rng.randint(1, 8)):
            k = rng.randint(-5, 5)
            g = oracles.apply_matrix(g, (1, k, 0, 1))
            g = oracles.apply_matrix(g, (0, -1, 1, 0))
        assert reduce_form(Q(*g)) == f
