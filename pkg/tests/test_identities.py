import pytest
from hypothesis import given
from hypothesis import strategies as st

from hauptmodul.identities import (
    IdentityError,
    divisor_sum,
    divisor_sums,
    kaneko_a,
    ohta_c,
    zagier_sum,
)
from hauptmodul.qseries import named_series
from hauptmodul.traces import trace_t

import oracles


@pytest.mark.parametrize("n,odd,expected", [(6, True, 4), (1, True, 1), (9, False, 13),
                                            (12, False, 28), (12, True, 4), (64, True, 1)])
def test_divisor_sum_examples(n, odd, expected):
    assert divisor_sum(n, odd_only=odd) == expected


def test_divisor_sum_rejects_zero():
    with pytest.raises(ValueError):
        divisor_sum(0)


def test_divisor_sums_sieve_matches_oracle():
    sig = divisor_sums(500)
    assert sig[0] == 0
    assert sig[1:] == [oracles.sigma(1, n) for n in range(1, 501)]


@given(st.integers(1, 10**6))
def test_odd_divisor_sum_is_at_most_full(n):
    assert divisor_sum(n, odd_only=True) <= divisor_sum(n)


def test_ohta_decomposition_n1():
    assert trace_t(1) + 2 * trace_t(0) == 4
    assert -trace_t(3) == 248
    assert 4 + 248 + 24 == 276
    assert ohta_c(1) == 276


def test_ohta_decomposition_n2_uses_t_minus_one():
    assert trace_t(7) + trace_t(-1) + 24 == -4096
    assert ohta_c(2) == -2048


def test_ohta_c7():
    assert ohta_c(7) == 1881471


def test_ohta_matches_series_up_to_12():
    h = named_series("hauptmodul", 13)
    assert [ohta_c(n) for n in range(1, 13)] == [h[n] for n in range(1, 13)]


def test_ohta_without_t_minus_one_breaks():
    # Dropping the d = -1 term must be detected at n = 2.
    def truncated(d):
        return 0 if d == -1 else trace_t(d)
    with pytest.raises(IdentityError):
        ohta_c(2, truncated)


@pytest.mark.parametrize("n,expected", [(1, 196884), (2, 21493760), (3, 864299970)])
def test_kaneko_examples(n, expected):
    assert kaneko_a(n) == expected
    assert oracles.j_coefficients(n + 2)[n + 1] == expected


def test_kaneko_rejects_nonpositive():
    with pytest.raises(ValueError):
        kaneko_a(0)
    with pytest.raises(ValueError):
        ohta_c(-1)


def test_divisibility_failure_is_reported():
    def off_by_one(d):
        return trace_t(d) + (1 if d == 7 else 0)
    with pytest.raises(IdentityError, match="not divisible"):
        ohta_c(2, off_by_one)


def test_zagier_examples():
    assert trace_t(4) + 2 * trace_t(3) == -4
    assert zagier_sum(1) == (-4, -4)
    assert zagier_sum(2) == (2, 2)
    assert zagier_sum(3) == (0, 0)


def test_zagier_strict_bound():
    # At n = 4 the excluded r = 4 would add 2 t(0) = 4.
    computed, expected = zagier_sum(4)
    assert computed == expected == -4


def test_zagier_up_to_30():
    for n in range(1, 31):
        computed, expected = zagier_sum(n)
        assert computed == expected, n
