from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from pinchkit import oracles
from pinchkit.errors import AmbiguousComparison, DomainError
from pinchkit.pinching import (
    Comparison,
    alpha,
    alpha_coefficient,
    alpha_range_check,
    b_vlachos,
    compare_alpha_b,
    crossover_h,
    gamma,
    phi,
    xu_gu_bound,
)
from pinchkit.surd import QuadSurd

admissible = st.integers(5, 30).flatmap(lambda n: st.tuples(st.just(n), st.integers(2, n // 2)))
rationals = st.fractions(min_value=0, max_value=20, max_denominator=50)


def test_phi_midpoint():
    v = phi(6, 3)
    assert v.value == Fraction(1, 4) and v.derivative == 0


def test_phi_n5_s2():
    assert phi(5, 2).value == Fraction(6, 17) == oracles.phi_direct(5, 2)


def test_phi_decreasing_n10():
    vals = [phi(10, Fraction(s)).value for s in ("2", "5/2", "3", "4", "5")]
    assert all(a > b for a, b in zip(vals, vals[1:]))


@given(st.integers(5, 30), st.fractions(min_value=0, max_value=1, max_denominator=1000))
def test_phi_derivative_sign_and_value(n, t):
    s = 2 + t * (Fraction(n, 2) - 2)
    v = phi(n, s)
    assert v.value == oracles.phi_direct(n, s)
    assert (v.derivative < 0) == (2 * s < n)
    h = Fraction(1, 10**6)
    if 2 + h <= s <= Fraction(n, 2) - h:
        fd = (phi(n, s + h).value - phi(n, s - h).value) / (2 * h)
        assert abs(fd - v.derivative) < Fraction(1, 10**6)


def test_phi_domain():
    with pytest.raises(DomainError):
        phi(6, Fraction(7, 2))
    with pytest.raises(DomainError):
        phi(4, 2)


def test_alpha_n5_k2():
    assert alpha_coefficient(5, 2) == Fraction(50, 17) == 3 - Fraction(4, 68)


@pytest.mark.parametrize("k", [3, 4, 5, 8])
def test_alpha_n_equals_2k(k):
    H, c = Fraction(2, 3), Fraction(1, 2)
    assert alpha(2 * k, k, H, c) == (2 * k - 2) * (c + H * H)


def test_alpha_increasing_in_k():
    assert alpha(7, 2, 1, 1) < alpha(7, 3, 1, 1)


@given(admissible, rationals, rationals)
def test_alpha_matches_original_form(nk, H, c):
    n, k = nk
    assert alpha(n, k, H, c) == oracles.alpha_direct(n, k, H * H, c)


def test_alpha_float_and_surd_inputs():
    assert alpha(6, 2, 0.5, 1.0) == pytest.approx(float(alpha(6, 2, Fraction(1, 2), 1)))
    assert alpha(6, 2, QuadSurd.sqrt(2), 1) == alpha_coefficient(6, 2) * 3


def test_b_at_zero_and_n_2k():
    assert b_vlachos(7, 3, 0) == Fraction(7 * 2, 3)
    assert b_vlachos(8, 4, 0) == 6 == alpha(8, 4, 0, 1)


def test_b_high_precision():
    from decimal import Decimal

    got = b_vlachos(6, 2, Fraction(1))
    ref = oracles.b_decimal(6, 2, Fraction(1))
    assert abs(Decimal(str(float(got))) - ref) < Decimal("1e-14")
    assert b_vlachos(6, 2, 1.0) == pytest.approx(float(ref), rel=1e-15)


def test_xu_gu():
    assert xu_gu_bound(5, 0, 1) == Fraction(20, 7)
    assert xu_gu_bound(9, 0, 0) == 0


@given(st.integers(5, 40), rationals, rationals)
def test_xu_gu_below_alpha_k2(n, H, c):
    if c + H * H > 0:
        assert xu_gu_bound(n, H, c) < alpha(n, 2, H, c)


def test_gamma():
    assert gamma(7, 3) == 5


def test_trichotomy_examples():
    assert compare_alpha_b(7, 2, 0).comparison is Comparison.ALPHA_GREATER
    assert compare_alpha_b(8, 4, 0).comparison is Comparison.EQUAL
    assert compare_alpha_b(8, 4, Fraction(1, 100)).comparison is Comparison.B_GREATER
    assert compare_alpha_b(7, 2, 100).comparison is Comparison.B_GREATER


def test_crossover_bracket():
    lo, hi = crossover_h(7, 2)
    assert 0 < hi - lo <= Fraction(1, 10**12)
    assert compare_alpha_b(7, 2, lo).comparison is not Comparison.B_GREATER
    assert compare_alpha_b(7, 2, hi).comparison is Comparison.B_GREATER
    # the float route agrees away from the crossover
    assert compare_alpha_b(7, 2, float(hi) * 1.01).comparison is Comparison.B_GREATER


def test_float_comparison_refuses_near_tie():
    with pytest.raises(AmbiguousComparison):
        compare_alpha_b(8, 4, 0.0)


def test_range_flags():
    for n in range(5, 31):
        for k in range(2, n // 2 + 1):
            assert alpha_range_check(n, k)
    assert alpha_coefficient(6, 3) == 4
    assert alpha_coefficient(9, 4) < 7


def test_bound_row_keys():
    row = compare_alpha_b(6, 2, Fraction(1, 2)).as_row()
    assert row["comparison"] == "B_GREATER" and float(row["alpha"]) == pytest.approx(float(alpha(6, 2, 0.5, 1)))
