from decimal import Decimal, getcontext
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from pinchkit.surd import QuadSurd, as_fraction, is_exact, rational_sqrt

getcontext().prec = 60

fractions = st.fractions(min_value=-50, max_value=50, max_denominator=60)
radicands = st.fractions(min_value=0, max_value=40, max_denominator=20)


def as_decimal(x: QuadSurd) -> Decimal:
    def dec(f):
        return Decimal(f.numerator) / Decimal(f.denominator)

    return dec(x.p) + dec(x.q) * dec(x.d).sqrt()


def test_rational_sqrt():
    assert rational_sqrt(Fraction(9, 4)) == Fraction(3, 2)
    assert rational_sqrt(Fraction(2)) is None
    assert rational_sqrt(Fraction(-1)) is None


def test_perfect_square_radicand_collapses():
    assert QuadSurd.sqrt(Fraction(9, 16)).is_rational
    assert QuadSurd.sqrt(Fraction(9, 16)).as_rational() == Fraction(3, 4)


def test_sqrt2_identities():
    r2 = QuadSurd.sqrt(2)
    assert r2 * r2 == 2
    assert (1 + r2) * (r2 - 1) == 1
    assert 1 / (1 + r2) == r2 - 1
    assert Fraction(141, 100) < r2 < Fraction(142, 100)


def test_as_fraction_and_is_exact():
    assert as_fraction("3/7") == Fraction(3, 7)
    assert as_fraction(QuadSurd(2, 0, 5)) == 2
    assert is_exact(3) and is_exact(Fraction(1, 2)) and is_exact(QuadSurd.sqrt(3))
    assert not is_exact(0.5) and not is_exact(True)
    with pytest.raises(TypeError):
        as_fraction(0.5)
    with pytest.raises(ValueError):
        QuadSurd.sqrt(-1)


@given(fractions, fractions, radicands)
def test_sign_matches_high_precision(p, q, d):
    x = QuadSurd(p, q, d)
    ref = as_decimal(x)
    expected = (ref > 0) - (ref < 0)
    if abs(ref) > Decimal("1e-40"):
        assert x.sign() == expected


@given(fractions, fractions, fractions, fractions, radicands)
def test_field_operations_match_high_precision(p1, q1, p2, q2, d):
    a, b = QuadSurd(p1, q1, d), QuadSurd(p2, q2, d)
    for got, ref in ((a + b, as_decimal(a) + as_decimal(b)),
                     (a - b, as_decimal(a) - as_decimal(b)),
                     (a * b, as_decimal(a) * as_decimal(b))):
        assert abs(as_decimal(got) - ref) <= Decimal("1e-40") * (1 + abs(ref))
    if b != 0:
        assert (a / b) * b == a
