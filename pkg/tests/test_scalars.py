import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from noetherlab.scalars import QQ, Field, Scalar, field_make, scalar_arith, scalar_pow


def test_field_make():
    assert field_make(7).char == 7
    assert field_make(0).char == 0
    with pytest.raises(ValueError, match="6 is not prime"):
        field_make(6)
    with pytest.raises(ValueError):
        field_make(-3)
    with pytest.raises(ValueError):
        field_make(2 ** 31)


def test_basic_arithmetic():
    gf7 = Field(7)
    assert scalar_arith("inv", gf7.scalar(3)) == gf7.scalar(5)
    assert scalar_arith("add", QQ.scalar(Fraction(1, 2)), QQ.scalar(Fraction(1, 3))) \
        == QQ.scalar(Fraction(5, 6))
    with pytest.raises(ZeroDivisionError):
        scalar_arith("inv", gf7.scalar(0))
    with pytest.raises(ValueError):
        scalar_arith("add", gf7.scalar(1), QQ.scalar(1))


def test_pow():
    gf7 = Field(7)
    assert scalar_pow(gf7.scalar(3), 6) == gf7.scalar(1)
    assert scalar_pow(gf7.scalar(3), -1) == gf7.scalar(5)
    assert scalar_pow(QQ.scalar(2), 10) == QQ.scalar(1024)
    with pytest.raises(ZeroDivisionError):
        scalar_pow(gf7.scalar(0), -1)


def test_fermat_exhaustive():
    for p in (2, 3, 5, 7, 11, 13):
        field = Field(p)
        for a in range(1, p):
            assert scalar_pow(field.scalar(a), p - 1) == field.scalar(1)


def _random_scalar(field, rng):
    if field.char:
        return field.scalar(rng.randrange(field.char))
    return field.scalar(Fraction(rng.randint(-50, 50), rng.randint(1, 30)))


@pytest.mark.parametrize("char", [2, 3, 7, 0])
def test_field_axioms_randomized(char):
    field = Field(char)
    rng = random.Random(1000 + char)
    zero, one = field.scalar(0), field.scalar(1)
    for _ in range(10 ** 4):
        a = _random_scalar(field, rng)
        b = _random_scalar(field, rng)
        c = _random_scalar(field, rng)
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert a + (-a) == zero
        if a != zero:
            assert a * a.inverse() == one


def test_division_is_inverse_multiplication():
    gf7 = Field(7)
    for a in range(7):
        for b in range(1, 7):
            assert gf7.scalar(a) / gf7.scalar(b) * gf7.scalar(b) == gf7.scalar(a)


@given(st.integers(-10 ** 9, 10 ** 9), st.integers(1, 10 ** 6))
def test_canonical_idempotence_rationals(num, den):
    s = QQ.scalar(Fraction(num, den))
    again = QQ.scalar(s.value)
    assert s == again
    assert s.value.denominator > 0
    from math import gcd
    assert gcd(s.value.numerator, s.value.denominator) == 1


@given(st.integers(-1000, 1000))
def test_canonical_idempotence_gf(n):
    gf13 = Field(13)
    s = gf13.scalar(n)
    assert 0 <= s.value < 13
    assert gf13.scalar(s.value) == s


def test_report_form():
    assert Field(7).scalar(10).report() == "3 mod 7"
    assert QQ.scalar(Fraction(5, 6)).report() == "5/6"
    assert QQ.scalar(3).report() == "3"


def test_fraction_embeds_in_gf():
    gf7 = Field(7)
    assert gf7.scalar(Fraction(1, 2)) == gf7.scalar(4)
    with pytest.raises(ZeroDivisionError):
        gf7.scalar(Fraction(1, 7))


def test_multiplicative_order():
    gf7 = Field(7)
    assert gf7.scalar(3).multiplicative_order() == 6
    assert gf7.scalar(2).multiplicative_order() == 3
    assert gf7.scalar(6).multiplicative_order() == 2
    assert QQ.scalar(-1).multiplicative_order(bound=2) == 2
