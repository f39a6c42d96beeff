from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from fieldstar.rationals import GRat, I, ONE, ZERO

rationals = st.fractions(min_value=-50, max_value=50, max_denominator=9)
grats = st.builds(GRat, rationals, rationals)


def test_constructor_coerces_ints_and_fractions():
    assert GRat(3) == 3
    assert GRat(Fraction(1, 2)).re == Fraction(1, 2)
    assert GRat(1, 2) == GRat(Fraction(1), Fraction(2))


def test_imaginary_unit_squares_to_minus_one():
    assert I * I == GRat(-1)


def test_field_operations():
    a = GRat(Fraction(1, 2), Fraction(3, 4))
    b = GRat(Fraction(-2), Fraction(1, 3))
    assert a + b == GRat(Fraction(-3, 2), Fraction(13, 12))
    assert a - a == ZERO
    assert a * ONE == a
    assert (a / b) * b == a


def test_conjugate_and_abs_square():
    a = GRat(2, 3)
    assert a.conjugate() == GRat(2, -3)
    assert a * a.conjugate() == GRat(13)


def test_truthiness_and_zero():
    assert not ZERO
    assert bool(I)
    assert GRat(0, 1) != ZERO


def test_complex_coercion():
    assert complex(GRat(Fraction(1, 2), Fraction(-3))) == 0.5 - 3j


@given(grats, grats, grats)
def test_multiplication_distributes(a, b, c):
    assert a * (b + c) == a * b + a * c


@given(grats)
def test_additive_inverse(a):
    assert a + (-a) == ZERO


@given(grats, grats)
def test_conjugation_is_multiplicative(a, b):
    assert (a * b).conjugate() == a.conjugate() * b.conjugate()


def test_hash_consistent_with_equality():
    assert hash(GRat(2)) == hash(2)
    assert len({GRat(1, 0), GRat(Fraction(1)), 1}) == 1
