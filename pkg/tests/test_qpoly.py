from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from parabolic_counts.qpoly import QPolynomial, lagrange_interpolate

q = QPolynomial.gen()
coeff_lists = st.lists(st.integers(-20, 20), max_size=6)


def test_string_form_is_descending():
    assert str(1 - q) == "-q+1"
    assert str(q**3 + 2 * q**2 + 2 * q + 1) == "q^3+2q^2+2q+1"
    assert str(QPolynomial(())) == "0"
    assert str(QPolynomial((0, 0, Fraction(1, 2)))) == "1/2*q^2"


def test_parse_accepts_both_orders():
    assert QPolynomial.parse("1-q") == 1 - q
    assert QPolynomial.parse("-q+1") == 1 - q
    assert QPolynomial.parse("q^2 - 1") == q * q - 1
    assert QPolynomial.parse("1/2*q^2") == QPolynomial((0, 0, Fraction(1, 2)))


@settings(max_examples=100, deadline=None)
@given(coeff_lists)
def test_roundtrip(cs):
    p = QPolynomial(cs)
    assert QPolynomial.parse(str(p)) == p


@settings(max_examples=100, deadline=None)
@given(coeff_lists, coeff_lists, st.integers(-10, 10))
def test_evaluation_is_a_ring_map(a, b, x):
    p, r = QPolynomial(a), QPolynomial(b)
    assert (p + r)(x) == p(x) + r(x)
    assert (p * r)(x) == p(x) * r(x)
    assert (p - r)(x) == p(x) - r(x)


@settings(max_examples=100, deadline=None)
@given(coeff_lists, st.lists(st.integers(-9, 9), min_size=1, max_size=4).filter(lambda c: c[-1] != 0))
def test_exact_division(a, b):
    p, r = QPolynomial(a), QPolynomial(b)
    assert (p * r).exact_div(r) == p


def test_inexact_division_raises():
    with pytest.raises(ArithmeticError):
        (q * q + 1).exact_div(q - 1)


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(-50, 50), min_size=1, max_size=5))
def test_interpolation_recovers_polynomial(cs):
    p = QPolynomial(cs)
    xs = list(range(2, 2 + len(cs)))
    assert lagrange_interpolate(xs, [p(x) for x in xs]) == p


def test_interpolation_rejects_repeated_nodes():
    with pytest.raises(ValueError):
        lagrange_interpolate([2, 2], [1, 1])


def test_subs_power_and_reverse():
    assert (q + 1).subs_power(2) == q * q + 1
    assert (q + 2).reversed(1) == 2 * q + 1
    assert (q * q - 1)(3) == 8
