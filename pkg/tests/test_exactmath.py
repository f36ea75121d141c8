from fractions import Fraction

import pytest

from helpers import P
from holorec.exactmath import (
    Poly, falling_factorial_poly, falling_to_power, integer_roots, poly_derivative,
    poly_gcd_primitive, poly_mul, power_to_falling, rational_power, stirling2,
)


@pytest.mark.parametrize("a, b, want", [
    (P(1, -4), P(1, 4), P(1, 0, -16)),
    (P(), P(1, 1), P()),
    (P(1, -2, -3), P(1, -2, -3), P(1, -4, -2, 12, 9)),
])
def test_poly_mul(a, b, want):
    assert poly_mul(a, b) == want


@pytest.mark.parametrize("a, want", [
    (P(1, -6, 1), P(-6, 2)),
    (P(7), P()),
    (P(1, -2, -7), P(-2, -14)),
])
def test_derivative(a, want):
    assert poly_derivative(a) == want


@pytest.mark.parametrize("a, b, want", [
    (P(0, 0, 1, -1), P(0, 0, 0, 1), P(0, 0, 1)),
    (P(1, 0, -1), P(1, -1), P(-1, 1)),
    (P(1, -4), P(1, 4), P(1)),
])
def test_gcd_is_monic(a, b, want):
    assert poly_gcd_primitive(a, b) == want


@pytest.mark.parametrize("p, want", [
    (P(0, 0, 1), [0, 1, 1]),
    (P(5), [5]),
    (P(0, 0, 0, 1), [0, 1, 3, 1]),
])
def test_power_to_falling(p, want):
    assert power_to_falling(p) == [Fraction(c) for c in want]
    assert falling_to_power(power_to_falling(p)) == p


def test_stirling_row():
    assert [stirling2(4, m) for m in range(5)] == [0, 1, 7, 6, 1]


def test_falling_factorial_values():
    ff = falling_factorial_poly(3)
    assert [ff(n) for n in range(5)] == [0, 0, 0, 6, 24]


def test_integer_roots():
    p = P(-6, 11, -6, 1) * P(1, 2)  # (n-1)(n-2)(n-3)(2n+1)
    assert sorted(integer_roots(p)) == [1, 2, 3]


def test_rational_power():
    assert rational_power(Fraction(9, 4), Fraction(-1, 2)) == Fraction(2, 3)
    assert rational_power(-8, Fraction(1, 3)) == -2
    with pytest.raises(ValueError):
        rational_power(2, Fraction(1, 2))


def test_zero_poly_shape():
    z = Poly([0, 0])
    assert z.is_zero() and z.degree == -1 and z.coeffs == ()
