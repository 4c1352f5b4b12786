"""Exact cyclotomic scalar arithmetic."""
from fractions import Fraction

import pytest

from weylrack.cyclotomic import CyclotomicField, cyclotomic_polynomial


def test_cyclotomic_polynomials():
    assert cyclotomic_polynomial(1) == (-1, 1)
    assert cyclotomic_polynomial(2) == (1, 1)
    assert cyclotomic_polynomial(3) == (1, 1, 1)
    assert cyclotomic_polynomial(4) == (1, 0, 1)
    assert cyclotomic_polynomial(6) == (1, -1, 1)
    assert cyclotomic_polynomial(12) == (1, 0, -1, 0, 1)


def test_field_basics():
    F = CyclotomicField(2)
    assert F.degree == 1
    assert F.zeta() == F.minus_one()
    assert F.one + F.minus_one() == F.zero
    assert F.scalar(Fraction(1, 2)) * F.scalar(2) == F.one


def test_zeta_powers_and_order():
    F = CyclotomicField(12)
    z = F.zeta()
    acc = F.one
    for k in range(12):
        assert acc == F.zeta(k)
        acc = acc * z
    assert acc == F.one
    assert z.multiplicative_order() == 12
    assert F.zeta(6).multiplicative_order() == 2
    assert F.zeta(4).multiplicative_order() == 3
    assert F.minus_one().multiplicative_order() == 2
    assert F.one.multiplicative_order() == 1
    assert F.scalar(2).multiplicative_order() is None


def test_inverse_and_division():
    F = CyclotomicField(5)
    z = F.zeta()
    x = z + F.scalar(3)
    assert x * x.inverse() == F.one
    assert (x / x) == F.one
    with pytest.raises(ZeroDivisionError):
        F.zero.inverse()


def test_minimal_polynomial_relation():
    # 1 + z + z^2 + z^3 + z^4 = 0 in Q(zeta_5)
    F = CyclotomicField(5)
    total = F.zero
    for k in range(5):
        total = total + F.zeta(k)
    assert total == F.zero


def test_power_operator():
    F = CyclotomicField(7)
    z = F.zeta(3)
    assert z**0 == F.one
    assert z**5 == z * z * z * z * z
    assert z**-1 == z.inverse()


def test_exactness_no_drift():
    F = CyclotomicField(3)
    third = F.scalar(Fraction(1, 3))
    acc = F.zero
    for _ in range(3000):
        acc = acc + third
    assert acc == F.scalar(1000)


def test_cross_field_mixing_rejected():
    a = CyclotomicField(3).one
    b = CyclotomicField(4).one
    with pytest.raises(ValueError):
        _ = a + b
