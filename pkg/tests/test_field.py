from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import sdmred.lib as slib
import sdmred.field as sfield

from .conftest import element, elements, P, E


def test_extended_rational_order():
    assert sfield.INF > sfield.ExtendedRational(10 ** 6)
    assert sfield.ExtendedRational(Fraction(1, 2)) < 1
    assert sfield.parse_extended("inf").is_infinite
    assert sfield.parse_extended("∞") == sfield.INF
    assert sfield.parse_extended("-3/2") == Fraction(-3, 2)
    assert sfield.INF + 1 == sfield.INF
    with pytest.raises(slib.DomainError):
        sfield.INF.fraction()


def test_ord_p():
    assert sfield.ord_p(Fraction(26, 3), P) == 1
    assert sfield.ord_p(Fraction(5, 169), P) == -2
    assert sfield.ord_p(0, P).is_infinite


def test_valuation_of_eisenstein_elements():
    assert element(13, 1).valuation() == Fraction(1, 2)
    assert element(0, Fraction(1, 13)).valuation() == Fraction(-1, 2)
    assert element(Fraction(1, 13), 1).valuation() == -1
    assert element(0, 0).valuation().is_infinite


def test_pi_power():
    assert sfield.pi_power(3, E, P) == element(0, 13)
    assert sfield.pi_power(-1, E, P) == element(0, Fraction(1, 13))
    assert sfield.pi_power(-3, E, P).valuation() == Fraction(-3, 2)
    assert sfield.pi_power(-1, E, P) * sfield.pi_power(1, E, P) == 1


def test_make_element_reduces_high_powers():
    # pi^2 = p
    assert sfield.make_element([0, 0, 1], E, P) == element(13)
    assert sfield.make_element([1, 0, 0, 2], E, P) == element(1, 26)


def test_arithmetic():
    a = element(1, 1)
    assert a * a.inverse() == 1
    assert a / a == 1
    assert a ** 2 == element(14, 2)
    assert a ** -1 == a.inverse()
    assert 1 - a == element(0, -1)
    with pytest.raises(slib.DomainError):
        element(0).inverse()


def test_elements_of_different_fields_do_not_mix():
    with pytest.raises(slib.DomainError):
        element(1) + sfield.make_element([1], 2, 11)


def test_sqrt():
    assert element(4).sqrt() == 2
    assert element(13).sqrt() == element(0, 1)
    root = element(Fraction(9, 4) + 13, 3).sqrt()
    assert root * root == element(Fraction(9, 4) + 13, 3)
    with pytest.raises(slib.ExtensionDegreeError):
        element(2).sqrt()


@settings(max_examples=40, deadline=None)
@given(elements(nonzero=True), elements(nonzero=True))
def test_valuation_is_additive(a, b):
    assert (a * b).valuation() == a.valuation() + b.valuation()


@settings(max_examples=40, deadline=None)
@given(elements(), elements())
def test_valuation_of_a_sum_is_at_least_the_minimum(a, b):
    assert (a + b).valuation() >= min(a.valuation(), b.valuation())


def test_residue():
    assert sfield.residue(Fraction(17, 6)).prime_value() == 5
    assert sfield.residue(Fraction(38, 3)).prime_value() == 4
    assert sfield.residue(element(2, 5)).prime_value() == 2
    with pytest.raises(slib.NegativeValuationError):
        sfield.residue(element(0, Fraction(1, 13)))


def test_prime_residue_field():
    field = sfield.ResidueField(P)
    assert field(3).inverse() * 3 == 1
    assert field(Fraction(1, 2)) == 7
    assert field(-1) == 12
    assert field.sqrt(field(10)) ** 2 == 10
    assert field.sqrt(field(5)) is None
    with pytest.raises(slib.NegativeValuationError):
        field(Fraction(1, 13))


def test_quadratic_residue_field():
    field = sfield.ResidueField(P, 2)
    # s^2 = 2, the least non-residue mod 13
    assert field.nonresidue == 2
    assert field.generator() ** 2 == 2
    root = field.sqrt(field(5))
    assert root.prime_value() is None
    assert root * root == 5
    s = field.generator()
    assert (s + 1) * (s + 1).inverse() == 1


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 3), st.lists(st.integers(0, P - 1), min_size=3, max_size=3))
def test_residue_inverse(k, coeffs):
    field = sfield.ResidueField(P, k)
    a = field(coeffs[-k:])
    if a.is_zero():
        with pytest.raises(slib.DomainError):
            a.inverse()
        return
    assert a * a.inverse() == 1
    assert field.one() / a == a.inverse()
    assert a ** -2 * a * a == 1


def test_lift_to_the_quadratic_field():
    element_ = sfield.ResidueField(P)(4)
    lifted = element_.lift(2)
    assert lifted.field.k == 2
    assert lifted.prime_value() == 4
    with pytest.raises(slib.DomainError):
        sfield.ResidueField(P, 2).generator().lift(1)


def test_residue_field_rejects_bad_degree():
    with pytest.raises(slib.DomainError):
        sfield.ResidueField(P, 0)
    with pytest.raises(slib.DomainError):
        sfield.ResidueField(12)
