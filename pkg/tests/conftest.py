from fractions import Fraction

import pytest
from hypothesis import strategies as st

import sdmred.lib as slib
import sdmred.field as sfield

P, E = 13, 2


@pytest.fixture(autouse=True)
def default_settings():
    """ Every test starts from the default SETTINGS and leaves them untouched """
    previous = dict(slib.SETTINGS)
    slib.SETTINGS.clear()
    slib.SETTINGS.update(slib.DEFAULT_SETTINGS)
    yield slib.SETTINGS
    slib.SETTINGS.clear()
    slib.SETTINGS.update(previous)


def element(*coeffs):
    """ Element of Q[pi]/(pi^2 - 13) from rational coefficients """
    return sfield.make_element([Fraction(c) for c in coeffs], E, P)


small_rationals = st.fractions(min_value=-60, max_value=60, max_denominator=30)


@st.composite
def elements(draw, nonzero=False):
    a0, a1 = draw(small_rationals), draw(small_rationals)
    if nonzero and a0 == 0 and a1 == 0:
        a0 = Fraction(1)
    return sfield.make_element([a0, a1], E, P)
