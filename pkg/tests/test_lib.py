from fractions import Fraction

import pytest
import sympy
from hypothesis import given, strategies as st

import sdmred.lib as slib


def test_setting_falls_back_to_defaults():
    assert slib.setting("prime") == 13
    assert slib.setting("prime", 7) == 7
    assert slib.setting("free_rho") == "0"


def test_parse_rational():
    assert slib.parse_rational("-17/6") == Fraction(-17, 6)
    assert slib.parse_rational(" 3 ") == Fraction(3)
    with pytest.raises(slib.DomainError):
        slib.parse_rational("x/2")
    with pytest.raises(slib.DomainError):
        slib.parse_rational("1/0")


def test_format_rational_is_canonical():
    assert slib.format_rational(Fraction(6, 1)) == "6"
    assert slib.format_rational(Fraction(-6, 4)) == "-3/2"
    assert slib.format_rational(sympy.Rational(5, 10)) == "1/2"


@given(st.fractions())
def test_formatted_rationals_parse_back(q):
    assert slib.parse_rational(slib.format_rational(q)) == q


def test_to_fraction():
    assert slib.to_fraction(3) == Fraction(3)
    assert slib.to_fraction("2/4") == Fraction(1, 2)
    assert slib.to_fraction(sympy.Rational(3, 4)) == Fraction(3, 4)
    with pytest.raises(slib.DomainError):
        slib.to_fraction(True)
    with pytest.raises(slib.DomainError):
        slib.to_fraction(0.5)


def test_parse_list():
    assert slib.parse_list("2,2", int) == [2, 2]
    assert slib.parse_list("1/2, 3") == [Fraction(1, 2), Fraction(3)]
    assert slib.parse_list("") == []


def test_dump_json_is_deterministic():
    assert slib.dump_json({"b": 1, "a": ["∞"]}) == '{\n  "a": [\n    "∞"\n  ],\n  "b": 1\n}\n'


def test_print_error_raises_with_extra_fields():
    with pytest.raises(slib.ExtensionDegreeError) as error:
        slib.print_error("needs F_p^2", True, slib.ExtensionDegreeError, degree=2)
    assert error.value.degree == 2
    assert isinstance(error.value, slib.SdmError)


def test_print_error_only_logs_without_traceback(caplog):
    slib.print_error("just logged")
    assert "just logged" in caplog.text


def test_u_enlist_and_u_stringify():
    assert slib.u_enlist("a") == ["a"]
    assert slib.u_enlist(Fraction(1, 2)) == [Fraction(1, 2)]
    assert slib.u_enlist(None) == []
    assert slib.u_enlist((1, 2)) == [1, 2]
    assert slib.u_stringify(["1/2", 2]) == "1/2,2"
    assert slib.u_stringify(0) == "0"
    assert slib.u_stringify(None) == ""


def test_timer_keeps_the_wrapped_name():
    @slib.timer
    def compute():
        """ doc """
        return 4

    assert compute() == 4
    assert compute.__name__ == "compute"
