# -*- coding: utf-8 -*-
"""
@summary:       sdmred shared library: settings, decorators, printing, errors and rational I/O
@run:           import sdmred.lib as slib (suggested)
@license:       MIT
"""
import os
import json
import time
from fractions import Fraction
from functools import wraps

from . import logger as slog

LOG = slog.logger("sdmred.lib")

DEFAULT_SETTINGS = {
    "prime": 13,
    "ramification": 2,
    "max_residue_degree": 2,
    "free_rho": "0",
    "max_weight": 8,
    "debug": False,
    "fixtures_dir": "",
}
SETTINGS = dict(DEFAULT_SETTINGS)
_custom_settings_path = os.path.abspath(os.path.join(__file__, os.pardir, "_custom_settings.json"))
if os.path.isfile(_custom_settings_path):
    with open(_custom_settings_path, 'r') as f:
        for _key, _value in json.load(f).items():
            if _key in DEFAULT_SETTINGS:
                SETTINGS[_key] = _value
            elif _key != "instructions":
                LOG.warning("Unknown setting '{0}' in {1}".format(_key, _custom_settings_path))
        LOG.info("Loaded custom settings.")


def setting(key, value=None):
    """
    Get a setting, unless an explicit value overrides it
    Args:
        key (unicode): Key within SETTINGS
        value: Explicit value (None falls back to SETTINGS)
    Returns:
        The explicit value or the configured setting
    """
    if value is not None:
        return value
    return SETTINGS[key]


#        _                          _
#     __| | ___  ___ ___  _ __ __ _| |_ ___  _ __ ___
#    / _` |/ _ \/ __/ _ \| '__/ _` | __/ _ \| '__/ __|
#   | (_| |  __/ (_| (_) | | | (_| | || (_) | |  \__ \
#    \__,_|\___|\___\___/|_|  \__,_|\__\___/|_|  |___/
#
def timer(f):
    """
    Decorator to time functions
    Args:
        f: function to be timed

    Returns:
        wrapped function with a timer
    """

    @wraps(f)  # timer = wraps(timer) | helps wrap the docstring of original function
    def wrapper(*args, **kwargs):
        time_start = time.time()
        try:
            return f(*args, **kwargs)
        finally:
            time_end = time.time()
            LOG.debug("[Time elapsed at {0}:    {1:.4f} sec]".format(f.__name__, time_end - time_start))

    return wrapper


######################################################################################
# ERRORS
######################################################################################
class SdmError(RuntimeError):
    """ Base of every error raised by sdmred """


class DomainError(SdmError):
    """ Argument out of range or malformed """


class SingularBlockError(SdmError):
    """ Block determinant vanishes at the specialised x """


class PoleError(SdmError):
    """ A rational function is evaluated at its pole """


class NegativeValuationError(SdmError):
    """ Residue of a non-integral element """


class NonUnitError(SdmError):
    """ An element required to be a unit is not """


class InfeasibleError(SdmError):
    """ Case constraints are violated by the supplied values """


class ExtensionDegreeError(SdmError):
    """ No root exists in the configured field """

    def __init__(self, message, degree=2):
        super(ExtensionDegreeError, self).__init__(message)
        self.degree = degree


class UnclassifiedShapeError(SdmError):
    """ Breuil module matches no known shape """

    def __init__(self, message, matrices=None):
        super(UnclassifiedShapeError, self).__init__(message)
        self.matrices = matrices


class FixtureError(SdmError):
    """ Missing or malformed table fixture """


#               _       _        __      _ _           _
#    _ __  _ __(_)_ __ | |_     / /   __| (_)___ _ __ | | __ _ _   _
#   | '_ \| '__| | '_ \| __|   / /   / _` | / __| '_ \| |/ _` | | | |
#   | |_) | |  | | | | | |_   / /   | (_| | \__ \ |_) | | (_| | |_| |
#   | .__/|_|  |_|_| |_|\__| /_/     \__,_|_|___/ .__/|_|\__,_|\__, |
#   |_|                                         |_|            |___/
def print_info(info):
    """
    Logs the information statement
    Args:
        info (unicode): Information to be displayed
    """
    LOG.info(info)


def print_warning(warning):
    """
    Logs the warning statement
    Args:
        warning (unicode): Warning to be displayed
    """
    LOG.warning(warning)


def print_error(error, show_traceback=False, exception=SdmError, **kwargs):
    """
    Logs the error statement and optionally raises it
    Args:
        error (unicode): Error to be displayed
        show_traceback (bool): If the error should stop the execution and show a traceback
        exception (type): SdmError subclass to raise
        **kwargs: Extra keyword arguments of the exception (e.g. degree, matrices)
    """
    LOG.error(error)
    if show_traceback:
        raise exception(error, **kwargs)


#        _        _
#    ___| |_ _ __(_)_ __   __ _
#   / __| __| '__| | '_ \ / _` |
#   \__ \ |_| |  | | | | | (_| |
#   |___/\__|_|  |_|_| |_|\__, |
#                         |___/
def is_string(v):
    """
    Returns if a variable is a string
    Args:
        v (unicode): variable to check if it's a string
    Returns:
        (bool): If variable is a string
    """
    return isinstance(v, str)


def to_fraction(value):
    """
    Converts ints, Fractions, rational strings and sympy Rationals to a Fraction
    Args:
        value: Rational-like value
    Returns:
        (Fraction): Exact rational
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        print_error("Booleans are not rationals", True, DomainError)
    if isinstance(value, int):
        return Fraction(value)
    if is_string(value):
        return parse_rational(value)
    if hasattr(value, "p") and hasattr(value, "q"):  # sympy Rational
        return Fraction(int(value.p), int(value.q))
    if hasattr(value, "numerator") and hasattr(value, "denominator"):
        return Fraction(int(value.numerator), int(value.denominator))
    print_error("Can't convert {0!r} to a rational".format(value), True, DomainError)


def parse_rational(text):
    """
    Parses a canonical rational string, e.g. "3", "-17/6"
    Args:
        text (unicode): Rational in the form num or num/den
    Returns:
        (Fraction): Parsed rational
    """
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError, AttributeError):
        print_error("Can't parse '{0}' as a rational".format(text), True, DomainError)


def format_rational(q):
    """
    Canonical string of a rational: "3/2", "-6"
    Args:
        q: Rational-like value
    Returns:
        (unicode): Canonical string
    """
    return str(to_fraction(q))


def parse_list(text, parser=parse_rational):
    """
    Parses a comma separated list, e.g. "2,2" or "inf,3/2"
    Args:
        text (unicode): Comma separated values (empty string means empty list)
        parser (function): Parser applied to each entry
    Returns:
        (list): Parsed entries
    """
    text = u_stringify(text).strip()
    if not text:
        return []
    return [parser(entry) for entry in text.split(",")]


def dump_json(obj):
    """
    Deterministic JSON dump (sorted keys, two space indent, trailing newline)
    Args:
        obj: JSON-serializable object
    Returns:
        (unicode): JSON text
    """
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


#                _ _       _            _
#    _   _ _ __ (_) |_    | |_ ___  ___| |_ ___
#   | | | | '_ \| | __|   | __/ _ \/ __| __/ __|
#   | |_| | | | | | |_    | ||  __/\__ \ |_\__ \
#    \__,_|_| |_|_|\__|    \__\___||___/\__|___/
#
def u_enlist(arg, silent=True):
    """
    Unit test to check if given argument is not a list
    Args:
        arg: argument to put into a list
        silent (bool): If the function should print warnings if the wrong data was given (default=False)
    Returns:
        List: The argument in a list
    """
    if is_string(arg):
        if not silent:
            LOG.info("{0} is a string, enlisting it".format(arg))
        return [arg]
    elif isinstance(arg, (int, Fraction)):
        if not silent:
            LOG.info("{0} is a number, enlisting it".format(arg))
        return [arg]
    elif arg is None:
        return []
    return list(arg)


def u_stringify(arg, silent=True):
    """
    Unit test to check if given argument is not a string
    Args:
        arg: argument to put into a string
        silent (bool): If the function should print warnings if the wrong data was given (default=False)
    Returns:
        (unicode): The argument in a string
    """
    str_arg = ""
    if arg:
        str_arg = arg
        if isinstance(arg, list) or isinstance(arg, tuple):
            if not silent:
                LOG.info("{0} is a list/tuple, joining it".format(arg))
            str_arg = ",".join(u_stringify(a) for a in arg)
        elif not is_string(arg):
            str_arg = str(arg)
    elif arg == 0 and not is_string(arg) and arg is not None:
        str_arg = "0"
    return str_arg
