# -*- coding: utf-8 -*-
"""
@summary:       Exact arithmetic in E = Q[pi]/(pi^e - p) with p-adic valuation, plus residue fields F_{p^k}
@run:           import sdmred.field as sfield (suggested)
@license:       MIT
"""
import math
import itertools
import functools
from fractions import Fraction

import sympy
from sympy import Poly, QQ, ZZ, Rational, Symbol
from sympy.polys import galoistools as gf
from sympy.ntheory import is_quad_residue, sqrt_mod
from sympy.polys.polyerrors import NotInvertible

from . import lib as slib
from . import logger as slog

LOG = slog.logger("sdmred.field")
_PI = Symbol("varpi")


#            _                 _          _
#    _____  _| |_ ___ _ __   __| | ___  __| |
#   / _ \ \/ / __/ _ \ '_ \ / _` |/ _ \/ _` |
#  |  __/>  <| ||  __/ | | | (_| |  __/ (_| |
#   \___/_/\_\\__\___|_| |_|\__,_|\___|\__,_|
#
@functools.total_ordering
class ExtendedRational(object):
    """ A rational or infinity, ordered so that q < inf for every rational q """
    __slots__ = ("value",)

    def __init__(self, value=None):
        self.value = None if value is None else slib.to_fraction(value)

    @property
    def is_infinite(self):
        return self.value is None

    def fraction(self):
        """ The finite value as a Fraction """
        if self.is_infinite:
            slib.print_error("Infinity has no rational value", True, slib.DomainError)
        return self.value

    @staticmethod
    def coerce(other):
        if isinstance(other, ExtendedRational):
            return other
        return ExtendedRational(other)

    def __eq__(self, other):
        if other is None:
            return False
        try:
            other = ExtendedRational.coerce(other)
        except slib.SdmError:
            return NotImplemented
        return self.value == other.value

    def __lt__(self, other):
        other = ExtendedRational.coerce(other)
        if self.is_infinite:
            return False
        if other.is_infinite:
            return True
        return self.value < other.value

    def __hash__(self):
        return hash(("ExtendedRational", self.value))

    def __add__(self, other):
        other = ExtendedRational.coerce(other)
        if self.is_infinite or other.is_infinite:
            return INF
        return ExtendedRational(self.value + other.value)

    __radd__ = __add__

    def __neg__(self):
        return ExtendedRational(-self.fraction())

    def __sub__(self, other):
        other = ExtendedRational.coerce(other)
        if other.is_infinite:
            slib.print_error("inf can't be subtracted", True, slib.DomainError)
        return self + (-other)

    def __rsub__(self, other):
        return ExtendedRational.coerce(other) - self

    def ceil(self):
        if self.is_infinite:
            return INF
        return ExtendedRational(math.ceil(self.value))

    def __str__(self):
        return "inf" if self.is_infinite else slib.format_rational(self.value)

    def __repr__(self):
        return "ExtendedRational({0})".format(self)


INF = ExtendedRational()


def parse_extended(text):
    """
    Parses a rational string or "inf"/"∞"
    Args:
        text (unicode): Text to parse
    Returns:
        (ExtendedRational): Parsed value
    """
    if slib.u_stringify(text).strip().lower() in ("inf", "∞", "infinity"):
        return INF
    return ExtendedRational(slib.parse_rational(slib.u_stringify(text)))


def ord_p(q, p):
    """
    p-adic order of a rational
    Args:
        q: Rational-like value
        p (int): Prime
    Returns:
        (ExtendedRational): ord_p(q), inf for zero
    """
    q = slib.to_fraction(q)
    if q == 0:
        return INF
    return ExtendedRational(sympy.multiplicity(p, q.numerator) - sympy.multiplicity(p, q.denominator))


#                        _
#     _____  ____ _  ___| |_
#    / _ \ \/ / _` |/ __| __|
#   |  __/>  < (_| | (__| |_
#    \___/_/\_\__,_|\___|\__|
#
@functools.lru_cache(maxsize=None)
def _check_field(e, p):
    if not isinstance(e, int) or isinstance(e, bool) or e < 1:
        slib.print_error("Ramification must be a positive integer, got {0}".format(e), True, slib.DomainError)
    if not isinstance(p, int) or not sympy.isprime(p):
        slib.print_error("{0} is not a prime".format(p), True, slib.DomainError)
    return Poly(_PI ** e - p, _PI, domain=QQ)


def _poly(coeffs):
    rep = [Rational(c.numerator, c.denominator) for c in reversed(coeffs)]
    return Poly.from_list(rep or [0], _PI, domain=QQ)


def _coeffs(poly, e):
    rep = [slib.to_fraction(c) for c in reversed(poly.all_coeffs())]
    return tuple(rep + [Fraction(0)] * (e - len(rep)))


class ExactElement(object):
    """
    Element sum(a_i pi^i) of Q[pi]/(pi^e - p), immutable
    Use make_element() to build one from arbitrary coefficients
    """
    __slots__ = ("coeffs", "e", "p")

    def __init__(self, coeffs, e, p):
        self.coeffs = tuple(coeffs)
        self.e = e
        self.p = p

    # conversions
    def _coerce(self, other):
        if isinstance(other, ExactElement):
            if (other.e, other.p) != (self.e, self.p):
                slib.print_error("Elements of different fields: (e={0}, p={1}) and (e={2}, p={3})".format(
                    self.e, self.p, other.e, other.p), True, slib.DomainError)
            return other
        return make_element([slib.to_fraction(other)], self.e, self.p)

    def is_zero(self):
        return not any(self.coeffs)

    def rational(self):
        """ The element as a Fraction if it lies in Q, else None """
        if any(self.coeffs[1:]):
            return None
        return self.coeffs[0]

    # arithmetic
    def __add__(self, other):
        other = self._coerce(other)
        return ExactElement([a + b for a, b in zip(self.coeffs, other.coeffs)], self.e, self.p)

    __radd__ = __add__

    def __neg__(self):
        return ExactElement([-a for a in self.coeffs], self.e, self.p)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        product = (_poly(self.coeffs) * _poly(other.coeffs)).rem(_check_field(self.e, self.p))
        return ExactElement(_coeffs(product, self.e), self.e, self.p)

    __rmul__ = __mul__

    def inverse(self):
        """
        Multiplicative inverse, through polynomial inversion modulo pi^e - p
        Returns:
            (ExactElement): 1/self
        """
        if self.is_zero():
            slib.print_error("Zero has no inverse", True, slib.DomainError)
        try:
            inverse = _poly(self.coeffs).invert(_check_field(self.e, self.p))
        except NotInvertible:
            slib.print_error("{0} is not invertible".format(self), True, slib.DomainError)
        return ExactElement(_coeffs(inverse, self.e), self.e, self.p)

    def __truediv__(self, other):
        return self * self._coerce(other).inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result = make_element([1], self.e, self.p)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        try:
            other = self._coerce(other)
        except slib.SdmError:
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        if self.rational() is not None:
            return hash(self.rational())
        return hash((self.coeffs, self.e, self.p))

    # valuation data
    def valuation(self):
        """
        Eisenstein valuation min_i(ord_p(a_i) + i/e), normalized by v(p) = 1
        Returns:
            (ExtendedRational): valuation, inf for zero
        """
        best = INF
        for i, a in enumerate(self.coeffs):
            if a:
                best = min(best, ord_p(a, self.p) + Fraction(i, self.e))
        return best

    def unit_part(self):
        """ self / pi^{e v(self)} """
        return self / pi_power(int(self.valuation().fraction() * self.e), self.e, self.p)

    def sqrt(self):
        """
        A square root inside Q[pi]/(pi^e - p)
        Returns:
            (ExactElement): c with c*c == self
        Raises:
            ExtensionDegreeError: if no root lies in this field
        """
        if self.is_zero():
            return self
        if self.rational() is not None:
            root = _rational_sqrt(self.rational())
            if root is not None:
                return make_element([root], self.e, self.p)
            if self.e == 2:
                root = _rational_sqrt(self.rational() / self.p)
                if root is not None:
                    return make_element([0, root], self.e, self.p)
        elif self.e == 2:
            # (c + d pi)^2 = (c^2 + p d^2) + 2 c d pi
            a, b = self.coeffs
            disc = _rational_sqrt(a * a - self.p * b * b)
            if disc is not None:
                for d_squared in ((a + disc) / (2 * self.p), (a - disc) / (2 * self.p)):
                    d = _rational_sqrt(d_squared)
                    if d:
                        return make_element([b / (2 * d), d], self.e, self.p)
        elif self.e > 2:
            slib.print_error("Square roots of non-rational elements need e <= 2", True, slib.DomainError)
        slib.print_error("{0} has no square root in Q[pi]/(pi^{1} - {2})".format(self, self.e, self.p),
                         True, slib.ExtensionDegreeError, degree=2)

    # display
    def to_json(self):
        """ A rational string when the element is rational, else the coefficient list """
        if self.rational() is not None:
            return slib.format_rational(self.rational())
        return [slib.format_rational(a) for a in self.coeffs]

    def __str__(self):
        terms = []
        for i, a in enumerate(self.coeffs):
            if a:
                power = "" if i == 0 else ("*pi" if i == 1 else "*pi^{0}".format(i))
                terms.append("({0}){1}".format(slib.format_rational(a), power) if power else slib.format_rational(a))
        return " + ".join(terms) or "0"

    def __repr__(self):
        return "ExactElement({0}; e={1}, p={2})".format(self, self.e, self.p)


def _rational_sqrt(q):
    if q < 0:
        return None
    num, num_exact = sympy.integer_nthroot(q.numerator, 2)
    den, den_exact = sympy.integer_nthroot(q.denominator, 2)
    if num_exact and den_exact:
        return Fraction(int(num), int(den))
    return None


def make_element(coeffs, e=None, p=None):
    """
    Builds the canonical reduced representative of sum(coeffs[i] pi^i)
    Args:
        coeffs (list): Rationals a_0, a_1, ... (any length, reduced by pi^e = p)
        e (int): Ramification index (defaults to SETTINGS["ramification"])
        p (int): Prime (defaults to SETTINGS["prime"])
    Returns:
        (ExactElement): The element
    """
    e = slib.setting("ramification", e)
    p = slib.setting("prime", p)
    modulus = _check_field(e, p)
    coeffs = [slib.to_fraction(c) for c in slib.u_enlist(coeffs)]
    if len(coeffs) <= e:
        return ExactElement(coeffs + [Fraction(0)] * (e - len(coeffs)), e, p)
    return ExactElement(_coeffs(_poly(coeffs).rem(modulus), e), e, p)


def coerce(value, e=None, p=None):
    """
    Coerces a rational, a rational string, a coefficient list or an element into an ExactElement
    """
    if isinstance(value, ExactElement):
        return value
    if isinstance(value, (list, tuple)):
        return make_element(value, e, p)
    return make_element([value], e, p)


def pi_power(n, e=None, p=None):
    """
    pi^n for any integer n
    Args:
        n (int): Exponent
        e (int): Ramification index
        p (int): Prime
    Returns:
        (ExactElement): pi^n, of valuation n/e
    """
    e = slib.setting("ramification", e)
    p = slib.setting("prime", p)
    quotient, remainder = divmod(n, e)
    coeffs = [0] * e
    coeffs[remainder] = Fraction(p) ** quotient
    return make_element(coeffs, e, p)


def valuation(a):
    """
    p-adic valuation of an element (or a rational)
    Args:
        a: ExactElement or rational-like value
    Returns:
        (ExtendedRational): v_p(a), inf for zero
    """
    if isinstance(a, ExactElement):
        return a.valuation()
    return ord_p(a, slib.SETTINGS["prime"])


def unit_part(a):
    """ a / pi^{e v(a)} """
    return a.unit_part()


#                    _     _
#    _ __ ___  ___(_) __| |_   _  ___
#   | '__/ _ \/ __| |/ _` | | | |/ _ \
#   | | |  __/\__ \ | (_| | |_| |  __/
#   |_|  \___||___/_|\__,_|\__,_|\___|
#
class ResidueField(object):
    """
    Finite field F_{p^k} = F_p[s]/(m(s)) with a fixed monic irreducible modulus m
    For k = 2 the modulus is s^2 - n, with n the least quadratic non-residue
    """

    def __init__(self, p, k=1):
        _check_field(1, p)
        if not isinstance(k, int) or k < 1:
            slib.print_error("Residue degree must be a positive integer, got {0}".format(k), True, slib.DomainError)
        self.p = p
        self.k = k
        self.nonresidue = None
        if k == 2 and p > 2:
            self.nonresidue = next(n for n in range(2, p) if not is_quad_residue(n, p))
            self.modulus = [1, 0, (-self.nonresidue) % p]
        else:
            self.modulus = _first_irreducible(p, k)

    def __eq__(self, other):
        return isinstance(other, ResidueField) and (self.p, self.k) == (other.p, other.k)

    def __hash__(self):
        return hash(("ResidueField", self.p, self.k))

    def __repr__(self):
        return "ResidueField(p={0}, k={1})".format(self.p, self.k)

    def __call__(self, value):
        """ Element of the prime field, or from a dense coefficient list (highest degree first) """
        if isinstance(value, ResidueElement):
            return value.lift(self.k)
        if isinstance(value, (list, tuple)):
            rep = gf.gf_strip([int(c) % self.p for c in value])
            return ResidueElement(self, gf.gf_rem(rep, self.modulus, self.p, ZZ))
        q = slib.to_fraction(value)
        if q.denominator % self.p == 0:
            slib.print_error("{0} is not p-integral".format(q), True, slib.NegativeValuationError)
        return ResidueElement(self, gf.gf_strip([q.numerator * pow(q.denominator, -1, self.p) % self.p]))

    def zero(self):
        return ResidueElement(self, [])

    def one(self):
        return ResidueElement(self, [1])

    def generator(self):
        """ The class of s """
        return ResidueElement(self, gf.gf_rem([1, 0], self.modulus, self.p, ZZ))

    def sqrt(self, a):
        """
        Square root of a prime-field element
        Args:
            a (ResidueElement): Element of F_p inside this field
        Returns:
            (ResidueElement): A root in this field, or None
        """
        n = a.prime_value()
        if n is None:
            slib.print_error("sqrt is only supported on prime field elements", True, slib.DomainError)
        if n == 0:
            return self.zero()
        if is_quad_residue(n, self.p):
            return self(sqrt_mod(n, self.p))
        if self.nonresidue is None:
            return None
        # n = (n / nonresidue) * s^2 with n / nonresidue a square
        root = sqrt_mod(n * pow(self.nonresidue, -1, self.p) % self.p, self.p)
        return self(root) * self.generator()


@functools.lru_cache(maxsize=None)
def _first_irreducible_tuple(p, k):
    if k == 1:
        return (1, 0)
    for tail in itertools.product(range(p), repeat=k):
        candidate = [1] + list(tail)
        if gf.gf_irreducible_p(candidate, p, ZZ):
            return tuple(candidate)


def _first_irreducible(p, k):
    return list(_first_irreducible_tuple(p, k))


class ResidueElement(object):
    """ Element of a ResidueField, stored as a dense F_p polynomial of degree < k """
    __slots__ = ("field", "rep")

    def __init__(self, field, rep):
        self.field = field
        self.rep = gf.gf_strip([int(c) % field.p for c in rep])

    def _coerce(self, other):
        if isinstance(other, ResidueElement):
            if other.field != self.field:
                if other.field.k == 1:
                    return other.lift(self.field.k)
                slib.print_error("Residue elements of different fields", True, slib.DomainError)
            return other
        return self.field(other)

    def is_zero(self):
        return not self.rep

    def prime_value(self):
        """ The element as an int in [0, p) if it lies in F_p, else None """
        if len(self.rep) > 1:
            return None
        return self.rep[0] if self.rep else 0

    def lift(self, k):
        """
        Embeds an F_p element into F_{p^k}
        Args:
            k (int): Target degree
        Returns:
            (ResidueElement): Same element in ResidueField(p, k)
        """
        if k == self.field.k:
            return self
        if self.prime_value() is None:
            slib.print_error("Only prime field elements can be lifted", True, slib.DomainError)
        return ResidueElement(ResidueField(self.field.p, k), self.rep)

    def __add__(self, other):
        other = self._coerce(other)
        return ResidueElement(self.field, gf.gf_add(self.rep, other.rep, self.field.p, ZZ))

    __radd__ = __add__

    def __neg__(self):
        return ResidueElement(self.field, gf.gf_neg(self.rep, self.field.p, ZZ))

    def __sub__(self, other):
        other = self._coerce(other)
        return ResidueElement(self.field, gf.gf_sub(self.rep, other.rep, self.field.p, ZZ))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        product = gf.gf_mul(self.rep, other.rep, self.field.p, ZZ)
        return ResidueElement(self.field, gf.gf_rem(product, self.field.modulus, self.field.p, ZZ))

    __rmul__ = __mul__

    def inverse(self):
        if self.is_zero():
            slib.print_error("Zero has no inverse in the residue field", True, slib.DomainError)
        s, _, _ = gf.gf_gcdex(self.rep, self.field.modulus, self.field.p, ZZ)
        return ResidueElement(self.field, gf.gf_rem(s, self.field.modulus, self.field.p, ZZ))

    def __truediv__(self, other):
        return self * self._coerce(other).inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        return ResidueElement(self.field, gf.gf_pow_mod(self.rep, n, self.field.modulus, self.field.p, ZZ))

    def __eq__(self, other):
        try:
            other = self._coerce(other)
        except slib.SdmError:
            return NotImplemented
        return self.rep == other.rep

    def __hash__(self):
        return hash((self.field.p, tuple(self.rep)))

    def to_json(self):
        if self.prime_value() is not None:
            return self.prime_value()
        return list(self.rep)

    def __repr__(self):
        if self.prime_value() is not None:
            return "{0} (mod {1})".format(self.prime_value(), self.field.p)
        return "{0} (mod {1}, {2})".format(self.rep, self.field.p, self.field.modulus)


def residue(a, field=None):
    """
    Reduction of an integral element modulo the maximal ideal
    Args:
        a: ExactElement (or rational) with valuation >= 0
        field (ResidueField): Target field (defaults to F_p)
    Returns:
        (ResidueElement): Residue class
    """
    a = coerce(a)
    if a.valuation() < 0:
        slib.print_error("{0} has negative valuation {1}".format(a, a.valuation()), True,
                         slib.NegativeValuationError)
    field = field or ResidueField(a.p, 1)
    # terms a_i pi^i with i >= 1 and v >= 0 lie in the maximal ideal
    return field(a.coeffs[0])
