# -*- coding: utf-8 -*-
"""
@summary:       Exact univariate / bivariate polynomials in T and x, truncation and the log(1+T) kernels
@run:           import sdmred.poly as spoly (suggested)
@license:       MIT
"""
from fractions import Fraction

import sympy
from sympy import Poly, QQ, Rational, Symbol

from . import lib as slib

T = Symbol("T")
X = Symbol("x")


def to_rational(q):
    """ Fraction (or int) to sympy Rational """
    q = slib.to_fraction(q)
    return Rational(q.numerator, q.denominator)


def to_fraction(c):
    """ sympy Rational (or any rational-like) to Fraction """
    return slib.to_fraction(c)


def poly(coeffs, gen=T):
    """
    Univariate polynomial from ascending coefficients
    Args:
        coeffs (list): Rationals a_0, a_1, ...
        gen (Symbol): Variable (T by default)
    Returns:
        (Poly): sum(a_k gen^k) over QQ
    """
    rep = [to_rational(c) for c in reversed(slib.u_enlist(coeffs))]
    return Poly.from_list(rep or [0], gen, domain=QQ)


def coefficients(F):
    """
    Ascending coefficient list of a univariate polynomial, [] for zero
    """
    if F.is_zero:
        return []
    return [to_fraction(c) for c in reversed(F.all_coeffs())]


def degree(F):
    """ Degree, with -inf for the zero polynomial """
    return F.degree() if not F.is_zero else float("-inf")


def truncate(F, n, gen=T):
    """
    Drops every term of degree > n in gen
    Args:
        F (Poly): Polynomial containing gen among its generators
        n (int): Degree bound (n >= 0)
        gen (Symbol): Variable to truncate in
    Returns:
        (Poly): [F]^{(n)}
    """
    if n < 0:
        slib.print_error("Truncation degree must be >= 0, got {0}".format(n), True, slib.DomainError)
    index = F.gens.index(gen)
    terms = {monom: coeff for monom, coeff in F.terms() if monom[index] <= n}
    return Poly.from_dict(terms or {(0,) * len(F.gens): 0}, *F.gens, domain=F.domain)


def f_series(n):
    """
    f_n(T) = sum_{k=0}^{n-2} (-1)^k T^k / (k+1), with f_1 = 0
    Args:
        n (int): Index (n >= 1)
    Returns:
        (Poly): f_n in T
    """
    if n < 1:
        slib.print_error("f_n needs n >= 1, got {0}".format(n), True, slib.DomainError)
    return poly([Fraction((-1) ** k, k + 1) for k in range(n - 1)])


def log1p_truncated(n):
    """ sum_{k=1}^{n} (-1)^{k-1} T^k / k """
    return poly([0] + [Fraction((-1) ** (k - 1), k) for k in range(1, n + 1)])


def harmonic(n):
    """
    Harmonic number H_n = sum_{i=1}^{n} 1/i, H_0 = 0
    Args:
        n (int): Index (n >= 0)
    Returns:
        (Fraction): H_n
    """
    if n < 0:
        slib.print_error("H_n needs n >= 0, got {0}".format(n), True, slib.DomainError)
    return to_fraction(sympy.harmonic(n))


def derivative(F, gen=T):
    """ Formal derivative in gen """
    return F.diff(gen)


def evaluate(F, value):
    """
    Horner evaluation of a univariate polynomial at a rational or an ExactElement
    Args:
        F (Poly): Univariate polynomial
        value: Fraction, int or ExactElement
    Returns:
        Value of the same kind as the argument
    """
    result = 0 * value
    for c in (F.all_coeffs() if not F.is_zero else []):
        result = result * value + to_fraction(c)
    return result


class BiPoly(object):
    """
    Polynomial sum_{s,d} c[s][d] x^s T^d with rational coefficients
    """

    def __init__(self, expr):
        if isinstance(expr, BiPoly):
            expr = expr.poly
        self.poly = Poly(expr, X, T, domain=QQ)

    @classmethod
    def from_matrix(cls, matrix):
        """ From the coefficient matrix c[s][d] """
        terms = {(s, d): to_rational(c) for s, row in enumerate(matrix) for d, c in enumerate(row) if c}
        return cls(Poly.from_dict(terms or {(0, 0): 0}, X, T, domain=QQ))

    @property
    def is_zero(self):
        return self.poly.is_zero

    def degree_x(self):
        return self.poly.degree(X) if not self.is_zero else float("-inf")

    def degree_t(self):
        return self.poly.degree(T) if not self.is_zero else float("-inf")

    def coefficient_matrix(self):
        """
        Rectangular c[s][d], stripped of trailing zero rows and columns
        """
        if self.is_zero:
            return []
        rows, cols = self.degree_x() + 1, self.degree_t() + 1
        matrix = [[Fraction(0)] * cols for _ in range(rows)]
        for (s, d), c in self.poly.terms():
            matrix[s][d] = to_fraction(c)
        return matrix

    def x_coefficient(self, s):
        """ P_s(T) with self = sum_s x^s P_s(T) """
        terms = {(d,): c for (s_, d), c in self.poly.terms() if s_ == s}
        return Poly.from_dict(terms or {(0,): 0}, T, domain=QQ)

    def at_x(self, value):
        """ Univariate polynomial in T after x -> value (rational) """
        return Poly(self.poly.as_expr().subs(X, to_rational(value)), T, domain=QQ)

    def at_t(self, value):
        """ Univariate polynomial in x after T -> value (rational) """
        return Poly(self.poly.as_expr().subs(T, to_rational(value)), X, domain=QQ)

    def __call__(self, t, x):
        return to_fraction(self.poly.eval({T: to_rational(t), X: to_rational(x)}))

    def __add__(self, other):
        return BiPoly(self.poly + BiPoly(other).poly)

    def __sub__(self, other):
        return BiPoly(self.poly - BiPoly(other).poly)

    def __mul__(self, other):
        return BiPoly(self.poly * BiPoly(other).poly)

    def __eq__(self, other):
        try:
            return self.poly == BiPoly(other).poly
        except (sympy.PolynomialError, TypeError, ValueError):
            return NotImplemented

    def __hash__(self):
        return hash(self.poly)

    def to_json(self):
        return [[slib.format_rational(c) for c in row] for row in self.coefficient_matrix()]

    def __repr__(self):
        return "BiPoly({0})".format(self.poly.as_expr())
