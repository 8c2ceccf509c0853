# -*- coding: utf-8 -*-
"""
@summary:       M_{r',x} and its blocks, the P/Q polynomial tables and the delta / a / b constants at T = -1
@run:           import sdmred.pq as spq (suggested)
@license:       MIT
"""
import math
import functools
from fractions import Fraction

import sympy
from sympy import Matrix, Poly, QQ, Rational

from . import lib as slib
from . import logger as slog
from . import field as sfield
from . import poly as spoly
from .poly import T, X

LOG = slog.logger("sdmred.pq")


def check_weight(r, p=None):
    """
    Validates 1 <= r' < p - 1 (and r' <= SETTINGS["max_weight"])
    Args:
        r (int): Weight r'
        p (int): Prime (defaults to SETTINGS["prime"])
    """
    p = slib.setting("prime", p)
    if not isinstance(r, int) or r < 1 or r >= p - 1:
        slib.print_error("Weight r'={0} must satisfy 1 <= r' < p-1 = {1}".format(r, p - 1), True, slib.DomainError)
    if r > slib.SETTINGS["max_weight"]:
        slib.print_error("Weight r'={0} exceeds max_weight={1}".format(r, slib.SETTINGS["max_weight"]), True,
                         slib.DomainError)


def _check_k(r, k, low=0, high=None):
    high = r if high is None else high
    if not isinstance(k, int) or not low <= k <= high:
        slib.print_error("Index {0} outside [{1}, {2}] for r'={3}".format(k, low, high, r), True, slib.DomainError)


def build_matrix(r, x=X, p=None):
    """
    Upper triangular M_{r',x}: x on the diagonal, (-1)^{j-i-1}/(j-i) above it
    Args:
        r (int): Weight r'
        x: Symbol, rational or ExactElement
        p (int): Prime used for the range check
    Returns:
        (Matrix): sympy matrix, or a nested list of ExactElements when x is an ExactElement
    """
    check_weight(r, p)

    def entry(i, j):
        if i == j:
            return x
        if j < i:
            return 0
        return Fraction((-1) ** (j - i - 1), j - i)

    if isinstance(x, sfield.ExactElement):
        return [[x if i == j else sfield.coerce(entry(i, j), x.e, x.p) for j in range(r)] for i in range(r)]
    if not isinstance(x, sympy.Basic):
        x = spoly.to_rational(x)
    return Matrix(r, r, lambda i, j: entry(i, j) if i == j else spoly.to_rational(entry(i, j)))


def block_matrices(r, k, x=X, p=None):
    """
    Blocks of M_{r',x} = [[A, B], [C, D]] with A of size k x (r'-k) and B of size k x k
    Returns:
        (tuple): (A, B, C, D) sympy matrices
    """
    _check_k(r, k)
    M = build_matrix(r, x, p)
    return M[:k, :r - k], M[:k, r - k:], M[k:, :r - k], M[k:, r - k:]


def block_determinant(r, k, x=X, p=None):
    """
    det B_{k,x}, with det B_{0,x} = 1
    Args:
        r (int): Weight r'
        k (int): Block size
        x: Symbol (polynomial result) or rational (Fraction result)
    """
    B = block_matrices(r, k, x, p)[1]
    det = B.det(method="berkowitz") if k else sympy.Integer(1)
    if x is X:
        return Poly(det, X, domain=QQ)
    return spoly.to_fraction(det)


class PQTable(object):
    """
    Normalized tables P~_{k,i}, Q~_{k,i} (as BiPoly in x, T) and the normalizer d_k(x)
    P_{k,i}(T,x) = P~_{k,i}(T,x) / d_k(x), likewise for Q
    """

    def __init__(self, r, k, P, Q, d):
        self.r = r
        self.k = k
        self.m = r // 2
        self.P = P
        self.Q = Q
        self.d = d

    def _denominator(self, x):
        value = spoly.evaluate(self.d, slib.to_fraction(x))
        if value == 0:
            slib.print_error("det B_{{{0},x}} vanishes at x={1} (r'={2})".format(self.k, x, self.r), True,
                             slib.SingularBlockError)
        return value

    def P_at(self, i, x):
        """ P_{k,i}(T, x) for a rational x """
        return self.P[i].at_x(x) * spoly.to_rational(1 / self._denominator(x))

    def Q_at(self, i, x):
        """ Q_{k,i}(T, x) for a rational x """
        return self.Q[i].at_x(x) * spoly.to_rational(1 / self._denominator(x))

    def degree_profile(self):
        """ (s_{k,i}, t_{k,i}) lists: x-degrees of P~ and Q~ """
        return [P.degree_x() for P in self.P], [Q.degree_x() for Q in self.Q]

    def to_dict(self):
        return {
            "r": self.r,
            "k": self.k,
            "m": self.m,
            "d": [slib.format_rational(c) for c in spoly.coefficients(self.d)],
            "P": [P.to_json() for P in self.P],
            "Q": [Q.to_json() for Q in self.Q],
        }


def normalizer(r, k, p=None):
    """
    d_k(x): 1 for k <= m, (-1)^{r'(k-1)} det B_{k,x} / det B_{r'-k,0} otherwise (d_{r'} = x^{r'})
    Returns:
        (Poly): d_k in x
    """
    _check_k(r, k)
    if k <= r // 2:
        return Poly(1, X, domain=QQ)
    numerator = block_determinant(r, k, X, p)
    denominator = block_determinant(r, r - k, Fraction(0), p)
    return numerator * spoly.to_rational(Fraction((-1) ** (r * (k - 1))) / denominator)


@functools.lru_cache(maxsize=None)
def _table(r, k):
    M = build_matrix(r)
    N = sympy.eye(r)
    if k:
        N[r - k:, :] = M[:k, :]
    det_N = N.det(method="berkowitz")
    if det_N == 0:
        slib.print_error("det B_{{{0},x}} vanishes identically (r'={1})".format(k, r), True, slib.SingularBlockError)
    adj_N = N.adjugate(method="berkowitz")
    d = normalizer(r, k)
    factor = sympy.cancel(d.as_expr() / det_N)
    row = Matrix([[T ** (r - 1 - a) for a in range(r)]])
    P, Q = [], []
    for i in range(r):
        column = adj_N[:, r - 1 - i]
        P.append(spoly.BiPoly(sympy.cancel(factor * (row * column)[0, 0])))
        Q.append(spoly.BiPoly(sympy.cancel(factor * (row * M * column)[0, 0])))
    LOG.debug("Built P/Q table for r'={0}, k={1}".format(r, k))
    return PQTable(r, k, P, Q, d)


@slib.timer
def pq_table(r, k, p=None):
    """
    Exact P~/Q~ tables of Case (k), memoized per (r', k)
    Args:
        r (int): Weight r' (1 <= r' < p-1)
        k (int): Case index (0 <= k <= r')
        p (int): Prime used for the range check
    Returns:
        (PQTable): Normalized tables and d_k
    """
    check_weight(r, p)
    _check_k(r, k)
    return _table(r, k)


def p_at_minus1(r, k, i=0, p=None):
    """
    P_{k,i}(-1, 0) for 1 <= k <= m
    Args:
        r (int): Weight r'
        k (int): Case index
        i (int): Column index (0 by default)
    Returns:
        (Fraction): The value
    """
    check_weight(r, p)
    _check_k(r, k, 1, r // 2)
    _check_k(r, i, 0, r - 1)
    return spoly.to_fraction(pq_table(r, k, p).P_at(i, 0).eval(-1))


def a_value(r, k, p=None):
    """
    a_k: coefficient of T^{k-1} in P_{k,0}(T, 0), for 1 <= k <= m+1
    """
    check_weight(r, p)
    _check_k(r, k, 1, r // 2 + 1)
    table = pq_table(r, k, p)
    if spoly.evaluate(table.d, Fraction(0)) == 0:
        slib.print_error("a_{0}(0) is undefined for r'={1}".format(k, r), True, slib.SingularBlockError)
    return spoly.to_fraction(table.P_at(0, 0).coeff_monomial(T ** (k - 1)))


@functools.lru_cache(maxsize=None)
def _b_function(r, k):
    m = (r - 1) // 2
    if r % 2 == 0 or k != m + 2:
        return sympy.Integer(0)
    table = pq_table(r, m)
    Q = table.Q_at(0, 0)
    P = table.P_at(0, 0)
    square = Q * Q
    return sympy.cancel((spoly.truncate(square, r - 1) - square).as_expr() / (P * P).as_expr())


def b_function(r, k, p=None):
    """
    b_{r',k}(T) from the Case (m) tables, r' = 2m+1:
    ([Q_{m,0}(T,0)^2]^{(r'-1)} - Q_{m,0}(T,0)^2) / P_{m,0}(T,0)^2 when k = m+2, 0 otherwise
    For r' = 3 this is P_{3,0,0}(T) - delta_1(T)^2
    Returns:
        (sympy.Expr): Rational function of T
    """
    check_weight(r, p)
    _check_k(r, k)
    return _b_function(r, k)


def b_value(r, k, p=None):
    """ b_{r',k}(-1) """
    return spoly.to_fraction(b_function(r, k, p).subs(T, -1))


def b_closed_form(r, k):
    """ Closed form -(2m^2+2m+1)/(m^2(m+1)^2) of b_{r',k}(-1) at (r', k) = (2m+1, m+2), 0 otherwise """
    m = (r - 1) // 2
    if r % 2 == 1 and m >= 1 and k == m + 2:
        return -Fraction(2 * m * m + 2 * m + 1, m * m * (m + 1) ** 2)
    return Fraction(0)


#        _      _ _
#     __| | ___| | |_ __ _
#    / _` |/ _ \ | __/ _` |
#   | (_| |  __/ | || (_| |
#    \__,_|\___|_|\__\__,_|
#
class DeltaValue(object):
    """
    delta_l(-1, x) = numerator(x) / denominator(x) and the derivative at T = -1
    Only the quadratic branch (l = m+1, r' = 2m) and l = 0 depend on x
    """

    def __init__(self, r, l, numerator, denominator, derivative_at_minus1):
        self.r = r
        self.l = l
        self.numerator = numerator
        self.denominator = denominator
        self.derivative_at_minus1 = derivative_at_minus1

    @property
    def depends_on_x(self):
        return self.numerator.degree() > 0 or self.denominator.degree() > 0

    @property
    def is_quadratic(self):
        return self.denominator.degree() > 0

    def constant(self):
        """ The value as a Fraction when it does not depend on x """
        if self.depends_on_x:
            slib.print_error("delta_{0}(-1, x) depends on x for r'={1}".format(self.l, self.r), True,
                             slib.DomainError)
        return spoly.to_fraction(self.numerator.LC()) / spoly.to_fraction(self.denominator.LC())

    def __call__(self, x=None):
        """
        Evaluates at x (rational or ExactElement)
        Returns:
            (ExactElement): delta_l(-1, x)
        """
        if x is None:
            return sfield.coerce(self.constant())
        x = sfield.coerce(x)
        denominator = spoly.evaluate(self.denominator, x)
        if denominator.is_zero():
            slib.print_error("x={0} is a pole of delta_{1}(-1, x) for r'={2}".format(x, self.l, self.r), True,
                             slib.PoleError)
        return spoly.evaluate(self.numerator, x) / denominator

    def to_dict(self):
        return {
            "r": self.r,
            "l": self.l,
            "numerator": [slib.format_rational(c) for c in spoly.coefficients(self.numerator)],
            "denominator": [slib.format_rational(c) for c in spoly.coefficients(self.denominator)],
            "derivative_at_minus1": slib.format_rational(self.derivative_at_minus1),
        }


def _delta_expression(r, l):
    if l == 0:
        return -X
    table = pq_table(r, l)
    return sympy.cancel(table.Q[0].poly.as_expr() / table.P[0].poly.as_expr() - X)


@functools.lru_cache(maxsize=None)
def _delta_value(r, l):
    m = r // 2
    expression = _delta_expression(r, l)
    top, bottom = sympy.fraction(expression)
    if sympy.expand(bottom.subs(T, -1)) == 0:
        slib.print_error("delta_{0}(T, x) has a pole at T=-1 (r'={1})".format(l, r), True, slib.PoleError)
    numerator, denominator = sympy.fraction(sympy.cancel(top.subs(T, -1) / bottom.subs(T, -1)))
    if l == 0:
        derivative = Fraction(0)
    elif r == 2 * m and l == m + 1:
        derivative = _delta_value(r, m).derivative_at_minus1 if m >= 1 else Fraction(0)
    else:
        derivative = spoly.to_fraction(sympy.diff(expression, T).subs({T: -1, X: 0}))
    return DeltaValue(r, l, Poly(numerator, X, domain=QQ), Poly(denominator, X, domain=QQ), derivative)


def delta_value(r, l, p=None):
    """
    delta_l(-1, x) as a DeltaValue, for 0 <= l <= m+1
    The derivative of the quadratic branch (l = m+1, r' = 2m) is the residue-level value delta_dot_m(-1)
    """
    check_weight(r, p)
    _check_k(r, l, 0, r // 2 + 1)
    return _delta_value(r, l)


def delta_function(r, l, p=None):
    """ delta_l(-1, x) as a sympy rational function of x """
    value = delta_value(r, l, p)
    return value.numerator.as_expr() / value.denominator.as_expr()


def delta_at_minus1(r, l, x=None, p=None):
    """
    delta_l(-1, x)
    Args:
        r (int): Weight r'
        l (int): Index 0 <= l <= m+1
        x: Required iff l = 0 or (l = m+1 and r' = 2m)
    Returns:
        (ExactElement): The value
    """
    value = delta_value(r, l, p)
    if value.depends_on_x and x is None:
        slib.print_error("delta_{0}(-1, x) for r'={1} needs x".format(l, r), True, slib.DomainError)
    return value(x if value.depends_on_x else None)


def delta_dot_at_minus1(r, l, p=None):
    """
    T-derivative of delta_l at T = -1, for 1 <= l < r'/2 + 1
    """
    check_weight(r, p)
    if not isinstance(l, int) or not 1 <= l or 2 * l >= r + 2:
        slib.print_error("delta_dot needs 1 <= l < r'/2 + 1, got l={0}, r'={1}".format(l, r), True,
                         slib.DomainError)
    return delta_value(r, l, p).derivative_at_minus1


def harmonic_delta(r, l):
    """ Closed form -H_{r'-l} - H_{l-1} of delta_l(-1), 1 <= l <= (r'+1)/2 """
    return -spoly.harmonic(r - l) - spoly.harmonic(l - 1)


def delta_dot_closed_form(r, l):
    """ Closed form r'(2l-1) - 2l(l-1) - 1 of delta_dot_l(-1) """
    return Fraction(r * (2 * l - 1) - 2 * l * (l - 1) - 1)


def p_at_minus1_closed_form(r, k):
    """ Closed form (-1)^{r'} (r'-k)! / ((r'-2k)! (k-1)!) of P_{k,0}(-1, 0) """
    return Fraction((-1) ** r * math.factorial(r - k), math.factorial(r - 2 * k) * math.factorial(k - 1))
