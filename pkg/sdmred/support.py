# -*- coding: utf-8 -*-
"""
@summary:       Maps between x, rho and the L-invariants: psi_l, (p - phi)^-1, psi^J0 and their inversion
@run:           import sdmred.support as ssupport (suggested)
@license:       MIT
"""
import math
from fractions import Fraction

from . import lib as slib
from . import logger as slog
from . import field as sfield
from . import pq as spq
from . import cases as scases

LOG = slog.logger("sdmred.support")
INF = sfield.INF


def l_index(r, kp):
    """
    l(r';k'): ceil(k') up to m+1, then r'+1-ceil(k'), and 0 for inf
    """
    if scases.is_infinite(kp):
        return 0
    kp = slib.to_fraction(kp)
    ceiling = math.ceil(kp)
    if kp <= r // 2 + 1:
        return ceiling
    return r + 1 - ceiling


def l_vector(r, kp):
    """
    l(r;k') per embedding
    Args:
        r (list): Weights r_j
        kp (list): k'_j (half-integers or INF)
    Returns:
        (list): l_j
    """
    r, kp = slib.u_enlist(r), slib.u_enlist(kp)
    if len(r) != len(kp):
        slib.print_error("r and k' differ in length", True, slib.DomainError)
    return [l_index(r_j, kp_j) for r_j, kp_j in zip(r, kp)]


class XVector(object):
    """ x per embedding, tagged with the weights and the l-vector it belongs to """

    def __init__(self, values, r, l):
        self.values = [sfield.coerce(v) for v in values]
        self.r = list(r)
        self.l = list(l)
        if not len(self.values) == len(self.r) == len(self.l):
            slib.print_error("x, r and l must have the same length", True, slib.DomainError)

    @property
    def f(self):
        return len(self.values)

    def __getitem__(self, j):
        return self.values[j]

    def __iter__(self):
        return iter(self.values)

    def valuations(self):
        return [v.valuation() for v in self.values]

    def __eq__(self, other):
        return isinstance(other, XVector) and (self.values, self.r, self.l) == (other.values, other.r, other.l)

    def __hash__(self):
        return hash((tuple(self.values), tuple(self.l)))

    def to_dict(self):
        return {"x": [v.to_json() for v in self.values], "l": self.l,
                "valuations": [str(v) for v in self.valuations()]}

    def __repr__(self):
        return "XVector({0}; l={1})".format(", ".join(str(v) for v in self.values), self.l)


class LInvariant(object):
    """ L_j per embedding: an ExactElement off J0 and INF on J0 """

    def __init__(self, values):
        self.values = [v if scases.is_infinite(v) else sfield.coerce(v) for v in values]

    @classmethod
    def parse(cls, entries, e=None, p=None):
        """ From JSON-style entries: "inf", rational strings or coefficient lists """
        values = []
        for entry in slib.u_enlist(entries):
            if slib.is_string(entry) and sfield.parse_extended(entry).is_infinite:
                values.append(INF)
            elif isinstance(entry, list):
                values.append(sfield.make_element(entry, e, p))
            else:
                values.append(sfield.make_element([entry], e, p))
        return cls(values)

    @property
    def j0(self):
        return frozenset(j for j, v in enumerate(self.values) if scases.is_infinite(v))

    def __getitem__(self, j):
        return self.values[j]

    def __len__(self):
        return len(self.values)

    def __eq__(self, other):
        if not isinstance(other, LInvariant) or len(self) != len(other):
            return False
        return all((scases.is_infinite(a) and scases.is_infinite(b)) or
                   (not scases.is_infinite(a) and not scases.is_infinite(b) and a == b)
                   for a, b in zip(self.values, other.values))

    def __hash__(self):
        return hash(tuple(str(v) for v in self.values))

    def to_json(self):
        return ["inf" if scases.is_infinite(v) else v.to_json() for v in self.values]

    def __repr__(self):
        return "LInvariant({0})".format(", ".join(str(v) for v in self.values))


#                _
#    _ __  ___(_)
#   | '_ \/ __| |
#   | |_) \__ \ |
#   | .__/|___/_|
#   |_|
def delta_vector(x):
    """ (delta_{l_j}(-1, x_j))_j """
    return [spq.delta_at_minus1(r_j, l_j, x_j) for r_j, l_j, x_j in zip(x.r, x.l, x.values)]


def psi_l(x):
    """
    psi_l(x)_j = p x_j + delta_{l_{j-1}}(-1, x_{j-1})
    Args:
        x (XVector): x with its weights and l-vector
    Returns:
        (list): ExactElements
    """
    deltas = delta_vector(x)
    return [x[j] * x[j].p + deltas[j - 1] for j in range(x.f)]


def inv_p_minus_phi(y, p=None):
    """
    (p - phi)^-1 with phi shifting coordinates, (d_j) -> (d_{j-1})
    Args:
        y (list): Elements (or rationals)
        p (int): Prime (defaults to the prime of the elements)
    Returns:
        (list): rho with p rho_j - rho_{j-1} = y_j
    """
    y = [sfield.coerce(v, p=p) for v in y]
    f = len(y)
    if not f:
        return []
    p = y[0].p
    scale = Fraction(1, p ** f - 1)
    return [sum((y[(j - i) % f] * p ** (f - 1 - i) for i in range(f)), y[0] * 0) * scale for j in range(f)]


def p_minus_phi(rho):
    """ (p - phi)(rho)_j = p rho_j - rho_{j-1} """
    rho = [sfield.coerce(v) for v in rho]
    return [rho[j] * rho[j].p - rho[j - 1] for j in range(len(rho))]


def psi_J0(rho, j0):
    """ psi^J0: coordinates in J0 become inf """
    return LInvariant([INF if j in j0 else v for j, v in enumerate(rho)])


def _x_vector(spec, x):
    l = l_vector(spec.r, spec.kp)
    if isinstance(x, XVector):
        return x
    values = [sfield.coerce(v, p=spec.p) for v in slib.u_enlist(x)]
    if len(values) != spec.f:
        slib.print_error("x has {0} coordinates, expected {1}".format(len(values), spec.f), True, slib.DomainError)
    return XVector(values, spec.r, l)


def L_from_x(spec, x):
    """
    psi^J0 o (p - phi)^-1 o psi_l
    Args:
        spec (CaseSpec): The case (fixes l and J0)
        x (XVector or list): x per embedding
    Returns:
        (LInvariant): L, inf exactly on J0
    """
    x = _x_vector(spec, x)
    rho = inv_p_minus_phi(psi_l(x))
    return psi_J0(rho, spec.j0)


#    _                          _
#   (_)_ ____   _____ _ __ ___(_) ___  _ __
#   | | '_ \ \ / / _ \ '__/ __| |/ _ \| '_ \
#   | | | | \ V /  __/ |  \__ \ | (_) | | | |
#   |_|_| |_|\_/ \___|_|  |___/_|\___/|_| |_|
#
def _step_matrix(r, l, y_value):
    """
    Mobius matrix of x_prev -> (y - delta_l(-1, x_prev)) / p, with delta = (n1 x + n0) / (d1 x + d0)
    """
    value = spq.delta_value(r, l)
    n0, n1 = (list(_ascending(value.numerator)) + [Fraction(0)] * 2)[:2]
    d0, d1 = (list(_ascending(value.denominator)) + [Fraction(0)] * 2)[:2]
    p = y_value.p
    return [[y_value * d1 - n1, y_value * d0 - n0], [y_value * 0 + p * d1, y_value * 0 + p * d0]]


def _ascending(poly):
    return [slib.to_fraction(c) for c in reversed(poly.all_coeffs())] if not poly.is_zero else []


def _apply(matrix, x):
    (a, b), (c, d) = matrix
    denominator = c * x + d
    if denominator.is_zero():
        slib.print_error("x={0} hits a pole of delta".format(x), True, slib.PoleError)
    return (a * x + b) / denominator


def _compose(outer, inner):
    return [[sum((outer[i][k] * inner[k][j] for k in range(2)), outer[i][0] * 0) for j in range(2)]
            for i in range(2)]


def _is_constant(matrix):
    return matrix[0][0].is_zero() and matrix[1][0].is_zero()


def _fixed_points(matrix):
    """ Solutions of x = (a x + b) / (c x + d) """
    (a, b), (c, d) = matrix
    if c.is_zero():
        if (d - a).is_zero():
            slib.print_error("Degenerate cycle: {0}".format("every x is fixed" if b.is_zero() else "no solution"),
                             True, slib.DomainError)
        return [b / (d - a)]
    discriminant = (d - a) * (d - a) + b * c * 4
    root = discriminant.sqrt()
    roots = [(a - d + root) / (c * 2), (a - d - root) / (c * 2)]
    return roots[:1] if root.is_zero() else roots


def _rho(spec, L, free_rho=None):
    free_rho = slib.setting("free_rho", free_rho)
    if len(L) != spec.f:
        slib.print_error("L has {0} coordinates, expected {1}".format(len(L), spec.f), True, slib.DomainError)
    if L.j0 != spec.j0:
        slib.print_error("L is inf on {0} but J0={1}".format(sorted(L.j0), sorted(spec.j0)), True, slib.DomainError)
    return [sfield.coerce(slib.to_fraction(free_rho), p=spec.p) if j in spec.j0 else L[j] for j in range(spec.f)]


def x_from_L(spec, L, free_rho=None):
    """
    All x with L_from_x(spec, x) = L
    Every step x_{j-1} -> x_j is a Mobius map; the cycle is closed at x_0
    Args:
        spec (CaseSpec): The case
        L (LInvariant or list): L, inf exactly on J0
        free_rho: rho_j used on J0 (defaults to SETTINGS["free_rho"])
    Returns:
        (list): XVector roots (one unless a quadratic branch occurs)
    Raises:
        ExtensionDegreeError: if the roots need a larger field
    """
    if not isinstance(L, LInvariant):
        L = LInvariant(L)
    l = l_vector(spec.r, spec.kp)
    quadratic = sum(1 for r_j, l_j in zip(spec.r, l) if r_j % 2 == 0 and l_j == r_j // 2 + 1)
    if quadratic > 2:
        slib.print_error("unsupported coupling degree: {0} quadratic branches".format(quadratic), True,
                         slib.DomainError)
    y = p_minus_phi(_rho(spec, L, free_rho))
    f = spec.f
    # step j maps x_{j-1} to x_j
    steps = [_step_matrix(spec.r[j - 1], l[j - 1], y[j]) for j in range(f)]
    start = next((j for j in range(f) if _is_constant(steps[j])), None)
    if start is not None:
        starts = [_apply(steps[start], y[start] * 0)]
    else:
        start = 0
        cycle = steps[0]
        for j in range(f - 1, 0, -1):
            cycle = _compose(cycle, steps[j])
        starts = _fixed_points(cycle)
    solutions = []
    for value in starts:
        values = [None] * f
        values[start] = value
        try:
            for offset in range(1, f):
                j = (start + offset) % f
                values[j] = _apply(steps[j], values[j - 1])
        except slib.PoleError:
            LOG.debug("Root {0} hits a pole, dropped".format(value))
            continue
        solutions.append(XVector(values, spec.r, l))
    LOG.debug("x_from_L({0}): {1} root(s)".format(spec, len(solutions)))
    return solutions


def root_valuations(roots):
    """ v_p of every coordinate of every root """
    return [x.valuations() for x in roots]
