# -*- coding: utf-8 -*-
"""
@summary:       Case_phi(r;k') equation / inequality systems, cyclic solving and areal supports (exact Fourier-Motzkin)
@run:           import sdmred.cases as scases (suggested)
@license:       MIT
"""
import re
import itertools
from fractions import Fraction

import sympy
from sympy import Symbol

from . import lib as slib
from . import logger as slog
from . import field as sfield

LOG = slog.logger("sdmred.cases")
INF = sfield.INF

_T_CUR, _T_NEXT, _T_PARAM = Symbol("T_j"), Symbol("T_j+1"), Symbol("t_j")


def T_symbol(j):
    return Symbol("T{0}".format(j))


def t_symbol(j):
    return Symbol("t{0}".format(j))


#    _
#   | | __  _ __  _ __(_)_ __ ___   ___
#   | |/ / | '_ \| '__| | '_ ` _ \ / _ \
#   |   <  | |_) | |  | | | | | | |  __/
#   |_|\_\ | .__/|_|  |_|_| |_| |_|\___|
#          |_|
def is_infinite(value):
    """ If a k' or t value is infinity """
    return isinstance(value, sfield.ExtendedRational) and value.is_infinite


def parse_kp(text):
    """
    Parses a k' value: a half-integer ("3/2", "2") or "inf"
    Returns:
        (Fraction or ExtendedRational): k', INF for infinity
    """
    value = sfield.parse_extended(text)
    if value.is_infinite:
        return INF
    kp = value.fraction()
    if (2 * kp).denominator != 1:
        slib.print_error("k'={0} is not a half-integer".format(text), True, slib.DomainError)
    return kp


def format_kp(kp):
    return "inf" if is_infinite(kp) else slib.format_rational(kp)


def k_range(r):
    """
    K_r in ascending order: 1/2, 1, ..., r + 1/2, then inf
    """
    return [Fraction(n, 2) for n in range(1, 2 * r + 2)] + [INF]


def _check_kp(r, kp):
    if is_infinite(kp):
        return
    kp = slib.to_fraction(kp)
    if (2 * kp).denominator != 1 or not Fraction(1, 2) <= kp <= r + Fraction(1, 2):
        slib.print_error("k'={0} outside [1/2, {1}] and not inf".format(
            slib.format_rational(kp), slib.format_rational(r + Fraction(1, 2))), True, slib.DomainError)


class CaseSpec(object):
    """
    One Case_phi(r;k') instance: p, f = len(r), the weights r_j and the k'_j
    J0 is the set of indices with k'_j = inf
    """

    def __init__(self, r, kp, p=None):
        self.p = slib.setting("prime", p)
        self.r = tuple(int(r_j) for r_j in slib.u_enlist(r))
        self.kp = tuple(kp_j if is_infinite(kp_j) else slib.to_fraction(kp_j) for kp_j in slib.u_enlist(kp))
        self.f = len(self.r)
        if not self.f or len(self.kp) != self.f:
            slib.print_error("r and k' must be non-empty and of equal length, got {0} and {1}".format(
                len(self.r), len(self.kp)), True, slib.DomainError)
        for r_j, kp_j in zip(self.r, self.kp):
            if not 0 < r_j < self.p - 1:
                slib.print_error("r_j={0} must satisfy 0 < r_j < p-1 = {1}".format(r_j, self.p - 1), True,
                                 slib.DomainError)
            _check_kp(r_j, kp_j)
        if not admissibility_check(self.r, self.j0):
            slib.print_error("J0={0} is not admissible for r={1}".format(sorted(self.j0), list(self.r)), True,
                             slib.DomainError)

    @classmethod
    def parse(cls, r_text, kp_text, p=None):
        """ From CLI strings, e.g. ("2,2", "1/2,2") """
        return cls(slib.parse_list(r_text, int), slib.parse_list(kp_text, parse_kp), p)

    @property
    def j0(self):
        return frozenset(j for j, kp_j in enumerate(self.kp) if is_infinite(kp_j))

    @property
    def finite_indices(self):
        return [j for j in range(self.f) if j not in self.j0]

    def k(self, j):
        """ k_j = floor(k'_j) (None for inf) """
        return None if is_infinite(self.kp[j]) else int(self.kp[j])

    def __eq__(self, other):
        return isinstance(other, CaseSpec) and (self.p, self.r, self.kp) == (other.p, other.r, other.kp)

    def __hash__(self):
        return hash((self.p, self.r, tuple(format_kp(kp) for kp in self.kp)))

    def to_dict(self):
        return {"p": self.p, "r": list(self.r), "kp": [format_kp(kp) for kp in self.kp], "j0": sorted(self.j0)}

    def __repr__(self):
        return "CaseSpec(r={0}, kp=({1}), p={2})".format(list(self.r), ",".join(format_kp(kp) for kp in self.kp),
                                                         self.p)


def admissibility_check(r, j0):
    """
    sum_j (r_j - 1) >= 2 sum_{j in J0} r_j
    Args:
        r (list): Weights r_j
        j0 (iterable): Indices with k'_j = inf
    Returns:
        (bool): If J0 is admissible
    """
    r = slib.u_enlist(r)
    return sum(r_j - 1 for r_j in r) >= 2 * sum(r[j] for j in j0)


#    _           _  __
#   | |__   __ _| |/ _|___ _ __   __ _  ___ ___  ___
#   | '_ \ / _` | | |_/ __| '_ \ / _` |/ __/ _ \/ __|
#   | | | | (_| | |  _\__ \ |_) | (_| | (_|  __/\__ \
#   |_| |_|\__,_|_|_| |___/ .__/ \__,_|\___\___||___/
#                         |_|
class Halfspace(object):
    """ Affine constraint expr <= 0, or expr < 0 when strict """
    __slots__ = ("expr", "strict")

    def __init__(self, expr, strict=False):
        self.expr = sympy.expand(sympy.sympify(expr))
        self.strict = bool(strict)

    @classmethod
    def le(cls, lhs, rhs):
        return cls(lhs - rhs)

    @classmethod
    def lt(cls, lhs, rhs):
        return cls(lhs - rhs, True)

    def subs(self, mapping):
        return Halfspace(self.expr.subs(mapping, simultaneous=True), self.strict)

    def coefficient(self, symbol):
        return self.expr.coeff(symbol)

    def constant(self):
        return self.expr.subs({s: 0 for s in self.expr.free_symbols})

    def is_constant(self):
        return not self.expr.free_symbols

    def holds(self):
        """ Truth value of a constant halfspace """
        return self.expr < 0 if self.strict else self.expr <= 0

    def negation(self):
        return Halfspace(-self.expr, not self.strict)

    def as_strict(self):
        return Halfspace(self.expr, True)

    def normalized(self):
        """ Same halfspace with coprime integer coefficients """
        coeffs = [slib.to_fraction(c) for c in sympy.Poly(self.expr, *sorted(self.expr.free_symbols, key=str))
                  .coeffs()] if self.expr.free_symbols else [slib.to_fraction(self.expr)]
        denominator = sympy.ilcm(*[c.denominator for c in coeffs]) if len(coeffs) > 1 else coeffs[0].denominator
        numerators = [int(c * denominator) for c in coeffs]
        divisor = sympy.igcd(*numerators) if len(numerators) > 1 else abs(numerators[0])
        if not divisor:
            return Halfspace(0, self.strict)
        return Halfspace(self.expr * denominator / divisor, self.strict)

    def key(self):
        return (str(self.expr), self.strict)

    def __eq__(self, other):
        return isinstance(other, Halfspace) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return "{0} {1} 0".format(self.expr, "<" if self.strict else "<=")


_FALSE = Halfspace(1)


def _simplify(halfspaces):
    """ Normalizes, drops true constants and duplicates; a false constant collapses the system to [1 <= 0] """
    seen, result = set(), []
    for halfspace in halfspaces:
        if halfspace.is_constant():
            if not halfspace.holds():
                return [_FALSE]
            continue
        halfspace = halfspace.normalized()
        if halfspace.key() not in seen:
            seen.add(halfspace.key())
            result.append(halfspace)
    return result


def eliminate(halfspaces, symbol):
    """
    One Fourier-Motzkin step: projects out symbol
    Args:
        halfspaces (list): Halfspace constraints
        symbol (Symbol): Variable to eliminate
    Returns:
        (list): Halfspaces free of symbol
    """
    zero, positive, negative = [], [], []
    for halfspace in halfspaces:
        c = halfspace.coefficient(symbol)
        (zero if c == 0 else positive if c > 0 else negative).append(halfspace)
    LOG.debug("Eliminating {0}: z={1} p={2} n={3}".format(symbol, len(zero), len(positive), len(negative)))
    result = list(zero)
    for upper in positive:
        for lower in negative:
            a, b = upper.coefficient(symbol), -lower.coefficient(symbol)
            result.append(Halfspace(b * upper.expr + a * lower.expr, upper.strict or lower.strict))
    return _simplify(result)


def is_feasible(halfspaces):
    """ If a finite system of (strict or non-strict) rational halfspaces has a solution """
    system = _simplify(halfspaces)
    while system and system != [_FALSE]:
        system = eliminate(system, sorted(set().union(*[h.expr.free_symbols for h in system]), key=str)[0])
    return system != [_FALSE]


def _minimal(halfspaces):
    system = _simplify(halfspaces)
    if system == [_FALSE] or not is_feasible(system):
        return None
    kept = sorted(system, key=lambda h: h.key())
    index = 0
    while index < len(kept):
        others = kept[:index] + kept[index + 1:]
        if not is_feasible(others + [kept[index].negation()]):
            kept = others
        else:
            index += 1
    return kept


#                        _
#    _ __ ___  __ _(_) ___  _ __
#   | '__/ _ \/ _` | |/ _ \| '_ \
#   | | |  __/ (_| | | (_) | | | |
#   |_|  \___|\__, |_|\___/|_| |_|
#             |___/
_RELATION = re.compile(r"(<=|>=|==|=|<|>)")
_FLIP = {"<=": ">=", "<": ">", ">=": "<=", ">": "<", "=": "="}


class Region(object):
    """
    Conjunction of rational halfspaces in t-space, kept in canonical minimal form
    """

    def __init__(self, variables, halfspaces):
        self.variables = list(variables)
        minimal = _minimal(halfspaces)
        self.empty = minimal is None
        self.halfspaces = minimal or []

    @classmethod
    def parse(cls, variables, constraints):
        """
        From strings like "t0 - t1 >= 0", "t1 = -1", "t0 < 0"
        """
        halfspaces = []
        for text in slib.u_enlist(constraints):
            parts = _RELATION.split(text)
            if len(parts) != 3:
                slib.print_error("Can't parse constraint '{0}'".format(text), True, slib.FixtureError)
            lhs, relation, rhs = sympy.sympify(parts[0]), parts[1], sympy.sympify(parts[2])
            if relation in ("<=", "<"):
                halfspaces.append(Halfspace(lhs - rhs, relation == "<"))
            elif relation in (">=", ">"):
                halfspaces.append(Halfspace(rhs - lhs, relation == ">"))
            else:
                halfspaces += [Halfspace(lhs - rhs), Halfspace(rhs - lhs)]
        return cls(variables, halfspaces)

    def constraints(self):
        """
        Canonical constraint triples (form, relation, bound): opposite pairs merged into "="
        """
        pending = list(self.halfspaces)
        triples = []
        while pending:
            halfspace = pending.pop(0)
            opposite = Halfspace(-halfspace.expr)
            equality = not halfspace.strict and opposite in pending
            if equality:
                pending.remove(opposite)
            form = halfspace.expr - halfspace.constant()
            bound = -halfspace.constant()
            relation = "=" if equality else ("<" if halfspace.strict else "<=")
            leading = next(form.coeff(v) for v in self.variables + sorted(form.free_symbols, key=str)
                           if form.coeff(v) != 0)
            if leading < 0:
                form, bound, relation = -form, -bound, _FLIP[relation]
            triples.append((form, relation, slib.to_fraction(bound)))
        return sorted(triples, key=lambda c: (str(c[0]), c[1], c[2]))

    def to_strings(self):
        if self.empty:
            return ["false"]
        return ["{0} {1} {2}".format(form, relation, slib.format_rational(bound))
                for form, relation, bound in self.constraints()]

    def interior_nonempty(self):
        """ If the region has a non-empty interior (every constraint made strict is still feasible) """
        if self.empty:
            return False
        return is_feasible([h.as_strict() for h in self.halfspaces])

    def contains(self, t):
        """
        Exact membership
        Args:
            t (dict or list): Values of the variables (list aligned with self.variables), inf allowed
        Returns:
            (bool): If t lies in the region
        """
        if self.empty:
            return False
        if not isinstance(t, dict):
            t = dict(zip(self.variables, slib.u_enlist(t)))
        t = {(v if isinstance(v, Symbol) else Symbol(str(v))): value for v, value in t.items()}
        for halfspace in self.halfspaces:
            plus_inf = minus_inf = False
            value = halfspace.constant()
            for v in halfspace.expr.free_symbols:
                c = halfspace.coefficient(v)
                if v not in t:
                    slib.print_error("No value for {0}".format(v), True, slib.DomainError)
                if is_infinite(t[v]):
                    plus_inf, minus_inf = plus_inf or c > 0, minus_inf or c < 0
                else:
                    value += c * sympy.Rational(slib.format_rational(t[v]))
            if plus_inf and minus_inf:
                slib.print_error("inf - inf while testing membership in {0}".format(self), True, slib.DomainError)
            if plus_inf or (not minus_inf and not Halfspace(value, halfspace.strict).holds()):
                return False
        return True

    def __contains__(self, t):
        return self.contains(t)

    def __eq__(self, other):
        return isinstance(other, Region) and self.to_strings() == other.to_strings()

    def __hash__(self):
        return hash(tuple(self.to_strings()))

    def to_dict(self):
        return {"variables": [str(v) for v in self.variables], "halfspaces": self.to_strings(),
                "empty": self.empty, "interior_nonempty": self.interior_nonempty()}

    def __repr__(self):
        return "Region({{{0}}})".format(", ".join(self.to_strings()))


def region_contains(outer, inner):
    """ If inner is a subset of outer (same variables) """
    if inner.empty:
        return True
    if outer.empty:
        return False
    return all(not is_feasible(inner.halfspaces + [h.negation()]) for h in outer.halfspaces)


#                        _             _       _
#     ___ ___  _ __  ___| |_ _ __ __ _(_)_ __ | |_ ___
#    / __/ _ \| '_ \/ __| __| '__/ _` | | '_ \| __/ __|
#   | (_| (_) | | | \__ \ |_| | | (_| | | | | | |_\__ \
#    \___\___/|_| |_|___/\__|_|  \__,_|_|_| |_|\__|___/
#
class LocalConstraints(object):
    """
    Branch of Case_phi(k'_j): T_j + sign T_{j+1} = constant + t_coefficient t_j, plus halfspaces
    Halfspaces are over the placeholders T_j, T_j+1 and t_j
    """

    def __init__(self, sign, constant, t_coefficient, inequalities):
        self.sign = sign
        self.constant = constant
        self.t_coefficient = t_coefficient
        self.inequalities = inequalities

    def rhs(self, t=_T_PARAM):
        return self.constant + self.t_coefficient * t

    def bind(self, j, f):
        """ The halfspaces with placeholders replaced by T_j, T_{j+1 mod f}, t_j """
        mapping = {_T_CUR: T_symbol(j), _T_NEXT: T_symbol((j + 1) % f), _T_PARAM: t_symbol(j)}
        return [h.subs(mapping) for h in self.inequalities]


def local_constraints(r_j, kp):
    """
    Equation and inequalities of Case_phi(k'_j) for one embedding
    Args:
        r_j (int): Weight
        kp: k'_j (half-integer in [1/2, r_j + 1/2] or INF)
    Returns:
        (LocalConstraints): sign s_j, right hand side and halfspaces
    """
    _check_kp(r_j, kp)
    Tj, Tn, tj = _T_CUR, _T_NEXT, _T_PARAM
    inequalities = [Halfspace.le(Tj, 0)]
    if is_infinite(kp):
        return LocalConstraints(-1, Fraction(r_j + 1), 0, inequalities)
    sign = 1 if (2 * kp) % 2 == 0 else -1
    constant = 2 * kp - r_j - Fraction(1 + sign, 2)
    t_coefficient = 2 if Fraction(r_j + 1, 2) <= kp <= r_j else 0
    if kp == Fraction(1, 2):
        inequalities.append(Halfspace.le(Tj, tj))
    elif 1 <= kp <= Fraction(r_j, 2):
        inequalities += [Halfspace.le(Tj, tj), Halfspace.le(-1, Tn)]
    elif Fraction(r_j + 1, 2) <= kp <= r_j - Fraction(1, 2):
        inequalities += [Halfspace.le(tj, Tj), Halfspace.lt(tj, 0), Halfspace.le(-1, Tn)]
    elif kp == r_j:
        inequalities += [Halfspace.le(tj, Tj), Halfspace.le(Tj, tj + r_j)]
    else:  # r_j + 1/2
        inequalities.append(Halfspace.le(tj + r_j, Tj))
    return LocalConstraints(sign, constant, t_coefficient, inequalities)


class ConstraintSystem(object):
    """
    The f cyclic equations T_j + s_j T_{j+1} = c_j(t_j) and all halfspaces over (T, t)
    """

    def __init__(self, spec):
        self.spec = spec
        self.T = [T_symbol(j) for j in range(spec.f)]
        self.t = [t_symbol(j) for j in spec.finite_indices]
        self.local = [local_constraints(r_j, kp_j) for r_j, kp_j in zip(spec.r, spec.kp)]
        self.inequalities = [h for j, c in enumerate(self.local) for h in c.bind(j, spec.f)]

    def rhs(self, j):
        return self.local[j].rhs(t_symbol(j))

    def equations(self):
        """ (lhs, rhs) sympy pairs """
        f = self.spec.f
        return [(self.T[j] + self.local[j].sign * self.T[(j + 1) % f], self.rhs(j)) for j in range(f)]

    def cyclic_solution(self):
        """
        Solves the cyclic equations along the cycle, T_0 kept as a parameter
        Returns:
            (tuple): (T_j expressions in T0 and t, closing expression that must vanish)
        """
        f = self.spec.f
        values = [self.T[0]]
        for j in range(f - 1):
            values.append(sympy.expand(self.local[j].sign * (self.rhs(j) - values[j])))
        closing = sympy.expand(values[f - 1] + self.local[f - 1].sign * values[0] - self.rhs(f - 1))
        alpha = closing.coeff(self.T[0])
        if alpha != 0:
            root = sympy.solve(closing, self.T[0])[0]
            return [sympy.expand(v.subs(self.T[0], root)) for v in values], sympy.Integer(0)
        return values, closing

    def to_dict(self):
        variables = self.T + self.t
        return {
            "case": self.spec.to_dict(),
            "equations": ["{0} = {1}".format(lhs, rhs) for lhs, rhs in self.equations()],
            "inequalities": [s for h in self.inequalities for s in Region(variables, [h]).to_strings()],
        }


def constraint_system(spec):
    return ConstraintSystem(spec)


#              _
#    ___  ___ | |_   _____
#   / __|/ _ \| \ \ / / _ \
#   \__ \ (_) | |\ V /  __/
#   |___/\___/|_| \_/ \___|
#
class CaseSolution(object):
    """
    Solution T of the cyclic system: a point, or a family T_j = a_j T0 + b_j over an interval of T0
    T holds the canonical representative
    """

    def __init__(self, spec, t, parametrization, interval):
        self.spec = spec
        self.t = t
        self.parametrization = parametrization
        self.interval = interval
        self.family = interval is not None
        self.T = self.point(self.representative()) if self.family else [b for a, b in parametrization]

    def representative(self):
        """
        Canonical T0 of a family: attained lower bound, else attained upper bound,
        else midpoint of a bounded open interval, else the finite bound moved inward by 1
        """
        lo, lo_closed, hi, hi_closed = self.interval
        if lo is not None and lo_closed:
            return lo
        if hi is not None and hi_closed:
            return hi
        if lo is not None and hi is not None:
            return (lo + hi) / 2
        if lo is not None:
            return lo + 1
        if hi is not None:
            return hi - 1
        return Fraction(0)

    def point(self, T0):
        """ T for the parameter value T0 """
        return [a * T0 + b for a, b in self.parametrization]

    def lambda_valuations(self, T=None):
        return lambda_valuations(self.spec, T or self.T)

    def to_dict(self):
        result = {
            "case": self.spec.to_dict(),
            "t": [str(v) if is_infinite(v) else slib.format_rational(v) for v in self.t],
            "T": [slib.format_rational(v) for v in self.T],
            "family": self.family,
            "lambda_valuations": [slib.format_rational(v) for v in self.lambda_valuations()],
        }
        if self.family:
            lo, lo_closed, hi, hi_closed = self.interval
            result["interval"] = "{0}{1}, {2}{3}".format("[" if lo_closed else "(",
                                                           "-inf" if lo is None else slib.format_rational(lo),
                                                           "inf" if hi is None else slib.format_rational(hi),
                                                           "]" if hi_closed else ")")
        return result


def _bind_t(halfspaces, t_values):
    """ Substitutes t; inf coordinates drop true constraints and turn false ones into [1 <= 0] """
    bound = []
    for halfspace in halfspaces:
        for symbol, value in t_values.items():
            if not is_infinite(value):
                continue
            c = halfspace.coefficient(symbol)
            if c > 0:
                return [_FALSE]
            if c < 0:
                halfspace = None
                break
        if halfspace is not None:
            finite = {s: sympy.Rational(slib.format_rational(v)) for s, v in t_values.items() if not is_infinite(v)}
            bound.append(halfspace.subs(finite))
    return bound


def _t_mapping(spec, t):
    t = slib.u_enlist(t)
    if len(t) != spec.f:
        slib.print_error("t has {0} coordinates, expected {1}".format(len(t), spec.f), True, slib.DomainError)
    return {t_symbol(j): (t[j] if is_infinite(t[j]) else slib.to_fraction(t[j]))
            for j in spec.finite_indices}


def solve_cyclic(spec, t):
    """
    Solves Case_phi(r;k') at valuations t = v_p(x)
    Args:
        spec (CaseSpec): The case
        t (list): t_j per embedding (inf allowed; ignored on J0)
    Returns:
        (CaseSolution): Point or family, None when infeasible
    """
    system = constraint_system(spec)
    t_values = _t_mapping(spec, t)
    for j in spec.finite_indices:
        if is_infinite(t_values[t_symbol(j)]) and system.local[j].t_coefficient:
            return None
    values, closing = system.cyclic_solution()
    finite = {s: sympy.Rational(slib.format_rational(v)) for s, v in t_values.items() if not is_infinite(v)}
    values = [sympy.expand(v.subs(finite)) for v in values]
    closing = sympy.expand(closing.subs(finite))
    mapping = dict(zip(system.T, values))
    constraints = _simplify(_bind_t([h.subs(mapping) for h in system.inequalities], t_values))
    if constraints == [_FALSE]:
        return None
    T0 = system.T[0]
    parametrization = [(slib.to_fraction(v.coeff(T0)), slib.to_fraction(v.subs(T0, 0))) for v in values]
    if closing.coeff(T0) == 0 and closing.free_symbols:
        slib.print_error("Unbound parameters {0}".format(closing.free_symbols), True, slib.DomainError)
    if closing != 0 and not closing.free_symbols:
        return None
    slope = closing.coeff(T0)
    if slope != 0:
        # the cycle closes at a single T0
        value = -closing.subs(T0, 0) / slope
        point = [(Fraction(0), a * slib.to_fraction(value) + b) for a, b in parametrization]
        violated = _simplify([h.subs({T0: value}) for h in constraints])
        return CaseSolution(spec, list(t), point, None) if not violated else None
    if not any(a for a, b in parametrization):
        return CaseSolution(spec, list(t), parametrization, None) if not constraints else None
    lo, lo_closed, hi, hi_closed = None, False, None, False
    for halfspace in constraints:
        a, b = slib.to_fraction(halfspace.coefficient(T0)), slib.to_fraction(halfspace.constant())
        bound = -b / a
        if a > 0 and (hi is None or bound < hi or (bound == hi and halfspace.strict)):
            hi, hi_closed = bound, not halfspace.strict
        elif a < 0 and (lo is None or bound > lo or (bound == lo and halfspace.strict)):
            lo, lo_closed = bound, not halfspace.strict
    if lo is not None and hi is not None and (lo > hi or (lo == hi and not (lo_closed and hi_closed))):
        return None
    return CaseSolution(spec, list(t), parametrization, (lo, lo_closed, hi, hi_closed))


def check_solution(spec, t, T):
    """ If (t, T) satisfies every equation and inequality of the case exactly """
    system = constraint_system(spec)
    t_values = _t_mapping(spec, t)
    mapping = {T_symbol(j): sympy.Rational(slib.format_rational(v)) for j, v in enumerate(T)}
    for j, (lhs, rhs) in enumerate(system.equations()):
        if system.local[j].t_coefficient and is_infinite(t_values.get(t_symbol(j))):
            return False
        finite = {s: sympy.Rational(slib.format_rational(v)) for s, v in t_values.items() if not is_infinite(v)}
        if sympy.expand(lhs.subs(mapping) - rhs.subs(finite)) != 0:
            return False
    return _simplify(_bind_t([h.subs(mapping) for h in system.inequalities], t_values)) == []


def lambda_valuations(spec, T):
    """ v_p(Lambda_j) = (r_j - 1 - T_j + T_{j+1}) / 2 """
    f = spec.f
    return [Fraction(spec.r[j] - 1, 2) - (slib.to_fraction(T[j]) - slib.to_fraction(T[(j + 1) % f])) / 2
            for j in range(f)]


def lambda_valuation_average(spec):
    """ v_p(lambda) = (1/2f) sum_j (r_j - 1) """
    return Fraction(sum(r_j - 1 for r_j in spec.r), 2 * spec.f)


#                             _                               _
#     __ _ _ __ ___  __ _| |  ___ _   _ _ __  _ __   ___  _ __| |_
#    / _` | '__/ _ \/ _` | | / __| | | | '_ \| '_ \ / _ \| '__| __|
#   | (_| | | |  __/ (_| | | \__ \ |_| | |_) | |_) | (_) | |  | |_
#    \__,_|_|  \___|\__,_|_| |___/\__,_| .__/| .__/ \___/|_|   \__|
#                                      |_|   |_|
@slib.timer
def areal_support(spec):
    """
    R(r;k'): the valuations t = v_p(x) (j not in J0) for which the case is feasible
    Args:
        spec (CaseSpec): The case
    Returns:
        (Region): Canonical minimal halfspace description (empty iff k' is not valid)
    """
    system = constraint_system(spec)
    values, closing = system.cyclic_solution()
    mapping = dict(zip(system.T, values))
    halfspaces = [h.subs(mapping) for h in system.inequalities]
    if closing != 0:
        halfspaces += [Halfspace(closing), Halfspace(-closing)]
    T0 = system.T[0]
    if any(h.coefficient(T0) != 0 for h in halfspaces):
        halfspaces = eliminate(_simplify(halfspaces), T0)
    region = Region(system.t, halfspaces)
    LOG.debug("R({0}) = {1}".format(spec, region))
    return region


def in_region(region, t):
    return region.contains(t)


def interior_nonempty(region):
    return region.interior_nonempty()


@slib.timer
def enumerate_valid(p, f, r, j0=(), interior=True):
    """
    Valid k' tuples with J_inf(k') = J0, in lexicographic order of K_r
    Args:
        p (int): Prime
        f (int): Number of embeddings
        r (list): Weights
        j0 (iterable): Indices with k'_j = inf
        interior (bool): Require a non-empty interior (False keeps every non-empty region)
    Returns:
        (list): k' tuples
    """
    r = slib.u_enlist(r)
    j0 = frozenset(j0)
    if len(r) != f:
        slib.print_error("f={0} but r has {1} entries".format(f, len(r)), True, slib.DomainError)
    if not admissibility_check(r, j0):
        slib.print_error("J0={0} is not admissible for r={1}".format(sorted(j0), r), True, slib.DomainError)
    choices = [[INF] if j in j0 else k_range(r_j)[:-1] for j, r_j in enumerate(r)]
    valid = []
    for kp in itertools.product(*choices):
        region = areal_support(CaseSpec(r, kp, p))
        if region.interior_nonempty() if interior else not region.empty:
            valid.append(tuple(kp))
    LOG.info("{0} valid cases for r={1}, J0={2}".format(len(valid), r, sorted(j0)))
    return valid
