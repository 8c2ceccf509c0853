# -*- coding: utf-8 -*-
"""
@summary:       Mod p Breuil modules of a feasible case: matrices, monodromy type, rank 1 submodules and inertia exponents
@run:           import sdmred.breuil as sbreuil (suggested)
@license:       MIT
"""
from fractions import Fraction

from sympy import binomial

from . import lib as slib
from . import logger as slog
from . import field as sfield
from . import poly as spoly
from . import pq as spq
from . import cases as scases
from . import support as ssupport

LOG = slog.logger("sdmred.breuil")

HALF = Fraction(1, 2)


def _binom(n, k):
    return Fraction(int(binomial(n, k)))


def _sign(n):
    return 1 if n % 2 == 0 else -1


#    _   _       _ _
#   | | | |_ __ (_) |_ ___
#   | | | | '_ \| | __/ __|
#   | |_| | | | | | |_\__ \
#    \___/|_| |_|_|\__|___/
#
class UnitPair(object):
    """ (alpha_j, beta_j), both of valuation 0 """

    def __init__(self, alpha, beta):
        self.alpha = alpha
        self.beta = beta

    def ratio(self):
        return self.alpha / self.beta

    def to_dict(self):
        return {"alpha": self.alpha.to_json(), "beta": self.beta.to_json()}

    def __repr__(self):
        return "UnitPair({0}, {1})".format(self.alpha, self.beta)


def alpha_beta(r_j, kp, lam, theta, theta_next, x):
    """
    The pair of units attached to Case_phi(r_j;k'_j)
    Args:
        r_j (int): Weight
        kp: k'_j (half-integer or INF)
        lam, theta, theta_next, x (ExactElement): Lambda_j, Theta_j, Theta_{j+1}, x_j
    Returns:
        (UnitPair): alpha_j, beta_j
    Raises:
        NonUnitError: if the inputs violate the case equations
    """
    p = lam.p
    if scases.is_infinite(kp) or kp == r_j + HALF:
        pair = (lam * p, lam * theta / (theta_next * p ** r_j))
    else:
        kp = slib.to_fraction(kp)
        k = int(kp)
        half = kp != k
        if kp <= Fraction(r_j, 2):
            if half:
                pair = (lam / p ** (r_j - k - 1), lam * theta / (theta_next * p ** k))
            else:
                pair = (lam * theta / p ** (k - 1), lam / (theta_next * p ** (r_j - k)))
        elif half:
            pair = (lam * x / p ** (r_j - k - 1), lam * theta / (theta_next * x * p ** k))
        else:
            pair = (lam * theta / (x * p ** (k - 1)), lam * x / (theta_next * p ** (r_j - k)))
    for name, value in zip(("alpha", "beta"), pair):
        if value.valuation() != 0:
            slib.print_error("{0} has valuation {1} for r_j={2}, k'={3}".format(
                name, value.valuation(), r_j, scases.format_kp(kp)), True, slib.NonUnitError)
    return UnitPair(*pair)


#                       _        _
#    _ __ ___   __ _| |_ _ __(_) ___ ___  ___
#   | '_ ` _ \ / _` | __| '__| |/ __/ _ \/ __|
#   | | | | | | (_| | |_| |  | | (_|  __/\__ \
#   |_| |_| |_|\__,_|\__|_|  |_|\___\___||___/
#
class UPoly(object):
    """ sum c_d u^d in F[u]/u^p, c_d in a ResidueField """
    __slots__ = ("field", "terms")

    def __init__(self, field, terms=None):
        self.field = field
        self.terms = {d: c for d, c in (terms or {}).items() if d < field.p and not c.is_zero()}

    @classmethod
    def monomial(cls, field, c, d=0):
        return cls(field, {d: field(c)})

    def coefficient(self, d):
        return self.terms.get(d, self.field.zero())

    def is_zero(self):
        return not self.terms

    def valuation(self):
        """ u-adic valuation, None for zero """
        return min(self.terms) if self.terms else None

    def __add__(self, other):
        terms = dict(self.terms)
        for d, c in other.terms.items():
            terms[d] = terms.get(d, self.field.zero()) + c
        return UPoly(self.field, terms)

    def __neg__(self):
        return UPoly(self.field, {d: -c for d, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        terms = {}
        for d1, c1 in self.terms.items():
            for d2, c2 in other.terms.items():
                if d1 + d2 < self.field.p:
                    terms[d1 + d2] = terms.get(d1 + d2, self.field.zero()) + c1 * c2
        return UPoly(self.field, terms)

    def truncate(self, n):
        """ mod u^n """
        return UPoly(self.field, {d: c for d, c in self.terms.items() if d < n})

    def lift(self, field):
        return UPoly(field, {d: field(c) for d, c in self.terms.items()})

    def __eq__(self, other):
        return isinstance(other, UPoly) and self.terms == other.terms

    def __hash__(self):
        return hash(tuple(sorted((d, c) for d, c in self.terms.items())))

    def to_json(self):
        return [[d, self.terms[d].to_json()] for d in sorted(self.terms)]

    def __str__(self):
        parts = []
        for d in sorted(self.terms):
            c = self.terms[d]
            power = "" if d == 0 else ("u" if d == 1 else "u^{0}".format(d))
            value = c.prime_value() if c.prime_value() is not None else c.rep
            parts.append("{0}{1}".format(value, "*" + power if power else ""))
        return " + ".join(parts) or "0"


class PolyMatrix(object):
    """ 2x2 matrix over F[u]/u^p """

    def __init__(self, rows):
        self.rows = [list(row) for row in rows]
        self.field = self.rows[0][0].field

    @classmethod
    def build(cls, field, entries):
        """
        From entries given as lists of (coefficient, u-degree) pairs
        Args:
            field (ResidueField): Coefficient field
            entries (list): 2x2 nested list of [(c, d), ...]
        """
        rows = []
        for row in entries:
            rows.append([sum((UPoly.monomial(field, c, d) for c, d in entry), UPoly(field)) for entry in row])
        return cls(rows)

    @classmethod
    def constant(cls, field, rows):
        return cls.build(field, [[[(c, 0)] for c in row] for row in rows])

    def __getitem__(self, index):
        i, j = index
        return self.rows[i][j]

    def __mul__(self, other):
        return PolyMatrix([[self.rows[i][0] * other.rows[0][j] + self.rows[i][1] * other.rows[1][j]
                            for j in range(2)] for i in range(2)])

    def det(self):
        return self.rows[0][0] * self.rows[1][1] - self.rows[0][1] * self.rows[1][0]

    def adjugate(self):
        (a, b), (c, d) = self.rows
        return PolyMatrix([[d, -b], [-c, a]])

    def u_valuation_det(self):
        return self.det().valuation()

    def coefficient(self, d):
        """ The constant 2x2 matrix of u^d coefficients """
        return [[entry.coefficient(d) for entry in row] for row in self.rows]

    def constant_term(self):
        return self.coefficient(0)

    def is_zero(self):
        return all(entry.is_zero() for row in self.rows for entry in row)

    def lift(self, field):
        return PolyMatrix([[entry.lift(field) for entry in row] for row in self.rows])

    def __eq__(self, other):
        return isinstance(other, PolyMatrix) and self.rows == other.rows

    def __hash__(self):
        return hash(tuple(tuple(row) for row in self.rows))

    def to_json(self):
        return [[str(entry) for entry in row] for row in self.rows]

    def __repr__(self):
        return "PolyMatrix({0})".format(self.to_json())


#    _           _
#   (_)_ __  ___| |_ __ _ _ __   ___ ___
#   | | '_ \/ __| __/ _` | '_ \ / __/ _ \
#   | | | | \__ \ || (_| | | | | (_|  __/
#   |_|_| |_|___/\__\__,_|_| |_|\___\___|
#
class Instance(object):
    """
    A case together with x, Theta and Lambda satisfying its equations and inequalities
    """

    def __init__(self, spec, x, theta, lam, r):
        self.spec = spec
        self.x = x
        self.theta = theta
        self.lam = lam
        self.r = r

    @property
    def p(self):
        return self.spec.p

    @property
    def f(self):
        return self.spec.f

    def t(self):
        return [v.valuation() if v.is_zero() else v.valuation().fraction() for v in self.x]

    def T(self):
        return [v.valuation().fraction() for v in self.theta]

    def units(self):
        f = self.f
        return [alpha_beta(self.spec.r[j], self.spec.kp[j], self.lam[j], self.theta[j], self.theta[(j + 1) % f],
                           self.x[j]) for j in range(f)]

    def to_dict(self):
        return {"case": self.spec.to_dict(), "r": self.r,
                "x": [v.to_json() for v in self.x], "theta": [v.to_json() for v in self.theta],
                "lambda": [v.to_json() for v in self.lam]}


def make_instance(spec, x, theta, lam=None, r=None, e=None):
    """
    Validates (x, Theta, Lambda) against Case_phi(r;k')
    Args:
        spec (CaseSpec): The case
        x (list): x_j (elements, rationals or coefficient lists)
        theta (list): Theta_j (non-zero)
        lam (list): Lambda_j; by default pi^{e v(Lambda_j)} with v(Lambda_j) from the case equations
        r (int): Common weight (defaults to max r_j)
        e (int): Ramification index
    Returns:
        (Instance): The validated instance
    Raises:
        InfeasibleError: if the valuations violate the case
    """
    e = slib.setting("ramification", e)
    r = max(spec.r) if r is None else int(r)
    x = [sfield.coerce(v, e, spec.p) for v in slib.u_enlist(x)]
    theta = [sfield.coerce(v, e, spec.p) for v in slib.u_enlist(theta)]
    if len(x) != spec.f or len(theta) != spec.f:
        slib.print_error("x and Theta need {0} coordinates".format(spec.f), True, slib.DomainError)
    if any(v.is_zero() for v in theta):
        slib.print_error("Theta_j must be non-zero", True, slib.DomainError)
    if not max(spec.r) <= r < spec.p - 1:
        slib.print_error("Common weight r={0} must satisfy max r_j <= r < p-1".format(r), True, slib.DomainError)
    for r_j in spec.r:
        if not 2 * r - r_j < spec.p - 1:
            slib.print_error("2r - r_j = {0} must be < p-1 = {1}".format(2 * r - r_j, spec.p - 1), True,
                             slib.DomainError)
    t = [v.valuation() if v.is_zero() else v.valuation().fraction() for v in x]
    T = [v.valuation().fraction() for v in theta]
    if not scases.check_solution(spec, t, T):
        slib.print_error("v(x)={0}, v(Theta)={1} violate {2}".format(
            [str(v) for v in t], [str(v) for v in T], spec), True, slib.InfeasibleError)
    expected = scases.lambda_valuations(spec, T)
    if lam is None:
        lam = []
        for v in expected:
            if (v * e).denominator != 1:
                slib.print_error("v(Lambda)={0} is not in (1/{1})Z".format(v, e), True, slib.DomainError)
            lam.append(sfield.pi_power(int(v * e), e, spec.p))
    else:
        lam = [sfield.coerce(v, e, spec.p) for v in slib.u_enlist(lam)]
        if [v.valuation() for v in lam] != [sfield.ExtendedRational(v) for v in expected]:
            slib.print_error("v(Lambda) must be {0}".format([str(v) for v in expected]), True,
                             slib.InfeasibleError)
    return Instance(spec, x, theta, lam, r)


#    _                        _ _
#   | |__  _ __ ___ _   _(_) |
#   | '_ \| '__/ _ \ | | | | |
#   | |_) | | |  __/ |_| | | |
#   |_.__/|_|  \___|\__,_|_|_|
#
class BreuilModule(object):
    """
    Rank 2 Breuil module: per embedding the matrices of N, Fil^r and phi_r
    """

    def __init__(self, r, r_vector, monodromy, filtration, frobenius, notes=None):
        self.r = r
        self.r_vector = list(r_vector)
        self.monodromy = monodromy
        self.filtration = filtration
        self.frobenius = frobenius
        self.notes = notes or []
        self.field = filtration[0].field

    @property
    def f(self):
        return len(self.filtration)

    @property
    def p(self):
        return self.field.p

    def lift(self, k):
        """ Same module over F_{p^k} """
        field = sfield.ResidueField(self.p, k)
        return BreuilModule(self.r, self.r_vector, [m.lift(field) for m in self.monodromy],
                            [m.lift(field) for m in self.filtration], [m.lift(field) for m in self.frobenius],
                            self.notes)

    def change_basis(self, matrices):
        """
        New basis E'^(j) = E^(j) P_j for constant invertible P_j (Fil^r generators kept)
        Args:
            matrices (list): P_j as 2x2 nested lists of residues
        """
        f = self.f
        P = [PolyMatrix.constant(self.field, m) for m in matrices]
        inverses = []
        for m in P:
            det = m.det().coefficient(0)
            if det.is_zero():
                slib.print_error("Basis change must be invertible", True, slib.DomainError)
            adj = m.adjugate()
            inverses.append(PolyMatrix.constant(self.field, [[c / det for c in row] for row in adj.constant_term()]))
        return BreuilModule(self.r, self.r_vector,
                            [inverses[j] * self.monodromy[j] * P[j] for j in range(f)],
                            [inverses[j] * self.filtration[j] for j in range(f)],
                            [inverses[(j + 1) % f] * self.frobenius[j] for j in range(f)], self.notes)

    def to_dict(self):
        return {
            "r": self.r,
            "residue_degree": self.field.k,
            "N": [m.to_json() for m in self.monodromy],
            "Fil": [m.to_json() for m in self.filtration],
            "phi": [m.to_json() for m in self.frobenius],
        }


class _Reducer(object):
    """ Reduces exact scalars into the residue field, keeping notes on vanishing entries """

    def __init__(self, field, j):
        self.field = field
        self.j = j
        self.notes = []

    def __call__(self, value, name=None):
        if not isinstance(value, sfield.ExactElement):
            return self.field(slib.to_fraction(value))
        if value.valuation() < 0:
            slib.print_error("j={0}: {1} = {2} is not integral (v={3})".format(
                self.j, name or "entry", value, value.valuation()), True, slib.NegativeValuationError)
        if name and value.valuation() > 0:
            self.notes.append("j={0}: {1} = 0 in F (v={2})".format(self.j, name, value.valuation()))
        return sfield.residue(value, self.field)


def _lower(field, a):
    return PolyMatrix.build(field, [[[(1, 0)], []], [[(a, 0)], [(1, 0)]]])


def _upper(field, a):
    return PolyMatrix.build(field, [[[(1, 0)], [(a, 0)]], [[], [(1, 0)]]])


def _unipotent(field, top, bottom):
    """ [[1, top], [bottom, 1]] with top, bottom lists of (c, d) """
    return PolyMatrix.build(field, [[[(1, 0)], top], [bottom, [(1, 0)]]])


def _diagonal(field, a, b):
    return PolyMatrix.build(field, [[[a], []], [[], [b]]])


def _antidiagonal(field, a, b):
    return PolyMatrix.build(field, [[[], [a]], [[b], []]])


def _embedding_matrices(instance, j, field):
    """ (M_Fil, M_phi) of embedding j, following the branch of k'_j """
    spec, r, p = instance.spec, instance.r, instance.p
    f = spec.f
    r_j, kp = spec.r[j], spec.kp[j]
    m = r_j // 2
    theta, theta_next, x = instance.theta[j], instance.theta[(j + 1) % f], instance.x[j]
    units = alpha_beta(r_j, kp, instance.lam[j], theta, theta_next, x)
    alpha, beta = units.alpha, units.beta
    res = _Reducer(field, j)
    a, b = res(alpha), res(beta)
    g = lambda: res(units.ratio() / theta_next, "alpha/(beta Theta_next)")
    x_over_theta = lambda: res(x / theta, "x/Theta")
    theta_over_x = lambda: res(theta / x, "Theta/x")
    q = p - 1

    if scases.is_infinite(kp):
        fil = _diagonal(field, (1, r), (1, r - r_j))
        phi = _diagonal(field, (a * _sign(r), 0), (b * _sign(r - r_j), 0))
    elif r_j == 1:
        if kp == HALF:
            fil = _lower(field, x_over_theta()) * _diagonal(field, (1, r - 1), (1, r))
            phi = _diagonal(field, (a * _sign(r - 1), 0), (b * _sign(r), 0))
        elif kp == 1:
            fil = _upper(field, theta_over_x()) * _diagonal(field, (1, r), (1, r - 1))
            top = -res(units.ratio() * x * p / theta, "alpha p x/(beta Theta)")
            phi = _upper(field, top) * _antidiagonal(field, (a * _sign(r - 1), 0), (b * _sign(r - 1), 0))
        else:
            fil = _diagonal(field, (1, r), (1, r - 1))
            top = res(units.ratio() * theta / (x * p), "alpha Theta/(beta p x)")
            phi = _upper(field, top) * _diagonal(field, (a * _sign(r), 0), (b * _sign(r - 1), 0))
    elif kp != int(kp):
        k = int(kp)
        if k == 0:
            fil = _lower(field, x_over_theta()) * PolyMatrix.build(field, [
                [[(1, r - r_j)], []],
                [[(g() * _sign(r_j) / (r_j - 1), r - 1)], [(1, r)]]])
            phi = _unipotent(field, [], [(res(theta_next.inverse() * Fraction(r_j - 1)), q)]) \
                * _diagonal(field, (a * _sign(r - r_j), 0), (b * _sign(r), 0))
        elif 2 * k <= r_j - 2:
            c = _binom(r_j - k - 1, k)
            fil = _lower(field, x_over_theta()) * PolyMatrix.build(field, [
                [[(1, r - r_j + k)], []],
                [[(g() * _sign(r_j) / ((r_j - 2 * k - 1) * c * c), r - k - 1)], [(1, r - k)]]])
            top = res(theta_next * p * Fraction(k * (r_j - k), r_j - 2 * k), "p Theta_next")
            bottom = res(theta_next.inverse() * Fraction(2 * (r_j - k - 1) * k + r_j - 1))
            phi = _unipotent(field, [(top, 0)], [(bottom, q)]) \
                * _diagonal(field, (a * _sign(r - r_j) / c, 0), (b * _sign(r) * c, 0))
        elif k == m and r_j == 2 * m:
            fil = _upper(field, theta_over_x()) * PolyMatrix.build(field, [
                [[(1, r - m)], []],
                [[(-g() * m * m, r - m - 1)], [(1, r - m)]]])
            phi = _unipotent(field, [], [(res(theta_next.inverse() * Fraction(2 * m * m - 1)), q)]) \
                * _diagonal(field, (a * _sign(r + 1) * m, 0), (b * _sign(r + 1) / m, 0))
        elif k == m:
            fil = _lower(field, x_over_theta() + g() * res(2 * spoly.harmonic(m))) \
                * _diagonal(field, (1, r - m - 1), (1, r - m))
            top = res(theta_next * p * (m * (m + 1)), "p Theta_next")
            bottom = res(theta_next.inverse() * Fraction(2 * m * (m + 1)))
            phi = _unipotent(field, [(top, 0)], [(bottom, q)]) \
                * _diagonal(field, (a * _sign(r + 1), 0), (b * _sign(r), 0))
        elif k <= r_j - 1:
            c = _binom(k, r_j - k - 1)
            c2 = (r_j - k) * _binom(k, r_j - k)
            fil = _upper(field, theta_over_x()) * PolyMatrix.build(field, [
                [[(1, r - r_j + k)], []],
                [[(g() * _sign(r_j - 1) * (2 * k - r_j + 1) * c * c, r - k - 1)], [(1, r - k)]]])
            top = res(theta_next * p * Fraction(k * (r_j - k), r_j - 2 * k), "p Theta_next")
            bottom = [(res(theta_next.inverse() * Fraction(2 * (r_j - k - 1) * k + r_j - 1)), q)]
            b_value = spq.b_value(r_j, k + 1) if (r_j, k) == (2 * m + 1, m + 1) else Fraction(0)
            if b_value:
                bottom.append((res((theta_next * x * p).inverse() * b_value, "b/(p Theta_next x)"), 0))
            phi = _unipotent(field, [(top, 0)], bottom) \
                * _diagonal(field, (a * _sign(r + 1) * c2, 0), (b * _sign(r - r_j + 1) / c2, 0))
        else:
            fil = _diagonal(field, (1, r), (1, r - r_j))
            top = res(units.ratio() * theta / (x * p ** r_j), "alpha Theta/(beta p^r_j x)")
            phi = _upper(field, top) * _diagonal(field, (a * _sign(r), 0), (b * _sign(r - r_j), 0))
    else:
        k = int(kp)
        if 2 * k <= r_j - 1:
            c1, c2 = _binom(r_j - k, k - 1), _binom(r_j - k, k)
            fil = _lower(field, x_over_theta()) * PolyMatrix.build(field, [
                [[(1, r - r_j + k)], [(g() * _sign(r_j) * (r_j - 2 * k + 1) * c1 * c1, r - r_j + k - 1)]],
                [[], [(1, r - k)]]])
            top = res(-theta_next * p * Fraction(k * (r_j - k), r_j - 2 * k), "p Theta_next")
            bottom = res(theta_next.inverse() * Fraction(2 * (r_j - k) * (k - 1) + r_j - 1))
            phi = _unipotent(field, [(top, 0)], [(bottom, q)]) \
                * _antidiagonal(field, (a * _sign(r) * k * c2, 0), (b * _sign(r - r_j + 1) / (k * c2), 0))
        elif k == m and r_j == 2 * m:
            fil = _lower(field, x_over_theta()) * PolyMatrix.build(field, [
                [[(1, r - m)], [(g() * m * m, r - m - 1)]],
                [[], [(1, r - m)]]])
            harmonic = spoly.harmonic(m) + spoly.harmonic(m - 1)
            top = res(-theta_next * p * (m * m * harmonic), "p Theta_next")
            bottom = res(theta_next.inverse() * Fraction(2 * m * m - 1))
            phi = _unipotent(field, [(top, 0)], [(bottom, q)]) \
                * _antidiagonal(field, (a * _sign(r) * m, 0), (b * _sign(r + 1) / m, 0))
        elif k == m + 1 and r_j == 2 * m + 1:
            fil = _upper(field, theta_over_x()) * _diagonal(field, (1, r - m), (1, r - m - 1))
            top = res(theta_next * p * (m * (m + 1)), "p Theta_next")
            bottom = res(theta_next.inverse() * Fraction(2 * m * (m + 1)))
            phi = _unipotent(field, [(top, 0)], [(bottom, q)]) \
                * _antidiagonal(field, (a * _sign(r + 1), 0), (b * _sign(r + 1), 0))
        elif k <= r_j - 1:
            c = _binom(k - 1, r_j - k)
            fil = _upper(field, theta_over_x()) * PolyMatrix.build(field, [
                [[(1, r - r_j + k)], [(g() * _sign(r_j - 1) / ((2 * k - r_j - 1) * c * c), r - r_j + k - 1)]],
                [[], [(1, r - k)]]])
            top = res(theta_next * p * Fraction(k * (r_j - k), 2 * k - r_j), "p Theta_next")
            bottom = [(res(theta_next.inverse() * Fraction(2 * (r_j - k) * (k - 1) + r_j - 1)), q)]
            b_value = spq.b_value(r_j, k)
            if b_value:
                bottom.append((res((theta_next * x * p).inverse() * b_value, "b/(p Theta_next x)"), 0))
            phi = _unipotent(field, [(top, 0)], bottom) \
                * _antidiagonal(field, (a * _sign(r - r_j) / c, 0), (b * _sign(r + 1) * c, 0))
        else:
            fil = _upper(field, theta_over_x()) * PolyMatrix.build(field, [
                [[(1, r)], [(g() * _sign(r_j - 1) / (r_j - 1), r - 1)]],
                [[], [(1, r - r_j)]]])
            top = -res(units.ratio() * x * p ** r_j / theta, "alpha p^r_j x/(beta Theta)")
            bottom = [(res(theta_next.inverse() * Fraction(r_j - 1)), q)]
            b_value = spq.b_value(r_j, r_j)
            if b_value:
                bottom.append((res((theta_next * x * p).inverse() * b_value, "b/(p Theta_next x)"), 0))
            phi = _unipotent(field, [(top, 0)], bottom) \
                * _antidiagonal(field, (a * _sign(r - r_j), 0), (b * _sign(r + 1), 0))
    return fil, phi, res.notes


def _monodromy_matrix(instance, j, field):
    """ [[0, 0], [(1 - delta_dot u^{p-1}) / Theta_j, 0]] with delta_dot of embedding j-1 """
    spec = instance.spec
    previous = (j - 1) % spec.f
    l_previous = ssupport.l_index(spec.r[previous], spec.kp[previous])
    delta_dot = spq.delta_value(spec.r[previous], l_previous).derivative_at_minus1 if l_previous else Fraction(0)
    res = _Reducer(field, j)
    c = res(instance.theta[j].inverse(), "1/Theta")
    return PolyMatrix.build(field, [[[], []], [[(c, 0), (-c * res(delta_dot), instance.p - 1)], []]])


def breuil_matrices(instance):
    """
    Mod p Breuil module of a validated instance
    Args:
        instance (Instance): Output of make_instance()
    Returns:
        (BreuilModule): M_N, M_Fil and M_phi per embedding, over F_p
    """
    field = sfield.ResidueField(instance.p, 1)
    monodromy, filtration, frobenius, notes = [], [], [], []
    for j in range(instance.f):
        fil, phi, branch_notes = _embedding_matrices(instance, j, field)
        monodromy.append(_monodromy_matrix(instance, j, field))
        filtration.append(fil)
        frobenius.append(phi)
        notes += branch_notes
        expected = 2 * instance.r - instance.spec.r[j]
        if fil.u_valuation_det() != expected:
            slib.print_error("j={0}: det M_Fil has u-valuation {1}, expected {2}".format(
                j, fil.u_valuation_det(), expected), True, slib.UnclassifiedShapeError, matrices=fil.to_json())
    return BreuilModule(instance.r, instance.spec.r, monodromy, filtration, frobenius, notes)


def _rank(matrix):
    if all(c.is_zero() for row in matrix for c in row):
        return 0
    det = matrix[0][0] * matrix[1][1] - matrix[0][1] * matrix[1][0]
    return 1 if det.is_zero() else 2


def monodromy_type(module):
    """ MT_j = rank of N^(j) modulo u """
    return [_rank(m.constant_term()) for m in module.monodromy]


#    _       _
#   | |_ ___| |_
#   | __/ __| __|
#   | |_\__ \ |_
#    \__|___/\__|
#
def orbit_exponent(degrees, r, p):
    """
    sum_t (r - deg[(-t) mod n]) p^t mod p^n - 1, n = len(degrees)
    Args:
        degrees (list): Filtration degrees along the Frobenius orbit, starting at embedding 0
        r (int): Weight
        p (int): Prime
    Returns:
        (int): Exponent of the fundamental character of niveau n
    """
    n = len(degrees)
    return sum((r - degrees[(-t) % n]) * p ** t for t in range(n)) % (p ** n - 1)


def _check_degrees(degrees, r):
    for d in degrees:
        if not isinstance(d, int) or not 0 <= d <= r:
            slib.print_error("Degree {0} outside [0, {1}]".format(d, r), True, slib.DomainError)


def tst_rank1(degrees, r, p=None):
    """
    Inertia exponent of the rank 1 module with Fil^r generated by u^{d_j} E^(j)
    f = 1: r - a; f = 2: (r - a) + (r - b) p mod p^2 - 1
    """
    p = slib.setting("prime", p)
    degrees = [int(d) for d in slib.u_enlist(degrees)]
    if len(degrees) not in (1, 2):
        slib.print_error("tst_rank1 covers f = 1, 2 only", True, slib.DomainError)
    _check_degrees(degrees, r)
    return orbit_exponent(degrees, r, p)


def tst_rank2_irred(i, a, b, r, p=None):
    """
    omega_4 exponents of the irreducible module M_i(a, b) (f = 2)
    Args:
        i (int): Embedding carrying the antidiagonal Frobenius
        a, b (list): Filtration degrees (a_0, a_1), (b_0, b_1), a != b
        r (int): Weight
    Returns:
        (list): The two conjugate exponents mod p^4 - 1
    """
    p = slib.setting("prime", p)
    a, b = [int(v) for v in a], [int(v) for v in b]
    if len(a) != 2 or len(b) != 2 or i not in (0, 1):
        slib.print_error("tst_rank2_irred needs f = 2 and i in {0, 1}", True, slib.DomainError)
    if a == b:
        slib.print_error("a and b must differ", True, slib.DomainError)
    _check_degrees(a + b, r)
    orbit = [a[0], b[1], b[0], a[1]] if i == 0 else [a[0], a[1], b[0], b[1]]
    first = orbit_exponent(orbit, r, p)
    return [first, first * p * p % (p ** 4 - 1)]


#         _               _  __
#     ___| | __ _ ___ ___(_)/ _|_   _
#    / __| |/ _` / __/ __| | |_| | | |
#   | (__| | (_| \__ \__ \ |  _| |_| |
#    \___|_|\__,_|___/___/_|_|  \__, |
#                               |___/
class ReductionReport(object):
    """ Semisimplification, monodromy type and extension verdict of a Breuil module """

    def __init__(self, kind, exponents, niveau, mt, verdict=None, diagonal=None, residue_degree=1,
                 branch_notes=None, sub_degrees=None):
        self.kind = kind
        self.exponents = exponents
        self.niveau = niveau
        self.mt = mt
        self.verdict = verdict
        self.diagonal = diagonal
        self.residue_degree = residue_degree
        self.branch_notes = branch_notes or []
        self.sub_degrees = sub_degrees

    def exponent_set(self):
        return sorted(self.exponents)

    def same_reduction(self, other):
        """ Equal kind, exponent multiset, MT and verdict """
        return (self.kind, self.exponent_set(), self.mt, self.verdict) == \
               (other.kind, other.exponent_set(), other.mt, other.verdict)

    def to_dict(self):
        return {
            "kind": self.kind,
            "diagonal": self.diagonal,
            "exponents": self.exponents,
            "niveau": self.niveau,
            "mt": self.mt,
            "verdict": self.verdict,
            "residue_degree": self.residue_degree,
            "branch_notes": self.branch_notes,
        }

    def __repr__(self):
        return "ReductionReport({0})".format(self.to_dict())


def _det2(v, w):
    return v[0] * w[1] - v[1] * w[0]


def _is_zero_vector(v):
    return v[0].is_zero() and v[1].is_zero()


def _apply_constant(matrix, v):
    return (matrix[0][0] * v[0] + matrix[0][1] * v[1], matrix[1][0] * v[0] + matrix[1][1] * v[1])


def _matmul(A, B):
    return [[A[i][0] * B[0][j] + A[i][1] * B[1][j] for j in range(2)] for i in range(2)]


def _kernel(rows, field):
    """ 'all', a spanning vector of a line, or None """
    nonzero = [row for row in rows if not _is_zero_vector(row)]
    if not nonzero:
        return "all"
    a, b = nonzero[0]
    candidate = (-b, a)
    if all((row[0] * candidate[0] + row[1] * candidate[1]).is_zero() for row in nonzero):
        return candidate
    return None


class _Embedding(object):
    """ Filtration data of one embedding: special line, degrees and the maps L_d """

    def __init__(self, module, j):
        self.j = j
        self.field = module.field
        fil = module.filtration[j]
        self.adj = fil.adjugate()
        det = fil.det()
        self.n = det.valuation()
        self.unit = det.coefficient(self.n)
        self.frobenius = module.frobenius[j].constant_term()
        for d in range(1, module.p - 1):
            if not all(entry.coefficient(d).is_zero() for row in module.frobenius[j].rows for entry in row):
                slib.print_error("j={0}: M_phi is not constant modulo u^(p-1)".format(j), True,
                                 slib.UnclassifiedShapeError, matrices=module.frobenius[j].to_json())
        self.monodromy = module.monodromy[j].constant_term()
        self.spaces = [self._space(d) for d in range(self.n + 1)]
        self.e1 = next(d for d, space in enumerate(self.spaces) if space is not None)
        self.e2 = next(d for d, space in enumerate(self.spaces) if space == "all")
        self.line = self.spaces[self.e1] if self.spaces[self.e1] != "all" else None

    def _space(self, d):
        """ {v : u^d v in Fil^r} as 'all', a line or None """
        rows = [(self.adj[i, 0].coefficient(k), self.adj[i, 1].coefficient(k))
                for i in range(2) for k in range(max(self.n - d, 0))]
        return _kernel(rows, self.field)

    def degree(self, v):
        for d, space in enumerate(self.spaces):
            if space == "all" or (space is not None and _det2(space, v).is_zero()):
                return d
        return self.n

    def reduction(self, d):
        """ Constant matrix of v -> w(0) with u^d v = M_Fil w """
        k = self.n - d
        return [[self.adj[i, c].coefficient(k) / self.unit for c in range(2)] for i in range(2)]

    def step(self, v):
        d = self.degree(v)
        return d, _apply_constant(self.frobenius, _apply_constant(self.reduction(d), v))

    def monodromy_allows(self, v):
        return _det2(_apply_constant(self.monodromy, v), v).is_zero()


class _SubModule(object):

    def __init__(self, degrees, lines):
        self.degrees = degrees
        self.lines = lines

    def complements(self, other):
        return all(not _det2(a, b).is_zero() for a, b in zip(self.lines, other.lines))

    def same(self, other):
        return all(_det2(a, b).is_zero() for a, b in zip(self.lines, other.lines))


class _NeedsExtension(Exception):
    pass


def _chain(embeddings, start, v):
    f = len(embeddings)
    degrees, lines = [None] * f, [None] * f
    current, j = v, start
    for _ in range(f):
        embedding = embeddings[j]
        if not embedding.monodromy_allows(current):
            return None
        d, image = embedding.step(current)
        if _is_zero_vector(image):
            return None
        degrees[j], lines[j] = d, current
        current, j = image, (j + 1) % f
    if not _det2(current, v).is_zero():
        return None
    return _SubModule(degrees, lines)


def _eigenvectors(matrix, field):
    """ Eigenvectors of non-zero eigenvalues; raises _NeedsExtension when they leave the field """
    trace = matrix[0][0] + matrix[1][1]
    det = matrix[0][0] * matrix[1][1] - matrix[0][1] * matrix[1][0]
    one, zero = field.one(), field.zero()
    if matrix[0][1].is_zero() and matrix[1][0].is_zero() and matrix[0][0] == matrix[1][1]:
        return [] if matrix[0][0].is_zero() else [(one, zero), (zero, one), (one, one)]
    discriminant = trace * trace - det * 4
    root = field.sqrt(discriminant) if discriminant.prime_value() is not None else None
    if root is None:
        raise _NeedsExtension()
    vectors = []
    for eigenvalue in {(trace + root) / 2, (trace - root) / 2}:
        if eigenvalue.is_zero():
            continue
        shifted = [[matrix[0][0] - eigenvalue, matrix[0][1]], [matrix[1][0], matrix[1][1] - eigenvalue]]
        kernel = _kernel([tuple(row) for row in shifted], field)
        if kernel not in (None, "all"):
            vectors.append(kernel)
    return vectors


def _submodules(module):
    embeddings = [_Embedding(module, j) for j in range(module.f)]
    field = module.field
    subs = []

    def add(sub):
        if sub is not None and not any(sub.same(s) for s in subs):
            subs.append(sub)

    for j, embedding in enumerate(embeddings):
        if embedding.line is not None:
            add(_chain(embeddings, j, embedding.line))
    cycle = [[field.one(), field.zero()], [field.zero(), field.one()]]
    for embedding in embeddings:
        cycle = _matmul(_matmul(embedding.frobenius, embedding.reduction(embedding.e2)), cycle)
    for v in _eigenvectors(cycle, field):
        add(_chain(embeddings, 0, v))
    return embeddings, subs


def _irreducible_orbit(module, embeddings):
    f = module.f
    start = next((j for j, e in enumerate(embeddings) if e.line is not None), None)
    if start is None:
        slib.print_error("No special line to start an orbit", True, slib.UnclassifiedShapeError,
                         matrices=module.to_dict())
    first = embeddings[start].line
    current, j, sequence = first, start, []
    for _ in range(2 * f):
        d, image = embeddings[j].step(current)
        if _is_zero_vector(image):
            slib.print_error("Orbit dies at j={0}".format(j), True, slib.UnclassifiedShapeError,
                             matrices=module.to_dict())
        sequence.append(d)
        current, j = image, (j + 1) % f
    if not _det2(current, first).is_zero():
        slib.print_error("Orbit of the special line does not close", True, slib.UnclassifiedShapeError,
                         matrices=module.to_dict())
    shift = (f - start) % f
    return sequence[shift:] + sequence[:shift]


def classify(module, max_residue_degree=None):
    """
    Rank 1 submodule search and inertia exponents
    Args:
        module (BreuilModule): Output of breuil_matrices()
        max_residue_degree (int): Largest residue field degree to adjoin (SETTINGS["max_residue_degree"])
    Returns:
        (ReductionReport): reducible (with diagonal exponents and verdict) or irreducible
    Raises:
        UnclassifiedShapeError: if the module matches no known shape
    """
    max_residue_degree = slib.setting("max_residue_degree", max_residue_degree)
    mt = monodromy_type(module)
    p, r, f = module.p, module.r, module.f
    try:
        embeddings, subs = _submodules(module)
    except _NeedsExtension:
        if module.field.k < 2 <= max_residue_degree:
            LOG.debug("Eigenvalues need F_{0}^2, extending".format(p))
            return classify(module.lift(2), max_residue_degree)
        slib.print_warning("Eigenvalues need F_{0}^2 but max_residue_degree={1}".format(p, max_residue_degree))
        return ReductionReport("reducible", [], f, mt, "undetermined", residue_degree=module.field.k,
                               branch_notes=module.notes + ["residue field degree 2 needed"])
    if subs:
        sub = subs[0]
        quotient = [2 * r - r_j - d for r_j, d in zip(module.r_vector, sub.degrees)]
        sub_exponent, quotient_exponent = orbit_exponent(sub.degrees, r, p), orbit_exponent(quotient, r, p)
        complement = any(sub.complements(other) for other in subs[1:])
        verdict = "non-split" if any(mt) or not complement else "split"
        LOG.debug("Submodule degrees {0}, {1} candidates, verdict {2}".format(sub.degrees, len(subs), verdict))
        return ReductionReport("reducible", sorted([quotient_exponent, sub_exponent]), f, mt, verdict,
                               diagonal=[quotient_exponent, sub_exponent], residue_degree=module.field.k,
                               branch_notes=module.notes, sub_degrees=sub.degrees)
    degrees = _irreducible_orbit(module, embeddings)
    first = orbit_exponent(degrees, r, p)
    exponents = [first, first * p ** f % (p ** (2 * f) - 1)]
    return ReductionReport("irreducible", exponents, 2 * f, mt, residue_degree=module.field.k,
                           branch_notes=module.notes)


def reduce_instance(instance):
    """ breuil_matrices then classify """
    return classify(breuil_matrices(instance))
