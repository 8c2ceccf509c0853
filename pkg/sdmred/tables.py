# -*- coding: utf-8 -*-
"""
@summary:       Table fixtures: loading, evaluation of every sample through the full pipeline and pass/fail reports
@run:           import sdmred.tables as stables (suggested)
@license:       MIT
"""
import os
import re
import json
import glob

import sympy

from . import lib as slib
from . import logger as slog
from . import field as sfield
from . import cases as scases
from . import support as ssupport
from . import breuil as sbreuil

LOG = slog.logger("sdmred.tables")
FIXTURES_DIR = os.path.abspath(os.path.join(__file__, os.pardir, "fixtures"))
_COMPARISON = re.compile(r"^\s*(<=|>=|==|=|<|>)\s*(\S+)\s*$")
EXPECTED_KEYS = ("kind", "exponents", "diagonal", "niveau", "mt", "verdict", "residue_degree")


def fixtures_dir():
    """ SETTINGS["fixtures_dir"], or the packaged fixtures """
    return slib.setting("fixtures_dir") or FIXTURES_DIR


#     __ _      _
#    / _(_)_  _| |_ _   _ _ __ ___  ___
#   | |_| \ \/ / __| | | | '__/ _ \/ __|
#   |  _| |>  <| |_| |_| | | |  __/\__ \
#   |_| |_/_/\_\\__|\__,_|_|  \___||___/
#
class FixtureRow(object):
    """ One row: an areal support to compare, or samples with their expected reduction """

    def __init__(self, index, data):
        self.index = index
        self.label = data.get("label", "row {0}".format(index))
        self.kp = [scases.parse_kp(slib.u_stringify(v)) for v in data["kp"]] if "kp" in data else None
        self.condition = list(data.get("condition", []))
        self.expected = dict(data.get("expected", {}))
        self.samples = list(data.get("samples", []))
        self.region = data.get("region")
        unknown = set(self.expected) - set(EXPECTED_KEYS)
        if unknown:
            slib.print_error("Row '{0}': unknown expected keys {1}".format(self.label, sorted(unknown)), True,
                             slib.FixtureError)
        if self.region is None and not self.samples:
            slib.print_error("Row '{0}' has no sample point".format(self.label), True, slib.FixtureError)
        if self.region is not None and self.kp is None:
            slib.print_error("Region row '{0}' needs kp".format(self.label), True, slib.FixtureError)


class TableFixture(object):
    """
    A reproduced table: caption, fixed r and J0, and its rows
    """

    def __init__(self, data, path=None):
        self.path = path
        try:
            self.id = data["id"]
            self.caption = data["caption"]
            self.r = [int(r_j) for r_j in data["r"]]
            self.p = int(data.get("p", slib.SETTINGS["prime"]))
            self.e = int(data.get("e", slib.SETTINGS["ramification"]))
            self.j0 = frozenset(int(j) for j in data.get("j0", []))
            self.weight = data.get("weight")
            self.rows = [FixtureRow(index, row) for index, row in enumerate(data["rows"])]
        except (KeyError, TypeError, ValueError) as error:
            slib.print_error("Malformed fixture {0}: {1}".format(path or "", error), True, slib.FixtureError)
        self._valid = {}

    @classmethod
    def load(cls, path):
        try:
            with open(path, 'r') as f:
                data = json.load(f)
        except (IOError, OSError, ValueError) as error:
            slib.print_error("Can't read fixture {0}: {1}".format(path, error), True, slib.FixtureError)
        fixture = cls(data, path)
        LOG.info("Loaded fixture '{0}' ({1} rows)".format(fixture.id, len(fixture.rows)))
        return fixture

    @property
    def f(self):
        return len(self.r)

    def valid_cases(self, p):
        """ Valid k' tuples for (r, J0), cached per prime """
        if p not in self._valid:
            self._valid[p] = scases.enumerate_valid(p, self.f, self.r, self.j0)
        return self._valid[p]

    def matches(self, key):
        stem = os.path.splitext(os.path.basename(self.path))[0] if self.path else None
        return key in (self.id, self.caption, stem)


def fixture_paths(directory=None):
    return sorted(glob.glob(os.path.join(directory or fixtures_dir(), "*.json")))


def load_fixture(key, directory=None):
    """
    Finds a fixture by id, caption or file name
    Args:
        key (unicode): Table id or caption
        directory (unicode): Fixture directory (defaults to fixtures_dir())
    Returns:
        (TableFixture): The fixture
    Raises:
        FixtureError: if no fixture matches
    """
    for path in fixture_paths(directory):
        fixture = TableFixture.load(path)
        if fixture.matches(key):
            return fixture
    slib.print_error("No fixture '{0}' in {1}".format(key, directory or fixtures_dir()), True, slib.FixtureError)


def load_all(directory=None):
    return [TableFixture.load(path) for path in fixture_paths(directory)]


#                        _ _           _
#    _ __  _ __ ___  __| (_) ___ __ _| |_ ___  ___
#   | '_ \| '__/ _ \/ _` | |/ __/ _` | __/ _ \/ __|
#   | |_) | | |  __/ (_| | | (_| (_| | ||  __/\__ \
#   | .__/|_|  \___|\__,_|_|\___\__,_|\__\___||___/
#   |_|
def _evaluate_polynomial(expr, values, e, p):
    symbols = sorted(expr.free_symbols, key=str)
    missing = [str(s) for s in symbols if str(s) not in values]
    if missing:
        slib.print_error("Unknown symbols {0} in predicate".format(missing), True, slib.FixtureError)
    if not symbols:
        return sfield.coerce(slib.to_fraction(expr), e, p)
    try:
        poly = sympy.Poly(expr, *symbols, domain=sympy.QQ)
    except sympy.PolynomialError as error:
        slib.print_error("Predicate is not polynomial: {0}".format(error), True, slib.FixtureError)
    total = sfield.coerce(0, e, p)
    for exponents, c in poly.terms():
        term = sfield.coerce(slib.to_fraction(c), e, p)
        for symbol, n in zip(symbols, exponents):
            term = term * values[str(symbol)] ** n
        total = total + term
    return total


def evaluate_expression(text, values, e, p):
    """
    Exact value of a rational expression in p, x0.., theta0..
    Args:
        text (unicode): Expression, e.g. "p*x0**2 - 4"
        values (dict): ExactElements by symbol name
    Returns:
        (ExactElement): The value
    """
    try:
        expr = sympy.sympify(text)
    except (sympy.SympifyError, TypeError) as error:
        slib.print_error("Can't parse predicate '{0}': {1}".format(text, error), True, slib.FixtureError)
    numerator, denominator = sympy.fraction(sympy.together(expr))
    return _evaluate_polynomial(numerator, values, e, p) / _evaluate_polynomial(denominator, values, e, p)


def compare(value, text):
    """ value (ExtendedRational) against a comparison like "> 0", "= inf" """
    match = _COMPARISON.match(slib.u_stringify(text))
    if not match:
        slib.print_error("Can't parse comparison '{0}'".format(text), True, slib.FixtureError)
    relation, bound = match.group(1), sfield.parse_extended(match.group(2))
    if relation == "<":
        return value < bound
    if relation == "<=":
        return value <= bound
    if relation == ">":
        return value > bound
    if relation == ">=":
        return value >= bound
    return value == bound


def check_condition(condition, t, T, values, e, p):
    """
    Evaluates a row condition at a sample
    Args:
        condition (list): Linear relations over t0.., T0.. and {"expr", "valuation"} predicates
        t (list): v_p(x_j), INF allowed
        T (list): v_p(Theta_j)
        values (dict): ExactElements for p, x_j and theta_j
    Returns:
        (list): The predicates that fail
    """
    mapping = {scases.t_symbol(j): v for j, v in enumerate(t)}
    mapping.update({scases.T_symbol(j): v for j, v in enumerate(T)})
    failed = []
    for predicate in condition:
        if isinstance(predicate, dict):
            if "expr" not in predicate or "valuation" not in predicate:
                slib.print_error("Predicate needs 'expr' and 'valuation': {0}".format(predicate), True,
                                 slib.FixtureError)
            value = evaluate_expression(predicate["expr"], values, e, p)
            if not compare(value.valuation(), predicate["valuation"]):
                failed.append("v({0}) {1}".format(predicate["expr"], predicate["valuation"]))
        elif not scases.Region.parse(list(mapping), [predicate]).contains(mapping):
            failed.append(predicate)
    return failed


#                   _
#    _ __ _   _ _ __ | |
#   | '__| | | | '_ \| |
#   | |  | |_| | | | |_|
#   |_|   \__,_|_| |_(_)
#
def _valuations(x):
    return [v.valuation() if v.is_zero() else v.valuation().fraction() for v in x]


def _candidates(spec, x, L):
    if x is not None:
        return [x]
    return [list(root) for root in ssupport.x_from_L(spec, L)]


def _feasible(spec, x):
    """ The CaseSolution when v_p(x) lies in the areal support of the case, else None """
    t = _valuations(x)
    region = scases.areal_support(spec)
    if not region.contains({scases.t_symbol(j): t[j] for j in spec.finite_indices}):
        return None
    return scases.solve_cyclic(spec, t)


def select_case(fixture, p, x=None, L=None):
    """
    First valid case (in the order of enumerate_valid) whose region holds v_p(x)
    Args:
        fixture (TableFixture): Fixes r and J0
        p (int): Prime
        x (list): ExactElements, or None to solve x_from_L per case
        L (LInvariant): Used when x is None
    Returns:
        (tuple): (CaseSpec, x, CaseSolution)
    """
    for kp in fixture.valid_cases(p):
        spec = scases.CaseSpec(fixture.r, kp, p)
        for candidate in _candidates(spec, x, L):
            solution = _feasible(spec, candidate)
            if solution is not None:
                LOG.debug("Selected {0}".format(spec))
                return spec, candidate, solution
    slib.print_error("No valid case holds the sample", True, slib.InfeasibleError)


def _theta(solution, e, p):
    theta = []
    for T_j in solution.T:
        if (T_j * e).denominator != 1:
            slib.print_error("v(Theta)={0} is not in (1/{1})Z, give theta explicitly".format(T_j, e), True,
                             slib.FixtureError)
        theta.append(sfield.pi_power(int(T_j * e), e, p))
    return theta


def _elements(entries, e, p):
    return [sfield.coerce(v, e, p) for v in slib.u_enlist(entries)]


def evaluate_sample(fixture, row, sample, p, e):
    """
    Runs one sample through x_from_L (or the given x), case selection, breuil_matrices and classify
    Returns:
        (dict): case, t, T and the reduction report
    """
    kp = [scases.parse_kp(slib.u_stringify(v)) for v in sample["kp"]] if "kp" in sample else row.kp
    x = L = None
    if "x" in sample:
        x = _elements(sample["x"], e, p)
    elif "L" in sample:
        L = ssupport.LInvariant.parse(sample["L"], e, p)
    else:
        slib.print_error("Sample of row '{0}' needs x or L".format(row.label), True, slib.FixtureError)
    if kp is None:
        spec, x, solution = select_case(fixture, p, x, L)
    else:
        spec = scases.CaseSpec(fixture.r, kp, p)
        roots = _candidates(spec, x, L)
        if not roots:
            slib.print_error("L has no x for {0}".format(spec), True, slib.InfeasibleError)
        x = roots[0]
        solution = None if "theta" in sample else scases.solve_cyclic(spec, _valuations(x))
        if solution is None and "theta" not in sample:
            slib.print_error("x is infeasible for {0}".format(spec), True, slib.InfeasibleError)
    theta = _elements(sample["theta"], e, p) if "theta" in sample else _theta(solution, e, p)
    lam = _elements(sample["lambda"], e, p) if "lambda" in sample else None
    instance = sbreuil.make_instance(spec, x, theta, lam, fixture.weight, e)
    report = sbreuil.reduce_instance(instance)
    values = {"p": sfield.coerce(p, e, p)}
    values.update({"x{0}".format(j): v for j, v in enumerate(x)})
    values.update({"theta{0}".format(j): v for j, v in enumerate(theta)})
    return {
        "case": spec,
        "t": instance.t(),
        "T": instance.T(),
        "values": values,
        "report": report,
    }


def _mismatches(expected, report):
    actual = report.to_dict()
    mismatches = []
    for key, value in sorted(expected.items()):
        got = actual[key]
        if key == "exponents" and got is not None:
            got, value = sorted(got), sorted(value)
        if got != value:
            mismatches.append("{0}: expected {1}, got {2}".format(key, value, got))
    return mismatches


#                             _
#    _ __ ___ _ __   ___  _ __| |_ ___
#   | '__/ _ \ '_ \ / _ \| '__| __/ __|
#   | | |  __/ |_) | (_) | |  | |_\__ \
#   |_|  \___| .__/ \___/|_|   \__|___/
#            |_|
class SampleResult(object):

    def __init__(self, index, passed, messages, detail=None):
        self.index = index
        self.passed = passed
        self.messages = messages
        self.detail = detail or {}

    def to_dict(self):
        return dict(self.detail, sample=self.index, passed=self.passed, messages=self.messages)


class RowReport(object):

    def __init__(self, row, results):
        self.row = row
        self.results = results

    @property
    def passed(self):
        return all(result.passed for result in self.results)

    def to_dict(self):
        return {"row": self.row.index, "label": self.row.label, "passed": self.passed,
                "samples": [result.to_dict() for result in self.results]}


class TableReport(object):
    """ Pass/fail per row, ordered by row index """

    def __init__(self, fixture, rows):
        self.fixture = fixture
        self.rows = rows

    @property
    def passed(self):
        return all(row.passed for row in self.rows)

    def failures(self):
        return [row for row in self.rows if not row.passed]

    def to_dict(self):
        return {"id": self.fixture.id, "caption": self.fixture.caption, "passed": self.passed,
                "rows": [row.to_dict() for row in self.rows]}

    def to_text(self):
        lines = ["{0}: {1}".format(self.fixture.id, self.fixture.caption)]
        for row in self.rows:
            lines.append("  [{0}] {1}".format("PASS" if row.passed else "FAIL", row.row.label))
            for result in row.results:
                lines += ["      - {0}".format(message) for message in result.messages]
        lines.append("{0}/{1} rows passed".format(len(self.rows) - len(self.failures()), len(self.rows)))
        return "\n".join(lines)


def _region_result(fixture, row, p):
    spec = scases.CaseSpec(fixture.r, row.kp, p)
    computed = scases.areal_support(spec)
    expected = scases.Region.parse(computed.variables, row.region)
    passed = computed == expected
    messages = [] if passed else ["expected {0}, got {1}".format(expected.to_strings(), computed.to_strings())]
    return SampleResult(0, passed, messages, {"case": spec.to_dict(), "region": computed.to_strings()})


def _sample_result(fixture, row, index, sample, p, e):
    try:
        evaluation = evaluate_sample(fixture, row, sample, p, e)
    except slib.FixtureError:
        raise
    except slib.SdmError as error:
        return SampleResult(index, False, ["{0}: {1}".format(type(error).__name__, error)])
    report = evaluation["report"]
    messages = _mismatches(row.expected, report)
    failed = check_condition(row.condition, evaluation["t"], evaluation["T"], evaluation["values"], e, p)
    messages += ["condition fails: {0}".format(predicate) for predicate in failed]
    detail = {
        "case": evaluation["case"].to_dict(),
        "t": [str(v) if scases.is_infinite(v) else slib.format_rational(v) for v in evaluation["t"]],
        "T": [slib.format_rational(v) for v in evaluation["T"]],
        "report": report.to_dict(),
    }
    return SampleResult(index, not messages, messages, detail)


@slib.timer
def reproduce_table(key, p=None, e=None, directory=None):
    """
    Evaluates every row of a fixture
    Args:
        key (unicode): Table id or caption
        p (int): Prime override (defaults to the fixture's)
        e (int): Ramification override (defaults to the fixture's)
        directory (unicode): Fixture directory
    Returns:
        (TableReport): Per-row pass/fail
    Raises:
        FixtureError: on missing or malformed fixtures
    """
    fixture = key if isinstance(key, TableFixture) else load_fixture(key, directory)
    p = p or fixture.p
    e = e or fixture.e
    rows = []
    for row in fixture.rows:
        if row.region is not None:
            results = [_region_result(fixture, row, p)]
        else:
            results = [_sample_result(fixture, row, index, sample, p, e) for index, sample in enumerate(row.samples)]
        rows.append(RowReport(row, results))
    report = TableReport(fixture, rows)
    LOG.info("Table {0}: {1}/{2} rows passed".format(fixture.id, len(rows) - len(report.failures()), len(rows)))
    return report


def reproduce_all(p=None, e=None, directory=None):
    return [reproduce_table(fixture, p, e) for fixture in load_all(directory)]
