# -*- coding: utf-8 -*-
"""
@summary:       Command line front end: one subcommand per pipeline stage plus the table harness
@run:           sdmred --help (console script) or python -m sdmred
@license:       MIT
"""
import sys
import json
import argparse

from . import lib as slib
from . import logger as slog
from . import field as sfield
from . import pq as spq
from . import cases as scases
from . import support as ssupport
from . import breuil as sbreuil
from . import tables as stables

LOG = slog.logger("sdmred.cli")


#    _                   _
#   (_)_ __  _ __  _   _| |_ ___
#   | | '_ \| '_ \| | | | __/ __|
#   | | | | | |_) | |_| | |_\__ \
#   |_|_| |_| .__/ \__,_|\__|___/
#           |_|
def parse_elements(text):
    """
    Element list from the command line: "1/13,1" or JSON such as '["1/13", ["0", "2/13"]]'
    Returns:
        (list): ExactElements
    """
    text = slib.u_stringify(text).strip()
    if text.startswith("["):
        try:
            entries = json.loads(text)
        except ValueError:
            slib.print_error("Can't parse '{0}' as JSON".format(text), True, slib.DomainError)
    else:
        entries = slib.parse_list(text, lambda entry: entry.strip())
    return [sfield.coerce(entry) for entry in entries]


def parse_L(text):
    """ L list: "inf,3/2" or JSON """
    text = slib.u_stringify(text).strip()
    entries = json.loads(text) if text.startswith("[") else slib.parse_list(text, lambda entry: entry.strip())
    return ssupport.LInvariant.parse(entries)


def _case(args):
    return scases.CaseSpec.parse(args.r, args.kp)


def _common(suppress):
    """ Global flags, accepted before and after the subcommand """
    defaults = {"p": None, "ramification": None, "output": "json", "verbose": False}
    if suppress:
        defaults = {key: argparse.SUPPRESS for key in defaults}
    parser = argparse.ArgumentParser(add_help=False)
    parser.add_argument("--p", type=int, default=defaults["p"], help="Prime p (default: SETTINGS['prime'])")
    parser.add_argument("--ramification", "-e", type=int, default=defaults["ramification"],
                        help="Ramification e of Q[pi]/(pi^e - p) (default: SETTINGS['ramification'])")
    output = parser.add_mutually_exclusive_group()
    output.add_argument("--json", dest="output", action="store_const", const="json", default=defaults["output"],
                        help="JSON output (default)")
    output.add_argument("--text", dest="output", action="store_const", const="text", default=defaults["output"],
                        help="Plain text output")
    parser.add_argument("--verbose", "-v", action="store_true", default=defaults["verbose"], help="DEBUG logging")
    return parser


def _parse_args(argv=None):
    parser = argparse.ArgumentParser(prog="sdmred", parents=[_common(False)],
                                     description="Mod p reductions of semistable Galois representations")
    sub = parser.add_subparsers(dest="command")
    sub.required = True
    common = [_common(True)]

    pq = sub.add_parser("pq", parents=common, help="P/Q tables of Case (k)")
    pq.add_argument("--r", type=int, required=True, help="Weight r'")
    pq.add_argument("--k", type=int, required=True, help="Case index 0 <= k <= r'")
    pq.add_argument("--x", default=None, help="Rational x to specialise at")

    delta = sub.add_parser("delta", parents=common, help="delta_l(-1, x) and its T-derivative")
    delta.add_argument("--r", type=int, required=True, help="Weight r'")
    delta.add_argument("--l", type=int, required=True, help="Index 0 <= l <= m+1")
    delta.add_argument("--x", default=None, help="x, needed when delta depends on it")

    for name, help_text in (("constraints", "Equations and inequalities of a case"),
                            ("region", "Areal support of a case")):
        case = sub.add_parser(name, parents=common, help=help_text)
        case.add_argument("--r", required=True, help="Weights, e.g. 2,2")
        case.add_argument("--kp", required=True, help="k' per embedding, e.g. 1/2,inf")

    valid = sub.add_parser("valid-cases", parents=common, help="Valid k' tuples for r and J0")
    valid.add_argument("--r", required=True, help="Weights, e.g. 1,5")
    valid.add_argument("--j0", default="", help="Indices with k'_j = inf, e.g. 0")
    valid.add_argument("--all", action="store_true", help="Keep regions with empty interior")

    support = sub.add_parser("support", parents=common, help="L from x, or x from L")
    support.add_argument("--r", required=True, help="Weights")
    support.add_argument("--kp", required=True, help="k' per embedding")
    direction = support.add_mutually_exclusive_group(required=True)
    direction.add_argument("--x", help="x per embedding")
    direction.add_argument("--L", dest="L", help="L per embedding (inf on J0)")
    support.add_argument("--free-rho", default=None, help="rho_j used on J0 (default: SETTINGS['free_rho'])")

    reduce_ = sub.add_parser("reduce", parents=common, help="Breuil module and mod p reduction of an instance")
    reduce_.add_argument("--r", required=True, help="Weights")
    reduce_.add_argument("--kp", required=True, help="k' per embedding")
    reduce_.add_argument("--x", required=True, help="x per embedding")
    reduce_.add_argument("--theta", required=True, help="Theta per embedding")
    reduce_.add_argument("--lambda", dest="lam", default=None, help="Lambda per embedding (default: pi powers)")
    reduce_.add_argument("--weight", type=int, default=None, help="Common weight r (default: max r_j)")
    reduce_.add_argument("--matrices", action="store_true", help="Include the Breuil module matrices")

    table = sub.add_parser("reproduce-table", parents=common,
                           help="Check a fixture table, or all of them (--p and -e override the fixture's p and e)")
    table.add_argument("table", help="Table id, caption or 'all'")
    return parser.parse_args(argv)


#                                                 _
#     ___ ___  _ __ ___  _ __ ___   __ _ _ __   __| |___
#    / __/ _ \| '_ ` _ \| '_ ` _ \ / _` | '_ \ / _` / __|
#   | (_| (_) | | | | | | | | | | | (_| | | | | (_| \__ \
#    \___\___/|_| |_| |_|_| |_| |_|\__,_|_| |_|\__,_|___/
#
def _pq(args):
    table = spq.pq_table(args.r, args.k)
    result = table.to_dict()
    if 1 <= args.k <= args.r // 2:
        result["P_at_minus1"] = slib.format_rational(spq.p_at_minus1(args.r, args.k))
    if args.x is not None:
        x = slib.parse_rational(args.x)
        result["x"] = slib.format_rational(x)
        result["P_at_x"] = [str(table.P_at(i, x).as_expr()) for i in range(args.r)]
        result["Q_at_x"] = [str(table.Q_at(i, x).as_expr()) for i in range(args.r)]
    return result, True


def _delta(args):
    value = spq.delta_value(args.r, args.l)
    result = value.to_dict()
    if not value.depends_on_x or args.x is not None:
        x = parse_elements(args.x)[0] if args.x is not None else None
        result["value"] = spq.delta_at_minus1(args.r, args.l, x).to_json()
    if 1 <= args.l and 2 * args.l < args.r + 2:
        result["delta_dot"] = slib.format_rational(spq.delta_dot_at_minus1(args.r, args.l))
    return result, True


def _constraints(args):
    return scases.constraint_system(_case(args)).to_dict(), True


def _region(args):
    spec = _case(args)
    return dict(scases.areal_support(spec).to_dict(), case=spec.to_dict()), True


def _valid_cases(args):
    r = slib.parse_list(args.r, int)
    j0 = slib.parse_list(args.j0, int)
    valid = scases.enumerate_valid(slib.SETTINGS["prime"], len(r), r, j0, interior=not args.all)
    return {"r": r, "j0": j0, "count": len(valid),
            "cases": [[scases.format_kp(kp_j) for kp_j in kp] for kp in valid]}, True


def _support(args):
    spec = _case(args)
    if args.x is not None:
        return {"case": spec.to_dict(), "L": ssupport.L_from_x(spec, parse_elements(args.x)).to_json()}, True
    roots = ssupport.x_from_L(spec, parse_L(args.L), args.free_rho)
    return {"case": spec.to_dict(), "roots": [root.to_dict() for root in roots]}, True


def _reduce(args):
    spec = _case(args)
    lam = parse_elements(args.lam) if args.lam else None
    instance = sbreuil.make_instance(spec, parse_elements(args.x), parse_elements(args.theta), lam, args.weight)
    module = sbreuil.breuil_matrices(instance)
    report = sbreuil.classify(module)
    result = {"instance": instance.to_dict(), "report": report.to_dict()}
    if args.matrices:
        result["module"] = module.to_dict()
    return result, True


def _reproduce_table(args):
    if args.table == "all":
        reports = stables.reproduce_all(args.p, args.ramification)
    else:
        reports = [stables.reproduce_table(args.table, args.p, args.ramification)]
    passed = all(report.passed for report in reports)
    if args.output == "text":
        return "\n".join(report.to_text() for report in reports), passed
    return {"passed": passed, "tables": [report.to_dict() for report in reports]}, passed


COMMANDS = {
    "pq": _pq,
    "delta": _delta,
    "constraints": _constraints,
    "region": _region,
    "valid-cases": _valid_cases,
    "support": _support,
    "reduce": _reduce,
    "reproduce-table": _reproduce_table,
}


def _to_text(result, indent=""):
    if slib.is_string(result):
        return result
    lines = []
    for key in sorted(result):
        value = result[key]
        if isinstance(value, dict):
            lines.append("{0}{1}:".format(indent, key))
            lines.append(_to_text(value, indent + "  "))
        else:
            lines.append("{0}{1}: {2}".format(indent, key, json.dumps(value, ensure_ascii=False)))
    return "\n".join(lines)


def main(argv=None):
    """
    Runs one subcommand
    Returns:
        (int): 0 on success, 1 when an assertion fails, 2 on an SdmError
    """
    args = _parse_args(argv)
    slog.set_debug(args.verbose or slib.SETTINGS["debug"])
    previous = dict(slib.SETTINGS)
    if args.p is not None:
        slib.SETTINGS["prime"] = args.p
    if args.ramification is not None:
        slib.SETTINGS["ramification"] = args.ramification
    try:
        result, passed = COMMANDS[args.command](args)
    except slib.SdmError as error:
        print("[error] {0}: {1}".format(type(error).__name__, error), file=sys.stderr)
        return 2
    finally:
        slib.SETTINGS.update(previous)
    if args.output == "text":
        sys.stdout.write(_to_text(result) + "\n")
    else:
        sys.stdout.write(slib.dump_json(result))
    return 0 if passed else 1


if __name__ == "__main__":
    sys.exit(main())
