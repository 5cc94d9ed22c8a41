"""Command-line front end: check, nf, d, wedge, calculus-verify, catalog.

Exit codes: 0 for a smooth verdict or a successful computation, 2 for an
inconclusive verdict or a failed identity check, 1 for usage, parse or
validation errors.  Diagnostics go to standard error; results to standard
output; ``--json`` switches the result to the report schema.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import __version__
from .calculus import Calculus, DifferentialForm
from .catalog import get_entry, list_entries
from .errors import AmbiskewError
from .ore import AlgebraElement
from .scalars import Scalar
from .smoothness import (
    SMOOTH,
    VerifyOptions,
    check_auto,
    check_cor37,
    check_nosigma,
    check_sisigma,
    verify_calculus,
)
from .specfile import parse_expression, parse_specfile

_ROUTES = {
    "auto": check_auto,
    "nosigma": check_nosigma,
    "sisigma": check_sisigma,
    "cor37": check_cor37,
}


def _add_verify_flags(sub):
    sub.add_argument("--max-degree", type=int, default=4, metavar="N",
                     help="degree bound for random verification elements")
    sub.add_argument("--trials", type=int, default=50, metavar="N",
                     help="random trials per degree in the reconstruction check")
    sub.add_argument("--seed", type=int, default=0, metavar="N",
                     help="seed for the verification RNG")


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="ambiskew",
        description="exact smoothness certification for ambiskew polynomial rings",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_check = sub.add_parser("check", help="certify a presentation from a spec file")
    p_check.add_argument("specfile")
    p_check.add_argument("--route", choices=sorted(_ROUTES), default="auto")
    p_check.add_argument("--json", action="store_true")
    _add_verify_flags(p_check)

    p_nf = sub.add_parser("nf", help="normal form of an expression")
    p_nf.add_argument("specfile")
    p_nf.add_argument("--expr", required=True)

    p_d = sub.add_parser("d", help="exterior derivative of an expression")
    p_d.add_argument("specfile")
    p_d.add_argument("--expr", required=True)

    p_wedge = sub.add_parser("wedge", help="wedge product of two form expressions")
    p_wedge.add_argument("specfile")
    p_wedge.add_argument("--forms", nargs=2, required=True, metavar=("F1", "F2"))

    p_cv = sub.add_parser("calculus-verify",
                          help="twist, Leibniz and reconstruction checks")
    p_cv.add_argument("specfile")
    p_cv.add_argument("--json", action="store_true")
    _add_verify_flags(p_cv)

    p_cat = sub.add_parser("catalog", help="built-in example presentations")
    cat_sub = p_cat.add_subparsers(dest="catalog_command", required=True)
    cat_sub.add_parser("list", help="list catalog entries")
    p_run = cat_sub.add_parser("run", help="certify a catalog entry")
    p_run.add_argument("name")
    p_run.add_argument("--param", action="append", default=[], metavar="NAME=EXPR",
                       help="bind an entry parameter (repeatable)")
    p_run.add_argument("--json", action="store_true")
    _add_verify_flags(p_run)
    return parser


def _options(args):
    return VerifyOptions(max_degree=args.max_degree, trials=args.trials,
                         seed=args.seed)


def report_emit(cert, options: VerifyOptions) -> str:
    """Deterministic JSON report for a certificate."""
    payload = cert.to_dict()
    payload["meta"] = {
        "version": __version__,
        "seed": options.seed,
        "max_degree": options.max_degree,
        "trials": options.trials,
    }
    return json.dumps(payload, indent=2) + "\n"


def _emit_certificate(cert, options, as_json, out):
    if as_json:
        out.write(report_emit(cert, options))
    else:
        for line in cert.summary_lines():
            out.write(line + "\n")
    return 0 if cert.verdict == SMOOTH else 2


def _load_presentation(path):
    try:
        with open(path, "r", encoding="utf-8") as handle:
            text = handle.read()
    except OSError as exc:
        raise AmbiskewError(f"cannot read {path}: {exc.strerror or exc}")
    return parse_specfile(text)


def _render_value(value):
    if isinstance(value, (Scalar, AlgebraElement, DifferentialForm)):
        return value.render()
    return str(value)


def _cmd_check(args, out):
    pres = _load_presentation(args.specfile)
    cert = _ROUTES[args.route](pres, _options(args))
    return _emit_certificate(cert, _options(args), args.json, out)


def _cmd_nf(args, out):
    pres = _load_presentation(args.specfile)
    value = parse_expression(args.expr, pres)
    out.write(_render_value(value) + "\n")
    return 0


def _cmd_d(args, out):
    pres = _load_presentation(args.specfile)
    calc = Calculus(pres)
    value = parse_expression(args.expr, pres, calculus=calc)
    if isinstance(value, Scalar):
        value = pres.from_scalar(value)
    if isinstance(value, AlgebraElement):
        value = calc.from_element(value)
    out.write(calc.d(value).render() + "\n")
    return 0


def _cmd_wedge(args, out):
    pres = _load_presentation(args.specfile)
    calc = Calculus(pres)
    values = []
    for text in args.forms:
        value = parse_expression(text, pres, calculus=calc)
        if isinstance(value, Scalar):
            value = pres.from_scalar(value)
        if isinstance(value, AlgebraElement):
            value = calc.from_element(value)
        values.append(value)
    out.write(calc.wedge(values[0], values[1]).render() + "\n")
    return 0


def _cmd_calculus_verify(args, out):
    pres = _load_presentation(args.specfile)
    options = _options(args)
    ok, detail = verify_calculus(pres, options)
    calc = Calculus(pres)
    report = calc.integrability_check(
        max_coeff_degree=min(options.max_degree, 3),
        trials=max(1, options.trials),
        seed=options.seed,
    )
    if args.json:
        payload = {
            "name": pres.name,
            "ok": ok and report.ok,
            "detail": detail,
            "degrees": [
                {"degree": e.degree, "checks": e.checks, "ok": e.ok,
                 "failure": e.failure}
                for e in report.entries
            ],
            "meta": {
                "version": __version__,
                "seed": options.seed,
                "max_degree": options.max_degree,
                "trials": options.trials,
            },
        }
        out.write(json.dumps(payload, indent=2) + "\n")
    else:
        for e in report.entries:
            status = "pass" if e.ok else f"FAIL ({e.failure})"
            out.write(f"degree {e.degree}: {e.checks} checks, {status}\n")
        if not ok:
            out.write(f"verification failed: {detail}\n")
        else:
            out.write("twist maps, Leibniz rule and reconstruction identities hold\n")
    return 0 if ok and report.ok else 2


def _cmd_catalog(args, out):
    if args.catalog_command == "list":
        for entry in list_entries():
            params = f" (parameters: {', '.join(entry.param_names)})" if entry.param_names else ""
            out.write(f"{entry.name:20s} {entry.description}{params}\n")
        return 0
    entry = get_entry(args.name)
    bindings = {}
    for item in args.param:
        name, sep, value = item.partition("=")
        if not sep:
            raise AmbiskewError(f"--param needs NAME=EXPR, got {item!r}")
        bindings[name.strip()] = value.strip()
    options = _options(args)
    cert = entry.certify(bindings, options)
    return _emit_certificate(cert, options, args.json, out)


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 1
    try:
        if args.command == "check":
            return _cmd_check(args, out)
        if args.command == "nf":
            return _cmd_nf(args, out)
        if args.command == "d":
            return _cmd_d(args, out)
        if args.command == "wedge":
            return _cmd_wedge(args, out)
        if args.command == "calculus-verify":
            return _cmd_calculus_verify(args, out)
        if args.command == "catalog":
            return _cmd_catalog(args, out)
    except AmbiskewError as exc:
        err.write(f"error: {exc}\n")
        return 1
    except ValueError as exc:
        err.write(f"error: {exc}\n")
        return 1
    return 1


def entry_point():
    sys.exit(main())


if __name__ == "__main__":
    entry_point()
