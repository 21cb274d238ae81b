"""Command line front end: ``qcsolve <command> ...``.

Exit codes: 0 success, 1 solver halt (or invalid algebra for ``validate``),
2 verification failure, 64 usage, 65 parse error, 66 validation error.
Errors go to standard error as one JSON object per line.
"""

import argparse
import json
import logging
import re
import sys
from fractions import Fraction
from pathlib import Path

from qcsolve import wdvv
from qcsolve.algebra import validate_algebra
from qcsolve.dsl import (DefinitionError, ParseError, build_algebra, build_problem,
                         definition_from_problem, format_definition, parse_definition)
from qcsolve.identities import run_all
from qcsolve.presets import PRESETS, BadParams, UnknownPreset, get_preset
from qcsolve.problem import InvalidAlgebra
from qcsolve.solver import POLICIES, MissingLowerValue, SolutionTable, reconstruct, verify_table
from qcsolve.tables import FORMATS, TableFormatError, export_table, guess_format, import_table

EX_USAGE, EX_PARSE, EX_INVALID = 64, 65, 66


class CommandError(Exception):
    def __init__(self, code, kind, message, **extra):
        super().__init__(message)
        self.code, self.kind, self.extra = code, kind, extra


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise CommandError(EX_USAGE, "usage", message)


def _rational(text):
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational: {text!r}") from None


def _vector(text):
    body = text.strip().strip("()")
    try:
        return tuple(int(x) for x in body.split(",") if x.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer vector: {text!r}") from None


_PIN = re.compile(r"^\s*N\(([^;]*);([^)]*)\)\s*=\s*(\S+)\s*$")


def _pin(text):
    m = _PIN.match(text)
    if not m:
        raise argparse.ArgumentTypeError(f"pins look like N(1,0;0,2)=1/2, got {text!r}")
    return (_vector(m.group(1)), _vector(m.group(2))), _rational(m.group(3))


def _param(text):
    key, sep, val = text.partition("=")
    if not sep or not key:
        raise argparse.ArgumentTypeError(f"params look like K=V, got {text!r}")
    return key, val


def _read(path):
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise CommandError(EX_USAGE, "io", f"cannot read {path}: {exc.strerror}") from None


def _load(path, dbound=None, validate=True):
    try:
        defn = parse_definition(_read(path))
    except ParseError as exc:
        raise CommandError(EX_PARSE, "parse", str(exc), file=str(path), line=exc.line,
                           column=exc.col, expected=list(exc.expected)) from None
    try:
        return build_problem(defn, dbound=dbound, validate=validate)
    except (DefinitionError, ValueError) as exc:
        kind = "validation" if isinstance(exc, InvalidAlgebra) else "definition"
        raise CommandError(EX_INVALID, kind, str(exc), file=str(path)) from None


def _load_table(path, problem):
    try:
        return import_table(_read(path), guess_format(path), problem)
    except TableFormatError as exc:
        raise CommandError(EX_PARSE, "table", str(exc), file=str(path)) from None


# -- commands -------------------------------------------------------------------


def cmd_validate(args, out):
    try:
        defn = parse_definition(_read(args.file))
        alg = build_algebra(defn)
    except ParseError as exc:
        raise CommandError(EX_PARSE, "parse", str(exc), line=exc.line, column=exc.col,
                           expected=list(exc.expected)) from None
    except (DefinitionError, ValueError) as exc:
        raise CommandError(EX_INVALID, "definition", str(exc)) from None
    report = validate_algebra(alg)
    for line in report.lines():
        print(line, file=out)
    print("valid" if report.ok else "invalid", file=out)
    return 0 if report.ok else 1


def cmd_solve(args, out):
    problem = _load(args.file, args.dbound)
    seeds = _load_table(args.seed, problem) if args.seed else SolutionTable(algebra=problem.name)
    pins = dict(args.pin or [])
    if pins and args.policy != "pins":
        log = logging.getLogger("qcsolve")
        log.warning("--pin has no effect unless --policy pins")
    res = reconstruct(problem, seeds, args.bound, policy=args.policy, pins=pins)
    alg = problem.algebra
    for rid, val in res.seed_violations:
        print(f"seed relation {rid.label(alg)} fails: residual {val}", file=out)
    for rep in res.reports:
        b = ",".join(map(str, rep.beta))
        print(f"beta=({b}) relations={rep.n_relations} unknowns={rep.n_unknowns} "
              f"rank={rep.rank} status={rep.status}", file=out)
        if rep.free:
            print("  free: " + " ".join(str(v) for v in rep.free), file=out)
        if rep.witness:
            tags = [t.label(alg) for t in rep.witness]
            print(f"  witness: {' '.join(tags)} residual {rep.residual}", file=out)
    Path(args.out).write_text(export_table(res.table, guess_format(args.out), problem),
                              encoding="utf-8")
    print(f"table: {len(res.table)} entries, status {res.table.status}", file=out)
    return 1 if res.halted else 0


def cmd_verify(args, out):
    problem = _load(args.file, args.dbound)
    table = _load_table(args.table, problem)
    res = verify_table(problem, table, args.bound, zero_default=args.zero_default)
    print(res.describe(problem.algebra), file=out)
    return 0 if res.ok else 2


def cmd_relations(args, out):
    problem = _load(args.file, args.dbound)
    beta = args.beta
    if len(beta) != problem.r or not problem.cone.contains(beta) or not any(beta):
        raise CommandError(EX_USAGE, "usage", f"beta {beta} is not a curve class")
    if args.degree is not None and len(args.degree) != problem.s:
        raise CommandError(EX_USAGE, "usage", f"degree needs {problem.s} entries")
    alg = problem.algebra
    rels = wdvv.enumerate_relations(problem, beta, args.degree)
    for rid, poly in rels:
        print(f"{rid.label(alg)}: {poly} = 0", file=out)
    print(f"{len(rels)} relations", file=out)
    return 0


def cmd_count(args, out):
    try:
        a, b = wdvv.count_formulas(args.rank)
        brute = wdvv.brute_count(args.rank) if args.rank <= 10 else None
    except (wdvv.NonIntegral, wdvv.RangeExceeded, ValueError) as exc:
        raise CommandError(EX_USAGE, "usage", str(exc)) from None
    print(f"mod sign: {a}", file=out)
    print(f"two of three: {b}", file=out)
    if brute is None:
        print("brute force: skipped (rank > 10)", file=out)
    else:
        print(f"brute force: {brute[0]} {brute[1]}", file=out)
    return 0


def cmd_identities(args, out):
    problem = _load(args.file, args.dbound)
    results = run_all(problem, args.samples, seed=args.seed_rng, bound=args.bound)
    for res in results:
        print(res.line(), file=out)
    return 0 if all(r.ok or r.total == 0 for r in results) else 2


def cmd_preset(args, out):
    try:
        problem = get_preset(args.name, dict(args.param or []))
    except UnknownPreset:
        raise CommandError(EX_USAGE, "usage", f"unknown preset {args.name!r}; "
                           f"choose from {', '.join(PRESETS)}") from None
    except BadParams as exc:
        raise CommandError(EX_USAGE, "usage", str(exc)) from None
    out.write(format_definition(definition_from_problem(problem)))
    return 0


def cmd_export(args, out):
    problem = _load(args.file, args.dbound) if args.file else None
    table = _load_table(args.table, problem)
    text = export_table(table, args.format, problem)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        out.write(text)
    return 0


def build_parser():
    p = _Parser(prog="qcsolve", description="Exact WDVV workbench.")
    p.add_argument("-v", "--verbose", action="store_true", help="log per-stage progress")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def with_file(name, help_):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("file", help="definition file")
        sp.add_argument("--dbound", type=int, help="|d| bound when the file has no canonical class")
        return sp

    sp = sub.add_parser("validate", help="check the algebra axioms")
    sp.add_argument("file")
    sp.set_defaults(func=cmd_validate)

    sp = with_file("solve", "reconstruct a table up to a bound")
    sp.add_argument("--bound", type=_rational, required=True)
    sp.add_argument("--seed", help="table of seed values")
    sp.add_argument("--pin", type=_pin, action="append", help="N(beta;d)=value")
    sp.add_argument("--policy", choices=POLICIES, default="strict")
    sp.add_argument("--out", required=True)
    sp.set_defaults(func=cmd_solve)

    sp = with_file("verify", "check a table against every relation")
    sp.add_argument("--table", required=True)
    sp.add_argument("--bound", type=_rational, required=True)
    sp.add_argument("--zero-default", action="store_true", help="read missing values as 0")
    sp.set_defaults(func=cmd_verify)

    sp = with_file("relations", "print the relations at one curve class")
    sp.add_argument("--beta", type=_vector, required=True)
    sp.add_argument("--degree", type=_vector)
    sp.set_defaults(func=cmd_relations)

    sp = sub.add_parser("count", help="count relations for an algebra of a given rank")
    sp.add_argument("--rank", type=int, required=True)
    sp.set_defaults(func=cmd_count)

    sp = with_file("identities", "randomized identity checks")
    sp.add_argument("--samples", type=int, default=100)
    sp.add_argument("--seed-rng", type=int, default=0)
    sp.add_argument("--bound", type=_rational, default=Fraction(3))
    sp.set_defaults(func=cmd_identities)

    sp = sub.add_parser("preset", help="print a preset definition file")
    sp.add_argument("name")
    sp.add_argument("--param", type=_param, action="append", help="K=V")
    sp.set_defaults(func=cmd_preset)

    sp = sub.add_parser("export", help="convert a table between json and csv")
    sp.add_argument("--table", required=True)
    sp.add_argument("--format", choices=FORMATS, required=True)
    sp.add_argument("--file", help="definition file (orders entries by omega)")
    sp.add_argument("--dbound", type=int)
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_export)
    return p


def run_command(argv, out=None, err=None):
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                            format="%(levelname)s %(name)s: %(message)s", stream=err)
        return args.func(args, out)
    except CommandError as exc:
        msg = {"error": exc.kind, "message": str(exc), **exc.extra}
        print(json.dumps(msg), file=err)
        return exc.code
    except MissingLowerValue as exc:
        print(json.dumps({"error": "missing", "message": str(exc)}), file=err)
        return 1
    except SystemExit as exc:  # --help
        return exc.code if isinstance(exc.code, int) else 0


def main():
    sys.exit(run_command(sys.argv[1:]))


if __name__ == "__main__":
    main()
