"""Command-line front end.

Exit codes: 0 success, 1 a check failed (validation error, evaluator and
oracle disagree), 2 bad input (missing file, parse error), 3 exploration
budget exceeded or an undecided bounded result.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import pcp
from .markov import InvalidSystemError, induced_chain, unfold, unfolding_to_dot
from .oracle import oracle_until_probability
from .pctl import (
    DEFAULT_BUDGET,
    EXACT,
    Bounded,
    BudgetExceededError,
    Evaluator,
    FormulaSyntaxError,
    IndeterminateError,
    UnsupportedFormulaError,
    parse_formula,
    parse_path_formula,
)
from .pushdown import PROBABILISTIC, QUANTUM, dump_system, format_config, parse_config, parse_system, validate
from .reduction import VARIANTS, check_witness, reduce_instance, rho, rho_bar

EXIT_OK, EXIT_CHECK_FAILED, EXIT_BAD_INPUT, EXIT_BUDGET = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational: {text!r}") from None


def _t_value(text: str) -> Fraction:
    t = _fraction(text)
    if not 0 < t < 1:
        raise argparse.ArgumentTypeError("t must lie strictly between 0 and 1")
    return t


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return value


def _read(path: str) -> str:
    p = Path(path)
    if not p.is_file():
        raise UsageError(f"no such file: {path}")
    return p.read_text()


def _flavor(args) -> str:
    return QUANTUM if args.quantum else PROBABILISTIC


def _load_instance(path: str) -> pcp.PcpInstance:
    _read(path)
    try:
        return pcp.load_instance(path)
    except ValueError as exc:
        raise UsageError(f"{path}: {exc}") from None


def _load_source(args):
    """A source file is either a PCP instance (reduced on the fly) or a pushdown-system file."""
    text = _read(args.source)
    if "->" in text:
        try:
            return parse_system(text), None
        except ValueError as exc:
            raise UsageError(f"{args.source}: {exc}") from None
    red = reduce_instance(_load_instance(args.source), _flavor(args), args.variant, args.chain_length)
    return red.system, red


def cmd_reduce(args) -> int:
    instance = _load_instance(args.source)
    red = reduce_instance(instance, _flavor(args), args.variant, args.chain_length)
    stem = Path(args.source).stem
    system_path = Path(args.system_out or f"{stem}.{red.system.flavor}.pds")
    formula_path = Path(args.formula_out or f"{stem}.{args.variant}.pctl")
    system_path.write_text(dump_system(red.system))
    lines = [
        f"# t = {args.t}",
        f"phi1 = {red.phi1}",
        f"phi2 = {red.phi2}",
        str(red.formula(args.t)),
    ]
    formula_path.write_text("\n".join(lines) + "\n")
    print(f"alphabet size: {len(red.system.alphabet)}")
    print(f"rules: {len(red.system.rules)}")
    print(f"system: {system_path}")
    print(f"formula: {formula_path}")
    return EXIT_OK


def _report_line(report) -> str:
    parts = [
        f"solution: {'yes' if report.verdict else 'no'}",
        f"p1={report.p1} p2={report.p2}",
    ]
    if report.oracle_agrees is not None:
        parts.append("oracle agrees" if report.oracle_agrees else f"ORACLE DISAGREES ({report.oracle_p1}, {report.oracle_p2})")
    if report.verdict != report.is_solution:
        parts.append(f"direct check says {'yes' if report.is_solution else 'no'}")
    return "; ".join(parts)


def cmd_check_witness(args) -> int:
    instance = _load_instance(args.source)
    w = pcp.parse_index_word(args.w)
    try:
        report = check_witness(instance, w, args.t, _flavor(args))
    except IndexError as exc:
        raise UsageError(str(exc)) from None
    if args.json:
        print(json.dumps(report.as_dict(), indent=2))
    else:
        print(f"w = {' '.join(map(str, w))}; alpha = {format_config(report.alpha)}")
        print(_report_line(report))
    return EXIT_OK if report.oracle_agrees is not False else EXIT_CHECK_FAILED


def cmd_search(args) -> int:
    instance = _load_instance(args.source)
    w = pcp.brute_force_solve(instance, args.max_k)
    if w is None:
        print(f"no solution with k <= {args.max_k}")
        return EXIT_OK
    report = check_witness(instance, w, None, _flavor(args))
    print(f"brute force: w = {' '.join(map(str, w))}")
    print(_report_line(report))
    agree = report.verdict and report.oracle_agrees is not False
    print("reduction agrees" if agree else "REDUCTION DISAGREES")
    return EXIT_OK if agree else EXIT_CHECK_FAILED


def cmd_solve_pcp(args) -> int:
    instance = _load_instance(args.source)
    w = pcp.brute_force_solve(instance, args.max_k)
    if w is None:
        print(f"no solution with k <= {args.max_k}")
    else:
        top, _ = instance.concatenations(w)
        print(f"w = {' '.join(map(str, w))} ({top})")
    return EXIT_OK


def cmd_rho(args) -> int:
    word = args.word if args.word.endswith("Z'") else args.word + "Z'"
    try:
        value = rho_bar(word) if args.bar else rho(word)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    print(value)
    return EXIT_OK


def _stop_predicate(args, ev: Evaluator | None):
    if not args.stop:
        return None
    f = parse_formula(args.stop)
    return lambda cfg: ev.sat(cfg, f)


def cmd_unfold(args) -> int:
    system, _ = _load_source(args)
    chain = induced_chain(system)
    ev = Evaluator(chain, budget=args.budget)
    nodes = unfold(chain, parse_config(args.start), args.depth, _stop_predicate(args, ev))
    dot = unfolding_to_dot(nodes, name=args.start)
    if args.dot:
        Path(args.dot).write_text(dot)
        print(f"{len(nodes)} nodes written to {args.dot}")
    else:
        sys.stdout.write(dot)
    return EXIT_OK


def cmd_eval(args) -> int:
    system, red = _load_source(args)
    chain = induced_chain(system)
    assignment = red.assignment if red else None
    ev = Evaluator(chain, assignment, args.budget)
    start = parse_config(args.start)
    mode = Bounded(args.bounded) if args.bounded is not None else EXACT
    if args.path:
        phi = parse_path_formula(args.formula)
        result = ev.probability(start, phi, mode)
        print(f"probability: {result}")
        if args.oracle:
            o = oracle_until_probability(chain, start, phi, assignment, args.oracle)
            print(f"oracle: {o.probability} (residual {o.residual})")
            if o.residual == 0 and result.is_exact and o.probability != result.value:
                print("ORACLE DISAGREES")
                return EXIT_CHECK_FAILED
        return EXIT_OK
    verdict = ev.sat(start, parse_formula(args.formula), mode)
    print(f"holds: {'yes' if verdict else 'no'}")
    return EXIT_OK


def cmd_validate(args) -> int:
    system, _ = _load_source(args)
    report = validate(system)
    if not report:
        print(f"valid {system.flavor} system: {len(system.alphabet)} symbols, {len(system.rules)} rules")
        return EXIT_OK
    for v in report:
        print(v)
    return EXIT_CHECK_FAILED


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="pdsreduce", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def source(p, help_text="PCP instance file"):
        p.add_argument("source", help=help_text)
        p.add_argument("--quantum", action="store_true", help="build the quantum (amplitude) system")
        p.add_argument("--variant", choices=VARIANTS, default="eq10")
        p.add_argument("--chain-length", type=_positive, default=1, help="number of N_i links for remark9a")

    p = sub.add_parser("reduce", help="compile an instance into a system file and a formula file")
    source(p)
    p.add_argument("--t", type=_t_value, default=Fraction(1, 3))
    p.add_argument("--system-out")
    p.add_argument("--formula-out")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("check-witness", help="check the reduction along the guess path of an index word")
    source(p)
    p.add_argument("--w", required=True, help="index word, e.g. 1,2")
    p.add_argument("--t", type=_t_value)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_check_witness)

    p = sub.add_parser("search", help="brute-force a solution, then confirm it through the reduction")
    source(p)
    p.add_argument("--max-k", type=_positive, default=4)
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("solve-pcp", help="brute-force the PCP instance")
    p.add_argument("source")
    p.add_argument("--max-k", type=_positive, default=4)
    p.set_defaults(func=cmd_solve_pcp)

    p = sub.add_parser("rho", help="binary encoding of a word over {A,B}")
    p.add_argument("word")
    p.add_argument("--bar", action="store_true", help="complemented encoding")
    p.set_defaults(func=cmd_rho)

    p = sub.add_parser("unfold", help="DOT unfolding tree of a configuration")
    source(p, "PCP instance file or pushdown-system file")
    p.add_argument("--start", required=True, help="configuration, top first, e.g. \"F <A,A> Z'\"")
    p.add_argument("--depth", type=int, default=8)
    p.add_argument("--stop", help="state formula; matching nodes are not expanded")
    p.add_argument("--dot", help="output path (default stdout)")
    p.add_argument("--budget", type=_positive, default=DEFAULT_BUDGET)
    p.set_defaults(func=cmd_unfold)

    p = sub.add_parser("eval", help="evaluate a state formula (or, with --path, a path probability)")
    source(p, "PCP instance file or pushdown-system file")
    p.add_argument("--start", required=True)
    p.add_argument("--formula", required=True)
    p.add_argument("--path", action="store_true", help="treat the formula as a path formula")
    p.add_argument("--bounded", type=int, metavar="DEPTH")
    p.add_argument("--oracle", type=_positive, metavar="DEPTH", help="cross-check a path probability by enumeration")
    p.add_argument("--budget", type=_positive, default=DEFAULT_BUDGET)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("validate", help="check stochasticity / unitarity of a system")
    source(p, "PCP instance file or pushdown-system file")
    p.set_defaults(func=cmd_validate)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, FormulaSyntaxError, UnsupportedFormulaError, InvalidSystemError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT
    except (BudgetExceededError, IndeterminateError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        print("hint: pass --bounded DEPTH for an interval instead of an exact value", file=sys.stderr)
        return EXIT_BUDGET


if __name__ == "__main__":
    sys.exit(main())
