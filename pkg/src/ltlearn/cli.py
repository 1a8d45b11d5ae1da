"""``ltlearn`` command line: learn, learn-dt, gen, eval, export-cnf.

Exit status: 0 success, 1 bad input or usage, 2 timeout or exhausted size
budget, 3 internal invariant failure.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys

from . import benchgen
from .dt import ALPHA, BETA, SamplingConfig, learn_dt
from .encoding import encode_sample, export_dimacs
from .errors import (GenerationError, InvariantError, LearnTimeout, LtlError, SizeBudgetExhausted)
from .exact import LearnerConfig, learn_minimal
from .formula import OperatorSet, parse, render
from .semantics import classify
from .traceio import format_primitives, format_result, format_tree, load_sample, save_sample, write_sample

EXIT_OK, EXIT_USER, EXIT_BUDGET, EXIT_INVARIANT = 0, 1, 2, 3


class _UsageError(Exception):
    pass


def _ops(text):
    try:
        return OperatorSet.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _positive_int(text):
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def _positive_float(text):
    value = float(text)
    if value <= 0:
        raise argparse.ArgumentTypeError(f"expected a positive number, got {text}")
    return value


def _solver(text):
    if text == "embedded" or text.startswith("embedded:") or (text.startswith("dimacs:") and len(text) > 7):
        return text
    raise argparse.ArgumentTypeError("solver must be 'embedded' or 'dimacs:<path>'")


def _int_list(text):
    try:
        return [int(tok) for tok in text.split(",") if tok.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ltlearn", description="Learn LTL formulas from example traces.")
    parser.add_argument("-v", "--verbose", action="store_true", help="debug logging on stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    def learner_flags(p):
        p.add_argument("--input", required=True, help="sample file")
        p.add_argument("--max-size", type=_positive_int, default=30, help="largest size bound tried")
        p.add_argument("--timeout-seconds", type=_positive_float, default=None,
                       help="time budget (whole run for learn, each exact call for learn-dt)")
        p.add_argument("--ops", type=_ops, default=None, help="enabled operators, e.g. '!,|,X,F'")
        p.add_argument("--solver", type=_solver, default="embedded", help="embedded or dimacs:<path>")
        p.add_argument("--stats", choices=["text", "json-lines"], default="text")
        p.add_argument("--plot", metavar="PATH", default=None, help="write a PNG summary of the run")

    def dt_flags(p):
        p.add_argument("--strategy", choices=[ALPHA, BETA], default=ALPHA)
        p.add_argument("--subset-size", type=_positive_int, default=3, help="k")
        p.add_argument("--boost", type=float, default=2.0, help="weight factor for strategy alpha")
        p.add_argument("--restart", type=_positive_int, default=32,
                       help="rounds without progress before weights reset")
        p.add_argument("--seed", type=int, default=0)

    learn = sub.add_parser("learn", help="minimal consistent formula (exact SAT learner)")
    learner_flags(learn)
    learn.add_argument("--count", type=_positive_int, default=1, help="distinct minimal formulas to report")
    learn.add_argument("--mode", choices=["exact", "dt"], default="exact",
                       help="'dt' runs the decision-tree learner instead")
    dt_flags(learn)

    learn_dt_cmd = sub.add_parser("learn-dt", help="decision tree over small primitives")
    learner_flags(learn_dt_cmd)
    dt_flags(learn_dt_cmd)

    gen = sub.add_parser("gen", help="generate benchmark samples from the pattern catalog")
    gen.add_argument("--pattern", default=None,
                     help="catalog index or formula text; omit for the whole catalog")
    gen.add_argument("--sizes", type=_int_list, default=list(benchgen.DEFAULT_SIZES))
    gen.add_argument("--seeds", type=_int_list, default=[0])
    gen.add_argument("--seed", type=int, default=None, help="single seed (overrides --seeds)")
    gen.add_argument("--length", type=int, default=10, help="|u|+|v| of every word")
    gen.add_argument("--noise", type=int, default=1, help="extra propositions the pattern ignores")
    gen.add_argument("--output", required=True,
                     help="directory (several samples) or file path (one sample, '-' for stdout)")

    ev = sub.add_parser("eval", help="truth value of a formula on every word of a sample")
    ev.add_argument("--formula", required=True)
    ev.add_argument("--input", required=True)

    cnf = sub.add_parser("export-cnf", help="write the size-n constraint system as DIMACS")
    cnf.add_argument("--input", required=True)
    cnf.add_argument("--size", type=_positive_int, required=True)
    cnf.add_argument("--ops", type=_ops, default=None)
    cnf.add_argument("--output", default="-")
    return parser


def _emit_stats(out, mode, records, kind):
    for rec in records:
        if mode == "json-lines":
            out.write(json.dumps({"record": kind, **rec}, sort_keys=True) + "\n")
        elif kind == "size":
            out.write(f"n={rec['n']} vars={rec['variables']} aux={rec['auxiliary']} "
                      f"clauses={rec['clauses']} verdict={rec['verdict']} "
                      f"solve={rec['solve_seconds']:.3f}s\n")
        else:
            progress = (f"separated={rec['separated']}/{rec['pairs']}" if "separated" in rec
                        else f"remaining={rec['remaining']}")
            out.write(f"round={rec['round']} primitive={rec['primitive']} size={rec['size']} "
                      f"new={str(rec['new']).lower()} {progress}\n")


def _learner_config(args, count=1):
    return LearnerConfig(max_size=args.max_size, total_timeout=args.timeout_seconds, ops=args.ops,
                         count=count, solver=args.solver)


def _cmd_learn(args, out):
    if args.mode == "dt":
        return _cmd_learn_dt(args, out)
    sample = load_sample(args.input)
    try:
        result = learn_minimal(sample, _learner_config(args, args.count))
    except (SizeBudgetExhausted, LearnTimeout) as exc:
        _emit_stats(out, args.stats, [s.as_dict() for s in exc.stats], "size")
        if args.plot:
            from .plotting import plot_size_stats
            plot_size_stats(exc.stats, args.plot)
        raise
    for formula in result.formulas:
        out.write(f"formula := {render(formula)}\n")
    out.write(f"size := {result.size}\n")
    _emit_stats(out, args.stats, [s.as_dict() for s in result.stats], "size")
    if args.plot:
        from .plotting import plot_size_stats
        plot_size_stats(result.stats, args.plot)
    return EXIT_OK


def _cmd_learn_dt(args, out):
    sample = load_sample(args.input)
    sampling = SamplingConfig(strategy=args.strategy, k=args.subset_size, boost=args.boost,
                              restart=args.restart, seed=args.seed)
    learner = LearnerConfig(max_size=args.max_size, total_timeout=args.timeout_seconds, ops=args.ops,
                            solver=args.solver)
    result = learn_dt(sample, sampling, learner)
    out.write(format_primitives(result.primitives.primitives))
    out.write("tree :=\n")
    out.write(format_tree(result.tree, result.primitives.primitives))
    out.write(format_result(result.formula))
    out.write(f"inner_nodes := {result.tree.inner_nodes()}\n")
    _emit_stats(out, args.stats, result.primitives.rounds, "round")
    if args.plot:
        from .plotting import plot_rounds
        plot_rounds(result.primitives.rounds, args.plot, title=f"strategy {args.strategy}")
    return EXIT_OK


def _resolve_pattern(text):
    if text is None:
        return benchgen.pattern_catalog()
    if text.isdigit():
        index = int(text)
        if index >= len(benchgen.PATTERNS):
            raise _UsageError(f"pattern index {index} outside 0..{len(benchgen.PATTERNS) - 1}")
        return [benchgen.pattern_catalog()[index]]
    return [parse(text)]


def _cmd_gen(args, out):
    patterns = _resolve_pattern(args.pattern)
    seeds = [args.seed] if args.seed is not None else args.seeds
    try:
        specs = [benchgen.BenchmarkSpec(p, size, args.length, args.noise, seed)
                 for p in patterns for size in args.sizes for seed in seeds]
    except ValueError as exc:
        raise _UsageError(str(exc)) from None
    if not specs:
        raise _UsageError("nothing to generate (empty size or seed list)")
    if len(specs) == 1 and not os.path.isdir(args.output):
        sample = benchgen.generate_sample(specs[0])
        if args.output == "-":
            write_sample(sample, out)
        else:
            save_sample(sample, args.output)
        return EXIT_OK
    suite = [(spec, benchgen.generate_sample(spec)) for spec in specs]
    manifest = benchgen.write_suite(suite, args.output)
    out.write(f"wrote {len(suite)} samples; manifest {manifest}\n")
    return EXIT_OK


def _cmd_eval(args, out):
    sample = load_sample(args.input)
    formula = parse(args.formula, alphabet=sample.alphabet.names)
    for value in classify(formula, sample.words):
        out.write("true\n" if value else "false\n")
    return EXIT_OK


def _cmd_export_cnf(args, out):
    sample = load_sample(args.input)
    text = export_dimacs(encode_sample(args.size, sample, args.ops))
    if args.output == "-":
        out.write(text)
    else:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    return EXIT_OK


COMMANDS = {"learn": _cmd_learn, "learn-dt": _cmd_learn_dt, "gen": _cmd_gen, "eval": _cmd_eval,
            "export-cnf": _cmd_export_cnf}


def run(argv=None, out=None, err=None) -> int:
    """Run one invocation; returns the exit status instead of exiting."""
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USER
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, stream=err,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return COMMANDS[args.command](args, out)
    except InvariantError as exc:
        err.write(f"ltlearn: internal invariant failed: {exc}\n")
        return EXIT_INVARIANT
    except (SizeBudgetExhausted, LearnTimeout, GenerationError) as exc:
        err.write(f"ltlearn: {exc}\n")
        return EXIT_BUDGET
    except (LtlError, ValueError, OSError, _UsageError) as exc:
        err.write(f"ltlearn: {exc}\n")
        return EXIT_USER


def main(argv=None):
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
