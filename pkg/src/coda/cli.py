"""Command line entry points.

Subcommands: eval, step, repl, check, search, demo, serve. The REPL and
the service hold a session context, so definitions made on one line are
in force on the next. All trace output goes through the same rendering
as the HTTP service, byte for byte.
"""

from __future__ import annotations

import argparse
import logging
import sys
from typing import List, Optional

from .context import Context, replay_context
from .builtins import BUILTIN_NAMES, std_context
from .demos import DEMOS, run_demo
from .eval import EvalTrace, evaluate, render_in, trace_lines
from .language import read_literal, resolve_source
from .spaces import (
    SampleConfig, candidate_data, check_antispace, check_morphism,
    check_space, search_classifier,
)

__all__ = ["main"]


def _base_context(args) -> Context:
    alphabet = getattr(args, "alphabet", None)
    ctx = std_context(alphabet.encode("latin-1") if alphabet else None)
    path = getattr(args, "context", None)
    if path:
        with open(path, "r", encoding="latin-1") as fh:
            ctx = replay_context(ctx, fh.read())
    return ctx


def _evaluate_line(ctx: Context, source: str, budget: int) -> EvalTrace:
    return evaluate(ctx, resolve_source(source), budget=budget)


def _verdict_line(trace: EvalTrace) -> str:
    hint = "true" if trace.undecidable_hint else "false"
    return (f"verdict {trace.logic.label} status {trace.status.value} "
            f"undecidable_hint={hint}")


def _cmd_eval(args) -> int:
    ctx = _base_context(args)
    trace = _evaluate_line(ctx, args.expr, args.budget)
    print(render_in(trace.end_context, trace.final))
    if args.verdict:
        print(_verdict_line(trace))
    return 0


def _cmd_step(args) -> int:
    ctx = _base_context(args)
    trace = _evaluate_line(ctx, args.expr, args.budget)
    for line in trace_lines(trace):
        print(line)
    return 0


def _cmd_repl(args) -> int:
    ctx = _base_context(args)
    budget = args.budget
    stdin, stdout = sys.stdin, sys.stdout
    interactive = stdin.isatty()
    while True:
        if interactive:
            stdout.write("coda> ")
            stdout.flush()
        line = stdin.readline()
        if not line:
            return 0
        source = line.rstrip("\n")
        if source.strip() in ("exit", "quit"):
            return 0
        if not source.strip():
            continue
        show_steps = False
        stripped = source.lstrip()
        if stripped.startswith("step") and stripped[4:].lstrip().startswith(":"):
            source = stripped[4:].lstrip()[1:]
            show_steps = True
        try:
            trace = _evaluate_line(ctx, source, budget)
        except Exception as exc:  # total language: keep the session alive
            print(f"error: {exc}")
            continue
        ctx = trace.end_context
        if show_steps:
            for out in trace_lines(trace):
                print(out)
        else:
            print(render_in(ctx, trace.final))
    return 0


def _sample_config(args) -> SampleConfig:
    return SampleConfig(samples=args.samples, seed=args.seed,
                        budget=args.budget)


def _print_report(report) -> int:
    if report.holds:
        print(f"PASS {report.name}: {report.law} "
              f"({report.conclusive} conclusive / {report.attempts} attempts)")
        return 0
    sample, lhs, rhs = report.counterexample
    print(f"FAIL {report.name}: {report.law}")
    print(f"  sample {sample}")
    print(f"  lhs    {lhs}")
    print(f"  rhs    {rhs}")
    return 1


def _cmd_check(args) -> int:
    ctx = _base_context(args)
    config = _sample_config(args)
    kind = args.kind
    if kind in ("space", "law"):
        report = check_space(ctx, candidate_data(args.candidate),
                             name=args.candidate, config=config)
    elif kind == "morphism":
        report = check_morphism(
            ctx, candidate_data(args.candidate),
            candidate_data(args.src), candidate_data(args.dst),
            name=args.candidate, config=config)
    elif kind == "antispace":
        report = check_antispace(
            ctx, candidate_data(args.candidate),
            candidate_data(args.anti), name=args.candidate, config=config)
    else:  # unreachable; argparse restricts choices
        return 2
    return _print_report(report)


def _read_samples(path: str) -> List[tuple]:
    out = []
    with open(path, "r", encoding="latin-1") as fh:
        for line in fh:
            line = line.strip()
            if line:
                out.append(read_literal(line))
    return out


def _cmd_search(args) -> int:
    ctx = _base_context(args)
    try:
        positives = _read_samples(args.pos)
        negatives = _read_samples(args.neg)
    except OSError as exc:
        print(f"cannot read sample file: {exc}", file=sys.stderr)
        return 2
    vocabulary = args.vocabulary.split(",") if args.vocabulary \
        else list(BUILTIN_NAMES)
    result = search_classifier(ctx, vocabulary, positives, negatives,
                               max_terms=args.max_terms, budget=args.budget)
    for combo in result.accepted:
        print(" ".join(combo))
    print(f"# accepted {len(result.accepted)} of {result.tried} candidates "
          f"in {result.elapsed:.1f}s")
    return 0 if result.accepted else 1


def _cmd_demo(args) -> int:
    if args.name not in DEMOS:
        print(f"unknown demo: {args.name}", file=sys.stderr)
        return 2
    report = run_demo(args.name, args.budget)
    print(f"demo {report.name}: verdict {report.verdict.label}")
    print(f"  {'ok' if report.ok else 'UNEXPECTED'}: {report.notes}")
    if args.trace:
        for line in report.steps:
            print(line)
    return 0 if report.ok else 1


def _cmd_serve(args) -> int:
    from .service import serve
    serve(host=args.host, port=args.port, alphabet=args.alphabet)
    return 0


def _add_common(p, budget_default: int = 10) -> None:
    p.add_argument("--budget", type=int, default=budget_default,
                   help="evaluation steps allowed (default %(default)s)")
    p.add_argument("--alphabet", help="byte-string stream alphabet")
    p.add_argument("--context", help="definition file to replay")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="coda",
        description="pure-data rewriting: evaluate, trace, check, serve")
    sub = parser.add_subparsers(dest="command")

    p = sub.add_parser("eval", help="evaluate an expression, print the result")
    p.add_argument("expr")
    p.add_argument("--verdict", action="store_true",
                   help="also print logic/status/undecidable_hint")
    _add_common(p)
    p.set_defaults(fn=_cmd_eval)

    p = sub.add_parser("step", help="print the evaluation trace")
    p.add_argument("expr")
    _add_common(p)
    p.set_defaults(fn=_cmd_step)

    p = sub.add_parser("repl", help="interactive session")
    _add_common(p)
    p.set_defaults(fn=_cmd_repl)

    p = sub.add_parser("check", help="test an algebraic law on samples")
    p.add_argument("kind", choices=["space", "law", "morphism", "antispace"])
    p.add_argument("candidate")
    p.add_argument("--src", default="sum n", help="morphism source space")
    p.add_argument("--dst", default="sum n", help="morphism target space")
    p.add_argument("--anti", default="neg z", help="anti-space candidate")
    p.add_argument("--samples", type=int, default=200)
    p.add_argument("--seed", type=int, default=7)
    _add_common(p)
    p.set_defaults(fn=_cmd_check)

    p = sub.add_parser("search", help="enumerate classifiers fitting samples")
    p.add_argument("--pos", required=True, help="file of positive samples")
    p.add_argument("--neg", required=True, help="file of negative samples")
    p.add_argument("--max-terms", type=int, default=2)
    p.add_argument("--vocabulary", help="comma-separated words")
    _add_common(p)
    p.set_defaults(fn=_cmd_search)

    p = sub.add_parser("demo", help="run a named demonstration")
    p.add_argument("name", help="|".join(sorted(DEMOS)))
    p.add_argument("--trace", action="store_true", help="print the steps")
    p.add_argument("--budget", type=int, default=None)
    p.set_defaults(fn=_cmd_demo)

    p = sub.add_parser("serve", help="run the HTTP evaluation service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8787)
    p.add_argument("--alphabet")
    p.set_defaults(fn=_cmd_serve)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    logging.basicConfig(level=logging.INFO, format="%(message)s",
                        stream=sys.stderr)
    parser = build_parser()
    args = parser.parse_args(argv)
    if not getattr(args, "command", None):
        args.fn = _cmd_repl
        args.budget = 10
        args.alphabet = None
        args.context = None
    return args.fn(args)


if __name__ == "__main__":
    sys.exit(main())
