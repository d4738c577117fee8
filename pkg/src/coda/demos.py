"""The paradox corpus.

Each demo evaluates a famously troublesome proposition and reports what
the three-valued classification makes of it. The punchline is uniform:
the paradoxes land in undecided and stay there, while their defused
control variants compute honest answers.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional

from .core import Data, byte_atom
from .context import Context
from .builtins import nat_value, std_context
from .eval import EvalTrace, LogicValue, classify, evaluate, trace_lines
from .language import resolve_source

__all__ = ["DemoReport", "DEMOS", "run_demo", "consistency_demo",
           "godel_demo", "curry_demo", "yablo_demo", "berry_demo"]

CONSISTENCY_SOURCE = "ap {xor (coda:B) : (not:coda:B)} : allByteSequences :"
GODEL_BINDING = "let G : not : G?"
GODEL_QUERY = "G?"
CURRY_BINDING = "let Curry's_sentence : " \
    "imply Curry's_sentence? : Germany_borders_China?"
CURRY_QUERY = "Curry's_sentence?"
YABLO_DEFINITION = "def Yablo : {ap not : Yablo : skip 1 : nat : B}"
YABLO_QUERY = "Yablo : 1"
BERRY_CONTROL = "berry : posint : coda : bytes : 1"
BERRY_PARADOX = "berry : posint : coda : selfstream :"
BERRY_STREAM_DEFINITION = (
    "def selfstream : {<berry : posint : coda : selfstream :> (bytes : 1)}")


@dataclass(frozen=True)
class DemoReport:
    name: str
    verdict: LogicValue
    ok: bool                      # the demo's expected behavior held
    steps: List[str] = field(default_factory=list)
    notes: str = ""
    undecidable_hint: bool = False


def _run(ctx: Context, source: str, budget: int, probe: bool = True):
    return evaluate(ctx, resolve_source(source), budget=budget, probe=probe)


def _prepare(ctx: Context, source: str) -> Context:
    """Run a definition-making line and keep its context."""
    trace = evaluate(ctx, resolve_source(source), budget=4, probe=False)
    return trace.end_context


def _all_undecided(trace: EvalTrace) -> bool:
    ctx = trace.end_context
    return all(classify(ctx, s) is LogicValue.UNDECIDED for s in trace.steps)


def consistency_demo(budget: int = 10, alphabet: bytes = b"abc") -> DemoReport:
    """Feed every byte string to "is it inconsistent with itself?".

    Decided strings vanish as little truths; the stream and the in-flight
    checks remain, so the whole never empties and never shows an atom.
    The expression's own source is one of the strings the stream will
    eventually reach, which is exactly why it can never finish.
    """
    ctx = std_context(alphabet=alphabet)
    trace = _run(ctx, CONSISTENCY_SOURCE, budget, probe=False)
    ok = _all_undecided(trace) and bool(trace.final)
    return DemoReport(
        name="consistency", verdict=trace.logic, ok=ok,
        steps=trace_lines(trace),
        notes=f"alphabet {alphabet.decode('latin-1')!r}: every step stays "
              "undecided; truths vanish, the pending tail never does",
        undecidable_hint=trace.undecidable_hint)


def _not_nesting(d: Data) -> int:
    """How many (not : ...) layers wrap the core of a single-item data."""
    word = byte_atom(b"not")
    count = 0
    while len(d) == 1 and d[0].left == (word,):
        count += 1
        d = d[0].right
    return count


def godel_demo(depth: int = 9) -> DemoReport:
    """A sentence defined to be the negation of its own value."""
    ctx = _prepare(std_context(), GODEL_BINDING)
    trace = _run(ctx, GODEL_QUERY, budget=depth)
    nesting = _not_nesting(trace.final)
    ok = (nesting == depth
          and trace.logic is LogicValue.UNDECIDED
          and trace.undecidable_hint)
    return DemoReport(
        name="godel", verdict=trace.logic, ok=ok,
        steps=trace_lines(trace),
        notes=f"depth {depth}: {nesting} nested negations around the query",
        undecidable_hint=trace.undecidable_hint)


def curry_demo(depth: int = 10) -> DemoReport:
    """If this sentence is true, then Germany borders China."""
    ctx = _prepare(std_context(), CURRY_BINDING)
    trace = _run(ctx, CURRY_QUERY, budget=depth)
    ok = trace.logic is LogicValue.UNDECIDED and trace.undecidable_hint
    return DemoReport(
        name="curry", verdict=trace.logic, ok=ok,
        steps=trace_lines(trace),
        notes=f"depth {depth}: the implication keeps asking about itself",
        undecidable_hint=trace.undecidable_hint)


def yablo_demo(depth: int = 20) -> DemoReport:
    """No sentence refers to itself; each accuses all of its successors."""
    ctx = _prepare(std_context(), YABLO_DEFINITION)
    trace = _run(ctx, YABLO_QUERY, budget=depth)
    ok = _all_undecided(trace)
    return DemoReport(
        name="yablo", verdict=trace.logic, ok=ok,
        steps=trace_lines(trace),
        notes=f"undecided at every step through depth {depth}, "
              "with no self-reference anywhere",
        undecidable_hint=trace.undecidable_hint)


def _names_integer(d: Data) -> Optional[int]:
    if len(d) != 1:
        return None
    return nat_value(d[0])


def berry_demo(budget: int = 30, alphabet: bytes = b"123") -> DemoReport:
    """The smallest positive integer this expression cannot name.

    The control enumerates a finite language that does not mention the
    expression itself, so the answer exists (here: 4). The paradox
    variant's enumeration includes the expression's own source, and the
    search never finishes.
    """
    ctx = std_context(alphabet=alphabet)
    control = evaluate(ctx, resolve_source(BERRY_CONTROL),
                       budget=budget, probe=False)
    control_answer = _names_integer(control.final)

    ctx2 = _prepare(std_context(alphabet=alphabet), BERRY_STREAM_DEFINITION)
    paradox = evaluate(ctx2, resolve_source(BERRY_PARADOX),
                       budget=budget, probe=True)
    never_integer = all(_names_integer(s) is None for s in paradox.steps)

    ok = control_answer == 4 \
        and never_integer \
        and paradox.logic is LogicValue.UNDECIDED
    return DemoReport(
        name="berry", verdict=paradox.logic, ok=ok,
        steps=trace_lines(paradox),
        notes=f"control names {control_answer}; the self-including variant "
              f"names nothing within {budget} steps",
        undecidable_hint=paradox.undecidable_hint)


DEMOS: Dict[str, Callable[..., DemoReport]] = {
    "consistency": consistency_demo,
    "godel": godel_demo,
    "curry": curry_demo,
    "yablo": yablo_demo,
    "berry": berry_demo,
}

_BUDGET_PARAM = {
    "consistency": "budget",
    "godel": "depth",
    "curry": "depth",
    "yablo": "depth",
    "berry": "budget",
}


def run_demo(name: str, budget: Optional[int] = None) -> DemoReport:
    fn = DEMOS[name]
    if budget is None:
        return fn()
    return fn(**{_BUDGET_PARAM[name]: budget})
