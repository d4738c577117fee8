"""Evaluation: repeated simultaneous application of a context.

One step rewrites a whole data tree bottom-up: children first, so a
parent's rule sees its children's images from the same pass, while data
a rule produces is never revisited until the next step. Iterating steps
until nothing changes (or a budget runs out) is both computation and
proof: every step is an application of some definition, so any two data
connected by steps are equal under the context.

Classification is the three-valued reading of a snapshot: empty data is
true, data containing an atom is false, anything else is undecided.
Undecided data that a fixed point (or a cycle, or a doubled budget)
cannot move is flagged with the undecidable hint; the hint is honest
heuristics, not proof.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Callable, List, Optional

from .core import Coda, Data, pair, render
from .context import Context, RuleEnv, dispatch, is_atom

__all__ = [
    "EvalStatus", "LogicValue", "EvalTrace", "classify", "step",
    "evaluate", "render_in", "trace_lines",
]


class EvalStatus(str, Enum):
    FIXED = "fixed"        # a step changed nothing
    CYCLIC = "cyclic"      # a step revisited an earlier snapshot
    BUDGET = "budget"      # the step budget ran out first


class LogicValue(str, Enum):
    TRUE = "true"
    FALSE = "false"
    UNDECIDED = "undecided"

    @property
    def label(self) -> str:
        return self.value.capitalize()


def classify(ctx: Context, d: Data) -> LogicValue:
    if not d:
        return LogicValue.TRUE
    if any(is_atom(ctx, c) for c in d):
        return LogicValue.FALSE
    return LogicValue.UNDECIDED


def _step_data(env: RuleEnv, d: Data) -> Data:
    changed = False
    buf: List[Coda] = []
    for c in d:
        img = _step_coda(env, c)
        if len(img) == 1 and img[0] is c:
            buf.append(c)
        else:
            changed = True
            buf.extend(img)
    return tuple(buf) if changed else d


def _step_coda(env: RuleEnv, c: Coda) -> Data:
    left = _step_data(env, c.left)
    right = _step_data(env, c.right)
    c2 = c if (left is c.left and right is c.right) else pair(left, right)
    img = dispatch(env, c2)
    if img is None:
        return (c2,)
    return img


def step(ctx: Context, d: Data) -> Data:
    """One simultaneous pass. Context changes rules make are discarded;
    use evaluate() when definitions should persist."""
    return _step_data(RuleEnv(ctx), d)


@dataclass(frozen=True)
class EvalTrace:
    steps: tuple                 # snapshots; steps[0] is the input
    status: EvalStatus
    logic: LogicValue
    undecidable_hint: bool
    start_context: Context
    end_context: Context

    @property
    def final(self) -> Data:
        return self.steps[-1]


def evaluate(ctx: Context, d: Data, budget: int = 10,
             probe: bool = True) -> EvalTrace:
    """Step d up to budget times, collecting the changed snapshots.

    probe controls the undecidable hint: an undecided budget-limited
    result is re-run once at twice the budget to see whether more steps
    would have decided it. Fixed or cyclic undecided results are flagged
    directly, since further steps cannot change anything.
    """
    if budget < 1:
        raise ValueError("budget must be at least 1")
    env = RuleEnv(ctx)
    steps = [d]
    seen = {d: 0}
    status = EvalStatus.BUDGET
    for _ in range(budget):
        nxt = _step_data(env, steps[-1])
        if nxt == steps[-1]:
            status = EvalStatus.FIXED
            break
        if nxt in seen:
            steps.append(nxt)
            status = EvalStatus.CYCLIC
            break
        seen[nxt] = len(steps)
        steps.append(nxt)
    logic = classify(env.context, steps[-1])
    hint = False
    if logic is LogicValue.UNDECIDED:
        if status is not EvalStatus.BUDGET:
            hint = True
        elif probe:
            deeper = evaluate(ctx, d, budget=2 * budget, probe=False)
            hint = deeper.logic is LogicValue.UNDECIDED
    return EvalTrace(tuple(steps), status, logic, hint, ctx, env.context)


def _atom_test(ctx: Context) -> Callable[[Coda], bool]:
    return lambda c: is_atom(ctx, c)


def render_in(ctx: Context, d: Data) -> str:
    """Render with the context's atoms printed compactly."""
    return render(d, _atom_test(ctx))


def trace_lines(trace: EvalTrace) -> List[str]:
    """The displayed trace: one rendered data per evaluation step.

    The input snapshot is not shown; a trace that never moved shows the
    input once (it is its own fixed point).
    """
    test = _atom_test(trace.end_context)
    shown = trace.steps[1:] if len(trace.steps) > 1 else trace.steps
    return [render(s, test) for s in shown]
