"""Evaluator: passes, statuses, classification, traces."""

import pytest
from hypothesis import given, settings, strategies as st

from coda.core import EMPTY, UNIT, byte_atom, pair
from coda.builtins import std_context
from coda.eval import (
    EvalStatus, LogicValue, classify, evaluate, render_in, step,
    trace_lines,
)
from coda.language import resolve_source

CTX = std_context()


def run(src, budget=10, ctx=None, probe=True):
    return evaluate(ctx or CTX, resolve_source(src), budget=budget,
                    probe=probe)


class TestClassify:
    def test_empty_is_true(self):
        assert classify(CTX, EMPTY) is LogicValue.TRUE

    def test_atom_is_false(self):
        assert classify(CTX, (byte_atom(b"a"),)) is LogicValue.FALSE

    def test_mixed_with_atom_is_false(self):
        d = (pair((byte_atom(b"f"),), (byte_atom(b"x"),)), UNIT)
        assert classify(CTX, d) is LogicValue.FALSE

    def test_pair_alone_is_undecided(self):
        d = (pair((byte_atom(b"f"),), (byte_atom(b"x"),)),)
        assert classify(CTX, d) is LogicValue.UNDECIDED


class TestStep:
    def test_normal_form_is_fixed_point(self):
        d = resolve_source("a b c")
        assert step(CTX, d) == d

    def test_one_pass_unfolds_once(self):
        d = resolve_source("nat : 0")
        d1 = step(CTX, d)
        assert render_in(CTX, d1) == "0 (nat : 1)"

    def test_children_rewrite_before_parents(self):
        # the inner sum settles in the same pass the outer one reads it
        d = resolve_source("sum n : 1 (sum n : 2 3)")
        t = evaluate(CTX, d, budget=4)
        assert render_in(t.end_context, t.final) == "(n:6)"
        assert t.status is EvalStatus.FIXED


class TestStatuses:
    def test_fixed(self):
        t = run("first 2 : a b c d")
        assert t.status is EvalStatus.FIXED
        assert t.steps[-1] == t.final

    def test_budget(self):
        t = run("nat : 0", budget=5)
        assert t.status is EvalStatus.BUDGET
        assert len(t.steps) == 6  # input plus five passes

    def test_cyclic(self):
        t = run("def loop : {loop : B}", budget=4)
        t2 = evaluate(t.end_context, resolve_source("loop : x"), budget=10)
        assert t2.status is EvalStatus.CYCLIC
        assert t2.undecidable_hint

    def test_budget_must_be_positive(self):
        with pytest.raises(ValueError):
            evaluate(CTX, resolve_source("nat : 0"), budget=0)


class TestUndecidableHint:
    def test_settled_decided_has_no_hint(self):
        assert not run("sum n : 1 2").undecidable_hint

    def test_settled_undecided_hints(self):
        # no rule will ever apply, the pair just sits there
        t = run("foo : bar")
        assert t.status is EvalStatus.FIXED
        assert t.logic is LogicValue.UNDECIDED
        assert t.undecidable_hint

    def test_stream_tail_hints_via_probe(self):
        t = run("last : nat : 0", budget=20)
        assert t.status is EvalStatus.BUDGET
        assert t.logic is LogicValue.UNDECIDED
        assert t.undecidable_hint

    def test_probe_false_suppresses_budget_hint(self):
        t = run("last : nat : 0", budget=20, probe=False)
        assert not t.undecidable_hint

    def test_slow_but_decidable_has_no_hint(self):
        # needs 12 passes; at budget 8 the probe sees it settle at 16
        t = run("aps not :" + " (:)" * 11, budget=8)
        assert t.status is EvalStatus.BUDGET
        assert not t.undecidable_hint


class TestTraceLines:
    def test_excludes_the_input(self):
        t = run("nat : 0", budget=3)
        lines = trace_lines(t)
        assert lines[0] == "0 (nat : 1)"
        assert len(lines) == 3

    def test_no_movement_shows_input_once(self):
        t = run("a b")
        assert trace_lines(t) == ["a b"]

    def test_final_line_matches_final_data(self):
        t = run("first 2 : a b c d")
        assert trace_lines(t)[-1] == "a b"

    def test_lines_use_end_context_rendering(self):
        t = run("sum n : 2 3")
        assert trace_lines(t)[-1] == "(n:5)"


class TestEvaluationIsPure:
    def test_input_data_unchanged(self):
        d = resolve_source("rev : a b")
        before = d
        evaluate(CTX, d, budget=6)
        assert d == before

    @given(st.sampled_from(["a", "a b", "rev : a b", "sum n : 1 2",
                            "nat : 0", "(foo:bar)"]))
    @settings(max_examples=12, deadline=None)
    def test_deterministic(self, src):
        t1 = run(src, budget=6)
        t2 = run(src, budget=6)
        assert t1.steps == t2.steps
        assert t1.status is t2.status
