"""Contexts: the one axiom, bindings, serialization."""

import random

import pytest
from hypothesis import given, settings, strategies as st

from coda.core import EMPTY, UNIT, byte_atom, pair
from coda.context import (
    AxiomViolation, Definition, InvalidDomain, empty_context, extend,
    lookup, replay_context, serialize_context, with_binding,
)
from coda.builtins import std_context
from coda.eval import evaluate, render_in
from coda.language import resolve_source


def identity(name, key):
    return Definition(name=name, key=key, kind="identity", fn=None,
                      body=None)


class TestAxiom:
    def test_redefining_existing_domain_raises(self):
        ctx = std_context()
        with pytest.raises(AxiomViolation):
            extend(ctx, identity("again", byte_atom(b"pass")))

    def test_fresh_domain_extends(self):
        ctx = std_context()
        ctx2 = extend(ctx, identity("mine", byte_atom(b"brand-new")))
        assert byte_atom(b"brand-new") in ctx2.table
        # original context untouched
        assert byte_atom(b"brand-new") not in ctx.table

    def test_hundred_randomized_fresh_extends(self):
        rng = random.Random(12)
        ctx = std_context()
        for i in range(100):
            name = "w%d_%d" % (i, rng.randrange(10 ** 6))
            ctx = extend(ctx, identity(name, byte_atom(name.encode())))
        assert len(ctx.table) >= 100

    def test_non_rigid_key_rejected(self):
        ctx = std_context()
        wobbly = pair((byte_atom(b"nat"),), (byte_atom(b"0"),))
        with pytest.raises(InvalidDomain):
            extend(ctx, identity("w", wobbly))

    def test_binding_collision_raises(self):
        ctx = with_binding(std_context(), b"G", (UNIT,))
        with pytest.raises(AxiomViolation):
            with_binding(ctx, b"G", EMPTY)

    def test_binding_value_is_stored(self):
        ctx = with_binding(std_context(), b"G", (UNIT,))
        assert ctx.bindings[b"G"] == (UNIT,)


class TestDispatch:
    def test_unknown_domain_has_no_rule(self):
        ctx = std_context()
        c = pair((byte_atom(b"no-such-rule"),), EMPTY)
        assert lookup(ctx, c) is None

    def test_empty_context_knows_nothing(self):
        ctx = empty_context()
        c = pair((byte_atom(b"pass"),), (UNIT,))
        assert lookup(ctx, c) is None


class TestDefRule:
    def test_def_persists_in_trace_context(self):
        ctx = std_context()
        t = evaluate(ctx, resolve_source("def twice : {B B}"), budget=6)
        assert render_in(t.end_context, t.final) == "()"
        t2 = evaluate(t.end_context, resolve_source("twice : q"), budget=6)
        assert render_in(t2.end_context, t2.final) == "q q"

    def test_redefinition_with_same_body_is_true(self):
        ctx = std_context()
        t = evaluate(ctx, resolve_source("def twice : {B B}"), budget=6)
        t2 = evaluate(t.end_context, resolve_source("def twice : {B B}"),
                      budget=6)
        assert t2.final == EMPTY

    def test_redefinition_with_new_body_errors(self):
        ctx = std_context()
        t = evaluate(ctx, resolve_source("def twice : {B B}"), budget=6)
        t2 = evaluate(t.end_context, resolve_source("def twice : {B}"),
                      budget=6)
        out = render_in(t2.end_context, t2.final)
        assert out.startswith("(error")

    def test_builtin_name_cannot_be_redefined(self):
        ctx = std_context()
        t = evaluate(ctx, resolve_source("def pass : {B}"), budget=6)
        assert render_in(t.end_context, t.final).startswith("(error")


class TestSerialization:
    def test_roundtrip_definitions_and_bindings(self):
        ctx = std_context()
        t = evaluate(ctx, resolve_source("def twice : {B B}"), budget=6)
        t = evaluate(t.end_context, resolve_source("let W : twice : m"),
                     budget=6)
        text = serialize_context(t.end_context)
        fresh = replay_context(std_context(), text)
        t2 = evaluate(fresh, resolve_source("twice : (W?)"), budget=8)
        assert render_in(t2.end_context, t2.final) == "m m m m"

    def test_replay_is_stable(self):
        ctx = std_context()
        t = evaluate(ctx, resolve_source("def g : {first 1 : B}"), budget=6)
        text = serialize_context(t.end_context)
        again = serialize_context(replay_context(std_context(), text))
        assert text == again
