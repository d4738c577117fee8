"""Definition contexts.

A context is a partial function from codas to data, represented as a set
of definitions. Each definition claims a domain: the set of codas whose
left data begins with a particular coda (the key). A single axiom governs
extension: two definitions never claim the same domain. Everything else
is free.

Identity definitions map each coda in their domain to itself; such codas
are the atoms. Family definitions claim every domain whose key itself
begins with a marker coda (used by the language rule, whose domains are
the quotation atoms). Defined rules substitute a stored body at the call
site. Native rules run a function.

Contexts are persistent: extension returns a new context sharing
structure with the old one.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional

from .core import (
    Coda, Data, UNIT, BIT0, BIT1, brace_source, byte_atom, decode_bytes,
    pair, render,
)
from .language import read_literal

__all__ = [
    "AxiomViolation", "InvalidDomain", "Definition", "Context", "RuleEnv",
    "bootstrap", "empty_context", "extend", "extend_family", "with_binding",
    "lookup", "dispatch", "is_atom", "rigid", "serialize_context",
    "replay_context", "DEFAULT_ALPHABET",
]

DEFAULT_ALPHABET = bytes(range(0x20, 0x7F))


class AxiomViolation(Exception):
    """Two definitions claimed the same domain."""


class InvalidDomain(Exception):
    """A definition claimed a domain that is not fixed under the context."""


@dataclass(frozen=True)
class Definition:
    """One rule: codas whose left data begins with key map through fn/body."""
    name: str
    key: Optional[Coda]           # None claims the domain of ({}:)-shaped codas
    kind: str                     # "identity" | "native" | "defined"
    fn: Optional[Callable] = None
    body: Optional[Data] = None


@dataclass(frozen=True)
class Context:
    table: dict = field(default_factory=dict)        # key coda -> Definition
    family: dict = field(default_factory=dict)       # marker coda -> Definition
    bindings: dict = field(default_factory=dict)     # bytes name -> Data
    alphabet: bytes = DEFAULT_ALPHABET
    records: tuple = ()                              # replayable extensions

    def _replace(self, **kw) -> "Context":
        base = dict(table=self.table, family=self.family,
                    bindings=self.bindings, alphabet=self.alphabet,
                    records=self.records)
        base.update(kw)
        return Context(**base)

    def with_alphabet(self, alphabet: bytes) -> "Context":
        return self._replace(alphabet=alphabet)


class RuleEnv:
    """What a rule may see while firing: the context, mutably rebindable.

    Rules that extend the context (definitions, bindings) swap in the new
    context here; the evaluator carries the environment across steps.
    """

    __slots__ = ("context",)

    def __init__(self, context: Context):
        self.context = context

    def set_context(self, context: Context) -> None:
        self.context = context

    def is_atom(self, c: Coda) -> bool:
        return is_atom(self.context, c)

    def rigid(self, d: Data) -> bool:
        return rigid(self.context, d)

    @property
    def alphabet(self) -> bytes:
        return self.context.alphabet


def empty_context(alphabet: bytes = DEFAULT_ALPHABET) -> Context:
    return Context(alphabet=alphabet)


def _identity(name: str, key: Optional[Coda]) -> Definition:
    return Definition(name=name, key=key, kind="identity")


def bootstrap(alphabet: bytes = DEFAULT_ALPHABET) -> Context:
    """The minimal context: (), (:), bit 0 and bit 1 are atoms."""
    ctx = empty_context(alphabet)
    ctx = extend(ctx, _identity("empty", None))
    ctx = extend(ctx, _identity("unit", UNIT))
    ctx = extend(ctx, _identity("bit0", BIT0))
    ctx = extend(ctx, _identity("bit1", BIT1))
    return ctx


def _rigid_coda(ctx: Context, c: Coda) -> bool:
    if not is_atom(ctx, c):
        return False
    return all(_rigid_coda(ctx, x) for x in c.left) and \
        all(_rigid_coda(ctx, x) for x in c.right)


def rigid(ctx: Context, d: Data) -> bool:
    """True when every coda in d is hereditarily atomic: no rule can ever
    change d, under this context or any lawful extension of it."""
    return all(_rigid_coda(ctx, c) for c in d)


def extend(ctx: Context, defn: Definition) -> Context:
    """Add a definition, enforcing the axiom: domains never collide."""
    if defn.key is None:
        if None in ctx.table:
            raise AxiomViolation("the empty domain is already defined")
        if defn.kind != "identity":
            raise InvalidDomain(
                "the empty domain admits only the identity")
    else:
        if defn.key in ctx.table:
            raise AxiomViolation(
                f"domain already defined: {render((defn.key,))}")
        if not _rigid_coda(ctx, defn.key):
            raise InvalidDomain(
                f"domain key must be rigid: {render((defn.key,))}")
    table = dict(ctx.table)
    table[defn.key] = defn
    records = ctx.records
    if defn.kind == "defined":
        records = records + (("def", defn.key, defn.body),)
    return ctx._replace(table=table, records=records)


def extend_family(ctx: Context, defn: Definition) -> Context:
    """Add a definition for every domain whose key begins with defn.key."""
    if defn.key in ctx.family:
        raise AxiomViolation(
            f"domain family already defined: {render((defn.key,))}")
    family = dict(ctx.family)
    family[defn.key] = defn
    return ctx._replace(family=family)


def with_binding(ctx: Context, name: bytes, value: Data,
                 record: bool = True) -> Context:
    if name in ctx.bindings:
        raise AxiomViolation(f"binding already made: {name!r}")
    bindings = dict(ctx.bindings)
    bindings[name] = value
    records = ctx.records
    if record:
        records = records + (("let", byte_atom(name), value),)
    return ctx._replace(bindings=bindings, records=records)


def _find(ctx: Context, c: Coda) -> Optional[Definition]:
    key = c.left[0] if c.left else None
    defn = ctx.table.get(key)
    if defn is None and key is not None and key.left:
        defn = ctx.family.get(key.left[0])
    return defn


def is_atom(ctx: Context, c: Coda) -> bool:
    """True when c lies in the domain of an identity definition."""
    key = c.left[0] if c.left else None
    defn = ctx.table.get(key)
    return defn is not None and defn.kind == "identity"


def _apply_defined(body: Data, c: Coda) -> Data:
    """Substitute a stored body at a call site.

    Quoted sources in the body reopen with the call's argument and input;
    anything else passes through unchanged.
    """
    arg, inp = c.left[1:], c.right
    out = []
    for item in body:
        if brace_source(item) is not None:
            out.append(pair((item,) + arg, inp))
        else:
            out.append(item)
    return tuple(out)


def dispatch(env: RuleEnv, c: Coda) -> Optional[Data]:
    """Apply the context's rule for c, or None when c is undefined."""
    defn = _find(env.context, c)
    if defn is None:
        return None
    if defn.kind == "identity":
        return (c,)
    if defn.kind == "defined":
        return _apply_defined(defn.body, c)
    return defn.fn(c, env)


def lookup(ctx: Context, c: Coda) -> Optional[Data]:
    """Pure dispatch: context changes a rule makes are discarded."""
    return dispatch(RuleEnv(ctx), c)


def serialize_context(ctx: Context) -> str:
    """Render the replayable extensions (definitions and bindings)."""
    lines = []
    for kind, key, body in ctx.records:
        lines.append(f"{kind}\t{render((key,))}\t{render(body)}")
    return "\n".join(lines)


def replay_context(ctx: Context, text: str) -> Context:
    """Re-apply serialized extensions on top of ctx."""
    for line in text.splitlines():
        if not line.strip():
            continue
        kind, key_r, body_r = line.split("\t", 2)
        key_data = read_literal(key_r)
        if len(key_data) != 1:
            raise ValueError(f"bad serialized key: {key_r!r}")
        key = key_data[0]
        body = read_literal(body_r)
        if kind == "def":
            name = decode_bytes(key)
            label = name.decode("latin-1") if name is not None else key_r
            ctx = extend(ctx, Definition(
                name=label, key=key, kind="defined", body=body))
        elif kind == "let":
            name = decode_bytes(key)
            if name is None:
                raise ValueError(f"bad serialized binding name: {key_r!r}")
            ctx = with_binding(ctx, name, body)
        else:
            raise ValueError(f"unknown record kind: {kind!r}")
    return ctx
