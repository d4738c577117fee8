"""The total syntax.

Any byte sequence is a valid program: source text s compiles to the data
({s}:), where {s} is the inert brace atom quoting s. Codas whose domain is
a brace atom are rewritten by the language rule, one split per rewrite:

  juxtaposition   ({x y} A:B)  ->  ({x} A:B) ({y} A:B)
  application     ({x : y} A:B) -> ({x} A:B):({y} A:B)
  argument        ({A} A:B)    ->  A
  input           ({B} A:B)    ->  B

plus sugar: x=y for (= x:y), a trailing ? for (?:x), and x*y for the
composition x:(y: ...). Only ():{}=*/? and whitespace carry meaning;
everything else is a bare word naming a byte atom. Unknown constructs
degrade to byte atoms rather than failing: compilation is total.
"""

from __future__ import annotations

import logging
from typing import Optional

from .core import (
    Coda, Data, EMPTY, brace_atom, brace_source, byte_atom, decode_bytes,
    encode_bytes, pair,
)

__all__ = [
    "compile_source", "language_rule", "resolve_source", "resolve_language",
    "read_literal", "LiteralError",
]

log = logging.getLogger("coda.language")

_EQ = byte_atom(b"=")
_QUERY = byte_atom(b"?")

_WS = " \t\n\r\x0b\x0c"


def compile_source(src) -> Data:
    """s -> ({s}:), the application of the quoted source to nothing."""
    return (pair((brace_atom(src),), EMPTY),)


# --- top-level scanning -------------------------------------------------------

def _spans(s: str):
    """Yield (index, char, top) where top means depth 0 outside literals."""
    depth_p = depth_b = 0
    in_angle = False
    for i, ch in enumerate(s):
        if in_angle:
            if ch == ">":
                in_angle = False
            yield i, ch, False
            continue
        if ch == "<":
            in_angle = True
            yield i, ch, False
            continue
        if ch == "(":
            yield i, ch, depth_p == 0 and depth_b == 0
            depth_p += 1
            continue
        if ch == ")":
            if depth_p > 0:
                depth_p -= 1
                yield i, ch, False
            else:
                yield i, ch, True  # stray closer: ordinary character
            continue
        if ch == "{":
            yield i, ch, depth_p == 0 and depth_b == 0
            depth_b += 1
            continue
        if ch == "}":
            if depth_b > 0:
                depth_b -= 1
                yield i, ch, False
            else:
                yield i, ch, True
            continue
        yield i, ch, depth_p == 0 and depth_b == 0


def _find_top(s: str, chars: str) -> int:
    for i, ch, top in _spans(s):
        if top and ch in chars:
            return i
    return -1


def _split_terms(s: str) -> list:
    terms = []
    start = None
    for i, ch, top in _spans(s):
        if top and ch in _WS:
            if start is not None:
                terms.append(s[start:i])
                start = None
        elif start is None:
            start = i
    if start is not None:
        terms.append(s[start:])
    return terms


# --- the rewrite itself -------------------------------------------------------

def _app(src: str, arg: Data, inp: Data) -> Coda:
    """({src} arg : inp)"""
    return pair((brace_atom(src.strip()),) + tuple(arg), inp)


def language_step(src: bytes, arg: Data, inp: Data) -> Data:
    """One split of a language application. Total."""
    s = src.decode("latin-1").strip()
    if not s:
        return EMPTY

    # Composition splits first: "x*y : z" reads as x:(y:z); a bare "x*y"
    # threads the call-site input into y so compositions stay applicable.
    star = _find_top(s, "*")
    if star >= 0:
        x, y = s[:star], s[star + 1:]
        left = (_app(x, arg, inp),)
        if _find_top(y, ":") >= 0:
            return (pair(left, (_app(y, arg, inp),)),)
        return (pair(left, (pair((_app(y, arg, inp),), inp),)),)

    colon = _find_top(s, ":")
    if colon >= 0:
        x, y = s[:colon], s[colon + 1:]
        return (pair((_app(x, arg, inp),), (_app(y, arg, inp),)),)

    terms = _split_terms(s)
    if len(terms) > 1:
        return tuple(_app(t, arg, inp) for t in terms)
    return _term(terms[0] if terms else "", arg, inp)


def _whole_group(t: str, open_ch: str, close_ch: str) -> Optional[str]:
    """Body when t is exactly one balanced group, else None."""
    if len(t) < 2 or t[0] != open_ch or t[-1] != close_ch:
        return None
    depth = 0
    for i, ch in enumerate(t):
        if ch == open_ch:
            depth += 1
        elif ch == close_ch:
            depth -= 1
            if depth == 0:
                return t[1:-1] if i == len(t) - 1 else None
    return None


def _term(t: str, arg: Data, inp: Data) -> Data:
    if t == "A":
        return arg
    if t == "B":
        return inp

    eq = _find_top(t, "=")
    if eq >= 0 and len(t) > 1:
        x, y = t[:eq], t[eq + 1:]
        left = (_EQ,) + (_app(x, arg, inp),) if x else (_EQ,)
        return (pair(left, (_app(y, arg, inp),) if y else EMPTY),)

    if len(t) > 1 and t.endswith("?"):
        return (pair((_QUERY,), (_app(t[:-1], arg, inp),)),)

    body = _whole_group(t, "(", ")")
    if body is not None:
        return (_app(body, arg, inp),)

    body = _whole_group(t, "{", "}")
    if body is not None:
        return (brace_atom(body),)

    if t.startswith("<"):
        end = t.find(">")
        if end == len(t) - 1:
            return encode_bytes(t[1:-1].encode("latin-1"))
        if end < 0:
            return encode_bytes(t[1:].encode("latin-1"))
        # stray '>' mid-term: degrade to a word below

    if "/" in t:
        log.info("reserved character '/' treated as an ordinary byte in %r", t)
    return encode_bytes(t.encode("latin-1"))


def language_rule(c: Coda, env) -> Optional[Data]:
    """Context rule for codas whose domain is a brace atom."""
    if not c.left:
        return None
    src = brace_source(c.left[0])
    if src is None:
        return None
    return language_step(src, c.left[1:], c.right)


# --- eager resolution ---------------------------------------------------------

def resolve_language(d: Data) -> Data:
    """Rewrite every language application in d to quiescence.

    Used by entry points that accept source text, so that evaluation
    budgets are spent on substance rather than on compile steps. Brace
    atoms (quotations) are left alone; only applications rewrite.
    """
    changed = True
    while changed:
        d, changed = _resolve_pass(d)
    return d


def _resolve_pass(d: Data):
    out = []
    changed = False
    for c in d:
        left, ch_l = _resolve_pass(c.left)
        right, ch_r = _resolve_pass(c.right)
        if ch_l or ch_r:
            c = pair(left, right)
            changed = True
        if c.left:
            src = brace_source(c.left[0])
            if src is not None:
                out.extend(language_step(src, c.left[1:], c.right))
                changed = True
                continue
        out.append(c)
    return tuple(out), changed


def resolve_source(src) -> Data:
    """Compile source text eagerly: all language splits applied up front."""
    return resolve_language(compile_source(src))


# --- strict literal reading ---------------------------------------------------

class LiteralError(ValueError):
    """Raised when text is not a rendering of data."""


_DELIMS = set("(){}<> \t\n\r\x0b\x0c:")


def read_literal(s: str) -> Data:
    """Strict inverse of render: parse exactly one rendered data."""
    items, i = _parse_data(s, 0, stop=":")
    i = _skip_ws(s, i)
    if i != len(s):
        raise LiteralError(f"trailing text at {i}: {s[i:]!r}")
    return items


def _skip_ws(s: str, i: int) -> int:
    while i < len(s) and s[i] in _WS:
        i += 1
    return i


def _parse_data(s: str, i: int, stop: str):
    items = []
    while True:
        i = _skip_ws(s, i)
        if i >= len(s) or s[i] in stop or s[i] == ")":
            return tuple(items), i
        item, i = _parse_item(s, i)
        if item is not None:
            items.append(item)


def _parse_item(s: str, i: int):
    ch = s[i]
    if ch == "(":
        left, j = _parse_data(s, i + 1, stop=":")
        if j < len(s) and s[j] == ")":
            if left:
                raise LiteralError(f"missing ':' in pair at {i}")
            return None, j + 1  # "()": the empty data, contributing no item
        if j >= len(s) or s[j] != ":":
            raise LiteralError(f"unterminated pair at {i}")
        right, j = _parse_data(s, j + 1, stop="")
        if j >= len(s) or s[j] != ")":
            raise LiteralError(f"unterminated pair at {i}")
        return pair(left, right), j + 1
    if ch == "<":
        end = s.find(">", i + 1)
        if end < 0:
            raise LiteralError(f"unterminated byte literal at {i}")
        return byte_atom(s[i + 1:end].encode("latin-1")), end + 1
    if ch == "{":
        depth = 0
        for j in range(i, len(s)):
            if s[j] == "{":
                depth += 1
            elif s[j] == "}":
                depth -= 1
                if depth == 0:
                    return brace_atom(s[i + 1:j].encode("latin-1")), j + 1
        raise LiteralError(f"unterminated quotation at {i}")
    if ch in _DELIMS:
        raise LiteralError(f"unexpected {ch!r} at {i}")
    j = i
    while j < len(s) and s[j] not in _DELIMS:
        j += 1
    return byte_atom(s[i:j].encode("latin-1")), j
