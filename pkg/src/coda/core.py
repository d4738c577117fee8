"""Pure data algebra.

A coda is an ordered pair of data; data is a finite sequence of codas.
That is the whole ontology: bits, bytes, numbers and programs are all
particular shapes built from the empty data () and the pairing (:).

Codas are interned: constructing the same pair twice yields the same
object, so structural equality is (almost always) pointer equality and
any coda can serve as a dict key in O(1). Interning is an implementation
detail; nothing observable depends on it.
"""

from __future__ import annotations

import sys
from typing import Iterable, Optional

sys.setrecursionlimit(max(sys.getrecursionlimit(), 20000))

__all__ = [
    "Coda", "Data", "EMPTY", "UNIT", "BIT0", "BIT1", "LANG_MARK",
    "pair", "concat", "data", "domain_of", "domain_key", "structural_equal",
    "encode_bytes", "byte_atom", "decode_bytes", "encode_bits", "decode_bits",
    "brace_atom", "brace_source", "render", "render_coda",
]


class Coda:
    """An ordered pair of data. Construct through pair(), never directly."""

    __slots__ = ("left", "right", "_hash")

    def __init__(self, left: "Data", right: "Data"):
        self.left = left
        self.right = right
        self._hash = hash((left, right))

    def __hash__(self) -> int:
        return self._hash

    def __eq__(self, other: object) -> bool:
        if self is other:
            return True
        # Interning makes this fallback nearly dead code; kept so that
        # accidental direct construction still compares structurally.
        if not isinstance(other, Coda):
            return NotImplemented
        return self.left == other.left and self.right == other.right

    def __repr__(self) -> str:
        return f"Coda({render_coda(self)!r})"


# Data is a tuple of codas. The empty tuple is the datum "true".
Data = tuple  # tuple[Coda, ...]

EMPTY: Data = ()

_POOL: dict = {}


def pair(left: Data, right: Data) -> Coda:
    """The coda (left:right), interned."""
    key = (left, right)
    c = _POOL.get(key)
    if c is None:
        c = Coda(left, right)
        _POOL[key] = c
    return c


def data(*items: Coda) -> Data:
    return tuple(items)


def concat(*parts: Data) -> Data:
    """Sequence concatenation: the monoid operation, identity EMPTY."""
    out: list = []
    for p in parts:
        out.extend(p)
    return tuple(out)


def domain_of(c: Coda) -> Data:
    """First coda of the left data, as data of length <= 1."""
    return c.left[:1]


def domain_key(d: Data) -> Optional[Coda]:
    """Canonical dict key for a domain: the coda itself, or None for ()."""
    return d[0] if d else None


def structural_equal(a: Data, b: Data) -> bool:
    return a == b


# --- bit and byte encodings -------------------------------------------------

UNIT = pair(EMPTY, EMPTY)            # (:)
BIT0 = pair((UNIT,), EMPTY)          # ((:):)
BIT1 = pair((UNIT,), (UNIT,))        # ((:):(:))

_BYTE_ATOMS: dict = {}


def byte_atom(s) -> Coda:
    """The atom carrying the byte string s (str is encoded as UTF-8)."""
    if isinstance(s, str):
        s = s.encode("utf-8")
    c = _BYTE_ATOMS.get(s)
    if c is None:
        bits = [BIT1]
        for byte in s:
            for i in range(7, -1, -1):
                bits.append(BIT1 if (byte >> i) & 1 else BIT0)
        c = pair(tuple(bits), EMPTY)
        _BYTE_ATOMS[s] = c
    return c


def encode_bytes(s) -> Data:
    """Injective byte-string encoding: data holding one byte atom."""
    return (byte_atom(s),)


def decode_bytes(c: Coda) -> Optional[bytes]:
    """Inverse of byte_atom, or None when c is not a byte atom."""
    if c.right or not c.left or c.left[0] is not BIT1:
        return None
    bits = c.left[1:]
    if len(bits) % 8 != 0:
        return None
    out = bytearray()
    acc = 0
    for i, b in enumerate(bits):
        if b is BIT1:
            acc = (acc << 1) | 1
        elif b is BIT0:
            acc = acc << 1
        else:
            return None
        if i % 8 == 7:
            out.append(acc)
            acc = 0
    return bytes(out)


def encode_bits(bits: Iterable[int]) -> Data:
    """A bit-sequence atom: left data is bit0 followed by the bit codas."""
    items = [BIT0]
    for b in bits:
        items.append(BIT1 if b else BIT0)
    return (pair(tuple(items), EMPTY),)


def decode_bits(c: Coda) -> Optional[list]:
    if c.right or not c.left or c.left[0] is not BIT0:
        return None
    out = []
    for b in c.left[1:]:
        if b is BIT1:
            out.append(1)
        elif b is BIT0:
            out.append(0)
        else:
            return None
    return out


# --- the language marker ----------------------------------------------------
#
# A brace atom {src} is the inert quotation of a source text. It is the
# coda (M s :) where M is the marker atom below and s the byte atom of the
# source. Codas whose domain is a brace atom are what the language rewrites;
# the brace atoms themselves are atoms (identity rule on the marker domain).

LANG_MARK = byte_atom(b"{}")


def brace_atom(src) -> Coda:
    if isinstance(src, str):
        src = src.encode("utf-8")
    return pair((LANG_MARK, byte_atom(src)), EMPTY)


def brace_source(c: Coda) -> Optional[bytes]:
    """Source text of a brace atom, or None."""
    if c.right or len(c.left) != 2 or c.left[0] is not LANG_MARK:
        return None
    return decode_bytes(c.left[1])


# --- rendering ----------------------------------------------------------------

_BARE_EXCLUDE = frozenset(b' \t\n\r\x0b\x0c(){}<>:=*/?')


def _bare_ok(b: bytes) -> bool:
    return bool(b) and all(33 <= x <= 126 and x not in _BARE_EXCLUDE for x in b)


def _angle_ok(b: bytes) -> bool:
    return all(32 <= x <= 126 and x != 0x3E for x in b)  # no '>' inside


def render(d: Data, atom_test=None) -> str:
    """Printable form: space-separated items, '()' for the empty data.

    atom_test, when given, is a predicate marking codas some context
    holds fixed. Such pairs print compactly, like values: "(n:8)".
    Pairs that may still rewrite print with a spaced colon, like the
    applications they are: "(nat : 1)".
    """
    return _render_data(d, atom_test, {})


def render_coda(c: Coda, atom_test=None) -> str:
    return _render_one(c, atom_test, {})


def _render_data(d: Data, atom_test, memo: dict) -> str:
    if not d:
        return "()"
    return " ".join(_render_one(c, atom_test, memo) for c in d)


def _render_one(c: Coda, atom_test, memo: dict) -> str:
    s = memo.get(c)
    if s is None:
        s = _render_coda(c, atom_test, memo)
        memo[c] = s
    return s


def _render_coda(c: Coda, atom_test, memo: dict) -> str:
    b = decode_bytes(c)
    if b is not None:
        if _bare_ok(b):
            return b.decode("latin-1")
        if _angle_ok(b):
            return "<" + b.decode("latin-1") + ">"
        # fall through: bytes that neither form can carry print structurally
    else:
        src = brace_source(c)
        if src is not None:
            return "{" + src.decode("latin-1") + "}"
    left = _render_data(c.left, atom_test, memo) if c.left else ""
    right = _render_data(c.right, atom_test, memo) if c.right else ""
    if left and right and not (atom_test is not None and atom_test(c)):
        return "(" + left + " : " + right + ")"
    return "(" + left + ":" + right + ")"
