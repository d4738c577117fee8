"""The shipped definitions.

Everything here is an ordinary context extension: sequence combinators,
the ap family, three-valued logic, equality, definition-making, number
arithmetic, byte-string streams, and the language rule itself. A fresh
working context is std_context().

Conventions, shared by all rules: a coda (w a1 a2 : b1 b2) carries the
rule word w, the argument data (a1 a2) and the input data (b1 b2). Rules
return the replacement data, or None to leave the coda alone this step
(the coda "waits"). Waiting is how partiality shows up; rules never
raise.
"""

from __future__ import annotations

from typing import Optional

from .core import (
    Coda, Data, EMPTY, LANG_MARK, brace_atom, byte_atom, decode_bytes,
    encode_bytes, pair,
)
from .context import (
    AxiomViolation, Context, Definition, InvalidDomain, RuleEnv, bootstrap,
    extend, extend_family, with_binding,
)
from .language import language_rule

__all__ = [
    "install_builtins", "std_context", "BUILTIN_NAMES",
    "NAT_MARK", "INT_MARK", "ERROR_MARK", "TRUE_DATA", "FALSE_DATA",
    "nat_value", "int_value", "nat_atom", "int_atom",
]

NAT_MARK = byte_atom(b"n")
INT_MARK = byte_atom(b"z")
ERROR_MARK = byte_atom(b"error")
_IF = byte_atom(b"if")

TRUE_DATA: Data = EMPTY
FALSE_DATA: Data = (pair(EMPTY, EMPTY),)


def _parts(c: Coda):
    return c.left[1:], c.right


def _bool(v: bool) -> Data:
    return TRUE_DATA if v else FALSE_DATA


def _logic(d: Data, env: RuleEnv) -> Optional[bool]:
    """True for empty data, False for data containing an atom, else None."""
    if not d:
        return True
    if any(env.is_atom(c) for c in d):
        return False
    return None


def _error(msg: str) -> Data:
    return (pair((ERROR_MARK,), encode_bytes(msg)),)


# --- numbers ------------------------------------------------------------------
#
# A number is a decimal byte atom like 12, or its tagged form (n:12);
# signed numbers use tag z. Tagged forms are atoms (identity on the tag),
# so numeric results count as decided data.

def _numeral(c: Coda) -> Optional[int]:
    b = decode_bytes(c)
    if b is None or not b.isdigit():
        return None
    return int(b.decode("ascii"))


def _signed_numeral(c: Coda) -> Optional[int]:
    b = decode_bytes(c)
    if b is None:
        return None
    body = b[1:] if b[:1] == b"-" else b
    if not body.isdigit():
        return None
    return int(b.decode("ascii"))


def _tagged(c: Coda, mark: Coda) -> Optional[Coda]:
    if len(c.left) == 1 and c.left[0] is mark and len(c.right) == 1:
        return c.right[0]
    return None


def nat_value(c: Coda) -> Optional[int]:
    v = _numeral(c)
    if v is not None:
        return v
    inner = _tagged(c, NAT_MARK)
    return _numeral(inner) if inner is not None else None


def int_value(c: Coda) -> Optional[int]:
    v = _signed_numeral(c)
    if v is not None:
        return v
    inner = _tagged(c, INT_MARK)
    if inner is not None:
        return _signed_numeral(inner)
    inner = _tagged(c, NAT_MARK)
    return _numeral(inner) if inner is not None else None


def nat_atom(v: int) -> Coda:
    return pair((NAT_MARK,), encode_bytes(str(v)))


def int_atom(v: int) -> Coda:
    return pair((INT_MARK,), encode_bytes(str(v)))


# --- sequence combinators -------------------------------------------------------

def _rule_pass(c, env):
    return c.right


def _rule_null(c, env):
    return EMPTY


def _rule_rev(c, env):
    b = c.right
    if not b:
        return EMPTY
    if len(b) == 1:
        return b if env.is_atom(b[0]) else None
    word = c.left[:1]
    return (pair(word, b[1:]), pair(word, b[:1]))


def _count_arg(arg: Data) -> Optional[int]:
    if not arg:
        return 1
    if len(arg) == 1:
        return nat_value(arg[0])
    return None


def _rule_first(c, env):
    arg, b = _parts(c)
    n = _count_arg(arg)
    if n is None:
        return None
    if n == 0 or not b:
        return EMPTY
    i = 0
    while i < len(b) and i < n and env.is_atom(b[i]):
        i += 1
    taken, rest = b[:i], b[i:]
    if i == n or not rest:
        return taken
    if i == 0:
        return None  # head still pending
    cont = pair((c.left[0], byte_atom(str(n - i).encode())), rest)
    return taken + (cont,)


def _rule_last(c, env):
    arg, b = _parts(c)
    n = _count_arg(arg)
    if n is None:
        return None
    if not b:
        return EMPTY
    if all(env.is_atom(x) for x in b):
        return b[len(b) - n:] if n else EMPTY
    return None


def _rule_skip(c, env):
    arg, b = _parts(c)
    n = _count_arg(arg)
    if n is None:
        return None
    if n == 0:
        return b
    if not b:
        return EMPTY
    i = 0
    while i < len(b) and i < n and env.is_atom(b[i]):
        i += 1
    if i == 0:
        return None
    rest = b[i:]
    if i == n:
        return rest
    if not rest:
        return EMPTY
    return (pair((c.left[0], byte_atom(str(n - i).encode())), rest),)


def _rule_if(c, env):
    arg, b = _parts(c)
    v = _logic(b, env)
    if v is None:
        return None
    return arg if v else EMPTY


# --- the ap family ---------------------------------------------------------------

def _rule_ap(c, env):
    arg, b = _parts(c)
    if not b:
        return EMPTY
    if len(b) == 1:
        if env.is_atom(b[0]):
            return (pair(tuple(arg), b),)
        return None
    return (pair(c.left, b[:1]), pair(c.left, b[1:]))


def _rule_app(c, env):
    arg, b = _parts(c)
    if not arg:
        return EMPTY
    return tuple(pair((a,), b) for a in arg)


def _rule_ap2(c, env):
    arg, b = _parts(c)
    if not arg:
        return None
    shared, xs = arg[0], arg[1:]
    if not xs or not b:
        return EMPTY
    if not env.is_atom(b[0]):
        return None
    head = pair((shared, xs[0]), b[:1])
    if len(xs) > 1 and len(b) > 1:
        return (head, pair((c.left[0], shared) + xs[1:], b[1:]))
    return (head,)


def _rule_aps(c, env):
    arg, b = _parts(c)
    if not b:
        return EMPTY
    if not env.is_atom(b[0]):
        return None
    if len(b) == 1:
        return b
    inner = pair(c.left, b[1:])
    return (pair(tuple(arg) + (b[0],), (inner,)),)


def _rule_apif(c, env):
    arg, b = _parts(c)
    if not b:
        return EMPTY
    head = b[0]
    if not env.is_atom(head):
        return None
    test = pair(tuple(arg), (head,))
    guarded = pair((_IF, head), (test,))
    if len(b) == 1:
        return (guarded,)
    return (guarded, pair(c.left, b[1:]))


# --- logic -----------------------------------------------------------------------

def _rule_not(c, env):
    v = _logic(c.right, env)
    return None if v is None else _bool(not v)


def _rule_bool(c, env):
    v = _logic(c.right, env)
    return None if v is None else _bool(v)


def _binary_logic(op):
    def rule(c, env):
        a = _logic(c.left[1:], env)
        if a is None:
            return None
        b = _logic(c.right, env)
        if b is None:
            return None
        return _bool(op(a, b))
    return rule


_rule_and = _binary_logic(lambda a, b: a and b)
_rule_or = _binary_logic(lambda a, b: a or b)
_rule_xor = _binary_logic(lambda a, b: a != b)
_rule_imply = _binary_logic(lambda a, b: (not a) or b)


def _rule_eq(c, env):
    a, b = _parts(c)
    if a == b:
        return TRUE_DATA
    if env.rigid(a) and env.rigid(b):
        return FALSE_DATA
    # Empty vs atomic is a never-equal witness even while one side may
    # still rewrite: no extension makes an atom disappear.
    la, lb = _logic(a, env), _logic(b, env)
    if (la is True and lb is False) or (la is False and lb is True):
        return FALSE_DATA
    return None


# --- definitions at runtime --------------------------------------------------------

def _name_of(arg: Data) -> Optional[bytes]:
    if len(arg) != 1:
        return None
    return decode_bytes(arg[0])


def _rule_def(c, env):
    arg, body = _parts(c)
    name = _name_of(arg)
    if name is None:
        return _error("def needs a single byte-atom name")
    key = arg[0]
    existing = env.context.table.get(key)
    if existing is not None:
        if existing.kind == "defined" and existing.body == body:
            return TRUE_DATA
        return _error(f"domain already defined: {name.decode('latin-1')}")
    try:
        env.set_context(extend(env.context, Definition(
            name=name.decode("latin-1"), key=key, kind="defined", body=body)))
    except (AxiomViolation, InvalidDomain) as exc:
        return _error(str(exc))
    return TRUE_DATA


def _rule_let(c, env):
    arg, body = _parts(c)
    name = _name_of(arg)
    if name is None:
        return _error("let needs a single byte-atom name")
    current = env.context.bindings.get(name)
    if current is not None:
        if current == body:
            return TRUE_DATA
        return _error(f"binding already made: {name.decode('latin-1')}")
    env.set_context(with_binding(env.context, name, body))
    return TRUE_DATA


def _rule_query(c, env):
    arg, b = _parts(c)
    if arg or len(b) != 1:
        return None
    name = decode_bytes(b[0])
    if name is None:
        return None
    return env.context.bindings.get(name)


# --- streams ----------------------------------------------------------------------

def _rule_nat(c, env):
    arg, b = _parts(c)
    if arg or len(b) != 1:
        return None
    v = _numeral(b[0])
    if v is None:
        return None
    return (b[0], pair(c.left, encode_bytes(str(v + 1))))


def _succ_string(s: bytes, alphabet: bytes, maxlen: Optional[int]) -> Optional[bytes]:
    """Next byte string in length-then-lexicographic order, None past the end."""
    order = {ch: i for i, ch in enumerate(alphabet)}
    buf = bytearray(s)
    for i in range(len(buf) - 1, -1, -1):
        p = order.get(buf[i])
        if p is None:
            return None  # foreign state: end the stream rather than guess
        if p + 1 < len(alphabet):
            return bytes(buf[:i]) + bytes([alphabet[p + 1]]) + \
                bytes([alphabet[0]]) * (len(buf) - i - 1)
    if maxlen is not None and len(s) + 1 > maxlen:
        return None
    return bytes([alphabet[0]]) * (len(s) + 1)


def _emit_string(c, env, state: Data, maxlen: Optional[int]) -> Optional[Data]:
    if not state:
        nxt = b""
    elif len(state) == 1:
        cur = decode_bytes(state[0])
        if cur is None:
            return None
        nxt = _succ_string(cur, env.alphabet, maxlen)
        if nxt is None:
            return EMPTY
    else:
        return None
    cont = pair((c.left[0], byte_atom(nxt)), c.right)
    return (byte_atom(nxt), cont)


def _rule_bytes(c, env):
    arg, b = _parts(c)
    if len(b) != 1:
        return None
    maxlen = nat_value(b[0])
    if maxlen is None:
        return None
    return _emit_string(c, env, arg, maxlen)


def _rule_all_byte_sequences(c, env):
    arg, b = _parts(c)
    if b:
        return None
    return _emit_string(c, env, arg, None)


def _rule_coda(c, env):
    arg, b = _parts(c)
    if arg:
        return None
    if not b:
        return EMPTY
    mapped = []
    i = 0
    while i < len(b):
        s = decode_bytes(b[i])
        if s is None:
            break
        mapped.append(pair((brace_atom(s),), EMPTY))
        i += 1
    if i == 0:
        return None
    out = tuple(mapped)
    if i < len(b):
        out += (pair(c.left, b[i:]),)
    return out


# --- arithmetic over tagged numbers --------------------------------------------------

def _number_family(arg: Data):
    """(value_reader, result_maker) chosen by the family argument n or z."""
    if len(arg) != 1:
        return None
    tag = decode_bytes(arg[0])
    if tag == b"n":
        return nat_value, nat_atom
    if tag == b"z":
        return int_value, int_atom
    return None


def _fold_rule(start, combine):
    def rule(c, env):
        fam = _number_family(c.left[1:])
        if fam is None:
            return None
        read, make = fam
        acc = start
        for item in c.right:
            v = read(item)
            if v is not None:
                acc = combine(acc, v)
        return (make(acc),)
    return rule


_rule_sum = _fold_rule(0, lambda a, b: a + b)
_rule_prod = _fold_rule(1, lambda a, b: a * b)


def _map_rule(transform):
    def rule(c, env):
        fam = _number_family(c.left[1:])
        if fam is None:
            return None
        read, make = fam
        out = []
        for item in c.right:
            v = read(item)
            if v is not None:
                out.append(make(transform(v)))
        return tuple(out)
    return rule


_rule_type = _map_rule(lambda v: v)
_rule_dbl = _map_rule(lambda v: 2 * v)
_rule_sqr = _map_rule(lambda v: v * v)
_rule_neg = _map_rule(lambda v: -v)


def _rule_sort(c, env):
    fam = _number_family(c.left[1:])
    if fam is None:
        return None
    read, make = fam
    vals = sorted(v for v in map(read, c.right) if v is not None)
    return tuple(make(v) for v in vals)


# --- the number-naming paradox ingredients ---------------------------------------------

def _rule_posint(c, env):
    arg, b = _parts(c)
    if arg:
        return None
    if not b:
        return EMPTY
    kept = []
    i = 0
    while i < len(b):
        item = b[i]
        if not env.is_atom(item):
            break
        v = int_value(item)
        if v is not None and v >= 1:
            kept.append(item)
        i += 1
    if i == 0:
        return None
    out = tuple(kept)
    if i < len(b):
        out += (pair(c.left, b[i:]),)
    return out


def _rule_berry(c, env):
    arg, b = _parts(c)
    if arg:
        return None
    seen = set()
    for item in b:
        if not env.is_atom(item):
            return None
        v = int_value(item)
        if v is not None and v >= 1:
            seen.add(v)
    k = 1
    while k in seen:
        k += 1
    return encode_bytes(str(k))


# --- installation ----------------------------------------------------------------------

_RULES = (
    ("pass", _rule_pass),
    ("null", _rule_null),
    ("rev", _rule_rev),
    ("first", _rule_first),
    ("last", _rule_last),
    ("skip", _rule_skip),
    ("if", _rule_if),
    ("ap", _rule_ap),
    ("app", _rule_app),
    ("ap2", _rule_ap2),
    ("aps", _rule_aps),
    ("apif", _rule_apif),
    ("not", _rule_not),
    ("and", _rule_and),
    ("or", _rule_or),
    ("xor", _rule_xor),
    ("imply", _rule_imply),
    ("bool", _rule_bool),
    ("=", _rule_eq),
    ("def", _rule_def),
    ("let", _rule_let),
    ("?", _rule_query),
    ("nat", _rule_nat),
    ("bytes", _rule_bytes),
    ("allByteSequences", _rule_all_byte_sequences),
    ("coda", _rule_coda),
    ("sum", _rule_sum),
    ("prod", _rule_prod),
    ("sort", _rule_sort),
    ("type", _rule_type),
    ("dbl", _rule_dbl),
    ("sqr", _rule_sqr),
    ("neg", _rule_neg),
    ("posint", _rule_posint),
    ("berry", _rule_berry),
)

BUILTIN_NAMES = tuple(name for name, _ in _RULES)

_IDENTITY_DOMAINS = (
    ("n", NAT_MARK),
    ("z", INT_MARK),
    ("error", ERROR_MARK),
    ("quoted-source", LANG_MARK),
)


def install_builtins(ctx: Context) -> Context:
    for name, key in _IDENTITY_DOMAINS:
        ctx = extend(ctx, Definition(name=name, key=key, kind="identity"))
    ctx = extend_family(ctx, Definition(
        name="language", key=LANG_MARK, kind="native", fn=language_rule))
    for name, fn in _RULES:
        ctx = extend(ctx, Definition(
            name=name, key=byte_atom(name.encode()), kind="native", fn=fn))
    return ctx


def std_context(alphabet: Optional[bytes] = None) -> Context:
    """Bootstrap identities plus every shipped definition."""
    ctx = bootstrap() if alphabet is None else bootstrap(alphabet)
    return install_builtins(ctx)
