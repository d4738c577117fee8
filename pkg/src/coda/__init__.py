"""coda: a rewriting kernel where everything is data.

The algebra has one constructor (an ordered pair of sequences), one
axiom (a name means one thing), and a three-valued logic read straight
off the shape of a result. On top sit a small total language, a
step-counting evaluator, law checkers for spaces and morphisms, a
demonstration corpus of classic self-referential sentences, a CLI, and
an HTTP service that holds live sessions.
"""

from .core import (
    Coda, Data, EMPTY, UNIT, BIT0, BIT1, pair, data, concat,
    byte_atom, encode_bytes, decode_bytes, brace_atom, brace_source,
    render, render_coda, structural_equal,
)
from .context import (
    AxiomViolation, Context, Definition, InvalidDomain, RuleEnv,
    empty_context, replay_context, serialize_context,
)
from .builtins import BUILTIN_NAMES, int_atom, int_value, nat_atom, \
    nat_value, std_context
from .language import (
    LiteralError, compile_source, read_literal, resolve_language,
    resolve_source,
)
from .eval import (
    EvalStatus, EvalTrace, LogicValue, classify, evaluate, render_in,
    step, trace_lines,
)
from .spaces import (
    LawReport, SampleConfig, SearchResult, candidate_data,
    check_antispace, check_morphism, check_space, parity_samples,
    search_classifier,
)
from .demos import DEMOS, DemoReport, run_demo

__version__ = "0.1.0"

__all__ = [
    "Coda", "Data", "EMPTY", "UNIT", "BIT0", "BIT1", "pair", "data",
    "concat", "byte_atom", "encode_bytes", "decode_bytes", "brace_atom",
    "brace_source", "render", "render_coda", "structural_equal",
    "AxiomViolation", "Context", "Definition", "InvalidDomain", "RuleEnv",
    "empty_context", "replay_context", "serialize_context",
    "BUILTIN_NAMES", "int_atom", "int_value", "nat_atom", "nat_value",
    "std_context",
    "LiteralError", "compile_source", "read_literal", "resolve_language",
    "resolve_source",
    "EvalStatus", "EvalTrace", "LogicValue", "classify", "evaluate",
    "render_in", "step", "trace_lines",
    "LawReport", "SampleConfig", "SearchResult", "candidate_data",
    "check_antispace", "check_morphism", "check_space", "parity_samples",
    "search_classifier",
    "DEMOS", "DemoReport", "run_demo",
    "__version__",
]
