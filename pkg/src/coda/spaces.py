"""Spaces, morphisms, and searching for classifiers.

A space is data A satisfying A:(A:X)(A:Y) = A:(X Y): combining two
A-processed pieces is the same as A-processing the concatenation. A
morphism F from space A to space B satisfies F:(A:X) = B:(F:X). An
anti-space B neutralizes A elementwise: A:(A:X)(B:X) = (A:) in either
order. All three are checked empirically: evaluate both sides on random
samples and compare the resulting data.

A sample is conclusive when both sides stop rewriting within budget (a
fixed point or a cycle) or agree outright. Sides that agree satisfy the
law whatever they are; sides that differ refute it only when both are
decided, since undecided data could still converge under a longer
budget or a richer context.

search_classifier enumerates candidate data over a vocabulary and keeps
the ones that evaluate true on every positive sample and false on every
negative one: law checking run in reverse, from behavior to definition.
"""

from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

from .core import Coda, Data, UNIT, brace_atom, byte_atom, concat, \
    decode_bytes, pair
from .context import Context
from .eval import EvalStatus, LogicValue, evaluate, render_in
from .language import resolve_source
from .builtins import nat_atom

__all__ = [
    "SampleConfig", "LawReport", "SearchResult", "sample_pool",
    "number_pool", "gen_data", "apply_to", "candidate_data", "check_space",
    "check_morphism", "check_antispace", "parity_samples",
    "search_classifier",
]


@dataclass(frozen=True)
class SampleConfig:
    samples: int = 200        # conclusive samples required
    attempts: int = 4000      # total draws allowed while collecting them
    seed: int = 7
    budget: int = 10
    max_len: int = 4          # items per generated data


@dataclass(frozen=True)
class LawReport:
    name: str
    law: str
    holds: bool
    conclusive: int
    attempts: int
    counterexample: Optional[Tuple[str, str, str]] = None  # (sample, lhs, rhs)
    notes: str = ""


@dataclass(frozen=True)
class SearchResult:
    accepted: List[Tuple[str, ...]] = field(default_factory=list)
    tried: int = 0
    elapsed: float = 0.0


def sample_pool() -> Tuple[Coda, ...]:
    """Mixed atoms: structure for logic, letters for inertness, numbers."""
    return (
        UNIT,
        byte_atom(b"a"), byte_atom(b"b"), byte_atom(b"c"),
        byte_atom(b"0"), byte_atom(b"1"), byte_atom(b"2"), byte_atom(b"3"),
        nat_atom(5),
    )


def number_pool() -> Tuple[Coda, ...]:
    return tuple(byte_atom(str(k).encode()) for k in range(10)) + \
        (nat_atom(11), nat_atom(12))


def gen_data(rng: random.Random, pool: Sequence[Coda], max_len: int) -> Data:
    return tuple(rng.choice(pool) for _ in range(rng.randrange(max_len + 1)))


def apply_to(candidate: Data, x: Data) -> Data:
    """The application (candidate : x) as data."""
    return (pair(tuple(candidate), x),)


def candidate_data(src: str) -> Data:
    """Data naming an operation, from source text.

    Word sequences become their atoms, so application puts the words at
    the head of the pair where dispatch finds them. Anything with real
    structure (compositions, colons) stays quoted and lets the language
    rebuild the application around the eventual input.
    """
    resolved = resolve_source(src)
    if resolved and all(decode_bytes(c) is not None for c in resolved):
        return resolved
    return (brace_atom(src),)


def _outcome(ctx: Context, d: Data, budget: int):
    trace = evaluate(ctx, d, budget=budget, probe=False)
    settled = trace.status is not EvalStatus.BUDGET
    return trace.final, trace.logic, settled


def _check_law(ctx: Context, name: str, law: str, make_sides, samples,
               config: SampleConfig) -> LawReport:
    """Shared engine: make_sides(sample) -> (lhs, rhs) data to compare."""
    conclusive = 0
    attempts = 0
    for sample in samples:
        if conclusive >= config.samples or attempts >= config.attempts:
            break
        attempts += 1
        lhs, rhs = make_sides(sample)
        fl, cl, sl = _outcome(ctx, lhs, config.budget)
        fr, cr, sr = _outcome(ctx, rhs, config.budget)
        if fl == fr:
            conclusive += 1
            continue
        if not (sl and sr):
            continue  # truncated and different: no verdict either way
        decided = (LogicValue.TRUE, LogicValue.FALSE)
        if cl in decided and cr in decided:
            return LawReport(
                name=name, law=law, holds=False,
                conclusive=conclusive + 1, attempts=attempts,
                counterexample=(_render_sample(ctx, sample),
                                render_in(ctx, fl), render_in(ctx, fr)))
        # settled but undecided on at least one side: a richer context
        # could still reconcile them, so the sample proves nothing
    return LawReport(name=name, law=law, holds=True,
                     conclusive=conclusive, attempts=attempts)


def _render_sample(ctx: Context, sample) -> str:
    if isinstance(sample, tuple) and len(sample) == 2 \
            and all(isinstance(s, tuple) for s in sample):
        x, y = sample
        return f"X={render_in(ctx, x)} Y={render_in(ctx, y)}"
    return render_in(ctx, sample)


def _pair_samples(config: SampleConfig, pool: Sequence[Coda]):
    rng = random.Random(config.seed)
    while True:
        yield (gen_data(rng, pool, config.max_len),
               gen_data(rng, pool, config.max_len))


def _single_samples(config: SampleConfig, pool: Sequence[Coda]):
    rng = random.Random(config.seed)
    while True:
        yield gen_data(rng, pool, config.max_len)


def check_space(ctx: Context, space: Data, name: str = "",
                config: SampleConfig = SampleConfig(),
                pool: Optional[Sequence[Coda]] = None) -> LawReport:
    pool = sample_pool() if pool is None else pool

    def sides(sample):
        x, y = sample
        lhs = apply_to(space, apply_to(space, x) + apply_to(space, y))
        rhs = apply_to(space, concat(x, y))
        return lhs, rhs

    return _check_law(ctx, name or render_in(ctx, space),
                      "A:(A:X)(A:Y) = A:(X Y)",
                      sides, _pair_samples(config, pool), config)


def check_morphism(ctx: Context, fmap: Data, src: Data, dst: Data,
                   name: str = "", config: SampleConfig = SampleConfig(),
                   pool: Optional[Sequence[Coda]] = None) -> LawReport:
    pool = number_pool() if pool is None else pool

    def sides(x):
        lhs = apply_to(fmap, apply_to(src, x))
        rhs = apply_to(dst, apply_to(fmap, x))
        return lhs, rhs

    return _check_law(ctx, name or render_in(ctx, fmap),
                      "F:(A:X) = B:(F:X)",
                      sides, _single_samples(config, pool), config)


def check_antispace(ctx: Context, space: Data, anti: Data,
                    name: str = "", config: SampleConfig = SampleConfig(),
                    pool: Optional[Sequence[Coda]] = None) -> LawReport:
    """Both neutralization orders against the neutral element (A:)."""
    pool = number_pool() if pool is None else pool
    neutral = apply_to(space, ())

    def sides_flat(x):
        lhs = apply_to(space, apply_to(space, x) + apply_to(anti, x))
        return lhs, neutral

    first = _check_law(ctx, name, "A:(A:X)(B:X) = (A:)",
                       sides_flat, _single_samples(config, pool), config)
    if not first.holds:
        return first

    def sides_rev(x):
        lhs = apply_to(space, apply_to(anti, x) + apply_to(space, x))
        return lhs, neutral

    second = _check_law(ctx, name, "A:(B:X)(A:X) = (A:)",
                        sides_rev, _single_samples(config, pool), config)
    if not second.holds:
        return second
    return LawReport(name=name, law="A:(A:X)(B:X) = A:(B:X)(A:X) = (A:)",
                     holds=True,
                     conclusive=min(first.conclusive, second.conclusive),
                     attempts=first.attempts + second.attempts)


def parity_samples(even: int = 10, odd: int = 10, seed: int = 3):
    """Atom sequences for the parity search: (positives, negatives)."""
    rng = random.Random(seed)
    atoms = (UNIT, byte_atom(b"a"), byte_atom(b"b"), byte_atom(b"c"))
    def seq(n):
        return tuple(rng.choice(atoms) for _ in range(n))
    even_lengths = [0, 2, 4, 6, 8, 10, 2, 4, 6, 8][:even]
    odd_lengths = [1, 3, 5, 7, 9, 1, 3, 5, 7, 9][:odd]
    return [seq(n) for n in even_lengths], [seq(n) for n in odd_lengths]


def search_classifier(ctx: Context, vocabulary: Sequence[str],
                      positives: Sequence[Data], negatives: Sequence[Data],
                      max_terms: int = 2, budget: int = 10,
                      stop_after: Optional[int] = None) -> SearchResult:
    """Enumerate word sequences; accept those true on every positive and
    false on every negative sample."""
    started = time.monotonic()
    accepted: List[Tuple[str, ...]] = []
    tried = 0
    for count in range(1, max_terms + 1):
        for combo in itertools.product(vocabulary, repeat=count):
            tried += 1
            cand = tuple(byte_atom(w.encode()) for w in combo)
            if _classifies(ctx, cand, positives, negatives, budget):
                accepted.append(combo)
                if stop_after is not None and len(accepted) >= stop_after:
                    return SearchResult(accepted, tried,
                                        time.monotonic() - started)
    return SearchResult(accepted, tried, time.monotonic() - started)


def _classifies(ctx: Context, cand: Tuple[Coda, ...],
                positives: Sequence[Data], negatives: Sequence[Data],
                budget: int) -> bool:
    for x in positives:
        trace = evaluate(ctx, (pair(cand, x),), budget=budget, probe=False)
        if trace.logic is not LogicValue.TRUE:
            return False
    for x in negatives:
        trace = evaluate(ctx, (pair(cand, x),), budget=budget, probe=False)
        if trace.logic is not LogicValue.FALSE:
            return False
    return True
