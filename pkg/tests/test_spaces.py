"""Law checking and classifier search."""

import pytest

from coda.core import UNIT, byte_atom, decode_bytes
from coda.builtins import BUILTIN_NAMES, std_context
from coda.eval import LogicValue, classify, evaluate
from coda.language import resolve_source
from coda.spaces import (
    SampleConfig, apply_to, candidate_data, check_antispace,
    check_morphism, check_space, parity_samples, search_classifier,
)

CTX = std_context()


class TestCandidates:
    def test_plain_words_resolve_to_atoms(self):
        d = candidate_data("aps not")
        assert [decode_bytes(c) for c in d] == [b"aps", b"not"]

    def test_composites_stay_quoted(self):
        d = candidate_data("bool * (aps not)")
        assert len(d) == 1
        assert decode_bytes(d[0]) is None

    def test_apply_to_builds_an_application(self):
        d = apply_to(candidate_data("pass"), (UNIT,))
        assert len(d) == 1
        assert d[0].left == (byte_atom(b"pass"),)
        assert d[0].right == (UNIT,)


class TestSpaceLaw:
    @pytest.mark.parametrize("name", ["sum n", "prod n", "type n",
                                      "null", "pass"])
    def test_fold_spaces_pass(self, name):
        report = check_space(CTX, candidate_data(name), name=name)
        assert report.holds, report.counterexample
        assert report.conclusive == 200

    def test_parity_composite_is_a_space(self):
        report = check_space(CTX, candidate_data("bool * (aps not)"),
                             name="bool * (aps not)",
                             config=SampleConfig(budget=14))
        assert report.holds, report.counterexample
        assert report.conclusive == 200

    def test_bare_parity_is_not_quite_a_space(self):
        report = check_space(CTX, candidate_data("aps not"),
                             name="aps not")
        assert not report.holds
        sample, lhs, rhs = report.counterexample
        assert lhs != rhs

    def test_counterexample_recheck(self):
        # the reported sides really do evaluate to different data
        report = check_space(CTX, candidate_data("aps not"),
                             name="aps not")
        _, lhs, rhs = report.counterexample
        assert lhs != rhs


class TestMorphismLaw:
    def test_doubling_is_additive(self):
        s = candidate_data("sum n")
        report = check_morphism(CTX, candidate_data("dbl n"), s, s,
                                name="dbl n")
        assert report.holds, report.counterexample
        assert report.conclusive == 200

    def test_squaring_is_not(self):
        s = candidate_data("sum n")
        report = check_morphism(CTX, candidate_data("sqr n"), s, s,
                                name="sqr n")
        assert not report.holds
        sample, lhs, rhs = report.counterexample
        assert lhs != rhs

    def test_identity_morphism(self):
        s = candidate_data("sum n")
        report = check_morphism(CTX, candidate_data("type n"), s, s,
                                name="type n")
        assert report.holds, report.counterexample


class TestAntispace:
    def test_negation_inverts_signed_sum(self):
        report = check_antispace(CTX, candidate_data("sum z"),
                                 candidate_data("neg z"), name="sum z")
        assert report.holds, report.counterexample

    def test_null_is_not_an_inverse_for_sum(self):
        report = check_antispace(CTX, candidate_data("sum n"),
                                 candidate_data("null"), name="sum n")
        assert not report.holds

    def test_null_inverts_itself(self):
        report = check_antispace(CTX, candidate_data("null"),
                                 candidate_data("null"), name="null")
        assert report.holds, report.counterexample


class TestParitySamples:
    def test_shapes(self):
        pos, neg = parity_samples()
        assert len(pos) == len(neg) == 10
        assert all(len(d) % 2 == 0 for d in pos)
        assert all(len(d) % 2 == 1 for d in neg)
        assert max(len(d) for d in pos + neg) <= 10

    def test_reproducible(self):
        assert parity_samples(seed=3) == parity_samples(seed=3)

    def test_samples_classify_by_parity(self):
        pos, neg = parity_samples()
        arg = candidate_data("aps not")
        for d in pos:
            t = evaluate(CTX, apply_to(arg, d), budget=12)
            assert t.logic is LogicValue.TRUE
        for d in neg:
            t = evaluate(CTX, apply_to(arg, d), budget=12)
            assert t.logic is LogicValue.FALSE


class TestSearch:
    def test_finds_the_parity_classifier(self):
        pos, neg = parity_samples()
        result = search_classifier(CTX, list(BUILTIN_NAMES), pos, neg,
                                   max_terms=2, budget=10)
        assert ("aps", "not") in result.accepted
        assert result.tried >= len(BUILTIN_NAMES)

    def test_small_vocabulary(self):
        pos, neg = parity_samples(4, 4)
        result = search_classifier(CTX, ["aps", "not", "null"], pos, neg,
                                   max_terms=2, budget=10)
        assert ("aps", "not") in result.accepted
        assert ("null",) not in result.accepted

    def test_stop_after(self):
        pos, neg = parity_samples(4, 4)
        result = search_classifier(CTX, ["aps", "not"], pos, neg,
                                   max_terms=2, budget=10, stop_after=1)
        assert len(result.accepted) == 1

    def test_rejects_constant_candidates(self):
        pos, neg = parity_samples(4, 4)
        result = search_classifier(CTX, ["null", "pass"], pos, neg,
                                   max_terms=2, budget=10)
        assert result.accepted == []
