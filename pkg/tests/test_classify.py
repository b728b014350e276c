from hypothesis import given, settings, strategies as st

from app.classify import LIM_NONTRIVIAL, LIM_PAIR, LIND_KEYS, VERDICT_KEYS, classify, lim
from app.core import LogicalStructure, from_rule
from app.gallery.three_element import EXPECTED_VERDICTS, three_element_structure

import pytest

G5 = three_element_structure()


def tables(n):
    return st.lists(st.integers(min_value=0, max_value=(1 << n) - 1), min_size=1 << n, max_size=1 << n).filter(any)


class TestClassifyThreeElement:
    def test_verdicts(self):
        report = classify(G5)
        assert report["tarski"] is False
        for key in LIND_KEYS:
            assert report[key] is True
        for i in range(1, 5):
            assert report[f"tl{i}"] is False

    def test_matches_gallery_expectation(self):
        report = classify(G5)
        for key, value in EXPECTED_VERDICTS.items():
            assert report[key] == value

    def test_witness_for_every_false_verdict(self):
        report = classify(G5)
        for key in VERDICT_KEYS:
            if not report[key]:
                assert key in report.witnesses

    def test_tarski_witness_names_axiom(self):
        assert classify(G5).witnesses["tarski"]["axiom"] == "monotone"

    def test_to_dict_in_key_order(self):
        assert list(classify(G5).to_dict()["verdicts"]) == list(VERDICT_KEYS)


class TestClassifyRules:
    @pytest.mark.parametrize("rule", ["identity", "full-constant"])
    def test_everything_holds(self, rule):
        report = classify(from_rule(3, rule))
        assert all(report[key] for key in VERDICT_KEYS)
        assert report.witnesses == {}


class TestLim:
    def test_pair(self):
        result = lim(G5, LIM_PAIR, 0b001, 2)
        assert result.members == (0b001, 0b011)
        assert result.maximal_elements == (0b011,)

    def test_nontrivial(self):
        result = lim(G5, LIM_NONTRIVIAL, 0)
        assert result.members == (0b001, 0b011)
        assert result.maximal_elements == (0b011,)

    def test_to_dict(self):
        assert lim(G5, LIM_PAIR, 0b001, 2).to_dict()["maximal"] == [[0, 1]]

    def test_pair_requires_alpha(self):
        with pytest.raises(ValueError):
            lim(G5, LIM_PAIR, 0)


class TestClassifyInvariants:
    @given(tables(3))
    @settings(max_examples=100)
    def test_relationships_hold(self, table):
        assert classify(LogicalStructure(3, tuple(table))).invariant_violations() == []

    @given(tables(3))
    @settings(max_examples=100)
    def test_finite_structures_are_lindenbaum(self, table):
        # finite posets always have maximal elements
        report = classify(LogicalStructure(3, tuple(table)))
        assert all(report[key] for key in LIND_KEYS)
        assert report["tl4"] == report["tarski"]
