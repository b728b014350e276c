import pytest
from hypothesis import given, settings, strategies as st

from app.characterize import (
    LINDENBAUM_III,
    LINDENBAUM_IV,
    STATEMENTS,
    TARSKI,
    TL4,
    all_statements,
    check_characterization,
    minimum_strongly_closed_extensions,
)
from app.classify import classify
from app.config import DEFAULT_CONFIG, Budget
from app.core import LogicalStructure
from app.errors import BudgetExceededError
from app.gallery.three_element import three_element_structure
from app.propcheck.generators import exhaustive

CLASSIFIER_KEY = {TARSKI: "tarski", LINDENBAUM_IV: "lindIV", LINDENBAUM_III: "lindIII", TL4: "tl4"}

G5 = three_element_structure()


def disagreements(structure):
    verdicts = classify(structure).verdicts
    found = []
    for theorem, key in CLASSIFIER_KEY.items():
        for index, holds in all_statements(structure, theorem).items():
            if holds != verdicts[key]:
                found.append((theorem, index, holds))
    return found


class TestThreeElement:
    def test_every_statement_matches(self):
        assert disagreements(G5) == []

    def test_tarski_statements_fail(self):
        assert set(all_statements(G5, TARSKI).values()) == {False}

    def test_lindenbaum_statements_hold(self):
        assert set(all_statements(G5, LINDENBAUM_IV).values()) == {True}
        assert set(all_statements(G5, LINDENBAUM_III).values()) == {True}

    def test_no_minimum_strongly_closed_extension(self):
        assert not minimum_strongly_closed_extensions(G5).holds


class TestExhaustiveTwoElements:
    def test_agreement_on_every_table(self):
        samples = exhaustive(2)
        assert len(samples) == 255
        for sample in samples:
            assert disagreements(sample.structure) == [], sample.structure.table

    def test_minimum_strongly_closed_extension_iff_tarski(self):
        for sample in exhaustive(2):
            structure = sample.structure
            assert minimum_strongly_closed_extensions(structure).holds == classify(structure)["tarski"]


class TestRandomThreeElements:
    @given(st.lists(st.integers(min_value=0, max_value=7), min_size=8, max_size=8).filter(any))
    @settings(max_examples=80, deadline=None)
    def test_agreement(self, table):
        assert disagreements(LogicalStructure(3, tuple(table))) == []


class TestCheckCharacterization:
    def test_statement_indices(self):
        assert STATEMENTS[TL4] == (1, 2, 3, 4, 5)

    def test_unknown_theorem(self):
        with pytest.raises(ValueError):
            check_characterization(G5, "lindenbaum-v", 1)

    def test_unknown_statement(self):
        with pytest.raises(ValueError):
            check_characterization(G5, LINDENBAUM_III, 4)

    def test_budget(self):
        budget = Budget.from_config({**DEFAULT_CONFIG, "budget": {"characterization": 2}}, environ={})
        with pytest.raises(BudgetExceededError):
            check_characterization(G5, TARSKI, 1, budget)
