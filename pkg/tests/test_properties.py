import pytest
from hypothesis import given, settings, strategies as st

from app.config import DEFAULT_CONFIG, Budget
from app.core import ArrowTable, LogicalStructure, from_rule
from app.errors import BudgetExceededError, WidthMismatchError
from app.gallery.three_element import three_element_structure
from app.properties import (
    ALPHA_SATURATED,
    ARROW_SATURATED,
    CLOSED,
    CUT,
    MAXIMAL_ALPHA_SATURATED,
    MAXIMAL_NONTRIVIAL,
    MAXIMAL_SATURATED,
    MIXED_CUT,
    MONOTONE,
    NONTRIVIAL,
    REFLEXIVE,
    RELATIVELY_MAXIMAL,
    SATURATED,
    SET_TAGS,
    STRONGLY_CLOSED,
    TARSKI_BY_DEF,
    TRANSITIVE,
    TRIVIAL,
    SetProperty,
    StructureProperty,
    arrow_query,
    batens_condition,
    check_set,
    check_structure,
    enumerate_sets,
    modus_ponens,
)

G5 = three_element_structure()
IDENTITY3 = from_rule(3, "identity")
FULL2 = from_rule(2, "full-constant")
COATOMS3 = [0b011, 0b101, 0b110]


def tables(n):
    return st.lists(st.integers(min_value=0, max_value=(1 << n) - 1), min_size=1 << n, max_size=1 << n).filter(any)


class TestSetPropertiesOnThreeElement:
    def test_closed_sets(self):
        assert enumerate_sets(G5, SetProperty(CLOSED)) == [0b011, 0b111]

    def test_maximal_nontrivial(self):
        assert enumerate_sets(G5, SetProperty(MAXIMAL_NONTRIVIAL)) == [0b011]

    def test_saturated(self):
        assert enumerate_sets(G5, SetProperty(SATURATED)) == [0b011]
        assert check_set(G5, SetProperty(ALPHA_SATURATED, alpha=2), 0b011).holds
        assert enumerate_sets(G5, SetProperty(MAXIMAL_ALPHA_SATURATED, alpha=2)) == [0b011]

    def test_relatively_maximal(self):
        assert enumerate_sets(G5, SetProperty(RELATIVELY_MAXIMAL, alpha=2)) == [0b011]
        assert enumerate_sets(G5, SetProperty(RELATIVELY_MAXIMAL, alpha=0)) == []

    def test_only_the_carrier_is_strongly_closed(self):
        assert enumerate_sets(G5, SetProperty(STRONGLY_CLOSED)) == [0b111]

    def test_strongly_closed_witness(self):
        verdict = check_set(G5, SetProperty(STRONGLY_CLOSED), 0b011)
        assert not verdict.holds
        assert verdict.witness == {"condition": "subset-closure", "gamma_prime": [], "alpha": 2}

    def test_alpha_saturated_witness(self):
        verdict = check_set(G5, SetProperty(ALPHA_SATURATED, alpha=2), 0b001)
        assert verdict.witness == {"beta": 1, "alpha": 2}

    def test_trivial(self):
        assert check_set(G5, SetProperty(TRIVIAL), 0).holds
        assert check_set(G5, SetProperty(NONTRIVIAL), 0b001).holds

    def test_alpha_required(self):
        with pytest.raises(ValueError):
            SetProperty(ALPHA_SATURATED)

    def test_unknown_tag(self):
        with pytest.raises(ValueError):
            SetProperty("closedish")

    def test_element_out_of_range(self):
        with pytest.raises(WidthMismatchError):
            check_set(G5, SetProperty(RELATIVELY_MAXIMAL, alpha=3), 0)


class TestSetPropertiesOnIdentity:
    def test_every_set_closed(self):
        assert enumerate_sets(IDENTITY3, SetProperty(CLOSED)) == list(range(8))
        assert enumerate_sets(IDENTITY3, SetProperty(STRONGLY_CLOSED)) == list(range(8))

    def test_saturated_sets_are_coatoms(self):
        assert enumerate_sets(IDENTITY3, SetProperty(SATURATED)) == COATOMS3
        assert enumerate_sets(IDENTITY3, SetProperty(MAXIMAL_NONTRIVIAL)) == COATOMS3
        assert enumerate_sets(IDENTITY3, SetProperty(MAXIMAL_SATURATED)) == COATOMS3

    def test_alpha_saturated_names_the_missing_element(self):
        assert enumerate_sets(IDENTITY3, SetProperty(ALPHA_SATURATED, alpha=0)) == [0b110]


class TestArrowProperties:
    def test_arrow_saturated_second_projection(self):
        arrow = ArrowTable.second_projection(2)
        assert enumerate_sets(FULL2, SetProperty(ARROW_SATURATED, arrow=arrow)) == [0b11]

    def test_arrow_saturated_constant(self):
        arrow = ArrowTable.constant(2, 0)
        assert enumerate_sets(FULL2, SetProperty(ARROW_SATURATED, arrow=arrow)) == [0b01, 0b11]

    def test_modus_ponens_second_projection(self):
        assert modus_ponens(IDENTITY3, ArrowTable.second_projection(3)).holds

    def test_modus_ponens_failure(self):
        # α→β = α, so Γ ⊢ α and Γ ⊢ α→β say nothing about β
        verdict = modus_ponens(IDENTITY3, ArrowTable.first_projection(3))
        assert verdict.witness == {"gamma": [0], "alpha": 0, "beta": 1}

    def test_batens_condition(self):
        assert batens_condition(FULL2, ArrowTable.second_projection(2)).holds
        verdict = batens_condition(IDENTITY3, ArrowTable.second_projection(3))
        assert verdict.witness == {"sigma": [], "beta": 0}

    def test_arrow_query(self):
        arrow = ArrowTable.constant(2, 1)
        assert arrow_query(FULL2, arrow, "xi", alpha=0) == 0b10
        assert arrow_query(FULL2, arrow, "arrow-saturated", gamma=0b10).holds
        assert arrow_query(FULL2, arrow, "modus-ponens").holds
        with pytest.raises(ValueError):
            arrow_query(FULL2, arrow, "xi")
        with pytest.raises(ValueError):
            arrow_query(FULL2, arrow, "peirce")

    def test_arrow_width(self):
        with pytest.raises(WidthMismatchError):
            modus_ponens(IDENTITY3, ArrowTable.second_projection(2))


class TestStructureProperties:
    def test_three_element(self):
        assert check_structure(G5, StructureProperty(REFLEXIVE)).holds
        assert check_structure(G5, StructureProperty(CUT)).holds

    def test_three_element_not_monotone(self):
        verdict = check_structure(G5, StructureProperty(MONOTONE))
        assert verdict.witness == {"gamma": [], "sigma": [0], "alpha": 2}

    def test_three_element_not_transitive(self):
        verdict = check_structure(G5, StructureProperty(TRANSITIVE))
        assert verdict.witness == {"gamma": [0], "sigma": [], "alpha": 2}

    def test_three_element_mixed_cut_witness(self):
        verdict = check_structure(G5, StructureProperty(MIXED_CUT))
        assert verdict.witness == {"gamma": [], "sigma": [0], "alpha": 2, "beta": 2}

    def test_tarski_by_def_names_axiom(self):
        verdict = check_structure(G5, StructureProperty(TARSKI_BY_DEF))
        assert verdict.witness["axiom"] == MONOTONE
        assert check_structure(IDENTITY3, StructureProperty(TARSKI_BY_DEF)).holds

    def test_not_reflexive(self):
        structure = LogicalStructure(2, (0b11, 0b10, 0b10, 0b11))
        assert check_structure(structure, StructureProperty(REFLEXIVE)).witness == {"gamma": [0], "alpha": 0}

    def test_transitive_budget(self):
        budget = Budget.from_config({**DEFAULT_CONFIG, "budget": {"transitive": 2}}, environ={})
        with pytest.raises(BudgetExceededError):
            check_structure(IDENTITY3, StructureProperty(TRANSITIVE), budget)

    def test_modus_ponens_needs_arrow(self):
        with pytest.raises(ValueError):
            StructureProperty("modus-ponens")


class TestAgainstLiteralDefinitions:
    @given(tables(3))
    @settings(max_examples=60)
    def test_vectorized_masks_match_literal_check(self, table):
        structure = LogicalStructure(3, tuple(table))
        for tag in SET_TAGS:
            if tag == ARROW_SATURATED:
                props = [SetProperty(tag, arrow=ArrowTable.constant(3, 1))]
            elif tag in (ALPHA_SATURATED, RELATIVELY_MAXIMAL, MAXIMAL_ALPHA_SATURATED):
                props = [SetProperty(tag, alpha=a) for a in range(3)]
            else:
                props = [SetProperty(tag)]
            for prop in props:
                listed = set(enumerate_sets(structure, prop))
                for gamma in range(8):
                    assert check_set(structure, prop, gamma).holds == (gamma in listed)

    @given(tables(3))
    @settings(max_examples=60)
    def test_cut_is_mixed_cut_with_sigma_gamma(self, table):
        structure = LogicalStructure(3, tuple(table))
        if check_structure(structure, StructureProperty(MIXED_CUT)).holds:
            assert check_structure(structure, StructureProperty(CUT)).holds
