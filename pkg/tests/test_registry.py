import pytest

from app.core import ArrowTable, LogicalStructure, Verdict, from_rule
from app.gallery.three_element import three_element_structure
from app.propcheck.registry import SampleFacts, Theorem, TheoremRegistry, parse_theorem_ids
from app.propcheck.runner import FAILED, NOT_FIRED, PASSED, check_theorem

G5 = three_element_structure()
IDENTITY3 = from_rule(3, "identity")

# C(∅) = {0}, C({0}) = ∅
SELF_DENYING = LogicalStructure(1, (0b1, 0b0))


def fake(theorem_id="X01", holds=False):
    return Theorem(
        theorem_id,
        "always fails" if not holds else "always holds",
        lambda f: True,
        lambda f: Verdict.yes() if holds else Verdict.no(reason="fake"),
    )


class TestDefaultRegistry:
    def test_thirty_three_entries_in_order(self):
        registry = TheoremRegistry.default()
        assert len(registry) == 33
        assert registry.ids == [f"T{i:02d}" for i in range(1, 34)]

    def test_every_entry_has_an_anchor(self):
        assert all(t.anchor for t in TheoremRegistry.default())

    def test_arrow_entries(self):
        registry = TheoremRegistry.default()
        assert registry["T08"].needs_arrow and registry["T09"].needs_arrow
        facts = SampleFacts(IDENTITY3)
        assert check_theorem(registry["T09"], facts)[1] == NOT_FIRED

    @pytest.mark.parametrize("theorem_id", ["T26", "T21", "T23", "T29", "T30", "T33"])
    def test_three_element_passes(self, theorem_id):
        facts = SampleFacts(G5, ArrowTable.second_projection(3))
        assert check_theorem(TheoremRegistry.default()[theorem_id], facts)[1] == PASSED

    @pytest.mark.parametrize("theorem_id", ["T04", "T05", "T27", "T28", "T31"])
    def test_identity_fires_and_passes(self, theorem_id):
        facts = SampleFacts(IDENTITY3, ArrowTable.second_projection(3))
        assert check_theorem(TheoremRegistry.default()[theorem_id], facts)[1] == PASSED


class TestSaturatedSelfDeriving:
    """Cut alone does not make saturated sets closed"""

    def test_facts(self):
        facts = SampleFacts(SELF_DENYING)
        assert facts.holds("cut", "mixed-cut")
        assert facts.saturated == [0b1]
        assert not facts.saturated_self_deriving

    def test_saturated_set_is_not_closed(self):
        registry = TheoremRegistry.default()
        facts = SampleFacts(SELF_DENYING)
        assert not registry["T01"].conclusion(facts).holds

    @pytest.mark.parametrize("theorem_id", ["T01", "T02", "T03", "T11", "T13", "T14", "T20"])
    def test_hypothesis_excludes_it(self, theorem_id):
        facts = SampleFacts(SELF_DENYING)
        assert check_theorem(TheoremRegistry.default()[theorem_id], facts)[1] == NOT_FIRED

    def test_tarski_structures_are_self_deriving(self):
        assert SampleFacts(IDENTITY3).saturated_self_deriving


class TestTheoremRegistry:
    def test_duplicate_register(self):
        registry = TheoremRegistry([fake()])
        with pytest.raises(ValueError):
            registry.register(fake())

    def test_select_keeps_registry_order(self):
        registry = TheoremRegistry.default()
        assert [t.theorem_id for t in registry.select(["T22", "T01"])] == ["T01", "T22"]

    def test_select_unknown(self):
        with pytest.raises(ValueError):
            TheoremRegistry.default().select(["T01", "T99"])

    def test_failing_theorem_reports_witness(self):
        theorem_id, status, witness = check_theorem(fake(), SampleFacts(G5))
        assert (theorem_id, status, witness) == ("X01", FAILED, {"reason": "fake"})


class TestParseTheoremIds:
    def test_all(self):
        assert parse_theorem_ids("all") is None
        assert parse_theorem_ids(" ALL ") is None

    def test_numbers_and_ids(self):
        assert parse_theorem_ids("22, t01,T33") == ["T22", "T01", "T33"]
        assert parse_theorem_ids("1") == ["T01"]

    def test_empty(self):
        with pytest.raises(ValueError):
            parse_theorem_ids(" , ")
