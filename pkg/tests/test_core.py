import pytest
from hypothesis import given, strategies as st

from app.core import (
    ORIGIN_BIVALUATION,
    ArrowTable,
    BivaluationSet,
    LogicalStructure,
    Verdict,
    build_structure,
    from_rule,
    from_table,
    induce,
    strict_subrelation,
    subrelation,
    subrelation_witness,
)
from app.errors import BudgetExceededError, EmptyRelationError, UnknownRuleError, WidthMismatchError
from app.gallery.three_element import three_element_structure
from app.properties import StructureProperty, TARSKI_BY_DEF, check_structure
from app.utils.conversions import to_bits

G5 = three_element_structure()


class TestBuildStructure:
    def test_g5_table(self):
        assert G5.consequences(0b000) == 0b111
        assert G5.consequences(0b001) == 0b011
        assert G5.consequences(0b011) == 0b011
        assert G5.consequences(0b101) == 0b111

    def test_identity_rule(self):
        identity = build_structure(2, "identity")
        assert identity.consequences(0b10) == 0b10
        assert identity.origin == "rule:identity"

    def test_all_valuations_induce_identity(self):
        structure = build_structure(3, BivaluationSet.of(3, range(8)))
        assert structure.table == tuple(range(8))
        assert structure.origin == ORIGIN_BIVALUATION

    def test_single_valuation(self):
        structure = induce(BivaluationSet.of(3, [0b011]))
        assert structure.consequences(0) == 0b011
        # nothing satisfies {2}, so it is trivial
        assert structure.consequences(0b100) == 0b111

    def test_default_subset(self):
        structure = from_table(2, {0b01: 0b01}, default=0b10)
        assert structure.table == (0b10, 0b01, 0b10, 0b10)

    def test_deterministic(self):
        assert build_structure(3, {0b001: 0b011}) == build_structure(3, {0b001: 0b011})

    def test_unknown_rule(self):
        with pytest.raises(UnknownRuleError):
            from_rule(2, "nonsense")

    def test_empty_rule_rejected(self):
        with pytest.raises(EmptyRelationError):
            from_rule(2, "empty")

    def test_empty_bivaluation_set_rejected(self):
        with pytest.raises(EmptyRelationError):
            induce(BivaluationSet(2))

    def test_empty_bivaluation_set_total_when_allowed(self):
        assert induce(BivaluationSet(2), allow_empty=True).table == (0b11,) * 4

    def test_width_mismatch(self):
        with pytest.raises(WidthMismatchError):
            from_table(2, {0b100: 0b01})
        with pytest.raises(WidthMismatchError):
            build_structure(2, BivaluationSet.of(3, [1]))

    def test_table_length_checked(self):
        with pytest.raises(WidthMismatchError):
            LogicalStructure(2, (1, 1, 1))

    def test_storage_cap(self):
        with pytest.raises(BudgetExceededError):
            from_rule(17, "identity")


class TestQueries:
    def test_consequences_examples(self):
        identity = from_rule(3, "identity")
        assert identity.consequences(0b101) == 0b101

    def test_derives_examples(self):
        assert not G5.derives(0b011, 2)
        assert G5.derives(0b101, 1)
        assert from_rule(2, "identity").derives(0b10, 1)

    def test_out_of_range(self):
        with pytest.raises(WidthMismatchError):
            G5.derives(0, 3)
        with pytest.raises(WidthMismatchError):
            G5.consequences(0b1000)

    def test_derives_agrees_with_consequences(self):
        for gamma in range(G5.size):
            for alpha in range(G5.n):
                assert G5.derives(gamma, alpha) == bool(G5.consequences(gamma) >> alpha & 1)

    def test_pairs(self):
        identity = from_rule(2, "identity")
        assert list(identity.pairs()) == [(0b01, 0), (0b10, 1), (0b11, 0), (0b11, 1)]

    def test_digest_is_stable(self):
        assert G5.digest() == three_element_structure().digest()
        assert G5.digest().startswith("sha256:")
        assert G5.digest() != from_rule(3, "identity").digest()


class TestSubrelation:
    def test_identity_below_full(self):
        assert subrelation(from_rule(2, "identity"), from_rule(2, "full-constant"))

    def test_full_not_below_identity(self):
        full, identity = from_rule(2, "full-constant"), from_rule(2, "identity")
        assert not subrelation(full, identity)
        assert subrelation_witness(full, identity) == (0, 0)

    def test_strict(self):
        holds, witness = strict_subrelation(from_rule(2, "identity"), from_rule(2, "full-constant"))
        assert holds
        assert witness == (0, 0)

    def test_not_strict_when_equal(self):
        identity = from_rule(2, "identity")
        assert strict_subrelation(identity, identity) == (False, None)

    def test_size_mismatch(self):
        with pytest.raises(WidthMismatchError):
            subrelation(from_rule(2, "identity"), from_rule(3, "identity"))


class TestBivaluationSet:
    def test_canonical_order(self):
        assert BivaluationSet.of(2, [3, 1, 3]).valuations == (1, 3)

    def test_without(self):
        assert BivaluationSet.of(2, [1, 3]).without(3).valuations == (1,)

    @given(st.integers(min_value=0, max_value=7), st.integers(min_value=0, max_value=7))
    def test_characteristic_duality(self, valuation, gamma):
        assert BivaluationSet.satisfies(valuation, gamma) == (gamma & ~valuation == 0)

    @given(st.sets(st.integers(min_value=0, max_value=15), min_size=1))
    def test_induced_structure_is_tarski(self, valuations):
        structure = induce(BivaluationSet.of(4, valuations))
        assert check_structure(structure, StructureProperty(TARSKI_BY_DEF)).holds

    @given(st.sets(st.integers(min_value=0, max_value=7), min_size=1))
    def test_induced_matches_definition(self, valuations):
        structure = induce(BivaluationSet.of(3, valuations))
        for gamma in range(8):
            expected = to_bits(
                a for a in range(3) if all(v >> a & 1 for v in valuations if gamma & ~v == 0)
            )
            assert structure.consequences(gamma) == expected


class TestArrowTable:
    def test_projections(self):
        assert ArrowTable.first_projection(3).apply(2, 0) == 2
        assert ArrowTable.second_projection(3).apply(2, 0) == 0

    def test_xi(self):
        assert ArrowTable.second_projection(3).xi(1) == 0b111
        assert ArrowTable.first_projection(3).xi(1) == 0b010
        assert ArrowTable.constant(3, 2).xi(0) == 0b100

    def test_partial_table_rejected(self):
        with pytest.raises(WidthMismatchError):
            ArrowTable(2, ((0, 1),))

    def test_value_out_of_range(self):
        with pytest.raises(WidthMismatchError):
            ArrowTable(2, ((0, 2), (0, 1)))


class TestVerdict:
    def test_truthiness(self):
        assert Verdict.yes()
        assert not Verdict.no(gamma=[0])
        assert Verdict.no(gamma=[0]).witness == {"gamma": [0]}
