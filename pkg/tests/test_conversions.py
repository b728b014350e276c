import pytest
from hypothesis import given, strategies as st

from app.utils.conversions import (
    from_bits,
    full_mask,
    is_subset,
    parse_subset,
    popcount,
    proper_supermasks,
    submasks,
    supermasks,
    to_bits,
)


class TestBits:
    def test_full_mask(self):
        assert full_mask(1) == 0b1
        assert full_mask(3) == 0b111

    def test_to_bits(self):
        assert to_bits([]) == 0
        assert to_bits([0, 2]) == 0b101

    def test_to_bits_allows_duplicates(self):
        assert to_bits([1, 1]) == 0b10

    def test_to_bits_rejects_negative(self):
        with pytest.raises(ValueError):
            to_bits([-1])

    def test_from_bits_is_sorted(self):
        assert from_bits(0b1010) == [1, 3]
        assert from_bits(0) == []

    @given(st.sets(st.integers(min_value=0, max_value=15)))
    def test_from_bits_inverts_to_bits(self, elements):
        assert from_bits(to_bits(elements)) == sorted(elements)

    def test_popcount(self):
        assert popcount(0b1011) == 3

    def test_is_subset(self):
        assert is_subset(0b001, 0b011)
        assert not is_subset(0b100, 0b011)
        assert is_subset(0, 0)


class TestSubsetIteration:
    def test_submasks_ascending(self):
        assert list(submasks(0b101)) == [0b000, 0b001, 0b100, 0b101]

    def test_submasks_of_empty(self):
        assert list(submasks(0)) == [0]

    def test_supermasks(self):
        assert list(supermasks(0b01, 2)) == [0b01, 0b11]

    def test_proper_supermasks_exclude_mask(self):
        assert list(proper_supermasks(0b01, 2)) == [0b11]
        assert list(proper_supermasks(0b11, 2)) == []

    @given(st.integers(min_value=0, max_value=(1 << 6) - 1))
    def test_supermask_count(self, mask):
        assert len(list(supermasks(mask, 6))) == 1 << (6 - popcount(mask))


class TestParseSubset:
    def test_empty_literal(self):
        assert parse_subset("empty", 3) == 0

    def test_comma_list(self):
        assert parse_subset("0,2", 3) == 0b101

    def test_whitespace_tolerated(self):
        assert parse_subset(" 1 , 2 ", 3) == 0b110

    def test_out_of_range(self):
        with pytest.raises(ValueError):
            parse_subset("3", 3)

    def test_malformed(self):
        with pytest.raises(ValueError):
            parse_subset("a", 3)
