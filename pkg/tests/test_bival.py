import pytest
from hypothesis import given, settings, strategies as st

from app.bival import (
    RELMAX,
    SCS,
    SCS_STAR,
    SUSZKO_CLOSED,
    compare,
    extract,
    minimality_probe,
    relmax_equals_scs,
    representation_check,
    suszko_adequate,
)
from app.core import BivaluationSet, from_rule, induce
from app.errors import EmptyRelationError, PreconditionError
from app.gallery.three_element import three_element_structure
from app.propcheck.generators import BIVALUATION, GeneratorSpec, corpus

G5 = three_element_structure()
IDENTITY3 = from_rule(3, "identity")
COATOMS3 = (0b011, 0b101, 0b110)


class TestExtract:
    def test_three_element_scs_is_empty(self):
        assert len(extract(G5, SCS)) == 0
        assert len(extract(G5, SCS_STAR)) == 0

    def test_three_element_relmax_and_closed(self):
        assert extract(G5, RELMAX).base.valuations == (0b011,)
        assert extract(G5, SUSZKO_CLOSED).base.valuations == (0b011, 0b111)

    def test_identity_scs_is_coatoms(self):
        assert extract(IDENTITY3, SCS).base.valuations == COATOMS3
        assert relmax_equals_scs(IDENTITY3)

    def test_scs_star_buckets(self):
        star = extract(IDENTITY3, SCS_STAR)
        assert star.base.valuations == COATOMS3
        assert star.annotations[0b110] == ((0, 0),)
        assert star.to_dict()["buckets"][0] == {"valuation": [0, 1], "pairs": [{"beta": 2, "alpha": 2}]}

    def test_unknown_kind(self):
        with pytest.raises(ValueError):
            extract(G5, "maxcons")


class TestCompare:
    def test_identity_adequate(self):
        comparison = compare(IDENTITY3, extract(IDENTITY3, SCS).base)
        assert comparison.adequate
        assert comparison.to_dict()["adequate"] is True

    def test_empty_set_rejected(self):
        with pytest.raises(EmptyRelationError):
            compare(G5, BivaluationSet(3))

    def test_empty_set_is_sound_when_allowed(self):
        comparison = compare(G5, extract(G5, SCS).base, allow_empty=True)
        assert comparison.sound
        assert not comparison.complete
        assert comparison.complete_witness == {"gamma": [0], "alpha": 2}

    def test_closed_sets_are_not_a_suszko_set_for_three_element(self):
        assert not suszko_adequate(G5).holds
        assert suszko_adequate(IDENTITY3).holds


class TestRepresentation:
    def test_identity(self):
        report = representation_check(IDENTITY3)
        assert report.adequate and report.tl4 and report.consistent

    def test_three_element(self):
        report = representation_check(G5)
        assert not report.adequate
        assert not report.tl4
        assert report.consistent
        assert report.scs_star_size == 0


class TestMinimality:
    def test_identity(self):
        report = minimality_probe(IDENTITY3, samples=8, seed=3)
        assert report.holds
        assert len(report.deletions) == 3
        assert all(d.strict for d in report.deletions)

    def test_requires_tl4(self):
        with pytest.raises(PreconditionError):
            minimality_probe(G5)

    def test_requires_nonempty_scs(self):
        with pytest.raises(PreconditionError):
            minimality_probe(from_rule(2, "full-constant"))

    def test_to_dict(self):
        doc = minimality_probe(IDENTITY3, samples=2).to_dict()
        assert doc["holds"] is True
        assert len(doc["sampled"]) == 2


class TestBivaluationInducedStructures:
    @given(st.sets(st.integers(min_value=0, max_value=15), min_size=1))
    @settings(max_examples=60, deadline=None)
    def test_tl4_semantics(self, valuations):
        structure = induce(BivaluationSet.of(4, valuations))
        scs = extract(structure, SCS).base
        assert compare(structure, scs, allow_empty=True).adequate
        assert compare(structure, extract(structure, SCS_STAR).base, allow_empty=True).adequate
        assert relmax_equals_scs(structure)


class TestBivaluationCorpus:
    """Every structure drawn by the bivaluation generator is TL-4 and fully described by SCS"""

    @pytest.fixture(scope="class")
    def samples(self):
        return list(corpus(GeneratorSpec(BIVALUATION, 11, 500, 3, 6)))

    def test_corpus_covers_sizes(self, samples):
        assert len(samples) == 500
        assert {s.structure.n for s in samples} == {3, 4, 5, 6}

    def test_scs_and_scs_star_are_adequate(self, samples):
        for s in samples:
            structure = s.structure
            assert compare(structure, extract(structure, SCS).base, allow_empty=True).adequate, s.describe()
            assert compare(structure, extract(structure, SCS_STAR).base, allow_empty=True).adequate, s.describe()

    def test_relmax_equals_scs(self, samples):
        for s in samples:
            assert relmax_equals_scs(s.structure), s.describe()

    def test_single_deletions_are_strict(self, samples):
        probed = 0
        for s in samples:
            if not len(extract(s.structure, SCS).base):
                continue
            report = minimality_probe(s.structure, samples=4, seed=s.index)
            assert report.holds, s.describe()
            assert all(d.strict for d in report.deletions), s.describe()
            probed += 1
        assert probed > 0
