import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from app.classify import classify
from app.core import MAX_CARRIER
from app.errors import BudgetExceededError
from app.propcheck.generators import (
    ARBITRARY,
    ARROWED,
    BIVALUATION,
    MIXED,
    MIXED_CYCLE,
    MONOTONE,
    GeneratorSpec,
    corpus,
    exhaustive,
    generate,
    monotone_envelope,
)

seeds = st.integers(min_value=0, max_value=10_000)


class TestGeneratorSpec:
    def test_size_max_defaults_to_size_min(self):
        assert GeneratorSpec(ARBITRARY, 1, 5, 3).size_max == 3

    def test_sizes_cycle_through_range(self):
        spec = GeneratorSpec(ARBITRARY, 1, 6, 2, 4)
        assert [spec.size_for(i) for i in range(6)] == [2, 3, 4, 2, 3, 4]

    @pytest.mark.parametrize(
        "kwargs",
        [
            {"strategy": "uniform", "seed": 0},
            {"strategy": ARBITRARY, "seed": -1},
            {"strategy": ARBITRARY, "seed": 0, "count": -1},
            {"strategy": ARBITRARY, "seed": 0, "size_min": 0},
            {"strategy": ARBITRARY, "seed": 0, "size_min": 4, "size_max": 3},
        ],
    )
    def test_invalid(self, kwargs):
        with pytest.raises(ValueError):
            GeneratorSpec(**kwargs)

    def test_above_storage_cap(self):
        with pytest.raises(BudgetExceededError):
            GeneratorSpec(ARBITRARY, 0, 1, 2, MAX_CARRIER + 1)


class TestGenerate:
    def test_same_seed_same_sample(self):
        spec = GeneratorSpec(MIXED, 11, 8, 2, 4)
        for index in range(spec.count):
            a, b = generate(spec, index), generate(spec, index)
            assert a.structure.table == b.structure.table
            assert a.arrow.op == b.arrow.op

    def test_sample_independent_of_corpus_length(self):
        short = list(corpus(GeneratorSpec(ARBITRARY, 3, 2, 3)))
        long = list(corpus(GeneratorSpec(ARBITRARY, 3, 5, 3)))
        assert [s.structure.table for s in short] == [s.structure.table for s in long[:2]]

    def test_different_seeds_differ(self):
        tables = {generate(GeneratorSpec.single(ARBITRARY, 4, seed), 0).structure.table for seed in range(5)}
        assert len(tables) > 1

    def test_mixed_cycles_strategies(self):
        spec = GeneratorSpec(MIXED, 0, 8, 3)
        assert [s.strategy for s in corpus(spec)] == list(MIXED_CYCLE) * 2

    def test_monotone_sample_is_monotone(self):
        sample = generate(GeneratorSpec.single(MONOTONE, 3, 7), 0)
        assert classify(sample.structure)["monotone"]

    def test_bivaluation_sample_is_tarski(self):
        sample = generate(GeneratorSpec.single(BIVALUATION, 4, 1), 0)
        assert classify(sample.structure)["tarski"]

    @settings(max_examples=25, deadline=None)
    @given(seeds, st.integers(min_value=2, max_value=4))
    def test_induced_strategies_are_tarski(self, seed, n):
        for strategy in (BIVALUATION, ARROWED):
            sample = generate(GeneratorSpec.single(strategy, n, seed), 0)
            assert classify(sample.structure)["tarski"]
            assert sample.arrow.n == n

    @settings(max_examples=25, deadline=None)
    @given(seeds)
    def test_monotone_envelope_is_above_table(self, seed):
        rng = np.random.default_rng(seed)
        table = rng.integers(0, 8, size=8)
        envelope = monotone_envelope(table, 3)
        assert all(int(e) & int(t) == int(t) for e, t in zip(envelope, table))
        for gamma in range(8):
            for sigma in range(8):
                if gamma & sigma == gamma:
                    assert int(envelope[gamma]) & ~int(envelope[sigma]) == 0

    def test_describe_uses_label_or_index(self):
        sample = generate(GeneratorSpec.single(ARBITRARY, 2, 0), 0)
        assert sample.describe() == "#0 (arbitrary, n=2)"


class TestExhaustive:
    def test_sizes(self):
        assert len(exhaustive(1)) == 3
        assert len(exhaustive(2)) == 255

    def test_no_empty_relation_and_distinct(self):
        tables = [s.structure.table for s in exhaustive(2)]
        assert all(any(t) for t in tables)
        assert len(set(tables)) == len(tables)

    def test_indices_in_order(self):
        assert [s.index for s in exhaustive(1)] == [0, 1, 2]

    @pytest.mark.parametrize("n", [0, 3])
    def test_out_of_range(self, n):
        with pytest.raises(BudgetExceededError):
            exhaustive(n)
