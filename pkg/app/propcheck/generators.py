"""Seeded random structure generators and the exhaustive small-carrier corpus"""

import itertools
import logging
from dataclasses import dataclass
from typing import Iterator, List, Optional

import numpy as np

from app.core import (
    ArrowTable,
    BivaluationSet,
    LogicalStructure,
    MAX_CARRIER,
    induce,
)
from app.errors import BudgetExceededError, EmptyRelationError
from app.utils.conversions import from_bits, full_mask
from app.utils.lattice import subset_or

logger = logging.getLogger(__name__)

ARBITRARY = "arbitrary"
MONOTONE = "monotone"
BIVALUATION = "bivaluation"
ARROWED = "arrowed"
MIXED = "mixed"

STRATEGIES = (ARBITRARY, MONOTONE, BIVALUATION, ARROWED, MIXED)

# mixed cycles through these by index
MIXED_CYCLE = (ARBITRARY, MONOTONE, BIVALUATION, ARROWED)

# folded into the seed sequence so strategies never share a stream
STRATEGY_CODES = {name: code for code, name in enumerate(STRATEGIES)}

# an empty ⊢ is redrawn with the next attempt number
MAX_ATTEMPTS = 64

EXHAUSTIVE_MAX = 2


@dataclass(frozen=True)
class GeneratorSpec:
    """
    A reproducible corpus description

    Sample i has carrier size size_min + i mod (size_max - size_min + 1) and
    is a pure function of (strategy, seed, i).
    """

    strategy: str
    seed: int
    count: int = 1
    size_min: int = 2
    size_max: Optional[int] = None

    def __post_init__(self):
        if self.strategy not in STRATEGIES:
            raise ValueError(f"Unknown generator '{self.strategy}' (expected one of {', '.join(STRATEGIES)})")
        if self.seed < 0:
            raise ValueError(f"Seed must be nonnegative, got {self.seed}")
        if self.count < 0:
            raise ValueError(f"Corpus size must be nonnegative, got {self.count}")
        if self.size_max is None:
            object.__setattr__(self, "size_max", self.size_min)
        if not 1 <= self.size_min <= self.size_max:
            raise ValueError(f"Invalid size range [{self.size_min}, {self.size_max}]")
        if self.size_max > MAX_CARRIER:
            raise BudgetExceededError("storage", self.size_max, MAX_CARRIER)

    @classmethod
    def single(cls, strategy: str, n: int, seed: int, count: int = 1) -> "GeneratorSpec":
        return cls(strategy, seed, count, n, n)

    def size_for(self, index: int) -> int:
        return self.size_min + index % (self.size_max - self.size_min + 1)


@dataclass(frozen=True)
class Sample:
    """One corpus member: a structure, its companion connective and where it came from"""

    index: int
    strategy: str
    structure: LogicalStructure
    arrow: ArrowTable
    label: str = ""

    def describe(self) -> str:
        name = self.label or f"#{self.index}"
        return f"{name} ({self.strategy}, n={self.structure.n})"


def _rng(spec: GeneratorSpec, strategy: str, n: int, index: int, attempt: int) -> np.random.Generator:
    return np.random.default_rng([spec.seed, STRATEGY_CODES[strategy], n, index, attempt])


def _random_arrow(rng: np.random.Generator, n: int) -> ArrowTable:
    op = rng.integers(0, n, size=(n, n))
    return ArrowTable(n, tuple(tuple(int(v) for v in row) for row in op), "random")


def _random_table(rng: np.random.Generator, n: int) -> np.ndarray:
    return rng.integers(0, 1 << n, size=1 << n, dtype=np.int64)


def monotone_envelope(table: np.ndarray, n: int) -> np.ndarray:
    """C'(Γ) = ⋃ C(Σ) over Σ ⊆ Γ, the least monotone table above C"""
    return subset_or(np.asarray(table, dtype=np.int64), n)


def _respects(valuation: int, arrow: ArrowTable) -> bool:
    """A valuation closed under modus ponens for the arrow"""
    for alpha in from_bits(valuation):
        for beta in range(arrow.n):
            if valuation >> arrow.op[alpha][beta] & 1 and not valuation >> beta & 1:
                return False
    return True


def _arbitrary(rng: np.random.Generator, n: int):
    table = _random_table(rng, n)
    return LogicalStructure(n, tuple(int(v) for v in table)), _random_arrow(rng, n)


def _monotone(rng: np.random.Generator, n: int):
    table = monotone_envelope(_random_table(rng, n), n)
    return LogicalStructure(n, tuple(int(v) for v in table)), _random_arrow(rng, n)


def _bivaluation(rng: np.random.Generator, n: int):
    k = int(rng.integers(1, min(1 << n, 3 * n) + 1))
    valuations = BivaluationSet.of(n, (int(v) for v in rng.integers(0, 1 << n, size=k)))
    return induce(valuations), _random_arrow(rng, n)


def _modus_ponens_arrow(rng: np.random.Generator, n: int):
    """
    An arrow with a designated set Σ that is →-saturated and respects modus ponens

    For α ∉ Σ every α→β lands in Σ; for α ∈ Σ, α→β stays in Σ exactly when β does.
    """
    inside = sorted(int(x) for x in rng.choice(n, size=int(rng.integers(1, n)), replace=False))
    outside = [x for x in range(n) if x not in inside]
    sigma = sum(1 << x for x in inside)
    op = []
    for alpha in range(n):
        row = []
        for beta in range(n):
            if alpha not in inside:
                row.append(int(rng.choice(inside)))
            elif beta in inside:
                row.append(beta)
            else:
                row.append(int(rng.choice(outside)))
        op.append(tuple(row))
    return ArrowTable(n, tuple(op), "modus-ponens"), sigma


def _arrowed(rng: np.random.Generator, n: int):
    """
    A Tarski structure induced by valuations chosen against a random arrow

    Half the draws build valuations that respect the arrow under modus ponens
    around a designated →-saturated set. The others send every α→β into a
    common core contained in every valuation, so C(Σ ∪ ξ_β) ⊆ C(Σ) holds.
    """
    full = full_mask(n)
    draws = [int(v) for v in rng.integers(0, 1 << n, size=3 * n)]
    if n >= 2 and rng.random() < 0.5:
        arrow, sigma = _modus_ponens_arrow(rng, n)
        valuations = [sigma, full] + [v for v in draws if _respects(v, arrow)]
        return induce(BivaluationSet.of(n, valuations)), arrow
    core_elements = [int(x) for x in rng.choice(n, size=int(rng.integers(1, n + 1)), replace=False)]
    core = sum(1 << x for x in core_elements)
    op = tuple(tuple(int(rng.choice(core_elements)) for _ in range(n)) for _ in range(n))
    arrow = ArrowTable(n, op, "core-valued")
    return induce(BivaluationSet.of(n, [v | core for v in draws])), arrow


BUILDERS = {
    ARBITRARY: _arbitrary,
    MONOTONE: _monotone,
    BIVALUATION: _bivaluation,
    ARROWED: _arrowed,
}


def generate(spec: GeneratorSpec, index: int) -> Sample:
    """
    Deterministically build corpus member number index

    Args:
        spec: Corpus description
        index: Position in the corpus

    Returns:
        Sample with the structure and its companion arrow

    Raises:
        EmptyRelationError: If every attempt produced an empty ⊢
    """
    n = spec.size_for(index)
    strategy = MIXED_CYCLE[index % len(MIXED_CYCLE)] if spec.strategy == MIXED else spec.strategy
    for attempt in range(MAX_ATTEMPTS):
        rng = _rng(spec, strategy, n, index, attempt)
        try:
            structure, arrow = BUILDERS[strategy](rng, n)
        except EmptyRelationError:
            logger.debug(f"Sample {index} attempt {attempt} produced an empty relation, redrawing")
            continue
        return Sample(index, strategy, structure, arrow)
    raise EmptyRelationError(f"No nonempty relation after {MAX_ATTEMPTS} attempts for sample {index}")


def corpus(spec: GeneratorSpec) -> Iterator[Sample]:
    for index in range(spec.count):
        yield generate(spec, index)


def exhaustive(n: int) -> List[Sample]:
    """
    Every table on an n-element carrier except the empty relation

    Args:
        n: Carrier size, at most 2

    Returns:
        Samples in lexicographic table order; the arrow is the second projection
    """
    if not 1 <= n <= EXHAUSTIVE_MAX:
        raise BudgetExceededError("exhaustive", n, EXHAUSTIVE_MAX)
    arrow = ArrowTable.second_projection(n)
    samples = []
    for table in itertools.product(range(1 << n), repeat=1 << n):
        if not any(table):
            continue
        samples.append(Sample(len(samples), "exhaustive", LogicalStructure(n, table), arrow))
    logger.debug(f"Exhaustive corpus for n={n} has {len(samples)} tables")
    return samples
