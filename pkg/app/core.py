"""Finite logical structures, bivaluations and arrow connectives"""

import hashlib
import logging
from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, Callable, Dict, Iterable, Iterator, Mapping, Optional, Tuple, Union

import numpy as np

from app.errors import (
    BudgetExceededError,
    EmptyRelationError,
    UnknownRuleError,
    WidthMismatchError,
)
from app.utils.conversions import from_bits, full_mask, is_subset
from app.utils.lattice import subset_indices

logger = logging.getLogger(__name__)

# Dense tables hold 2^n entries
MAX_CARRIER = 16

ORIGIN_TABLE = "explicit-table"
ORIGIN_BIVALUATION = "bivaluation-induced"


@dataclass(frozen=True)
class Verdict:
    """Outcome of a decision procedure, with a counterexample when it is false"""

    holds: bool
    witness: Optional[Dict[str, Any]] = None

    def __bool__(self) -> bool:
        return self.holds

    @classmethod
    def yes(cls) -> "Verdict":
        return cls(True)

    @classmethod
    def no(cls, **witness: Any) -> "Verdict":
        return cls(False, witness)


def subset_witness(bits: int) -> list:
    """Render a subset for a witness mapping"""
    return from_bits(bits)


def _check_carrier(n: int) -> None:
    if not isinstance(n, int) or n < 1:
        raise WidthMismatchError(f"Carrier size must be a positive integer, got {n!r}")
    if n > MAX_CARRIER:
        raise BudgetExceededError("storage", n, MAX_CARRIER)


@dataclass(frozen=True)
class LogicalStructure:
    """
    A finite logical structure (L, ⊢) given by its consequence table

    L is {0, ..., n-1}; table[g] is C(Γ) for the subset with bit pattern g.
    The table is arbitrary: no closure axiom is assumed.
    """

    n: int
    table: Tuple[int, ...]
    origin: str = ORIGIN_TABLE

    def __post_init__(self):
        _check_carrier(self.n)
        if len(self.table) != 1 << self.n:
            raise WidthMismatchError(
                f"Table has {len(self.table)} entries, expected {1 << self.n} for n={self.n}"
            )
        full = full_mask(self.n)
        for gamma, value in enumerate(self.table):
            if value < 0 or value & ~full:
                raise WidthMismatchError(
                    f"Table entry for {from_bits(gamma)} has elements outside the carrier"
                )
        if not any(self.table):
            raise EmptyRelationError("The induced consequence relation is empty")

    @property
    def full(self) -> int:
        return full_mask(self.n)

    @property
    def size(self) -> int:
        """Number of subsets of the carrier"""
        return 1 << self.n

    @cached_property
    def array(self) -> np.ndarray:
        """Read-only numpy view of the table"""
        arr = np.array(self.table, dtype=np.int64)
        arr.setflags(write=False)
        return arr

    def check_subset(self, gamma: int) -> None:
        if gamma < 0 or gamma & ~self.full:
            raise WidthMismatchError(
                f"Subset {from_bits(gamma)} is not a subset of a carrier of size {self.n}"
            )

    def check_element(self, alpha: int) -> None:
        if not 0 <= alpha < self.n:
            raise WidthMismatchError(f"Element {alpha} is outside the carrier of size {self.n}")

    def consequences(self, gamma: int) -> int:
        self.check_subset(gamma)
        return self.table[gamma]

    def derives(self, gamma: int, alpha: int) -> bool:
        self.check_element(alpha)
        return bool(self.consequences(gamma) >> alpha & 1)

    def pairs(self) -> Iterator[Tuple[int, int]]:
        """Iterate the pairs (Γ, α) with Γ ⊢ α, ascending by Γ then α"""
        for gamma, value in enumerate(self.table):
            for alpha in from_bits(value):
                yield gamma, alpha

    def digest(self) -> str:
        payload = f"{self.n}:" + ",".join(format(v, "x") for v in self.table)
        return "sha256:" + hashlib.sha256(payload.encode("utf-8")).hexdigest()


def consequences(structure: LogicalStructure, gamma: int) -> int:
    """C(Γ) for a subset bit pattern"""
    return structure.consequences(gamma)


def derives(structure: LogicalStructure, gamma: int, alpha: int) -> bool:
    """Γ ⊢ α"""
    return structure.derives(gamma, alpha)


@dataclass(frozen=True)
class BivaluationSet:
    """
    A set of bivaluations, each stored as the subset it is the characteristic function of

    Valuations are kept sorted and duplicate-free. An empty set is representable
    (reports use it) but cannot be turned into a structure.
    """

    n: int
    valuations: Tuple[int, ...] = field(default_factory=tuple)

    def __post_init__(self):
        _check_carrier(self.n)
        full = full_mask(self.n)
        for v in self.valuations:
            if v < 0 or v & ~full:
                raise WidthMismatchError(f"Valuation {from_bits(v)} does not fit width {self.n}")
        canonical = tuple(sorted(set(self.valuations)))
        if canonical != self.valuations:
            object.__setattr__(self, "valuations", canonical)

    @classmethod
    def of(cls, n: int, valuations: Iterable[int]) -> "BivaluationSet":
        return cls(n, tuple(valuations))

    def __len__(self) -> int:
        return len(self.valuations)

    def __iter__(self) -> Iterator[int]:
        return iter(self.valuations)

    def __contains__(self, valuation: int) -> bool:
        return valuation in self.valuations

    def without(self, valuation: int) -> "BivaluationSet":
        return BivaluationSet(self.n, tuple(v for v in self.valuations if v != valuation))

    @staticmethod
    def satisfies(valuation: int, gamma: int) -> bool:
        """χ_Σ satisfies Γ iff Γ ⊆ Σ"""
        return is_subset(gamma, valuation)

    def induced_table(self) -> np.ndarray:
        """
        Consequence table of ⊢_V

        C_V(Γ) is the intersection of every valuation containing Γ; with no
        such valuation it is the whole carrier, so an empty V induces the
        total relation.
        """
        full = full_mask(self.n)
        gammas = subset_indices(self.n)
        out = np.full(1 << self.n, full, dtype=np.int64)
        for v in self.valuations:
            satisfied = (gammas & ~v) == 0
            out[satisfied] &= v
        return out


@dataclass(frozen=True)
class ArrowTable:
    """A binary connective on the carrier: op[α][β] is α→β"""

    n: int
    op: Tuple[Tuple[int, ...], ...]
    name: str = "custom"

    def __post_init__(self):
        _check_carrier(self.n)
        if len(self.op) != self.n or any(len(row) != self.n for row in self.op):
            raise WidthMismatchError(f"Arrow table must be total on a {self.n}x{self.n} grid")
        for row in self.op:
            for value in row:
                if not 0 <= value < self.n:
                    raise WidthMismatchError(f"Arrow value {value} is outside the carrier")

    @classmethod
    def from_function(cls, n: int, fn: Callable[[int, int], int], name: str = "custom") -> "ArrowTable":
        return cls(n, tuple(tuple(fn(a, b) for b in range(n)) for a in range(n)), name)

    @classmethod
    def first_projection(cls, n: int) -> "ArrowTable":
        return cls.from_function(n, lambda a, b: a, "first-projection")

    @classmethod
    def second_projection(cls, n: int) -> "ArrowTable":
        return cls.from_function(n, lambda a, b: b, "second-projection")

    @classmethod
    def constant(cls, n: int, value: int) -> "ArrowTable":
        return cls.from_function(n, lambda a, b: value, f"constant {value}")

    def apply(self, alpha: int, beta: int) -> int:
        if not (0 <= alpha < self.n and 0 <= beta < self.n):
            raise WidthMismatchError(f"Arrow arguments ({alpha}, {beta}) are outside the carrier")
        return self.op[alpha][beta]

    def xi(self, alpha: int) -> int:
        """ξ_α = {α→β : β ∈ L} as a bit pattern"""
        if not 0 <= alpha < self.n:
            raise WidthMismatchError(f"Element {alpha} is outside the carrier of size {self.n}")
        bits = 0
        for value in self.op[alpha]:
            bits |= 1 << value
        return bits


DefaultSpec = Union[str, int]


def _resolve_default(n: int, default: DefaultSpec) -> Callable[[int], int]:
    full = full_mask(n)
    if default == "identity":
        return lambda gamma: gamma
    if default == "full":
        return lambda gamma: full
    if isinstance(default, int) and not isinstance(default, bool):
        if default < 0 or default & ~full:
            raise WidthMismatchError(f"Default subset {from_bits(default)} does not fit width {n}")
        return lambda gamma: default
    raise ValueError(f"Unknown default '{default}' (expected identity, full or a subset)")


def _finite_table_rule(n: int, entries: Mapping[int, int] = None, default: DefaultSpec = "full") -> Tuple[int, ...]:
    entries = dict(entries or {})
    full = full_mask(n)
    fallback = _resolve_default(n, default)
    for gamma, value in entries.items():
        if gamma < 0 or gamma & ~full:
            raise WidthMismatchError(f"Table key {from_bits(gamma)} does not fit width {n}")
        if value < 0 or value & ~full:
            raise WidthMismatchError(f"Table value {from_bits(value)} does not fit width {n}")
    return tuple(entries.get(gamma, fallback(gamma)) for gamma in range(1 << n))


RULES: Dict[str, Callable[..., Tuple[int, ...]]] = {
    "identity": lambda n: tuple(range(1 << n)),
    "full-constant": lambda n: (full_mask(n),) * (1 << n),
    # always rejected by LogicalStructure; kept so the rejection path is reachable by name
    "empty": lambda n: (0,) * (1 << n),
    "finite-table": _finite_table_rule,
}


def from_table(n: int, entries: Mapping[int, int], default: DefaultSpec = "full") -> LogicalStructure:
    """
    Build a structure from explicit table entries

    Args:
        n: Carrier size
        entries: Mapping Γ -> C(Γ) for the listed subsets
        default: "identity", "full" or a subset bit pattern for unlisted subsets

    Returns:
        LogicalStructure with origin explicit-table
    """
    _check_carrier(n)
    return LogicalStructure(n, _finite_table_rule(n, entries, default), ORIGIN_TABLE)


def from_rule(n: int, rule: str, **params: Any) -> LogicalStructure:
    """Build a structure from a registered rule name"""
    _check_carrier(n)
    if rule not in RULES:
        raise UnknownRuleError(f"Unknown rule '{rule}' (known: {', '.join(sorted(RULES))})")
    table = RULES[rule](n, **params)
    return LogicalStructure(n, tuple(table), f"rule:{rule}")


def induce(valuations: BivaluationSet, allow_empty: bool = False) -> LogicalStructure:
    """
    Build the structure (L, ⊢_V) induced by a bivaluation set

    Args:
        valuations: The valuation set V
        allow_empty: Read an empty V as the total relation instead of rejecting it

    Raises:
        EmptyRelationError: If V is empty and allow_empty is False
    """
    if not len(valuations) and not allow_empty:
        raise EmptyRelationError("Cannot build a structure from an empty bivaluation set")
    table = tuple(int(v) for v in valuations.induced_table())
    origin = ORIGIN_BIVALUATION if len(valuations) else f"{ORIGIN_BIVALUATION}(empty)"
    return LogicalStructure(valuations.n, table, origin)


Source = Union[Mapping[int, int], str, BivaluationSet]


def build_structure(n: int, source: Source, **params: Any) -> LogicalStructure:
    """
    Build a logical structure from table entries, a rule name or a bivaluation set

    Args:
        n: Carrier size
        source: Mapping Γ -> C(Γ), registered rule name, or BivaluationSet
        **params: Extra parameters (default= for tables, rule parameters for rules)

    Returns:
        A LogicalStructure realizing the source

    Raises:
        WidthMismatchError: If widths disagree with n
        UnknownRuleError: If the rule name is not registered
        EmptyRelationError: If the bivaluation set or the induced relation is empty
    """
    if isinstance(source, BivaluationSet):
        if source.n != n:
            raise WidthMismatchError(f"Bivaluation width {source.n} does not match n={n}")
        return induce(source)
    if isinstance(source, str):
        return from_rule(n, source, **params)
    return from_table(n, source, params.get("default", "full"))


def _first_difference(t1: np.ndarray, t2: np.ndarray) -> Optional[Tuple[int, int]]:
    extra = t2 & ~t1
    nonzero = np.flatnonzero(extra)
    if not len(nonzero):
        return None
    gamma = int(nonzero[0])
    value = int(extra[gamma])
    return gamma, (value & -value).bit_length() - 1


def _require_same_carrier(s1: LogicalStructure, s2: LogicalStructure) -> None:
    if s1.n != s2.n:
        raise WidthMismatchError(f"Carrier sizes differ: {s1.n} vs {s2.n}")


def subrelation_witness(s1: LogicalStructure, s2: LogicalStructure) -> Optional[Tuple[int, int]]:
    """First pair (Γ, α) with Γ ⊢₁ α but not Γ ⊢₂ α, or None when ⊢₁ ⊆ ⊢₂"""
    _require_same_carrier(s1, s2)
    return _first_difference(s2.array, s1.array)


def subrelation(s1: LogicalStructure, s2: LogicalStructure) -> bool:
    """⊢₁ ⊆ ⊢₂"""
    return subrelation_witness(s1, s2) is None


def strict_subrelation(s1: LogicalStructure, s2: LogicalStructure) -> Tuple[bool, Optional[Tuple[int, int]]]:
    """
    Decide ⊢₁ ⊊ ⊢₂

    Returns:
        (holds, witness) where witness is the first pair in ⊢₂ ∖ ⊢₁ when ⊢₁ ⊆ ⊢₂
    """
    if not subrelation(s1, s2):
        return False, None
    witness = _first_difference(s1.array, s2.array)
    return witness is not None, witness
