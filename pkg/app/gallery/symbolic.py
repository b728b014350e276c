"""Symbolic subset descriptors and the carriers that interpret them"""

import logging
import math
from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Any, FrozenSet, Iterable, List, Tuple, Union

from app.errors import DescriptorError, NoContainingOrdinalError
from app.gallery.ordinal import ZERO, OrdinalBelowOmega2

logger = logging.getLogger(__name__)

MARKED_TAGS = ("evens", "odds")


@dataclass(frozen=True)
class FiniteExplicit:
    """A finite set listed element by element; stored sorted and duplicate-free"""

    elements: Tuple[Any, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "elements", tuple(sorted(set(self.elements))))


@dataclass(frozen=True)
class Downset:
    """All ordinals below a bound, i.e. the ordinal itself"""

    bound: OrdinalBelowOmega2


@dataclass(frozen=True)
class FiniteUnionDownset:
    downset: Downset
    extra: FiniteExplicit


@dataclass(frozen=True)
class MultiplesOf:
    """
    Positive multiples of a squarefree modulus

    A prime p gives pℤ⁺; a product of distinct primes is the intersection of
    the prime families.
    """

    modulus: int

    def __post_init__(self):
        if self.modulus < 2 or any(self.modulus % (q * q) == 0 for q in prime_factors(self.modulus)):
            raise DescriptorError(f"MultiplesOf needs a squarefree modulus >= 2, got {self.modulus}")


@dataclass(frozen=True)
class MarkedInfinite:
    """An infinite set known only by a tag ('evens' or 'odds')"""

    tag: str

    def __post_init__(self):
        if self.tag not in MARKED_TAGS:
            raise DescriptorError(f"Unknown infinite-set tag '{self.tag}' (expected one of {', '.join(MARKED_TAGS)})")


@dataclass(frozen=True)
class FullCarrier:
    pass


@dataclass(frozen=True)
class Cofinite:
    """base minus finitely many elements"""

    base: Any
    missing: FiniteExplicit


@dataclass(frozen=True)
class Augmented:
    """base plus finitely many elements"""

    base: Any
    extra: FiniteExplicit


SymbolicSet = Union[
    FiniteExplicit, Downset, FiniteUnionDownset, MultiplesOf, MarkedInfinite, FullCarrier, Cofinite, Augmented
]


def prime_factors(k: int) -> List[int]:
    """Distinct prime factors of k >= 1 by trial division"""
    factors = []
    q = 2
    while q * q <= k:
        if k % q == 0:
            factors.append(q)
            while k % q == 0:
                k //= q
        q += 1
    if k > 1:
        factors.append(k)
    return factors


def describe(d: SymbolicSet) -> str:
    """Short human-readable rendering of a descriptor"""
    if isinstance(d, FiniteExplicit):
        return "{" + ", ".join(str(x) for x in d.elements) + "}"
    if isinstance(d, Downset):
        return f"↓{d.bound}"
    if isinstance(d, FiniteUnionDownset):
        return f"{describe(d.downset)} ∪ {describe(d.extra)}"
    if isinstance(d, MultiplesOf):
        return f"{d.modulus}ℤ⁺"
    if isinstance(d, MarkedInfinite):
        return d.tag
    if isinstance(d, FullCarrier):
        return "L"
    if isinstance(d, Cofinite):
        return f"{describe(d.base)} ∖ {describe(d.missing)}"
    if isinstance(d, Augmented):
        return f"{describe(d.base)} ∪ {describe(d.extra)}"
    raise DescriptorError(f"Not a descriptor: {d!r}")


class Carrier(ABC):
    """An infinite (or small finite) carrier together with decision procedures on descriptors"""

    name: str

    @abstractmethod
    def contains(self, d: SymbolicSet, x: Any) -> bool:
        pass

    @abstractmethod
    def is_finite(self, d: SymbolicSet) -> bool:
        pass

    @abstractmethod
    def is_subset(self, a: SymbolicSet, b: SymbolicSet) -> bool:
        pass

    @abstractmethod
    def is_full(self, d: SymbolicSet) -> bool:
        pass

    @abstractmethod
    def add(self, d: SymbolicSet, elements: Iterable[Any]) -> SymbolicSet:
        pass

    @abstractmethod
    def fresh(self, d: SymbolicSet, count: int = 1) -> List[Any]:
        """The smallest elements outside d, at most count of them"""
        pass

    @abstractmethod
    def elements(self, d: SymbolicSet) -> List[Any]:
        """Members of a finite descriptor in ascending order"""
        pass

    def equals(self, a: SymbolicSet, b: SymbolicSet) -> bool:
        return self.is_subset(a, b) and self.is_subset(b, a)

    def size(self, d: SymbolicSet) -> int:
        return len(self.elements(d))


@dataclass(frozen=True)
class PeriodicForm:
    """
    Normal form of an eventually periodic set of naturals

    Members are x in added, or x mod modulus in residues and x not in removed.
    added holds only non-pattern elements and removed only pattern elements.
    """

    modulus: int
    residues: FrozenSet[int]
    added: FrozenSet[int]
    removed: FrozenSet[int]

    def in_pattern(self, x: int) -> bool:
        return x % self.modulus in self.residues

    def contains(self, x: int) -> bool:
        return x in self.added or (self.in_pattern(x) and x not in self.removed)

    def normalized(self) -> "PeriodicForm":
        return PeriodicForm(
            self.modulus,
            self.residues,
            frozenset(x for x in self.added if not self.in_pattern(x)),
            frozenset(x for x in self.removed if self.in_pattern(x)),
        )

    def with_elements(self, xs: Iterable[int]) -> "PeriodicForm":
        xs = set(xs)
        return PeriodicForm(self.modulus, self.residues, self.added | xs, self.removed - xs).normalized()

    def without_elements(self, xs: Iterable[int]) -> "PeriodicForm":
        xs = set(xs)
        return PeriodicForm(self.modulus, self.residues, self.added - xs, self.removed | xs).normalized()


class PeriodicCarrier(Carrier):
    """ℕ (minimum 0) or ℤ⁺ (minimum 1)"""

    def __init__(self, name: str, minimum: int):
        self.name = name
        self.minimum = minimum

    def _check_elements(self, xs: Iterable[Any]) -> List[int]:
        xs = list(xs)
        for x in xs:
            if not isinstance(x, int) or isinstance(x, bool) or x < self.minimum:
                raise DescriptorError(f"{x!r} is not an element of {self.name}")
        return xs

    def _below_minimum(self) -> FrozenSet[int]:
        return frozenset(range(self.minimum))

    def form(self, d: SymbolicSet) -> PeriodicForm:
        """
        Compile a descriptor to its periodic normal form

        Raises:
            DescriptorError: If the descriptor is not expressible over this carrier
        """
        if isinstance(d, FiniteExplicit):
            return PeriodicForm(1, frozenset(), frozenset(self._check_elements(d.elements)), frozenset())
        if isinstance(d, FullCarrier):
            base = PeriodicForm(1, frozenset({0}), frozenset(), frozenset())
        elif isinstance(d, MarkedInfinite):
            base = PeriodicForm(2, frozenset({0 if d.tag == "evens" else 1}), frozenset(), frozenset())
        elif isinstance(d, MultiplesOf):
            base = PeriodicForm(d.modulus, frozenset({0}), frozenset(), frozenset({0}))
        elif isinstance(d, Cofinite):
            return self.form(d.base).without_elements(self._check_elements(d.missing.elements))
        elif isinstance(d, Augmented):
            return self.form(d.base).with_elements(self._check_elements(d.extra.elements))
        else:
            raise DescriptorError(f"Descriptor {type(d).__name__} is not expressible over {self.name}")
        return base.without_elements(self._below_minimum())

    def contains(self, d: SymbolicSet, x: int) -> bool:
        return x >= self.minimum and self.form(d).contains(x)

    def is_finite(self, d: SymbolicSet) -> bool:
        return not self.form(d).residues

    def is_subset(self, a: SymbolicSet, b: SymbolicSet) -> bool:
        fa, fb = self.form(a), self.form(b)
        period = math.lcm(fa.modulus, fb.modulus)
        for r in range(period):
            if fa.in_pattern(r) and not fb.in_pattern(r):
                return False
        # pattern parts nest; only the finite exceptions can break containment
        return all(fb.contains(x) for x in fa.added) and not any(fa.contains(x) for x in fb.removed)

    def is_full(self, d: SymbolicSet) -> bool:
        return self.is_subset(FullCarrier(), d)

    def add(self, d: SymbolicSet, elements: Iterable[int]) -> SymbolicSet:
        extra = FiniteExplicit(tuple(self._check_elements(elements)))
        if isinstance(d, FiniteExplicit):
            return FiniteExplicit(d.elements + extra.elements)
        return Augmented(d, extra)

    def fresh(self, d: SymbolicSet, count: int = 1) -> List[int]:
        f = self.form(d)
        exceptions = f.added | f.removed
        bound = max(exceptions, default=0) + f.modulus * (count + 1) + self.minimum
        found = []
        x = self.minimum
        while len(found) < count and x <= bound:
            if not f.contains(x):
                found.append(x)
            x += 1
        return found

    def elements(self, d: SymbolicSet) -> List[int]:
        f = self.form(d)
        if f.residues:
            raise DescriptorError(f"{describe(d)} is infinite")
        return sorted(f.added)

    def modulus_of(self, d: SymbolicSet) -> int:
        return self.form(d).modulus


@dataclass(frozen=True)
class OrdinalForm:
    """Normal form ↓bound ∪ extra with every extra element >= bound"""

    bound: OrdinalBelowOmega2
    extra: FrozenSet[OrdinalBelowOmega2]

    def contains(self, x: OrdinalBelowOmega2) -> bool:
        return x < self.bound or x in self.extra


class OrdinalCarrier(Carrier):
    """The ordinal ω+ω"""

    name = "ω+ω"

    def form(self, d: SymbolicSet) -> OrdinalForm:
        """
        Compile a descriptor to ↓bound ∪ extra

        Raises:
            NoContainingOrdinalError: For the full carrier, which is cofinal
            DescriptorError: For descriptors without meaning over ordinals
        """
        if isinstance(d, FiniteExplicit):
            bound, extra = ZERO, self._check_elements(d.elements)
        elif isinstance(d, Downset):
            bound, extra = d.bound, []
        elif isinstance(d, FiniteUnionDownset):
            bound, extra = d.downset.bound, self._check_elements(d.extra.elements)
        elif isinstance(d, FullCarrier):
            raise NoContainingOrdinalError("ω+ω is cofinal in itself; no ordinal below ω·2 contains it")
        else:
            raise DescriptorError(f"Descriptor {type(d).__name__} is not expressible over {self.name}")
        return OrdinalForm(bound, frozenset(x for x in extra if x >= bound))

    @staticmethod
    def _check_elements(xs: Iterable[Any]) -> List[OrdinalBelowOmega2]:
        xs = list(xs)
        for x in xs:
            if not isinstance(x, OrdinalBelowOmega2):
                raise DescriptorError(f"{x!r} is not an ordinal below ω·2")
        return xs

    @staticmethod
    def descriptor(form: OrdinalForm) -> SymbolicSet:
        extra = FiniteExplicit(tuple(form.extra))
        if form.bound == ZERO:
            return extra
        if not form.extra:
            return Downset(form.bound)
        return FiniteUnionDownset(Downset(form.bound), extra)

    def contains(self, d: SymbolicSet, x: OrdinalBelowOmega2) -> bool:
        return self.form(d).contains(x)

    def is_finite(self, d: SymbolicSet) -> bool:
        return self.form(d).bound.is_finite

    def is_subset(self, a: SymbolicSet, b: SymbolicSet) -> bool:
        fa, fb = self.form(a), self.form(b)
        if not all(fb.contains(x) for x in fa.extra):
            return False
        if fa.bound <= fb.bound:
            return True
        # [fb.bound, fa.bound) must be finite and covered by fb.extra
        if fa.bound.limit_part != fb.bound.limit_part:
            return False
        return all(
            OrdinalBelowOmega2(fb.bound.limit_part, k) in fb.extra
            for k in range(fb.bound.finite_part, fa.bound.finite_part)
        )

    def is_full(self, d: SymbolicSet) -> bool:
        # every representable set misses a tail of ω+ω
        self.form(d)
        return False

    def add(self, d: SymbolicSet, elements: Iterable[OrdinalBelowOmega2]) -> SymbolicSet:
        f = self.form(d)
        extra = f.extra | frozenset(x for x in self._check_elements(elements) if x >= f.bound)
        return self.descriptor(OrdinalForm(f.bound, extra))

    def fresh(self, d: SymbolicSet, count: int = 1) -> List[OrdinalBelowOmega2]:
        f = self.form(d)
        found = []
        x = f.bound
        while len(found) < count:
            if x not in f.extra:
                found.append(x)
            x = x.successor()
        return found

    def elements(self, d: SymbolicSet) -> List[OrdinalBelowOmega2]:
        f = self.form(d)
        if not f.bound.is_finite:
            raise DescriptorError(f"{describe(d)} is infinite")
        return [OrdinalBelowOmega2.finite(k) for k in range(f.bound.finite_part)] + sorted(f.extra)


class FiniteCarrier(Carrier):
    """{0, ..., n-1}; only explicit descriptors and the full carrier"""

    def __init__(self, n: int):
        self.n = n
        self.name = "{" + ", ".join(str(i) for i in range(n)) + "}"

    def members(self, d: SymbolicSet) -> FrozenSet[int]:
        if isinstance(d, FullCarrier):
            return frozenset(range(self.n))
        if isinstance(d, FiniteExplicit):
            for x in d.elements:
                if not isinstance(x, int) or not 0 <= x < self.n:
                    raise DescriptorError(f"{x!r} is not an element of {self.name}")
            return frozenset(d.elements)
        raise DescriptorError(f"Descriptor {type(d).__name__} is not expressible over {self.name}")

    def contains(self, d: SymbolicSet, x: int) -> bool:
        return x in self.members(d)

    def is_finite(self, d: SymbolicSet) -> bool:
        self.members(d)
        return True

    def is_subset(self, a: SymbolicSet, b: SymbolicSet) -> bool:
        return self.members(a) <= self.members(b)

    def is_full(self, d: SymbolicSet) -> bool:
        return len(self.members(d)) == self.n

    def add(self, d: SymbolicSet, elements: Iterable[int]) -> SymbolicSet:
        return FiniteExplicit(tuple(self.members(d) | self.members(FiniteExplicit(tuple(elements)))))

    def fresh(self, d: SymbolicSet, count: int = 1) -> List[int]:
        members = self.members(d)
        return [x for x in range(self.n) if x not in members][:count]

    def elements(self, d: SymbolicSet) -> List[int]:
        return sorted(self.members(d))


NATURALS = PeriodicCarrier("ℕ", 0)
POSITIVE_INTEGERS = PeriodicCarrier("ℤ⁺", 1)
OMEGA_TWO = OrdinalCarrier()


def ord_least_containing(d: SymbolicSet) -> OrdinalBelowOmega2:
    """
    Least ordinal β below ω·2 with Γ ⊆ β

    This is the supremum of the successors of the members of Γ.

    Args:
        d: Descriptor over ω+ω

    Returns:
        The intersection of all ordinals containing Γ

    Raises:
        NoContainingOrdinalError: If Γ is cofinal in ω+ω
    """
    form = OMEGA_TWO.form(d)
    if not form.extra:
        return form.bound
    return max(form.bound, max(form.extra).successor())


def finite_samples(count: int, start: int = 0) -> List[FiniteExplicit]:
    """One finite set of naturals of each size 0..count-1, members spread apart"""
    return [FiniteExplicit(tuple(start + 3 * i + 1 for i in range(size))) for size in range(count)]
