"""Fixed-set structure on ℕ: finite sets derive Λ₀, L derives L∖Λ₀, other sets are trivial"""

import logging
from typing import Any, Dict, List, Optional, Union

from app.core import LogicalStructure
from app.errors import DescriptorError, EmptyRelationError
from app.gallery import BaseGalleryItem
from app.gallery.claims import CASE_ANALYSIS, EXHAUSTIVE, Claim, ClaimResult
from app.gallery.symbolic import (
    NATURALS,
    Cofinite,
    FiniteExplicit,
    FullCarrier,
    MarkedInfinite,
    SymbolicSet,
    finite_samples,
)
from app.properties import MAXIMAL_NONTRIVIAL, SetProperty, check_set

logger = logging.getLogger(__name__)

FINITE_TO_LAMBDA0 = "lambda0"
FINITE_TO_EMPTY = "empty"

PROPER_INFINITE_SAMPLES = (
    MarkedInfinite("evens"),
    MarkedInfinite("odds"),
    Cofinite(FullCarrier(), FiniteExplicit((2,))),
    Cofinite(MarkedInfinite("odds"), FiniteExplicit((1, 3))),
)


def lambda0_descriptor(value: Union[str, List[int]]) -> SymbolicSet:
    """
    Build Λ₀ from its configuration value

    Args:
        value: 'evens', 'odds' or a list of naturals

    Raises:
        DescriptorError: If Λ₀ would be empty or the whole carrier
    """
    if isinstance(value, str):
        descriptor = MarkedInfinite(value)
    else:
        descriptor = FiniteExplicit(tuple(value))
    if NATURALS.is_subset(descriptor, FiniteExplicit()):
        raise DescriptorError("Λ₀ must be nonempty")
    if NATURALS.is_full(descriptor):
        raise DescriptorError("Λ₀ must be a proper subset of ℕ")
    return descriptor


def complement(d: SymbolicSet) -> SymbolicSet:
    if isinstance(d, MarkedInfinite):
        return MarkedInfinite("odds" if d.tag == "evens" else "evens")
    if isinstance(d, FiniteExplicit):
        return Cofinite(FullCarrier(), d)
    raise DescriptorError(f"No complement rule for {type(d).__name__}")


class Lambda0Item(BaseGalleryItem):
    """Lindenbaum-III without Lindenbaum-II"""

    item_id = "G2-lambda0"
    title = "C(Γ) = Λ₀ if Γ is finite, L∖Λ₀ if Γ = L, L otherwise"
    carrier = NATURALS

    def __init__(self, config: Optional[Dict[str, Any]] = None, finite_value: Optional[str] = None):
        super().__init__(config)
        self.lambda0 = lambda0_descriptor(self.gallery_config.get("lambda0", "evens"))
        self.finite_value = finite_value or self.gallery_config.get("g2_finite_value", FINITE_TO_LAMBDA0)
        if self.finite_value not in (FINITE_TO_LAMBDA0, FINITE_TO_EMPTY):
            raise ValueError(f"g2_finite_value must be '{FINITE_TO_LAMBDA0}' or '{FINITE_TO_EMPTY}'")
        if self.finite_value == FINITE_TO_EMPTY:
            self.item_id = Lambda0EmptyFiniteItem.item_id
            self.title = Lambda0EmptyFiniteItem.title

    def consequences(self, gamma: SymbolicSet) -> SymbolicSet:
        if NATURALS.is_finite(gamma):
            return self.lambda0 if self.finite_value == FINITE_TO_LAMBDA0 else FiniteExplicit()
        if NATURALS.is_full(gamma):
            return complement(self.lambda0)
        return FullCarrier()

    def _outside_lambda0(self) -> List[int]:
        return NATURALS.fresh(self.lambda0, self.sample_size)

    def _inside_lambda0(self) -> List[int]:
        return NATURALS.fresh(complement(self.lambda0), self.sample_size)

    def finite_sets_miss_complement(self) -> bool:
        return all(
            not self.derives(gamma, alpha)
            for gamma in finite_samples(self.sample_size)
            for alpha in self._outside_lambda0()
        )

    def carrier_nontrivial(self) -> bool:
        full = FullCarrier()
        return all(not self.derives(full, beta) for beta in self._inside_lambda0())

    def no_alpha_saturated_extension(self) -> bool:
        """∅ ⊬ α for α ∉ Λ₀, and no Σ ⊬ α is α-saturated"""
        for alpha in self._outside_lambda0():
            if self.derives(FiniteExplicit(), alpha):
                return False
            # infinite Σ: proper ones are trivial, L derives L∖Λ₀ ∋ α
            if not all(self.derives(sigma, alpha) for sigma in PROPER_INFINITE_SAMPLES):
                return False
            if not self.derives(FullCarrier(), alpha):
                return False
            # finite Σ ⊬ α: adding one fresh element keeps Σ finite
            for sigma in finite_samples(self.sample_size):
                grown = NATURALS.add(sigma, NATURALS.fresh(NATURALS.add(sigma, [alpha]), 1))
                if self.derives(grown, alpha):
                    return False
        return True

    def claims(self) -> List[Claim]:
        return [
            Claim(
                "finite-sets-miss-complement",
                "finite Γ ⊬ α for every α ∉ Λ₀",
                True,
                CASE_ANALYSIS,
                self.finite_sets_miss_complement,
            ),
            Claim(
                "carrier-nontrivial",
                "L ⊬ β for every β ∈ Λ₀, so L is maximal nontrivial",
                True,
                CASE_ANALYSIS,
                self.carrier_nontrivial,
            ),
            Claim(
                "lindI",
                "every nontrivial Γ is contained in L, which is β-saturated for β ∈ Λ₀",
                True,
                CASE_ANALYSIS,
                self.carrier_nontrivial,
            ),
            Claim(
                "lindIII",
                "every nontrivial Γ is contained in the maximal nontrivial set L",
                True,
                CASE_ANALYSIS,
                self.carrier_nontrivial,
            ),
            Claim(
                "lindII",
                "∅ ⊬ α for α ∉ Λ₀ but no α-saturated set contains ∅",
                False,
                CASE_ANALYSIS,
                lambda: not self.no_alpha_saturated_extension(),
            ),
            Claim(
                "lindIV",
                "∅ ⊬ α for α ∉ Λ₀ but no set relatively maximal in α contains ∅",
                False,
                CASE_ANALYSIS,
                lambda: not self.no_alpha_saturated_extension(),
            ),
        ]

    def window_structure(self, m: int) -> LogicalStructure:
        if self.finite_value == FINITE_TO_EMPTY:
            raise EmptyRelationError(f"{self.item_id} restricted to a window derives nothing")
        return self._restrict(m)

    def window_checks(self, m: int) -> List[ClaimResult]:
        if self.finite_value == FINITE_TO_EMPTY:
            return []
        s = self.window_structure(m)
        outside = [x for x in range(m) if not NATURALS.contains(self.lambda0, x)]
        underivable = all(not s.derives(gamma, alpha) for gamma in range(1 << m) for alpha in outside)
        window_maximal = check_set(s, SetProperty(MAXIMAL_NONTRIVIAL), s.full).holds == bool(outside)
        return [
            ClaimResult(
                "window-finite-miss-complement", "Γ ⊆ W never derives α ∉ Λ₀", True, underivable, EXHAUSTIVE
            ),
            ClaimResult(
                "window-maximal-nontrivial",
                "W is maximal nontrivial whenever W ⊄ Λ₀",
                True,
                window_maximal,
                EXHAUSTIVE,
            ),
        ]


class Lambda0EmptyFiniteItem(Lambda0Item):
    """The same separation when finite sets derive nothing"""

    item_id = "G2-lambda0-empty-finite"
    title = "C(Γ) = ∅ if Γ is finite, L∖Λ₀ if Γ = L, L otherwise"

    def __init__(self, config: Optional[Dict[str, Any]] = None):
        super().__init__(config, finite_value=FINITE_TO_EMPTY)
