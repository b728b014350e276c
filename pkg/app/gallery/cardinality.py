"""Cardinality structure on ℕ: a finite Γ of size n derives everything except n"""

import logging
from typing import List

from app.core import LogicalStructure
from app.gallery import BaseGalleryItem
from app.gallery.claims import CASE_ANALYSIS, EXHAUSTIVE, Claim, ClaimResult
from app.gallery.symbolic import (
    NATURALS,
    Augmented,
    Cofinite,
    FiniteExplicit,
    FullCarrier,
    MarkedInfinite,
    SymbolicSet,
    finite_samples,
)
from app.properties import RELATIVELY_MAXIMAL, SetProperty, check_set
from app.utils.conversions import popcount

logger = logging.getLogger(__name__)


class CardinalityItem(BaseGalleryItem):
    """Lindenbaum-IV without Lindenbaum-III"""

    item_id = "G3-nat-card"
    title = "C(Γ) = ℕ∖{n} if Γ is finite with |Γ| = n, ℕ otherwise"
    carrier = NATURALS

    def consequences(self, gamma: SymbolicSet) -> SymbolicSet:
        if NATURALS.is_finite(gamma):
            return Cofinite(FullCarrier(), FiniteExplicit((NATURALS.size(gamma),)))
        return FullCarrier()

    def _infinite_supersets(self, gamma: FiniteExplicit) -> List[SymbolicSet]:
        return [
            FullCarrier(),
            Augmented(MarkedInfinite("evens"), gamma),
            Augmented(MarkedInfinite("odds"), gamma),
        ]

    def example_consequence(self) -> bool:
        return NATURALS.equals(
            self.consequences(FiniteExplicit((4, 7))), Cofinite(FullCarrier(), FiniteExplicit((2,)))
        )

    def finite_sets_relatively_maximal(self) -> bool:
        """A finite Γ of size n is relatively maximal in n"""
        for gamma in finite_samples(self.sample_size):
            n = len(gamma.elements)
            if self.derives(gamma, n):
                return False
            # proper finite supersets are strictly larger, so their size differs from n
            for k in (1, 2, 3):
                if not self.derives(NATURALS.add(gamma, NATURALS.fresh(gamma, k)), n):
                    return False
            if not all(self.derives(sigma, n) for sigma in self._infinite_supersets(gamma)):
                return False
        return True

    def underivable_pairs_are_sizes(self) -> bool:
        """Γ ⊬ α only when Γ is finite and α = |Γ|"""
        for gamma in finite_samples(self.sample_size):
            n = len(gamma.elements)
            if any(self.derives(gamma, a) == (a == n) for a in range(n + self.sample_size)):
                return False
        return not any(self.nontrivial(sigma) for sigma in self._infinite_supersets(FiniteExplicit()))

    def nontrivial_sets_grow(self) -> bool:
        """Every nontrivial Σ is finite, and Σ plus a fresh element is again finite and nontrivial"""
        for sigma in finite_samples(self.sample_size):
            if not self.nontrivial(sigma):
                return False
            if not self.nontrivial(NATURALS.add(sigma, NATURALS.fresh(sigma, 1))):
                return False
        return True

    def pairs_relatively_maximal(self) -> bool:
        return self.underivable_pairs_are_sizes() and self.finite_sets_relatively_maximal()

    def claims(self) -> List[Claim]:
        lind_iv = self.pairs_relatively_maximal
        return [
            Claim(
                "example-consequence",
                "C({4, 7}) = ℕ∖{2}",
                True,
                EXHAUSTIVE,
                self.example_consequence,
            ),
            Claim(
                "finite-relatively-maximal",
                "a finite Γ with |Γ| = n is relatively maximal in n",
                True,
                CASE_ANALYSIS,
                self.finite_sets_relatively_maximal,
            ),
            Claim("lindIV", "every Γ ⊬ α is itself relatively maximal in α", True, CASE_ANALYSIS, lind_iv),
            Claim("lindII", "every Γ ⊬ α is itself α-saturated", True, CASE_ANALYSIS, lind_iv),
            Claim("lindI", "every nontrivial Γ is itself saturated", True, CASE_ANALYSIS, lind_iv),
            Claim(
                "lindIII",
                "no maximal nontrivial set exists: finite sets grow, infinite sets are trivial",
                False,
                CASE_ANALYSIS,
                lambda: not self.nontrivial_sets_grow(),
            ),
        ]

    def window_structure(self, m: int) -> LogicalStructure:
        return self._restrict(m)

    def window_checks(self, m: int) -> List[ClaimResult]:
        s = self.window_structure(m)
        relmax = all(
            check_set(s, SetProperty(RELATIVELY_MAXIMAL, popcount(gamma)), gamma).holds
            for gamma in range(1 << m)
            if popcount(gamma) < m
        )
        return [
            ClaimResult(
                "window-relatively-maximal",
                "Γ ⊊ W is relatively maximal in |Γ|",
                True,
                relmax,
                EXHAUSTIVE,
            )
        ]
