"""Parity structure on ℕ: finite odd sets derive nothing, every other set derives everything"""

import logging
from typing import List

from app.core import LogicalStructure
from app.gallery import BaseGalleryItem
from app.gallery.claims import CASE_ANALYSIS, EXHAUSTIVE, SYMMETRY_REDUCTION, Claim, ClaimResult
from app.gallery.symbolic import (
    NATURALS,
    Cofinite,
    FiniteExplicit,
    FullCarrier,
    MarkedInfinite,
    SymbolicSet,
    finite_samples,
)
from app.properties import ALPHA_SATURATED, NONTRIVIAL, SetProperty, check_set
from app.utils.conversions import popcount

logger = logging.getLogger(__name__)

INFINITE_SAMPLES = (
    FullCarrier(),
    MarkedInfinite("evens"),
    MarkedInfinite("odds"),
    Cofinite(FullCarrier(), FiniteExplicit((0, 3))),
)


class ParityItem(BaseGalleryItem):
    """Lindenbaum-I and II but neither III nor IV"""

    item_id = "G1-parity"
    title = "C(Γ) = ∅ if Γ is finite of odd size, L otherwise"
    carrier = NATURALS

    def consequences(self, gamma: SymbolicSet) -> SymbolicSet:
        if NATURALS.is_finite(gamma) and NATURALS.size(gamma) % 2 == 1:
            return FiniteExplicit()
        return FullCarrier()

    def _odd_samples(self) -> List[FiniteExplicit]:
        return [g for g in finite_samples(2 * self.sample_size) if len(g.elements) % 2 == 1]

    def _alphas(self, gamma: SymbolicSet) -> List[int]:
        return [0, 1, 5, 100] + NATURALS.fresh(gamma, 2)

    def odd_sets_alpha_saturated(self) -> bool:
        # only |Γ ∪ {β}| matters, and it is even for every β ∉ Γ
        for gamma in self._odd_samples():
            for alpha in self._alphas(gamma):
                if self.derives(gamma, alpha):
                    return False
                for beta in NATURALS.fresh(gamma, 3):
                    if not self.derives(NATURALS.add(gamma, [beta]), alpha):
                        return False
        return True

    def nontrivial_iff_finite_odd(self) -> bool:
        for gamma in finite_samples(2 * self.sample_size):
            if self.nontrivial(gamma) != (len(gamma.elements) % 2 == 1):
                return False
        return not any(self.nontrivial(gamma) for gamma in INFINITE_SAMPLES)

    def nontrivial_sets_extend_by_two(self) -> bool:
        """Every nontrivial Σ has the proper nontrivial superset Σ ∪ {β, γ}"""
        for sigma in self._odd_samples():
            bigger = NATURALS.add(sigma, NATURALS.fresh(sigma, 2))
            if not self.nontrivial(bigger):
                return False
        return True

    def claims(self) -> List[Claim]:
        return [
            Claim(
                "odd-finite-alpha-saturated",
                "every finite Γ of odd size is α-saturated for every α",
                True,
                SYMMETRY_REDUCTION,
                self.odd_sets_alpha_saturated,
            ),
            Claim(
                "nontrivial-iff-finite-odd",
                "Γ is nontrivial exactly when Γ is finite of odd size",
                True,
                CASE_ANALYSIS,
                self.nontrivial_iff_finite_odd,
            ),
            Claim(
                "no-maximal-nontrivial",
                "every nontrivial Σ has a proper nontrivial superset",
                True,
                SYMMETRY_REDUCTION,
                self.nontrivial_sets_extend_by_two,
            ),
            Claim(
                "lindI",
                "every nontrivial Γ is contained in a saturated set, namely itself",
                True,
                CASE_ANALYSIS,
                lambda: self.nontrivial_iff_finite_odd() and self.odd_sets_alpha_saturated(),
            ),
            Claim(
                "lindII",
                "every Γ ⊬ α is an α-saturated set containing itself",
                True,
                CASE_ANALYSIS,
                lambda: self.nontrivial_iff_finite_odd() and self.odd_sets_alpha_saturated(),
            ),
            Claim(
                "lindIII",
                "{0} is contained in no maximal nontrivial set",
                False,
                SYMMETRY_REDUCTION,
                lambda: not self.nontrivial_sets_extend_by_two(),
            ),
            Claim(
                "lindIV",
                "{0} ⊬ α is contained in no set relatively maximal in α",
                False,
                SYMMETRY_REDUCTION,
                lambda: not self.nontrivial_sets_extend_by_two(),
            ),
        ]

    def window_structure(self, m: int) -> LogicalStructure:
        return self._restrict(m)

    def window_checks(self, m: int) -> List[ClaimResult]:
        s = self.window_structure(m)
        results = []
        odd_saturated = all(
            check_set(s, SetProperty(ALPHA_SATURATED, alpha), gamma).holds
            for gamma in range(1 << m)
            if popcount(gamma) % 2 == 1 and gamma != s.full
            for alpha in range(m)
        )
        results.append(
            ClaimResult("window-odd-alpha-saturated", "odd proper Γ ⊊ W are α-saturated", True, odd_saturated, EXHAUSTIVE)
        )
        nontrivial = all(
            check_set(s, SetProperty(NONTRIVIAL), gamma).holds == (popcount(gamma) % 2 == 1)
            for gamma in range(1 << m)
        )
        results.append(
            ClaimResult("window-nontrivial-iff-odd", "Γ ⊆ W is nontrivial iff |Γ| is odd", True, nontrivial, EXHAUSTIVE)
        )
        return results
