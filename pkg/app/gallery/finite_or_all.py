"""Finite-or-all structure on ℕ: finite sets are closed, infinite sets are trivial"""

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
from app.properties import TARSKI_BY_DEF, StructureProperty, check_structure

logger = logging.getLogger(__name__)

INFINITE_SAMPLES = (
    MarkedInfinite("evens"),
    MarkedInfinite("odds"),
    Cofinite(FullCarrier(), FiniteExplicit((1,))),
    Augmented(MarkedInfinite("evens"), FiniteExplicit((1, 3))),
    FullCarrier(),
)


class FiniteOrAllItem(BaseGalleryItem):
    """Tarski without Lindenbaum-I"""

    item_id = "G4-finite-or-all"
    title = "C(Γ) = Γ if Γ is finite, L otherwise"
    carrier = NATURALS

    def consequences(self, gamma: SymbolicSet) -> SymbolicSet:
        if NATURALS.is_finite(gamma):
            return gamma
        return FullCarrier()

    def _grid(self) -> List[SymbolicSet]:
        finite = finite_samples(self.sample_size) + [FiniteExplicit((0, 3, 5)), FiniteExplicit((0,))]
        return finite + list(INFINITE_SAMPLES)

    def tarski_on_grid(self) -> bool:
        """Σ ⊆ C(Γ) ⟺ C(Σ) ⊆ C(Γ) for all pairs of representatives"""
        grid = self._grid()
        for gamma in grid:
            closure = self.consequences(gamma)
            for sigma in grid:
                if NATURALS.is_subset(sigma, closure) != NATURALS.is_subset(self.consequences(sigma), closure):
                    return False
        return True

    def finite_sets_closed(self) -> bool:
        return all(self.closed(gamma) for gamma in finite_samples(self.sample_size))

    def no_saturated_sets(self) -> bool:
        """A nontrivial Σ is finite, and Σ ∪ {β} ⊬ α for any fresh β ∉ Σ ∪ {α}"""
        if any(self.nontrivial(sigma) for sigma in INFINITE_SAMPLES):
            return False
        for sigma in finite_samples(self.sample_size):
            for alpha in NATURALS.fresh(sigma, 3):
                beta = NATURALS.fresh(NATURALS.add(sigma, [alpha]), 1)
                if self.derives(sigma, alpha) or self.derives(NATURALS.add(sigma, beta), alpha):
                    return False
        return True

    def claims(self) -> List[Claim]:
        return [
            Claim(
                "tarski",
                "Σ ⊆ C(Γ) iff C(Σ) ⊆ C(Γ), so the structure is of Tarski type",
                True,
                CASE_ANALYSIS,
                self.tarski_on_grid,
            ),
            Claim("finite-sets-closed", "every finite Γ is closed", True, CASE_ANALYSIS, self.finite_sets_closed),
            Claim(
                "lindI",
                "∅ is nontrivial but no saturated set exists",
                False,
                CASE_ANALYSIS,
                lambda: not self.no_saturated_sets(),
            ),
            Claim(
                "lindII",
                "∅ ⊬ 0 but no 0-saturated set exists",
                False,
                CASE_ANALYSIS,
                lambda: not self.no_saturated_sets(),
            ),
            Claim(
                "lindIII",
                "every maximal nontrivial set would be saturated, and none is",
                False,
                CASE_ANALYSIS,
                lambda: not self.no_saturated_sets(),
            ),
            Claim(
                "lindIV",
                "every relatively maximal set would be saturated, and none is",
                False,
                CASE_ANALYSIS,
                lambda: not self.no_saturated_sets(),
            ),
        ]

    def window_structure(self, m: int) -> LogicalStructure:
        return self._restrict(m)

    def window_checks(self, m: int) -> List[ClaimResult]:
        s = self.window_structure(m)
        return [
            ClaimResult(
                "window-tarski",
                "the restriction to W is of Tarski type",
                True,
                check_structure(s, StructureProperty(TARSKI_BY_DEF)).holds,
                EXHAUSTIVE,
            )
        ]
