"""Prime-multiples structure on ℤ⁺: sets inside some pℤ⁺ are closed under the prime families containing them"""

import logging
import math
from functools import reduce
from typing import List

from app.gallery import BaseGalleryItem
from app.gallery.claims import CASE_ANALYSIS, EXHAUSTIVE, Claim
from app.gallery.symbolic import (
    POSITIVE_INTEGERS,
    Augmented,
    Cofinite,
    FiniteExplicit,
    FullCarrier,
    MultiplesOf,
    SymbolicSet,
    prime_factors,
)

logger = logging.getLogger(__name__)

PRIMES = (2, 3, 5, 7)

GRID: List[SymbolicSet] = [
    FiniteExplicit(),
    FiniteExplicit((1,)),
    FiniteExplicit((2,)),
    FiniteExplicit((2, 4)),
    FiniteExplicit((3, 9)),
    FiniteExplicit((2, 3)),
    FiniteExplicit((6, 10)),
    MultiplesOf(2),
    MultiplesOf(3),
    MultiplesOf(6),
    Cofinite(MultiplesOf(2), FiniteExplicit((4,))),
    Augmented(MultiplesOf(2), FiniteExplicit((3,))),
    FullCarrier(),
]


def containing_primes(gamma: SymbolicSet) -> List[int]:
    """Primes p with Γ ⊆ pℤ⁺ for a nonempty Γ"""
    if POSITIVE_INTEGERS.is_finite(gamma):
        g = reduce(math.gcd, POSITIVE_INTEGERS.elements(gamma), 0)
        return prime_factors(g) if g > 1 else []
    # an infinite Γ ⊆ qℤ⁺ needs q to divide the period of its pattern
    candidates = prime_factors(POSITIVE_INTEGERS.modulus_of(gamma))
    return [q for q in candidates if POSITIVE_INTEGERS.is_subset(gamma, MultiplesOf(q))]


class PrimeMultiplesItem(BaseGalleryItem):
    """
    TL-3 without TL-2

    C(Γ) = Γ for a finite Γ inside some pℤ⁺, the intersection of all pℤ⁺ ⊇ Γ
    for an infinite such Γ, and ℤ⁺ otherwise.
    """

    item_id = "G8-prime-multiples"
    title = "C(Γ) = Γ or ⋂{pℤ⁺ : Γ ⊆ pℤ⁺} when Γ ⊆ pℤ⁺ for some prime p, ℤ⁺ otherwise"
    carrier = POSITIVE_INTEGERS

    def consequences(self, gamma: SymbolicSet) -> SymbolicSet:
        finite = POSITIVE_INTEGERS.is_finite(gamma)
        if finite and not POSITIVE_INTEGERS.elements(gamma):
            return FiniteExplicit()
        primes = containing_primes(gamma)
        if not primes:
            return FullCarrier()
        if finite:
            return FiniteExplicit(tuple(POSITIVE_INTEGERS.elements(gamma)))
        return MultiplesOf(math.prod(primes))

    def tarski_on_grid(self) -> bool:
        for gamma in GRID:
            closure = self.consequences(gamma)
            for sigma in GRID:
                if POSITIVE_INTEGERS.is_subset(sigma, closure) != POSITIVE_INTEGERS.is_subset(
                    self.consequences(sigma), closure
                ):
                    return False
        return True

    def multiples_closed(self) -> bool:
        return all(self.closed(MultiplesOf(p)) for p in PRIMES)

    def outside_points(self, p: int) -> List[int]:
        """Representatives of x ∉ pℤ⁺: 1, residues just above p and 2p, and another prime"""
        other = next(q for q in PRIMES + (11,) if q != p)
        return [1, p + 1, 2 * p + 1, other]

    def prime_multiples_maximal(self, p: int) -> bool:
        """pℤ⁺ is nontrivial, and adding any x ∉ pℤ⁺ makes it trivial"""
        multiples = MultiplesOf(p)
        if not self.nontrivial(multiples):
            return False
        return all(not self.nontrivial(POSITIVE_INTEGERS.add(multiples, [x])) for x in self.outside_points(p))

    def maximal_nontrivial_extensions(self) -> bool:
        """Every nontrivial Γ sits inside some pℤ⁺, which is maximal nontrivial"""
        for gamma in GRID:
            if not self.nontrivial(gamma):
                continue
            primes = containing_primes(gamma) or [2]
            if not any(
                POSITIVE_INTEGERS.is_subset(gamma, MultiplesOf(p)) and self.prime_multiples_maximal(p) for p in primes
            ):
                return False
        return True

    def no_four_saturated_extension(self) -> bool:
        """
        {2} ⊬ 4 but no 4-saturated Δ contains {2}

        A nontrivial Δ ⊇ {2} lies in 2ℤ⁺. A finite one stays ⊬ 4 after adding
        a fresh even number other than 4; an infinite one is 2ℤ⁺ up to finite
        changes and derives 4.
        """
        two = FiniteExplicit((2,))
        if self.derives(two, 4):
            return False
        finite = [two, FiniteExplicit((2, 6)), FiniteExplicit((2, 6, 10)), FiniteExplicit((2, 8))]
        for delta in finite:
            even = next(x for x in range(6, 1000, 2) if not POSITIVE_INTEGERS.contains(delta, x))
            if self.derives(delta, 4) or self.derives(POSITIVE_INTEGERS.add(delta, [even]), 4):
                return False
        infinite = [
            MultiplesOf(2),
            Cofinite(MultiplesOf(2), FiniteExplicit((4,))),
            Cofinite(MultiplesOf(2), FiniteExplicit((4, 8))),
        ]
        return all(self.derives(delta, 4) for delta in infinite)

    def claims(self) -> List[Claim]:
        return [
            Claim(
                "two-is-closed",
                "C({2}) = {2}",
                True,
                EXHAUSTIVE,
                lambda: self.closed(FiniteExplicit((2,))),
            ),
            Claim(
                "multiples-closed",
                "C(pℤ⁺) = pℤ⁺ for p in 2, 3, 5, 7",
                True,
                CASE_ANALYSIS,
                self.multiples_closed,
            ),
            Claim(
                "tarski",
                "Σ ⊆ C(Γ) iff C(Σ) ⊆ C(Γ) on the descriptor grid",
                True,
                CASE_ANALYSIS,
                self.tarski_on_grid,
            ),
            Claim(
                "prime-multiples-maximal-nontrivial",
                "pℤ⁺ is maximal nontrivial for p in 2, 3, 5, 7",
                True,
                CASE_ANALYSIS,
                lambda: all(self.prime_multiples_maximal(p) for p in PRIMES),
            ),
            Claim(
                "two-not-in-four-saturated",
                "{2} ⊬ 4 and {2} is not contained in a 4-saturated set",
                True,
                CASE_ANALYSIS,
                self.no_four_saturated_extension,
            ),
            Claim(
                "lindIII",
                "every nontrivial Γ extends to a maximal nontrivial pℤ⁺",
                True,
                CASE_ANALYSIS,
                self.maximal_nontrivial_extensions,
            ),
            Claim(
                "lindI",
                "maximal nontrivial sets are saturated, so every nontrivial Γ has a saturated extension",
                True,
                CASE_ANALYSIS,
                self.maximal_nontrivial_extensions,
            ),
            Claim(
                "lindII",
                "{2} ⊬ 4 but {2} is contained in no 4-saturated set",
                False,
                CASE_ANALYSIS,
                lambda: not self.no_four_saturated_extension(),
            ),
            Claim(
                "lindIV",
                "{2} ⊬ 4 but {2} is contained in no set relatively maximal in 4",
                False,
                CASE_ANALYSIS,
                lambda: not self.no_four_saturated_extension(),
            ),
        ]
