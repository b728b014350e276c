"""Ordinal structures on ω+ω: C(Γ) is the least ordinal containing Γ, optionally patched at ω"""

import logging
from typing import List

from app.errors import NoContainingOrdinalError
from app.gallery import BaseGalleryItem
from app.gallery.claims import CASE_ANALYSIS, EXHAUSTIVE, Claim
from app.gallery.ordinal import OMEGA, OrdinalBelowOmega2
from app.gallery.symbolic import (
    OMEGA_TWO,
    Downset,
    FiniteExplicit,
    FiniteUnionDownset,
    FullCarrier,
    SymbolicSet,
    ord_least_containing,
)

logger = logging.getLogger(__name__)


def fin(n: int) -> OrdinalBelowOmega2:
    return OrdinalBelowOmega2.finite(n)


def omega_plus(n: int) -> OrdinalBelowOmega2:
    return OrdinalBelowOmega2.omega_plus(n)


DESCRIPTOR_GRID: List[SymbolicSet] = [
    FiniteExplicit(),
    Downset(fin(1)),
    Downset(fin(3)),
    FiniteExplicit((fin(2), fin(5))),
    Downset(OMEGA),
    Downset(omega_plus(1)),
    Downset(omega_plus(3)),
    FiniteExplicit((fin(3), omega_plus(1))),
    FiniteUnionDownset(Downset(fin(3)), FiniteExplicit((fin(5), omega_plus(2)))),
    FiniteUnionDownset(Downset(OMEGA), FiniteExplicit((omega_plus(3),))),
]

ALPHA_SAMPLES = [fin(0), fin(1), fin(2), fin(5), OMEGA, omega_plus(1), omega_plus(3)]


def beyond(alpha: OrdinalBelowOmega2) -> List[OrdinalBelowOmega2]:
    """Representatives of δ ∉ α: δ = α, a successor of α, and ω+n when α is finite"""
    reps = [alpha, alpha.plus(1), alpha.plus(5)]
    if alpha.is_finite:
        reps += [OMEGA, omega_plus(2)]
    return reps


class OmegaItem(BaseGalleryItem):
    """C(Γ) = ⋂{β ∈ ω+ω : Γ ⊆ β}, with C(Γ) = ω+1 in place of ω when patched"""

    carrier = OMEGA_TWO
    patched = False

    def consequences(self, gamma: SymbolicSet) -> SymbolicSet:
        least = ord_least_containing(gamma)
        if self.patched and least == OMEGA:
            return Downset(omega_plus(1))
        return Downset(least)

    def closure_bound(self, gamma: SymbolicSet) -> OrdinalBelowOmega2:
        return OMEGA_TWO.form(self.consequences(gamma)).bound

    def consequence_is(self, gamma: SymbolicSet, expected: OrdinalBelowOmega2) -> bool:
        return OMEGA_TWO.equals(self.consequences(gamma), Downset(expected))

    def tarski_on_grid(self) -> bool:
        """Reflexive, monotone and transitive over every pair of grid descriptors"""
        c = {i: self.consequences(g) for i, g in enumerate(DESCRIPTOR_GRID)}
        for i, gamma in enumerate(DESCRIPTOR_GRID):
            if not OMEGA_TWO.is_subset(gamma, c[i]):
                return False
            for j, sigma in enumerate(DESCRIPTOR_GRID):
                if OMEGA_TWO.is_subset(gamma, sigma) and not OMEGA_TWO.is_subset(c[i], c[j]):
                    return False
                if OMEGA_TWO.is_subset(sigma, c[i]) and not OMEGA_TWO.is_subset(c[j], c[i]):
                    return False
        return True

    def ordinal_self_saturated(self, alpha: OrdinalBelowOmega2) -> bool:
        """α ⊬ α and α ∪ {δ} ⊢ α for every δ ∉ α, split into δ finite and δ = ω+n"""
        base = Downset(alpha)
        if self.derives(base, alpha):
            return False
        return all(self.derives(OMEGA_TWO.add(base, [delta]), alpha) for delta in beyond(alpha))

    def ordinal_relatively_maximal(self, alpha: OrdinalBelowOmega2) -> bool:
        base = Downset(alpha)
        if self.derives(base, alpha):
            return False
        reps = beyond(alpha)
        supersets = [OMEGA_TWO.add(base, [d]) for d in reps]
        supersets += [OMEGA_TWO.add(base, reps[i : i + 2]) for i in range(len(reps) - 1)]
        supersets += [Downset(d.successor()) for d in reps]
        return all(self.derives(sigma, alpha) for sigma in supersets)

    def saturated_extensions(self) -> bool:
        """Every Γ lies inside the ordinal C(Γ), which is saturated in itself"""
        for gamma in DESCRIPTOR_GRID:
            bound = self.closure_bound(gamma)
            if not OMEGA_TWO.is_subset(gamma, Downset(bound)) or not self.ordinal_self_saturated(bound):
                return False
        return True

    def every_set_grows(self) -> bool:
        """Every Σ is nontrivial and has a proper superset, so none is maximal nontrivial"""
        for sigma in DESCRIPTOR_GRID:
            if not self.nontrivial(sigma):
                return False
            bigger = OMEGA_TWO.add(sigma, OMEGA_TWO.fresh(sigma, 1))
            if OMEGA_TWO.equals(bigger, sigma) or not self.nontrivial(bigger):
                return False
        return True

    def cofinal_rejected(self) -> bool:
        try:
            self.consequences(FullCarrier())
        except NoContainingOrdinalError:
            return True
        return False

    def _common_claims(self) -> List[Claim]:
        return [
            Claim("one-is-closed", "C(1) = 1", True, EXHAUSTIVE, lambda: self.consequence_is(Downset(fin(1)), fin(1))),
            Claim(
                "least-containing-example",
                "C({3, ω+1}) = ω+2",
                True,
                EXHAUSTIVE,
                lambda: self.consequence_is(FiniteExplicit((fin(3), omega_plus(1))), omega_plus(2)),
            ),
            Claim(
                "tarski",
                "⊢ is reflexive, monotone and transitive on the descriptor grid",
                True,
                CASE_ANALYSIS,
                self.tarski_on_grid,
            ),
            Claim(
                "lindI",
                "every Γ is contained in the ordinal C(Γ), which is saturated",
                True,
                CASE_ANALYSIS,
                self.saturated_extensions,
            ),
            Claim(
                "lindIII",
                "every set is nontrivial, so no set is maximal nontrivial",
                False,
                CASE_ANALYSIS,
                lambda: not self.every_set_grows(),
            ),
            Claim(
                "cofinal-rejected",
                "a cofinal subset of ω+ω has no containing ordinal",
                True,
                EXHAUSTIVE,
                self.cofinal_rejected,
            ),
        ]


class OmegaPatchedItem(OmegaItem):
    """TL-1 but neither TL-2 nor TL-3"""

    item_id = "G6-omega-patched"
    title = "C(Γ) = ⋂{β : Γ ⊆ β} unless that is ω, in which case ω+1"
    patched = True

    def omega_unreachable(self) -> bool:
        """
        1 ⊬ ω, and no Σ ⊇ 1 with Σ ⊬ ω is ω-saturated

        Σ ⊬ ω forces C(Σ) = k finite, so Σ ⊆ k and Σ ∪ {k} ⊬ ω.
        """
        one = Downset(fin(1))
        if self.derives(one, OMEGA):
            return False
        candidates = [Downset(fin(k)) for k in range(1, self.sample_size + 1)]
        candidates += [FiniteExplicit((fin(0), fin(3))), FiniteExplicit((fin(0), fin(2), fin(5)))]
        candidates += [Downset(OMEGA), Downset(omega_plus(2)), FiniteUnionDownset(one, FiniteExplicit((omega_plus(2),)))]
        for sigma in candidates:
            if self.derives(sigma, OMEGA):
                continue
            if not OMEGA_TWO.is_finite(sigma):
                return False
            k = self.closure_bound(sigma)
            if not k.is_finite or self.derives(OMEGA_TWO.add(sigma, [k]), OMEGA):
                return False
        return True

    def claim_star(self) -> bool:
        return all(self.ordinal_self_saturated(alpha) for alpha in ALPHA_SAMPLES if alpha != OMEGA)

    def claims(self) -> List[Claim]:
        return self._common_claims() + [
            Claim(
                "omega-patch",
                "C(ω) = ω+1",
                True,
                EXHAUSTIVE,
                lambda: self.consequence_is(Downset(OMEGA), omega_plus(1)),
            ),
            Claim(
                "one-does-not-derive-omega",
                "1 ⊬ ω",
                True,
                EXHAUSTIVE,
                lambda: not self.derives(Downset(fin(1)), OMEGA),
            ),
            Claim(
                "alpha-is-alpha-saturated",
                "every α ≠ ω is α-saturated (δ ∉ α split into δ finite and δ = ω+n)",
                True,
                CASE_ANALYSIS,
                self.claim_star,
            ),
            Claim(
                "no-omega-saturated-extension-of-one",
                "no ω-saturated Σ contains 1",
                True,
                CASE_ANALYSIS,
                self.omega_unreachable,
            ),
            Claim(
                "lindII",
                "1 ⊬ ω but 1 is contained in no ω-saturated set",
                False,
                CASE_ANALYSIS,
                lambda: not self.omega_unreachable(),
            ),
            Claim(
                "lindIV",
                "1 ⊬ ω but 1 is contained in no set relatively maximal in ω",
                False,
                CASE_ANALYSIS,
                lambda: not self.omega_unreachable(),
            ),
        ]


class OmegaPlainItem(OmegaItem):
    """TL-2 (hence TL-4) but not TL-3"""

    item_id = "G7-omega-plain"
    title = "C(Γ) = ⋂{β : Γ ⊆ β}"
    patched = False

    def extends_to_ordinal(self, relation: str) -> bool:
        """Γ ⊬ α gives Γ ⊆ C(Γ) ⊆ α, and α is α-saturated (or relatively maximal in α)"""
        check = self.ordinal_self_saturated if relation == "saturated" else self.ordinal_relatively_maximal
        for gamma in DESCRIPTOR_GRID:
            for alpha in ALPHA_SAMPLES:
                if self.derives(gamma, alpha):
                    continue
                if not OMEGA_TWO.is_subset(gamma, Downset(alpha)) or not check(alpha):
                    return False
        return True

    def claims(self) -> List[Claim]:
        return self._common_claims() + [
            Claim(
                "omega-closed",
                "C(ω) = ω",
                True,
                EXHAUSTIVE,
                lambda: self.consequence_is(Downset(OMEGA), OMEGA),
            ),
            Claim(
                "alpha-is-alpha-saturated",
                "every α, ω included, is α-saturated",
                True,
                CASE_ANALYSIS,
                lambda: all(self.ordinal_self_saturated(alpha) for alpha in ALPHA_SAMPLES),
            ),
            Claim(
                "lindII",
                "every Γ ⊬ α lies inside the α-saturated set α",
                True,
                CASE_ANALYSIS,
                lambda: self.extends_to_ordinal("saturated"),
            ),
            Claim(
                "lindIV",
                "every Γ ⊬ α lies inside α, which is relatively maximal in α",
                True,
                CASE_ANALYSIS,
                lambda: self.extends_to_ordinal("relmax"),
            ),
        ]
