"""Three-element structure: Lindenbaum III and IV without Tarski"""

import logging
from functools import cached_property
from typing import Dict, List

from app.classify import classify
from app.core import LogicalStructure, from_table
from app.gallery import BaseGalleryItem
from app.gallery.claims import EXHAUSTIVE, Claim
from app.gallery.symbolic import FiniteCarrier, FiniteExplicit, SymbolicSet
from app.properties import MAXIMAL_ALPHA_SATURATED, MAXIMAL_NONTRIVIAL, TRIVIAL, SetProperty, check_set
from app.utils.conversions import from_bits, to_bits

logger = logging.getLogger(__name__)

THREE_ELEMENT_ID = "G5-three-elem"

# C(∅) = L, C({0}) = C({0, 1}) = {0, 1}, every other set is trivial
THREE_ELEMENT_TABLE = {0b000: 0b111, 0b001: 0b011, 0b011: 0b011}

EXPECTED_VERDICTS: Dict[str, bool] = {
    "tarski": False,
    "lindI": True,
    "lindII": True,
    "lindIII": True,
    "lindIV": True,
}


def three_element_structure() -> LogicalStructure:
    return from_table(3, THREE_ELEMENT_TABLE, default="full")


class ThreeElementItem(BaseGalleryItem):
    """The only gallery item on a finite carrier; its verdicts come from the general classifier"""

    item_id = THREE_ELEMENT_ID
    title = "C(∅) = L, C({0}) = C({0, 1}) = {0, 1}, L otherwise"
    carrier = FiniteCarrier(3)

    @cached_property
    def structure(self) -> LogicalStructure:
        return three_element_structure()

    @cached_property
    def classification(self) -> Dict[str, bool]:
        return classify(self.structure).verdicts

    def consequences(self, gamma: SymbolicSet) -> SymbolicSet:
        bits = to_bits(self.carrier.elements(gamma))
        return FiniteExplicit(tuple(from_bits(self.structure.consequences(bits))))

    def _verdict(self, key: str):
        return lambda: self.classification[key]

    def claims(self) -> List[Claim]:
        pair = 0b011
        claims = [
            Claim(
                "empty-trivial",
                "C(∅) = L",
                True,
                EXHAUSTIVE,
                lambda: check_set(self.structure, SetProperty(TRIVIAL), 0).holds,
            ),
            Claim(
                "pair-maximal-nontrivial",
                "{0, 1} is maximal nontrivial",
                True,
                EXHAUSTIVE,
                lambda: check_set(self.structure, SetProperty(MAXIMAL_NONTRIVIAL), pair).holds,
            ),
            Claim(
                "pair-maximal-2-saturated",
                "{0, 1} is maximal 2-saturated",
                True,
                EXHAUSTIVE,
                lambda: check_set(self.structure, SetProperty(MAXIMAL_ALPHA_SATURATED, 2), pair).holds,
            ),
            Claim("monotone", "C(∅) ⊄ C({0}), so ⊢ is not monotone", False, EXHAUSTIVE, self._verdict("monotone")),
        ]
        for key, expected in EXPECTED_VERDICTS.items():
            claims.append(Claim(key, f"{key} verdict of the classifier", expected, EXHAUSTIVE, self._verdict(key)))
        return claims
