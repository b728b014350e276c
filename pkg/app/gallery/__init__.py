"""Base interface for the separation examples"""

import logging
from abc import ABC, abstractmethod
from typing import Any, Dict, List, Optional

from app.core import LogicalStructure, from_table
from app.errors import DescriptorError
from app.gallery.claims import Claim, ClaimReport, ClaimResult, run_all
from app.gallery.symbolic import Carrier, FiniteExplicit, SymbolicSet
from app.utils.conversions import from_bits, to_bits

logger = logging.getLogger(__name__)


class BaseGalleryItem(ABC):
    """
    Base class for all gallery items

    Each item is responsible for:
    1. Its consequence rule over symbolic descriptors
    2. The claim script that reproduces its classification argument
    3. Optionally, the finite-window restriction of its rule
    """

    item_id: str = ""
    title: str = ""
    carrier: Carrier

    def __init__(self, config: Optional[Dict[str, Any]] = None):
        """
        Initialize the item

        Args:
            config: Application configuration dictionary
        """
        self.config = config or {}
        self.gallery_config = self.config.get("gallery", {})
        self.sample_size = int(self.gallery_config.get("sample_size", 6))
        self.window = int(self.gallery_config.get("window", 6))
        logger.debug(f"Initialized gallery item: {self.item_id}")

    @abstractmethod
    def consequences(self, gamma: SymbolicSet) -> SymbolicSet:
        """
        Apply the item's consequence rule

        Raises:
            DescriptorError: If gamma is not expressible over the item's carrier
        """
        pass

    @abstractmethod
    def claims(self) -> List[Claim]:
        pass

    def derives(self, gamma: SymbolicSet, alpha: Any) -> bool:
        return self.carrier.contains(self.consequences(gamma), alpha)

    def nontrivial(self, gamma: SymbolicSet) -> bool:
        return not self.carrier.is_full(self.consequences(gamma))

    def closed(self, gamma: SymbolicSet) -> bool:
        return self.carrier.equals(self.consequences(gamma), gamma)

    def has_window(self) -> bool:
        return type(self).window_structure is not BaseGalleryItem.window_structure

    def run_claims(self) -> ClaimReport:
        """Run the claim script, followed by the window checks when the item has a window"""
        window = (lambda: self.window_checks(self.window)) if self.has_window() else None
        return run_all(self.item_id, self.claims(), window)

    def window_structure(self, m: int) -> LogicalStructure:
        """
        The finite structure on {0..m-1} with C_m(Γ) = C(Γ) ∩ {0..m-1}

        Raises:
            DescriptorError: If the item has no window over ℕ
        """
        raise DescriptorError(f"{self.item_id} has no finite-window restriction")

    def _restrict(self, m: int) -> LogicalStructure:
        entries = {
            gamma: to_bits(x for x in range(m) if self.derives(FiniteExplicit(tuple(from_bits(gamma))), x))
            for gamma in range(1 << m)
        }
        return from_table(m, entries, default="full")

    def window_checks(self, m: int) -> List[ClaimResult]:
        """Window-independent predictions checked on the finite restriction"""
        return []

    def describe(self) -> Dict[str, Any]:
        return {
            "id": self.item_id,
            "title": self.title,
            "carrier": self.carrier.name,
            "window": self.has_window(),
            "claims": [
                {"id": c.claim_id, "expected": c.expected, "method": c.method, "statement": c.statement}
                for c in self.claims()
            ],
        }
