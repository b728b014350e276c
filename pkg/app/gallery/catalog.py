"""Gallery registry: item lookup, enabled flags and the separation matrix"""

import logging
from typing import Any, Dict, List, Optional, Type

from app.gallery import BaseGalleryItem
from app.gallery.cardinality import CardinalityItem
from app.gallery.claims import ClaimReport
from app.gallery.finite_or_all import FiniteOrAllItem
from app.gallery.lambda0 import Lambda0EmptyFiniteItem, Lambda0Item
from app.gallery.omega import OmegaPatchedItem, OmegaPlainItem
from app.gallery.parity import ParityItem
from app.gallery.prime_multiples import PrimeMultiplesItem
from app.gallery.symbolic import SymbolicSet
from app.gallery.three_element import ThreeElementItem

logger = logging.getLogger(__name__)

GALLERY: Dict[str, Type[BaseGalleryItem]] = {
    cls.item_id: cls
    for cls in (
        ParityItem,
        Lambda0Item,
        CardinalityItem,
        FiniteOrAllItem,
        ThreeElementItem,
        OmegaPatchedItem,
        OmegaPlainItem,
        PrimeMultiplesItem,
        Lambda0EmptyFiniteItem,
    )
}

SEPARATION_CLASSES = ("tarski", "lindI", "lindII", "lindIII", "lindIV", "tl1", "tl2", "tl3", "tl4")


def resolve_item_id(item_id: str) -> str:
    """
    Accept a full id or its short form ("G6" for "G6-omega-patched")

    A short form names the first registered item with that prefix.

    Raises:
        KeyError: If the id is unknown
    """
    if item_id in GALLERY:
        return item_id
    for known in GALLERY:
        if known.lower().startswith(f"{item_id.lower()}-"):
            return known
    raise KeyError(f"Unknown gallery item '{item_id}' (known: {', '.join(GALLERY)})")


def create_item(item_id: str, config: Optional[Dict[str, Any]] = None) -> BaseGalleryItem:
    """
    Instantiate a gallery item by full or short id

    Raises:
        KeyError: If the id is unknown
    """
    return GALLERY[resolve_item_id(item_id)](config)


def initialize_gallery(config: Optional[Dict[str, Any]] = None) -> List[BaseGalleryItem]:
    """
    Instantiate every enabled item

    Items are enabled unless gallery.enabled maps their id to false. An item
    whose construction fails is logged and skipped.
    """
    enabled = (config or {}).get("gallery", {}).get("enabled", {}) or {}
    items = []
    for item_id, cls in GALLERY.items():
        if not enabled.get(item_id, True):
            logger.debug(f"Gallery item {item_id} disabled")
            continue
        try:
            items.append(cls(config))
        except Exception as e:
            logger.error(f"Failed to initialize gallery item {item_id}: {e}")
    return items


def gallery_consequences(item_id: str, gamma: SymbolicSet, config: Optional[Dict[str, Any]] = None) -> SymbolicSet:
    return create_item(item_id, config).consequences(gamma)


def run_claims(item_id: str, config: Optional[Dict[str, Any]] = None) -> ClaimReport:
    return create_item(item_id, config).run_claims()


def separations(reports: Optional[List[ClaimReport]] = None, config: Optional[Dict[str, Any]] = None) -> List[Dict[str, Any]]:
    """
    Non-implications between classes witnessed by the gallery

    An item separates A from B when its claims show A true and B false.

    Args:
        reports: Claim reports to read verdicts from; runs every enabled item when omitted
        config: Application configuration dictionary

    Returns:
        One entry per separated ordered pair, in class order, naming the witnessing items
    """
    if reports is None:
        reports = [item.run_claims() for item in initialize_gallery(config)]
    observed = {report.item_id: report.verdicts() for report in reports}
    matrix = []
    for source in SEPARATION_CLASSES:
        for target in SEPARATION_CLASSES:
            if source == target:
                continue
            witnesses = [
                item_id
                for item_id, verdicts in observed.items()
                if verdicts.get(source) is True and verdicts.get(target) is False
            ]
            if witnesses:
                matrix.append({"holds": source, "fails": target, "witnesses": witnesses})
    logger.debug(f"Separation matrix has {len(matrix)} entries from {len(reports)} item(s)")
    return matrix
