"""Utility functions for rendering subsets, verdicts and timestamps"""

import pytz
from datetime import datetime, timezone
from typing import Any, Dict, Iterable

from app.utils.conversions import from_bits


def format_subset(bits: int) -> str:
    """
    Format a subset bit pattern in the structure-file brace syntax

    Args:
        bits: Subset bit pattern

    Returns:
        Brace string (e.g. "{0 1}", "{}" for the empty set)
    """
    return "{" + " ".join(str(e) for e in from_bits(bits)) + "}"


def format_elements(elements: Iterable[Any]) -> str:
    """Format an already-decoded collection of elements with braces"""
    return "{" + " ".join(str(e) for e in elements) + "}"


def format_verdict(value: bool) -> str:
    """Render a boolean verdict for text reports"""
    return "yes" if value else "no"


def format_witness(witness: Dict[str, Any]) -> str:
    """
    Format a witness mapping on one line

    Args:
        witness: Mapping of witness component names to values; list values are subsets

    Returns:
        String such as "gamma={0} alpha=2"
    """
    parts = []
    for key, value in witness.items():
        if isinstance(value, (list, tuple)):
            parts.append(f"{key}={format_elements(value)}")
        else:
            parts.append(f"{key}={value}")
    return " ".join(parts)


def format_timestamp(timestamp: datetime, tz_name: str = "UTC") -> str:
    """
    Format a timestamp as ISO-8601 in the configured timezone

    Args:
        timestamp: datetime object (assumed UTC if no timezone)
        tz_name: Timezone name (e.g., 'Europe/Berlin')

    Returns:
        ISO-8601 string with offset
    """
    if timestamp.tzinfo is None:
        timestamp = timestamp.replace(tzinfo=timezone.utc)

    local_tz = pytz.timezone(tz_name)
    return timestamp.astimezone(local_tz).isoformat(timespec="seconds")
