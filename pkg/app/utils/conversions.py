"""Utility functions for subset bit-pattern conversions"""

from typing import Iterable, Iterator, List


def full_mask(n: int) -> int:
    """
    Bit pattern of the whole carrier

    Args:
        n: Carrier size

    Returns:
        Integer with the lowest n bits set
    """
    return (1 << n) - 1


def to_bits(elements: Iterable[int]) -> int:
    """
    Convert element indices to a subset bit pattern

    Args:
        elements: Element indices (duplicates allowed)

    Returns:
        Bit pattern with bit i set for every element i
    """
    bits = 0
    for element in elements:
        if element < 0:
            raise ValueError(f"Element index must be nonnegative, got {element}")
        bits |= 1 << element
    return bits


def from_bits(bits: int) -> List[int]:
    """
    Convert a subset bit pattern to a sorted list of element indices

    Args:
        bits: Subset bit pattern

    Returns:
        Ascending list of element indices
    """
    elements = []
    index = 0
    while bits:
        if bits & 1:
            elements.append(index)
        bits >>= 1
        index += 1
    return elements


def popcount(bits: int) -> int:
    """Number of elements in a subset"""
    return bin(bits).count("1")


def is_subset(a: int, b: int) -> bool:
    """True iff subset a is contained in subset b"""
    return a & ~b == 0


def submasks(mask: int) -> Iterator[int]:
    """
    Iterate all subsets of a mask in ascending bit-pattern order

    Args:
        mask: Subset bit pattern

    Yields:
        Every subset of mask, starting with the empty set
    """
    sub = 0
    while True:
        yield sub
        if sub == mask:
            return
        sub = (sub - mask) & mask


def supermasks(mask: int, n: int) -> Iterator[int]:
    """
    Iterate all supersets of a mask inside the carrier, ascending

    Args:
        mask: Subset bit pattern
        n: Carrier size

    Yields:
        Every superset of mask, starting with mask itself
    """
    free = full_mask(n) & ~mask
    for extra in submasks(free):
        yield mask | extra


def proper_supermasks(mask: int, n: int) -> Iterator[int]:
    """Iterate all strict supersets of a mask inside the carrier, ascending"""
    for superset in supermasks(mask, n):
        if superset != mask:
            yield superset


def parse_subset(text: str, n: int) -> int:
    """
    Parse the command-line subset syntax

    Args:
        text: Comma-separated element indices (e.g. "0,2") or the literal "empty"
        n: Carrier size used to validate indices

    Returns:
        Subset bit pattern

    Raises:
        ValueError: If an index is malformed or outside the carrier
    """
    text = text.strip()
    if text == "empty":
        return 0
    elements = []
    for token in text.split(","):
        token = token.strip()
        if not token.isdigit():
            raise ValueError(f"Invalid element '{token}' in subset '{text}'")
        element = int(token)
        if element >= n:
            raise ValueError(f"Element {element} is outside the carrier of size {n}")
        elements.append(element)
    return to_bits(elements)
