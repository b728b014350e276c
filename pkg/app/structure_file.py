"""Text formats for structures (.ls) and arrow connectives (.arrow)

A structure file:

    # comments and blank lines are ignored
    structure g5
    elements 3
    mode table
    map {} -> {0 1 2}
    map {0} -> {0 1}
    default full

or, in rule mode, ``rule identity`` in place of the map lines. An arrow file:

    arrow imp
    elements 2
    op 0 1 -> 1
    default second-projection
"""

import logging
import re
from dataclasses import dataclass, field
from typing import List, Optional, Tuple, Union

from app.core import MAX_CARRIER, RULES, ArrowTable, LogicalStructure, from_rule, from_table
from app.errors import BudgetExceededError, StructureParseError
from app.utils.conversions import to_bits
from app.utils.formatting import format_subset

logger = logging.getLogger(__name__)

MODE_TABLE = "table"
MODE_RULE = "rule"

NAME_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_.-]*$")
SUBSET_RE = r"\{([^{}]*)\}"
MAP_RE = re.compile(rf"map\s*{SUBSET_RE}\s*->\s*{SUBSET_RE}\s*$")
OP_RE = re.compile(r"op\s+(\S+)\s+(\S+)\s*->\s*(\S+)\s*$")

ARROW_DEFAULTS = ("first-projection", "second-projection", "constant")

Default = Union[str, int]


@dataclass(frozen=True)
class StructureFile:
    """
    Parsed contents of a .ls file

    entries keep file order; default is "identity", "full" or a subset bit pattern.
    """

    name: str
    n: int
    mode: str = MODE_TABLE
    entries: Tuple[Tuple[int, int], ...] = field(default_factory=tuple)
    default: Default = "full"
    rule: Optional[str] = None

    def to_structure(self) -> LogicalStructure:
        """
        Raises:
            EmptyRelationError: If the described relation is empty
        """
        if self.mode == MODE_RULE:
            return from_rule(self.n, self.rule)
        return from_table(self.n, dict(self.entries), self.default)

    def serialize(self) -> str:
        lines = [f"structure {self.name}", f"elements {self.n}", f"mode {self.mode}"]
        if self.mode == MODE_RULE:
            lines.append(f"rule {self.rule}")
        else:
            for gamma, value in self.entries:
                lines.append(f"map {format_subset(gamma)} -> {format_subset(value)}")
            default = format_subset(self.default) if isinstance(self.default, int) else self.default
            lines.append(f"default {default}")
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class ArrowFile:
    name: str
    n: int
    ops: Tuple[Tuple[int, int, int], ...] = field(default_factory=tuple)
    default: Optional[str] = None
    constant: Optional[int] = None

    def to_arrow(self) -> ArrowTable:
        given = {(a, b): c for a, b, c in self.ops}
        if self.default == "first-projection":
            base = ArrowTable.first_projection(self.n)
        elif self.default == "second-projection":
            base = ArrowTable.second_projection(self.n)
        elif self.default == "constant":
            base = ArrowTable.constant(self.n, self.constant)
        else:
            base = None
        return ArrowTable.from_function(
            self.n, lambda a, b: given[(a, b)] if (a, b) in given else base.apply(a, b), self.name
        )

    def serialize(self) -> str:
        lines = [f"arrow {self.name}", f"elements {self.n}"]
        lines += [f"op {a} {b} -> {c}" for a, b, c in self.ops]
        if self.default == "constant":
            lines.append(f"default constant {self.constant}")
        elif self.default is not None:
            lines.append(f"default {self.default}")
        return "\n".join(lines) + "\n"


class _Lines:
    """Significant lines with their numbers, comments stripped"""

    def __init__(self, text: str, source: Optional[str]):
        self.source = source
        self.items: List[Tuple[int, str, int]] = []
        for number, raw in enumerate(text.splitlines(), start=1):
            line = raw.split("#", 1)[0].rstrip()
            stripped = line.lstrip()
            if stripped:
                self.items.append((number, stripped, len(line) - len(stripped) + 1))

    def error(self, message: str, line: int, column: int = 1) -> StructureParseError:
        return StructureParseError(message, line, column, self.source)


def _keyword(text: str) -> Tuple[str, str]:
    keyword, _, rest = text.partition(" ")
    return keyword, rest.strip()


def _parse_carrier(lines: _Lines, value: str, number: int, column: int) -> int:
    if not value.isdigit():
        raise lines.error(f"Expected a carrier size, got '{value}'", number, column)
    n = int(value)
    if n < 1:
        raise lines.error("Carrier size must be at least 1", number, column)
    if n > MAX_CARRIER:
        raise BudgetExceededError("storage", n, MAX_CARRIER)
    return n


def _parse_elements(lines: _Lines, body: str, n: int, number: int, column: int) -> int:
    """Elements of a brace body; column is where the body starts"""
    elements = []
    for token in re.finditer(r"[^\s,]+", body):
        at = column + token.start()
        if not token.group().isdigit():
            raise lines.error(f"Invalid element '{token.group()}'", number, at)
        element = int(token.group())
        if element >= n:
            raise lines.error(f"Element {element} is outside the carrier of size {n}", number, at)
        elements.append(element)
    return to_bits(elements)


def _header(lines: _Lines, seen: dict, keyword: str, number: int, column: int) -> None:
    if keyword in seen:
        raise lines.error(f"Duplicate '{keyword}' line (first on line {seen[keyword]})", number, column)
    seen[keyword] = number


def parse_structure_file(text: str, source: Optional[str] = None) -> StructureFile:
    """
    Parse the .ls structure format

    Args:
        text: File contents
        source: File name for error messages

    Returns:
        StructureFile; call to_structure() for the LogicalStructure

    Raises:
        StructureParseError: On syntax errors, with line and column
        BudgetExceededError: If the carrier is above the storage cap
    """
    lines = _Lines(text, source)
    seen: dict = {}
    name = None
    n = None
    mode = MODE_TABLE
    rule = None
    default: Default = "full"
    entries: List[Tuple[int, int]] = []
    mapped = {}

    for number, line, column in lines.items:
        keyword, value = _keyword(line)
        value_column = column + line.find(value) if value else column + len(keyword) + 1
        if keyword == "structure":
            _header(lines, seen, keyword, number, column)
            if not NAME_RE.match(value):
                raise lines.error(f"Invalid structure name '{value}'", number, value_column)
            name = value
        elif keyword == "elements":
            _header(lines, seen, keyword, number, column)
            n = _parse_carrier(lines, value, number, value_column)
        elif keyword == "mode":
            _header(lines, seen, keyword, number, column)
            if value not in (MODE_TABLE, MODE_RULE):
                raise lines.error(f"Unknown mode '{value}' (expected table or rule)", number, value_column)
            mode = value
        elif keyword == "rule":
            _header(lines, seen, keyword, number, column)
            if value not in RULES or value == "finite-table":
                raise lines.error(f"Unknown rule '{value}'", number, value_column)
            rule = value
        elif keyword == "default":
            _header(lines, seen, keyword, number, column)
            if value in ("identity", "full"):
                default = value
            elif value.startswith("{") and value.endswith("}"):
                if n is None:
                    raise lines.error("'elements' must come before a subset default", number, column)
                default = _parse_elements(lines, value[1:-1], n, number, value_column + 1)
            else:
                raise lines.error(f"Invalid default '{value}'", number, value_column)
        elif keyword.startswith("map"):
            if n is None:
                raise lines.error("'elements' must come before map lines", number, column)
            match = MAP_RE.match(line)
            if not match:
                raise lines.error("Expected 'map {...} -> {...}'", number, column)
            gamma = _parse_elements(lines, match.group(1), n, number, column + match.start(1))
            value_bits = _parse_elements(lines, match.group(2), n, number, column + match.start(2))
            if gamma in mapped:
                raise lines.error(
                    f"Duplicate map for {format_subset(gamma)} (first on line {mapped[gamma]})", number, column
                )
            mapped[gamma] = number
            entries.append((gamma, value_bits))
        else:
            raise lines.error(f"Unknown directive '{keyword}'", number, column)

    last = lines.items[-1][0] if lines.items else 1
    if name is None:
        raise lines.error("Missing 'structure' line", last)
    if n is None:
        raise lines.error("Missing 'elements' line", last)
    if mode == MODE_RULE:
        if rule is None:
            raise lines.error("Rule mode requires a 'rule' line", last)
        if entries or "default" in seen:
            raise lines.error("Rule mode does not take map or default lines", seen.get("default") or min(mapped.values()))
    elif rule is not None:
        raise lines.error("A 'rule' line requires 'mode rule'", seen["rule"])

    logger.debug(f"Parsed structure '{name}' (n={n}, mode={mode}, {len(entries)} map line(s))")
    return StructureFile(name, n, mode, tuple(entries), default, rule)


def parse_arrow_file(text: str, source: Optional[str] = None) -> ArrowFile:
    """
    Parse the .arrow connective format

    Without a default line every pair (a, b) must have an op line.

    Raises:
        StructureParseError: On syntax errors, with line and column
    """
    lines = _Lines(text, source)
    seen: dict = {}
    name = None
    n = None
    default = None
    constant = None
    ops: List[Tuple[int, int, int]] = []
    given = {}

    def element(token: str, number: int, at: int) -> int:
        if not token.isdigit() or int(token) >= n:
            raise lines.error(f"Invalid element '{token}' for a carrier of size {n}", number, at)
        return int(token)

    for number, line, column in lines.items:
        keyword, value = _keyword(line)
        value_column = column + line.find(value) if value else column + len(keyword) + 1
        if keyword == "arrow":
            _header(lines, seen, keyword, number, column)
            if not NAME_RE.match(value):
                raise lines.error(f"Invalid arrow name '{value}'", number, value_column)
            name = value
        elif keyword == "elements":
            _header(lines, seen, keyword, number, column)
            n = _parse_carrier(lines, value, number, value_column)
        elif keyword == "op":
            if n is None:
                raise lines.error("'elements' must come before op lines", number, column)
            match = OP_RE.match(line)
            if not match:
                raise lines.error("Expected 'op a b -> c'", number, column)
            a, b, c = (element(match.group(i), number, column + match.start(i)) for i in (1, 2, 3))
            if (a, b) in given:
                raise lines.error(f"Duplicate op for ({a}, {b}) (first on line {given[(a, b)]})", number, column)
            given[(a, b)] = number
            ops.append((a, b, c))
        elif keyword == "default":
            _header(lines, seen, keyword, number, column)
            kind, _, arg = value.partition(" ")
            if kind not in ARROW_DEFAULTS:
                raise lines.error(f"Invalid arrow default '{value}'", number, value_column)
            if kind == "constant":
                if n is None:
                    raise lines.error("'elements' must come before a constant default", number, column)
                constant = element(arg.strip(), number, value_column + len(kind) + 1)
            default = kind
        else:
            raise lines.error(f"Unknown directive '{keyword}'", number, column)

    last = lines.items[-1][0] if lines.items else 1
    if name is None:
        raise lines.error("Missing 'arrow' line", last)
    if n is None:
        raise lines.error("Missing 'elements' line", last)
    if default is None and len(given) != n * n:
        raise lines.error(f"Arrow is not total: {n * n - len(given)} pair(s) without an op line or default", last)
    return ArrowFile(name, n, tuple(ops), default, constant)


def load_structure(path: str) -> Tuple[StructureFile, LogicalStructure]:
    """
    Read a .ls file and build its structure

    Raises:
        FileNotFoundError: If the file doesn't exist
        StructureParseError: On syntax errors
        EmptyRelationError: If the relation is empty
    """
    with open(path, "r", encoding="utf-8") as f:
        parsed = parse_structure_file(f.read(), source=path)
    return parsed, parsed.to_structure()


def load_arrow(path: str) -> ArrowTable:
    with open(path, "r", encoding="utf-8") as f:
        return parse_arrow_file(f.read(), source=path).to_arrow()

