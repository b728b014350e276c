"""Exception hierarchy for the logical structures explorer"""

from typing import Optional


class LsxError(ValueError):
    """Base class for every error raised by the app package"""


class WidthMismatchError(LsxError):
    """Subset width, element index or carrier size does not match the structure"""


class UnknownRuleError(LsxError):
    """Rule name is not registered"""


class EmptyRelationError(LsxError):
    """The induced consequence relation (or the bivaluation source) is empty"""


class PreconditionError(LsxError):
    """An operation was invoked on a structure that does not meet its precondition"""


class BudgetExceededError(LsxError):
    """A hard or soft carrier cap was exceeded; the check was not evaluated"""

    def __init__(self, check: str, n: int, cap: int):
        self.check = check
        self.n = n
        self.cap = cap
        super().__init__(
            f"Budget exceeded for '{check}': carrier size {n} is above the cap of {cap} "
            f"(raise it with LSX_BUDGET)"
        )


class StructureParseError(LsxError):
    """Syntax error in a structure or arrow file"""

    def __init__(self, message: str, line: int, column: int = 1, source: Optional[str] = None):
        self.line = line
        self.column = column
        self.source = source
        where = f"{source}:" if source else ""
        super().__init__(f"{where}{line}:{column}: {message}")


class DescriptorError(LsxError):
    """A symbolic set descriptor is not expressible for a gallery carrier"""


class NoContainingOrdinalError(DescriptorError):
    """A cofinal subset of ω+ω has no containing ordinal inside the carrier"""
