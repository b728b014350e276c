"""Ordinals below ω·2"""

from dataclasses import dataclass

from app.errors import DescriptorError


@dataclass(frozen=True, order=True)
class OrdinalBelowOmega2:
    """
    The ordinal ω·limit_part + finite_part

    Field order makes dataclass ordering the ordinal order. As von Neumann
    ordinals, α ∈ β iff α < β.
    """

    limit_part: int
    finite_part: int

    def __post_init__(self):
        if self.limit_part not in (0, 1):
            raise DescriptorError(f"Ordinal must be below ω·2, got limit part {self.limit_part}")
        if self.finite_part < 0:
            raise DescriptorError(f"Finite part must be nonnegative, got {self.finite_part}")

    @classmethod
    def finite(cls, n: int) -> "OrdinalBelowOmega2":
        return cls(0, n)

    @classmethod
    def omega_plus(cls, n: int = 0) -> "OrdinalBelowOmega2":
        return cls(1, n)

    @property
    def is_finite(self) -> bool:
        return self.limit_part == 0

    @property
    def is_limit(self) -> bool:
        return self.finite_part == 0 and self.limit_part == 1

    def successor(self) -> "OrdinalBelowOmega2":
        return OrdinalBelowOmega2(self.limit_part, self.finite_part + 1)

    def plus(self, k: int) -> "OrdinalBelowOmega2":
        return OrdinalBelowOmega2(self.limit_part, self.finite_part + k)

    def contains(self, other: "OrdinalBelowOmega2") -> bool:
        return other < self

    def __str__(self) -> str:
        if self.limit_part == 0:
            return str(self.finite_part)
        if self.finite_part == 0:
            return "ω"
        return f"ω+{self.finite_part}"


ZERO = OrdinalBelowOmega2(0, 0)
OMEGA = OrdinalBelowOmega2(1, 0)


def parse_ordinal(text: str) -> OrdinalBelowOmega2:
    """
    Parse '7', 'w', 'ω', 'w+3' or 'ω+3'

    Raises:
        DescriptorError: If the text is not an ordinal below ω·2
    """
    text = text.strip().replace("ω", "w")
    if text.isdigit():
        return OrdinalBelowOmega2.finite(int(text))
    if text == "w":
        return OMEGA
    if text.startswith("w+") and text[2:].isdigit():
        return OrdinalBelowOmega2.omega_plus(int(text[2:]))
    raise DescriptorError(f"Not an ordinal below ω·2: '{text}'")
