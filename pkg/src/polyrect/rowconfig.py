"""Row configurations: the nonempty 0/1 occupancy patterns of a single row.

A width-b row is stored as an integer bitmask.  The leftmost cell maps to the
most significant of the low b bits, so the numeric order of masks equals the
numeric order of the binary words.
"""

from __future__ import annotations

from dataclasses import dataclass

MAX_WIDTH = 16


@dataclass(frozen=True, slots=True)
class RowConfig:
    """One nonempty row pattern of a fixed width."""

    width: int
    bits: int

    def __post_init__(self):
        if not 1 <= self.width <= MAX_WIDTH:
            raise ValueError(f"width must be in 1..{MAX_WIDTH}, got {self.width}")
        if not 0 < self.bits < (1 << self.width):
            raise ValueError(
                f"bits must encode a nonempty width-{self.width} row, got {self.bits}"
            )

    @classmethod
    def from_string(cls, text: str) -> RowConfig:
        """Parse a 0/1 string, leftmost character first."""
        if not text or set(text) - {"0", "1"}:
            raise ValueError(f"not a 0/1 row string: {text!r}")
        return cls(len(text), int(text, 2))

    def __str__(self) -> str:
        return format(self.bits, f"0{self.width}b")

    @property
    def cells(self) -> tuple[int, ...]:
        """Cell occupancies left to right."""
        return tuple((self.bits >> (self.width - 1 - i)) & 1 for i in range(self.width))

    def touches_left(self) -> bool:
        return bool((self.bits >> (self.width - 1)) & 1)

    def touches_right(self) -> bool:
        return bool(self.bits & 1)

    def filled_count(self) -> int:
        return self.bits.bit_count()


def enumerate_alphabet(width: int) -> list[RowConfig]:
    """All 2^width - 1 nonempty rows in ascending numeric order."""
    if not 1 <= width <= MAX_WIDTH:
        raise ValueError(f"width must be in 1..{MAX_WIDTH}, got {width}")
    return [RowConfig(width, bits) for bits in range(1, 1 << width)]
