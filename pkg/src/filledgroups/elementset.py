"""Fixed-width bitsets over the element indices of one group."""

from __future__ import annotations

from typing import Iterable, Iterator

from .errors import InvalidArgument


def iter_bits(mask: int) -> Iterator[int]:
    """Indices of the set bits of ``mask``, ascending."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class ElementSet:
    """An immutable subset of ``{0, ..., n-1}`` stored as an int mask.

    Two sets only combine when they have the same width ``n``.
    """

    __slots__ = ("n", "bits")

    def __init__(self, n: int, bits: int = 0):
        if bits < 0 or bits >> n:
            raise InvalidArgument(f"mask has bits outside [0, {n})")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "bits", bits)

    def __setattr__(self, name, value):
        raise AttributeError("ElementSet is immutable")

    @classmethod
    def of(cls, n: int, elements: Iterable[int]) -> ElementSet:
        bits = 0
        for e in elements:
            if not 0 <= e < n:
                raise InvalidArgument(f"element index {e} out of range for order {n}")
            bits |= 1 << e
        return cls(n, bits)

    @classmethod
    def full(cls, n: int) -> ElementSet:
        return cls(n, (1 << n) - 1)

    def __iter__(self) -> Iterator[int]:
        return iter_bits(self.bits)

    def __len__(self) -> int:
        return bin(self.bits).count("1")

    def __bool__(self) -> bool:
        return self.bits != 0

    def __contains__(self, i: object) -> bool:
        return isinstance(i, int) and 0 <= i < self.n and bool(self.bits >> i & 1)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, ElementSet):
            return self.n == other.n and self.bits == other.bits
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.n, self.bits))

    def __repr__(self) -> str:
        return f"ElementSet({self.n}, {sorted(self)})"

    def _same(self, other: ElementSet) -> None:
        if not isinstance(other, ElementSet) or other.n != self.n:
            raise InvalidArgument("element sets belong to groups of different orders")

    def __or__(self, other: ElementSet) -> ElementSet:
        self._same(other)
        return ElementSet(self.n, self.bits | other.bits)

    def __and__(self, other: ElementSet) -> ElementSet:
        self._same(other)
        return ElementSet(self.n, self.bits & other.bits)

    def __sub__(self, other: ElementSet) -> ElementSet:
        self._same(other)
        return ElementSet(self.n, self.bits & ~other.bits)

    def __xor__(self, other: ElementSet) -> ElementSet:
        self._same(other)
        return ElementSet(self.n, self.bits ^ other.bits)

    def __le__(self, other: ElementSet) -> bool:
        self._same(other)
        return self.bits & ~other.bits == 0

    def __lt__(self, other: ElementSet) -> bool:
        return self <= other and self.bits != other.bits

    def __ge__(self, other: ElementSet) -> bool:
        return other <= self

    def __gt__(self, other: ElementSet) -> bool:
        return other < self

    def complement(self) -> ElementSet:
        """Complement within the whole group."""
        return ElementSet(self.n, ((1 << self.n) - 1) & ~self.bits)

    def complement_star(self, identity: int) -> ElementSet:
        """Complement within the non-identity elements."""
        return ElementSet(self.n, ((1 << self.n) - 1) & ~self.bits & ~(1 << identity))

    def with_element(self, i: int) -> ElementSet:
        return ElementSet(self.n, self.bits | 1 << i)

    def min(self) -> int:
        if not self.bits:
            raise ValueError("empty set has no minimum")
        return (self.bits & -self.bits).bit_length() - 1

    def max(self) -> int:
        if not self.bits:
            raise ValueError("empty set has no maximum")
        return self.bits.bit_length() - 1

    def to_list(self) -> list[int]:
        return list(self)
