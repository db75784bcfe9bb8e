"""Bitset-backed subsets of a ring's element universe ``0..n-1``."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator


@dataclass(frozen=True)
class SubsetMask:
    """Immutable subset of ``range(n)`` stored as an integer bitmask.

    Bit ``i`` of ``bits`` is set iff element ``i`` is a member. Python's
    unbounded ints keep membership O(1) and set algebra word-parallel.
    """

    n: int
    bits: int = 0

    def __post_init__(self) -> None:
        if self.bits < 0 or self.bits >> self.n:
            raise ValueError(f"mask {self.bits:#x} has members outside range({self.n})")

    @classmethod
    def of(cls, n: int, elements: Iterable[int]) -> "SubsetMask":
        bits = 0
        for x in elements:
            if not 0 <= x < n:
                raise ValueError(f"element {x} outside range({n})")
            bits |= 1 << x
        return cls(n, bits)

    @classmethod
    def empty(cls, n: int) -> "SubsetMask":
        return cls(n, 0)

    @classmethod
    def full(cls, n: int) -> "SubsetMask":
        return cls(n, (1 << n) - 1)

    @classmethod
    def singleton(cls, n: int, x: int) -> "SubsetMask":
        return cls.of(n, (x,))

    def __contains__(self, x: object) -> bool:
        return isinstance(x, int) and 0 <= x < self.n and bool(self.bits >> x & 1)

    def __iter__(self) -> Iterator[int]:
        bits = self.bits
        while bits:
            low = bits & -bits
            yield low.bit_length() - 1
            bits ^= low

    def __len__(self) -> int:
        return self.bits.bit_count()

    def __bool__(self) -> bool:
        return self.bits != 0

    def _check(self, other: "SubsetMask") -> None:
        if self.n != other.n:
            raise ValueError(f"universe mismatch: {self.n} vs {other.n}")

    def __and__(self, other: "SubsetMask") -> "SubsetMask":
        self._check(other)
        return SubsetMask(self.n, self.bits & other.bits)

    def __or__(self, other: "SubsetMask") -> "SubsetMask":
        self._check(other)
        return SubsetMask(self.n, self.bits | other.bits)

    def __sub__(self, other: "SubsetMask") -> "SubsetMask":
        self._check(other)
        return SubsetMask(self.n, self.bits & ~other.bits)

    def __xor__(self, other: "SubsetMask") -> "SubsetMask":
        self._check(other)
        return SubsetMask(self.n, self.bits ^ other.bits)

    def complement(self) -> "SubsetMask":
        return SubsetMask(self.n, ((1 << self.n) - 1) & ~self.bits)

    __invert__ = complement

    def __le__(self, other: "SubsetMask") -> bool:
        self._check(other)
        return self.bits & ~other.bits == 0

    def __ge__(self, other: "SubsetMask") -> bool:
        return other <= self

    def __lt__(self, other: "SubsetMask") -> bool:
        return self <= other and self.bits != other.bits

    def __gt__(self, other: "SubsetMask") -> bool:
        return other < self

    def isdisjoint(self, other: "SubsetMask") -> bool:
        self._check(other)
        return self.bits & other.bits == 0

    def is_full(self) -> bool:
        return self.bits == (1 << self.n) - 1

    def with_element(self, x: int) -> "SubsetMask":
        return SubsetMask(self.n, self.bits | 1 << x)

    def without(self, x: int) -> "SubsetMask":
        return SubsetMask(self.n, self.bits & ~(1 << x))

    def to_list(self) -> list[int]:
        return list(self)

    def sort_key(self) -> tuple[int, tuple[int, ...]]:
        """Canonical order: cardinality first, then sorted members."""
        return (len(self), tuple(self))

    def __str__(self) -> str:
        return "{" + ",".join(map(str, self)) + "}"

    def __repr__(self) -> str:
        return f"SubsetMask(n={self.n}, {self})"
