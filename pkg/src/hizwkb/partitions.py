"""Integer partitions: enumeration in reverse-lex order and dominance comparison."""
from __future__ import annotations

from functools import lru_cache
from itertools import accumulate
from typing import Iterable, Sequence


class Partition(tuple):
    """Weakly decreasing tuple of positive integers."""

    def __new__(cls, parts: Iterable[int] = ()):
        parts = tuple(int(p) for p in parts)
        if any(p < 1 for p in parts):
            raise ValueError(f"partition parts must be positive: {parts}")
        if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
            raise ValueError(f"partition parts must be non-increasing: {parts}")
        return super().__new__(cls, parts)

    @property
    def weight(self) -> int:
        return sum(self)

    @property
    def length(self) -> int:
        return len(self)

    def multiplicities(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for p in self:
            out[p] = out.get(p, 0) + 1
        return out

    def conjugate(self) -> Partition:
        if not self:
            return Partition()
        return Partition(sum(1 for p in self if p > i) for i in range(self[0]))

    def label(self) -> str:
        """Compact label such as ``[21^2]``."""
        if not self:
            return "[]"
        out = []
        for part, mult in sorted(self.multiplicities().items(), reverse=True):
            out.append(str(part) if mult == 1 else f"{part}^{mult}")
        return "[" + "".join(out) + "]"

    def to_json(self) -> list[int]:
        return list(self)

    @classmethod
    def from_json(cls, data: Sequence[int]) -> Partition:
        return cls(sorted(data, reverse=True))

    def __repr__(self) -> str:
        return f"Partition({list(self)})"


@lru_cache(maxsize=None)
def _partitions(n: int, largest: int) -> tuple[tuple[int, ...], ...]:
    if n == 0:
        return ((),)
    out = []
    for first in range(min(n, largest), 0, -1):
        for rest in _partitions(n - first, first):
            out.append((first,) + rest)
    return tuple(out)


def enumerate_partitions(n: int) -> list[Partition]:
    """All partitions of ``n``, reverse-lexicographic: ``[n]`` first, ``[1^n]`` last."""
    if n < 0:
        raise ValueError("n must be non-negative")
    return [Partition(p) for p in _partitions(n, n)]


LESS, GREATER, EQUAL, INCOMPARABLE = "less", "greater", "equal", "incomparable"


def dominance_compare(a: Sequence[int], b: Sequence[int]) -> str:
    """Compare two partitions of the same weight in dominance order."""
    if sum(a) != sum(b):
        raise ValueError(f"weight mismatch: {sum(a)} vs {sum(b)}")
    n = max(len(a), len(b))
    sa = list(accumulate(list(a) + [0] * (n - len(a))))
    sb = list(accumulate(list(b) + [0] * (n - len(b))))
    ge = all(x >= y for x, y in zip(sa, sb))
    le = all(x <= y for x, y in zip(sa, sb))
    if ge and le:
        return EQUAL
    if ge:
        return GREATER
    if le:
        return LESS
    return INCOMPARABLE


def dominates(a: Sequence[int], b: Sequence[int]) -> bool:
    """True when ``a >= b`` in dominance order."""
    return dominance_compare(a, b) in (GREATER, EQUAL)
