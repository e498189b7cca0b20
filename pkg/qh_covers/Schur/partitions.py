# Compositions, partitions and the orders on them.

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import product
from typing import Iterator, Sequence

from ..Core.exceptions import InvalidInputError
from ..Core.qh_structure import Partition, dominates

__all__ = ["Partition", "PartitionSet", "compositions", "dominates", "format_partition", "longest_chain",
           "partitions"]


def compositions(n: int, d: int) -> list[tuple[int, ...]]:
    """Lambda(n, d): compositions of d into n non-negative parts, lexicographically decreasing."""
    out = [c for c in product(range(d, -1, -1), repeat=n) if sum(c) == d]
    return out


def partitions(d: int, max_parts: int | None = None) -> Iterator[Partition]:
    """Partitions of d with at most ``max_parts`` parts, lexicographically decreasing."""
    def helper(rest: int, largest: int, parts: int) -> Iterator[Partition]:
        if rest == 0:
            yield ()
            return
        if parts == 0:
            return
        for first in range(min(rest, largest), 0, -1):
            for tail in helper(rest - first, first, parts - 1):
                yield (first,) + tail

    yield from helper(d, d, d if max_parts is None else max_parts)


def format_partition(lam: Sequence[int]) -> str:
    """(2, 1) -> "(2,1)"."""
    return "(" + ",".join(str(x) for x in lam if x) + ")"


def pad(lam: Sequence[int], n: int) -> tuple[int, ...]:
    if len(lam) > n:
        raise InvalidInputError(f"{format_partition(lam)} has more than {n} parts")
    return tuple(lam) + (0,) * (n - len(lam))


def longest_chain(labels: Sequence[Partition]) -> int:
    """Number of strict steps in the longest dominance chain inside ``labels``."""
    items = sorted(set(labels), reverse=True)
    best: dict[Partition, int] = {}
    for lam in reversed(items):
        below = [best[mu] for mu in best if mu != lam and dominates(lam, mu)]
        best[lam] = 1 + max(below) if below else 0
    return max(best.values()) if best else 0


@dataclass(frozen=True)
class PartitionSet:
    """Lambda+(n, d) in the fixed total order: dominance refined lexicographically.

    Reverse lexicographic order is a linear extension of dominance, so the
    most dominant partition (d) comes first.
    """

    n: int
    d: int

    def __post_init__(self) -> None:
        if self.n < 1 or self.d < 1:
            raise InvalidInputError("n and d must be positive")

    @cached_property
    def labels(self) -> tuple[Partition, ...]:
        return tuple(partitions(self.d, self.n))

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(format_partition(lam) for lam in self.labels)

    def index(self, lam: Sequence[int]) -> int:
        key = tuple(x for x in lam if x)
        if key not in self.labels:
            raise InvalidInputError(f"{format_partition(lam)} is not in Lambda+({self.n}, {self.d})")
        return self.labels.index(key)

    def padded(self, lam: Sequence[int]) -> tuple[int, ...]:
        return pad(lam, self.n)

    def __len__(self) -> int:
        return len(self.labels)
