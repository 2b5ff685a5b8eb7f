"""Set partitions and Bell numbers (used for coarsenings and count checks)."""

from __future__ import annotations

from typing import Iterator, Sequence, TypeVar

T = TypeVar("T")


def set_partitions(items: Sequence[T]) -> Iterator[list[list[T]]]:
    """All partitions of ``items`` into nonempty cells, deterministically ordered."""
    items = list(items)
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for sub in set_partitions(rest):
        yield [[first]] + [list(cell) for cell in sub]
        for i in range(len(sub)):
            yield [
                [first] + list(cell) if i == j else list(cell)
                for j, cell in enumerate(sub)
            ]


def bell_number(n: int) -> int:
    """Bell numbers via the Bell triangle recurrence."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    row = [1]
    for _ in range(n):
        nxt = [row[-1]]
        for value in row:
            nxt.append(nxt[-1] + value)
        row = nxt
    return row[0]
