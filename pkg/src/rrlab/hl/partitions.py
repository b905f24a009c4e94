"""Integer partitions as weakly decreasing tuples of positive ints."""

from __future__ import annotations

from functools import lru_cache
from typing import Iterator, Sequence

Partition = tuple[int, ...]


def make_partition(parts: Sequence[int]) -> Partition:
    p = tuple(int(x) for x in parts if x)
    if any(x < 0 for x in p) or any(p[i] < p[i + 1] for i in range(len(p) - 1)):
        raise ValueError(f"{tuple(parts)} is not a partition")
    return p


def conjugate(lam: Sequence[int]) -> Partition:
    lam = make_partition(lam)
    if not lam:
        return ()
    return tuple(sum(1 for x in lam if x > j) for j in range(lam[0]))


def multiplicities(lam: Sequence[int]) -> dict[int, int]:
    """``{i: m_i}`` for the parts that occur, computed from the conjugate."""
    conj = conjugate(lam) + (0,)
    return {i + 1: conj[i] - conj[i + 1] for i in range(len(conj) - 1) if conj[i] != conj[i + 1]}


def size(lam: Sequence[int]) -> int:
    return sum(lam)


def n_stat(lam: Sequence[int]) -> int:
    """``sum (i-1) lambda_i``."""
    return sum(i * x for i, x in enumerate(lam))


def double(lam: Sequence[int]) -> Partition:
    return tuple(2 * x for x in lam)


def contains(outer: Sequence[int], inner: Sequence[int]) -> bool:
    if len(inner) > len(outer):
        return False
    return all(a >= b for a, b in zip(outer, inner))


def is_horizontal_strip(outer: Sequence[int], inner: Sequence[int]) -> bool:
    """``outer/inner`` has at most one box in each column (interlacing)."""
    if not contains(outer, inner) or len(outer) > len(inner) + 1:
        return False
    for i in range(len(inner)):
        nxt = outer[i + 1] if i + 1 < len(outer) else 0
        if inner[i] < nxt:
            return False
    return True


def partitions_in_box(max_part: int, max_len: int, max_size: int | None = None) -> Iterator[Partition]:
    """Partitions with ``lambda_1 <= max_part`` and at most ``max_len`` parts."""

    def rec(prefix: list[int], cap: int, left: int | None):
        yield tuple(prefix)
        if len(prefix) == max_len:
            return
        top = cap if left is None else min(cap, left)
        for x in range(1, top + 1):
            prefix.append(x)
            yield from rec(prefix, x, None if left is None else left - x)
            prefix.pop()

    yield from rec([], max_part, max_size)


def partitions_of(n: int, max_part: int | None = None) -> Iterator[Partition]:
    cap = n if max_part is None else max_part

    def rec(left: int, cap: int):
        if left == 0:
            yield ()
            return
        for x in range(min(left, cap), 0, -1):
            for rest in rec(left - x, x):
                yield (x,) + rest

    yield from rec(n, cap)


@lru_cache(maxsize=None)
def sub_partitions(lam: Partition) -> tuple[Partition, ...]:
    """All partitions contained in ``lam``."""
    out: list[Partition] = []

    def rec(i: int, cap: int, prefix: list[int]):
        if i == len(lam):
            out.append(make_partition(prefix))
            return
        for x in range(min(cap, lam[i]), -1, -1):
            prefix.append(x)
            rec(i + 1, x, prefix)
            prefix.pop()
            if x == 0:
                break

    rec(0, lam[0] if lam else 0, [])
    return tuple(out)
