"""Traversal of compositions ``n_1 + ... + n_m = n`` and of their symmetry
classes (partitions into at most ``m`` parts).

Every code length depends only on the count vector, and for the symmetric
summands used here (uniform weights, code lengths) only on the multiset of
counts. A sum over the ``C(n+m-1, m-1)`` compositions therefore collapses to a
sum over partitions weighted by their orbit size.

The visitors receive a reusable buffer: copy it if you need to keep it.
"""
from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, List


@dataclass
class WeightedPartition:
    sorted_counts: List[int]
    orbit_size: int


def _check(n: int, m: int) -> None:
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    if m < 1:
        raise ValueError(f"m must be >= 1, got {m}")


def composition_count(n: int, m: int) -> int:
    return math.comb(n + m - 1, m - 1)


def for_each_composition(n: int, m: int, visitor: Callable[[List[int]], None]) -> None:
    """Visit every composition of ``n`` into ``m`` ordered parts, in
    colexicographic order (the last part varies slowest)."""
    _check(n, m)
    buf = [0] * m

    def fill(pos: int, remaining: int) -> None:
        # positions are assigned from the last to the first
        if pos == 0:
            buf[0] = remaining
            visitor(buf)
            return
        for v in range(remaining + 1):
            buf[pos] = v
            fill(pos - 1, remaining - v)

    fill(m - 1, n)


def orbit_size(sorted_counts) -> int:
    """Number of distinct orderings of a multiset of counts, exactly."""
    size = math.factorial(len(sorted_counts))
    for mult in Counter(sorted_counts).values():
        size //= math.factorial(mult)
    return size


def for_each_partition_weighted(n: int, m: int, visitor: Callable[[WeightedPartition], None]) -> None:
    """Visit each non-increasing count vector of length ``m`` summing to ``n``
    once, in reverse lexicographic order, together with its orbit size."""
    _check(n, m)
    a = [0] * m
    item = WeightedPartition(a, 0)

    def fill(start: int, remaining: int, cap: int) -> None:
        for t in range(start, m):
            v = min(cap, remaining)
            a[t] = v
            remaining -= v

    a[0] = n
    fill(1, 0, n)
    while True:
        item.orbit_size = orbit_size(a)
        visitor(item)
        # rightmost position that can drop by one with a feasible suffix
        rem = a[m - 1]
        j = m - 2
        while j >= 0:
            if a[j] > 0 and (a[j] - 1) * (m - 1 - j) >= rem + 1:
                a[j] -= 1
                fill(j + 1, rem + 1, a[j])
                break
            rem += a[j]
            j -= 1
        if j < 0:
            return


@lru_cache(maxsize=None)
def partition_count(n: int, m: int) -> int:
    """Number of partitions of ``n`` into at most ``m`` parts, exactly."""
    _check(n, m)
    # p[k] counts partitions of k with parts of size <= j (conjugate view)
    p = [1] + [0] * n
    for j in range(1, m + 1):
        for k in range(j, n + 1):
            p[k] += p[k - j]
    return p[n]
