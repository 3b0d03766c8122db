import math
from collections import Counter

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from enummdl.compositions import (composition_count, for_each_composition,
                                  for_each_partition_weighted, orbit_size, partition_count)


def collect_partitions(n, m):
    out = []
    for_each_partition_weighted(n, m, lambda p: out.append((tuple(p.sorted_counts), p.orbit_size)))
    return out


def collect_compositions(n, m):
    out = []
    for_each_composition(n, m, lambda c: out.append(tuple(c)))
    return out


def test_partition_order_frozen():
    assert collect_partitions(5, 3) == [((5, 0, 0), 3), ((4, 1, 0), 6), ((3, 2, 0), 6),
                                        ((3, 1, 1), 3), ((2, 2, 1), 3)]


def test_composition_order_frozen():
    assert collect_compositions(2, 2) == [(2, 0), (1, 1), (0, 2)]


def test_edge_cases():
    assert collect_partitions(0, 3) == [((0, 0, 0), 1)]
    assert collect_partitions(4, 1) == [((4,), 1)]
    assert collect_compositions(0, 2) == [(0, 0)]
    assert partition_count(50, 10) == 62740
    with pytest.raises(ValueError):
        partition_count(-1, 2)
    with pytest.raises(ValueError):
        for_each_composition(3, 0, print)


def test_orbit_sum_large():
    total = sum(w for _, w in collect_partitions(50, 10))
    assert total == math.comb(59, 9)


def test_orbit_size():
    assert orbit_size([2, 2, 1]) == 3
    assert orbit_size([0, 0, 0, 0]) == 1
    assert orbit_size([4, 3, 2, 1]) == 24


small = st.tuples(st.integers(0, 14), st.integers(1, 6))


@settings(deadline=None)
@given(small)
def test_partitions_cover_every_composition(nm):
    n, m = nm
    parts = collect_partitions(n, m)
    assert len(parts) == partition_count(n, m)
    assert len({p for p, _ in parts}) == len(parts)
    assert sum(w for _, w in parts) == composition_count(n, m)
    comps = Counter(tuple(sorted(c, reverse=True)) for c in oracles.compositions(n, m))
    assert dict(parts) == dict(comps)


@settings(deadline=None)
@given(small)
def test_partitions_in_reverse_lex_order(nm):
    parts = [p for p, _ in collect_partitions(*nm)]
    assert parts == sorted(parts, reverse=True)
    for p in parts:
        assert list(p) == sorted(p, reverse=True)


@settings(deadline=None)
@given(small)
def test_compositions_complete_and_distinct(nm):
    n, m = nm
    comps = collect_compositions(n, m)
    assert len(comps) == len(set(comps)) == composition_count(n, m)
    assert all(sum(c) == n and len(c) == m and min(c) >= 0 for c in comps)
    # colexicographic: the reversed tuples ascend
    assert comps == sorted(comps, key=lambda c: tuple(reversed(c)))


@settings(deadline=None)
@given(st.integers(0, 60), st.integers(1, 8))
def test_partition_count_matches_traversal(n, m):
    count = [0]
    for_each_partition_weighted(n, m, lambda p: count.__setitem__(0, count[0] + 1))
    assert count[0] == partition_count(n, m)
