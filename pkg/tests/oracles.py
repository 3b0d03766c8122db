"""Slow, independent reference implementations used only by the tests.

Everything here works on raw strings or exact integers and shares no code
with the package.
"""
import itertools
import math
from functools import lru_cache

import numpy as np


def compositions(n, m):
    if m == 1:
        yield (n,)
        return
    for v in range(n + 1):
        for rest in compositions(n - v, m - 1):
            yield (v,) + rest


def multinomial(counts):
    r = math.factorial(sum(counts))
    for c in counts:
        r //= math.factorial(c)
    return r


@lru_cache(maxsize=None)
def shtarkov_exact(n, m):
    """``n^n * C(n, m)`` as an exact integer, summed over compositions."""
    total = 0
    for c in compositions(n, m):
        p = 1
        for x in c:
            p *= x**x
        total += multinomial(c) * p
    return total


def comp_bits_exact(n, m):
    num = shtarkov_exact(n, m)
    # log2(num / n^n) without overflowing a float
    return (math.log2(num) if num.bit_length() < 1000 else _big_log2(num)) - n * math.log2(n)


def _big_log2(x):
    shift = x.bit_length() - 60
    return math.log2(x >> shift) + shift


def all_count_vectors(n, m):
    """Counts of every one of the ``m^n`` raw strings, as an ``(m^n, m)`` array."""
    strings = np.array(list(itertools.product(range(m), repeat=n)), dtype=np.int64).reshape(-1, n)
    return np.stack([(strings == j).sum(axis=1) for j in range(m)], axis=1)


def enum_length_bits(counts):
    n, m = sum(counts), len(counts)
    return math.log2(math.comb(n + m - 1, m - 1)) + math.log2(multinomial(counts))


def ml_data_bits(counts):
    n = sum(counts)
    return -math.fsum(c * math.log2(c / n) for c in counts if c)


def comp_bits_bruteforce(n, m):
    """``log2`` of the sum over all raw strings of their maximized likelihood."""
    vecs = all_count_vectors(n, m)
    return math.log2(math.fsum(2.0 ** -ml_data_bits(tuple(v)) for v in vecs))


def nml_length_bits(counts, comp_bits):
    return comp_bits + ml_data_bits(counts)
