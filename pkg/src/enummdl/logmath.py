"""Log-domain primitives shared by every code-length formula.

All quantities are kept as natural logarithms internally ("nats"); conversion
to bits happens only at public API boundaries via :func:`to_bits`.
"""
from __future__ import annotations

import math
import threading
from typing import Iterable, Optional, Sequence

import numpy as np
from scipy.special import gammaln

LN2 = math.log(2.0)

#: Largest argument served from the cached table; above it we use lgamma.
TABLE_CAP = 10**7

_table_lock = threading.Lock()
_lf_table = np.zeros(1)  # ln(0!) = 0
_xlx_table = np.zeros(1)  # 0 ln 0 = 0


def _grow(n: int) -> None:
    global _lf_table, _xlx_table
    with _table_lock:
        if n < _lf_table.size:
            return
        size = min(max(n + 1, 2 * _lf_table.size, 1024), TABLE_CAP + 1)
        idx = np.arange(size, dtype=np.float64)
        lf = gammaln(idx + 1.0)
        xlx = np.zeros(size)
        xlx[1:] = idx[1:] * np.log(idx[1:])
        lf.setflags(write=False)
        xlx.setflags(write=False)
        _lf_table, _xlx_table = lf, xlx


def log_factorial_table(n: int) -> np.ndarray:
    """Read-only array whose entry ``i`` is ``ln(i!)`` for ``0 <= i <= n``."""
    if n > TABLE_CAP:
        raise ValueError(f"table requested up to {n}, cap is {TABLE_CAP}")
    if n >= _lf_table.size:
        _grow(n)
    return _lf_table[: n + 1]


def xlogx_table(n: int) -> np.ndarray:
    """Read-only array whose entry ``i`` is ``i ln i`` (with ``0 ln 0 = 0``)."""
    if n > TABLE_CAP:
        raise ValueError(f"table requested up to {n}, cap is {TABLE_CAP}")
    if n >= _xlx_table.size:
        _grow(n)
    return _xlx_table[: n + 1]


def log_factorial(n: int) -> float:
    """Natural log of ``n!``."""
    if n < 0:
        raise ValueError(f"log_factorial requires n >= 0, got {n}")
    if n <= TABLE_CAP:
        return float(log_factorial_table(n)[n])
    return math.lgamma(n + 1.0)


def xlogx(n: int) -> float:
    """``n ln n`` with the convention ``0 ln 0 = 0``."""
    if n < 0:
        raise ValueError(f"xlogx requires n >= 0, got {n}")
    return n * math.log(n) if n > 0 else 0.0


def log_binomial(n: int, k: int) -> float:
    """``ln C(n, k)``; raises for ``k`` outside ``[0, n]``."""
    if not 0 <= k <= n:
        raise ValueError(f"log_binomial requires 0 <= k <= n, got n={n}, k={k}")
    return log_factorial(n) - log_factorial(k) - log_factorial(n - k)


def _stirling_remainder(x: int) -> float:
    """``ln x! - [(x + 1/2) ln x - x + ln sqrt(2 pi)]``."""
    if x <= 15:
        return math.lgamma(x + 1.0) - (x + 0.5) * math.log(x) + x - 0.5 * math.log(2 * math.pi)
    inv = 1.0 / x
    inv2 = inv * inv
    return inv * (1 / 12 - inv2 * (1 / 360 - inv2 * (1 / 1260 - inv2 * (1 / 1680 - inv2 / 1188))))


def log_choose(n: int, k: int) -> float:
    """``ln C(n, k)`` accurate to a few ulps of the result for any size.

    Differences of log-factorials lose absolute accuracy once the factorials
    are large; here the entropy part is written with ``log1p`` and the
    Stirling remainders are small, so nothing cancels.
    """
    if not 0 <= k <= n:
        raise ValueError(f"log_choose requires 0 <= k <= n, got n={n}, k={k}")
    j = n - k
    if k == 0 or j == 0:
        return 0.0
    if n <= 30:
        return math.log(math.comb(n, k))
    head = k * math.log1p(j / k) + j * math.log1p(k / j)
    tail = 0.5 * math.log(n / (2 * math.pi * k * j))
    return head + tail + (_stirling_remainder(n) - _stirling_remainder(k) - _stirling_remainder(j))


def log_multinomial_coeff(counts: Sequence[int]) -> float:
    """``ln(n! / prod(n_j!))`` with ``n = sum(counts)``.

    The per-count factorials are subtracted in the given order, so the result
    is permutation invariant only up to rounding.
    """
    if len(counts) == 0:
        raise ValueError("counts must be non-empty")
    if any(c < 0 for c in counts):
        raise ValueError(f"counts must be non-negative, got {list(counts)}")
    total = log_factorial(sum(counts))
    for c in counts:
        total -= log_factorial(c)
    return total


def log_sum_exp(terms: Iterable[float]) -> float:
    """``ln(sum(exp(t)))`` for a sequence of log-domain values.

    The maximum is factored out and the scaled exponentials are accumulated
    with :func:`math.fsum`, which is correctly rounded. The result therefore
    does not depend on the order of ``terms`` nor on how a caller splits them
    into chunks, as long as the chunks are merged with :func:`log_sum_exp`
    over the concatenated scaled terms (see :func:`log_sum_exp_chunks`).
    """
    arr = np.fromiter(terms, dtype=np.float64) if not isinstance(terms, np.ndarray) else terms
    if arr.size == 0:
        return -math.inf
    if np.isnan(arr).any():
        raise ValueError("log_sum_exp received NaN")
    top = float(arr.max())
    if top == -math.inf:
        return -math.inf
    if top == math.inf:
        return math.inf
    return top + math.log(math.fsum(np.exp(arr - top)))


def log_sum_exp_chunks(chunks: Sequence[np.ndarray]) -> float:
    """Reduce contiguous chunks of log terms, merging in ascending chunk order.

    Every chunk is rescaled by the global maximum before its exponentials are
    summed, and all scaled terms feed one correctly rounded sum, so the value
    is bit-identical to ``log_sum_exp(np.concatenate(chunks))`` whatever the
    chunking.
    """
    arrays = [np.asarray(c, dtype=np.float64) for c in chunks]
    nonempty = [a for a in arrays if a.size]
    if not nonempty:
        return -math.inf
    top = max(float(a.max()) for a in nonempty)
    if top == -math.inf:
        return -math.inf
    scaled = [np.exp(a - top) for a in nonempty]
    return top + math.log(math.fsum(np.concatenate(scaled)))


def log_add(a: float, b: float) -> float:
    """``ln(exp(a) + exp(b))`` for two log-domain values."""
    if a < b:
        a, b = b, a
    if b == -math.inf:
        return a
    return a + math.log1p(math.exp(b - a))


def to_bits(x: float) -> Optional[float]:
    """Convert a natural log to bits.

    ``-inf`` (the log of zero) has no finite length in either direction and
    maps to ``None``, the undefined-length marker.
    """
    if math.isnan(x):
        raise ValueError("to_bits received NaN")
    if x == -math.inf:
        return None
    return x / LN2


def log_gamma(x: float) -> float:
    """``ln Gamma(x)`` for ``x > 0``."""
    if x <= 0:
        raise ValueError(f"log_gamma requires x > 0, got {x}")
    return math.lgamma(x)
