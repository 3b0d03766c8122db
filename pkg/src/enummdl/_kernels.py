"""Compiled partition reductions behind the exact expectations.

Both kernels walk the partitions of ``n`` into at most ``m`` parts in the same
reverse lexicographic order as :func:`enummdl.compositions.for_each_partition_weighted`,
restricted to a range of leading (largest) parts. Results are accumulated per
leading part with Neumaier compensation, so that any split of the leading-part
range across workers produces identical per-slot values; callers merge the
slots in ascending order.
"""
import math

import numpy as np
from numba import njit

DATA_ENUM = 0
DATA_NML = 1
DATA_RANDOM = 2

# columns of the uniform kernel output
U_MASS, U_LENGTH, U_LE, U_LT = 0, 1, 2, 3
# columns of the biased kernel output
B_LT, B_GE, B_LE, B_MASS = 0, 1, 2, 3


@njit(nogil=True, cache=True)
def _fill(a, start, remaining, cap):
    m = a.shape[0]
    for t in range(start, m):
        v = cap if cap < remaining else remaining
        a[t] = v
        remaining -= v


@njit(nogil=True, cache=True)
def _next_tail(a):
    """Advance ``a`` to its reverse-lex successor keeping ``a[0]`` fixed.
    Returns False when the tail is exhausted."""
    m = a.shape[0]
    rem = a[m - 1]
    j = m - 2
    while j >= 1:
        if a[j] > 0 and (a[j] - 1) * (m - 1 - j) >= rem + 1:
            a[j] -= 1
            _fill(a, j + 1, rem + 1, a[j])
            return True
        rem += a[j]
        j -= 1
    return False


@njit(nogil=True, cache=True)
def _log_orbit(a, lf):
    m = a.shape[0]
    if m <= 20:
        orbit = 1
        # m! / prod(mult!) built incrementally and kept exact in int64
        run = 0
        for i in range(m):
            if i > 0 and a[i] == a[i - 1]:
                run += 1
            else:
                run = 1
            orbit = orbit * (i + 1) // run
        return math.log(orbit)
    s = lf[m]
    run = 0
    for i in range(m):
        if i > 0 and a[i] == a[i - 1]:
            run += 1
        else:
            if run > 0:
                s -= lf[run]
            run = 1
    s -= lf[run]
    return s


@njit(nogil=True, cache=True)
def _data_nats(a, n, lf, xlx, data_kind, log_m):
    if data_kind == DATA_ENUM:
        s = lf[n]
        for i in range(a.shape[0]):
            s -= lf[a[i]]
        return s
    if data_kind == DATA_NML:
        s = xlx[n]
        for i in range(a.shape[0]):
            s -= xlx[a[i]]
        return s if s > 0.0 else 0.0
    return n * log_m


@njit(nogil=True, cache=True)
def _acc(out, comp, row, col, x):
    # Neumaier compensated add
    s = out[row, col]
    t = s + x
    if abs(s) >= abs(x):
        comp[row, col] += (s - t) + x
    else:
        comp[row, col] += (x - t) + s
    out[row, col] = t


@njit(nogil=True, cache=True)
def uniform_partition_sums(n, m, first_lo, first_hi, lf, xlx, log_param, data_kind,
                           threshold, tol, out, comp):
    """Uniform-source reductions per leading part ``f`` in ``[first_lo, first_hi]``.

    ``out[f]`` receives ``[sum w, sum w L, sum w 1{L <= T}, sum w 1{L < T}]``
    where ``w = multinomial(a) * orbit(a) / m^n`` and ``L`` is the total code
    length in nats. ``comp`` holds the compensation terms.
    """
    a = np.zeros(m, dtype=np.int64)
    log_m = math.log(m)
    base = lf[n] - n * log_m
    for f in range(first_hi, first_lo - 1, -1):
        if f > n or f * m < n:
            continue
        if m == 1:
            if f != n:
                continue
        a[0] = f
        _fill(a, 1, n - f, f)
        while True:
            lw = base + _log_orbit(a, lf)
            for i in range(m):
                lw -= lf[a[i]]
            w = math.exp(lw)
            length = log_param + _data_nats(a, n, lf, xlx, data_kind, log_m)
            _acc(out, comp, f, U_MASS, w)
            _acc(out, comp, f, U_LENGTH, w * length)
            if length <= threshold + tol:
                _acc(out, comp, f, U_LE, w)
            if length < threshold - tol:
                _acc(out, comp, f, U_LT, w)
            if m == 1 or not _next_tail(a):
                break


@njit(nogil=True, cache=True)
def biased_partition_sums(n, m, first_lo, first_hi, lf, xlx, log_param, data_kind,
                          threshold, tol, log_first, log_other, out, comp):
    """Detection reductions under a peaked source: outcome 1 has probability
    ``exp(log_first)`` and each other outcome ``exp(log_other)``.

    ``out[f]`` receives ``[P(L < T), P(L >= T), P(L <= T), total mass]``
    restricted to partitions with leading part ``f``.
    """
    a = np.zeros(m, dtype=np.int64)
    log_m = math.log(m)
    for f in range(first_hi, first_lo - 1, -1):
        if f > n or f * m < n:
            continue
        if m == 1:
            if f != n:
                continue
        a[0] = f
        _fill(a, 1, n - f, f)
        while True:
            lmult = lf[n]
            for i in range(m):
                lmult -= lf[a[i]]
            lorbit = _log_orbit(a, lf)
            length = log_param + _data_nats(a, n, lf, xlx, data_kind, log_m)
            w = 0.0
            i = 0
            while i < m:
                v = a[i]
                mult = 1
                while i + mult < m and a[i + mult] == v:
                    mult += 1
                # compositions of this orbit with n_1 = v
                lw = lmult + lorbit + math.log(mult / m)
                if v > 0:
                    lw += v * log_first
                if n - v > 0:
                    lw += (n - v) * log_other
                w += math.exp(lw)
                i += mult
            _acc(out, comp, f, B_MASS, w)
            if length < threshold - tol:
                _acc(out, comp, f, B_LT, w)
            else:
                _acc(out, comp, f, B_GE, w)
            if length <= threshold + tol:
                _acc(out, comp, f, B_LE, w)
            if m == 1 or not _next_tail(a):
                break
