"""Exact numerical experiments comparing the enumerative and NML codes.

Expectations are exact sums over count vectors, never Monte Carlo estimates.
Uniform-source quantities (expected length, compressible fraction) go through
the compiled partition traversal. Bernoulli detection and classification use
the fact that each code length is increasing in ``min(k, n - k)``, so the
compressible set is a pair of binomial tails.

Indicator conventions:

* compressible fraction: ``L <= n log m``
* detection probability and true positive rate: ``L < n log m``
* true negative rate: ``L >= n log m``

Two lengths closer than :data:`TIE_TOL` (relative) count as equal.
"""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, List, NamedTuple, Optional, Sequence

import numpy as np
from scipy.signal import fftconvolve
from scipy.stats import binom

from . import _kernels as K
from .bernoulli import CodeId
from .compositions import partition_count
from .logmath import LN2, log_factorial_table, xlogx_table
from .multinomial import (bic_penalty, enum_log_param, enum_param_cost_m, nml_comp_exact_m,
                          nml_comp_rissanen, nml_comp_szpankowski, nml_log_comp_m)

#: Default cap on the number of partitions one grid point may traverse.
DEFAULT_BUDGET = 10**9
#: Relative tolerance under which a code length ties with the baseline.
TIE_TOL = 1e-11


class BudgetExceeded(RuntimeError):
    pass


@dataclass
class ExperimentResult:
    experiment_id: str
    parameters: Dict[str, object] = field(default_factory=dict)
    metrics: Dict[str, Optional[float]] = field(default_factory=dict)


@dataclass(frozen=True)
class DetectionThresholds:
    """Smallest sample size reaching 50% detection, and the sample size from
    which detection stays above 50%. ``None`` marks "not reached" (or, for the
    upper threshold with ``m >= 3``, not computed)."""

    lower: Optional[int]
    upper: Optional[int]

    def __post_init__(self):
        if self.lower is not None and self.upper is not None and self.lower > self.upper:
            raise ValueError(f"lower {self.lower} exceeds upper {self.upper}")

    @property
    def reached(self) -> bool:
        return self.lower is not None


class IcdfPoint(NamedTuple):
    k: int
    rate: float
    tail_prob: float


class Classification(NamedTuple):
    tpr: float
    tnr: float
    acc: float


# --------------------------------------------------------------------------
# complexity lookups


def log_param_cost(code: CodeId, n: int, m: int, cache=None) -> float:
    """Parametric part of a code's length in nats."""
    if code is CodeId.ENUM or code is CodeId.SIMPLISTIC:
        return math.log(n + 1) if m == 2 else enum_log_param(n, m)
    if code is CodeId.NML:
        if cache is not None:
            return cache.get(n, m)
        return nml_log_comp_m(n, m)
    return 0.0


def _data_kind(code: CodeId) -> int:
    if code is CodeId.ENUM:
        return K.DATA_ENUM
    if code is CodeId.RANDOM:
        return K.DATA_RANDOM
    return K.DATA_NML


@lru_cache(maxsize=8)
def bernoulli_log_comp_upto(n_max: int) -> np.ndarray:
    """``ln COMP(n)`` for every ``0 <= n <= n_max`` (entry 0 is ``ln 1``).

    Uses ``n^n/n! COMP(n) = sum_k (k^k/k!) ((n-k)^(n-k)/(n-k)!)`` with the
    factors rescaled by ``e^-k`` so all of them lie in ``(0, 1]``, and a
    single FFT convolution.
    """
    lf = log_factorial_table(n_max)
    xlx = xlogx_table(n_max)
    k = np.arange(n_max + 1)
    scaled = np.exp(xlx - lf - k)
    conv = fftconvolve(scaled, scaled)[: n_max + 1]
    out = np.log(conv) + k - xlx + lf
    out[0] = 0.0
    out.setflags(write=False)
    return out


def check_budget(n: int, m: int, budget: int = DEFAULT_BUDGET) -> int:
    count = partition_count(n, m)
    if count > budget:
        raise BudgetExceeded(
            f"n={n}, m={m} needs {count} partitions, over the budget of {budget}"
        )
    return count


def _tol(n: int, m: int) -> float:
    return TIE_TOL * max(1.0, n * math.log(m))


def _check_nm(n: int, m: int) -> None:
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if m < 2:
        raise ValueError(f"m must be >= 2, got {m}")


def _split(lo: int, hi: int, chunks: int) -> List[tuple]:
    chunks = max(1, min(chunks, hi - lo + 1))
    edges = np.linspace(lo, hi + 1, chunks + 1).round().astype(int)
    return [(int(a), int(b) - 1) for a, b in zip(edges[:-1], edges[1:]) if b > a]


def _merge(out: np.ndarray, comp: np.ndarray, col: int) -> float:
    # slots are merged in ascending leading-part order; fsum is exact-rounded
    return math.fsum(np.concatenate((out[:, col], comp[:, col])))


def _run_kernel(kernel, n, m, chunks, args, ncols=4):
    lf = log_factorial_table(n + m)
    xlx = xlogx_table(n)
    out = np.zeros((n + 1, ncols))
    comp = np.zeros((n + 1, ncols))
    lo = -(-n // m)
    ranges = _split(lo, n, chunks)
    if len(ranges) == 1:
        kernel(n, m, lo, n, lf, xlx, *args, out, comp)
    else:
        with ThreadPoolExecutor(len(ranges)) as pool:
            futures = [pool.submit(kernel, n, m, a, b, lf, xlx, *args, out, comp) for a, b in ranges]
            for f in futures:
                f.result()
    return out, comp


class UniformStats(NamedTuple):
    """Raw total weight, then mass-normalized mean length (nats) and
    ``P(L <= n ln m)``, ``P(L < n ln m)``."""

    mass: float
    expected_nats: float
    p_le: float
    p_lt: float


def uniform_stats(code, n: int, m: int, *, chunks: int = 1, cache=None,
                  budget: int = DEFAULT_BUDGET) -> UniformStats:
    """Exact sums over all ``m^n`` strings drawn uniformly, for one code."""
    code = CodeId.parse(code)
    _check_nm(n, m)
    check_budget(n, m, budget)
    threshold = n * math.log(m)
    args = (log_param_cost(code, n, m, cache), _data_kind(code), threshold, _tol(n, m))
    out, comp = _run_kernel(K.uniform_partition_sums, n, m, chunks, args)
    mass, length, le, lt = (_merge(out, comp, c) for c in range(4))
    # the weights share one rounding bias (from ln n!); dividing by their sum removes it
    return UniformStats(mass, length / mass, le / mass, lt / mass)


# --------------------------------------------------------------------------
# expectations under the uniform source


def expected_code_length(code, n: int, m: int = 2, **kw) -> float:
    """Mean total code length in bits over all ``m^n`` strings."""
    code = CodeId.parse(code)
    _check_nm(n, m)
    if code is CodeId.RANDOM:
        return n * math.log2(m)
    return uniform_stats(code, n, m, **kw).expected_nats / LN2


def expected_overhead(code, n: int, m: int = 2, **kw) -> float:
    """Expected length minus the ``n log2 m`` bits of the random code."""
    return expected_code_length(code, n, m, **kw) - n * math.log2(m)


def percent_compressible(code, n: int, m: int = 2, **kw) -> float:
    """Fraction of strings with total length ``<= n log2 m`` (ties count)."""
    code = CodeId.parse(code)
    _check_nm(n, m)
    if code is CodeId.RANDOM:
        return 1.0
    return min(uniform_stats(code, n, m, **kw).p_le, 1.0)


def compressible_ratio(n: int, m: int = 2, **kw) -> Optional[float]:
    """Enumerative over NML compressible fractions; ``None`` when both are 0."""
    num = percent_compressible(CodeId.ENUM, n, m, **kw)
    den = percent_compressible(CodeId.NML, n, m, **kw)
    if den == 0.0:
        return None if num == 0.0 else math.inf
    return num / den


# --------------------------------------------------------------------------
# Bernoulli lengths as functions of k


def _bernoulli_lengths(code: CodeId, ns: np.ndarray, ks: np.ndarray, log_params: np.ndarray) -> np.ndarray:
    n_max = int(ns.max())
    if code is CodeId.ENUM:
        lf = log_factorial_table(n_max)
        data = lf[ns] - lf[ks] - lf[ns - ks]
    elif code is CodeId.RANDOM:
        data = ns * LN2
    else:
        xlx = xlogx_table(n_max)
        data = np.maximum(xlx[ns] - xlx[ks] - xlx[ns - ks], 0.0)
    return log_params + data


def _bernoulli_log_params(code: CodeId, ns: np.ndarray) -> np.ndarray:
    if code is CodeId.ENUM or code is CodeId.SIMPLISTIC:
        return np.log(ns + 1.0)
    if code is CodeId.NML:
        return bernoulli_log_comp_upto(int(ns.max()))[ns]
    return np.zeros(ns.shape)


def _bernoulli_cut(code: CodeId, ns: np.ndarray, strict: bool) -> np.ndarray:
    """Largest ``k <= n // 2`` whose length passes the test against ``n ln 2``
    (``<`` when strict, ``<=`` otherwise); -1 when none does.

    Lengths are increasing in ``k`` on ``[0, n // 2]``, so the passing set
    is ``[0, cut] U [n - cut, n]``.
    """
    ns = np.asarray(ns, dtype=np.int64)
    params = _bernoulli_log_params(code, ns)
    thresh = ns * LN2
    tol = TIE_TOL * np.maximum(1.0, thresh)

    def passes(k):
        length = _bernoulli_lengths(code, ns, k, params)
        return length < thresh - tol if strict else length <= thresh + tol

    lo = np.full(ns.shape, -1, dtype=np.int64)  # invariant: passes(lo) or lo == -1
    hi = ns // 2 + 1  # invariant: hi fails or hi == n // 2 + 1
    while True:
        active = hi - lo > 1
        if not active.any():
            return lo
        mid = np.where(active, (lo + hi) // 2, 0)
        ok = passes(mid)
        lo = np.where(active & ok, mid, lo)
        hi = np.where(active & ~ok, mid, hi)


def _tail_mass(ns: np.ndarray, cut: np.ndarray, theta: float) -> np.ndarray:
    """``P(K <= cut) + P(K >= n - cut)`` for ``K ~ Binomial(n, theta)``."""
    ns = np.asarray(ns)
    full = 2 * cut >= ns
    lower = binom.cdf(cut, ns, theta)
    upper = binom.sf(ns - cut - 1, ns, theta)
    p = np.where(cut < 0, 0.0, lower + upper)
    return np.clip(np.where(full, 1.0, p), 0.0, 1.0)


def _middle_mass(ns: np.ndarray, cut: np.ndarray, theta: float) -> np.ndarray:
    """``P(cut < K < n - cut)``, the complement of :func:`_tail_mass`."""
    ns = np.asarray(ns)
    inner = binom.cdf(ns - cut - 1, ns, theta) - binom.cdf(cut, ns, theta)
    inner = np.where(cut < 0, 1.0, inner)
    return np.clip(np.where(2 * cut >= ns, 0.0, inner), 0.0, 1.0)


def _check_bias(theta_bias: float, m: int) -> None:
    if m == 2:
        if not 0.0 <= theta_bias <= 1.0:
            raise ValueError(f"theta_bias must lie in [0, 1], got {theta_bias}")
    elif not 1.0 / m < theta_bias <= 1.0:
        raise ValueError(f"theta_bias must lie in (1/m, 1] for m={m}, got {theta_bias}")


def bias_detection_probs(code, theta_bias: float, ns: Sequence[int]) -> np.ndarray:
    """Vectorized coin detection probability ``P(L < n)`` over sample sizes."""
    code = CodeId.parse(code)
    _check_bias(theta_bias, 2)
    ns = np.asarray(ns, dtype=np.int64)
    if code is CodeId.RANDOM:
        return np.zeros(ns.shape)
    cut = _bernoulli_cut(code, ns, strict=True)
    return _tail_mass(ns, cut, theta_bias)


def bias_detection_prob(code, theta_bias: float, n: int, m: int = 2, *, chunks: int = 1,
                        cache=None, budget: int = DEFAULT_BUDGET) -> float:
    """Probability that a string from the biased source is shorter than
    ``n log2 m`` under ``code``.

    For ``m >= 3`` the source is peaked: outcome 1 has probability
    ``theta_bias`` and the others share the rest equally.
    """
    code = CodeId.parse(code)
    _check_nm(n, m)
    _check_bias(theta_bias, m)
    if m == 2:
        return float(bias_detection_probs(code, theta_bias, [n])[0])
    if code is CodeId.RANDOM:
        return 0.0
    check_budget(n, m, budget)
    log_first = math.log(theta_bias) if theta_bias > 0 else -math.inf
    rest = (1.0 - theta_bias) / (m - 1)
    log_other = math.log(rest) if rest > 0 else -math.inf
    args = (log_param_cost(code, n, m, cache), _data_kind(code), n * math.log(m), _tol(n, m),
            log_first, log_other)
    out, comp = _run_kernel(K.biased_partition_sums, n, m, chunks, args)
    return min(_merge(out, comp, K.B_LT) / _merge(out, comp, K.B_MASS), 1.0)


def detection_thresholds(code, theta_bias: float, m: int = 2, n_max: int = 10**5,
                         **kw) -> DetectionThresholds:
    """Sample-size thresholds for detecting a biased coin or die.

    ``lower`` is the first ``n >= 10`` with detection probability ``>= 0.5``.
    ``upper`` is the first ``n >= 10`` from which the probability stays
    ``> 0.5`` up to ``n_max``, i.e. one past the last ``n`` with probability
    ``<= 0.5``. It is only computed for coins (``m = 2``).
    """
    code = CodeId.parse(code)
    if n_max < 10:
        raise ValueError(f"n_max must be >= 10, got {n_max}")
    _check_bias(theta_bias, m)
    if m == 2:
        ns = np.arange(10, n_max + 1)
        probs = bias_detection_probs(code, theta_bias, ns)
        hits = np.flatnonzero(probs >= 0.5)
        lower = int(ns[hits[0]]) if hits.size else None
        below = np.flatnonzero(probs <= 0.5)
        if not below.size:
            upper = 10
        elif below[-1] + 1 < ns.size:
            upper = int(ns[below[-1] + 1])
        else:
            upper = None
        if lower is None:
            upper = None
        return DetectionThresholds(lower, upper)
    for n in range(10, n_max + 1):
        if bias_detection_prob(code, theta_bias, n, m, **kw) >= 0.5:
            return DetectionThresholds(n, None)
    return DetectionThresholds(None, None)


def coin_classifications(code, theta_bias: float, ns: Sequence[int]) -> List[Classification]:
    code = CodeId.parse(code)
    _check_bias(theta_bias, 2)
    ns = np.asarray(ns, dtype=np.int64)
    if code is CodeId.RANDOM:
        tpr = np.zeros(ns.shape)
        tnr = np.ones(ns.shape)
    else:
        cut = _bernoulli_cut(code, ns, strict=True)
        tpr = _tail_mass(ns, cut, theta_bias)
        tnr = _middle_mass(ns, cut, 0.5)
    return [Classification(float(a), float(b), 0.5 * (float(a) + float(b))) for a, b in zip(tpr, tnr)]


def coin_classification(code, theta_bias: float, n: int) -> Classification:
    """Expected TPR, TNR and accuracy of "biased iff shorter than n bits",
    with fair and biased coins equally likely."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    return coin_classifications(code, theta_bias, [n])[0]


def compression_rate_icdf(code, n: int) -> List[IcdfPoint]:
    """Compression rate ``L / n`` of each count ``k`` with the uniform
    probability that a string's rate is ``<= rate``; sorted by rate."""
    code = CodeId.parse(code)
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    ns = np.full(n + 1, n, dtype=np.int64)
    ks = np.arange(n + 1)
    lengths = _bernoulli_lengths(code, ns, ks, _bernoulli_log_params(code, ns))
    rates = lengths / (n * LN2)
    lf = log_factorial_table(n)
    weights = np.exp(lf[n] - lf[ks] - lf[n - ks] - n * LN2)
    order = np.lexsort((ks, rates))
    out = []
    for idx in order:
        tail = math.fsum(weights[rates <= rates[idx] + TIE_TOL])
        out.append(IcdfPoint(int(idx), float(rates[idx]), min(tail, 1.0)))
    return out


def strings_shorter(code_a, code_b, n: int) -> int:
    """Exact number of binary strings of length ``n`` that ``code_a`` encodes
    strictly shorter than ``code_b``."""
    a, b = CodeId.parse(code_a), CodeId.parse(code_b)
    ns = np.full(n + 1, n, dtype=np.int64)
    ks = np.arange(n + 1)
    la = _bernoulli_lengths(a, ns, ks, _bernoulli_log_params(a, ns))
    lb = _bernoulli_lengths(b, ns, ks, _bernoulli_log_params(b, ns))
    tol = TIE_TOL * max(1.0, n * LN2)
    return sum(math.comb(n, int(k)) for k in ks[la < lb - tol])


# --------------------------------------------------------------------------
# complexity tables


def complexity_row(n: int, m: int) -> Dict[str, float]:
    return {
        "comp_enum": enum_param_cost_m(n, m),
        "comp_nml_exact": nml_comp_exact_m(n, m),
        "comp_rissanen": nml_comp_rissanen(n, m),
        "comp_szpankowski": nml_comp_szpankowski(n, m),
        "bic": bic_penalty(n, m),
    }


def comp_ratio(n: int, m: int, cache=None) -> float:
    comp = (cache.get(n, m) if cache is not None else nml_log_comp_m(n, m)) / LN2
    return enum_param_cost_m(n, m) / comp


def comp_ratio_table(m_list: Sequence[int], n_grid: Sequence[int], cache=None) -> List[ExperimentResult]:
    rows = []
    for m in m_list:
        for n in n_grid:
            rows.append(ExperimentResult("comp_ratio", {"n": n, "m": m},
                                         {"ratio": comp_ratio(n, m, cache)}))
    return rows
