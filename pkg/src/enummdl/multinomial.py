"""Multinomial generalization of the enumerative and NML codes.

The exact NML parametric complexity uses the linear recurrence in the number
of outcomes ``m`` on the (non-log) Shtarkov sums::

    C(n, 1) = 1
    C(n, 2) = Bernoulli Shtarkov sum
    C(n, j + 2) = C(n, j + 1) + (n / j) C(n, j)

evaluated in the log domain. Brute-force composition sums in the test-suite
check it.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

import numpy as np

from . import bernoulli
from .bernoulli import CodeId, CodeLength
from .logmath import LN2, log_add, log_choose, log_gamma, log_multinomial_coeff, xlogx


@dataclass(frozen=True)
class MultinomialStat:
    """Count vector ``(n_1, ..., n_m)`` of an m-ary string."""

    counts: tuple

    def __init__(self, counts: Sequence[int]):
        counts = tuple(int(c) for c in counts)
        if len(counts) < 2:
            raise ValueError(f"need at least two outcomes, got {len(counts)}")
        if any(c < 0 for c in counts):
            raise ValueError(f"counts must be non-negative, got {counts}")
        if sum(counts) < 1:
            raise ValueError("counts must sum to at least 1")
        object.__setattr__(self, "counts", counts)

    @property
    def n(self) -> int:
        return sum(self.counts)

    @property
    def m(self) -> int:
        return len(self.counts)

    @property
    def theta_hat(self) -> tuple:
        n = self.n
        return tuple(c / n for c in self.counts)

    @property
    def degenerate(self) -> bool:
        return max(self.counts) == self.n


def _check(n: int, m: int) -> None:
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if m < 2:
        raise ValueError(f"m must be >= 2, got {m}")


def enum_log_param(n: int, m: int) -> float:
    """``ln C(n + m - 1, m - 1)`` in nats."""
    return log_choose(n + m - 1, m - 1)


def enum_param_cost_m(n: int, m: int) -> float:
    _check(n, m)
    if m == 2:
        return bernoulli.enum_param_cost(n)
    return enum_log_param(n, m) / LN2


def _as_bernoulli(stat: MultinomialStat) -> bernoulli.BernoulliStat:
    return bernoulli.BernoulliStat(stat.n, stat.counts[1])


def enum_data_cost_m(stat: MultinomialStat) -> float:
    if stat.m == 2:
        return bernoulli.enum_data_cost(_as_bernoulli(stat))
    return log_multinomial_coeff(stat.counts) / LN2


def nml_data_cost_m(stat: MultinomialStat) -> float:
    if stat.m == 2:
        return bernoulli.nml_data_cost(_as_bernoulli(stat))
    nats = xlogx(stat.n) - math.fsum(xlogx(c) for c in stat.counts)
    return max(nats, 0.0) / LN2


def nml_log_comp_series(n: int, m_max: int) -> np.ndarray:
    """Array ``out`` with ``out[m] = ln C(n, m)`` for ``1 <= m <= m_max``.

    ``out[0]`` is unused and set to NaN.
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if m_max < 1:
        raise ValueError(f"m_max must be >= 1, got {m_max}")
    out = np.full(m_max + 1, np.nan)
    out[1] = 0.0
    if m_max >= 2:
        out[2] = bernoulli.nml_log_comp(n)
    ln_n = math.log(n)
    for j in range(1, m_max - 1):
        out[j + 2] = log_add(out[j + 1], ln_n - math.log(j) + out[j])
    return out


@lru_cache(maxsize=65536)
def nml_log_comp_m(n: int, m: int) -> float:
    """Exact multinomial parametric complexity in nats."""
    _check(n, m)
    if m == 2:
        return bernoulli.nml_log_comp(n)
    return float(nml_log_comp_series(n, m)[m])


def nml_comp_exact_m(n: int, m: int) -> float:
    return nml_log_comp_m(n, m) / LN2


def nml_comp_rissanen(n: float, m: int) -> float:
    """``(m-1)/2 log(n / 2pi) + log(pi^(m/2) / Gamma(m/2))`` in bits."""
    if n <= 0 or m < 2:
        raise ValueError(f"need n > 0 and m >= 2, got n={n}, m={m}")
    nats = 0.5 * (m - 1) * math.log(n / (2 * math.pi)) + 0.5 * m * math.log(math.pi) - log_gamma(m / 2)
    return nats / LN2


def nml_comp_szpankowski(n: float, m: int, terms: str = "full") -> float:
    """Szpankowski-type expansion of the multinomial complexity, in bits.

    ``terms="leading"`` keeps only ``(m-1)/2 log(n/2) + log(sqrt(pi)/Gamma(m/2))``,
    which coincides algebraically with :func:`nml_comp_rissanen`.
    ``terms="full"`` (default) adds the ``n^-1/2`` and ``n^-1`` corrections
    of the expansion, which is what makes it sharp for moderate ``n``.
    """
    if n <= 0 or m < 2:
        raise ValueError(f"need n > 0 and m >= 2, got n={n}, m={m}")
    if terms not in ("full", "leading"):
        raise ValueError(f"terms must be 'full' or 'leading', got {terms!r}")
    nats = 0.5 * (m - 1) * math.log(n / 2.0) + 0.5 * math.log(math.pi) - log_gamma(m / 2)
    if terms == "full":
        # Gamma(m/2) / Gamma(m/2 - 1/2)
        g = math.exp(log_gamma(m / 2) - log_gamma(m / 2 - 0.5))
        a = math.sqrt(2.0) * m * g / 3.0
        b = (3.0 + m * (m - 2) * (2 * m + 1)) / 36.0 - (g * m) ** 2 / 9.0
        nats += a / math.sqrt(n) + b / n
    return nats / LN2


def enum_comp_stirling(n: float, m: int) -> float:
    """Stirling expansion ``(m-1)(ln n - ln(m-1) + 1) - 0.5 ln(2 pi (m-1))``,
    converted to bits. Its residual against the exact value is dominated by the
    Stirling error of ``(m-1)!``, about ``1/(12(m-1))`` nats."""
    if n <= 0 or m < 2:
        raise ValueError(f"need n > 0 and m >= 2, got n={n}, m={m}")
    k = m - 1
    nats = k * (math.log(n) - math.log(k) + 1.0) - 0.5 * math.log(2 * math.pi * k)
    return nats / LN2


def bic_penalty(n: float, m: int) -> float:
    """``(m-1)/2 log2 n``."""
    return 0.5 * (m - 1) * math.log2(n)


def code_length_m(code: "CodeId | str", stat: MultinomialStat, exact: bool = True) -> CodeLength:
    """Parametric cost, data cost and total for an m-ary string.

    ``SIMPLISTIC`` pairs the enumerative parameter cost with the maximum
    likelihood data cost. ``exact=False`` uses the full Szpankowski expansion
    for the NML complexity.
    """
    code = CodeId.parse(code)
    n, m = stat.n, stat.m
    if code is CodeId.ENUM:
        param, data = enum_param_cost_m(n, m), enum_data_cost_m(stat)
    elif code is CodeId.NML:
        if exact:
            param = nml_comp_exact_m(n, m)
        else:
            param = nml_comp_szpankowski(n, m)
        data = nml_data_cost_m(stat)
    elif code is CodeId.SIMPLISTIC:
        param, data = enum_param_cost_m(n, m), nml_data_cost_m(stat)
    else:
        param, data = 0.0, n * math.log2(m)
    return CodeLength(param, data, param + data)


def delta_sc_approx(theta_hat: Sequence[float], n: int) -> float:
    """Approximate NML-minus-enumerative data cost,
    ``(m-1)/2 log2(2 pi n) + 0.5 log2 prod(theta_j)``."""
    theta = _check_theta(theta_hat)
    m = len(theta)
    return 0.5 * (m - 1) * math.log2(2 * math.pi * n) + 0.5 * math.fsum(math.log2(t) for t in theta)


def delta_pc_approx(n: float, m: int, simplified: bool = False) -> float:
    """Approximate NML-minus-enumerative parametric complexity, in bits::

        -(m-1)/2 log n + m/2 log(m/e) + log(e sqrt(pi)) + (m - 1/2) log(1 - 1/m)

    The ``sqrt(pi)`` multiplies: this is what the Stirling expansions of both
    complexities give, and it is the sign under which this gap plus
    :func:`delta_sc_approx` equals :func:`delta_overall_approx`.
    With ``simplified=True`` the ``(m - 1/2) ln(1 - 1/m)`` term is replaced by
    its large-``m`` limit ``-1``.
    """
    _check(int(math.ceil(n)), m)
    nats = -0.5 * (m - 1) * math.log(n) + 0.5 * m * math.log(m / math.e)
    if simplified:
        nats += 0.5 * math.log(math.pi)
    else:
        nats += 1.0 + 0.5 * math.log(math.pi) + (m - 0.5) * math.log1p(-1.0 / m)
    return nats / LN2


def _check_theta(theta_hat: Sequence[float]) -> tuple:
    theta = tuple(float(t) for t in theta_hat)
    if len(theta) < 2:
        raise ValueError("theta needs at least two components")
    if any(t <= 0 for t in theta):
        raise ValueError("every theta_j must be > 0; log prod(theta) diverges otherwise")
    if abs(math.fsum(theta) - 1.0) > 1e-9:
        raise ValueError(f"theta must sum to 1, got {math.fsum(theta)}")
    return theta


def delta_overall_approx(theta_hat: Sequence[float], simplified: bool = False) -> float:
    """Approximate overall gap, NML total minus enumerative total, in bits.

    Default form::

        m/2 log(2 pi m / e) + 1/2 log prod(theta) + log(e / sqrt 2)
            + (m - 1/2) log(1 - 1/m)

    ``simplified=True`` gives the ``n >> m`` form where the last two terms
    collapse to ``-log sqrt 2``. The result does not depend on ``n``.
    Positive values mean the enumerative code is shorter.
    """
    theta = _check_theta(theta_hat)
    m = len(theta)
    nats = 0.5 * m * math.log(2 * math.pi * m / math.e) + 0.5 * math.fsum(math.log(t) for t in theta)
    if simplified:
        nats -= 0.5 * math.log(2.0)
    else:
        nats += 1.0 - 0.5 * math.log(2.0) + (m - 0.5) * math.log1p(-1.0 / m)
    return nats / LN2


def peak_boundary(m: int) -> tuple:
    """``(theta_max, theta_min)`` of the peaked distribution where both codes
    tie asymptotically; ``log m`` is the natural log."""
    if m < 2:
        raise ValueError(f"m must be >= 2, got {m}")
    denom = m + math.log(m)
    theta_min = math.e / (2 * math.pi * denom)
    theta_max = 1.0 - (m - 1) * theta_min
    return theta_max, theta_min


def bernoulli_boundary() -> tuple:
    """Roots of ``theta (1 - theta) = 1 / pi^2``, smaller root first."""
    r = math.sqrt(1.0 - 4.0 / math.pi**2)
    return 0.5 * (1.0 - r), 0.5 * (1.0 + r)


def peaked_counts(n: int, theta_max: float, m: int) -> tuple:
    """Integer counts closest to ``(theta_max, rest/(m-1), ...)`` summing to ``n``."""
    top = int(round(theta_max * n))
    rest = n - top
    base, extra = divmod(rest, m - 1)
    return (top,) + tuple(base + (1 if i < extra else 0) for i in range(m - 1))
