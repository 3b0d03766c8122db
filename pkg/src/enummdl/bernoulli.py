"""Code lengths for binary strings under the Bernoulli model.

Four codes are compared throughout the package:

* ``ENUM``: two-part enumerative code, ``log(n+1) + log C(n, k)``.
* ``NML``: normalized maximum likelihood, ``COMP(n) + n H(k/n)``.
* ``SIMPLISTIC``: crude two-part code, ``log(n+1) + n H(k/n)``.
* ``RANDOM``: the uniform baseline, ``n`` bits.

Every public value is in bits.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import NamedTuple

import numpy as np

from .logmath import (
    LN2,
    TABLE_CAP,
    log_binomial,
    log_factorial_table,
    log_sum_exp,
    xlogx,
    xlogx_table,
)


class CodeId(str, enum.Enum):
    ENUM = "enum"
    NML = "nml"
    SIMPLISTIC = "simplistic"
    RANDOM = "random"

    @classmethod
    def parse(cls, value: "str | CodeId") -> "CodeId":
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).lower())
        except ValueError:
            names = ", ".join(c.value for c in cls)
            raise ValueError(f"unknown code {value!r}; expected one of {names}") from None

    def __str__(self) -> str:
        return self.value


class CodeLength(NamedTuple):
    param: float
    data: float
    total: float


@dataclass(frozen=True)
class BernoulliStat:
    """Sufficient statistic of a binary string: length ``n`` and number of ones ``k``."""

    n: int
    k: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"n must be >= 1, got {self.n}")
        if not 0 <= self.k <= self.n:
            raise ValueError(f"k must lie in [0, n], got n={self.n}, k={self.k}")

    @property
    def theta_hat(self) -> float:
        return self.k / self.n

    @property
    def degenerate(self) -> bool:
        return self.k in (0, self.n)


def enum_param_cost(n: int) -> float:
    """Bits spent on the index of ``theta_hat`` among its ``n + 1`` values."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    return math.log2(n + 1)


def enum_data_cost(stat: BernoulliStat) -> float:
    return log_binomial(stat.n, stat.k) / LN2


def _nml_data_nats(n: int, k: int) -> float:
    return xlogx(n) - xlogx(k) - xlogx(n - k)


def nml_data_cost(stat: BernoulliStat) -> float:
    """``-log2`` of the maximized likelihood, i.e. ``n H(k/n)`` in bits."""
    return max(_nml_data_nats(stat.n, stat.k), 0.0) / LN2


def shtarkov_log_terms(n: int) -> np.ndarray:
    """Natural-log summands ``ln[C(n,k) (k/n)^k ((n-k)/n)^(n-k)]`` for ``k = 0..n``."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    k = np.arange(n + 1)
    if n <= TABLE_CAP:
        lf = log_factorial_table(n)
        xlx = xlogx_table(n)
        return (lf[n] - lf[k] - lf[n - k]) + (xlx[k] + xlx[n - k] - xlx[n])
    from scipy.special import gammaln, xlogy

    kf = k.astype(np.float64)
    return (
        gammaln(n + 1.0) - gammaln(kf + 1.0) - gammaln(n - kf + 1.0)
        + xlogy(kf, kf / n) + xlogy(n - kf, (n - kf) / n)
    )


@lru_cache(maxsize=4096)
def nml_log_comp(n: int) -> float:
    """Exact Bernoulli parametric complexity in nats (all ``n + 1`` terms)."""
    return log_sum_exp(shtarkov_log_terms(n))


def nml_comp_exact(n: int) -> float:
    return nml_log_comp(n) / LN2


def nml_comp_approx(n: float) -> float:
    """Asymptotic ``0.5 log2(n pi / 2)``; accepts real ``n > 0``."""
    if n <= 0:
        raise ValueError(f"n must be positive, got {n}")
    return 0.5 * math.log2(n * math.pi / 2.0)


def code_length(code: "CodeId | str", stat: BernoulliStat, exact: bool = True) -> CodeLength:
    """Parametric cost, data cost and total for one of the four codes.

    ``exact=False`` swaps the NML complexity for its asymptotic approximation.
    """
    code = CodeId.parse(code)
    n = stat.n
    if code is CodeId.ENUM:
        param, data = enum_param_cost(n), enum_data_cost(stat)
    elif code is CodeId.NML:
        param = nml_comp_exact(n) if exact else nml_comp_approx(n)
        data = nml_data_cost(stat)
    elif code is CodeId.SIMPLISTIC:
        param, data = enum_param_cost(n), nml_data_cost(stat)
    else:
        param, data = 0.0, float(n)
    return CodeLength(param, data, param + data)


def bayes_mixture_cost(stat: BernoulliStat) -> float:
    """``-log2`` of the uniform-prior Bayes mixture ``k!(n-k)!/((n+1)!)``.

    Evaluated through ``lgamma`` rather than the factorial table so it stays an
    independent route to the enumerative total.
    """
    n, k = stat.n, stat.k
    log_p = math.lgamma(k + 1) + math.lgamma(n - k + 1) - math.lgamma(n + 2)
    return -log_p / LN2


def delta_stochastic_approx(stat: BernoulliStat) -> float:
    """Approximate gap ``0.5 log2(2 pi n theta (1 - theta))`` between the NML
    and enumerative data costs. Undefined for degenerate strings."""
    if stat.degenerate:
        raise ValueError("delta_stochastic_approx needs 0 < k < n")
    t = stat.theta_hat
    return 0.5 * math.log2(2.0 * math.pi * stat.n * t * (1.0 - t))


def delta_stochastic_exact(stat: BernoulliStat) -> float:
    """NML data cost minus enumerative data cost."""
    return nml_data_cost(stat) - enum_data_cost(stat)
