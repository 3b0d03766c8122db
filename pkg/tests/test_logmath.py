import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from enummdl import logmath as lm

mpmath.mp.dps = 40


@pytest.mark.parametrize("n", [0, 1, 2, 10, 170, 1000, 123457, 10**6])
def test_log_factorial_matches_mpmath(n):
    ref = float(mpmath.loggamma(n + 1))
    assert lm.log_factorial(n) == pytest.approx(ref, rel=1e-14, abs=1e-15)


def test_log_factorial_above_table_cap():
    n = lm.TABLE_CAP + 5
    assert lm.log_factorial(n) == pytest.approx(float(mpmath.loggamma(n + 1)), rel=1e-14)


def test_log_factorial_rejects_negative():
    with pytest.raises(ValueError):
        lm.log_factorial(-1)


def test_tables_are_read_only_and_consistent():
    lf = lm.log_factorial_table(50)
    xlx = lm.xlogx_table(50)
    with pytest.raises(ValueError):
        lf[3] = 0.0
    assert lf[0] == 0.0 and xlx[0] == 0.0
    assert xlx[7] == pytest.approx(7 * math.log(7), rel=1e-15)
    assert np.all(np.diff(lf) >= 0)


def test_log_binomial_frozen():
    # C(10, 5) = 252
    assert lm.log_binomial(10, 5) / lm.LN2 == pytest.approx(math.log2(252), abs=1e-13)
    with pytest.raises(ValueError):
        lm.log_binomial(5, 6)


def test_log_multinomial_frozen():
    assert math.exp(lm.log_multinomial_coeff([2, 2, 1])) == pytest.approx(30.0, rel=1e-13)
    with pytest.raises(ValueError):
        lm.log_multinomial_coeff([])
    with pytest.raises(ValueError):
        lm.log_multinomial_coeff([1, -1])


def test_log_sum_exp_edge_cases():
    assert lm.log_sum_exp([]) == -math.inf
    assert lm.log_sum_exp([-math.inf, -math.inf]) == -math.inf
    assert lm.log_sum_exp([0.0, 0.0]) == pytest.approx(math.log(2))
    assert lm.log_sum_exp([1000.0, 1000.0]) == pytest.approx(1000 + math.log(2))
    with pytest.raises(ValueError):
        lm.log_sum_exp([0.0, math.nan])


def test_to_bits_markers():
    assert lm.to_bits(-math.inf) is None
    assert lm.to_bits(math.log(8)) == pytest.approx(3.0, abs=1e-15)
    with pytest.raises(ValueError):
        lm.to_bits(math.nan)


def test_log_gamma_domain():
    assert lm.log_gamma(0.5) == pytest.approx(0.5 * math.log(math.pi))
    with pytest.raises(ValueError):
        lm.log_gamma(0.0)


# properties

finite_logs = st.floats(min_value=-700, max_value=700, allow_nan=False)


@given(st.lists(finite_logs, min_size=1, max_size=60), st.randoms(use_true_random=False))
def test_log_sum_exp_permutation_invariant(xs, rnd):
    ys = list(xs)
    rnd.shuffle(ys)
    assert lm.log_sum_exp(xs) == lm.log_sum_exp(ys)


@given(st.lists(finite_logs, min_size=1, max_size=60), st.data())
def test_log_sum_exp_chunking_is_bit_identical(xs, data):
    cuts = sorted(data.draw(st.lists(st.integers(0, len(xs)), max_size=5)))
    chunks = [np.array(xs[a:b]) for a, b in zip([0] + cuts, cuts + [len(xs)])]
    assert lm.log_sum_exp_chunks(chunks) == lm.log_sum_exp(np.array(xs))


@given(st.lists(finite_logs, min_size=1, max_size=40))
def test_log_sum_exp_bounds(xs):
    top = max(xs)
    v = lm.log_sum_exp(xs)
    assert top - 1e-12 <= v <= top + math.log(len(xs)) + 1e-12


@given(finite_logs, finite_logs)
def test_log_add_matches_log_sum_exp(a, b):
    assert lm.log_add(a, b) == pytest.approx(lm.log_sum_exp([a, b]), rel=1e-14, abs=1e-14)


@given(st.integers(0, 400), st.data())
def test_binomial_symmetry_and_exactness(n, data):
    k = data.draw(st.integers(0, n))
    assert lm.log_binomial(n, k) == pytest.approx(lm.log_binomial(n, n - k), rel=1e-13, abs=1e-12)
    exact = math.log(math.comb(n, k))
    assert lm.log_binomial(n, k) == pytest.approx(exact, rel=1e-12, abs=1e-11)


@settings(max_examples=50)
@given(st.lists(st.integers(0, 60), min_size=1, max_size=8))
def test_log_multinomial_exact(counts):
    r = math.factorial(sum(counts))
    for c in counts:
        r //= math.factorial(c)
    assert lm.log_multinomial_coeff(counts) == pytest.approx(math.log(r), rel=1e-12, abs=1e-11)


def _log_big(x):
    shift = max(x.bit_length() - 64, 0)
    return math.log(x >> shift) + shift * math.log(2)


@given(st.integers(0, 10**6), st.data())
def test_log_choose_near_ulp(n, data):
    k = data.draw(st.integers(0, n))
    exact = _log_big(math.comb(n, k)) if n <= 5000 else float(mpmath.log(mpmath.binomial(n, k)))
    assert lm.log_choose(n, k) == pytest.approx(exact, rel=4e-15, abs=1e-14)


def test_log_choose_huge_arguments():
    # differences of lgamma lose ~1e-10 here
    n, k = 10**6 + 10**5 - 1, 10**5 - 1
    assert lm.log_choose(n, k) == pytest.approx(float(mpmath.log(mpmath.binomial(n, k))), rel=1e-15)
    assert lm.log_choose(10**5, 1) == pytest.approx(math.log(10**5), abs=1e-14)
    with pytest.raises(ValueError):
        lm.log_choose(3, 4)
