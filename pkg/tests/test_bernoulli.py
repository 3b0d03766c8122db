import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from enummdl.bernoulli import (BernoulliStat, CodeId, bayes_mixture_cost, code_length,
                               delta_stochastic_approx, delta_stochastic_exact, enum_param_cost,
                               nml_comp_approx, nml_comp_exact)
from enummdl.experiments import bernoulli_log_comp_upto
from enummdl.logmath import LN2

# log2 of the Shtarkov sum, from a 50-digit mpmath sum
FROZEN_COMP = {2: 1.3219280948873623479, 10: 2.2203967259666543486,
               100: 3.7235542617993698018, 1000: 5.3328229482286876618}


@pytest.mark.parametrize("n", sorted(FROZEN_COMP))
def test_comp_frozen(n):
    assert nml_comp_exact(n) == pytest.approx(FROZEN_COMP[n], rel=1e-12)


def test_comp_n1_is_one_bit():
    assert nml_comp_exact(1) == pytest.approx(1.0, abs=1e-15)
    assert enum_param_cost(1) == 1.0


def test_fft_series_matches_direct_sum():
    series = bernoulli_log_comp_upto(3000)
    for n in (1, 2, 3, 17, 500, 2999, 3000):
        assert series[n] / LN2 == pytest.approx(nml_comp_exact(n), rel=1e-12)


def test_codelen_examples():
    enum = code_length("enum", BernoulliStat(10, 5))
    assert enum.param == pytest.approx(math.log2(11))
    assert enum.data == pytest.approx(math.log2(252))
    assert round(enum.total, 6) == 11.436712
    rnd = code_length("random", BernoulliStat(10, 0))
    assert rnd == (0.0, 10.0, 10.0)


def test_nml_pure_string_costs_only_complexity():
    r = code_length(CodeId.NML, BernoulliStat(20, 0))
    assert r.data == 0.0
    assert r.total == pytest.approx(nml_comp_exact(20))


def test_simplistic_mixes_parts():
    s = BernoulliStat(30, 7)
    simp = code_length("simplistic", s)
    assert simp.param == code_length("enum", s).param
    assert simp.data == code_length("nml", s).data


def test_approx_close_for_large_n():
    for n in (10**4, 10**5):
        assert abs(nml_comp_exact(n) - nml_comp_approx(n)) < 0.01
    # the 1/sqrt(n) correction is still visible at n = 1000
    assert 0.02 < nml_comp_exact(1000) - nml_comp_approx(1000) < 0.03


def test_inexact_nml_uses_approximation():
    s = BernoulliStat(400, 100)
    assert code_length("nml", s, exact=False).param == nml_comp_approx(400)


def test_stat_validation():
    with pytest.raises(ValueError):
        BernoulliStat(0, 0)
    with pytest.raises(ValueError):
        BernoulliStat(5, 6)
    with pytest.raises(ValueError):
        code_length("zip", BernoulliStat(3, 1))
    with pytest.raises(ValueError):
        delta_stochastic_approx(BernoulliStat(5, 0))


def test_delta_stochastic_approx_tracks_exact():
    s = BernoulliStat(10**5, 31_000)
    assert delta_stochastic_exact(s) == pytest.approx(delta_stochastic_approx(s), abs=1e-4)


stats = st.integers(1, 3000).flatmap(lambda n: st.builds(BernoulliStat, st.just(n), st.integers(0, n)))


@given(stats)
def test_total_is_param_plus_data(s):
    for code in CodeId:
        r = code_length(code, s)
        assert r.total == pytest.approx(r.param + r.data, abs=0)
        assert r.param >= 0 and r.data >= 0


@given(stats)
def test_bayes_mixture_equals_enum_total(s):
    assert bayes_mixture_cost(s) == pytest.approx(code_length("enum", s).total, abs=1e-10)


@given(stats)
def test_length_symmetric_in_k(s):
    flipped = BernoulliStat(s.n, s.n - s.k)
    for code in CodeId:
        assert code_length(code, s).total == pytest.approx(code_length(code, flipped).total, abs=1e-10)


@given(stats)
def test_enum_data_below_nml_data_bound(s):
    # log C(n,k) <= n H(k/n)
    assert code_length("enum", s).data <= code_length("nml", s).data + 1e-9


@given(st.integers(2, 3000))
def test_parametric_order(n):
    assert enum_param_cost(n) > nml_comp_exact(n) > 0
