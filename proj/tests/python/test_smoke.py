"""Smoke tests for the python bindings: exercise the main operations and a
few frozen values; the heavy numerical checks live in the C++ suites."""

import math

import pytest

import rlen


def test_closed_form_oracles():
    assert rlen.ar2_rlen(0.0, 0.0) == 0.0
    assert rlen.ar2_rlen(0.5, 0.0) == pytest.approx(0.5 * math.log(4.0 / 3.0), rel=1e-12)
    assert rlen.arp_rlen([0.5, 0.0], 2, 1) == pytest.approx(rlen.ar2_rlen(0.5, 0.0), rel=1e-9)
    rho = rlen.yule_walker_autocorr([0.8, -0.3, 0.1], 3)
    assert rho[0] == pytest.approx(7.0 / 11.0, rel=1e-10)
    with pytest.raises(ValueError):
        rlen.ar2_rlen(1.5, 0.2)


def test_kernel_surface():
    assert rlen.base_kernel_eval(0.0) == 0.75
    assert rlen.jackknife_eval(0.5, 0.5, 0.1) == pytest.approx(7.5)
    assert rlen.kernel_moment(1, 0.0) == pytest.approx(-0.1875, rel=1e-10)
    consts = rlen.kernel_constants()
    assert consts["kappa"] == pytest.approx(0.6, abs=1e-8)
    assert 0.0 < consts["tau"] < 1.0


def test_matched_noise_variance():
    got = rlen.matched_noise_variance([0.8, -0.3, 0.1], [0.7, -0.3, 0.1], 0.1)
    assert got == pytest.approx(0.1168, abs=1e-4)


def test_entropy_estimation_runs_and_is_deterministic():
    series = rlen.logistic_transform(rlen.gen_series("ar", 300, seed=11, phi=[0.6], sigma2=1.0))
    a = rlen.rlen_estimate(series, m=1, h=0.15)
    b = rlen.rlen_estimate(series, m=1, h=0.15)
    assert a["value"] == b["value"]
    assert 1 <= a["s_count"] <= a["n"]
    sel = rlen.select_bandwidth(series, m=1)
    assert 0.0 < sel["h"] < 0.5


def test_apen_and_detection():
    assert rlen.apen([0.5] * 40, m=2, r=0.1, r_absolute=True) == pytest.approx(0.0, abs=1e-12)
    det = rlen.pelt_detect([0, 0, 0, 1, 1, 1], penalty=0.1, min_seg=1)
    assert det["changepoints"] == [4]
    dk = rlen.dp_detect_k([0, 0, 1, 1, 2, 2], K=2, min_seg=1)
    assert dk["changepoints"] == [3, 5]
    t, df, p = rlen.welch_t_test([1.0, 2.0, 3.0], [1.0, 2.0, 3.0])
    assert t == 0.0 and p == 1.0


def test_case_matrix_and_profile():
    cols, cp = rlen.build_case_matrix("case1", seed=3)
    assert cp == 31
    assert len(cols) == 100
    assert len(cols[0]) == 400
    assert all(0.0 < v < 1.0 for v in cols[0])
    values, bandwidths = rlen.entropy_profile(cols[:6], m=2)
    assert len(values) == 6
    assert all(0.0 < h < 0.5 for h in bandwidths)


def test_lag_selection_small():
    cols = [
        rlen.logistic_transform(rlen.gen_series("ar", 150, seed=s, phi=[0.7], sigma2=1.0))
        for s in (1, 2, 3)
    ]
    m_hat, bic_bar = rlen.select_lag(cols, M=3)
    assert 1 <= m_hat <= 3
    assert len(bic_bar) == 3


def test_theory_constants():
    t = rlen.theory_constants(m=1, h=0.5, n=101)
    assert t["d0"] == pytest.approx(0.0144, rel=1e-10)
    assert t["sigma_star2"] > 0.0
    assert 0.0 < t["tau"] < 1.0


def test_window_extraction():
    series = [5.0, 4.0, 2.0, 2.0, 2.0, 7.0, 1.0]
    start, window = rlen.extract_min_variance_window(series, 3)
    assert start == 2
    assert window == [2.0, 2.0, 2.0]
