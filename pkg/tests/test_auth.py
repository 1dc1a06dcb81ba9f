import math

import numpy as np
import pytest

from covertauth import arrays, auth, ncx2


def test_profile_zero_gain_channel():
    ch = arrays.ChannelRealization(gain=0.0, aoa=0.3, aod=0.1,
                                   tx_coupling=np.eye(16, dtype=complex),
                                   rx_coupling=np.eye(8, dtype=complex))
    prof = auth.noncentrality_profile(ch, arrays.build_codebook(16, 4),
                                      arrays.build_codebook(8, 2), 4, 0.5, 1.0)
    np.testing.assert_array_equal(prof.noncentralities, np.zeros(8))


def test_profile_matches_effective_gain_oracle():
    rng = np.random.default_rng(21)
    c_t = arrays.mc_matrix(arrays.sample_coupling(arrays.ArrayModel(16, 4, 0.1), rng), 16)
    c_r = arrays.mc_matrix(arrays.sample_coupling(arrays.ArrayModel(8, 4, 0.1), rng), 8)
    ch = arrays.ChannelRealization(gain=0.8 - 0.3j, aoa=0.4, aod=-0.7,
                                   tx_coupling=c_t, rx_coupling=c_r)
    tx_cb, rx_cb = arrays.build_codebook(16, 4), arrays.build_codebook(8, 3)
    n, p, sn2 = 5, 0.3, 2.0
    prof = auth.noncentrality_profile(ch, tx_cb, rx_cb, n, p, sn2)
    for i in range(4):
        for j in range(3):
            expect = 2 * n * p * arrays.effective_gain(ch, rx_cb.codewords[j],
                                                       tx_cb.codewords[i]) / sn2
            assert abs(prof.noncentralities[arrays.pair_index(i, j, 3)] - expect) < 1e-9


def test_test_statistic_unit_energy():
    n, sn2 = 4, 0.5
    y = np.array([math.sqrt(n * sn2 / 2.0)])
    assert abs(auth.test_statistic(y, np.array([1.0]), n, sn2) - 1.0) < 1e-12
    assert auth.test_statistic(np.zeros(3), np.full(3, 1 / 3), n, sn2) == 0.0


def test_test_statistic_direct_sum_oracle():
    rng = np.random.default_rng(5)
    y = rng.standard_normal(6) + 1j * rng.standard_normal(6)
    w = rng.uniform(0.1, 1.0, 6)
    expect = sum(w[i] * 2 * abs(y[i]) ** 2 / (3 * 0.7) for i in range(6))
    assert abs(auth.test_statistic(y, w, 3, 0.7) - expect) < 1e-12


def test_test_statistic_length_mismatch():
    with pytest.raises(ValueError):
        auth.test_statistic(np.zeros(3), np.zeros(4), 1, 1.0)


def test_pf_pd_threshold_limits():
    h0 = auth.HypothesisProfile(np.array([1.0, 2.0]))
    h1 = auth.HypothesisProfile(np.array([4.0, 5.0]))
    w = np.array([0.5, 0.5])
    assert auth.pf_pd_theoretical(w, h0, h1, -1e9) == (1.0, 1.0)
    assert auth.pf_pd_theoretical(w, h0, h1, 1e9) == (0.0, 0.0)


def test_pf_single_central_beam_is_exponential():
    h0 = auth.HypothesisProfile(np.array([0.0]))
    h1 = auth.HypothesisProfile(np.array([3.0]))
    for tau in (1.0, 4.6, 9.0):
        pf, _ = auth.pf_pd_theoretical(np.array([1.0]), h0, h1, tau)
        assert abs(pf - math.exp(-tau / 2)) < 1e-9


def test_calibrate_threshold_analytic_case():
    h0 = auth.HypothesisProfile(np.array([0.0]))
    tau = auth.calibrate_threshold(np.array([1.0]), h0, 0.1)
    assert abs(tau - (-2.0 * math.log(0.1))) < 1e-8


def test_calibrate_threshold_round_trip_and_monotone():
    h0 = auth.HypothesisProfile(np.array([1.0, 0.2, 4.0, 0.0]))
    h1 = auth.HypothesisProfile(np.array([2.0, 1.0, 9.0, 0.5]))
    w = np.array([0.2, 0.3, 0.4, 0.1])
    taus = []
    for target in (0.3, 0.1, 0.02):
        tau = auth.calibrate_threshold(w, h0, target)
        pf, _ = auth.pf_pd_theoretical(w, h0, h1, tau)
        assert abs(pf - target) < 1e-8
        taus.append(tau)
    assert taus[0] < taus[1] < taus[2]


def test_calibrate_threshold_rejects_bad_target():
    h0 = auth.HypothesisProfile(np.array([1.0]))
    with pytest.raises(ValueError):
        auth.calibrate_threshold(np.array([1.0]), h0, 0.0)


def test_decide_rules():
    assert auth.decide(5.0, 4.6) == auth.ADVERSARY
    assert auth.decide(4.6, 4.6) == auth.LEGITIMATE
    assert auth.decide(0.0, 4.6) == auth.LEGITIMATE


def test_decide_scale_covariance():
    rng = np.random.default_rng(3)
    w = rng.uniform(0.1, 1.0, 5)
    y = rng.standard_normal(5) + 1j * rng.standard_normal(5)
    t = auth.test_statistic(y, w, 4, 1.0)
    tau = 3.0
    for c in (0.1, 2.5, 40.0):
        t_scaled = auth.test_statistic(y, c * w, 4, 1.0)
        assert auth.decide(t_scaled, c * tau) == auth.decide(t, tau)


def test_optimize_weights_single_beam_forced():
    h0 = auth.HypothesisProfile(np.array([0.0]))
    h1 = auth.HypothesisProfile(np.array([5.0]))
    model = auth.optimize_weights(h0, h1, 0.1)
    np.testing.assert_array_equal(model.weights, [1.0])
    assert abs(model.pf - 0.1) < 1e-8


def test_optimize_weights_symmetric_profiles_stay_uniform():
    h0 = auth.HypothesisProfile(np.array([1.0, 1.0]))
    h1 = auth.HypothesisProfile(np.array([4.0, 4.0]))
    model = auth.optimize_weights(h0, h1, 0.1)
    np.testing.assert_allclose(model.weights, [0.5, 0.5], atol=1e-6)


@pytest.mark.parametrize("big_l", [2, 3])
def test_optimize_weights_matches_simplex_grid(big_l):
    rng = np.random.default_rng(40 + big_l)
    h0 = auth.HypothesisProfile(rng.uniform(0.0, 4.0, big_l))
    h1 = auth.HypothesisProfile(h0.noncentralities + rng.uniform(0.5, 6.0, big_l))
    model = auth.optimize_weights(h0, h1, 0.1)
    best = -1.0
    steps = np.arange(0.01, 1.0, 0.01)
    if big_l == 2:
        grid = ([w, 1.0 - w] for w in steps)
    else:
        grid = ([w1, w2, 1.0 - w1 - w2] for w1 in steps for w2 in steps
                if 1.0 - w1 - w2 >= 0.01 - 1e-12)
    for w in grid:
        best = max(best, auth._pd_at_target(np.asarray(w), h0, h1, 0.1))
    assert model.pd >= best - 1e-3


def test_optimize_weights_never_worse_than_uniform():
    rng = np.random.default_rng(99)
    for _ in range(20):
        big_l = int(rng.integers(2, 9))
        lam0 = rng.uniform(0.0, 6.0, big_l)
        lam1 = lam0 + rng.uniform(0.0, 8.0, big_l)
        h0, h1 = auth.HypothesisProfile(lam0), auth.HypothesisProfile(lam1)
        model = auth.optimize_weights(h0, h1, 0.1, n_restarts=1)
        uniform_pd = auth._pd_at_target(np.full(big_l, 1.0 / big_l), h0, h1, 0.1)
        assert model.pd >= uniform_pd - 1e-9


def test_authmodel_rejects_bad_weights():
    approx = ncx2.quadform_approx([0.5, 0.5], [1.0, 2.0])
    with pytest.raises(ValueError):
        auth.AuthModel(weights=np.array([0.7, 0.7]), threshold=1.0,
                       approx_h0=approx, approx_h1=approx, pf=0.1, pd=0.5)
