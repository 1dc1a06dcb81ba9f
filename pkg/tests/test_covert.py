import math

import numpy as np
import pytest

from covertauth import arrays, covert, ncx2

SIGMA_N2 = 10 ** 0.6          # kappa_n = -6 dB, unit gain
SIGMA_E2 = 2 * 10 ** 1.5      # kappa_e = -15 dB, gain variance 2


def desk_problem(gamma=20.0, epsilon=0.2, big_l=128, sidelobe=None, **kw):
    defaults = dict(gamma=gamma, epsilon=epsilon, sigma_n2=SIGMA_N2,
                    sigma_e2=SIGMA_E2, alpha2=1.0, main_rx=8.0, main_tx=16.0,
                    n_total=5210, n_max=64, p_max=1.0, big_l=big_l,
                    sidelobe=sidelobe)
    defaults.update(kw)
    return covert.CovertProblem(**defaults)


def test_gamma_const_zero_channel():
    cb = arrays.build_codebook(8, 4)
    assert covert.gamma_const(np.zeros(8, dtype=complex), 0.0, cb) == 0.0


def test_gamma_const_error_bound_only():
    cb = arrays.build_codebook(8, 4)
    got = covert.gamma_const(np.zeros(8, dtype=complex), 0.1, cb)
    assert abs(got - 0.01 * 4) < 1e-12


def test_gamma_const_direct_sum_oracle():
    rng = np.random.default_rng(8)
    cb = arrays.build_codebook(16, 6)
    h = rng.standard_normal(16) + 1j * rng.standard_normal(16)
    expect = sum((abs(np.dot(h.conj(), w)) + 0.3 * np.linalg.norm(w)) ** 2
                 for w in cb.codewords)
    assert abs(covert.gamma_const(h, 0.3, cb) - expect) < 1e-12


def test_kl_divergence_vanishes_without_power():
    cb = arrays.build_codebook(8, 4)
    h = np.ones(8, dtype=complex)
    assert covert.kl_divergence(1e-300, 4, h, cb, 1.0) < 1e-290


def test_kl_divergence_orthogonal_channel():
    w = np.zeros(4, dtype=complex)
    w[0] = 1.0
    h = np.array([0.0, 1.0, 0.0, 0.0], dtype=complex)
    assert covert.kl_divergence(0.5, 4, h, w[None, :], 1.0) == 0.0


def test_kl_divergence_log_likelihood_sampling_oracle():
    rng = np.random.default_rng(12)
    cb = arrays.build_codebook(8, 5)
    h = (rng.standard_normal(8) + 1j * rng.standard_normal(8)) / 4.0
    p, n, se2 = 0.4, 3, 2.0
    kl = covert.kl_divergence(p, n, h, cb, se2)
    # sample E_{P0}[log(P0/P1)] directly
    mu = n * math.sqrt(p) * (cb.codewords @ h.conj())
    m = 100_000
    y = math.sqrt(n * se2 / 2) * (rng.standard_normal((m, 5)) + 1j * rng.standard_normal((m, 5)))
    log_ratio = (np.sum(np.abs(y - mu) ** 2, axis=1) - np.sum(np.abs(y) ** 2, axis=1)) / (n * se2)
    assert abs(log_ratio.mean() - kl) < 3 * log_ratio.std() / math.sqrt(m)


def test_covert_rate_boundary_cases():
    prob = desk_problem()
    assert covert.covert_rate(0.0, 4, prob) == 0.0
    assert covert.covert_rate(0.5, prob.n_total, prob) == 0.0


def test_covert_rate_composition_oracle():
    prob = desk_problem()
    p, n = 0.2, 6
    lam = 2 * n * p * prob.alpha2 * prob.main_rx * prob.main_tx / prob.sigma_n2
    expect = ((1 - n / prob.n_total) * ncx2.pa_closed_form(prob.big_l, lam)
              * math.log2(1 + prob.alpha2 * n * p * prob.main_rx * prob.main_tx / prob.sigma_n2))
    assert abs(covert.covert_rate(p, n, prob) - expect) < 1e-12


def test_update_nu_cases():
    prob = desk_problem(gamma=10.0, epsilon=0.2)
    budget = prob.budget
    # slack constraint at nu = 0 stays at the boundary
    assert covert.update_nu(0.0, 0.1, 0.001, 1, prob) == 0.0
    # exactly met constraint leaves nu unchanged
    p_star = budget / (4 * prob.gamma)
    assert abs(covert.update_nu(0.7, 0.1, p_star, 4, prob) - 0.7) < 1e-12
    # violation increases nu by eta * violation
    got = covert.update_nu(0.5, 0.2, 1.0, 8, prob)
    assert abs(got - (0.5 + 0.2 * (8 * prob.gamma - budget))) < 1e-12


def test_solve_p_subproblem_grid_oracle():
    prob = desk_problem()
    for p_t, n, nu in ((0.3, 4, 0.05), (0.8, 1, 0.0), (0.05, 16, 0.4)):
        got = covert.solve_p_subproblem((p_t, n, nu), prob, 1.0)
        slope = covert._dlog_pa_dp(p_t, n, prob)

        def surrogate(p):
            return (covert._fc_p(p, n, nu, prob) + slope * (p - p_t) - (p - p_t) ** 2)

        grid = np.linspace(prob.p_min, prob.p_max, 1000)
        assert surrogate(got) >= max(surrogate(p) for p in grid) - 1e-6


def test_solve_p_proximal_limit():
    prob = desk_problem()
    got = covert.solve_p_subproblem((0.4, 4, 0.0), prob, 1e9)
    assert abs(got - 0.4) < 1e-3


def test_solve_p_penalty_dominates():
    prob = desk_problem()
    got = covert.solve_p_subproblem((0.4, 4, 1e6), prob, 1.0)
    assert got < 0.01


def test_round_budget_rule():
    assert covert.round_budget(3.5, 64) == 4
    assert covert.round_budget(3.49, 64) == 3
    assert covert.round_budget(0.2, 64) == 1
    assert covert.round_budget(80.0, 64) == 64


def test_solve_n_fixed_point_near_integer_optimum():
    # nu = 0 and negligible coupling: iterating the budget subproblem must
    # land within one unit of the exhaustive integer argmax
    prob = desk_problem(gamma=1e-9, epsilon=0.2, p_max=0.02)
    p = 0.02
    n = 4
    for _ in range(60):
        n_next = covert.solve_n_subproblem((p, float(n), 0.0), prob, 1.0)
        if n_next == n:
            break
        n = n_next
    rates = [covert.covert_rate(p, k, prob) for k in range(1, prob.n_max + 1)]
    best = int(np.argmax(rates)) + 1
    assert abs(n - best) <= 1


def test_solve_n_overhead_removal_weakly_increases():
    prob_small = desk_problem(gamma=1e-9, n_total=200, n_max=64, p_max=0.02)
    prob_large = desk_problem(gamma=1e-9, n_total=50_000, n_max=64, p_max=0.02)
    state = (0.02, 8.0, 0.0)
    assert (covert.solve_n_subproblem(state, prob_large, 1.0)
            >= covert.solve_n_subproblem(state, prob_small, 1.0))


def _grid_best(prob, n_points=200):
    n_vals = np.arange(1, prob.n_max + 1)
    p_vals = np.linspace(prob.p_min, prob.p_max, n_points)
    rates = covert.rate_grid(prob, n_vals, p_vals)
    feas = np.outer(n_vals, p_vals) * prob.gamma <= prob.budget + 1e-9
    rates = np.where(feas, rates, -np.inf)
    i, j = np.unravel_index(np.argmax(rates), rates.shape)
    return rates[i, j], int(n_vals[i]), float(p_vals[j])


def test_optimize_no_eavesdropper_reaches_rate_optimum():
    prob = desk_problem(gamma=0.0)
    sol = covert.optimize_covert(prob)
    assert sol.p_star == prob.p_max
    rates = covert.rate_grid(prob, np.arange(1, prob.n_max + 1), np.array([prob.p_max]))
    assert sol.n_star == int(np.argmax(rates[:, 0])) + 1
    assert sol.feasible and sol.converged


def test_optimize_beats_grid_on_desk_instance():
    prob = desk_problem()
    sol = covert.optimize_covert(prob)
    best, _, _ = _grid_best(prob)
    assert sol.rate >= 0.98 * best
    assert sol.feasible
    assert sol.n_star * sol.p_star * prob.gamma <= prob.budget + 1e-9
    assert abs(sol.nu_star * (sol.n_star * sol.p_star * prob.gamma - prob.budget)) <= 1e-4
    assert sol.iterations <= 100


def test_optimize_monotone_ascent_up_to_rounding():
    sol = covert.optimize_covert(desk_problem())
    for rec in sol.ascent:
        assert rec.after_continuous >= rec.before - 1e-6


def test_optimize_reports_infeasible():
    prob = desk_problem(gamma=1e12, epsilon=1e-3, p_min=0.5, p_max=1.0)
    sol = covert.optimize_covert(prob)
    assert not sol.feasible
    assert sol.rate == 0.0


def test_optimize_power_monotone_in_epsilon():
    sols = [covert.optimize_covert(desk_problem(epsilon=eps)) for eps in (0.1, 0.2, 0.3)]
    ps = [s.p_star for s in sols]
    rates = [s.rate for s in sols]
    assert ps[0] <= ps[1] <= ps[2]
    assert rates[0] <= rates[1] + 1e-9 and rates[1] <= rates[2] + 1e-9


def test_optimize_sidelobe_never_beats_ideal():
    side = covert.SidelobeSpec.from_leak_ratios(16, 8, 0.00741, 0.01587)
    for eps in (0.15, 0.3):
        ideal = covert.optimize_covert(desk_problem(epsilon=eps))
        leaky = covert.optimize_covert(
            desk_problem(epsilon=eps, main_tx=14.4, main_rx=7.2, sidelobe=side))
        assert leaky.rate <= ideal.rate + 1e-9


def test_rate_grid_rejects_sidelobe():
    side = covert.SidelobeSpec.from_leak_ratios(16, 8, 0.01, 0.01)
    with pytest.raises(ValueError):
        covert.rate_grid(desk_problem(sidelobe=side), [1, 2], [0.1])
