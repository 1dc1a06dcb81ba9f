import os
from dataclasses import replace

import numpy as np
import pytest

from covertauth import auth, covert, ncx2, simulate
from covertauth.experiments import run_experiment
from covertauth.simulate import ScenarioConfig


def small_cfg(**kw):
    defaults = dict(trials=20_000)
    defaults.update(kw)
    return ScenarioConfig(**defaults)


def test_ba_two_beams_symmetric_tie():
    emp = simulate.ba_success_empirical(2, 0.0, 40_000, 1)
    assert abs(emp - 0.5) < 0.01


def test_ba_matches_closed_form():
    emp = simulate.ba_success_empirical(4, 10.0, 100_000, 2)
    assert abs(emp - ncx2.pa_closed_form(4, 10.0)) < 0.01


def test_ba_group_counts_validated():
    with pytest.raises(ValueError):
        simulate.ba_success_empirical(8, 1.0, 100, 0, groups=((3, 0.5),))


def test_run_ba_trials_quantized_report_passes():
    rep = simulate.run_ba_trials(small_cfg(), "quantized")
    assert rep.passed
    assert rep.trials == 20_000


def test_run_ba_trials_rejects_unknown_mode():
    with pytest.raises(ValueError):
        simulate.run_ba_trials(small_cfg(), "hybrid")


def test_ba_success_improves_with_snr():
    cfg = small_cfg()
    vals = []
    for kn in (-8.0, -4.0, 0.0):
        c = replace(cfg, kappa_n_db=kn)
        gm = simulate.ideal_gain_model(c)
        lam = 2 * 0.02 * 4 * gm.main_rx * gm.main_tx / c.sigma_n2
        vals.append(simulate.ba_success_empirical(c.big_l, lam, c.trials, c.master_seed))
    assert vals[0] < vals[1] < vals[2]


def test_auth_identical_profiles_give_chance_roc():
    cfg = small_cfg()
    lam = np.linspace(0.5, 3.0, 8)
    prof = auth.HypothesisProfile(lam)
    w = np.full(8, 1.0 / 8)
    taus, pf_e, pd_e, pf_t, pd_t = simulate.run_auth_trials(cfg, w, profiles=(prof, prof))
    assert np.max(np.abs(pf_t - pd_t)) < 1e-12
    assert np.max(np.abs(pf_e - pd_e)) < 0.02


def test_auth_trials_default_path_solves_design():
    cfg = small_cfg(trials=4000)
    w = np.full(cfg.big_l, 1.0 / cfg.big_l)
    taus, pf_e, pd_e, pf_t, pd_t = simulate.run_auth_trials(cfg, w)
    assert len(taus) == len(pf_e) == len(pd_e) == len(pf_t) == len(pd_t)
    assert np.all((pf_e >= 0) & (pf_e <= 1)) and np.all((pd_t >= 0) & (pd_t <= 1))


def test_auth_trials_budget_offset_theory_tracks_simulation():
    # impostor that cannot match the enrolled training budget exactly
    cfg = small_cfg(trials=30_000, eve_n_offset=1.5, eve_p_offset=1.2)
    w = np.full(cfg.big_l, 1.0 / cfg.big_l)
    _, pf_e, pd_e, pf_t, pd_t = simulate.run_auth_trials(cfg, w)
    gap = max(np.max(np.abs(pf_e - pf_t)), np.max(np.abs(pd_e - pd_t)))
    assert gap < 0.05


def test_auth_empirical_roc_monotone():
    cfg = small_cfg()
    scen = simulate.build_scenario(cfg)
    sol = covert.optimize_covert(simulate.covert_problem(cfg, scen.gamma),
                                 simulate.solver_options(cfg))
    profs = simulate.hypothesis_profiles(scen, sol.p_star, sol.n_star)
    w = np.full(cfg.big_l, 1.0 / cfg.big_l)
    taus, pf_e, pd_e, _, _ = simulate.run_auth_trials(cfg, w, profiles=profs)
    order = np.argsort(taus)
    assert np.all(np.diff(pf_e[order]) <= 1e-12)
    assert np.all(np.diff(pd_e[order]) <= 1e-12)


def test_optimized_weights_beat_uniform_at_operating_point():
    cfg = small_cfg()
    scen = simulate.build_scenario(cfg)
    sol = covert.optimize_covert(simulate.covert_problem(cfg, scen.gamma),
                                 simulate.solver_options(cfg))
    h0, h1 = simulate.hypothesis_profiles(scen, sol.p_star, sol.n_star)
    model = auth.optimize_weights(h0, h1, 0.1, n_restarts=0, maxiter=40)
    uniform = np.full(cfg.big_l, 1.0 / cfg.big_l)
    tau_u = auth.calibrate_threshold(uniform, h0, 0.1)
    t1u = simulate._simulate_statistics(h1, uniform, cfg.trials, cfg.master_seed, 30)
    t1o = simulate._simulate_statistics(h1, model.weights, cfg.trials, cfg.master_seed, 31)
    assert np.mean(t1o > model.threshold) > np.mean(t1u > tau_u)


def test_eve_detection_blind_without_power():
    cfg = small_cfg(trials=10_000)
    scen = simulate.build_scenario(cfg)
    sol = covert.optimize_covert(simulate.covert_problem(cfg, scen.gamma),
                                 simulate.solver_options(cfg))
    silent = covert.CovertSolution(p_star=1e-12, n_star=1, nu_star=0.0, rate=0.0, pa=0.0,
                                   trace=[], ascent=[], feasible=True, converged=True,
                                   iterations=0, kkt_residual=0.0)
    xi, _, kl = simulate.run_eve_detection(cfg, silent, scen)
    assert xi > 0.97 and kl < 1e-10


def test_eve_detection_respects_pinsker_and_monotone_power():
    cfg = small_cfg()
    scen = simulate.build_scenario(cfg)
    sol = covert.optimize_covert(simulate.covert_problem(cfg, scen.gamma),
                                 simulate.solver_options(cfg))
    xi, pinsker, kl = simulate.run_eve_detection(cfg, sol, scen)
    assert kl <= 2 * cfg.epsilon ** 2 + 1e-9
    assert xi >= 1.0 - cfg.epsilon - 0.02
    # quadrupling the power strictly helps the eavesdropper
    strong = replace(sol, p_star=min(4 * sol.p_star, cfg.p_max))
    xi_strong, _, _ = simulate.run_eve_detection(cfg, strong, scen)
    assert xi_strong < xi


def test_worst_case_scenario_shares_geometry():
    cfg = small_cfg()
    scen = simulate.build_scenario(cfg, worst_case=True)
    assert scen.eve.aoa == scen.alice.aoa
    assert scen.eve.aod == scen.alice.aod
    assert scen.eve.gain == scen.alice.gain
    assert not np.allclose(scen.eve.tx_coupling, scen.alice.tx_coupling)


def test_validation_suite_passes_at_modest_trials():
    reports = simulate.validation_suite(small_cfg())
    for rep in reports:
        assert rep.passed, rep.line()


def test_seed_changes_draws():
    a = simulate.build_scenario(small_cfg())
    b = simulate.build_scenario(small_cfg(master_seed=61))
    assert a.gamma != b.gamma


def test_experiment_csv_deterministic_across_threads(tmp_path):
    cfg = small_cfg(trials=4000)
    old = os.environ.get("COVERTAUTH_THREADS")
    try:
        os.environ["COVERTAUTH_THREADS"] = "1"
        p1 = run_experiment("covert-sweep-snr", cfg, tmp_path / "a")
        os.environ["COVERTAUTH_THREADS"] = "5"
        p2 = run_experiment("covert-sweep-snr", cfg, tmp_path / "b")
    finally:
        if old is None:
            os.environ.pop("COVERTAUTH_THREADS", None)
        else:
            os.environ["COVERTAUTH_THREADS"] = old
    assert p1.read_bytes() == p2.read_bytes()


def test_unknown_experiment_rejected(tmp_path):
    with pytest.raises(KeyError):
        run_experiment("mystery", small_cfg(), tmp_path)


def test_beam_pattern_experiment_schema(tmp_path):
    path = run_experiment("beam-pattern", small_cfg(), tmp_path)
    lines = path.read_text().splitlines()
    assert lines[0] == "angle_deg,ideal_mag,alice_mag,eve_mag"
    assert len(lines) == 182  # header + 181 angles
