"""Seeded Monte Carlo harness.

Validates every closed form against direct simulation and produces the CSV
experiment artifacts.  Randomness is counter-based: every consumer derives
its generator from (master_seed, stream, block), trials are processed in
fixed-size blocks, and reductions run in block order, so results are
byte-identical regardless of the worker-thread count.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import arrays, auth, covert, ncx2

BLOCK = 8192

# stream tags for counter-based generator derivation
_S_COUPLING = 0
_S_GAINS = 1
_S_CSI_ERROR = 2
_S_BA = 8
_S_AUTH_H0 = 9
_S_AUTH_H1 = 10
_S_EVE_D0 = 11
_S_EVE_D1 = 12
_S_QUADFORM = 13


@dataclass(frozen=True)
class ScenarioConfig:
    """Physical and algorithmic parameters of one experiment.

    Angles are degrees.  Pre-beamforming SNRs kappa_n = E|alpha_0|^2/sigma_n^2
    and kappa_e = E|alpha_e|^2/sigma_e^2 fix the noise variances.
    """

    n_t: int = 32
    n_r: int = 16
    l_t: int = 16
    l_r: int = 8
    n_total: int = 5210
    coupling_taps: int = 4
    theta_alice_deg: float = 30.0
    phi_alice_deg: float = 60.0
    theta_eve_deg: float = 15.0
    phi_eve_deg: float = 18.0
    phi_alice_eve_deg: float = 18.0
    coupling_strength_alice: float = 0.1
    coupling_strength_eve: float = 0.4
    coupling_strength_rx: float = 0.1
    alice_gain_var: float = 1.0
    eve_gain_var: float = 2.0
    kappa_n_db: float = -6.0
    kappa_e_db: float = -15.0
    epsilon: float = 0.2
    h_error_bound: float = 0.6
    p_max: float = 1.0
    p_min: float = 1e-6
    n_max: int = 64
    eta: float = 0.1
    tau_p: float = 1.0
    tau_n: float = 1.0
    tol: float = 1e-5
    t_max: int = 100
    pf_target: float = 0.1
    sidelobe_beta: float = 0.2
    eve_n_offset: float = 1.0
    eve_p_offset: float = 1.0
    trials: int = 100_000
    master_seed: int = 60

    @property
    def big_l(self) -> int:
        return self.l_t * self.l_r

    @property
    def sigma_n2(self) -> float:
        return self.alice_gain_var / 10.0 ** (self.kappa_n_db / 10.0)

    @property
    def sigma_e2(self) -> float:
        return self.eve_gain_var / 10.0 ** (self.kappa_e_db / 10.0)


def rng_for(seed: int, stream: int, block: int = 0) -> np.random.Generator:
    """Generator for one (stream, block) cell of the master seed."""
    return np.random.default_rng(np.random.SeedSequence(entropy=seed, spawn_key=(stream, block)))


def thread_count() -> int:
    env = os.environ.get("COVERTAUTH_THREADS")
    if env:
        return max(1, int(env))
    return min(8, os.cpu_count() or 1)


def _map_blocks(kernel, trials: int):
    """Run kernel(block_index, size) over the trial blocks, in parallel, and
    return the results in block order."""
    jobs = []
    start = 0
    idx = 0
    while start < trials:
        jobs.append((idx, min(BLOCK, trials - start)))
        start += BLOCK
        idx += 1
    workers = thread_count()
    if workers == 1 or len(jobs) == 1:
        return [kernel(i, s) for i, s in jobs]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        futures = [pool.submit(kernel, i, s) for i, s in jobs]
        return [f.result() for f in futures]


# -- scenario assembly -------------------------------------------------------


@dataclass(frozen=True)
class Scenario:
    """Drawn channel state shared by one experiment: codebooks, per-device
    couplings, the two hypothesis channels, and the eavesdropper CSI."""

    cfg: ScenarioConfig
    tx_codebook: arrays.Codebook
    rx_codebook: arrays.Codebook
    alice: arrays.ChannelRealization
    eve: arrays.ChannelRealization
    h_eve_true: np.ndarray
    h_eve_hat: np.ndarray
    gamma: float


def pair_codewords(tx_codebook: arrays.Codebook, l_r: int) -> np.ndarray:
    """Transmit codeword of every beam pair, in pair_index order (each
    codeword repeats once per receive beam)."""
    return np.repeat(tx_codebook.codewords, l_r, axis=0)


def build_scenario(cfg: ScenarioConfig, worst_case: bool = False) -> Scenario:
    """Draw couplings (once per device), channel gains and the eavesdropper
    CSI from the master seed.  In the worst case the impostor shares the
    legitimate geometry and gain and differs only in coupling."""
    tx_cb = arrays.build_codebook(cfg.n_t, cfg.l_t)
    rx_cb = arrays.build_codebook(cfg.n_r, cfg.l_r)

    tx_alice = arrays.ArrayModel(cfg.n_t, cfg.coupling_taps, cfg.coupling_strength_alice)
    tx_eve = arrays.ArrayModel(cfg.n_t, cfg.coupling_taps, cfg.coupling_strength_eve)
    rx_bob = arrays.ArrayModel(cfg.n_r, cfg.coupling_taps, cfg.coupling_strength_rx)

    c_alice = arrays.mc_matrix(arrays.sample_coupling(tx_alice, rng_for(cfg.master_seed, _S_COUPLING, 0)), cfg.n_t)
    c_eve = arrays.mc_matrix(arrays.sample_coupling(tx_eve, rng_for(cfg.master_seed, _S_COUPLING, 1)), cfg.n_t)
    c_bob = arrays.mc_matrix(arrays.sample_coupling(rx_bob, rng_for(cfg.master_seed, _S_COUPLING, 2)), cfg.n_r)

    gains = rng_for(cfg.master_seed, _S_GAINS)
    draw = lambda var: math.sqrt(var / 2.0) * complex(gains.standard_normal(), gains.standard_normal())
    alpha0 = draw(cfg.alice_gain_var)
    alpha1 = draw(cfg.eve_gain_var)
    alpha_e = draw(cfg.eve_gain_var)

    alice = arrays.ChannelRealization(
        gain=alpha0, aoa=math.radians(cfg.theta_alice_deg), aod=math.radians(cfg.phi_alice_deg),
        tx_coupling=c_alice, rx_coupling=c_bob)
    if worst_case:
        eve = arrays.ChannelRealization(
            gain=alpha0, aoa=alice.aoa, aod=alice.aod,
            tx_coupling=c_eve, rx_coupling=c_bob)
    else:
        eve = arrays.ChannelRealization(
            gain=alpha1, aoa=math.radians(cfg.theta_eve_deg), aod=math.radians(cfg.phi_eve_deg),
            tx_coupling=c_eve, rx_coupling=c_bob)

    # Alice -> Eve channel row with Alice's transmit coupling and a unit-norm
    # array response (array gain absorbed into alpha_e); the estimate sits at
    # distance h_error_bound from the truth (worst-case CSI error)
    at = c_alice @ arrays.steering_vector(cfg.n_t, math.radians(cfg.phi_alice_eve_deg))
    h_true = alpha_e * at.conj() / np.linalg.norm(at)
    err_rng = rng_for(cfg.master_seed, _S_CSI_ERROR)
    delta = err_rng.standard_normal(cfg.n_t) + 1j * err_rng.standard_normal(cfg.n_t)
    delta *= cfg.h_error_bound / np.linalg.norm(delta)
    h_hat = h_true - delta
    gamma = covert.gamma_const(h_hat, cfg.h_error_bound, pair_codewords(tx_cb, cfg.l_r))

    return Scenario(cfg=cfg, tx_codebook=tx_cb, rx_codebook=rx_cb, alice=alice, eve=eve,
                    h_eve_true=h_true, h_eve_hat=h_hat, gamma=gamma)


def ideal_gain_model(cfg: ScenarioConfig) -> arrays.GainModel:
    return arrays.GainModel(main_tx=float(cfg.l_t), main_rx=float(cfg.l_r), mode="ideal")


def sidelobe_gain_model(cfg: ScenarioConfig) -> arrays.GainModel:
    """Main-lobe directivity fraction grows with the array size at a fixed
    codebook size (larger arrays control their side lobes better); the leak
    levels then follow from power conservation."""
    eta_t = min(0.999, max(0.5, 1.0 - cfg.sidelobe_beta * cfg.l_t / cfg.n_t))
    eta_r = min(0.999, max(0.5, 1.0 - cfg.sidelobe_beta * cfg.l_r / cfg.n_r))
    main_tx = eta_t * cfg.l_t
    main_rx = eta_r * cfg.l_r
    side_tx, side_rx = arrays.sidelobe_gains(cfg.l_t, main_tx, cfg.l_r, main_rx)
    return arrays.GainModel(main_tx=main_tx, main_rx=main_rx,
                            side_tx=side_tx, side_rx=side_rx, mode="sidelobe")


def covert_problem(cfg: ScenarioConfig, gamma: float, sidelobe: bool = False) -> covert.CovertProblem:
    gm = sidelobe_gain_model(cfg) if sidelobe else ideal_gain_model(cfg)
    side = None
    if sidelobe:
        side = covert.SidelobeSpec.from_leak_ratios(
            cfg.l_t, cfg.l_r, gm.side_tx / gm.main_tx, gm.side_rx / gm.main_rx)
    return covert.CovertProblem(
        gamma=gamma, epsilon=cfg.epsilon, sigma_n2=cfg.sigma_n2, sigma_e2=cfg.sigma_e2,
        alpha2=cfg.alice_gain_var, main_rx=gm.main_rx, main_tx=gm.main_tx,
        n_total=cfg.n_total, n_max=cfg.n_max, p_max=cfg.p_max, p_min=cfg.p_min,
        big_l=cfg.big_l, sidelobe=side)


def solver_options(cfg: ScenarioConfig) -> covert.SolverOptions:
    return covert.SolverOptions(eta=cfg.eta, tau_p=cfg.tau_p, tau_n=cfg.tau_n,
                                t_max=cfg.t_max, tol=cfg.tol)


def hypothesis_profiles(scen: Scenario, p: float, n: int):
    """Noncentrality profiles of the legitimate and impostor hypotheses at
    the operating point (the impostor mimics N and P up to the configured
    offsets)."""
    cfg = scen.cfg
    h0 = auth.noncentrality_profile(scen.alice, scen.tx_codebook, scen.rx_codebook,
                                    n, p, cfg.sigma_n2)
    n1 = max(1, int(round(n * cfg.eve_n_offset)))
    p1 = p * cfg.eve_p_offset
    h1 = auth.noncentrality_profile(scen.eve, scen.tx_codebook, scen.rx_codebook,
                                    n1, p1, cfg.sigma_n2)
    return h0, h1


# -- reports -----------------------------------------------------------------


@dataclass
class TrialReport:
    """One theory-versus-simulation gate.  `comparison` is "abs" for a
    two-sided match or "lower" when the theoretical value is a lower bound
    on the empirical one (within tolerance)."""

    metric: str
    theoretical: float
    empirical: float
    std_error: float
    trials: int
    tolerance: float
    comparison: str = "abs"

    @property
    def passed(self) -> bool:
        if self.comparison == "lower":
            return self.empirical >= self.theoretical - self.tolerance
        return abs(self.theoretical - self.empirical) <= self.tolerance

    def line(self) -> str:
        mark = "PASS" if self.passed else "FAIL"
        rel = "<=" if self.comparison == "lower" else "vs"
        return (f"[{mark}] {self.metric}: theory={self.theoretical:.6f} {rel} "
                f"empirical={self.empirical:.6f} (se={self.std_error:.2e}, "
                f"tol={self.tolerance:g}, trials={self.trials})")


# -- beam-alignment trials ---------------------------------------------------


def ba_success_empirical(big_l: int, lambda1: float, trials: int, seed: int,
                         groups: tuple[tuple[int, float], ...] = ()) -> float:
    """Fraction of sweeps won by the aligned pair.

    The aligned energy is chi2_2(lambda1); competitors default to central
    chi-squares, or to the (count, noncentrality) groups given (side-lobe
    misalignment events).
    """
    comp = list(groups) if groups else [(big_l - 1, 0.0)]
    if sum(c for c, _ in comp) != big_l - 1:
        raise ValueError("competitor counts must total big_l - 1")

    def kernel(idx, size):
        rng = rng_for(seed, _S_BA, idx)
        z = rng.standard_normal((size, big_l)) + 1j * rng.standard_normal((size, big_l))
        offset = 1
        means = np.zeros(big_l)
        means[0] = math.sqrt(lambda1)
        for count, lam in comp:
            means[offset:offset + count] = math.sqrt(lam)
            offset += count
        energy = np.abs(z + means) ** 2
        return int(np.sum(np.argmax(energy, axis=1) == 0))

    wins = _map_blocks(kernel, trials)
    return sum(wins) / trials


def run_ba_trials(cfg: ScenarioConfig, mode: str = "quantized",
                  p: float | None = None, n: int | None = None) -> TrialReport:
    """Empirical alignment success at the operating point versus the closed
    form.  Quantized mode reproduces the closed form's assumptions exactly;
    physical mode sweeps the real beams against per-trial channel gains and
    is compared at a loose tolerance against the gain-averaged closed form.
    """
    if mode not in ("quantized", "physical"):
        raise ValueError("mode must be 'quantized' or 'physical'")
    scen = build_scenario(cfg)
    if p is None or n is None:
        sol = covert.optimize_covert(covert_problem(cfg, scen.gamma), solver_options(cfg))
        p = sol.p_star if p is None else p
        n = sol.n_star if n is None else n

    if mode == "quantized":
        gm = ideal_gain_model(cfg)
        lam1 = 2.0 * n * p * cfg.alice_gain_var * gm.main_rx * gm.main_tx / cfg.sigma_n2
        theory = ncx2.pa_closed_form(cfg.big_l, lam1)
        emp = ba_success_empirical(cfg.big_l, lam1, cfg.trials, cfg.master_seed)
        se = math.sqrt(max(emp * (1 - emp), 1e-12) / cfg.trials)
        return TrialReport("ba-success-quantized", theory, emp, se, cfg.trials, 0.01)

    # physical: full channel matrices, gain redrawn per trial
    base = scen.alice
    unit = arrays.ChannelRealization(gain=1.0, aoa=base.aoa, aod=base.aod,
                                     tx_coupling=base.tx_coupling, rx_coupling=base.rx_coupling)
    unit_gains = arrays.pair_gains(unit, scen.tx_codebook, scen.rx_codebook)
    best = int(np.argmax(unit_gains))
    mean_scale = n * math.sqrt(p)
    noise_sd = math.sqrt(n * cfg.sigma_n2 / 2.0)

    def kernel(idx, size):
        rng = rng_for(cfg.master_seed, _S_BA, idx)
        alpha = math.sqrt(cfg.alice_gain_var / 2.0) * (
            rng.standard_normal(size) + 1j * rng.standard_normal(size))
        amp = np.abs(alpha) ** 2
        means2 = np.outer(amp, unit_gains) * mean_scale ** 2
        noise = noise_sd * (rng.standard_normal((size, cfg.big_l))
                            + 1j * rng.standard_normal((size, cfg.big_l)))
        y2 = np.abs(np.sqrt(means2) + noise) ** 2
        wins = int(np.sum(np.argmax(y2, axis=1) == best))
        lam = 2.0 * n * p * amp * unit_gains[best] / cfg.sigma_n2
        theory_sum = float(sum(ncx2.pa_survival_grid(cfg.big_l, lam)))
        return wins, theory_sum

    parts = _map_blocks(kernel, cfg.trials)
    emp = sum(w for w, _ in parts) / cfg.trials
    theory = sum(t for _, t in parts) / cfg.trials
    se = math.sqrt(max(emp * (1 - emp), 1e-12) / cfg.trials)
    return TrialReport("ba-success-physical", theory, emp, se, cfg.trials, 0.05)


# -- authentication trials ---------------------------------------------------


def _simulate_statistics(profile: auth.HypothesisProfile, weights: np.ndarray,
                         trials: int, seed: int, stream: int,
                         scale: float = 1.0) -> np.ndarray:
    """Monte Carlo draws of T = sum_l w_l Y_l with Y_l ~ scale * chi2_2(lam_l)."""
    lam = profile.noncentralities
    means = np.sqrt(lam)

    def kernel(idx, size):
        rng = rng_for(seed, stream, idx)
        z = rng.standard_normal((size, lam.size)) + 1j * rng.standard_normal((size, lam.size))
        return (scale * np.abs(z + means) ** 2) @ weights

    return np.concatenate(_map_blocks(kernel, trials))


def _budget_mismatch_scale(cfg: ScenarioConfig, n: int) -> float:
    """Energy scale N_1/N* of the impostor's statistic when its training
    budget differs from the enrolled one (the detector still normalizes by
    the enrolled budget)."""
    n1 = max(1, int(round(n * cfg.eve_n_offset)))
    return n1 / n


def run_auth_trials(cfg: ScenarioConfig, weights: np.ndarray,
                    profiles=None, taus=None, scen: Scenario | None = None,
                    p: float | None = None, n: int | None = None,
                    h1_scale: float | None = None):
    """Empirical ROC of the weighted energy detector.

    Returns (taus, pf_emp, pd_emp, pf_theory, pd_theory), each sorted by
    decreasing threshold.  `h1_scale` is the impostor's energy rescale
    (derived from the budget offset when the operating point is solved here).
    """
    if profiles is None:
        scen = scen or build_scenario(cfg)
        if p is None or n is None:
            sol = covert.optimize_covert(covert_problem(cfg, scen.gamma), solver_options(cfg))
            p, n = sol.p_star, sol.n_star
        profiles = hypothesis_profiles(scen, p, n)
        if h1_scale is None:
            h1_scale = _budget_mismatch_scale(cfg, n)
    h0, h1 = profiles
    scale1 = 1.0 if h1_scale is None else h1_scale
    weights = np.asarray(weights, dtype=float)

    t0 = _simulate_statistics(h0, weights, cfg.trials, cfg.master_seed, _S_AUTH_H0)
    t1 = _simulate_statistics(h1, weights, cfg.trials, cfg.master_seed, _S_AUTH_H1, scale=scale1)

    if taus is None:
        lo = auth.calibrate_threshold(weights, h0, 0.999)
        hi = auth.calibrate_threshold(weights, h0, 0.001)
        taus = np.linspace(lo, hi, 60)
    taus = np.asarray(taus, dtype=float)

    pf_emp = np.array([np.mean(t0 > t) for t in taus])
    pd_emp = np.array([np.mean(t1 > t) for t in taus])
    # the scaled impostor statistic is a weighted sum with weights w*scale
    approx_h0 = ncx2.quadform_approx(weights, h0.noncentralities)
    approx_h1 = ncx2.quadform_approx(weights * scale1, h1.noncentralities)
    pf_th = np.array([ncx2.weighted_sum_tail(approx_h0, t) for t in taus])
    pd_th = np.array([ncx2.weighted_sum_tail(approx_h1, t) for t in taus])
    return taus, pf_emp, pd_emp, pf_th, pd_th


# -- eavesdropper detection --------------------------------------------------


def run_eve_detection(cfg: ScenarioConfig, solution=None, scen: Scenario | None = None):
    """Empirical minimal total detection error of a likelihood-ratio
    eavesdropper that knows every parameter, at the optimized (P*, N*).

    Returns (xi_hat, pinsker_bound, kl): xi_hat should stay above the bound
    1 - sqrt(D/2) whenever the covertness constraint holds.
    """
    scen = scen or build_scenario(cfg)
    if solution is None:
        solution = covert.optimize_covert(covert_problem(cfg, scen.gamma), solver_options(cfg))
    p, n = solution.p_star, solution.n_star

    words = pair_codewords(scen.tx_codebook, cfg.l_r)
    mu = n * math.sqrt(p) * (words @ scen.h_eve_true.conj())
    kl = covert.kl_divergence(p, n, scen.h_eve_true, words, cfg.sigma_e2)
    noise_sd = math.sqrt(n * cfg.sigma_e2 / 2.0)

    def kernel_for(stream, shift):
        def kernel(idx, size):
            rng = rng_for(cfg.master_seed, stream, idx)
            y = noise_sd * (rng.standard_normal((size, mu.size))
                            + 1j * rng.standard_normal((size, mu.size)))
            if shift:
                y = y + mu
            # sufficient statistic of the known-parameter likelihood ratio
            return np.real(y @ mu.conj())
        return kernel

    u0 = np.concatenate(_map_blocks(kernel_for(_S_EVE_D0, False), cfg.trials))
    u1 = np.concatenate(_map_blocks(kernel_for(_S_EVE_D1, True), cfg.trials))

    # minimal (false alarm + missed detection) over every threshold
    order = np.argsort(np.concatenate([u0, u1]), kind="stable")
    is_d1 = np.concatenate([np.zeros(u0.size, dtype=int), np.ones(u1.size, dtype=int)])[order]
    md = np.cumsum(is_d1) / u1.size                    # Pr(U <= tau | D1)
    fa = 1.0 - np.cumsum(1 - is_d1) / u0.size          # Pr(U > tau | D0)
    xi_hat = float(min(1.0, np.min(fa + md)))
    pinsker = 1.0 - math.sqrt(kl / 2.0) if kl < 2.0 else 0.0
    return xi_hat, pinsker, kl


# -- quadratic-form tail sampling oracle ---------------------------------------


def weighted_tail_empirical(weights, noncentralities, taus, trials: int, seed: int):
    """Empirical Pr(T > tau) for the weighted chi-square sum, per tau."""
    w = np.asarray(weights, dtype=float)
    prof = auth.HypothesisProfile(np.asarray(noncentralities, dtype=float))
    t = _simulate_statistics(prof, w, trials, seed, _S_QUADFORM)
    return np.array([np.mean(t > tau) for tau in np.asarray(taus, dtype=float)])


# -- validation suite ---------------------------------------------------------


def validation_suite(cfg: ScenarioConfig) -> list[TrialReport]:
    """Every closed form against its Monte Carlo counterpart, one report per
    gate, at the configured trial count."""
    reports = []

    for big_l, lam in ((4, 10.0), (16, 5.0), (128, 20.0)):
        theory = ncx2.pa_closed_form(big_l, lam)
        emp = ba_success_empirical(big_l, lam, cfg.trials, cfg.master_seed)
        se = math.sqrt(max(emp * (1 - emp), 1e-12) / cfg.trials)
        reports.append(TrialReport(f"alignment-pa(L={big_l},lam={lam:g})",
                                   theory, emp, se, cfg.trials, 0.01))

    rng = rng_for(cfg.master_seed, _S_QUADFORM, 10_000)
    for big_l in (1, 8, 128):
        w = rng.uniform(0.2, 1.0, big_l)
        w = w / np.sum(w)
        lam = rng.uniform(0.0, 8.0, big_l)
        approx = ncx2.quadform_approx(w, lam)
        taus = [approx.mean + k * approx.stddev for k in (-1.0, 0.0, 1.0, 2.0)]
        th = np.array([ncx2.weighted_sum_tail(approx, t) for t in taus])
        emp = weighted_tail_empirical(w, lam, taus, cfg.trials, cfg.master_seed + big_l)
        worst = int(np.argmax(np.abs(th - emp)))
        se = math.sqrt(0.25 / cfg.trials)
        reports.append(TrialReport(f"weighted-tail(L={big_l})",
                                   float(th[worst]), float(emp[worst]), se,
                                   cfg.trials, 0.02))

    # coupling tap sample mean (first off-diagonal tap)
    model = arrays.ArrayModel(cfg.n_t, cfg.coupling_taps, cfg.coupling_strength_alice)
    draws = int(min(cfg.trials, 100_000))
    crng = rng_for(cfg.master_seed, _S_COUPLING, 99)
    taps = np.array([arrays.sample_coupling(model, crng)[1] for _ in range(draws)])
    se = math.sqrt(cfg.coupling_strength_alice / draws)
    reports.append(TrialReport("coupling-tap-mean", cfg.coupling_strength_alice,
                               float(np.mean(taps.real)), se, draws, 3.0 * se))

    # detector ROC gap at the default operating point
    scen = build_scenario(cfg)
    sol = covert.optimize_covert(covert_problem(cfg, scen.gamma), solver_options(cfg))
    weights = np.full(cfg.big_l, 1.0 / cfg.big_l)
    profiles = hypothesis_profiles(scen, sol.p_star, sol.n_star)
    _, pf_e, pd_e, pf_t, pd_t = run_auth_trials(cfg, weights, profiles=profiles)
    gap = float(max(np.max(np.abs(pf_e - pf_t)), np.max(np.abs(pd_e - pd_t))))
    reports.append(TrialReport("roc-theory-gap", 0.0, gap,
                               math.sqrt(0.25 / cfg.trials), cfg.trials, 0.05))

    # covertness: Eve's minimal total error against the Pinsker bound
    xi_hat, pinsker, _ = run_eve_detection(cfg, sol, scen)
    reports.append(TrialReport("eve-total-error(pinsker)", 1.0 - cfg.epsilon,
                               xi_hat, math.sqrt(0.5 / cfg.trials), cfg.trials,
                               0.02, comparison="lower"))

    # side-lobe lower bound against direct event simulation
    lams = (20.0, 2.0, 2.0, 0.5)
    lb = ncx2.pa_lower_bound(cfg.l_t, cfg.l_r, lams)
    groups = ((cfg.l_t - 1, lams[1]), (cfg.l_r - 1, lams[2]),
              ((cfg.l_t - 1) * (cfg.l_r - 1), lams[3]))
    emp_pa = ba_success_empirical(cfg.big_l, lams[0], cfg.trials,
                                  cfg.master_seed + 7, groups=groups)
    reports.append(TrialReport("pa-lower-bound<=exact", lb, float(emp_pa),
                               math.sqrt(0.25 / cfg.trials), cfg.trials,
                               0.01, comparison="lower"))
    return reports
