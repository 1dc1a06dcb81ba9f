"""Experiment catalog: each experiment runs the toolkit at a family of
operating points and writes one deterministic CSV.

File naming is `<experiment>_<seed>.csv`; columns are documented per
experiment in EXPERIMENTS and the README.  Reruns with the same master seed
are byte-identical.
"""

from __future__ import annotations

import csv
import math
from dataclasses import replace
from pathlib import Path

import numpy as np

from . import arrays, auth, covert, ncx2, simulate
from .simulate import (ScenarioConfig, build_scenario, covert_problem,
                       hypothesis_profiles, rng_for, solver_options)

EPS_GRID = tuple(round(0.05 * k, 2) for k in range(1, 11))
KAPPA_E_GRID = (-5.0, -10.0, -15.0)
KAPPA_N_GRID = (-8.0, -6.0, -4.0, -2.0, 0.0)
ANTENNA_GRID = ((16, 8), (32, 16), (64, 32))


def _fmt(x) -> str:
    if isinstance(x, (bool, np.bool_)):
        return "1" if x else "0"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    return format(float(x), ".12g")


def write_csv(path: Path, header: list[str], rows: list[tuple]) -> Path:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        for row in rows:
            writer.writerow([_fmt(v) for v in row])
    return path


def _solve(cfg: ScenarioConfig, gamma: float, sidelobe: bool = False):
    return covert.optimize_covert(covert_problem(cfg, gamma, sidelobe=sidelobe),
                                  solver_options(cfg))


def covert_sweep_eps(cfg: ScenarioConfig):
    """Optimized power, budget and rate across covertness levels for several
    eavesdropper SNRs."""
    header = ["epsilon", "kappa_e_db", "p_star", "n_star", "rate_bps", "pa", "nu", "feasible"]
    rows = []
    for kappa_e in KAPPA_E_GRID:
        base = replace(cfg, kappa_e_db=kappa_e)
        scen = build_scenario(base)
        for eps in EPS_GRID:
            sol = _solve(replace(base, epsilon=eps), scen.gamma)
            rows.append((eps, kappa_e, sol.p_star, sol.n_star, sol.rate,
                         sol.pa, sol.nu_star, sol.feasible))
    return header, rows


def covert_sweep_snr(cfg: ScenarioConfig):
    """Optimized rate and alignment success across receiver SNR, with the
    empirical alignment rate at the optimized operating point."""
    header = ["kappa_n_db", "epsilon", "p_star", "n_star", "rate_bps",
              "pa_theory", "pa_empirical"]
    rows = []
    scen = build_scenario(cfg)
    for eps in (0.1, 0.2, 0.3):
        for kappa_n in KAPPA_N_GRID:
            c = replace(cfg, epsilon=eps, kappa_n_db=kappa_n)
            sol = _solve(c, scen.gamma)
            gm = simulate.ideal_gain_model(c)
            lam1 = 2.0 * sol.n_star * sol.p_star * c.alice_gain_var * gm.main_rx * gm.main_tx / c.sigma_n2
            emp = simulate.ba_success_empirical(c.big_l, lam1, c.trials, c.master_seed)
            rows.append((kappa_n, eps, sol.p_star, sol.n_star, sol.rate, sol.pa, emp))
    return header, rows


def convergence(cfg: ScenarioConfig):
    """Lagrangian trace of the joint design at two loose covertness levels."""
    header = ["epsilon", "iteration", "lagrangian", "p", "n", "nu"]
    rows = []
    scen = build_scenario(cfg)
    for eps in (0.35, 0.4):
        sol = _solve(replace(cfg, epsilon=eps), scen.gamma)
        for pt in sol.trace:
            rows.append((eps, pt.iteration, pt.lagrangian, pt.p, pt.n, pt.nu))
    return header, rows


def validate_pdf(cfg: ScenarioConfig):
    """Theoretical density of three adversary beam energies against a
    simulation histogram."""
    header = ["beam_index", "y", "pdf_theory", "pdf_empirical"]
    scen = build_scenario(cfg)
    sol = _solve(cfg, scen.gamma)
    _, h1 = hypothesis_profiles(scen, sol.p_star, sol.n_star)
    lam = h1.noncentralities
    picks = list(np.argsort(lam)[-3:])          # the informative beams
    rows = []
    for pos, idx in enumerate(picks):
        lam_i = float(lam[idx])
        hi = lam_i + 2.0 + 8.0 * math.sqrt(1.0 + lam_i)
        edges = np.linspace(0.0, hi, 41)
        mids = (edges[:-1] + edges[1:]) / 2.0
        stream = 20 + pos

        def kernel(block, size, lam_i=lam_i, edges=edges, stream=stream):
            rng = rng_for(cfg.master_seed, stream, block)
            z = rng.standard_normal(size) + 1j * rng.standard_normal(size)
            y = np.abs(z + math.sqrt(lam_i)) ** 2
            counts, _ = np.histogram(y, edges)
            return counts

        counts = sum(simulate._map_blocks(kernel, cfg.trials))
        width = edges[1] - edges[0]
        dens = counts / (cfg.trials * width)
        theory = ncx2.ncx2_pdf(mids, 2.0, lam_i)
        for y, th, em in zip(mids, theory, dens):
            rows.append((int(idx), y, th, em))
    return header, rows


def validate_roc(cfg: ScenarioConfig):
    """Theoretical vs empirical operating points of the optimized-weight
    detector across thresholds, at two receiver SNRs."""
    header = ["kappa_n_db", "tau", "pf_theory", "pf_empirical", "pd_theory", "pd_empirical"]
    rows = []
    for kappa_n in (-6.0, -2.0):
        c = replace(cfg, kappa_n_db=kappa_n)
        scen = build_scenario(c)
        sol = _solve(c, scen.gamma)
        profiles = hypothesis_profiles(scen, sol.p_star, sol.n_star)
        model = auth.optimize_weights(*profiles, c.pf_target, n_restarts=0, maxiter=50)
        taus, pf_e, pd_e, pf_t, pd_t = simulate.run_auth_trials(c, model.weights, profiles=profiles)
        for row in zip(taus, pf_t, pf_e, pd_t, pd_e):
            rows.append((kappa_n,) + row)
    return header, rows


def weight_compare(cfg: ScenarioConfig):
    """Detection rate of uniform versus optimized weights over a false-alarm
    sweep (theory and simulation at the calibrated thresholds)."""
    header = ["kappa_n_db", "pf_target", "pd_uniform_theory", "pd_optimized_theory",
              "pd_uniform_emp", "pd_optimized_emp"]
    rows = []
    for kappa_n in (-6.0, -4.0):
        c = replace(cfg, kappa_n_db=kappa_n)
        scen = build_scenario(c)
        sol = _solve(c, scen.gamma)
        h0, h1 = hypothesis_profiles(scen, sol.p_star, sol.n_star)
        uniform = np.full(c.big_l, 1.0 / c.big_l)
        model = auth.optimize_weights(h0, h1, c.pf_target, n_restarts=0, maxiter=60)
        t0u = simulate._simulate_statistics(h0, uniform, c.trials, c.master_seed, simulate._S_AUTH_H0)
        t1u = simulate._simulate_statistics(h1, uniform, c.trials, c.master_seed, simulate._S_AUTH_H1)
        t0o = simulate._simulate_statistics(h0, model.weights, c.trials, c.master_seed, simulate._S_AUTH_H0)
        t1o = simulate._simulate_statistics(h1, model.weights, c.trials, c.master_seed, simulate._S_AUTH_H1)
        for pf in np.arange(0.05, 0.51, 0.05):
            pf = round(float(pf), 2)
            tau_u = auth.calibrate_threshold(uniform, h0, pf)
            tau_o = auth.calibrate_threshold(model.weights, h0, pf)
            pd_u = auth.pf_pd_theoretical(uniform, h0, h1, tau_u)[1]
            pd_o = auth.pf_pd_theoretical(model.weights, h0, h1, tau_o)[1]
            rows.append((kappa_n, pf, pd_u, pd_o,
                         float(np.mean(t1u > tau_u)), float(np.mean(t1o > tau_o))))
    return header, rows


def worst_case(cfg: ScenarioConfig):
    """Covert design and optimized-weight detector miss rate when the
    impostor shares the legitimate geometry and channel gain (coupling is
    the only fingerprint left)."""
    header = ["epsilon", "p_star", "n_star", "rate_bps", "pm_theory_at_pf"]
    rows = []
    scen = build_scenario(cfg, worst_case=True)
    for eps in (0.1, 0.2, 0.3):
        c = replace(cfg, epsilon=eps)
        sol = _solve(c, scen.gamma)
        h0, h1 = hypothesis_profiles(scen, sol.p_star, sol.n_star)
        model = auth.optimize_weights(h0, h1, c.pf_target, n_restarts=0, maxiter=60)
        rows.append((eps, sol.p_star, sol.n_star, sol.rate, 1.0 - model.pd))
    return header, rows


def sidelobe_rate(cfg: ScenarioConfig):
    """Optimized covert rate with and without side-lobe leakage."""
    header = ["kappa_n_db", "epsilon", "rate_ideal", "rate_sidelobe"]
    rows = []
    scen = build_scenario(cfg)
    for eps in (0.1, 0.3):
        for kappa_n in KAPPA_N_GRID:
            c = replace(cfg, epsilon=eps, kappa_n_db=kappa_n)
            ideal = _solve(c, scen.gamma)
            side = _solve(c, scen.gamma, sidelobe=True)
            rows.append((kappa_n, eps, ideal.rate, side.rate))
    return header, rows


def sidelobe_roc(cfg: ScenarioConfig):
    """Detector miss rate with the covert design done under the ideal versus
    the leaky gain model."""
    header = ["epsilon", "pf", "pm_ideal", "pm_sidelobe"]
    rows = []
    c2 = replace(cfg, kappa_n_db=-2.0)
    scen = build_scenario(c2)
    w = np.full(c2.big_l, 1.0 / c2.big_l)
    for eps in (0.1, 0.3):
        c = replace(c2, epsilon=eps)
        sol_i = _solve(c, scen.gamma)
        sol_s = _solve(c, scen.gamma, sidelobe=True)
        prof_i = hypothesis_profiles(scen, sol_i.p_star, sol_i.n_star)
        prof_s = hypothesis_profiles(scen, sol_s.p_star, sol_s.n_star)
        for pf in np.arange(0.05, 0.51, 0.05):
            pf = round(float(pf), 2)
            pd_i = auth.pf_pd_theoretical(
                w, *prof_i, auth.calibrate_threshold(w, prof_i[0], pf))[1]
            pd_s = auth.pf_pd_theoretical(
                w, *prof_s, auth.calibrate_threshold(w, prof_s[0], pf))[1]
            rows.append((eps, pf, 1.0 - pd_i, 1.0 - pd_s))
    return header, rows


def antenna_sweep(cfg: ScenarioConfig):
    """Ideal/side-lobe rate gap across array sizes at a fixed codebook.

    Runs at a covertness level loose enough for the union lower bound to be
    informative (it clamps to zero when the alignment energy is starved).
    """
    header = ["n_t", "n_r", "kappa_n_db", "rate_ideal", "rate_sidelobe"]
    rows = []
    for n_t, n_r in ANTENNA_GRID:
        base = replace(cfg, n_t=n_t, n_r=n_r, epsilon=0.3)
        scen = build_scenario(base)
        for kappa_n in KAPPA_N_GRID:
            c = replace(base, kappa_n_db=kappa_n)
            ideal = _solve(c, scen.gamma)
            side = _solve(c, scen.gamma, sidelobe=True)
            rows.append((n_t, n_r, kappa_n, ideal.rate, side.rate))
    return header, rows


def beam_pattern(cfg: ScenarioConfig):
    """Magnitude of the aligned codeword's pattern, ideal and under the two
    devices' couplings, on a one-degree grid."""
    header = ["angle_deg", "ideal_mag", "alice_mag", "eve_mag"]
    scen = build_scenario(cfg)
    sector = scen.tx_codebook.sector_index(math.radians(cfg.phi_alice_deg))
    w = scen.tx_codebook.codewords[sector]
    rows = []
    for deg in range(-90, 91):
        ang = math.radians(deg)
        rows.append((deg,
                     abs(arrays.beam_pattern(w, ang)),
                     abs(arrays.beam_pattern(w, ang, scen.alice.tx_coupling)),
                     abs(arrays.beam_pattern(w, ang, scen.eve.tx_coupling))))
    return header, rows


EXPERIMENTS = {
    "covert-sweep-eps": covert_sweep_eps,
    "covert-sweep-snr": covert_sweep_snr,
    "convergence": convergence,
    "validate-pdf": validate_pdf,
    "validate-roc": validate_roc,
    "weight-compare": weight_compare,
    "worst-case": worst_case,
    "sidelobe-rate": sidelobe_rate,
    "sidelobe-roc": sidelobe_roc,
    "antenna-sweep": antenna_sweep,
    "beam-pattern": beam_pattern,
}


def run_experiment(name: str, cfg: ScenarioConfig, out_dir: str | Path = ".") -> Path:
    """Run one named experiment and write `<name>_<seed>.csv` under out_dir."""
    if name not in EXPERIMENTS:
        raise KeyError(f"unknown experiment {name!r}; known: {', '.join(sorted(EXPERIMENTS))}")
    header, rows = EXPERIMENTS[name](cfg)
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    return write_csv(out_dir / f"{name}_{cfg.master_seed}.csv", header, rows)
