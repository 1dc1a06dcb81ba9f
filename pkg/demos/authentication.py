"""Impostor detection from the beam-training energies.

Computes the two hypothesis profiles at the covert design point, calibrates
the weighted energy detector, optimizes the weights, and checks the theory
against simulated sweeps.
"""

import numpy as np

from covertauth import auth, covert, simulate
from covertauth.simulate import ScenarioConfig

cfg = ScenarioConfig(trials=20_000)
scen = simulate.build_scenario(cfg)
sol = covert.optimize_covert(simulate.covert_problem(cfg, scen.gamma),
                             simulate.solver_options(cfg))
h0, h1 = simulate.hypothesis_profiles(scen, sol.p_star, sol.n_star)

# %% what the detector sees
print(f"energy profile, legitimate : max lambda {h0.noncentralities.max():.2f}, "
      f"{np.count_nonzero(h0.noncentralities > 0.5)} informative beams")
print(f"energy profile, impostor   : max lambda {h1.noncentralities.max():.2f}, "
      f"{np.count_nonzero(h1.noncentralities > 0.5)} informative beams")

# %% uniform weights vs the optimized allocation at pf = 0.1
uniform = np.full(cfg.big_l, 1.0 / cfg.big_l)
tau_u = auth.calibrate_threshold(uniform, h0, cfg.pf_target)
pd_u = auth.pf_pd_theoretical(uniform, h0, h1, tau_u)[1]
model = auth.optimize_weights(h0, h1, cfg.pf_target, n_restarts=0, maxiter=50)
print(f"\ndetection rate at pf={cfg.pf_target}: uniform {pd_u:.4f} -> "
      f"optimized {model.pd:.4f}")
print(f"weights concentrate on {1.0 / np.sum(model.weights ** 2):.1f} effective beams")

# %% a received sweep is classified by one threshold comparison
rng = np.random.default_rng(5)
means = np.sqrt(sol.n_star * cfg.sigma_n2 / 2.0 * h1.noncentralities)
y = means + np.sqrt(sol.n_star * cfg.sigma_n2 / 2.0) * (
    rng.standard_normal(cfg.big_l) + 1j * rng.standard_normal(cfg.big_l))
t = auth.test_statistic(y, model.weights, sol.n_star, cfg.sigma_n2)
print(f"\none impostor sweep: T = {t:.2f} vs tau = {model.threshold:.2f} "
      f"-> {auth.decide(t, model.threshold)}")

# %% theory tracks simulation across the ROC
taus, pf_e, pd_e, pf_t, pd_t = simulate.run_auth_trials(cfg, model.weights,
                                                        profiles=(h0, h1))
gap = max(np.max(np.abs(pf_e - pf_t)), np.max(np.abs(pd_e - pd_t)))
print(f"max theory-vs-simulation ROC gap at {cfg.trials} trials: {gap:.4f}")
