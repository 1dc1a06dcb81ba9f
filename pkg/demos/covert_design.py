"""Joint transmit-power / training-budget design under a covertness budget.

Solves the default scenario, shows the Lagrangian settling, and sweeps the
covertness level to expose the power/rate trade-off.
"""

from dataclasses import replace

from covertauth import covert, simulate
from covertauth.simulate import ScenarioConfig

# %% one full solve at the defaults
cfg = ScenarioConfig()
scen = simulate.build_scenario(cfg)
prob = simulate.covert_problem(cfg, scen.gamma)
sol = covert.optimize_covert(prob, simulate.solver_options(cfg))

print(f"coupling constant Gamma : {scen.gamma:.2f}")
print(f"covertness budget       : {prob.budget:.3f} (epsilon = {cfg.epsilon})")
print(f"optimized power P*      : {sol.p_star:.4f}")
print(f"optimized budget N*     : {sol.n_star}")
print(f"covert rate             : {sol.rate:.3f} bps/Hz")
print(f"alignment success P_a   : {sol.pa:.3f}")
print(f"converged in            : {sol.iterations} iterations "
      f"(KKT residual {sol.kkt_residual:.1e})")

# %% the traced Lagrangian is ascent up to budget rounding
print("\niteration trace (first 8):")
for pt in sol.trace[:8]:
    print(f"  t={pt.iteration:2d}  L={pt.lagrangian:+.6f}  P={pt.p:.4f}  "
          f"N={pt.n}  nu={pt.nu:.4f}")

# %% relaxing the covertness level buys rate
print("\nepsilon sweep:")
for eps in (0.1, 0.2, 0.3, 0.4):
    s = covert.optimize_covert(simulate.covert_problem(replace(cfg, epsilon=eps),
                                                       scen.gamma))
    print(f"  eps={eps:.1f}: P*={s.p_star:.4f}  N*={s.n_star}  "
          f"rate={s.rate:.3f} bps/Hz  P_a={s.pa:.3f}")

# %% the eavesdropper stays blind at the designed point
xi, pinsker, kl = simulate.run_eve_detection(replace(cfg, trials=20_000), sol, scen)
print(f"\nEve's minimal total error at (P*, N*): {xi:.3f}")
print(f"Pinsker floor 1 - sqrt(KL/2)         : {pinsker:.3f} (KL = {kl:.4f})")
