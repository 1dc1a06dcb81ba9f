"""Covert mmWave beam alignment and coupling-fingerprint authentication.

Library layout:

- `arrays`      steering vectors, coupling matrices, codebooks, gain models
- `ncx2`        noncentral chi-square numerics and the alignment closed forms
- `covert`      covert-rate maximization (dual decomposition + SCA)
- `auth`        weighted energy-detector calibration and weight design
- `simulate`    seeded Monte Carlo validation harness
- `experiments` CSV-emitting experiment catalog
- `config`/`cli` flat config files and the command-line surface
"""

from .arrays import (ArrayModel, ChannelRealization, Codebook, GainModel,
                     beam_pattern, build_codebook, effective_gain, mc_matrix,
                     pair_gains, quantized_gain, sample_coupling,
                     sidelobe_gains, steering_vector)
from .auth import (AuthModel, HypothesisProfile, calibrate_threshold, decide,
                   noncentrality_profile, optimize_weights, pf_pd_theoretical,
                   test_statistic)
from .covert import (CovertProblem, CovertSolution, SidelobeSpec,
                     SolverOptions, covert_rate, gamma_const, kl_divergence,
                     optimize_covert, rate_grid, solve_n_subproblem,
                     solve_p_subproblem, update_nu)
from .ncx2 import (Ncx2Params, QuadFormApprox, grad_log_pa, ncx2_pdf, ncx2_q,
                   ncx2_q_inv, pa_closed_form, pa_lower_bound,
                   pa_survival_grid, quadform_approx, weighted_sum_tail)
from .simulate import ScenarioConfig, Scenario, TrialReport, build_scenario

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
