"""Weighted energy-detector authentication.

The receiver weights the L beam-pair training energies, compares the sum
against a threshold, and decides whether the transmitter is the enrolled
device or an impostor.  Under either hypothesis the normalized energies are
2-DoF noncentral chi-squares whose noncentralities carry the transmitter's
coupling fingerprint, so false-alarm and detection rates follow from the
weighted-sum tail approximation in `ncx2`.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np
from scipy import optimize

from .arrays import ChannelRealization, Codebook, pair_gains
from .ncx2 import QuadFormApprox, ncx2_q_inv, quadform_approx, weighted_sum_tail

LEGITIMATE = "legitimate"
ADVERSARY = "adversary"

_SIMPLEX_EDGE = 1e-6


@dataclass(frozen=True)
class HypothesisProfile:
    """Noncentralities of the L beam-pair energies under one hypothesis."""

    noncentralities: np.ndarray

    def __post_init__(self):
        lam = np.asarray(self.noncentralities, dtype=float)
        if lam.ndim != 1 or lam.size == 0:
            raise ValueError("profile must be a nonempty 1-D sequence")
        if np.any(lam < 0):
            raise ValueError("noncentralities must be nonnegative")
        object.__setattr__(self, "noncentralities", lam)

    def __len__(self):
        return self.noncentralities.size


def noncentrality_profile(channel: ChannelRealization, tx_codebook: Codebook,
                          rx_codebook: Codebook, n: int, p: float,
                          sigma_n2: float) -> HypothesisProfile:
    """lambda_l = 2 N P |f_l^H H w_l|^2 / sigma_n^2 over all beam pairs,
    transmit-major pair order."""
    gains = pair_gains(channel, tx_codebook, rx_codebook)
    return HypothesisProfile(2.0 * n * p * gains / sigma_n2)


def test_statistic(y: np.ndarray, weights: np.ndarray, n: int, sigma_n2: float) -> float:
    """T = sum_l w_l * 2 |y_l|^2 / (N sigma_n^2); one O(L) pass per decision."""
    y = np.asarray(y)
    weights = np.asarray(weights, dtype=float)
    if y.shape != weights.shape:
        raise ValueError("signal and weight lengths differ")
    return float(np.sum(weights * 2.0 * np.abs(y) ** 2 / (n * sigma_n2)))


def decide(t: float, tau: float) -> str:
    """Threshold test; ties accept the transmitter as legitimate."""
    return ADVERSARY if t > tau else LEGITIMATE


def pf_pd_theoretical(weights, profile_h0: HypothesisProfile,
                      profile_h1: HypothesisProfile, tau: float) -> tuple[float, float]:
    """False-alarm and detection probabilities at threshold tau through the
    noncentral chi-square surrogates of the two weighted sums."""
    w = np.asarray(weights, dtype=float)
    pf = weighted_sum_tail(quadform_approx(w, profile_h0.noncentralities), tau)
    pd = weighted_sum_tail(quadform_approx(w, profile_h1.noncentralities), tau)
    return pf, pd


def calibrate_threshold(weights, profile_h0: HypothesisProfile, pf_target: float) -> float:
    """Neyman-Pearson threshold: invert the surrogate tail at pf_target and
    map the surrogate threshold back to the test statistic's scale."""
    if not 0.0 < pf_target < 1.0:
        raise ValueError("pf_target must lie strictly inside (0, 1)")
    approx = quadform_approx(np.asarray(weights, dtype=float), profile_h0.noncentralities)
    nu, lam = approx.approx.dof, approx.approx.noncentrality
    tau_a = ncx2_q_inv(approx.approx, pf_target)
    return ((tau_a - (nu + lam)) / math.sqrt(2.0 * nu + 4.0 * lam)) * approx.stddev + approx.mean


@dataclass
class AuthModel:
    """Calibrated detector: weights on the open simplex, threshold, the two
    surrogate fits and the operating point they imply."""

    weights: np.ndarray
    threshold: float
    approx_h0: QuadFormApprox
    approx_h1: QuadFormApprox
    pf: float
    pd: float
    converged: bool = True

    def __post_init__(self):
        w = np.asarray(self.weights, dtype=float)
        if abs(float(np.sum(w)) - 1.0) > 1e-9:
            raise ValueError("weights must sum to 1")
        # open simplex except the forced single-beam corner w = [1]
        if np.any(w <= 0) or np.any(w > 1) or (w.size > 1 and np.any(w >= 1)):
            raise ValueError("weights must lie strictly inside (0, 1)")
        object.__setattr__(self, "weights", w)


def build_model(weights, profile_h0: HypothesisProfile, profile_h1: HypothesisProfile,
                pf_target: float, converged: bool = True) -> AuthModel:
    w = np.asarray(weights, dtype=float)
    tau = calibrate_threshold(w, profile_h0, pf_target)
    pf, pd = pf_pd_theoretical(w, profile_h0, profile_h1, tau)
    return AuthModel(weights=w, threshold=tau,
                     approx_h0=quadform_approx(w, profile_h0.noncentralities),
                     approx_h1=quadform_approx(w, profile_h1.noncentralities),
                     pf=pf, pd=pd, converged=converged)


def _pd_at_target(w: np.ndarray, profile_h0: HypothesisProfile,
                  profile_h1: HypothesisProfile, pf_target: float) -> float:
    tau = calibrate_threshold(w, profile_h0, pf_target)
    return pf_pd_theoretical(w, profile_h0, profile_h1, tau)[1]


def optimize_weights(profile_h0: HypothesisProfile, profile_h1: HypothesisProfile,
                     pf_target: float, n_restarts: int = 3, seed: int = 0,
                     maxiter: int = 120) -> AuthModel:
    """Maximize the theoretical detection rate at the false-alarm target over
    the open weight simplex.

    Constrained NLP (SLSQP, an SQP-family method) from the uniform start plus
    a few seeded Dirichlet restarts; whatever happens, the returned weights
    are never worse than uniform.
    """
    big_l = len(profile_h0)
    if len(profile_h1) != big_l:
        raise ValueError("profiles must have equal length")
    uniform = np.full(big_l, 1.0 / big_l)
    if big_l == 1:
        return build_model(np.array([1.0]), profile_h0, profile_h1, pf_target)

    def objective(w):
        return -_pd_at_target(w, profile_h0, profile_h1, pf_target)

    bounds = [(_SIMPLEX_EDGE, 1.0 - _SIMPLEX_EDGE)] * big_l
    constraints = [{"type": "eq", "fun": lambda w: np.sum(w) - 1.0}]

    rng = np.random.default_rng(seed)
    starts = [uniform]
    starts += [rng.dirichlet(np.ones(big_l)) for _ in range(n_restarts)]

    best_w, best_pd = uniform, _pd_at_target(uniform, profile_h0, profile_h1, pf_target)
    converged = True
    for w0 in starts:
        w0 = np.clip(w0, _SIMPLEX_EDGE, 1.0 - _SIMPLEX_EDGE)
        w0 = w0 / np.sum(w0)
        with warnings.catch_warnings():
            # SLSQP emits bound-clipping RuntimeWarnings while probing the
            # simplex edges; the clipped iterates are handled below
            warnings.simplefilter("ignore", RuntimeWarning)
            res = optimize.minimize(objective, w0, method="SLSQP", bounds=bounds,
                                    constraints=constraints,
                                    options={"maxiter": maxiter, "ftol": 1e-10})
        w = np.clip(res.x, _SIMPLEX_EDGE, 1.0 - _SIMPLEX_EDGE)
        w = w / np.sum(w)
        pd = _pd_at_target(w, profile_h0, profile_h1, pf_target)
        if pd > best_pd:
            best_w, best_pd = w, pd
            converged = bool(res.success)
    return build_model(best_w, profile_h0, profile_h1, pf_target, converged=converged)
