"""Covert-rate maximization under a covertness budget.

Joint design of the transmit power P and beam-training budget N: dual
decomposition on the covertness constraint (subgradient on the multiplier)
and successive concave surrogates for the two scalar primal subproblems,
with the budget N rounded to an integer after each update.  The traced
objective is the log-reformulated Lagrangian

    L(nu; P, N) = ln(1 - N/N_total) + ln(ln(1 + c N P)) + ln P_a
                  - nu (N P Gamma - 2 sigma_e^2 eps^2),

whose (P, N) argmax coincides with the covert rate's.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy import optimize

from .arrays import Codebook
from .ncx2 import grad_log_pa, pa_closed_form, pa_lower_bound, pa_survival_grid

_FEAS_SLACK = 1e-9


@dataclass(frozen=True)
class SidelobeSpec:
    """Noncentrality scale factors of the three misalignment events relative
    to the aligned pair, plus the codebook sizes that set the event counts."""

    l_t: int
    l_r: int
    scale_tx_misaligned: float
    scale_rx_misaligned: float
    scale_both_misaligned: float

    @classmethod
    def from_leak_ratios(cls, l_t: int, l_r: int, tx_leak: float, rx_leak: float):
        """tx_leak = side/main transmit gain ratio, rx_leak likewise."""
        return cls(l_t=l_t, l_r=l_r,
                   scale_tx_misaligned=tx_leak,
                   scale_rx_misaligned=rx_leak,
                   scale_both_misaligned=tx_leak * rx_leak)


@dataclass(frozen=True)
class CovertProblem:
    """All scalars of one covert design instance (see ScenarioConfig for the
    physical defaults these are derived from)."""

    gamma: float                 # robustified eavesdropper coupling constant
    epsilon: float               # covertness level
    sigma_n2: float              # receiver noise variance
    sigma_e2: float              # eavesdropper noise variance
    alpha2: float                # |alpha|^2 of the legitimate link
    main_rx: float               # F_R
    main_tx: float               # W_T
    n_total: int
    n_max: int = 64
    p_max: float = 1.0
    p_min: float = 1e-6
    big_l: int = 128             # number of beam pairs
    sidelobe: SidelobeSpec | None = None

    def __post_init__(self):
        if not 1 <= self.n_max < self.n_total:
            raise ValueError("need 1 <= n_max < n_total")
        if not 0 < self.p_min < self.p_max:
            raise ValueError("need 0 < p_min < p_max")
        if self.gamma < 0 or self.epsilon <= 0:
            raise ValueError("gamma must be nonnegative and epsilon positive")

    @property
    def budget(self) -> float:
        return 2.0 * self.sigma_e2 * self.epsilon ** 2

    @property
    def snr_slope(self) -> float:
        return self.alpha2 * self.main_rx * self.main_tx / self.sigma_n2


@dataclass
class TracePoint:
    iteration: int
    lagrangian: float
    p: float
    n: int
    nu: float


@dataclass
class AscentRecord:
    """Lagrangian values inside one iteration at the freshly updated
    multiplier: before the primal updates, after the continuous (P, N)
    updates, and after rounding N."""

    iteration: int
    before: float
    after_continuous: float
    after_round: float


@dataclass
class CovertSolution:
    p_star: float
    n_star: int
    nu_star: float
    rate: float
    pa: float
    trace: list[TracePoint]
    ascent: list[AscentRecord]
    feasible: bool
    converged: bool
    iterations: int
    kkt_residual: float


@dataclass(frozen=True)
class SolverOptions:
    eta: float = 0.1
    tau_p: float = 1.0
    tau_n: float = 1.0
    t_max: int = 100
    tol: float = 1e-5


def _codewords(codebook) -> np.ndarray:
    return codebook.codewords if isinstance(codebook, Codebook) else np.asarray(codebook)


def gamma_const(h_hat: np.ndarray, h_bound: float, codebook) -> float:
    """Robust coupling constant sum_l (|h_hat w_l| + h_bound ||w_l||)^2 over
    the codeword sequence (pass the pair-expanded list for per-pair sums)."""
    if h_bound < 0:
        raise ValueError("error bound must be nonnegative")
    words = _codewords(codebook)
    h_hat = np.asarray(h_hat).reshape(-1)
    if words.shape[1] != h_hat.shape[0]:
        raise ValueError("channel and codeword dimensions differ")
    inner = np.abs(words @ h_hat.conj())
    norms = np.linalg.norm(words, axis=1)
    return float(np.sum((inner + h_bound * norms) ** 2))


def kl_divergence(p: float, n: int, h_e: np.ndarray, codebook, sigma_e2: float) -> float:
    """KL divergence between the eavesdropper's silent and transmitting
    observation laws: N P sum_l |h_e w_l|^2 / sigma_e^2."""
    words = _codewords(codebook)
    h_e = np.asarray(h_e).reshape(-1)
    return float(n * p * np.sum(np.abs(words @ h_e.conj()) ** 2) / sigma_e2)


def lambda_aligned(p: float, n: float, prob: CovertProblem) -> float:
    """Noncentrality of the aligned pair: 2 N P |alpha|^2 F_R W_T / sigma_n^2."""
    return 2.0 * n * p * prob.alpha2 * prob.main_rx * prob.main_tx / prob.sigma_n2


@lru_cache(maxsize=16384)
def _pa_ideal_cached(big_l: int, lam: float) -> float:
    return pa_closed_form(big_l, lam)


@lru_cache(maxsize=16384)
def _pa_sidelobe_cached(l_t: int, l_r: int, lam: float,
                        s2: float, s3: float, s4: float) -> float:
    return pa_lower_bound(l_t, l_r, (lam, lam * s2, lam * s3, lam * s4))


def success_probability(p: float, n: float, prob: CovertProblem) -> float:
    """Alignment success at (P, N): order-statistics closed form in ideal
    mode, union lower bound in sidelobe mode."""
    lam = lambda_aligned(p, n, prob)
    side = prob.sidelobe
    if side is None:
        return _pa_ideal_cached(prob.big_l, lam)
    return _pa_sidelobe_cached(side.l_t, side.l_r, lam,
                               side.scale_tx_misaligned,
                               side.scale_rx_misaligned,
                               side.scale_both_misaligned)


def covert_rate(p: float, n: float, prob: CovertProblem) -> float:
    """Average effective rate (bps/Hz): (1 - N/N_total) P_a log2(1 + c N P)."""
    if p <= 0 or n >= prob.n_total:
        return 0.0
    pa = success_probability(p, n, prob)
    return (1.0 - n / prob.n_total) * pa * math.log1p(prob.snr_slope * n * p) / math.log(2.0)


def rate_grid(prob: CovertProblem, n_values, p_values) -> np.ndarray:
    """Vectorized covert rate over an N x P grid (ideal mode only); used by
    brute-force oracles and sweep experiments."""
    if prob.sidelobe is not None:
        raise ValueError("rate_grid supports the ideal gain model only")
    n_vals = np.asarray(n_values, dtype=float)
    p_vals = np.asarray(p_values, dtype=float)
    np_prod = np.outer(n_vals, p_vals)
    lam = 2.0 * np_prod * prob.alpha2 * prob.main_rx * prob.main_tx / prob.sigma_n2
    pa = pa_survival_grid(prob.big_l, lam.ravel()).reshape(lam.shape)
    overhead = (1.0 - n_vals / prob.n_total)[:, None]
    return overhead * pa * np.log1p(prob.snr_slope * np_prod) / np.log(2.0)


def update_nu(nu: float, eta: float, p: float, n: float, prob: CovertProblem) -> float:
    """Projected subgradient step on the dual variable."""
    if eta <= 0:
        raise ValueError("step size must be positive")
    return max(0.0, nu + eta * (n * p * prob.gamma - prob.budget))


def _log_pa(p: float, n: float, prob: CovertProblem) -> float:
    return math.log(max(success_probability(p, n, prob), 1e-300))


def _dlog_pa_dlam(lam: float, prob: CovertProblem) -> float:
    """d log P_a / d lambda1; lambda1 is linear in both P and N, so the scalar
    subproblem slopes are chain-rule multiples of this."""
    if prob.sidelobe is None:
        return grad_log_pa(lam, prob.big_l)
    side = prob.sidelobe
    h = 1e-3 * max(1.0, lam)
    lo = max(lam - h, 0.0)

    def lp(x):
        return math.log(max(_pa_sidelobe_cached(
            side.l_t, side.l_r, x, side.scale_tx_misaligned,
            side.scale_rx_misaligned, side.scale_both_misaligned), 1e-300))

    return (lp(lam + h) - lp(lo)) / (lam + h - lo)


def _d2log_pa_dlam(lam: float, prob: CovertProblem) -> float:
    """Curvature of log P_a in lambda1, used to size the proximal weights so
    the linearized surrogate is only trusted where it is accurate."""
    h = 1e-2 * max(1.0, lam)
    lo = max(lam - h, 0.0)
    return abs(_dlog_pa_dlam(lam + h, prob) - _dlog_pa_dlam(lo, prob)) / (lam + h - lo)


def _dlog_pa_dp(p: float, n: float, prob: CovertProblem) -> float:
    lam = lambda_aligned(p, n, prob)
    return _dlog_pa_dlam(lam, prob) * lam / p


def _dlog_pa_dn(p: float, n: float, prob: CovertProblem) -> float:
    lam = lambda_aligned(p, n, prob)
    return _dlog_pa_dlam(lam, prob) * lam / n


def lagrangian(nu: float, p: float, n: float, prob: CovertProblem) -> float:
    """Log-reformulated Lagrangian actually iterated by the solver."""
    return (math.log(1.0 - n / prob.n_total)
            + math.log(math.log1p(prob.snr_slope * n * p))
            + _log_pa(p, n, prob)
            - nu * (n * p * prob.gamma - prob.budget))


def _fc_p(p: float, n: float, nu: float, prob: CovertProblem) -> float:
    """Concave part of the P subproblem objective."""
    return math.log(math.log1p(prob.snr_slope * n * p)) - nu * n * p * prob.gamma


def solve_p_subproblem(state: tuple[float, float, float], prob: CovertProblem,
                       tau_p: float) -> float:
    """Maximize the strongly concave power surrogate on [p_min, p_max].

    state = (P_t, N, nu); the non-concave ln P_a is linearized at P_t and a
    proximal term -tau_p (P - P_t)^2 keeps the step trusted.
    """
    p_t, n, nu = state
    if tau_p <= 0:
        raise ValueError("tau_p must be positive")
    slope = _dlog_pa_dp(p_t, n, prob)
    if not math.isfinite(slope):
        raise FloatingPointError("non-finite rate-term derivative")

    def neg_surrogate(p):
        return -(_fc_p(p, n, nu, prob) + slope * (p - p_t) - tau_p * (p - p_t) ** 2)

    res = optimize.minimize_scalar(neg_surrogate, bounds=(prob.p_min, prob.p_max),
                                   method="bounded", options={"xatol": 1e-10})
    best = float(res.x)
    # bounded Brent can stall a hair inside the box; endpoints are cheap
    for cand in (prob.p_min, prob.p_max):
        if neg_surrogate(cand) < neg_surrogate(best):
            best = cand
    return best


def _fc_n(n: float, p: float, nu: float, prob: CovertProblem) -> float:
    return (math.log(math.log1p(prob.snr_slope * n * p))
            + math.log(1.0 - n / prob.n_total)
            - nu * n * p * prob.gamma)


def _solve_n_continuous(state: tuple[float, float, float], prob: CovertProblem,
                        tau: float) -> float:
    """Maximize the budget surrogate with the proximal weight as given."""
    p, n_t, nu = state
    if tau <= 0:
        raise ValueError("proximal weight must be positive")
    slope = _dlog_pa_dn(p, n_t, prob)

    def neg_surrogate(n):
        return -(_fc_n(n, p, nu, prob) + slope * (n - n_t) - tau * (n - n_t) ** 2)

    hi = float(min(prob.n_max, prob.n_total - 1))
    res = optimize.minimize_scalar(neg_surrogate, bounds=(1.0, hi),
                                   method="bounded", options={"xatol": 1e-10})
    best = float(res.x)
    for cand in (1.0, hi):
        if neg_surrogate(cand) < neg_surrogate(best):
            best = cand
    return best


def round_budget(n_cont: float, n_max: int) -> int:
    """Round-half-up to an integer training budget, clamped to [1, n_max]."""
    return int(min(max(math.floor(n_cont + 0.5), 1), n_max))


def solve_n_subproblem(state: tuple[float, float, float], prob: CovertProblem,
                       tau_n: float) -> int:
    """Continuous surrogate maximization for the training budget followed by
    round-half-up and clamping to [1, n_max].

    The proximal weight is rescaled by n_max^2 so the configured value keeps
    the same relative stiffness across budget ranges.
    """
    n_cont = _solve_n_continuous(state, prob, tau_n / float(prob.n_max) ** 2)
    return round_budget(n_cont, prob.n_max)


def _boundary_p(n: float, prob: CovertProblem) -> float:
    """Largest feasible power at budget N (rate is increasing in P)."""
    if prob.gamma <= 0:
        return prob.p_max
    return min(prob.p_max, prob.budget / (n * prob.gamma))


def _kkt_residual(p: float, n: float, nu: float, prob: CovertProblem) -> float:
    """Projected-gradient stationarity of the traced Lagrangian at the exit
    point plus the complementary-slackness defect."""
    c = prob.snr_slope

    def dldp(pp):
        x = c * n * pp
        return (c * n / ((1.0 + x) * math.log(1.0 + x))
                + _dlog_pa_dp(pp, n, prob) - nu * n * prob.gamma)

    def dldn(nn):
        x = c * nn * p
        return (c * p / ((1.0 + x) * math.log(1.0 + x))
                - 1.0 / (prob.n_total - nn)
                + _dlog_pa_dn(p, nn, prob) - nu * p * prob.gamma)

    gp = dldp(p)
    gn = dldn(n)
    rp = abs(p - min(max(p + gp, prob.p_min), prob.p_max))
    rn = abs(n - min(max(n + gn, 1.0), float(prob.n_max)))
    slack = abs(nu * (n * p * prob.gamma - prob.budget))
    return rp + rn + slack


def _warm_nu(p: float, n: float, prob: CovertProblem) -> float:
    """Stationarity multiplier estimate at the boundary point for the initial
    budget; starting the subgradient there avoids multiplier windup from the
    unpenalized first power step."""
    if prob.gamma <= 0:
        return 0.0
    pb = min(prob.p_max, prob.budget / (n * prob.gamma))
    if pb >= prob.p_max:
        return 0.0
    x = prob.snr_slope * n * pb
    dfdp = prob.snr_slope * n / ((1.0 + x) * math.log1p(x)) + _dlog_pa_dp(pb, n, prob)
    return max(0.0, dfdp / (n * prob.gamma))


def optimize_covert(prob: CovertProblem, opts: SolverOptions | None = None) -> CovertSolution:
    """Alternate multiplier, power and budget updates until the Lagrangian
    settles, then restore feasibility exactly and polish the integer budget.

    The proximal weights are raised to the local curvature of log P_a each
    iteration (floored at the configured values, the budget's weight rescaled
    by n_max^2) so the linearization is trusted exactly as far as it holds;
    an ascent check re-tightens and re-solves on the rare failure.  The final
    polish scans the boundary power over the SCA budget's neighborhood plus
    the smallest budgets, where the overhead term makes the boundary ridge
    monotone.

    Cost per iteration is two bounded 1-D concave maximizations, each
    O(log(1/xatol)) objective evaluations, so the design runs in
    O(t_c log(1/xatol)) evaluations for t_c iterations (typically 7-15).
    """
    opts = opts or SolverOptions()

    if prob.gamma * prob.p_min * 1.0 > prob.budget + _FEAS_SLACK:
        return CovertSolution(p_star=prob.p_min, n_star=1, nu_star=0.0, rate=0.0,
                              pa=0.0, trace=[], ascent=[], feasible=False,
                              converged=False, iterations=0, kkt_residual=math.inf)

    if prob.gamma > 0:
        p = 0.9 * min(prob.p_max, prob.budget / (prob.gamma * prob.n_max))
        p = min(max(p, prob.p_min), prob.p_max)
    else:
        p = 0.9 * prob.p_max
    n = min(4, prob.n_max)
    nu = _warm_nu(p, float(n), prob)

    trace: list[TracePoint] = []
    ascent: list[AscentRecord] = []
    prev_val = lagrangian(nu, p, n, prob)
    converged = False
    iterations = 0

    for t in range(opts.t_max):
        iterations = t + 1
        eta_t = opts.eta / math.sqrt(t + 1.0)
        violation = n * p * prob.gamma - prob.budget
        clipped = max(-prob.budget, min(violation, prob.budget))
        nu = max(0.0, nu + eta_t * clipped)

        before = lagrangian(nu, p, n, prob)
        lam = lambda_aligned(p, float(n), prob)
        curv = _d2log_pa_dlam(lam, prob)

        tau = max(1e-2 * opts.tau_p, 0.75 * curv * (lam / p) ** 2)
        for _ in range(8):
            p_new = solve_p_subproblem((p, n, nu), prob, tau)
            if lagrangian(nu, p_new, n, prob) >= before - 1e-9:
                break
            tau *= 4.0
        # keep the iterate feasible: the unpenalized surrogate is increasing
        # toward the boundary, so the projection never breaks ascent, and it
        # removes the dual limit cycle a pure subgradient iteration falls into
        p = min(p_new, _boundary_p(n, prob))

        mid = lagrangian(nu, p, n, prob)
        lam = lambda_aligned(p, float(n), prob)
        tau = max(opts.tau_n / float(prob.n_max) ** 2, 0.75 * curv * (lam / n) ** 2)
        for _ in range(8):
            n_cont = _solve_n_continuous((p, n, nu), prob, tau)
            if lagrangian(nu, p, n_cont, prob) >= mid - 1e-9:
                break
            tau *= 4.0
        after_cont = lagrangian(nu, p, n_cont, prob)
        n = round_budget(n_cont, prob.n_max)
        p = min(p, _boundary_p(n, prob))
        after_round = lagrangian(nu, p, n, prob)

        ascent.append(AscentRecord(iteration=t, before=before,
                                   after_continuous=after_cont,
                                   after_round=after_round))
        trace.append(TracePoint(iteration=t, lagrangian=after_round, p=p, n=n, nu=nu))

        rho = abs(after_round - prev_val)
        prev_val = after_round
        if rho <= opts.tol and t >= 1:
            converged = True
            break

    # exact feasibility restoration + integer polish over the local
    # neighborhood and the overhead-favored smallest budgets
    candidates = set(range(max(1, n - 2), min(prob.n_max, n + 2) + 1))
    candidates.update(range(1, min(4, prob.n_max) + 1))
    best_rate = -math.inf
    best = (p, n)
    for n_cand in sorted(candidates):
        p_cand = _boundary_p(n_cand, prob)
        if p_cand < prob.p_min:
            continue
        r = covert_rate(p_cand, n_cand, prob)
        if r > best_rate:
            best_rate = r
            best = (p_cand, n_cand)
    p, n = best

    # exit dual certificate: a strictly slack constraint has multiplier zero,
    # an active one gets the stationarity multiplier of the power variable
    # (the subgradient iterate never sees a positive violation once the
    # iterates are kept feasible, so it cannot learn this value itself)
    slack = n * p * prob.gamma - prob.budget
    if slack < -_FEAS_SLACK:
        nu = 0.0
    elif prob.gamma > 0:
        x = prob.snr_slope * n * p
        dfdp = (prob.snr_slope * n / ((1.0 + x) * math.log1p(x))
                + _dlog_pa_dp(p, float(n), prob))
        nu = max(0.0, dfdp / (n * prob.gamma))

    feasible = n * p * prob.gamma <= prob.budget + _FEAS_SLACK
    return CovertSolution(
        p_star=p, n_star=n, nu_star=nu,
        rate=covert_rate(p, n, prob),
        pa=success_probability(p, n, prob),
        trace=trace, ascent=ascent,
        feasible=feasible, converged=converged, iterations=iterations,
        kkt_residual=_kkt_residual(p, float(n), nu, prob))
