"""ULA steering vectors, mutual-coupling matrices, beam patterns, codebooks and
the quantized beamforming-gain models used throughout the toolkit.

Conventions: half-wavelength element spacing, angles in radians, steering
entries exp(j*pi*k*sin(angle)).  Mutual coupling is a banded *symmetric*
(not Hermitian) Toeplitz matrix built from a short tap vector whose first
tap is fixed to 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np


def steering_vector(n: int, angle: float) -> np.ndarray:
    """Array phase response toward `angle`; entry k is exp(j*pi*k*sin(angle))."""
    if n < 1:
        raise ValueError("need at least one element")
    return np.exp(1j * np.pi * np.arange(n) * np.sin(angle))


@dataclass(frozen=True)
class ArrayModel:
    """Antenna geometry plus the mutual-coupling profile of one transceiver end.

    `coupling_strength` is the combined material/tolerance factor: tap m has
    mean coupling_strength/d_m with d_m = m (half-wavelength units) and
    complex-Gaussian spread of variance coupling_strength around it.
    """

    n_elements: int
    n_coupling_taps: int = 4
    coupling_strength: float = 0.0
    spacing: float = field(default=0.5, repr=False)

    def __post_init__(self):
        if self.n_elements < 1:
            raise ValueError("n_elements must be positive")
        if not 1 <= self.n_coupling_taps <= self.n_elements:
            raise ValueError("need 1 <= n_coupling_taps <= n_elements")
        if self.coupling_strength < 0:
            raise ValueError("coupling_strength must be nonnegative")


def sample_coupling(array: ArrayModel, rng: np.random.Generator) -> np.ndarray:
    """Draw one coupling tap vector for `array`.

    Tap 0 is fixed to 1; taps m = 1..M-1 are complex Gaussian with mean
    coupling_strength/m and total variance coupling_strength (split evenly
    between real and imaginary parts).
    """
    m_taps = array.n_coupling_taps
    var = array.coupling_strength
    c = np.ones(m_taps, dtype=complex)
    if m_taps > 1:
        d = np.arange(1, m_taps)
        noise = rng.standard_normal(m_taps - 1) + 1j * rng.standard_normal(m_taps - 1)
        c[1:] = var / d + math.sqrt(var / 2.0) * noise
    return c


def mc_matrix(coupling: np.ndarray, n: int) -> np.ndarray:
    """Banded symmetric Toeplitz coupling matrix with first row
    [c_0, ..., c_{M-1}, 0, ..., 0]."""
    coupling = np.asarray(coupling, dtype=complex)
    m_taps = coupling.shape[0]
    if m_taps > n:
        raise ValueError("more taps than elements")
    col = np.zeros(n, dtype=complex)
    col[:m_taps] = coupling
    lag = np.abs(np.subtract.outer(np.arange(n), np.arange(n)))
    return col[lag]


def beam_pattern(weights: np.ndarray, angle: float,
                 coupling_matrix: np.ndarray | None = None) -> complex:
    """Array response w^H a(angle), or w^H C a(angle) with coupling present."""
    weights = np.asarray(weights)
    a = steering_vector(weights.shape[0], angle)
    if coupling_matrix is not None:
        if coupling_matrix.shape != (weights.shape[0],) * 2:
            raise ValueError("coupling matrix does not match weight length")
        a = coupling_matrix @ a
    return complex(np.vdot(weights, a))


@dataclass(frozen=True)
class Codebook:
    """Ordered unit-norm codewords whose sectors partition an angular region.

    `codewords` has one row per beam; `edges` are the L+1 sector boundaries,
    sector l = [edges[l], edges[l+1]) (the last sector is closed).
    """

    codewords: np.ndarray
    edges: np.ndarray

    def __post_init__(self):
        norms = np.linalg.norm(self.codewords, axis=1)
        if not np.allclose(norms, 1.0, atol=1e-12):
            raise ValueError("codewords must be unit norm")
        if len(self.edges) != len(self.codewords) + 1:
            raise ValueError("need exactly one sector per codeword")

    def __len__(self):
        return self.codewords.shape[0]

    @property
    def sectors(self):
        return [(self.edges[i], self.edges[i + 1]) for i in range(len(self))]

    @property
    def centers(self) -> np.ndarray:
        return (self.edges[:-1] + self.edges[1:]) / 2.0

    def sector_index(self, angle: float) -> int:
        """Index of the sector containing `angle`; region endpoints included."""
        if not (self.edges[0] <= angle <= self.edges[-1]):
            raise ValueError("angle outside the covered region")
        idx = int(np.searchsorted(self.edges, angle, side="right") - 1)
        return min(idx, len(self) - 1)


def build_codebook(n: int, size: int, region: tuple[float, float] = (-np.pi / 2, np.pi / 2)) -> Codebook:
    """Steering-vector codebook: `size` unit-norm beams at the centers of a
    uniform partition of `region`."""
    lo, hi = region
    if not hi > lo:
        raise ValueError("empty angular region")
    if size < 1:
        raise ValueError("codebook size must be positive")
    edges = np.linspace(lo, hi, size + 1)
    centers = (edges[:-1] + edges[1:]) / 2.0
    words = np.stack([steering_vector(n, c) / math.sqrt(n) for c in centers])
    return Codebook(codewords=words, edges=edges)


@dataclass(frozen=True)
class ChannelRealization:
    """Single-path LoS channel H = gain * (C_r a_r(aoa)) (C_t a_t(aod))^H."""

    gain: complex
    aoa: float
    aod: float
    tx_coupling: np.ndarray
    rx_coupling: np.ndarray

    @property
    def n_rx(self) -> int:
        return self.rx_coupling.shape[0]

    @property
    def n_tx(self) -> int:
        return self.tx_coupling.shape[0]

    def matrix(self) -> np.ndarray:
        ar = self.rx_coupling @ steering_vector(self.n_rx, self.aoa)
        at = self.tx_coupling @ steering_vector(self.n_tx, self.aod)
        return self.gain * np.outer(ar, at.conj())


def effective_gain(channel: ChannelRealization, f: np.ndarray, w: np.ndarray) -> float:
    """|f^H H w|^2 for one beam pair, via the rank-one factorization of H."""
    f = np.asarray(f)
    w = np.asarray(w)
    if f.shape[0] != channel.n_rx or w.shape[0] != channel.n_tx:
        raise ValueError("beam dimensions do not match the channel")
    ar = channel.rx_coupling @ steering_vector(channel.n_rx, channel.aoa)
    at = channel.tx_coupling @ steering_vector(channel.n_tx, channel.aod)
    return abs(channel.gain) ** 2 * abs(np.vdot(f, ar)) ** 2 * abs(np.vdot(at, w)) ** 2


@dataclass(frozen=True)
class GainModel:
    """Flat main-lobe / side-lobe beamforming gain quantization.

    In ideal mode the side gains are exactly zero; in sidelobe mode they are
    the positive leak levels implied by power conservation.
    """

    main_tx: float
    main_rx: float
    side_tx: float = 0.0
    side_rx: float = 0.0
    mode: str = "ideal"

    def __post_init__(self):
        if self.mode not in ("ideal", "sidelobe"):
            raise ValueError("mode must be 'ideal' or 'sidelobe'")
        if self.mode == "ideal" and (self.side_tx != 0.0 or self.side_rx != 0.0):
            raise ValueError("ideal mode has zero side gains")
        if not (0 <= self.side_tx < self.main_tx and 0 <= self.side_rx < self.main_rx):
            raise ValueError("side gains must be smaller than main gains")


def quantized_gain(gains: GainModel, tx_aligned: bool, rx_aligned: bool, alpha: complex) -> float:
    """Effective channel gain |alpha|^2 * F * W for one alignment event."""
    w = gains.main_tx if tx_aligned else gains.side_tx
    f = gains.main_rx if rx_aligned else gains.side_rx
    return abs(alpha) ** 2 * f * w


def sidelobe_gains(l_t: int, main_tx: float, l_r: int, main_rx: float) -> tuple[float, float]:
    """Side-lobe leak levels from per-beam power conservation:
    (2/L) * main + (2 - 2/L) * side = 2 on each side."""
    w_side = (2.0 - (2.0 / l_t) * main_tx) / (2.0 - 2.0 / l_t)
    f_side = (2.0 - (2.0 / l_r) * main_rx) / (2.0 - 2.0 / l_r)
    if w_side < 0 or f_side < 0:
        raise ValueError("main-lobe gain too large for nonnegative side lobes")
    return w_side, f_side


def pair_index(i_tx: int, i_rx: int, l_r: int) -> int:
    """Flat beam-pair index, transmit-major: l = i_tx * L_R + i_rx."""
    return i_tx * l_r + i_rx


def pair_gains(channel: ChannelRealization, tx_cb: Codebook, rx_cb: Codebook) -> np.ndarray:
    """|f^H H w|^2 for every pair of the two codebooks, in pair_index order."""
    ar = channel.rx_coupling @ steering_vector(channel.n_rx, channel.aoa)
    at = channel.tx_coupling @ steering_vector(channel.n_tx, channel.aod)
    rx_part = np.abs(rx_cb.codewords.conj() @ ar) ** 2          # L_R
    tx_part = np.abs(tx_cb.codewords @ at.conj()) ** 2          # L_T
    return abs(channel.gain) ** 2 * np.outer(tx_part, rx_part).ravel()
