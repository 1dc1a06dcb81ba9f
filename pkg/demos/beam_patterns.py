"""How antenna mutual coupling fingerprints a transmitter's beam pattern.

Builds one transmit codeword, perturbs it with two devices' coupling draws,
and prints where the patterns differ.  The same comparison backs the
`beam-pattern` experiment CSV.
"""

import math

import numpy as np

from covertauth import arrays

# %% two devices, same codeword, different coupling strengths
n_t = 32
codebook = arrays.build_codebook(n_t, 16)
sector = codebook.sector_index(math.radians(60.0))
w = codebook.codewords[sector]
print(f"aligned sector {sector}, center {math.degrees(codebook.centers[sector]):.1f} deg")

rng = np.random.default_rng(1)
device_a = arrays.mc_matrix(arrays.sample_coupling(arrays.ArrayModel(n_t, 4, 0.1), rng), n_t)
device_b = arrays.mc_matrix(arrays.sample_coupling(arrays.ArrayModel(n_t, 4, 0.4), rng), n_t)

# %% sweep the patterns over a one-degree grid
grid = np.radians(np.arange(-90.0, 91.0, 1.0))
ideal = np.array([abs(arrays.beam_pattern(w, a)) for a in grid])
pat_a = np.array([abs(arrays.beam_pattern(w, a, device_a)) for a in grid])
pat_b = np.array([abs(arrays.beam_pattern(w, a, device_b)) for a in grid])

side = ideal < 0.2 * ideal.max()
print(f"main-lobe peak (ideal)    : {ideal.max():.3f}")
print(f"mean side-lobe, device A  : {pat_a[side].mean():.4f} (coupling 0.1)")
print(f"mean side-lobe, device B  : {pat_b[side].mean():.4f} (coupling 0.4)")
print(f"max deviation from ideal  : A {np.max(np.abs(pat_a - ideal)):.4f}, "
      f"B {np.max(np.abs(pat_b - ideal)):.4f}")
print("stronger coupling raises the side lobes; each device's pattern is a")
print("stable fingerprint because its coupling draw is fixed hardware.")
