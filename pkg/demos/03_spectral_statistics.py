"""
================================================================================
03. Quasi-energy statistics near the periodic point
================================================================================

Detuning k_r slightly from j pi/2 turns a massively degenerate spectrum into one
with Poisson-like and then GOE-like level statistics.
"""
########################################################################################################################
import numpy as np

from dkt import dkt, parity_sectors
from dkt.spectral import (
    compare_to_reference,
    degeneracy_profile,
    degeneracy_summary,
    pooled_ratios,
    quasi_energies,
    ratio_histogram,
    sample_goe_reference,
    sample_poisson_reference,
)

########################################################################################################################
# Reference ensembles
# -------------------
# Sampled, seeded Poisson and GOE spectra supply the comparison histograms.
poisson = sample_poisson_reference(200, 1000, seed=1)
goe = sample_goe_reference(200, 400, seed=2)
print(f"reference mean ratios: Poisson {poisson.mean_ratio:.3f}, GOE {goe.mean_ratio:.3f}")

########################################################################################################################
# Degenerate point
# ----------------
j = 200.5
base = j * np.pi / 2
clusters, frac = degeneracy_summary(degeneracy_profile(quasi_energies(dkt(j, base)), 1e-8))
print(f"kr = j*pi/2: {clusters} distinct quasi-energies, top 24 hold {frac:.0%} of levels")

########################################################################################################################
# Detuned points
# --------------
# The spectrum splits into two parity sectors of exp(-i pi Jy); ratios are taken
# within each sector and pooled. Mixing sectors would hide level repulsion.
# At this smaller j the crossover needs a larger detuning than at j = 500.5.
for s in (1.001, 1.002, 1.01):
    sample = ratio_histogram(pooled_ratios(parity_sectors(dkt(j, s * base)), 1))
    print(f"kr={s}*j*pi/2  <r>={sample.mean_ratio:.3f}  "
          f"TV to Poisson {compare_to_reference(sample, poisson):.3f}, to GOE {compare_to_reference(sample, goe):.3f}")
