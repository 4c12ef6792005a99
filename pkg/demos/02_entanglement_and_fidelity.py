"""
================================================================================
02. Entanglement landscapes and fidelity rates
================================================================================

Viewing the spin as 2j qubits, the single-qubit entropy measures how far a state
has spread. The Loschmidt fidelity Z(n) and its rate R(n) track returns to the
initial state.
"""
########################################################################################################################
import numpy as np

from dkt import averaged_rate, dkt, entropy_landscape, fidelity_series, time_averaged_entropy
from dkt.observables import island_gap

########################################################################################################################
# Time-averaged entropy at two initial states
# -------------------------------------------
# Points on the rotation axis are barely entangled; a generic point is not.
j = 20
kr = j * np.pi / 2
for kt in (0.0, kr):
    U = dkt(j, kr, kt)
    print(f"ktheta={kt:6.3f}  S(pi/2, pi/2)={time_averaged_entropy(U, (np.pi / 2, np.pi / 2), 500):.3f}"
          f"  S(2.25, 2.0)={time_averaged_entropy(U, (2.25, 2.0), 500):.3f}")

########################################################################################################################
# A coarse landscape
# ------------------
# 32 x 32 initial states; the full 64 x 64 run is what the acceptance suite uses.
field = entropy_landscape(dkt(j, kr, kr), (32, 32), 300, workers=4)
print("landscape range:", field.values.min().round(3), "to", field.values.max().round(3))

########################################################################################################################
# Near the exact point, low-entropy islands around the north pole draw together.
for s in (0.9996, 0.9998, 1.0):
    f = entropy_landscape(dkt(j, s * kr, s * kr), (32, 32), 300)
    print(f"kr={s}*j*pi/2  island gap at the pole: {island_gap(f, 0.0, 0.0):.4f}")

########################################################################################################################
# Fidelity
# --------
# At a certified period the rate drops to zero every eight kicks.
series = fidelity_series(dkt(j, kr, 0.4), (1.2, 0.4), 25)
print("R(n) at n = 0, 4, 8, 16, 24:", np.round(series.R[[0, 4, 8, 16, 24]], 12) + 0.0)

########################################################################################################################
# Sweeping k_theta from 0 to k_r gives the averaged rate profile.
for jj in (20, 20.5):
    K = jj * np.pi / 2
    kts = np.linspace(0, K, 9)
    R = [averaged_rate(dkt(jj, K, kt), (0.0, 0.0), 1000) for kt in kts]
    print(f"j={jj}: " + " ".join(f"{r:.3f}" for r in R))
