"""
================================================================================
01. Exact recurrences of the double kicked top
================================================================================

At special kick strengths the Floquet operator returns to the identity (up to a
global phase) after a handful of kicks, whatever the value of k_theta.
"""
########################################################################################################################
# Setup
# -----
# ``dkt(j, kr, ktheta)`` builds the one-period propagator from the transformed
# kick strengths; ``certify_projective_period`` scans powers U^m for U^m = e^{i phi} 1.
import numpy as np

from dkt import certify_projective_period, coherent_state, dkt, evolve_trajectory, husimi_field

########################################################################################################################
# Period table
# ------------
# Integer and half-odd spins behave differently at k_r = j pi/2 and at k_r = j pi/4.
for j in (2, 4, 2.5, 4.5):
    for scale in (2, 4):
        kr = j * np.pi / scale
        periods = {certify_projective_period(dkt(j, kr, kt), cutoff=200).period for kt in (0.0, 0.37, kr)}
        print(f"j={j:<4} kr=j*pi/{scale}  periods over ktheta: {sorted(periods, key=str)}")

########################################################################################################################
# Small spins can do better than the generic value: spin-1/2 is a pure rotation,
# and j=1, j=3 already close after 16 kicks at k_r = j pi/4.
for j, scale in ((0.5, 2), (1, 4), (3, 4)):
    print(f"j={j} kr=j*pi/{scale}:", certify_projective_period(dkt(j, j * np.pi / scale)).period)

########################################################################################################################
# The recurrence is visible in phase space
# ----------------------------------------
# Follow a coherent state for eight kicks at j=76 and compare Husimi fields.
j = 76
U = dkt(j, j * np.pi / 2, 0.0)
traj = evolve_trajectory(U, coherent_state(U.sys, (2.25, 2.0)), 8)
frames = [husimi_field(psi, U.sys, (100, 100)) for psi in traj]
for n, f in enumerate(frames):
    it, ip = np.unravel_index(np.argmax(f.values), f.values.shape)
    print(f"n={n}: peak Q={f.values.max():.3f} at theta={f.thetas[it]:.2f}, phi={f.phis[ip]:+.2f}")
print("max |Q(8) - Q(0)| =", np.abs(frames[8].values - frames[0].values).max())
