"""
Reflection off a single-sided cavity
====================================

An L photon bouncing off the cavity picks up r when the atom is in |0>
(coupled) and r0 when it is in |1> (empty cavity).  On resonance both are
real: r0 = -1, and r rises from -1 towards +1 as the coupling grows.
"""

import numpy as np

from badcavity import CavityParams, reflection_spectrum, regime_check, resonant_reflection

# parameters in units of 2*pi MHz
p = CavityParams(g=20.0, kappa=75.0, gamma=2.5)
print("x = g/sqrt(kappa*gamma) =", round(p.coupling_ratio(), 4))
print("regime:", regime_check(p).as_dict())

# the resonant value depends only on x
print("r at resonance:", resonant_reflection(p.coupling_ratio()))

# sweep the probe detuning; the phase difference between r and r0 is what
# makes the gate work, so watch arg(r) - arg(r0) near zero detuning
s = reflection_spectrum(p, -100.0, 100.0, 9)
for w, r, r0 in zip(s.omega_p, s.r, s.r0):
    dphi = np.angle(r) - np.angle(r0)
    print(f"{w:8.1f}  |r|={abs(r):.4f}  |r0|={abs(r0):.4f}  dphase={dphi:+.4f}")

# r crosses zero at x = 1/2; below it the coupled reflection flips sign
for x in (0.25, 0.5, 1.0, 2.0, 5.0):
    print(f"x={x:4}  r={resonant_reflection(x):+.4f}")
