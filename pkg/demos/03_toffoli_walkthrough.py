"""
Toffoli with one photon and two atoms
=====================================

The photon visits the first cavity twice and the second once.  Part of the
amplitude leaks to the discard port when r != 1, and that leak is what
separates the efficiency from the total surviving norm.
"""

import numpy as np

from badcavity import InputAngles, build_toffoli, metrics_from_engine, run, xi_terms
from badcavity.metrics import toffoli_efficiency_closed, toffoli_fidelity_closed

t = build_toffoli()
print(len(t.elements), "elements,", len(t.locations), "locations")
print("checkpoints:", [label for label, _ in t.checkpoints])

angles = InputAngles(varphi=np.pi / 4, theta=np.pi / 4, eta=np.pi / 4)
for r in (1.0, 0.8, 0.4):
    xi = xi_terms(r, angles)
    eng = metrics_from_engine("TOFFOLI", r, angles)
    print(f"r={r}: F={eng.fidelity:.6f} (closed {toffoli_fidelity_closed(r, angles):.6f})"
          f"  P={eng.efficiency:.6f} (closed {toffoli_efficiency_closed(r, angles):.6f})"
          f"  leak={xi.xi6:.6f}")

# the leak shows up as amplitude on the discard port
res = run(build_toffoli(0.8, -1), t.input_state(angles.photon, [angles.atom1, angles.atom2]))
print("discard norm:", round(res.discard_state.total_norm(), 6), " xi6:", xi_terms(0.8, angles).xi6)
