"""
CNOT step by step
=================

Photon polarization is the control, the atom is the target.  We follow the
hybrid state through the circuit and print it at each checkpoint.
"""

import numpy as np

from badcavity import build_cnot, ideal_gate_matrix, induced_matrix, run

c = build_cnot()  # ideal reflections: r = 1, r0 = -1
print("paths:", c.locations)
for el in c.elements:
    print("  ", el)

# photon a|R> + b|L>, atom cos t|0> + sin t|1>
photon = (0.6, 0.8)
atom = (np.cos(0.3), np.sin(0.3))
res = run(c, c.input_state(photon, [atom]))


def show(state):
    for label, amp in state.items():
        if abs(amp) > 1e-12:
            print(f"    {label.pol} @ {label.loc:8s} atom={''.join(map(str, label.atoms))}  {amp:+.4f}")


for name, state in res.checkpoint_states.items():
    print(name)
    show(state)

# the whole map on the out port is the textbook CNOT
print(np.round(induced_matrix(c).real, 12))
print("equal to ideal:", np.allclose(induced_matrix(c), ideal_gate_matrix("CNOT")))

# with a realistic r the out port loses some norm and the map is no longer unitary
r = 0.79
lossy = run(build_cnot(r, -1), c.input_state(photon, [atom]))
print("surviving norm at r =", r, ":", round(lossy.out_state.total_norm(), 6))
print("absorbed:", round(lossy.absorbed, 6))
