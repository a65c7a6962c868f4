"""
Average fidelity and efficiency against coupling
================================================

Averaging over all real input states, then sweeping x = g/sqrt(kappa*gamma).
The fidelities saturate early; the efficiencies need stronger coupling.
Takes about ten seconds.
"""

import sys

from badcavity import sweep

table = sweep(0.5, 10.0, 12)
print(f"{'x':>7} {'r':>8} {'F_C':>8} {'P_C':>8} {'F_T':>8} {'P_T':>8}")
for row in table.rows:
    print(f"{row.x:7.3f} {row.r:8.4f} {row.F_C:8.5f} {row.P_C:8.5f} {row.F_T:8.5f} {row.P_T:8.5f}")

# same table as CSV, ready for plotting elsewhere
if "--csv" in sys.argv:
    sys.stdout.write(table.to_csv())
