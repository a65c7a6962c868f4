"""
Circuits as text
================

The shipped circuit files describe the same networks as the builders.  Here
we parse one, edit it in memory, and watch the parser point at the mistake.
"""

from pathlib import Path

from badcavity import build_cnot, load_circuit, parse_circuit, run, serialize_circuit
from badcavity.errors import CircuitParseError

here = Path(__file__).resolve().parent.parent / "circuits"
cnot = load_circuit(here / "cnot.circ")
print("same as builder:", cnot == build_cnot())
print(serialize_circuit(cnot))

# a typo in a path name is reported with its line and column
broken = serialize_circuit(cnot).replace("cavity path=p2", "cavity path=p9")
try:
    parse_circuit(broken)
except CircuitParseError as err:
    print("error:", err)

# reflections are bound when running, not stored in the file
res = run(cnot, cnot.input_state((0.6, 0.8), [(1.0, 0.0)]), reflections=(0.5, -1.0))
print("out norm at r = 0.5:", round(res.out_state.total_norm(), 6))
