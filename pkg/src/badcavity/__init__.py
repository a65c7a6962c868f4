"""Photon-atom CNOT and photon-atom-atom Toffoli gates built from single-sided cavities."""

__version__ = "0.1.0"

from .cavity import (CavityParams, ReflectionPair, empty_cavity_reflection,
                     reflection_coefficient, reflection_pair,
                     reflection_spectrum, regime_check, resonant_reflection)
from .circuit_text import load_circuit, parse_circuit, serialize_circuit
from .circuits import (CircuitSpec, RunOutput, build_cnot, build_toffoli,
                       ideal_gate_matrix, induced_matrix, run)
from .metrics import (GateMetrics, InputAngles, average_cnot, average_toffoli,
                      cnot_efficiency_closed, cnot_fidelity_closed,
                      metrics_from_engine, node_multiplier, toffoli_efficiency_closed,
                      toffoli_fidelity_closed, xi_terms)
from .state import HybridState
from .sweep import SweepTable, sweep
