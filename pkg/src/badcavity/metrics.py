"""
Fidelity and efficiency of the two gates.

Two independent routes are provided and are expected to agree:

* closed forms in the input angles (photon ``varphi``, atom ``theta``,
  second atom ``eta``) and the coupled reflection amplitude ``r``, with the
  empty-cavity amplitude fixed at -1;
* the state engine: build the input, run the circuit, compare with the ideal
  gate output.

Angle averages use the uniform measure on [0, 2pi) per angle.

Fidelity divides by the whole surviving norm, out port plus discard port.
For the Toffoli the efficiency counts only the out port (xi1..xi5), so the
discard term xi6 enters the fidelity but not the efficiency.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Optional

import numpy as np

from . import circuits
from .errors import DegenerateInputError, ParameterError
from .quadrature import periodic_mean

R_EMPTY = -1.0
# surviving probability below this is treated as "photon lost", F undefined
MIN_SURVIVING = 1e-20
DEFAULT_NODES_CNOT = 128
DEFAULT_NODES_TOFFOLI = 128

# As |r| -> 0 the surviving norm dips to ~|r|^2 at isolated input angles, so
# the fidelity integrand has a near-pole a distance ~|r| off the real axis and
# the trapezoid rule needs about SCALE/|r| nodes per angle.  The base node
# count is multiplied by a power of two chosen from r alone (capped), so
# doubling the base still doubles every grid.
_REFINE_SCALE = {"CNOT": 25.0, "TOFFOLI": 12.0}
_REFINE_CAP = {"CNOT": 8, "TOFFOLI": 2}
_REFINE_REF = {"CNOT": DEFAULT_NODES_CNOT, "TOFFOLI": DEFAULT_NODES_TOFFOLI}


@dataclass(frozen=True)
class InputAngles:
    """Real input amplitudes parametrized by angles.

    photon = cos(varphi)|R> + sin(varphi)|L>, atom 0 = cos(theta)|0> + sin(theta)|1>,
    atom 1 = cos(eta)|0> + sin(eta)|1>.  Fields may be arrays.
    """

    varphi: float = 0.0
    theta: float = 0.0
    eta: float = 0.0

    @property
    def photon(self):
        return np.cos(self.varphi), np.sin(self.varphi)

    @property
    def atom1(self):
        return np.cos(self.theta), np.sin(self.theta)

    @property
    def atom2(self):
        return np.cos(self.eta), np.sin(self.eta)


class ToffoliXi(NamedTuple):
    xi1: np.ndarray
    xi2: np.ndarray
    xi3: np.ndarray
    xi4: np.ndarray
    xi5: np.ndarray
    xi6: np.ndarray

    @property
    def total(self):
        return self.xi1 + self.xi2 + self.xi3 + self.xi4 + self.xi5 + self.xi6

    @property
    def efficiency(self):
        return self.xi1 + self.xi2 + self.xi3 + self.xi4 + self.xi5


@dataclass(frozen=True)
class GateMetrics:
    fidelity: float
    efficiency: float
    averaged: bool = False
    nodes: Optional[int] = None
    error_estimate: Optional[float] = None

    def __iter__(self):
        yield self.fidelity
        yield self.efficiency


def _scalar(x):
    return float(x) if np.ndim(x) == 0 else x


def _guard(den):
    if np.any(den < MIN_SURVIVING):
        raise DegenerateInputError("surviving norm is zero; fidelity undefined")


# ---------------------------------------------------------------------------
# CNOT
# ---------------------------------------------------------------------------

def _cnot_parts(r, ap, bp, a, b):
    num = np.abs(ap ** 2 + 0.5 * bp ** 2 * (2 * a * b * (r - 1) + r + 1)) ** 2
    den = (np.abs(ap) ** 2
           + 0.25 * np.abs(a * bp * (r - 1) + b * bp * (r + 1)) ** 2
           + 0.25 * np.abs(a * bp * (r + 1) + b * bp * (r - 1)) ** 2)
    return num, den


def cnot_efficiency_closed(r, angles: InputAngles):
    """Probability that the photon leaves the CNOT through the out port."""
    return _scalar(_cnot_parts(r, *angles.photon, *angles.atom1)[1])


def cnot_fidelity_closed(r, angles: InputAngles):
    num, den = _cnot_parts(r, *angles.photon, *angles.atom1)
    _guard(den)
    return _scalar(num / den)


# ---------------------------------------------------------------------------
# Toffoli
# ---------------------------------------------------------------------------

def _xi(r, ap, bp, a1, b1, a2, b2):
    m, p = r - 1, r + 1
    return ToffoliXi(
        np.abs(ap) ** 2,
        np.abs(bp * a1 * (a2 * m ** 3 + b2 * m ** 2 * p + 2 * a2 * p ** 2)) ** 2 / 64,
        np.abs(bp * a1 * (b2 * m ** 3 + a2 * m ** 2 * p + 2 * b2 * p ** 2)) ** 2 / 64,
        np.abs(bp * b1 * (a2 * m + b2 * p)) ** 2 / 4,
        np.abs(bp * b1 * (a2 * p + b2 * m)) ** 2 / 4,
        np.abs(bp * a1 * (a2 * p ** 2 * (1 - r) + b2 * p ** 2 * (1 - r))) ** 2 / 32,
    )


def _toffoli_overlap(r, ap, bp, a1, b1, a2, b2):
    m, p = r - 1, r + 1
    return np.abs(
        ap ** 2
        + bp ** 2 * a1 ** 2 / 8 * (m ** 3 + 2 * a2 * b2 * m ** 2 * p + 2 * p ** 2)
        + bp ** 2 * b1 ** 2 / 2 * (2 * a2 * b2 * m + p)
    ) ** 2


def xi_terms(r, angles: InputAngles) -> ToffoliXi:
    """The six norm contributions of the Toffoli output; xi6 is the discard leak."""
    return ToffoliXi(*map(_scalar, _xi(r, *angles.photon, *angles.atom1, *angles.atom2)))


def toffoli_fidelity_closed(r, angles: InputAngles):
    amps = (*angles.photon, *angles.atom1, *angles.atom2)
    den = _xi(r, *amps).total
    _guard(den)
    return _scalar(_toffoli_overlap(r, *amps) / den)


def toffoli_efficiency_closed(r, angles: InputAngles):
    return _scalar(_xi(r, *angles.photon, *angles.atom1, *angles.atom2).efficiency)


# ---------------------------------------------------------------------------
# Engine route
# ---------------------------------------------------------------------------

def metrics_from_engine(kind: str, r_values, angles: InputAngles) -> GateMetrics:
    """Fidelity and efficiency from an explicit run of the circuit.

    ``r_values`` is one coupled amplitude for every cavity, or a sequence
    with one per atom.  Empty-cavity amplitudes are -1.
    """
    kind = kind.upper()
    rs = list(np.atleast_1d(r_values))
    if kind == "CNOT":
        circuit = circuits.build_cnot(rs[0], R_EMPTY)
        atoms = [angles.atom1]
    elif kind == "TOFFOLI":
        r2 = rs[1] if len(rs) > 1 else rs[0]
        circuit = circuits.build_toffoli(rs[0], R_EMPTY, r2, R_EMPTY)
        atoms = [angles.atom1, angles.atom2]
    else:
        raise ParameterError(f"unknown gate {kind!r}")

    inp = circuit.input_state(angles.photon, atoms)
    res = circuits.run(circuit, inp)
    ideal = circuits.ideal_gate_matrix(kind) @ inp.to_vector(circuit.input_port)
    out = res.out_state.to_vector(circuit.out_port)
    surviving = res.final_state.total_norm()
    if surviving < MIN_SURVIVING:
        raise DegenerateInputError("surviving norm is zero; fidelity undefined")
    fidelity = float(abs(np.vdot(ideal, out)) ** 2 / surviving)
    efficiency = res.out_state.total_norm() if kind == "TOFFOLI" else surviving
    return GateMetrics(fidelity, efficiency)


# ---------------------------------------------------------------------------
# Angle averages
# ---------------------------------------------------------------------------

def _cnot_integrand(r):
    def f(phi, theta):
        num, den = _cnot_parts(r, np.cos(phi), np.sin(phi), np.cos(theta), np.sin(theta))
        _guard(den)
        return num / den, den
    return f


def _toffoli_integrand(r):
    def f(phi, theta, eta):
        amps = (np.cos(phi), np.sin(phi), np.cos(theta), np.sin(theta),
                np.cos(eta), np.sin(eta))
        xi = _xi(r, *amps)
        den = xi.total
        _guard(den)
        return _toffoli_overlap(r, *amps) / den, xi.efficiency
    return f


def node_multiplier(kind: str, r) -> int:
    """Power-of-two factor applied to the base node count at amplitude ``r``."""
    kind = kind.upper()
    if kind not in _REFINE_SCALE:
        raise ParameterError(f"unknown gate {kind!r}")
    need = _REFINE_SCALE[kind] / _REFINE_REF[kind]
    m = 1
    while m < _REFINE_CAP[kind] and m * abs(r) < need:
        m *= 2
    return m


def _average(integrand, dim, nodes):
    fbar, pbar = periodic_mean(integrand, dim, nodes)
    coarse = nodes // 2
    err = None
    if coarse >= 2:
        fc, pc = periodic_mean(integrand, dim, coarse)
        err = max(abs(fbar - fc), abs(pbar - pc))
    return GateMetrics(fbar, pbar, averaged=True, nodes=nodes, error_estimate=err)


def average_cnot(r, nodes: int = DEFAULT_NODES_CNOT, refine: bool = True) -> GateMetrics:
    """Mean fidelity and efficiency of the CNOT over (varphi, theta) in [0, 2pi)^2.

    ``nodes`` is the base count per angle.  With ``refine`` it is multiplied
    by ``node_multiplier("CNOT", r)``; the count actually used is reported in
    the result.  ``error_estimate`` is the change relative to a grid with
    half the nodes, an upper bound on the error once the rule has converged.
    """
    if refine:
        nodes *= node_multiplier("CNOT", r)
    return _average(_cnot_integrand(r), 2, nodes)


def average_toffoli(r, nodes: int = DEFAULT_NODES_TOFFOLI, refine: bool = True) -> GateMetrics:
    """Mean fidelity and efficiency of the Toffoli over [0, 2pi)^3.

    Node refinement works as in ``average_cnot``.
    """
    if refine:
        nodes *= node_multiplier("TOFFOLI", r)
    return _average(_toffoli_integrand(r), 3, nodes)
