"""
Circuit descriptions, the CNOT and Toffoli builders, and the runner.

Both builders return a :class:`CircuitSpec` whose ``reflections`` field maps
atom index -> (r_coupled, r_empty).  Reflections are a run-time binding and
take no part in spec equality, so a spec read back from text compares equal
to the builder output it was written from.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Mapping, Optional

import numpy as np

from .elements import (CPBS, AtomHadamard, CavityScatter, PhotonHadamard,
                       PhotonSigmaX, Relabel)
from .errors import ParameterError, RoutingError, WiringError
from .state import NORM_EPS, ROUTING_TOL, HybridState

__all__ = [
    "CircuitSpec",
    "RunOutput",
    "build_cnot",
    "build_toffoli",
    "run",
    "induced_matrix",
    "ideal_gate_matrix",
    "IDEAL",
]

IDEAL = (1.0, -1.0)


@dataclass(frozen=True)
class CircuitSpec:
    atom_count: int
    input_port: str
    out_port: str
    discard_port: Optional[str]
    paths: tuple
    elements: tuple
    checkpoints: tuple = ()
    reflections: Mapping = field(default_factory=dict, compare=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "paths", tuple(self.paths))
        object.__setattr__(self, "elements", tuple(self.elements))
        object.__setattr__(self, "checkpoints", tuple(tuple(c) for c in self.checkpoints))
        object.__setattr__(self, "reflections", MappingProxyType(
            {int(k): (complex(v[0]), complex(v[1])) for k, v in dict(self.reflections).items()}))

        locs = self.locations
        if len(set(locs)) != len(locs):
            raise WiringError(f"duplicate location names: {locs}")
        known = set(locs)
        for el in self.elements:
            for loc in el.locations:
                if loc not in known:
                    raise WiringError(f"{el.kind} references unregistered location {loc!r}")
            for a in el.atoms:
                if not 0 <= a < self.atom_count:
                    raise WiringError(f"{el.kind} references atom {a} of {self.atom_count}")
        labels = [c[0] for c in self.checkpoints]
        if len(set(labels)) != len(labels):
            raise WiringError(f"duplicate checkpoint labels: {labels}")
        for label, pos in self.checkpoints:
            if not 0 <= pos <= len(self.elements):
                raise WiringError(f"checkpoint {label!r} at {pos} is outside the sequence")

    @property
    def ports(self) -> tuple:
        ports = (self.input_port, self.out_port)
        return ports + ((self.discard_port,) if self.discard_port else ())

    @property
    def locations(self) -> tuple:
        return self.ports + self.paths

    @property
    def cavity_atoms(self) -> set:
        return {el.atom for el in self.elements if isinstance(el, CavityScatter)}

    def with_reflections(self, reflections) -> "CircuitSpec":
        return CircuitSpec(self.atom_count, self.input_port, self.out_port,
                           self.discard_port, self.paths, self.elements,
                           self.checkpoints, reflections)

    def input_state(self, photon=(1, 0), atoms=None) -> HybridState:
        """Product input at the input port; ``atoms`` defaults to all |0>."""
        if atoms is None:
            atoms = [(1, 0)] * self.atom_count
        if len(atoms) != self.atom_count:
            raise ParameterError(f"expected {self.atom_count} atom states, got {len(atoms)}")
        return HybridState.product(self.locations, self.input_port, photon, atoms)


@dataclass
class RunOutput:
    out_state: HybridState
    discard_state: HybridState
    absorbed: float
    checkpoint_states: dict
    final_state: HybridState


def _resolve_reflections(circuit, reflections):
    bound = dict(circuit.reflections)
    if reflections is not None:
        if not isinstance(reflections, Mapping):
            # a single (r, r0) pair applies to every cavity
            reflections = {a: reflections for a in circuit.cavity_atoms}
        bound.update({int(k): (complex(v[0]), complex(v[1])) for k, v in reflections.items()})
    missing = circuit.cavity_atoms - set(bound)
    if missing:
        raise WiringError(f"no reflection amplitudes bound for atoms {sorted(missing)}")
    return bound


def run(circuit: CircuitSpec, input_state: HybridState, reflections=None,
        check_norm: bool = True) -> RunOutput:
    """Push ``input_state`` through the circuit.

    ``reflections`` overrides or supplies the per-atom (r, r0) pairs; a bare
    pair applies to every cavity.  The input must sit entirely at the input
    port and, unless ``check_norm`` is off, be normalized.
    """
    bound = _resolve_reflections(circuit, reflections)
    if input_state.atom_count != circuit.atom_count:
        raise WiringError(
            f"input has {input_state.atom_count} atoms, circuit has {circuit.atom_count}")
    stray = input_state.occupied_locations() - {circuit.input_port}
    if stray:
        raise WiringError(f"input amplitude outside the input port: {sorted(stray)}")
    n_in = input_state.total_norm()
    if check_norm and abs(n_in - 1) > NORM_EPS:
        raise ParameterError(f"input state is not normalized (norm^2 = {n_in:.12g})")

    state = input_state.relocated(circuit.locations)
    marks = {}
    for label, pos in circuit.checkpoints:
        marks.setdefault(pos, []).append(label)
    snapshots = {label: state for label in marks.get(0, ())}
    for i, el in enumerate(circuit.elements, start=1):
        state = el.apply(state, bound)
        for label in marks.get(i, ()):
            snapshots[label] = state

    stranded = state.occupied_locations(ROUTING_TOL) - set(circuit.ports)
    if stranded:
        raise RoutingError(f"photon left on internal paths {sorted(stranded)}")

    out = state.project(circuit.out_port)
    if circuit.discard_port:
        discard = state.project(circuit.discard_port)
    else:
        discard = HybridState(circuit.locations, circuit.atom_count)
    return RunOutput(
        out_state=out,
        discard_state=discard,
        absorbed=n_in - state.total_norm(),
        checkpoint_states=snapshots,
        final_state=state,
    )


def induced_matrix(circuit: CircuitSpec, reflections=None) -> np.ndarray:
    """Linear map from input-port amplitudes to out-port amplitudes.

    Columns are indexed by the input basis, rows by the output basis, both in
    the (pol, atom0, atom1, ...) ordering with R < L and 0 < 1.
    """
    dim = 2 ** (circuit.atom_count + 1)
    mat = np.zeros((dim, dim), dtype=complex)
    for j in range(dim):
        e = np.zeros(dim)
        e[j] = 1
        inp = HybridState.from_vector(circuit.locations, circuit.input_port, e,
                                      circuit.atom_count)
        res = run(circuit, inp, reflections)
        mat[:, j] = res.out_state.to_vector(circuit.out_port)
    return mat


def ideal_gate_matrix(kind: str) -> np.ndarray:
    """Controlled-X (``"CNOT"``) or controlled-controlled-X (``"TOFFOLI"``).

    Photon polarization is the first control with L as "on"; the last
    qubit is the target.
    """
    kind = kind.upper()
    if kind == "CNOT":
        n = 2
    elif kind == "TOFFOLI":
        n = 3
    else:
        raise ParameterError(f"unknown gate {kind!r}")
    dim = 2 ** n
    mat = np.eye(dim, dtype=complex)
    # all controls on: the last two indices
    mat[dim - 2:, dim - 2:] = [[0, 1], [1, 0]]
    return mat


# ---------------------------------------------------------------------------
# Builders
# ---------------------------------------------------------------------------

def build_cnot(r_coupled=IDEAL[0], r_empty=IDEAL[1]) -> CircuitSpec:
    """Photon-controlled NOT on one atom.

    CPBS1 sends R to path p1 and L to p2.  The atom gets a Hadamard, L on p2
    reflects off the cavity and a mirror brings it onto p3, the atom gets a
    second Hadamard, and CPBS2 merges p1 (R) with p3 (L) into the out port.
    ``vac`` is the unused second input of each CPBS.
    """
    elements = (
        CPBS("in", "vac", "p1", "p2"),
        AtomHadamard(0),
        CavityScatter("p2", 0),
        Relabel("p2", "p3"),
        AtomHadamard(0),
        CPBS("p1", "p3", "out", "discard"),
    )
    return CircuitSpec(
        atom_count=1,
        input_port="in",
        out_port="out",
        discard_port="discard",
        paths=("vac", "p1", "p2", "p3"),
        elements=elements,
        checkpoints=(("psi1", 1), ("psi2", 2), ("psi3", 4), ("psi4", 6)),
        reflections={0: (r_coupled, r_empty)},
    )


def build_toffoli(r1_coupled=IDEAL[0], r1_empty=IDEAL[1],
                  r2_coupled=None, r2_empty=None) -> CircuitSpec:
    """Photon + atom 0 controlled NOT on atom 1.

    Atom 0 sits in cavity 1 (visited twice), atom 1 in cavity 2.  The
    second-node amplitudes default to the first node's.

    Path names: p1..p5 as in the usual drawing of this setup, ``c1``/``c2``
    for the cavity arms, ``m1``..``m3`` for the mirror arms that carry the
    transmitted R while L visits a cavity.  CPBS5 sends R from p2 and L from
    p5 to the out port; R left on p5 goes to the discard port.
    """
    if r2_coupled is None:
        r2_coupled = r1_coupled
    if r2_empty is None:
        r2_empty = r1_empty
    elements = (
        CPBS("in", "vac", "p2", "p1"),
        # block A: photon Hadamard, cavity 1, photon Hadamard and flip
        PhotonHadamard("p1"),
        CPBS("p1", "vac", "m1", "c1"),
        CavityScatter("c1", 0),
        CPBS("m1", "c1", "p3", "discard"),
        PhotonHadamard("p3"),
        PhotonSigmaX("p3"),
        # block B: atom 1 Hadamard, cavity 2, atom 1 Hadamard
        AtomHadamard(1),
        CPBS("p3", "vac", "m2", "c2"),
        CavityScatter("c2", 1),
        CPBS("m2", "c2", "p4", "discard"),
        AtomHadamard(1),
        # block C: flip and Hadamard, cavity 1 again, Hadamard
        PhotonSigmaX("p4"),
        PhotonHadamard("p4"),
        CPBS("p4", "vac", "m3", "c1"),
        CavityScatter("c1", 0),
        CPBS("m3", "c1", "p5", "discard"),
        PhotonHadamard("p5"),
        CPBS("p2", "p5", "out", "discard"),
    )
    return CircuitSpec(
        atom_count=2,
        input_port="in",
        out_port="out",
        discard_port="discard",
        paths=("vac", "p1", "p2", "p3", "p4", "p5", "m1", "m2", "m3", "c1", "c2"),
        elements=elements,
        checkpoints=(("phi1", 1), ("phi2", 7), ("phi3", 12), ("phi_f", 19)),
        reflections={0: (r1_coupled, r1_empty), 1: (r2_coupled, r2_empty)},
    )
