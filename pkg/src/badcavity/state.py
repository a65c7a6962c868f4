"""
Sparse joint state of one flying photon and a few atomic qubits.

A basis label is (polarization, location, atom bits).  Polarization is ``"R"``
or ``"L"``; the location is a path or port name from a fixed, registered set;
atom bits are a tuple with one 0/1 entry per atom.  The state is a plain map
from labels to complex amplitudes and is allowed to be sub-normalized, since
cavities can absorb part of the photon.

Basis ordering used for dense vectors: photon polarization first, then atom 0,
atom 1, ..., with R < L and 0 < 1.

All ``apply_*`` functions return a new state and leave their argument alone.
"""

from __future__ import annotations

import itertools
import math
from collections import defaultdict
from typing import Iterable, Mapping, NamedTuple, Sequence

import numpy as np

from .errors import ParameterError, RoutingError, WiringError

POLARIZATIONS = ("R", "L")
NORM_EPS = 1e-9
ROUTING_TOL = 1e-12
_S = 1 / math.sqrt(2)


class BasisLabel(NamedTuple):
    pol: str
    loc: str
    atoms: tuple


class HybridState:
    """Amplitude map over :class:`BasisLabel`.

    Parameters
    ----------
    locations : sequence of str
        Registered location names.  Labels may only use these.
    atom_count : int
    amplitudes : mapping, optional
        ``BasisLabel`` (or plain 3-tuples) to complex.  Missing labels are zero.
    """

    __slots__ = ("locations", "atom_count", "_amps")

    def __init__(self, locations: Sequence[str], atom_count: int,
                 amplitudes: Mapping | None = None):
        self.locations = tuple(locations)
        if len(set(self.locations)) != len(self.locations):
            raise WiringError(f"duplicate location names in {self.locations}")
        if atom_count < 0:
            raise WiringError(f"atom_count must be >= 0, got {atom_count}")
        self.atom_count = int(atom_count)
        self._amps = {}
        for label, amp in (amplitudes or {}).items():
            label = BasisLabel(label[0], label[1], tuple(label[2]))
            self._check_label(label)
            self._amps[label] = self._amps.get(label, 0j) + complex(amp)

    def _check_label(self, label):
        if label.pol not in POLARIZATIONS:
            raise WiringError(f"unknown polarization {label.pol!r}")
        if label.loc not in self.locations:
            raise WiringError(f"unregistered location {label.loc!r}")
        if len(label.atoms) != self.atom_count or any(b not in (0, 1) for b in label.atoms):
            raise WiringError(f"atom bits {label.atoms!r} do not fit {self.atom_count} atoms")

    # -- construction -----------------------------------------------------

    @classmethod
    def product(cls, locations, loc, photon, atoms=()):
        """Product state (a|R> + b|L>) (x) (a_i|0> + b_i|1>)... with the photon at ``loc``."""
        atoms = [tuple(a) for a in atoms]
        state = cls(locations, len(atoms))
        state.require_location(loc)
        amps = {}
        for pol, pa in zip(POLARIZATIONS, photon):
            for bits in itertools.product((0, 1), repeat=len(atoms)):
                amp = complex(pa)
                for (a0, a1), b in zip(atoms, bits):
                    amp *= a1 if b else a0
                if amp != 0:
                    amps[BasisLabel(pol, loc, bits)] = amp
        state._amps = amps
        return state

    @classmethod
    def from_vector(cls, locations, loc, vector, atom_count):
        """Inverse of :meth:`to_vector`."""
        vector = np.asarray(vector, dtype=complex).ravel()
        if vector.size != 2 ** (atom_count + 1):
            raise ParameterError(
                f"vector of length {vector.size} does not match {atom_count} atoms")
        state = cls(locations, atom_count)
        state.require_location(loc)
        state._amps = {
            label: complex(v)
            for label, v in zip(_basis(loc, atom_count), vector) if v != 0
        }
        return state

    def to_vector(self, loc) -> np.ndarray:
        """Dense amplitudes at ``loc`` in the (pol, atom0, atom1, ...) ordering."""
        self.require_location(loc)
        return np.array([self._amps.get(lbl, 0j) for lbl in _basis(loc, self.atom_count)])

    def _new(self, amps) -> "HybridState":
        out = HybridState.__new__(HybridState)
        out.locations = self.locations
        out.atom_count = self.atom_count
        out._amps = amps
        return out

    # -- inspection -------------------------------------------------------

    def require_location(self, loc):
        if loc not in self.locations:
            raise WiringError(f"unregistered location {loc!r}")

    def require_atom(self, atom):
        if not (isinstance(atom, int) and 0 <= atom < self.atom_count):
            raise WiringError(f"atom index {atom!r} out of range for {self.atom_count} atoms")

    def amplitude(self, pol, loc, atoms) -> complex:
        return self._amps.get(BasisLabel(pol, loc, tuple(atoms)), 0j)

    def items(self):
        return self._amps.items()

    def nonzero(self, tol=0.0):
        return {k: v for k, v in self._amps.items() if abs(v) > tol}

    def occupied_locations(self, tol=0.0) -> set:
        return {k.loc for k, v in self._amps.items() if abs(v) > tol}

    def total_norm(self) -> float:
        return math.fsum(abs(v) ** 2 for v in self._amps.values())

    def project(self, loc) -> "HybridState":
        self.require_location(loc)
        return self._new({k: v for k, v in self._amps.items() if k.loc == loc})

    def relocated(self, locations) -> "HybridState":
        """Same amplitudes, new registered location set (must cover all labels)."""
        return HybridState(locations, self.atom_count, self._amps)

    def allclose(self, other: "HybridState", atol=1e-12) -> bool:
        keys = set(self._amps) | set(other._amps)
        return all(abs(self._amps.get(k, 0j) - other._amps.get(k, 0j)) <= atol for k in keys)

    def __add__(self, other):
        amps = dict(self._amps)
        for k, v in other._amps.items():
            amps[k] = amps.get(k, 0j) + v
        return self._new(amps)

    def __mul__(self, c):
        return self._new({k: c * v for k, v in self._amps.items()})

    __rmul__ = __mul__

    def __repr__(self):
        terms = " + ".join(
            f"({v:.6g})|{k.pol},{''.join(map(str, k.atoms))}>_{k.loc}"
            for k, v in sorted(self._amps.items()) if v != 0
        )
        return f"HybridState({terms or '0'})"


def _basis(loc, atom_count):
    for pol in POLARIZATIONS:
        for bits in itertools.product((0, 1), repeat=atom_count):
            yield BasisLabel(pol, loc, bits)


def total_norm(state: HybridState) -> float:
    return state.total_norm()


def project_location(state: HybridState, loc) -> HybridState:
    """Restriction of ``state`` to labels at ``loc``; not renormalized."""
    return state.project(loc)


def _accumulate(pairs: Iterable):
    amps = defaultdict(complex)
    for label, amp in pairs:
        amps[label] += amp
    return dict(amps)


def apply_cpbs(state: HybridState, in_a, in_b, out_a, out_b) -> HybridState:
    """Circularly polarizing beam splitter: R transmits, L reflects.

    R keeps its line (in_a -> out_a, in_b -> out_b); L crosses
    (in_a -> out_b, in_b -> out_a).  No phase on either.
    """
    for loc in (in_a, in_b, out_a, out_b):
        state.require_location(loc)
    if len({in_a, in_b, out_a, out_b}) != 4:
        raise WiringError(f"cpbs ports must be distinct: {in_a},{in_b} -> {out_a},{out_b}")
    route = {
        ("R", in_a): out_a, ("R", in_b): out_b,
        ("L", in_a): out_b, ("L", in_b): out_a,
    }

    def moved():
        for k, v in state.items():
            dest = route.get((k.pol, k.loc))
            yield (k if dest is None else k._replace(loc=dest)), v

    return state._new(_accumulate(moved()))


def _photon_rotation(state, loc, matrix):
    state.require_location(loc)

    def rotated():
        for k, v in state.items():
            if k.loc != loc:
                yield k, v
                continue
            col = POLARIZATIONS.index(k.pol)
            for row, pol in enumerate(POLARIZATIONS):
                if matrix[row][col] != 0:
                    yield k._replace(pol=pol), matrix[row][col] * v

    return state._new(_accumulate(rotated()))


def apply_photon_hadamard(state: HybridState, loc) -> HybridState:
    """Half-wave plate at 22.5 deg: |R> -> (|R>+|L>)/sqrt2, |L> -> (|R>-|L>)/sqrt2."""
    return _photon_rotation(state, loc, ((_S, _S), (_S, -_S)))


def apply_photon_sigma_x(state: HybridState, loc) -> HybridState:
    """Swap R and L at ``loc``."""
    return _photon_rotation(state, loc, ((0, 1), (1, 0)))


def apply_atom_hadamard(state: HybridState, atom: int) -> HybridState:
    """|0> -> (|0>+|1>)/sqrt2, |1> -> (|0>-|1>)/sqrt2 on one atom, all photon labels."""
    state.require_atom(atom)

    def rotated():
        for k, v in state.items():
            bit = k.atoms[atom]
            for new in (0, 1):
                bits = k.atoms[:atom] + (new,) + k.atoms[atom + 1:]
                sign = -1 if (bit and new) else 1
                yield k._replace(atoms=bits), sign * _S * v

    return state._new(_accumulate(rotated()))


def apply_cavity_scatter(state: HybridState, loc, atom: int,
                         r_coupled: complex, r_empty: complex) -> HybridState:
    """Reflect the photon at ``loc`` off the cavity holding ``atom``.

    Only L couples: amplitudes with the atom in |0> pick up ``r_coupled``,
    with the atom in |1> pick up ``r_empty``.  R never reaches a cavity in
    these circuits, so finding any is treated as a mis-built circuit.
    """
    state.require_location(loc)
    state.require_atom(atom)
    factors = (complex(r_coupled), complex(r_empty))
    amps = {}
    for k, v in state.items():
        if k.loc == loc:
            if k.pol == "R":
                if abs(v) > ROUTING_TOL:
                    raise RoutingError(
                        f"R-polarized amplitude {v:.3g} reached the cavity at {loc!r}")
                continue
            v = v * factors[k.atoms[atom]]
        amps[k] = v
    return state._new(amps)


def apply_relabel(state: HybridState, src, dst) -> HybridState:
    """Move everything at ``src`` to ``dst`` with no phase (mirror, delay line)."""
    state.require_location(src)
    state.require_location(dst)
    return state._new(_accumulate(
        ((k._replace(loc=dst) if k.loc == src else k), v) for k, v in state.items()
    ))
