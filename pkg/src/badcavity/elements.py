"""Circuit elements.  Each one is a small frozen record plus an ``apply``."""

from __future__ import annotations

from dataclasses import dataclass
from typing import ClassVar

from . import state as st
from .errors import WiringError


@dataclass(frozen=True)
class CPBS:
    in_a: str
    in_b: str
    out_a: str
    out_b: str
    kind: ClassVar[str] = "cpbs"

    def __post_init__(self):
        if len({self.in_a, self.in_b, self.out_a, self.out_b}) != 4:
            raise WiringError(f"cpbs ports must be distinct: {self}")

    @property
    def locations(self):
        return (self.in_a, self.in_b, self.out_a, self.out_b)

    atoms = ()

    def apply(self, state, reflections=None):
        return st.apply_cpbs(state, self.in_a, self.in_b, self.out_a, self.out_b)


@dataclass(frozen=True)
class PhotonHadamard:
    loc: str
    kind: ClassVar[str] = "hwp"
    atoms = ()

    @property
    def locations(self):
        return (self.loc,)

    def apply(self, state, reflections=None):
        return st.apply_photon_hadamard(state, self.loc)


@dataclass(frozen=True)
class PhotonSigmaX:
    loc: str
    kind: ClassVar[str] = "sigmax"
    atoms = ()

    @property
    def locations(self):
        return (self.loc,)

    def apply(self, state, reflections=None):
        return st.apply_photon_sigma_x(state, self.loc)


@dataclass(frozen=True)
class AtomHadamard:
    atom: int
    kind: ClassVar[str] = "atomh"
    locations = ()

    @property
    def atoms(self):
        return (self.atom,)

    def apply(self, state, reflections=None):
        return st.apply_atom_hadamard(state, self.atom)


@dataclass(frozen=True)
class CavityScatter:
    """Photon at ``loc`` reflects off the cavity holding ``atom``.

    Reflection amplitudes belong to the node, not the element, and are
    looked up by atom index at run time.
    """

    loc: str
    atom: int
    kind: ClassVar[str] = "cavity"

    @property
    def locations(self):
        return (self.loc,)

    @property
    def atoms(self):
        return (self.atom,)

    def apply(self, state, reflections):
        try:
            r, r0 = reflections[self.atom]
        except (KeyError, TypeError):
            raise WiringError(f"no reflection amplitudes bound for atom {self.atom}") from None
        return st.apply_cavity_scatter(state, self.loc, self.atom, r, r0)


@dataclass(frozen=True)
class Relabel:
    """Mirror or delay line: moves the photon from one path to another."""

    src: str
    dst: str
    kind: ClassVar[str] = "mirror"
    atoms = ()

    def __post_init__(self):
        if self.src == self.dst:
            raise WiringError(f"mirror must change path, got {self.src!r} -> {self.dst!r}")

    @property
    def locations(self):
        return (self.src, self.dst)

    def apply(self, state, reflections=None):
        return st.apply_relabel(state, self.src, self.dst)


ELEMENT_TYPES = (CPBS, PhotonHadamard, PhotonSigmaX, AtomHadamard, CavityScatter, Relabel)
