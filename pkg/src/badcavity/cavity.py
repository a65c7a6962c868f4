"""
Single-photon reflection off an atom-cavity node.

A single-sided cavity with damping rate ``kappa`` holds a three-level atom
coupled with strength ``g``; the atom's excited state decays at ``gamma``.
In the weak-excitation limit the reflected amplitude of a probe at
frequency ``omega_p`` is

    r(w) = ([i(wc - w) - k/2][i(w0 - w) + y/2] + g^2)
         / ([i(wc - w) + k/2][i(w0 - w) + y/2] + g^2)

and the bare cavity (g = 0) gives r0(w) = (i(wc - w) - k/2) / (i(wc - w) + k/2).

Units
-----
Rates and frequencies are entered as the numbers usually quoted as
``[g, kappa, gamma] / 2pi`` in MHz.  Every expression here is homogeneous
of degree zero in them, so the 2pi and the MHz cancel.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import ParameterError

__all__ = [
    "CavityParams",
    "ReflectionPair",
    "RegimeReport",
    "Spectrum",
    "reflection_coefficient",
    "empty_cavity_reflection",
    "reflection_pair",
    "resonant_reflection",
    "regime_check",
    "reflection_spectrum",
]


def _finite(name, value):
    if not np.all(np.isfinite(value)):
        raise ParameterError(f"{name} must be finite, got {value!r}")


@dataclass(frozen=True)
class CavityParams:
    """Physical parameters of one atom-cavity node.

    ``omega_c`` and ``omega_0`` are detunings from an arbitrary common
    reference (usually the probe), in the same units as the rates.
    """

    g: float
    kappa: float
    gamma: float
    omega_c: float = 0.0
    omega_0: float = 0.0

    def __post_init__(self):
        for name in ("g", "kappa", "gamma", "omega_c", "omega_0"):
            _finite(name, getattr(self, name))
        if self.g < 0:
            raise ParameterError(f"g must be >= 0, got {self.g}")
        if self.kappa <= 0:
            raise ParameterError(f"kappa must be > 0, got {self.kappa}")
        if self.gamma <= 0:
            raise ParameterError(f"gamma must be > 0, got {self.gamma}")

    def coupling_ratio(self) -> float:
        """g / sqrt(kappa * gamma)."""
        return self.g / math.sqrt(self.kappa * self.gamma)

    @property
    def resonant(self) -> bool:
        return self.omega_c == self.omega_0


class ReflectionPair(NamedTuple):
    r_coupled: complex
    r_empty: complex


def reflection_coefficient(params: CavityParams, omega_p=0.0):
    """Reflection amplitude with the atom coupled to the cavity mode.

    ``omega_p`` may be a scalar or an array; the result has the same shape.
    """
    _finite("omega_p", omega_p)
    omega_p = np.asarray(omega_p, dtype=float)
    cav = 1j * (params.omega_c - omega_p)
    atom = 1j * (params.omega_0 - omega_p) + params.gamma / 2
    g2 = params.g ** 2
    r = ((cav - params.kappa / 2) * atom + g2) / ((cav + params.kappa / 2) * atom + g2)
    return complex(r) if np.ndim(r) == 0 else r


def empty_cavity_reflection(params: CavityParams, omega_p=0.0):
    """Reflection amplitude of the bare cavity; unit modulus everywhere."""
    _finite("omega_p", omega_p)
    omega_p = np.asarray(omega_p, dtype=float)
    cav = 1j * (params.omega_c - omega_p)
    r0 = (cav - params.kappa / 2) / (cav + params.kappa / 2)
    return complex(r0) if np.ndim(r0) == 0 else r0


def reflection_pair(params: CavityParams, omega_p: float = 0.0) -> ReflectionPair:
    return ReflectionPair(
        reflection_coefficient(params, omega_p),
        empty_cavity_reflection(params, omega_p),
    )


def resonant_reflection(x):
    """Reflection amplitude on resonance as a function of x = g / sqrt(kappa*gamma).

    Returns (4x^2 - 1) / (4x^2 + 1), which runs from -1 at x = 0 towards 1.
    """
    _finite("x", x)
    arr = np.asarray(x, dtype=float)
    if np.any(arr < 0):
        raise ParameterError(f"coupling ratio must be >= 0, got {x!r}")
    s = 4.0 * arr * arr
    r = (s - 1.0) / (s + 1.0)
    return float(r) if np.ndim(r) == 0 else r


@dataclass(frozen=True)
class RegimeReport:
    """Scale separation kappa >> g^2/kappa >> gamma, tested with a margin factor."""

    kappa: float
    g2_over_kappa: float
    gamma: float
    coupling_ratio: float
    margin: float
    cavity_fast: bool
    cooperative: bool

    @property
    def bad_cavity(self) -> bool:
        return self.cavity_fast and self.cooperative

    def as_dict(self) -> dict:
        return {
            "kappa": self.kappa,
            "g2_over_kappa": self.g2_over_kappa,
            "gamma": self.gamma,
            "coupling_ratio": self.coupling_ratio,
            "margin": self.margin,
            "cavity_fast": self.cavity_fast,
            "cooperative": self.cooperative,
            "bad_cavity": self.bad_cavity,
        }


def regime_check(params: CavityParams, margin: float = 2.0) -> RegimeReport:
    """Check the bad-cavity hierarchy.

    ``cavity_fast`` is kappa > margin * g^2/kappa and ``cooperative`` is
    g^2/kappa > margin * gamma.
    """
    if not (math.isfinite(margin) and margin >= 1):
        raise ParameterError(f"margin must be a finite number >= 1, got {margin}")
    mid = params.g ** 2 / params.kappa
    return RegimeReport(
        kappa=params.kappa,
        g2_over_kappa=mid,
        gamma=params.gamma,
        coupling_ratio=params.coupling_ratio(),
        margin=margin,
        cavity_fast=params.kappa > margin * mid,
        cooperative=mid > margin * params.gamma,
    )


class Spectrum(NamedTuple):
    omega_p: np.ndarray
    r: np.ndarray
    r0: np.ndarray


def reflection_spectrum(params: CavityParams, omega_min: float, omega_max: float,
                        n: int) -> Spectrum:
    """Tabulate both reflection amplitudes on an inclusive linear grid."""
    _finite("omega range", (omega_min, omega_max))
    if n < 2:
        raise ParameterError(f"need at least 2 points, got {n}")
    if not omega_max > omega_min:
        raise ParameterError(f"empty frequency range [{omega_min}, {omega_max}]")
    grid = np.linspace(omega_min, omega_max, n)
    return Spectrum(
        grid,
        np.asarray(reflection_coefficient(params, grid)),
        np.asarray(empty_cavity_reflection(params, grid)),
    )
