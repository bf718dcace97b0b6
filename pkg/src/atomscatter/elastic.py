"""Steady-state elastic scattering of a monochromatic beam by one atom.

All quantities are in the frame rotating at the carrier.  Powers and field
amplitudes are in arbitrary units with the incident amplitude ``A = sqrt(P)``.
Functions broadcast over numpy arrays of detuning (and of drive parameters).
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

__all__ = [
    "UnsupportedRegimeError",
    "AtomParams",
    "CouplingParams",
    "DriveParams",
    "ChannelFields",
    "ChannelPowers",
    "scattered_power",
    "scattered_phase",
    "channel_fields",
    "channel_powers",
    "scattered_power_forward",
]


class UnsupportedRegimeError(ValueError):
    """The channel partition is only defined for elastic scattering (s = 0)."""


@dataclass(frozen=True)
class AtomParams:
    """Two-level atom; ``gamma`` is the spontaneous emission rate.

    ``gamma = 1`` gives normalized units (detuning in linewidths, time in
    lifetimes).
    """

    gamma: float = 1.0

    def __post_init__(self):
        if not (np.isfinite(self.gamma) and self.gamma > 0):
            raise ValueError(f"gamma must be finite and > 0, got {self.gamma}")


@dataclass(frozen=True)
class CouplingParams:
    """Weighted solid-angle fraction ``omega`` and spatial mode overlap ``eta``."""

    omega: float
    eta: float

    def __post_init__(self):
        for name in ("omega", "eta"):
            v = getattr(self, name)
            if not 0.0 <= v <= 1.0:
                raise ValueError(f"{name} must lie in [0, 1], got {v}")

    @property
    def coupling(self) -> float:
        """``omega * eta**2``, the mode-matched fraction."""
        return self.omega * self.eta**2


@dataclass(frozen=True)
class DriveParams:
    """Incident beam: power, global phase and saturation parameter.

    ``power`` and ``phi0`` may be arrays broadcasting against the detuning.
    """

    power: float = 1.0
    phi0: float = 0.0
    saturation: float = 0.0

    def __post_init__(self):
        if np.any(np.asarray(self.power) < 0):
            raise ValueError("power must be >= 0")
        if not self.saturation >= 0:
            raise ValueError(f"saturation must be >= 0, got {self.saturation}")

    @classmethod
    def from_amplitude(cls, amplitude, phi0=0.0):
        return cls(power=np.asarray(amplitude, dtype=float) ** 2, phi0=phi0)

    @property
    def amplitude(self):
        return np.sqrt(self.power)


class ChannelFields(NamedTuple):
    e_coh: complex
    e_incoh: complex
    e_back: complex


class ChannelPowers(NamedTuple):
    p_coh: float
    p_incoh: float
    p_back: float

    @property
    def total(self):
        return self.p_coh + self.p_incoh + self.p_back


def _lorentz_denominator(delta, atom):
    return np.asarray(delta, dtype=float) ** 2 + 0.25 * atom.gamma**2


def scattered_power(power, coupling, delta, atom=AtomParams(), saturation=0.0):
    """Total power scattered by the atom.

    ``4 P omega eta^2 / ((4 delta^2/gamma^2 + 1)(1 + s)^2)``.
    """
    if np.any(np.asarray(power) < 0) or saturation < 0:
        raise ValueError("power and saturation must be >= 0")
    x = 2.0 * np.asarray(delta, dtype=float) / atom.gamma
    return 4.0 * np.asarray(power) * coupling.coupling / ((x**2 + 1.0) * (1.0 + saturation) ** 2)


def scattered_phase(delta, atom=AtomParams(), gouy=False):
    """Phase of the scattered wave relative to the incident one.

    ``arctan(2 delta / gamma) + pi/2``; with ``gouy`` the forward,
    interfering part picks up another ``pi/2``.
    """
    offset = np.pi if gouy else 0.5 * np.pi
    return np.arctan(2.0 * np.asarray(delta, dtype=float) / atom.gamma) + offset


def _require_elastic(drive):
    if drive.saturation != 0:
        raise UnsupportedRegimeError(
            f"channel partition requires saturation = 0, got {drive.saturation}"
        )


def channel_fields(drive, coupling, delta, atom=AtomParams()) -> ChannelFields:
    """Complex field amplitudes in the coherent, incoherent and backward channels.

    The global incident phase ``drive.phi0`` multiplies all three channels.

    Raises
    ------
    UnsupportedRegimeError
        If ``drive.saturation`` is not zero.
    """
    _require_elastic(drive)
    om, eta, g = coupling.omega, coupling.eta, atom.gamma
    a = drive.amplitude
    global_phase = np.exp(1j * np.asarray(drive.phi0, dtype=float))
    scale = g * a / np.sqrt(_lorentz_denominator(delta, atom))
    plain = np.exp(1j * scattered_phase(delta, atom)) * global_phase
    gouy = np.exp(1j * scattered_phase(delta, atom, gouy=True)) * global_phase
    e_back = eta * np.sqrt(om * (1.0 - om)) * scale * plain
    e_incoh = om * eta * np.sqrt(1.0 - eta**2) * scale * plain
    e_coh = om * eta**2 * scale * gouy + a * global_phase
    return ChannelFields(e_coh, e_incoh, e_back)


def channel_powers(drive, coupling, delta, atom=AtomParams()) -> ChannelPowers:
    """Powers in the three output channels; they sum to the incident power."""
    _require_elastic(drive)
    om, eta = coupling.omega, coupling.eta
    a2 = np.asarray(drive.power, dtype=float)
    lor = atom.gamma**2 / _lorentz_denominator(delta, atom)
    p_back = (1.0 - om) * lor * om * eta**2 * a2
    p_coh = (1.0 + lor * (om**2 * eta**4 - om * eta**2)) * a2
    p_incoh = lor * om**2 * eta**2 * (1.0 - eta**2) * a2
    return ChannelPowers(p_coh, p_incoh, p_back)


def scattered_power_forward(drive, coupling, delta, atom=AtomParams()):
    """Scattered power emitted into the solid angle of the focusing optics."""
    _require_elastic(drive)
    lor = atom.gamma**2 / _lorentz_denominator(delta, atom)
    return lor * coupling.omega**2 * coupling.eta**2 * np.asarray(drive.power, dtype=float)
