"""Response of the atom to a rising exponential pulse.

The incident envelope is ``A0 exp(gamma t / 2) H(-t)``, i.e. its time
constant equals the atomic lifetime.  Each spectral component is scattered
elastically, so the output spectra are rational functions of the detuning;
the coherent channel splits exactly into a rising and a decaying exponential.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .elastic import AtomParams
from .numerics import (
    DetuningGrid,
    GridMismatchError,
    lorentzian_integral,
    lorentzian_squared_integral,
    spectral_energy,
)

__all__ = [
    "CHANNELS",
    "PulseParams",
    "ChannelSpectra",
    "ExpDecomposition",
    "rising_exp_spectrum",
    "decaying_exp_spectrum",
    "pulse_spectra",
    "scatter_pulse",
    "decompose_coherent",
    "absorbed_fraction",
    "absorbed_fraction_parseval",
    "channel_energies",
    "analytic_time_domain",
]

CHANNELS = ("coh", "incoh", "back")


@dataclass(frozen=True)
class PulseParams:
    """Peak amplitude ``a0`` of the rising exponential; its rate is ``atom.gamma``."""

    a0: float = 1.0
    atom: AtomParams = AtomParams()

    def __post_init__(self):
        if not self.a0 >= 0:
            raise ValueError(f"a0 must be >= 0, got {self.a0}")

    @property
    def gamma(self) -> float:
        return self.atom.gamma

    @property
    def energy(self) -> float:
        """Energy of the incident pulse, ``a0**2 / gamma``."""
        return self.a0**2 / self.gamma


@dataclass(frozen=True)
class ChannelSpectra:
    grid: DetuningGrid
    s_coh: np.ndarray
    s_incoh: np.ndarray
    s_back: np.ndarray

    def __post_init__(self):
        for name in ("s_coh", "s_incoh", "s_back"):
            col = np.asarray(getattr(self, name), dtype=complex)
            if col.shape != (self.grid.n,):
                raise GridMismatchError(f"{name} has shape {col.shape}, expected ({self.grid.n},)")
            object.__setattr__(self, name, col)

    def __getitem__(self, channel):
        if channel not in CHANNELS:
            raise KeyError(channel)
        return getattr(self, "s_" + channel)


@dataclass(frozen=True)
class ExpDecomposition:
    """Coherent spectrum as ``rising/(g/2 + i d) + decaying/(g/2 - i d)``."""

    rising_coeff: complex
    decaying_coeff: complex

    def spectrum(self, delta, atom=AtomParams()):
        delta = np.asarray(delta, dtype=float)
        half = 0.5 * atom.gamma
        return self.rising_coeff / (half + 1j * delta) + self.decaying_coeff / (half - 1j * delta)


def rising_exp_spectrum(pulse, delta):
    """Spectrum ``A0 / (gamma/2 + i delta)`` of ``A0 exp(gamma t/2) H(-t)``."""
    return pulse.a0 / (0.5 * pulse.gamma + 1j * np.asarray(delta, dtype=float))


def decaying_exp_spectrum(pulse, delta):
    """Spectrum ``A0 / (gamma/2 - i delta)`` of ``A0 exp(-gamma t/2) H(t)``."""
    return pulse.a0 / (0.5 * pulse.gamma - 1j * np.asarray(delta, dtype=float))


def pulse_spectra(pulse, coupling, delta, phi0=0.0):
    """Coherent, incoherent and backward output spectra at arbitrary detunings."""
    om, eta, g = coupling.omega, coupling.eta, pulse.gamma
    delta = np.asarray(delta, dtype=float)
    denom = delta**2 + 0.25 * g**2
    scale = pulse.a0 * np.exp(1j * phi0) / denom
    s_back = 1j * eta * g * np.sqrt(om * (1.0 - om)) * scale
    s_incoh = 1j * g * om * eta * np.sqrt(1.0 - eta**2) * scale
    s_coh = (g * (0.5 - om * eta**2) - 1j * delta) * scale
    return s_coh, s_incoh, s_back


def scatter_pulse(pulse, coupling, grid, phi0=0.0) -> ChannelSpectra:
    """Output spectra of the three channels on ``grid``."""
    s_coh, s_incoh, s_back = pulse_spectra(pulse, coupling, grid.samples, phi0)
    return ChannelSpectra(grid, s_coh, s_incoh, s_back)


def decompose_coherent(pulse, coupling, phi0=0.0) -> ExpDecomposition:
    """Split the coherent spectrum into rising and decaying exponential parts.

    The decaying coefficient carries an explicit minus sign (re-emission is
    phase-flipped against the drive); for ``omega = eta = 1`` the output is
    exactly the negated decaying spectrum.
    """
    k = coupling.coupling
    phase = np.exp(1j * phi0)
    return ExpDecomposition((1.0 - k) * pulse.a0 * phase, -k * pulse.a0 * phase)


def absorbed_fraction(coupling) -> float:
    """Fraction of the output energy in temporally decaying components, ``omega * eta**2``."""
    return coupling.coupling


def absorbed_fraction_parseval(pulse, coupling, grid, phi0=0.0) -> float:
    """Decaying-energy fraction obtained by integrating the sampled spectra.

    The decaying energy is the energy of the decaying term of the coherent
    channel plus half the energy of the backward and incoherent channels
    (those are symmetric double-sided exponentials).  It is normalized by the
    summed energy of all channels on the same grid, so truncation of the
    ``1/delta`` coherent tail largely cancels.
    """
    spectra = scatter_pulse(pulse, coupling, grid, phi0)
    dec = decompose_coherent(pulse, coupling, phi0)
    half = 0.5 * pulse.gamma
    decaying_coh = dec.decaying_coeff / (half - 1j * grid.samples)
    e_coh = spectral_energy(spectra.s_coh, grid)
    e_incoh = spectral_energy(spectra.s_incoh, grid)
    e_back = spectral_energy(spectra.s_back, grid)
    total = e_coh + e_incoh + e_back
    if total == 0.0:
        return 0.0
    decaying = spectral_energy(decaying_coh, grid) + 0.5 * (e_incoh + e_back)
    return decaying / total


def channel_energies(pulse, coupling) -> dict:
    """Output energy per channel from closed-form integrals of the spectra.

    ``|S|^2`` of every channel is ``a0^2 (p + q delta^2) / (delta^2 + g^2/4)^2``;
    writing ``delta^2 = (delta^2 + g^2/4) - g^2/4`` reduces it to the two
    Lorentzian integrals.
    """
    om, eta, g = coupling.omega, coupling.eta, pulse.gamma
    lor = lorentzian_integral(g)
    lor2 = lorentzian_squared_integral(g)

    def energy(p, q):
        return pulse.a0**2 * (p * lor2 + q * (lor - 0.25 * g**2 * lor2)) / (2.0 * np.pi)

    return {
        "coh": energy((g * (0.5 - om * eta**2)) ** 2, 1.0),
        "incoh": energy(g**2 * om**2 * eta**2 * (1.0 - eta**2), 0.0),
        "back": energy(g**2 * eta**2 * om * (1.0 - om), 0.0),
    }


def analytic_time_domain(channel, pulse, coupling, t, phi0=0.0):
    """Closed-form output envelope of ``channel`` at times ``t``.

    ``t = 0`` belongs to the decaying branch: the rising part is
    ``exp(g t/2)`` for ``t < 0`` only and the decaying part
    ``exp(-g t/2)`` for ``t >= 0``.
    """
    if channel not in CHANNELS:
        raise ValueError(f"channel must be one of {CHANNELS}, got {channel!r}")
    om, eta, g = coupling.omega, coupling.eta, pulse.gamma
    t = np.asarray(t, dtype=float)
    a = pulse.a0 * np.exp(1j * phi0)
    after = t >= 0
    rising = np.where(after, 0.0, np.exp(0.5 * g * np.minimum(t, 0.0)))
    decaying = np.where(after, np.exp(-0.5 * g * np.maximum(t, 0.0)), 0.0)
    if channel == "coh":
        k = coupling.coupling
        return a * ((1.0 - k) * rising - k * decaying)
    double_sided = np.exp(-0.5 * g * np.abs(t))
    if channel == "back":
        return 1j * a * eta * np.sqrt(om * (1.0 - om)) * double_sided
    return 1j * a * om * eta * np.sqrt(1.0 - eta**2) * double_sided
