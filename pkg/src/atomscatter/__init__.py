"""Elastic scattering of monochromatic light and exponential pulses by a single atom."""
from .elastic import (
    AtomParams,
    ChannelFields,
    ChannelPowers,
    CouplingParams,
    DriveParams,
    UnsupportedRegimeError,
    channel_fields,
    channel_powers,
    scattered_phase,
    scattered_power,
    scattered_power_forward,
)
from .geometry import AngularAperture, DipolePattern, dipole_intensity, weighted_solid_angle
from .numerics import (
    DetuningGrid,
    GridMismatchError,
    QuadratureError,
    QuadratureSpec,
    TimeSignal,
    TransformPlan,
    forward_transform,
    inverse_transform,
    spectral_energy,
    time_energy,
)
from .pulse import (
    ChannelSpectra,
    ExpDecomposition,
    PulseParams,
    absorbed_fraction,
    absorbed_fraction_parseval,
    analytic_time_domain,
    channel_energies,
    decaying_exp_spectrum,
    decompose_coherent,
    pulse_spectra,
    rising_exp_spectrum,
    scatter_pulse,
)

__version__ = "0.1.0"
