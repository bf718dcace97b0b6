"""Dipole emission patterns and the pattern-weighted solid-angle fraction."""
from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .numerics import QuadratureError, QuadratureSpec

__all__ = [
    "DipolePattern",
    "AngularAperture",
    "dipole_intensity",
    "weighted_solid_angle",
    "FULL_SPHERE_WEIGHT",
]

# integral of either pattern over the full sphere
FULL_SPHERE_WEIGHT = 8.0 * np.pi / 3.0


class DipolePattern(enum.Enum):
    """Far-field intensity pattern of the atomic transition dipole.

    ``LINEAR`` is a pi transition (dipole along z), ``CIRCULAR`` a sigma
    transition rotating in the x-y plane.  Both are normalized so that their
    full-sphere integral is ``8 pi / 3``.
    """

    LINEAR = "linear"
    CIRCULAR = "circular"


@dataclass(frozen=True)
class AngularAperture:
    """Polar/azimuthal box ``[theta_min, theta_max] x [phi_min, phi_max]`` in radians."""

    theta_min: float = 0.0
    theta_max: float = np.pi
    phi_min: float = 0.0
    phi_max: float = 2.0 * np.pi

    def __post_init__(self):
        if not 0.0 <= self.theta_min <= self.theta_max <= np.pi:
            raise ValueError(
                f"need 0 <= theta_min <= theta_max <= pi, got [{self.theta_min}, {self.theta_max}]"
            )
        span = self.phi_max - self.phi_min
        if not 0.0 <= span <= 2.0 * np.pi:
            raise ValueError(f"need 0 <= phi_max - phi_min <= 2 pi, got {span}")

    @classmethod
    def full_sphere(cls):
        return cls()

    @classmethod
    def cone(cls, half_angle):
        """Cone about the +z axis (the dipole axis of the linear pattern)."""
        return cls(theta_max=half_angle)

    @classmethod
    def hemisphere(cls):
        return cls(theta_max=0.5 * np.pi)


def dipole_intensity(pattern, theta, phi=0.0):
    """Normalized intensity ``I(theta, phi)``, in ``[0, 1]``.

    Raises
    ------
    ValueError
        If any ``theta`` lies outside ``[0, pi]``.
    """
    pattern = DipolePattern(pattern)
    theta = np.asarray(theta, dtype=float)
    if np.any((theta < 0.0) | (theta > np.pi)) or np.any(np.isnan(theta)):
        raise ValueError("theta must lie in [0, pi]")
    phi = np.asarray(phi, dtype=float)
    shape = np.broadcast_shapes(theta.shape, phi.shape)
    if pattern is DipolePattern.LINEAR:
        out = np.sin(theta) ** 2
    else:
        out = 0.5 * (1.0 + np.cos(theta) ** 2)
    out = np.broadcast_to(out, shape)
    return float(out) if out.ndim == 0 else out.copy()


def _gauss_product(pattern, aperture, order):
    x, w = np.polynomial.legendre.leggauss(order)
    half_t = 0.5 * (aperture.theta_max - aperture.theta_min)
    half_p = 0.5 * (aperture.phi_max - aperture.phi_min)
    theta = aperture.theta_min + half_t * (x + 1.0)
    phi = aperture.phi_min + half_p * (x + 1.0)
    f = dipole_intensity(pattern, theta[:, None], phi[None, :]) * np.sin(theta)[:, None]
    return half_t * half_p * (w @ f @ w)


def weighted_solid_angle(pattern, aperture, quad=QuadratureSpec(), full_output=False):
    """Pattern-weighted solid-angle fraction covered by ``aperture``.

    Gauss-Legendre product rule in ``(theta, phi)``.  The error estimate is
    the change on doubling the order; the doubled-order value is returned
    unclamped.

    Parameters
    ----------
    pattern : DipolePattern or str
    aperture : AngularAperture
    quad : QuadratureSpec, optional
    full_output : bool, optional
        Also return the error estimate.

    Returns
    -------
    omega : float
    error : float
        Only if ``full_output`` is true.

    Raises
    ------
    QuadratureError
        If the error estimate exceeds ``quad.tolerance``.
    """
    coarse = _gauss_product(pattern, aperture, quad.order) / FULL_SPHERE_WEIGHT
    fine = _gauss_product(pattern, aperture, 2 * quad.order) / FULL_SPHERE_WEIGHT
    error = abs(fine - coarse)
    if error > quad.tolerance:
        raise QuadratureError(
            f"solid-angle quadrature did not converge: estimate {error:.3e} "
            f"> tolerance {quad.tolerance:.3e}",
            value=fine,
            error=error,
        )
    if full_output:
        return float(fine), float(error)
    return float(fine)
