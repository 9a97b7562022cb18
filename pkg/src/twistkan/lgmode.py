r"""Laguerre-Gaussian mode amplitude, phase and analytic phase gradient.

The scalar mode is

.. math::

    f(r, z) = \frac{w_0}{w(z)} \sqrt{\frac{2 p!}{\pi (p + |l|)!}}
              \left(\frac{\sqrt{2} r}{w(z)}\right)^{|l|}
              L_p^{|l|}\!\left(\frac{2 r^2}{w^2(z)}\right) e^{-r^2 / w^2(z)}

    \Theta = k z + l \phi - (2p + |l| + 1) \arctan(z / z_R)
             + \frac{k r^2 z}{2 (z^2 + z_R^2)}

with :math:`w(z) = w_0 \sqrt{1 + z^2/z_R^2}`. The prefactor of :math:`f` is
accumulated in the log domain so that winding numbers of a few hundred do
not overflow (``137!`` is already out of double range).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np
from scipy.special import gammaln

from .core import CylPoint, DomainError, SingularPointError, UnsupportedConfigurationError, Vec3Cyl

__all__ = [
    "BeamParams",
    "ModeSample",
    "RingRadius",
    "laguerre",
    "mode_amplitude",
    "mode_phase",
    "mode_sample",
    "phase_gradient",
    "ring_radius",
]


@dataclass(frozen=True)
class BeamParams:
    """Geometry and mode indices of a Laguerre-Gaussian beam.

    Parameters
    ----------
    wavelength : float
        Vacuum wavelength (m).
    waist_w0 : float
        Beam waist at focus (m).
    winding_l : int
        Signed winding number (helicity).
    radial_p : int
        Radial index, ``>= 0``.
    """

    wavelength: float
    waist_w0: float
    winding_l: int = 0
    radial_p: int = 0
    wavenumber_k: float = field(init=False, repr=False, compare=False)
    rayleigh_zR: float = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if not (math.isfinite(self.wavelength) and self.wavelength > 0):
            raise DomainError(f"wavelength must be > 0, got {self.wavelength}")
        if not (math.isfinite(self.waist_w0) and self.waist_w0 > 0):
            raise DomainError(f"waist_w0 must be > 0, got {self.waist_w0}")
        for name in ("winding_l", "radial_p"):
            value = getattr(self, name)
            if isinstance(value, bool) or int(value) != value:
                raise DomainError(f"{name} must be an integer, got {value!r}")
            object.__setattr__(self, name, int(value))
        if self.radial_p < 0:
            raise DomainError(f"radial_p must be >= 0, got {self.radial_p}")
        object.__setattr__(self, "wavelength", float(self.wavelength))
        object.__setattr__(self, "waist_w0", float(self.waist_w0))
        object.__setattr__(self, "wavenumber_k", 2.0 * math.pi / self.wavelength)
        object.__setattr__(self, "rayleigh_zR", math.pi * self.waist_w0**2 / self.wavelength)

    @property
    def abs_l(self) -> int:
        return abs(self.winding_l)

    @property
    def gouy_order(self) -> int:
        """``2p + |l| + 1``, the Gouy phase multiplier."""
        return 2 * self.radial_p + self.abs_l + 1

    def beam_radius(self, z):
        """``w(z)`` in metres."""
        z = np.asarray(z, dtype=float)
        return self.waist_w0 * np.sqrt(1.0 + (z / self.rayleigh_zR) ** 2)


class ModeSample(NamedTuple):
    amplitude_f: float
    phase_theta: float
    intensity_rel: float


class RingRadius(NamedTuple):
    radius: float
    on_axis: bool


def laguerre(p: int, alpha: int, x):
    """Associated Laguerre polynomial ``L_p^alpha(x)`` by upward recurrence.

    ``x`` may be a scalar or an array; the return type follows it.
    """
    if int(p) != p or int(alpha) != alpha:
        raise DomainError("laguerre degree and order must be integers")
    p, alpha = int(p), int(alpha)
    if p < 0 or alpha < 0:
        raise DomainError(f"laguerre requires p >= 0 and alpha >= 0, got p={p}, alpha={alpha}")
    x_arr = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(x_arr)):
        raise DomainError("laguerre argument must be finite")

    prev = np.ones_like(x_arr)
    if p == 0:
        return prev if x_arr.ndim else float(prev)
    cur = 1.0 + alpha - x_arr
    for n in range(2, p + 1):
        prev, cur = cur, ((2 * n - 1 + alpha - x_arr) * cur - (n - 1 + alpha) * prev) / n
    return cur if x_arr.ndim else float(cur)


def _log_norm(p: int, abs_l: int) -> float:
    # log sqrt(2 p! / (pi (p+|l|)!))
    return 0.5 * (math.log(2.0 / math.pi) + gammaln(p + 1) - gammaln(p + abs_l + 1))


def mode_amplitude(beam: BeamParams, r, z=0.0):
    """Dimensionless mode profile ``f(r, z)``.

    Vectorized over ``r`` and ``z``. The result can be negative for
    ``p >= 1`` (the Laguerre factor changes sign).
    """
    r = np.asarray(r, dtype=float)
    z = np.asarray(z, dtype=float)
    if np.any(r < 0) or not np.all(np.isfinite(r)):
        raise DomainError("mode_amplitude requires finite r >= 0")
    if not np.all(np.isfinite(z)):
        raise DomainError("mode_amplitude requires finite z")

    abs_l, p = beam.abs_l, beam.radial_p
    w = beam.beam_radius(z)
    x = 2.0 * r**2 / w**2
    with np.errstate(divide="ignore"):
        log_u = np.log(np.sqrt(2.0) * r / w)
    if abs_l == 0:
        log_power = np.zeros_like(x)
    else:
        log_power = np.where(r > 0, abs_l * log_u, -np.inf)
    log_env = _log_norm(p, abs_l) + log_power - r**2 / w**2
    out = np.exp(log_env) * laguerre(p, abs_l, x) * (beam.waist_w0 / w)
    return out if out.ndim else float(out)


def mode_phase(beam: BeamParams, point: CylPoint) -> float:
    """Raw (unwrapped) phase ``Theta`` at ``point`` in radians."""
    k, zr = beam.wavenumber_k, beam.rayleigh_zR
    r, phi, z = point.r, point.phi, point.z
    return (
        k * z
        + beam.winding_l * phi
        - beam.gouy_order * math.atan2(z, zr)
        + k * r * r * z / (2.0 * (z * z + zr * zr))
    )


def mode_sample(beam: BeamParams, point: CylPoint) -> ModeSample:
    f = mode_amplitude(beam, point.r, point.z)
    return ModeSample(f, mode_phase(beam, point), f * f)


def phase_gradient(beam: BeamParams, point: CylPoint) -> Vec3Cyl:
    """Analytic cylindrical gradient of ``Theta`` (1/m).

    Raises
    ------
    SingularPointError
        On the axis when ``l != 0``, where the azimuthal phase is undefined.
    """
    k, zr = beam.wavenumber_k, beam.rayleigh_zR
    r, z = point.r, point.z
    if r == 0.0 and beam.winding_l != 0:
        raise SingularPointError("phase gradient undefined on the beam axis for l != 0")
    d2 = z * z + zr * zr
    axial = k - beam.gouy_order * zr / d2 + k * r * r * (zr * zr - z * z) / (2.0 * d2 * d2)
    radial = k * r * z / d2
    azimuthal = beam.winding_l / r if beam.winding_l else 0.0
    return Vec3Cyl(radial=radial, azimuthal=azimuthal, axial=axial)


def ring_radius(beam: BeamParams) -> RingRadius:
    """Radius of maximum intensity at focus for a ``p = 0`` doughnut mode.

    For ``l = 0`` the maximum sits on the axis; the result is ``(0.0, True)``.
    """
    if beam.radial_p != 0:
        raise UnsupportedConfigurationError("ring radius has no closed form for radial_p != 0")
    if beam.winding_l == 0:
        return RingRadius(0.0, True)
    return RingRadius(beam.waist_w0 * math.sqrt(beam.abs_l / 2.0), False)
