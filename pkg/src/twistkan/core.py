"""Physical constants, shared cylindrical types and the package exceptions.

All quantities are SI. Angles are radians, angular frequencies rad/s.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

__all__ = [
    "PhysicalConstants",
    "CONSTANTS",
    "HBAR",
    "E_CHARGE",
    "G_ACCEL",
    "K_BOLTZMANN",
    "ATOMIC_MASS_UNIT",
    "CylPoint",
    "Vec3Cyl",
    "normalize_angle",
    "TwistkanError",
    "DomainError",
    "SingularPointError",
    "UnsupportedConfigurationError",
    "IntegrationError",
    "BracketError",
]

TWO_PI = 2.0 * math.pi


class TwistkanError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(TwistkanError, ValueError):
    """Argument outside the mathematical domain of an operation."""


class SingularPointError(DomainError):
    """Evaluation requested where a quantity is undefined (e.g. azimuthal phase on axis)."""


class UnsupportedConfigurationError(TwistkanError, ValueError):
    """Parameters outside the regime an operation is defined for."""


class IntegrationError(TwistkanError, RuntimeError):
    """Non-finite value encountered while stepping an ODE."""

    def __init__(self, message: str, state=None):
        super().__init__(message)
        self.state = state


class BracketError(TwistkanError, ValueError):
    """Root-finding bracket does not contain a sign change."""


@dataclass(frozen=True)
class PhysicalConstants:
    hbar: float = 1.054571817e-34  # J s
    e_charge: float = 1.602176634e-19  # C
    g_accel: float = 9.80665  # m/s^2
    k_boltzmann: float = 1.380649e-23  # J/K


CONSTANTS = PhysicalConstants()
HBAR = CONSTANTS.hbar
E_CHARGE = CONSTANTS.e_charge
G_ACCEL = CONSTANTS.g_accel
K_BOLTZMANN = CONSTANTS.k_boltzmann
ATOMIC_MASS_UNIT = 1.66053906660e-27  # kg


def normalize_angle(phi: float) -> float:
    """Map ``phi`` into ``[0, 2*pi)``.

    Raises
    ------
    DomainError
        If ``phi`` is NaN or infinite.
    """
    phi = float(phi)
    if not math.isfinite(phi):
        raise DomainError(f"angle must be finite, got {phi!r}")
    out = math.fmod(phi, TWO_PI)
    if out < 0.0:
        out += TWO_PI
    # fmod of a tiny negative number can round up to exactly 2*pi
    if out >= TWO_PI:
        out = 0.0
    return out


@dataclass(frozen=True)
class CylPoint:
    """Point in cylindrical coordinates ``(r, phi, z)``; ``phi`` is normalized on construction."""

    r: float
    phi: float = 0.0
    z: float = 0.0

    def __post_init__(self):
        r, z = float(self.r), float(self.z)
        if not (math.isfinite(r) and math.isfinite(z)):
            raise DomainError("CylPoint coordinates must be finite")
        if r < 0.0:
            raise DomainError(f"radial coordinate must be >= 0, got {r}")
        object.__setattr__(self, "r", r)
        object.__setattr__(self, "z", z)
        object.__setattr__(self, "phi", normalize_angle(self.phi))


@dataclass(frozen=True)
class Vec3Cyl:
    """Components in the local (r, phi, z) frame. Units depend on context."""

    radial: float = 0.0
    azimuthal: float = 0.0
    axial: float = 0.0

    def __post_init__(self):
        for name in ("radial", "azimuthal", "axial"):
            value = float(getattr(self, name))
            if not math.isfinite(value):
                raise DomainError(f"Vec3Cyl.{name} must be finite, got {value!r}")
            object.__setattr__(self, name, value)

    def dot(self, other: Vec3Cyl) -> float:
        return self.radial * other.radial + self.azimuthal * other.azimuthal + self.axial * other.axial

    def norm(self) -> float:
        return math.sqrt(self.dot(self))

    def scale(self, factor: float) -> Vec3Cyl:
        return Vec3Cyl(self.radial * factor, self.azimuthal * factor, self.axial * factor)

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.radial, self.azimuthal, self.axial)
