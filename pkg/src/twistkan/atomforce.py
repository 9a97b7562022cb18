"""Velocity-dependent scattering force of a two-level atom in an LG beam.

The force is ``hbar * Gamma * grad(Theta) * L(Delta(v), Gamma, Omega)`` with the
saturated Lorentzian ``L = (Omega^2/4) / (Delta^2 + Gamma^2/4 + Omega^2/2)`` and
Doppler-shifted detuning ``Delta(v) = Delta0 - grad(Theta) . v``.

Near focus, for ``p = 0`` and an atom on the intensity ring, the axial part
splits into a constant push ``f_o``, a helicity correction ``f_l`` that
opposes it, and a damping term ``a * v``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .core import (
    ATOMIC_MASS_UNIT,
    HBAR,
    CylPoint,
    DomainError,
    SingularPointError,
    UnsupportedConfigurationError,
    Vec3Cyl,
)
from .lgmode import BeamParams, mode_amplitude, phase_gradient, ring_radius

__all__ = [
    "CS_MASS",
    "RabiScaling",
    "AtomParams",
    "CouplingParams",
    "ForceDecomposition",
    "lorentzian",
    "doppler_detuning",
    "local_rabi",
    "scattering_force",
    "saturation_parameter",
    "helicity_factor",
    "ring_rabi",
    "damping_coefficient",
    "axial_force_large_l",
    "axial_decomposition",
    "doppler_limit_speed",
]

CS_MASS = 132.905 * ATOMIC_MASS_UNIT  # kg, 133Cs


class RabiScaling(enum.Enum):
    """How the local Rabi frequency follows from ``rabi0``.

    ``PEAK`` uses ``rabi0`` at the evaluation point regardless of the mode
    profile. ``MODE_PROFILE`` uses ``rabi0 * f(r, z)``.
    """

    PEAK = "peak"
    MODE_PROFILE = "mode_profile"


@dataclass(frozen=True)
class AtomParams:
    gamma: float  # spontaneous emission rate, rad/s
    mass: float = CS_MASS  # kg

    def __post_init__(self):
        if not (math.isfinite(self.gamma) and self.gamma > 0):
            raise DomainError(f"gamma must be > 0, got {self.gamma}")
        if not (math.isfinite(self.mass) and self.mass > 0):
            raise DomainError(f"mass must be > 0, got {self.mass}")


@dataclass(frozen=True)
class CouplingParams:
    detuning0: float  # rad/s, laser minus atomic frequency
    rabi0: float  # rad/s
    rabi_scaling: RabiScaling = RabiScaling.PEAK

    def __post_init__(self):
        if not math.isfinite(self.detuning0):
            raise DomainError("detuning0 must be finite")
        if not (math.isfinite(self.rabi0) and self.rabi0 >= 0):
            raise DomainError(f"rabi0 must be >= 0, got {self.rabi0}")
        object.__setattr__(self, "rabi_scaling", RabiScaling(self.rabi_scaling))


@dataclass(frozen=True)
class ForceDecomposition:
    """Three-term axial force ``F(v) = (f_o - f_l) + damping_a * v``.

    ``f_l`` is a magnitude; it acts against ``f_o``.
    """

    f_o: float  # N
    f_l: float  # N
    damping_a: float  # kg/s

    @property
    def net_const(self) -> float:
        return self.f_o - self.f_l

    def linear_force(self, v: float) -> float:
        return self.net_const + self.damping_a * v

    def damping_force(self, v: float) -> float:
        return self.damping_a * v


def lorentzian(delta: float, gamma: float, omega: float) -> float:
    """Saturated excitation factor ``(omega^2/4) / (delta^2 + gamma^2/4 + omega^2/2)``."""
    if not gamma > 0:
        raise DomainError(f"gamma must be > 0, got {gamma}")
    w2 = omega * omega
    return 0.25 * w2 / (delta * delta + 0.25 * gamma * gamma + 0.5 * w2)


def doppler_detuning(coupling: CouplingParams, grad: Vec3Cyl, velocity: Vec3Cyl) -> float:
    return coupling.detuning0 - grad.dot(velocity)


def local_rabi(beam: BeamParams, coupling: CouplingParams, point: CylPoint) -> float:
    """Rabi frequency seen by the atom at ``point`` under ``coupling.rabi_scaling``."""
    if coupling.rabi_scaling is RabiScaling.PEAK:
        return coupling.rabi0
    return coupling.rabi0 * mode_amplitude(beam, point.r, point.z)


def scattering_force(
    beam: BeamParams,
    atom: AtomParams,
    coupling: CouplingParams,
    point: CylPoint,
    velocity: Vec3Cyl = Vec3Cyl(),
) -> Vec3Cyl:
    """Full scattering-force vector (N) in the local cylindrical frame."""
    omega = local_rabi(beam, coupling, point)
    if omega == 0.0:
        return Vec3Cyl()
    if point.r == 0.0 and beam.winding_l != 0:
        if coupling.rabi_scaling is RabiScaling.MODE_PROFILE:
            return Vec3Cyl()
        raise SingularPointError("PEAK scaling forces nonzero drive on the axis of an l != 0 mode")
    grad = phase_gradient(beam, point)
    delta = doppler_detuning(coupling, grad, velocity)
    return grad.scale(HBAR * atom.gamma * lorentzian(delta, atom.gamma, omega))


def saturation_parameter(coupling: CouplingParams, atom: AtomParams, omega: float) -> float:
    """``s = (omega^2/2) / (Delta0^2 + Gamma^2/4)``."""
    d0 = coupling.detuning0
    return 0.5 * omega * omega / (d0 * d0 + 0.25 * atom.gamma**2)


def helicity_factor(beam: BeamParams) -> float:
    """``1 - |l| / (2 k z_R)``, the ring-radius axial gradient in units of ``k``."""
    return 1.0 - beam.abs_l / (2.0 * beam.wavenumber_k * beam.rayleigh_zR)


def ring_rabi(beam: BeamParams, coupling: CouplingParams) -> float:
    if coupling.rabi_scaling is RabiScaling.PEAK:
        return coupling.rabi0
    return local_rabi(beam, coupling, CylPoint(ring_radius(beam).radius, 0.0, 0.0))


def damping_coefficient(beam: BeamParams, atom: AtomParams, coupling: CouplingParams) -> float:
    """Linear velocity coefficient ``a`` (kg/s) of the ring-radius axial force.

    Negative for red detuning, so ``a * v`` opposes the motion.
    """
    d0, gamma = coupling.detuning0, atom.gamma
    s = saturation_parameter(coupling, atom, ring_rabi(beam, coupling))
    k = beam.wavenumber_k
    return (
        HBAR * k * k * helicity_factor(beam) ** 2
        * s / (1.0 + s) ** 2
        * d0 * gamma / (d0 * d0 + 0.25 * gamma * gamma)
    )


def axial_force_large_l(
    beam: BeamParams, atom: AtomParams, coupling: CouplingParams, velocity_axial: float = 0.0
) -> float:
    """Axial force (N) on the focal ring of a ``p = 0``, ``|l| >> 1`` mode.

    The Doppler shift uses the reduced axial wavenumber ``k * (1 - |l|/(2 k z_R))``.
    """
    if beam.radial_p != 0:
        raise UnsupportedConfigurationError("large-l axial force is defined for radial_p = 0 only")
    k_eff = beam.wavenumber_k * helicity_factor(beam)
    delta = coupling.detuning0 - k_eff * velocity_axial
    return HBAR * atom.gamma * k_eff * lorentzian(delta, atom.gamma, ring_rabi(beam, coupling))


def axial_decomposition(beam: BeamParams, atom: AtomParams, coupling: CouplingParams) -> ForceDecomposition:
    if beam.radial_p != 0:
        raise UnsupportedConfigurationError("axial decomposition is defined for radial_p = 0 only")
    lor0 = lorentzian(coupling.detuning0, atom.gamma, ring_rabi(beam, coupling))
    scale = HBAR * atom.gamma * lor0
    return ForceDecomposition(
        f_o=scale * beam.wavenumber_k,
        f_l=scale * beam.abs_l / (2.0 * beam.rayleigh_zR),
        damping_a=damping_coefficient(beam, atom, coupling),
    )


def doppler_limit_speed(atom: AtomParams) -> float:
    """One-dimensional RMS speed at the Doppler limit, ``sqrt(hbar Gamma / (2 M))``."""
    return math.sqrt(HBAR * atom.gamma / (2.0 * atom.mass))
