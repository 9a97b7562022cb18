"""Force balance on a charged sphere between capacitor plates.

Positive z points along gravity. The net force is
``weight - n|e|E - K_d v`` with the slip-corrected Stokes coefficient
``K_d = 6 pi eta r / (1 + b / (P r))``. Air buoyancy is neglected.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .core import E_CHARGE, G_ACCEL, DomainError

__all__ = [
    "AIR_VISCOSITY",
    "SLIP_B",
    "ATM_PRESSURE",
    "DropletConfig",
    "weight",
    "electric_force",
    "drag_coefficient",
    "net_force",
    "terminal_velocity",
]

AIR_VISCOSITY = 1.81e-5  # Pa s, air at 20 C
SLIP_B = 8.2e-3  # Pa m
ATM_PRESSURE = 101325.0  # Pa


@dataclass(frozen=True)
class DropletConfig:
    """Sphere, field and drag parameters.

    ``drag_radius`` overrides the radius used in the drag law only; leave it
    ``None`` for a physically consistent sphere. It exists so that a weight
    and a drag coefficient quoted for different size readings can be
    combined in one configuration.
    """

    radius: float  # m
    density: float  # kg/m^3
    charge_n: int = 0
    field_volt: float = 0.0  # V
    field_gap: float = 1e-3  # m
    viscosity_eta: float = AIR_VISCOSITY
    slip_b: float = SLIP_B
    pressure: float = ATM_PRESSURE
    drag_radius: float | None = None

    def __post_init__(self):
        positive = ("radius", "density", "field_gap", "viscosity_eta", "pressure")
        for name in positive:
            value = getattr(self, name)
            if not (math.isfinite(value) and value > 0):
                raise DomainError(f"{name} must be > 0, got {value}")
        if not (math.isfinite(self.slip_b) and self.slip_b >= 0):
            raise DomainError(f"slip_b must be >= 0, got {self.slip_b}")
        if not math.isfinite(self.field_volt):
            raise DomainError("field_volt must be finite")
        if isinstance(self.charge_n, bool) or int(self.charge_n) != self.charge_n or self.charge_n < 0:
            raise DomainError(f"charge_n must be a non-negative integer, got {self.charge_n!r}")
        object.__setattr__(self, "charge_n", int(self.charge_n))
        if self.drag_radius is not None and not (math.isfinite(self.drag_radius) and self.drag_radius > 0):
            raise DomainError(f"drag_radius must be > 0, got {self.drag_radius}")

    @property
    def field_strength(self) -> float:
        """Uniform field ``V / d`` in V/m."""
        return self.field_volt / self.field_gap

    @property
    def mass(self) -> float:
        return 4.0 / 3.0 * math.pi * self.radius**3 * self.density

    @property
    def effective_drag_radius(self) -> float:
        return self.radius if self.drag_radius is None else self.drag_radius


def weight(cfg: DropletConfig) -> float:
    return cfg.mass * G_ACCEL


def electric_force(cfg: DropletConfig) -> float:
    """Magnitude of the field force, directed against the weight."""
    return cfg.charge_n * E_CHARGE * cfg.field_strength


def drag_coefficient(cfg: DropletConfig) -> float:
    r = cfg.effective_drag_radius
    return 6.0 * math.pi * cfg.viscosity_eta * r / (1.0 + cfg.slip_b / (cfg.pressure * r))


def net_force(cfg: DropletConfig, v: float) -> float:
    return weight(cfg) - electric_force(cfg) - drag_coefficient(cfg) * v


def terminal_velocity(cfg: DropletConfig) -> float:
    """Signed drift speed at which the net force vanishes (negative = upward)."""
    kd = drag_coefficient(cfg)
    if kd == 0.0:
        raise ZeroDivisionError("drag coefficient is zero; terminal velocity undefined")
    return (weight(cfg) - electric_force(cfg)) / kd
