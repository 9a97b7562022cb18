"""One-dimensional axial dynamics for the atom and the droplet.

Forces are velocity-only: the atom force is evaluated on the focal ring at
``z = 0`` throughout, and ``z`` is integrated kinematically for output.
Integration is classical fixed-step RK4.
"""

from __future__ import annotations

import enum
import math
from collections.abc import Callable
from dataclasses import dataclass, field

from . import millikan
from .atomforce import AtomParams, CouplingParams, axial_decomposition, axial_force_large_l
from .core import BracketError, DomainError, IntegrationError
from .lgmode import BeamParams

__all__ = [
    "ForceModel",
    "AtomSystem",
    "TrajectoryState",
    "IntegratorConfig",
    "Trajectory",
    "force_function",
    "system_mass",
    "relaxation_time",
    "step_rk4",
    "integrate",
    "bisect_root",
    "equilibrium_velocity",
]

STABILITY_FRACTION = 0.1


class ForceModel(enum.Enum):
    ATOM_FULL = "atom_full"  # large-l axial force with the Doppler shift inside the Lorentzian
    ATOM_LINEAR = "atom_linear"  # constant push minus helicity term plus linear damping
    DROPLET = "droplet"  # Millikan balance


@dataclass(frozen=True)
class AtomSystem:
    beam: BeamParams
    atom: AtomParams
    coupling: CouplingParams


@dataclass(frozen=True)
class TrajectoryState:
    t: float  # s
    z: float  # m
    v: float  # m/s


@dataclass(frozen=True)
class IntegratorConfig:
    dt: float
    t_end: float
    force_model: ForceModel
    record_stride: int = 1

    def __post_init__(self):
        if not (math.isfinite(self.dt) and self.dt > 0):
            raise DomainError(f"dt must be > 0, got {self.dt}")
        if not (math.isfinite(self.t_end) and self.t_end > 0):
            raise DomainError(f"t_end must be > 0, got {self.t_end}")
        if isinstance(self.record_stride, bool) or int(self.record_stride) != self.record_stride or self.record_stride < 1:
            raise DomainError(f"record_stride must be a positive integer, got {self.record_stride!r}")
        object.__setattr__(self, "force_model", ForceModel(self.force_model))
        object.__setattr__(self, "record_stride", int(self.record_stride))

    @property
    def n_steps(self) -> int:
        # tolerate t_end/dt landing a hair above an integer
        return max(1, math.ceil(self.t_end / self.dt * (1.0 - 1e-12)))


@dataclass
class Trajectory:
    states: list[TrajectoryState]
    forces: list[float]
    force_model: ForceModel
    mass: float
    dt: float
    warnings: list[str] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.states)

    def __getitem__(self, i):
        return self.states[i]

    @property
    def final(self) -> TrajectoryState:
        return self.states[-1]


def _check_model(force_model: ForceModel, params) -> ForceModel:
    force_model = ForceModel(force_model)
    want = millikan.DropletConfig if force_model is ForceModel.DROPLET else AtomSystem
    if not isinstance(params, want):
        raise TypeError(f"{force_model.name} needs {want.__name__} parameters, got {type(params).__name__}")
    return force_model


def force_function(force_model: ForceModel, params) -> Callable[[float], float]:
    """Axial force ``F(v)`` in newtons for the chosen model."""
    force_model = _check_model(force_model, params)
    if force_model is ForceModel.DROPLET:
        return lambda v: millikan.net_force(params, v)
    if force_model is ForceModel.ATOM_LINEAR:
        dec = axial_decomposition(params.beam, params.atom, params.coupling)
        return dec.linear_force
    return lambda v: axial_force_large_l(params.beam, params.atom, params.coupling, v)


def system_mass(force_model: ForceModel, params) -> float:
    force_model = _check_model(force_model, params)
    return params.mass if force_model is ForceModel.DROPLET else params.atom.mass


def relaxation_time(force_model: ForceModel, params) -> float:
    """``m / |damping|`` where damping is ``K_d`` or ``|a|``. Infinite without damping."""
    force_model = _check_model(force_model, params)
    if force_model is ForceModel.DROPLET:
        damping = millikan.drag_coefficient(params)
    else:
        damping = abs(axial_decomposition(params.beam, params.atom, params.coupling).damping_a)
    mass = system_mass(force_model, params)
    return math.inf if damping == 0.0 else mass / damping


def step_rk4(state: TrajectoryState, force: Callable[[float], float], mass: float, dt: float) -> TrajectoryState:
    """Advance ``dz/dt = v``, ``dv/dt = F(v)/m`` by one RK4 step."""
    if not dt > 0:
        raise DomainError(f"dt must be > 0, got {dt}")
    if not mass > 0:
        raise DomainError(f"mass must be > 0, got {mass}")

    def accel(v: float) -> float:
        f = force(v)
        if not math.isfinite(f):
            raise IntegrationError(f"non-finite force {f!r} at v={v!r}", state=state)
        return f / mass

    v0 = state.v
    a1 = accel(v0)
    v1 = v0 + 0.5 * dt * a1
    a2 = accel(v1)
    v2 = v0 + 0.5 * dt * a2
    a3 = accel(v2)
    v3 = v0 + dt * a3
    a4 = accel(v3)
    v_new = v0 + dt / 6.0 * (a1 + 2.0 * a2 + 2.0 * a3 + a4)
    z_new = state.z + dt / 6.0 * (v0 + 2.0 * v1 + 2.0 * v2 + v3)
    if not (math.isfinite(v_new) and math.isfinite(z_new)):
        raise IntegrationError("state became non-finite", state=state)
    return TrajectoryState(state.t + dt, z_new, v_new)


def integrate(initial: TrajectoryState, cfg: IntegratorConfig, params) -> Trajectory:
    """Integrate from ``initial`` to ``t_end`` and keep every ``record_stride``-th state.

    The last state is always recorded, so a run of ``n`` steps yields
    ``ceil(n / record_stride) + 1`` samples.

    Raises
    ------
    DomainError
        If ``dt`` violates ``dt < 0.1 * m / |damping|``; checked before stepping.
    """
    model = _check_model(cfg.force_model, params)
    mass = system_mass(model, params)
    tau = relaxation_time(model, params)
    if not cfg.dt < STABILITY_FRACTION * tau:
        raise DomainError(
            f"dt={cfg.dt:.3e} s violates the stability bound dt < {STABILITY_FRACTION} m/|damping| "
            f"= {STABILITY_FRACTION * tau:.3e} s"
        )
    force = force_function(model, params)

    n = cfg.n_steps
    state = initial
    states, forces = [state], [force(state.v)]
    for i in range(1, n + 1):
        state = step_rk4(state, force, mass, cfg.dt)
        if i % cfg.record_stride == 0 or i == n:
            states.append(state)
            forces.append(force(state.v))

    warnings = []
    if model is not ForceModel.DROPLET:
        zr = params.beam.rayleigh_zR
        z_max = max(abs(s.z) for s in states)
        if z_max > 0.1 * zr:
            warnings.append(
                f"trajectory reaches |z| = {z_max:.3e} m > z_R/10 = {0.1 * zr:.3e} m; "
                "focal-plane force model no longer valid"
            )
    return Trajectory(states, forces, model, mass, cfg.dt, warnings)


def bisect_root(func: Callable[[float], float], lo: float, hi: float, xtol: float = 1e-9, ftol: float = 1e-12) -> float:
    """Bisection for a sign change of ``func`` in ``[lo, hi]``.

    Stops once the bracket is narrower than ``xtol`` and ``|func| <= ftol * |func(0)|``,
    or when the bracket cannot be split further in floating point.
    """
    f_lo, f_hi = func(lo), func(hi)
    if f_lo == 0.0:
        return lo
    if f_hi == 0.0:
        return hi
    if (f_lo > 0) == (f_hi > 0):
        raise BracketError(f"no sign change in [{lo}, {hi}]: F={f_lo:.3e}, {f_hi:.3e}")
    scale = abs(func(0.0)) or max(abs(f_lo), abs(f_hi))
    while True:
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            return lo if abs(f_lo) <= abs(f_hi) else hi
        f_mid = func(mid)
        if f_mid == 0.0:
            return mid
        if (f_mid > 0) == (f_lo > 0):
            lo, f_lo = mid, f_mid
        else:
            hi, f_hi = mid, f_mid
        if hi - lo <= xtol and abs(f_mid) <= ftol * scale:
            return mid


def equilibrium_velocity(force_model: ForceModel, params, bracket: tuple[float, float]) -> float:
    """Velocity (m/s) at which the model's net axial force vanishes."""
    lo, hi = bracket
    if not lo < hi:
        raise DomainError(f"bracket must satisfy lo < hi, got {bracket}")
    return bisect_root(force_function(force_model, params), lo, hi)
