"""Scattering force of highly twisted Laguerre-Gaussian beams on two-level
atoms, the Millikan force balance, and the analogy between the two."""

from .analogy import AnalogyReport, compare, effective_parameters
from .atomforce import (
    AtomParams,
    CouplingParams,
    ForceDecomposition,
    RabiScaling,
    axial_decomposition,
    axial_force_large_l,
    damping_coefficient,
    doppler_detuning,
    doppler_limit_speed,
    lorentzian,
    saturation_parameter,
    scattering_force,
)
from .core import CONSTANTS, CylPoint, Vec3Cyl, normalize_angle
from .dynamics import (
    AtomSystem,
    ForceModel,
    IntegratorConfig,
    TrajectoryState,
    equilibrium_velocity,
    integrate,
    step_rk4,
)
from .lgmode import BeamParams, laguerre, mode_amplitude, mode_phase, phase_gradient, ring_radius
from .millikan import DropletConfig, drag_coefficient, electric_force, net_force, terminal_velocity, weight

__version__ = "0.1.0"
