"""Side-by-side comparison of the ring-radius atom force and the Millikan balance.

Pairs: weight <-> f_o, electric force <-> f_l, air drag <-> optical damping.
The effective parameters are a scale mapping modulo the shared Lorentzian
factor, which they deliberately omit.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import millikan
from .atomforce import AtomParams, CouplingParams, axial_decomposition
from .core import E_CHARGE, G_ACCEL, HBAR
from .lgmode import BeamParams

__all__ = ["DEFAULT_VREF", "EffectiveParameters", "AnalogyRow", "AnalogyReport", "effective_parameters", "compare"]

DEFAULT_VREF = 40.0  # m/s

LORENTZIAN_NOTE = "scale mapping modulo the shared Lorentzian factor"


@dataclass(frozen=True)
class EffectiveParameters:
    eff_mass: float  # kg
    eff_charge: float  # C
    eff_field: float  # V/m
    charge_number: int = 0  # eff_charge in units of |e|, exactly |l|


@dataclass(frozen=True)
class AnalogyRow:
    label: str
    atom_name: str
    atom_value: float
    millikan_name: str
    millikan_value: float
    unit: str


@dataclass(frozen=True)
class AnalogyReport:
    atom_ratio_quantized: float
    millikan_ratio_quantized: float
    atom_ratio_damping: float
    millikan_ratio_damping: float
    eff_mass: float
    eff_charge: float
    eff_field: float
    charge_number: int
    v_ref: float
    terminal_velocity: float
    rows: tuple[AnalogyRow, ...]
    note: str = LORENTZIAN_NOTE


def effective_parameters(beam: BeamParams, atom: AtomParams) -> EffectiveParameters:
    """Mass, charge and field of the sphere the atom mimics."""
    return EffectiveParameters(
        eff_mass=HBAR * beam.wavenumber_k * atom.gamma / G_ACCEL,
        eff_charge=beam.abs_l * E_CHARGE,
        eff_field=HBAR * atom.gamma / (beam.rayleigh_zR * E_CHARGE),
        charge_number=beam.abs_l,
    )


def compare(
    atom_side: tuple[BeamParams, AtomParams, CouplingParams],
    millikan_side: millikan.DropletConfig,
    v_ref: float = DEFAULT_VREF,
) -> AnalogyReport:
    beam, atom, coupling = atom_side
    dec = axial_decomposition(beam, atom, coupling)
    eff = effective_parameters(beam, atom)

    w = millikan.weight(millikan_side)
    f_el = millikan.electric_force(millikan_side)
    kd = millikan.drag_coefficient(millikan_side)
    v_t = millikan.terminal_velocity(millikan_side)
    drag_at_vt = kd * v_t

    atom_damp = abs(dec.damping_a) * v_ref
    rows = (
        AnalogyRow("constant force", "F_o", dec.f_o, "W", w, "N"),
        AnalogyRow("quantized force", "F_l", dec.f_l, "F_el", f_el, "N"),
        AnalogyRow("damping force", "|a| v_ref", atom_damp, "K_d v_t", abs(drag_at_vt), "N"),
        AnalogyRow("damping coefficient", "|a|", abs(dec.damping_a), "K_d", kd, "kg/s"),
        AnalogyRow("speed", "v_ref", v_ref, "v_t", v_t, "m/s"),
        AnalogyRow("mass", "hbar k Gamma/g", eff.eff_mass, "m", millikan_side.mass, "kg"),
        AnalogyRow("charge", "|l||e|", eff.eff_charge, "n|e|", millikan_side.charge_n * E_CHARGE, "C"),
        AnalogyRow("field", "hbar Gamma/(z_R|e|)", eff.eff_field, "V/d", millikan_side.field_strength, "V/m"),
    )
    return AnalogyReport(
        atom_ratio_quantized=dec.f_l / dec.f_o,
        millikan_ratio_quantized=f_el / w,
        atom_ratio_damping=atom_damp / dec.f_o,
        millikan_ratio_damping=abs(drag_at_vt) / w,
        eff_mass=eff.eff_mass,
        eff_charge=eff.eff_charge,
        eff_field=eff.eff_field,
        charge_number=eff.charge_number,
        v_ref=v_ref,
        terminal_velocity=v_t,
        rows=rows,
    )
