"""``twistkan`` command line front end.

Usage::

    twistkan <beam|force|millikan|analogy|trajectory> --config FILE [--out DIR] [--vref M_PER_S]

Data go to CSV files in ``--out`` (and text reports to stdout as well);
diagnostics go to stderr. Floats are written with 17 significant digits.
"""

from __future__ import annotations

import argparse
import csv
import io
import math
import sys
from importlib import resources
from pathlib import Path

import numpy as np

from . import millikan
from .analogy import DEFAULT_VREF, compare
from .atomforce import (
    axial_decomposition,
    axial_force_large_l,
    doppler_limit_speed,
    lorentzian,
    ring_rabi,
    saturation_parameter,
)
from .config import ConfigError, RunConfig, load_config
from .core import CylPoint, TwistkanError
from .dynamics import (
    AtomSystem,
    ForceModel,
    IntegratorConfig,
    TrajectoryState,
    equilibrium_velocity,
    integrate,
    relaxation_time,
)
from .lgmode import mode_amplitude, phase_gradient, ring_radius

__all__ = ["SUBCOMMANDS", "BUNDLED_CONFIGS", "fmt", "resolve_config_path", "run_subcommand", "main"]

BUNDLED_CONFIGS = (
    "paper_atom.ini",
    "paper_millikan_weight.ini",
    "paper_millikan_drag.ini",
    "paper_millikan_field.ini",
)

BEAM_HEADER = ["r_m", "z_m", "f", "intensity", "grad_axial", "grad_azimuthal", "grad_radial"]
FORCE_HEADER = ["v_mps", "F_full_N", "F_linear_N"]
TRAJECTORY_HEADER = ["t_s", "z_m", "v_mps", "F_N"]


def fmt(x) -> str:
    """Round-trip float formatting (17 significant digits)."""
    if isinstance(x, (int, np.integer)) and not isinstance(x, bool):
        return str(int(x))
    return format(float(x), ".17g")


def _write_csv(path: Path, header, rows, comments=()) -> None:
    buf = io.StringIO()
    for line in comments:
        buf.write(f"# {line}\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([v if isinstance(v, str) else fmt(v) for v in row])
    path.write_text(buf.getvalue(), encoding="utf-8", newline="")


def _write_text(path: Path, text: str) -> None:
    path.write_text(text, encoding="utf-8", newline="")
    sys.stdout.write(text)


def resolve_config_path(name) -> Path:
    """Use ``name`` as a path; fall back to a bundled config of that file name."""
    path = Path(name)
    if path.exists():
        return path
    if path.name in BUNDLED_CONFIGS and len(path.parts) == 1:
        return Path(str(resources.files("twistkan") / "configs" / path.name))
    raise ConfigError(f"config file not found: {name}")


def _require(cfg: RunConfig, *names: str) -> None:
    missing = [n for n in names if getattr(cfg, n) is None]
    if missing:
        raise ConfigError("this subcommand needs section(s): " + ", ".join(f"[{n}]" for n in missing))


def _atom_system(cfg: RunConfig) -> AtomSystem:
    _require(cfg, "beam", "atom", "coupling")
    return AtomSystem(cfg.beam, cfg.atom, cfg.coupling)


def _run_beam(cfg: RunConfig, out: Path, vref: float) -> list[Path]:
    _require(cfg, "beam")
    beam, sim = cfg.beam, cfg.simulation
    n = sim.n_points
    ring = ring_radius(beam).radius if beam.radial_p == 0 else 0.0
    r_scale = ring if ring > 0 else beam.waist_w0
    r_max = sim.scan_r_max_ring * r_scale
    z_max = sim.scan_z_max_zr * beam.rayleigh_zR

    rows = []
    # radial scan at focus; r = 0 excluded because the azimuthal gradient is singular there for l != 0
    for r in np.linspace(0.0, r_max, n + 1)[1:]:
        rows.append(_beam_row(beam, float(r), 0.0))
    r_axial = ring if ring > 0 else beam.waist_w0
    for z in np.linspace(-z_max, z_max, n):
        rows.append(_beam_row(beam, r_axial, float(z)))
    path = out / "beam.csv"
    _write_csv(path, BEAM_HEADER, rows)
    return [path]


def _beam_row(beam, r, z):
    f = mode_amplitude(beam, r, z)
    g = phase_gradient(beam, CylPoint(r, 0.0, z))
    return (r, z, f, f * f, g.axial, g.azimuthal, g.radial)


def _force_report(system: AtomSystem) -> str:
    beam, atom, coupling = system.beam, system.atom, system.coupling
    dec = axial_decomposition(beam, atom, coupling)
    ring = ring_radius(beam)
    omega = ring_rabi(beam, coupling)
    lines = [
        "axial force on the focal ring",
        f"  ring radius            {ring.radius:.5e} m",
        f"  k z_R                  {beam.wavenumber_k * beam.rayleigh_zR:.5g}",
        f"  rabi scaling           {coupling.rabi_scaling.value}",
        f"  Rabi frequency         {omega:.5e} rad/s",
        f"  saturation s           {saturation_parameter(coupling, atom, omega):.5g}",
        f"  Lorentzian L0          {lorentzian(coupling.detuning0, atom.gamma, omega):.6f}",
        f"  F_o                    {dec.f_o:.5e} N",
        f"  F_l                    {dec.f_l:.5e} N",
        f"  F_o - F_l              {dec.net_const:.5e} N",
        f"  F_l/F_o                {dec.f_l / dec.f_o:.5f}",
        f"  damping a              {dec.damping_a:.5e} kg/s",
    ]
    if dec.damping_a < 0 < dec.net_const:
        lines.append(f"  linear equilibrium v   {dec.net_const / -dec.damping_a:.5g} m/s")
        lines.append(f"  v at |a|v/F_o = 0.95   {0.95 * dec.f_o / -dec.damping_a:.5g} m/s")
    lines.append(f"  Doppler-limit speed    {doppler_limit_speed(atom):.5g} m/s")
    return "\n".join(lines) + "\n"


def _run_force(cfg: RunConfig, out: Path, vref: float) -> list[Path]:
    system = _atom_system(cfg)
    sim = cfg.simulation
    dec = axial_decomposition(system.beam, system.atom, system.coupling)
    rows = []
    for v in np.linspace(sim.v_min, sim.v_max, sim.n_points):
        v = float(v)
        full = axial_force_large_l(system.beam, system.atom, system.coupling, v)
        rows.append((v, full, dec.linear_force(v)))
    csv_path, txt_path = out / "force.csv", out / "force.txt"
    _write_csv(csv_path, FORCE_HEADER, rows)
    _write_text(txt_path, _force_report(system))
    return [csv_path, txt_path]


def _run_millikan(cfg: RunConfig, out: Path, vref: float) -> list[Path]:
    _require(cfg, "droplet")
    d = cfg.droplet
    w, fel, kd = millikan.weight(d), millikan.electric_force(d), millikan.drag_coefficient(d)
    vt = millikan.terminal_velocity(d)
    table = [
        ("radius", d.radius, "m"),
        ("drag_radius", d.effective_drag_radius, "m"),
        ("mass", d.mass, "kg"),
        ("field", d.field_strength, "V/m"),
        ("weight", w, "N"),
        ("electric_force", fel, "N"),
        ("drag_coefficient", kd, "kg/s"),
        ("terminal_velocity", vt, "m/s"),
        ("drag_force_at_vt", kd * vt, "N"),
        ("ratio_electric_weight", fel / w, ""),
        ("ratio_drag_weight", kd * vt / w, ""),
    ]
    csv_path, txt_path = out / "millikan.csv", out / "millikan.txt"
    _write_csv(csv_path, ["quantity", "value", "unit"], table)
    width = max(len(name) for name, _, _ in table)
    text = "Millikan force balance\n" + "".join(
        f"  {name:<{width}}  {value:.5e} {unit}\n" for name, value, unit in table
    )
    _write_text(txt_path, text)
    return [csv_path, txt_path]


def analogy_table(report) -> str:
    """Aligned two-column text table: atom side | Millikan side."""
    rows = [
        ("quantized ratio", f"F_l/F_o = {report.atom_ratio_quantized:.2f}",
         f"F_el/W = {report.millikan_ratio_quantized:.2f}"),
        ("damping ratio", f"|a|v_ref/F_o = {report.atom_ratio_damping:.2f}",
         f"K_d v_t/W = {report.millikan_ratio_damping:.2f}"),
        ("quantized ratio (4 s.f.)", f"{report.atom_ratio_quantized:.4g}", f"{report.millikan_ratio_quantized:.4g}"),
        ("damping ratio (4 s.f.)", f"{report.atom_ratio_damping:.4g}", f"{report.millikan_ratio_damping:.4g}"),
    ]
    for row in report.rows:
        rows.append((row.label, f"{row.atom_name} = {row.atom_value:.4g} {row.unit}",
                     f"{row.millikan_name} = {row.millikan_value:.4g} {row.unit}"))
    head = ("quantity", "atom side", "Millikan side")
    w0 = max(len(r[0]) for r in rows + [head])
    w1 = max(len(r[1]) for r in rows + [head])
    w2 = max(len(r[2]) for r in rows + [head])
    lines = [
        f"Twisted-beam atom vs Millikan sphere at v_ref = {report.v_ref:g} m/s ({report.note})",
        f"{head[0]:<{w0}} | {head[1]:<{w1}} | {head[2]}",
        f"{'-' * w0}-+-{'-' * w1}-+-{'-' * w2}",
    ]
    lines += [f"{a:<{w0}} | {b:<{w1}} | {c}" for a, b, c in rows]
    return "\n".join(lines) + "\n"


def _run_analogy(cfg: RunConfig, out: Path, vref: float) -> list[Path]:
    system = _atom_system(cfg)
    _require(cfg, "droplet")
    report = compare((system.beam, system.atom, system.coupling), cfg.droplet, vref)
    csv_rows = [
        ("ratio_quantized", report.atom_ratio_quantized, report.millikan_ratio_quantized),
        ("ratio_damping", report.atom_ratio_damping, report.millikan_ratio_damping),
    ]
    csv_rows += [(row.label.replace(" ", "_"), row.atom_value, row.millikan_value) for row in report.rows]
    csv_path, txt_path = out / "analogy.csv", out / "analogy.txt"
    _write_csv(csv_path, ["quantity", "atom", "millikan"], csv_rows)
    _write_text(txt_path, analogy_table(report))
    return [csv_path, txt_path]


def _run_trajectory(cfg: RunConfig, out: Path, vref: float) -> list[Path]:
    sim = cfg.simulation
    if sim.model is None or sim.dt is None or sim.t_end is None:
        raise ConfigError("trajectory needs [simulation] model, dt_<unit> and t_end_<unit>")
    if sim.model is ForceModel.DROPLET:
        _require(cfg, "droplet")
        params = cfg.droplet
    else:
        params = _atom_system(cfg)
    icfg = IntegratorConfig(dt=sim.dt, t_end=sim.t_end, force_model=sim.model, record_stride=sim.record_stride)
    traj = integrate(TrajectoryState(0.0, sim.z0, sim.v0), icfg, params)

    meta = [
        f"model = {sim.model.value}",
        f"mass_kg = {fmt(traj.mass)}",
        f"dt_s = {fmt(sim.dt)}",
        f"t_end_s = {fmt(sim.t_end)}",
        f"relaxation_time_s = {fmt(relaxation_time(sim.model, params))}",
    ]
    if sim.model is ForceModel.DROPLET:
        meta.append(f"terminal_velocity_mps = {fmt(millikan.terminal_velocity(params))}")
    elif sim.model is ForceModel.ATOM_LINEAR:
        dec = axial_decomposition(params.beam, params.atom, params.coupling)
        if dec.damping_a != 0:
            v_eq = equilibrium_velocity(sim.model, params, _linear_bracket(dec))
            meta.append(f"equilibrium_velocity_mps = {fmt(v_eq)}")
    meta += [f"warning: {w}" for w in traj.warnings]
    rows = [(s.t, s.z, s.v, f) for s, f in zip(traj.states, traj.forces)]
    path = out / "trajectory.csv"
    _write_csv(path, TRAJECTORY_HEADER, rows, comments=meta)
    return [path]


def _linear_bracket(dec) -> tuple[float, float]:
    v_star = dec.net_const / -dec.damping_a
    pad = max(1.0, abs(v_star))
    return (v_star - pad, v_star + pad)


SUBCOMMANDS = {
    "beam": _run_beam,
    "force": _run_force,
    "millikan": _run_millikan,
    "analogy": _run_analogy,
    "trajectory": _run_trajectory,
}


def run_subcommand(name: str, config: RunConfig, output_path, vref: float | None = None) -> list[Path]:
    """Run one subcommand and return the files it wrote."""
    if name not in SUBCOMMANDS:
        raise ConfigError(f"unknown subcommand '{name}' (choose from {', '.join(SUBCOMMANDS)})")
    out = Path(output_path)
    out.mkdir(parents=True, exist_ok=True)
    if vref is None:
        vref = config.simulation.vref if config.simulation.vref is not None else DEFAULT_VREF
    if not (math.isfinite(vref) and vref >= 0):
        raise ConfigError(f"vref must be a finite non-negative speed, got {vref}")
    return SUBCOMMANDS[name](config, out, vref)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="twistkan",
        description="Scattering force of a twisted LG beam on a two-level atom and its Millikan analogue.",
    )
    parser.add_argument("subcommand", choices=sorted(SUBCOMMANDS))
    parser.add_argument("--config", required=True, help="INI config file, or the name of a bundled paper_*.ini")
    parser.add_argument("--out", default=".", help="output directory (default: current directory)")
    parser.add_argument("--vref", type=float, default=None, help="reference atom speed in m/s (default 40)")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = load_config(resolve_config_path(args.config))
        run_subcommand(args.subcommand, cfg, args.out, args.vref)
    except (TwistkanError, OSError) as exc:
        print(f"twistkan: error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
