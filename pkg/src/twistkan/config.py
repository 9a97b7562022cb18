"""INI-style run configuration: parsing with unit suffixes, validation, rendering.

Keys carry their unit as a suffix (``wavelength_nm``, ``waist_um``); values are
converted to SI while parsing. Unknown keys, unit suffixes that do not fit
the quantity, and duplicate keys are errors reported with their line number.

A small line parser is used instead of :mod:`configparser` because errors must
name the offending line.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field

from .atomforce import AtomParams, CouplingParams, RabiScaling
from .core import ATOMIC_MASS_UNIT, TwistkanError
from .dynamics import ForceModel
from .lgmode import BeamParams
from .millikan import ATM_PRESSURE, AIR_VISCOSITY, SLIP_B, DropletConfig

__all__ = ["ConfigError", "SimulationSettings", "RunConfig", "parse_config", "render_config", "load_config"]

LENGTH = {"m": 1.0, "mm": 1e-3, "um": 1e-6, "nm": 1e-9}
TIME = {"s": 1.0, "ms": 1e-3, "us": 1e-6, "ns": 1e-9}
RATE = {"rad_s": 1.0, "gamma": None}  # None: multiple of the atom's gamma, resolved later
SPEED = {"mps": 1.0}


class ConfigError(TwistkanError, ValueError):
    def __init__(self, message: str, line: int | None = None, key: str | None = None):
        where = f"line {line}: " if line is not None else ""
        what = f"key '{key}': " if key is not None else ""
        super().__init__(f"{where}{what}{message}")
        self.line = line
        self.key = key


@dataclass(frozen=True)
class _Spec:
    kind: str  # "float", "int", "enum"
    units: dict | None = None
    choices: tuple[str, ...] = ()
    required: bool = True
    default: object = None
    group: str | None = None  # keys sharing a group are mutually exclusive alternatives


SCHEMA: dict[str, dict[str, _Spec]] = {
    "beam": {
        "wavelength": _Spec("float", LENGTH),
        "waist": _Spec("float", LENGTH),
        "l": _Spec("int"),
        "p": _Spec("int"),
    },
    "atom": {
        "gamma": _Spec("float", {"rad_s": 1.0}),
        "mass": _Spec("float", {"kg": 1.0, "u": ATOMIC_MASS_UNIT}),
    },
    "coupling": {
        "detuning": _Spec("float", RATE),
        "rabi": _Spec("float", RATE),
        "rabi_scaling": _Spec("enum", choices=tuple(s.value for s in RabiScaling)),
    },
    "droplet": {
        "radius": _Spec("float", LENGTH, group="size"),
        "diameter": _Spec("float", LENGTH, group="size"),
        "drag_radius": _Spec("float", LENGTH, required=False, group="drag_size"),
        "drag_diameter": _Spec("float", LENGTH, required=False, group="drag_size"),
        "density": _Spec("float", {"kg_m3": 1.0, "g_cm3": 1000.0}),
        "charge_n": _Spec("int"),
    },
    "field": {
        "voltage": _Spec("float", {"v": 1.0}),
        "gap": _Spec("float", LENGTH),
    },
    "drag": {
        "viscosity": _Spec("float", {"pa_s": 1.0}, required=False, default=AIR_VISCOSITY),
        "slip_b": _Spec("float", {"pa_m": 1.0}, required=False, default=SLIP_B),
        "pressure": _Spec("float", {"pa": 1.0, "kpa": 1e3}, required=False, default=ATM_PRESSURE),
    },
    "simulation": {
        "model": _Spec("enum", choices=tuple(m.value for m in ForceModel), required=False),
        "dt": _Spec("float", TIME, required=False),
        "t_end": _Spec("float", TIME, required=False),
        "record_stride": _Spec("int", required=False, default=1),
        "v0": _Spec("float", SPEED, required=False, default=0.0),
        "z0": _Spec("float", LENGTH, required=False, default=0.0),
        "vref": _Spec("float", SPEED, required=False),
        "v_min": _Spec("float", SPEED, required=False, default=0.0),
        "v_max": _Spec("float", SPEED, required=False, default=80.0),
        "n_points": _Spec("int", required=False, default=81),
        "scan_r_max_ring": _Spec("float", required=False, default=3.0),
        "scan_z_max_zr": _Spec("float", required=False, default=2.0),
    },
}

# canonical unit used in "missing key" messages
_PREFERRED_UNIT = {"wavelength": "nm", "waist": "um", "radius": "um", "diameter": "um", "gap": "mm"}

_SECTION_RE = re.compile(r"^\[\s*([A-Za-z_][A-Za-z0-9_]*)\s*\]$")


@dataclass(frozen=True)
class SimulationSettings:
    model: ForceModel | None = None
    dt: float | None = None  # s
    t_end: float | None = None  # s
    record_stride: int = 1
    v0: float = 0.0  # m/s
    z0: float = 0.0  # m
    vref: float | None = None  # m/s
    v_min: float = 0.0
    v_max: float = 80.0
    n_points: int = 81
    scan_r_max_ring: float = 3.0
    scan_z_max_zr: float = 2.0


@dataclass(frozen=True)
class RunConfig:
    beam: BeamParams | None = None
    atom: AtomParams | None = None
    coupling: CouplingParams | None = None
    droplet: DropletConfig | None = None
    simulation: SimulationSettings = field(default_factory=SimulationSettings)


def _match_key(section: str, key: str, line: int) -> tuple[str, str | None]:
    """Split ``key`` into (quantity, unit) according to the section schema."""
    specs = SCHEMA[section]
    if key in specs:
        if specs[key].units is not None:
            allowed = ", ".join(f"{key}_{u}" for u in specs[key].units)
            raise ConfigError(f"unit suffix missing; use one of {allowed}", line, key)
        return key, None
    # longest quantity name first so drag_radius wins over radius
    for name in sorted(specs, key=len, reverse=True):
        spec = specs[name]
        if key.startswith(name + "_"):
            unit = key[len(name) + 1 :]
            if spec.units is None:
                continue
            if unit not in spec.units:
                allowed = ", ".join(f"{name}_{u}" for u in spec.units)
                raise ConfigError(f"unit suffix '{unit}' does not fit '{name}'; use one of {allowed}", line, key)
            return name, unit
    raise ConfigError(f"unknown key in [{section}]", line, key)


def _convert(spec: _Spec, raw: str, line: int, key: str):
    if spec.kind == "enum":
        value = raw.strip().lower()
        if value not in spec.choices:
            raise ConfigError(f"expected one of {', '.join(spec.choices)}, got '{raw}'", line, key)
        return value
    if spec.kind == "int":
        try:
            return int(raw, 10)
        except ValueError:
            raise ConfigError(f"expected an integer, got '{raw}'", line, key) from None
    try:
        value = float(raw)
    except ValueError:
        raise ConfigError(f"expected a number, got '{raw}'", line, key) from None
    if not math.isfinite(value):
        raise ConfigError(f"value must be finite, got '{raw}'", line, key)
    return value


def _scan(text: str) -> tuple[dict, dict]:
    """Return ({section: {quantity: (value, unit, key, line)}}, {section: header_line})."""
    sections: dict[str, dict] = {}
    headers: dict[str, int] = {}
    current = None
    for lineno, rawline in enumerate(text.splitlines(), start=1):
        stripped = rawline.split("#", 1)[0].strip()
        if not stripped:
            continue
        m = _SECTION_RE.match(stripped)
        if m:
            name = m.group(1).lower()
            if name not in SCHEMA:
                raise ConfigError(f"unknown section [{name}]", lineno)
            if name in sections:
                raise ConfigError(f"duplicate section [{name}]", lineno)
            current = name
            sections[name] = {}
            headers[name] = lineno
            continue
        if "=" not in stripped:
            raise ConfigError(f"expected 'key = value', got '{stripped}'", lineno)
        if current is None:
            raise ConfigError("key outside of any [section]", lineno)
        key, raw = (part.strip() for part in stripped.split("=", 1))
        key = key.lower()
        if not raw:
            raise ConfigError("empty value", lineno, key)
        name, unit = _match_key(current, key, lineno)
        spec = SCHEMA[current][name]
        entries = sections[current]
        if name in entries:
            raise ConfigError(f"'{name}' already given as '{entries[name][2]}' on line {entries[name][3]}", lineno, key)
        if spec.group is not None:
            for other_name, other in entries.items():
                if SCHEMA[current][other_name].group == spec.group:
                    raise ConfigError(
                        f"'{key}' and '{other[2]}' (line {other[3]}) are alternatives; give exactly one", lineno, key
                    )
        entries[name] = (_convert(spec, raw, lineno, key), unit, key, lineno)
    return sections, headers


def _get(sections, headers, section, name, si=True):
    """Value of ``name`` in SI (or raw when ``si`` is False); default or missing-key error."""
    spec = SCHEMA[section][name]
    entries = sections[section]
    if name not in entries:
        if spec.required:
            unit = _PREFERRED_UNIT.get(name) or (next(iter(spec.units)) if spec.units else None)
            keyname = f"{name}_{unit}" if unit else name
            raise ConfigError(f"missing key {keyname}", headers[section], keyname)
        return spec.default
    value, unit, _, _ = entries[name]
    if spec.units is None or not si:
        return value
    return value * spec.units[unit]


def _get_alternative(sections, headers, section, names, required=True):
    """Resolve a (radius, diameter) pair to a radius in metres."""
    entries = sections[section]
    radius_name, diameter_name = names
    if radius_name in entries:
        return _get(sections, headers, section, radius_name)
    if diameter_name in entries:
        return 0.5 * _get(sections, headers, section, diameter_name)
    if required:
        raise ConfigError(
            f"missing key {radius_name}_um (or {diameter_name}_um)", headers[section], f"{radius_name}_um"
        )
    return None


def _rate(sections, headers, name, gamma):
    value, unit, key, line = sections["coupling"][name] if name in sections["coupling"] else (None,) * 4
    if value is None:
        _get(sections, headers, "coupling", name)  # raises missing key
    if unit == "gamma":
        if gamma is None:
            raise ConfigError("rates in units of gamma need an [atom] section", line, key)
        return value * gamma
    return value


def parse_config(text: str) -> RunConfig:
    """Parse and validate configuration text; every quantity comes back in SI."""
    sections, headers = _scan(text)
    try:
        return _build(sections, headers)
    except ConfigError:
        raise
    except (TwistkanError, ValueError) as exc:
        raise ConfigError(str(exc)) from exc


def _build(sections, headers) -> RunConfig:
    beam = atom = coupling = droplet = None

    if "beam" in sections:
        beam = BeamParams(
            wavelength=_get(sections, headers, "beam", "wavelength"),
            waist_w0=_get(sections, headers, "beam", "waist"),
            winding_l=_get(sections, headers, "beam", "l"),
            radial_p=_get(sections, headers, "beam", "p"),
        )
    if "atom" in sections:
        atom = AtomParams(
            gamma=_get(sections, headers, "atom", "gamma"),
            mass=_get(sections, headers, "atom", "mass"),
        )
    if "coupling" in sections:
        gamma = atom.gamma if atom else None
        coupling = CouplingParams(
            detuning0=_rate(sections, headers, "detuning", gamma),
            rabi0=_rate(sections, headers, "rabi", gamma),
            rabi_scaling=RabiScaling(_get(sections, headers, "coupling", "rabi_scaling")),
        )
    if "droplet" in sections:
        if "field" not in sections:
            raise ConfigError("[droplet] needs a [field] section (voltage_v, gap_mm)", headers["droplet"])
        sections.setdefault("drag", {})
        droplet = DropletConfig(
            radius=_get_alternative(sections, headers, "droplet", ("radius", "diameter")),
            density=_get(sections, headers, "droplet", "density"),
            charge_n=_get(sections, headers, "droplet", "charge_n"),
            field_volt=_get(sections, headers, "field", "voltage"),
            field_gap=_get(sections, headers, "field", "gap"),
            viscosity_eta=_get(sections, headers, "drag", "viscosity"),
            slip_b=_get(sections, headers, "drag", "slip_b"),
            pressure=_get(sections, headers, "drag", "pressure"),
            drag_radius=_get_alternative(
                sections, headers, "droplet", ("drag_radius", "drag_diameter"), required=False
            ),
        )
    elif "field" in sections or "drag" in sections:
        name = "field" if "field" in sections else "drag"
        raise ConfigError(f"[{name}] given without a [droplet] section", headers[name])

    sim = SimulationSettings()
    if "simulation" in sections:
        values = {name: _get(sections, headers, "simulation", name) for name in SCHEMA["simulation"]}
        if values["model"] is not None:
            values["model"] = ForceModel(values["model"])
        sim = SimulationSettings(**values)
        for name in ("dt", "t_end"):
            value = getattr(sim, name)
            if value is not None and not value > 0:
                raise ConfigError(f"{name} must be > 0", sections["simulation"][name][3], sections["simulation"][name][2])
        if sim.record_stride < 1 or sim.n_points < 2:
            raise ConfigError("record_stride must be >= 1 and n_points >= 2", headers["simulation"])
    return RunConfig(beam=beam, atom=atom, coupling=coupling, droplet=droplet, simulation=sim)


def load_config(path) -> RunConfig:
    with open(path, encoding="utf-8") as fh:
        return parse_config(fh.read())


def render_config(cfg: RunConfig) -> str:
    """Serialize ``cfg`` in SI units so that ``parse_config`` reproduces it exactly."""
    out: list[str] = []

    def section(name, items):
        out.append(f"[{name}]")
        out.extend(f"{key} = {value}" for key, value in items)
        out.append("")

    if cfg.beam is not None:
        b = cfg.beam
        section("beam", [("wavelength_m", repr(b.wavelength)), ("waist_m", repr(b.waist_w0)),
                         ("l", b.winding_l), ("p", b.radial_p)])
    if cfg.atom is not None:
        section("atom", [("gamma_rad_s", repr(cfg.atom.gamma)), ("mass_kg", repr(cfg.atom.mass))])
    if cfg.coupling is not None:
        c = cfg.coupling
        section("coupling", [("detuning_rad_s", repr(c.detuning0)), ("rabi_rad_s", repr(c.rabi0)),
                             ("rabi_scaling", c.rabi_scaling.value)])
    if cfg.droplet is not None:
        d = cfg.droplet
        items = [("radius_m", repr(d.radius))]
        if d.drag_radius is not None:
            items.append(("drag_radius_m", repr(d.drag_radius)))
        items += [("density_kg_m3", repr(d.density)), ("charge_n", d.charge_n)]
        section("droplet", items)
        section("field", [("voltage_v", repr(d.field_volt)), ("gap_m", repr(d.field_gap))])
        section("drag", [("viscosity_pa_s", repr(d.viscosity_eta)), ("slip_b_pa_m", repr(d.slip_b)),
                         ("pressure_pa", repr(d.pressure))])
    s = cfg.simulation
    if s != SimulationSettings():
        units = {"dt": "s", "t_end": "s", "v0": "mps", "z0": "m", "vref": "mps", "v_min": "mps", "v_max": "mps"}
        items = []
        for name in SCHEMA["simulation"]:
            value = getattr(s, name)
            if value is None:
                continue
            if isinstance(value, ForceModel):
                value = value.value
            elif isinstance(value, float):
                value = repr(value)
            key = f"{name}_{units[name]}" if name in units else name
            items.append((key, value))
        section("simulation", items)
    return "\n".join(out)
