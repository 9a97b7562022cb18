"""Exit criteria, one test per criterion, each reporting a PASS/FAIL line."""

import math
import subprocess
import sys

import numpy as np
import pytest
from scipy.integrate import quad

from conftest import ACCEPTANCE_RESULTS, GAMMA_CS
from twistkan.atomforce import (
    AtomParams,
    CouplingParams,
    RabiScaling,
    axial_decomposition,
    axial_force_large_l,
    damping_coefficient,
    doppler_limit_speed,
)
from twistkan.core import CylPoint
from twistkan.dynamics import TrajectoryState, step_rk4
from twistkan.lgmode import BeamParams, mode_amplitude, mode_phase, phase_gradient
from twistkan.millikan import DropletConfig, drag_coefficient, electric_force, net_force, terminal_velocity, weight


def _check(number, title, ok, detail):
    ACCEPTANCE_RESULTS.append(f"[{'PASS' if ok else 'FAIL'}] {number:>2}. {title}: {detail}")
    print(ACCEPTANCE_RESULTS[-1])
    assert ok, detail


def _within(value, target, rel):
    return abs(value - target) <= rel * abs(target)


@pytest.fixture(scope="module")
def paper_atom():
    beam = BeamParams(852.35e-9, 7e-6, 137, 0)
    atom = AtomParams(GAMMA_CS, 2.2069e-25)
    coupling = CouplingParams(-0.5 * GAMMA_CS, 4 * GAMMA_CS, RabiScaling.PEAK)
    return beam, atom, coupling


W_CFG = DropletConfig(radius=1.070e-6, density=1050.0)
FIELD_CFG = DropletConfig(radius=1.070e-6, density=1050.0, charge_n=2, field_volt=50.0, field_gap=6.0e-3)
DRAG_CFG = DropletConfig(radius=0.535e-6, density=1050.0)


def test_01_f_o(paper_atom):
    f_o = axial_decomposition(*paper_atom).f_o
    _check(1, "F_o = 1.19e-20 N +-1%", _within(f_o, 1.19e-20, 0.01), f"F_o = {f_o:.5e} N")


def test_02_f_l(paper_atom):
    dec = axial_decomposition(*paper_atom)
    ratio = dec.f_l / dec.f_o
    ok = _within(dec.f_l, 5.96e-22, 0.05) and _within(ratio, 0.0514, 0.005)
    _check(2, "F_l = 5.96e-22 N +-5%, F_l/F_o = 0.0514 +-0.5%", ok, f"F_l = {dec.f_l:.5e} N, ratio = {ratio:.5f}")


def test_03_weight():
    w = weight(W_CFG)
    _check(3, "W = 5.3e-14 N +-1%", _within(w, 5.3e-14, 0.01), f"W = {w:.5e} N")


def test_04_electric_force():
    f_el = electric_force(FIELD_CFG)
    ratio = f_el / weight(W_CFG)
    ok = _within(f_el, 2.7e-15, 0.02) and _within(ratio, 0.05, 0.05)
    _check(4, "F_el = 2.7e-15 N +-2%, F_el/W = 0.05 +-5%", ok, f"F_el = {f_el:.5e} N, ratio = {ratio:.5f}")


def test_05_drag_coefficient():
    kd = drag_coefficient(DRAG_CFG)
    _check(5, "K_d = 1.6e-10 kg/s +-2%", _within(kd, 1.6e-10, 0.02), f"K_d = {kd:.5e} kg/s")


def test_06_terminal_velocity():
    combined = DropletConfig(radius=1.070e-6, density=1050.0, drag_radius=0.535e-6)
    vt = terminal_velocity(combined)
    direct = weight(W_CFG) / drag_coefficient(DRAG_CFG)
    ok = 0.30e-3 <= vt <= 0.34e-3 and vt == pytest.approx(direct, rel=1e-14)
    _check(6, "v_t in [0.30, 0.34] mm/s", ok, f"v_t = {vt * 1e3:.4f} mm/s")


def test_07_damping_speed(paper_atom):
    beam, atom, coupling = paper_atom
    dec = axial_decomposition(*paper_atom)
    v95 = 0.95 * dec.f_o / abs(dec.damping_a)
    h = 1e-3
    fd = (axial_force_large_l(beam, atom, coupling, h) - axial_force_large_l(beam, atom, coupling, -h)) / (2 * h)
    a = damping_coefficient(beam, atom, coupling)
    ok = _within(v95, 40.0, 0.05) and _within(a, -2.85e-22, 0.01) and _within(a, fd, 1e-6)
    _check(7, "|a|v/F_o = 0.95 at 40 m/s +-5%, a vs FD 1e-6", ok,
           f"v = {v95:.3f} m/s, a = {a:.5e} kg/s, FD rel err = {abs(a - fd) / abs(fd):.1e}")


def test_08_doppler_limit(paper_atom):
    v = doppler_limit_speed(paper_atom[1])
    _check(8, "Doppler-limit speed 0.088 m/s +-2%", _within(v, 0.088, 0.02), f"v = {v:.5f} m/s")


def _normalization_error():
    worst = 0.0
    for l in (0, 1, 5, 50, 137):
        for p in (0, 1, 3):
            beam = BeamParams(852.35e-9, 7e-6, l, p)
            for z in (0.0, beam.rayleigh_zR):
                w = float(beam.beam_radius(z))
                centre = math.sqrt(max(l + 2 * p, 1) / 2) * w
                pts = [centre + k * w for k in (-1.5, -0.5, 0, 0.5, 1.5) if centre + k * w > 0]
                val, _ = quad(lambda r: mode_amplitude(beam, r, z) ** 2 * 2 * math.pi * r, 0.0, centre + 12 * w,
                              points=pts, limit=400, epsabs=0.0, epsrel=1e-11)
                worst = max(worst, abs(val / beam.waist_w0**2 - 1.0))
    return worst


def _gradient_error():
    rng = np.random.default_rng(99)
    worst = 0.0
    for _ in range(100):
        beam = BeamParams(float(rng.uniform(400e-9, 1100e-9)), float(rng.uniform(3e-6, 30e-6)),
                          int(rng.integers(1, 200)) * int(rng.choice([-1, 1])), int(rng.integers(0, 6)))
        zr = beam.rayleigh_zR
        r = float(rng.uniform(0.1, 2.0)) * beam.waist_w0 * math.sqrt(beam.abs_l)
        z = float(rng.choice([-1, 1]) * rng.uniform(0.05, 2.0)) * zr
        phi = float(rng.uniform(0.01, 6.27))
        th = lambda rr, pp, zz: mode_phase(beam, CylPoint(rr, pp, zz))
        hr, hp, hz = 1e-3 * r, 1e-3, 1e-4 * zr
        fd = (
            (th(r + hr, phi, z) - th(r - hr, phi, z)) / (2 * hr),
            (th(r, phi + hp, z) - th(r, phi - hp, z)) / (2 * hp) / r,
            (-th(r, phi, z + 2 * hz) + 8 * th(r, phi, z + hz) - 8 * th(r, phi, z - hz) + th(r, phi, z - 2 * hz))
            / (12 * hz),
        )
        g = phase_gradient(beam, CylPoint(r, phi, z))
        for an, num in zip((g.radial, g.azimuthal, g.axial), fd):
            worst = max(worst, abs(num - an) / abs(an))
    return worst


def _parity_ok():
    rng = np.random.default_rng(5)
    for _ in range(50):
        beam = BeamParams(852.35e-9, float(rng.uniform(3e-6, 30e-6)), int(rng.integers(-200, 201)), 0)
        atom = AtomParams(float(10 ** rng.uniform(6, 8.5)))
        c = CouplingParams(float(rng.uniform(0.05, 3)) * atom.gamma, float(rng.uniform(0.1, 10)) * atom.gamma,
                           rng.choice(list(RabiScaling)))
        flipped = CouplingParams(-c.detuning0, c.rabi0, c.rabi_scaling)
        if damping_coefficient(beam, atom, flipped) != -damping_coefficient(beam, atom, c):
            return False
    return True


def _rk4_order():
    def err(n):
        state = TrajectoryState(0.0, 0.0, 1.0)
        for _ in range(n):
            state = step_rk4(state, lambda v: -v, 1.0, 2.0 / n)
        return abs(state.v - math.exp(-2.0))

    errs = [err(n) for n in (10, 20, 40, 80)]
    return [math.log2(a / b) for a, b in zip(errs, errs[1:])]


def _terminal_residual():
    rng = np.random.default_rng(42)
    worst = 0.0
    for _ in range(100):
        cfg = DropletConfig(float(10 ** rng.uniform(-7, -5)), float(rng.uniform(500, 3000)), int(rng.integers(0, 20)),
                            float(rng.uniform(-500, 500)), float(rng.uniform(1e-3, 1e-2)))
        scale = max(weight(cfg), abs(electric_force(cfg)))
        worst = max(worst, abs(net_force(cfg, terminal_velocity(cfg))) / scale)
    return worst


def test_09_property_suites():
    norm = _normalization_error()
    grad = _gradient_error()
    parity = _parity_ok()
    orders = _rk4_order()
    resid = _terminal_residual()
    ok = (norm <= 1e-6 and grad <= 1e-6 and parity and all(abs(o - 4.0) <= 0.3 for o in orders)
          and resid <= 1e-12)
    _check(9, "property suites", ok,
           f"norm err {norm:.1e}, grad err {grad:.1e}, parity {parity}, "
           f"RK4 order {min(orders):.3f}-{max(orders):.3f}, v_t residual {resid:.1e}")


def _run_analogy(tmp_path, tag):
    out = tmp_path / tag
    proc = subprocess.run(
        [sys.executable, "-m", "twistkan.cli", "analogy", "--config", "paper_atom.ini", "--out", str(out)],
        capture_output=True, check=False,
    )
    return proc, (out / "analogy.txt").read_bytes(), (out / "analogy.csv").read_bytes()


def _row(text, label):
    for line in text.splitlines():
        cells = [c.strip() for c in line.split(" | ")]
        if cells[0] == label:
            return [c.split("=")[-1].strip() for c in cells[1:]]
    raise AssertionError(f"row {label!r} not in report")


def test_10_end_to_end_analogy(tmp_path):
    proc_a, txt_a, csv_a = _run_analogy(tmp_path, "a")
    proc_b, txt_b, csv_b = _run_analogy(tmp_path, "b")
    text = txt_a.decode()
    quantized = _row(text, "quantized ratio")
    damping = _row(text, "damping ratio")
    stable = txt_a == txt_b and csv_a == csv_b and proc_a.stdout == proc_b.stdout
    ok = (proc_a.returncode == 0 and stable and quantized == ["0.05", "0.05"] and damping == ["0.95", "0.95"])
    _check(10, "analogy table 0.05/0.05 and 0.95/0.95 at v_ref = 40 m/s, byte-stable", ok,
           f"quantized {'/'.join(quantized)}, damping {'/'.join(damping)}, byte-stable {stable}")
