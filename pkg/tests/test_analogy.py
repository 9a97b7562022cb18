import numpy as np
import pytest

from twistkan.analogy import DEFAULT_VREF, compare, effective_parameters
from twistkan.atomforce import AtomParams, CouplingParams, RabiScaling
from twistkan.core import E_CHARGE, HBAR
from twistkan.lgmode import BeamParams

G = 3.25e7


def test_effective_parameters(cs_beam, cs_atom):
    eff = effective_parameters(cs_beam, cs_atom)
    assert HBAR * cs_beam.wavenumber_k * G == pytest.approx(2.527e-20, rel=1e-3)
    assert eff.eff_mass == pytest.approx(2.576e-21, rel=1e-3)
    assert eff.eff_charge == pytest.approx(2.195e-17, rel=1e-3)
    assert eff.eff_field == pytest.approx(1.185e-4, rel=1e-3)


@pytest.mark.parametrize("l", [0, 1, -7, 137, 1000])
def test_effective_charge_quantized(cs_atom, l):
    eff = effective_parameters(BeamParams(852.35e-9, 7e-6, l, 0), cs_atom)
    assert eff.eff_charge == abs(l) * E_CHARGE
    assert eff.charge_number == abs(l)
    assert eff.eff_charge / E_CHARGE == pytest.approx(abs(l), rel=1e-15, abs=0)
    assert round(eff.eff_charge / E_CHARGE) == abs(l)


def test_compare_paper_configs(cs_beam, cs_atom, cs_coupling, latex_field):
    rep = compare((cs_beam, cs_atom, cs_coupling), latex_field, DEFAULT_VREF)
    assert rep.v_ref == 40.0
    assert rep.atom_ratio_quantized == pytest.approx(0.0514, rel=5e-3)
    assert rep.millikan_ratio_quantized == pytest.approx(0.051, rel=0.02)
    assert rep.millikan_ratio_damping == pytest.approx(0.95, rel=0.01)
    # |a| * 40 / F_o; 0.95 is reached at 39.6 m/s
    assert rep.atom_ratio_damping == pytest.approx(0.9604, rel=1e-3)
    assert rep.eff_charge * rep.eff_field == pytest.approx(HBAR * G * 137 / cs_beam.rayleigh_zR, rel=1e-15)
    labels = [row.label for row in rep.rows]
    assert labels[:3] == ["constant force", "quantized force", "damping force"]
    assert [(row.atom_name, row.millikan_name) for row in rep.rows[:2]] == [("F_o", "W"), ("F_l", "F_el")]
    for value in (rep.atom_ratio_quantized, rep.millikan_ratio_quantized, rep.atom_ratio_damping,
                  rep.millikan_ratio_damping):
        assert value >= 0 and np.isfinite(value)


def test_compare_no_field_gives_unit_drag_ratio(cs_beam, cs_atom, cs_coupling, latex_drag):
    rep = compare((cs_beam, cs_atom, cs_coupling), latex_drag)
    assert rep.millikan_ratio_damping == pytest.approx(1.0, rel=1e-14)
    assert rep.terminal_velocity == pytest.approx(3.33e-4, rel=1e-2)


def test_compare_l0(cs_atom, cs_coupling, latex_field):
    rep = compare((BeamParams(852.35e-9, 7e-6, 0, 0), cs_atom, cs_coupling), latex_field)
    assert rep.atom_ratio_quantized == 0.0


def test_quantized_ratio_independent_of_coupling(cs_beam, cs_atom, latex_field):
    rng = np.random.default_rng(1)
    ref = None
    for _ in range(50):
        c = CouplingParams(float(rng.uniform(-3, 3)) * G, float(rng.uniform(0.1, 10)) * G,
                           rng.choice(list(RabiScaling)))
        ratio = compare((cs_beam, cs_atom, c), latex_field).atom_ratio_quantized
        ref = ratio if ref is None else ref
        assert ratio == pytest.approx(ref, rel=1e-13)


def test_damping_ratio_linear_in_vref(cs_beam, cs_atom, cs_coupling, latex_field):
    side = (cs_beam, cs_atom, cs_coupling)
    base = compare(side, latex_field, 10.0)
    for v in (0.0, 5.0, 40.0, 123.0):
        rep = compare(side, latex_field, v)
        assert rep.atom_ratio_damping == pytest.approx(base.atom_ratio_damping * v / 10.0, rel=1e-14, abs=0)
        assert rep.atom_ratio_quantized == base.atom_ratio_quantized
        assert rep.millikan_ratio_damping == base.millikan_ratio_damping
