import pytest

from twistkan.atomforce import CS_MASS, AtomParams, CouplingParams, RabiScaling
from twistkan.dynamics import AtomSystem
from twistkan.lgmode import BeamParams
from twistkan.millikan import DropletConfig

GAMMA_CS = 3.25e7  # rad/s


@pytest.fixture
def cs_beam():
    return BeamParams(wavelength=852.35e-9, waist_w0=7e-6, winding_l=137, radial_p=0)


@pytest.fixture
def cs_atom():
    return AtomParams(gamma=GAMMA_CS, mass=CS_MASS)


@pytest.fixture
def cs_coupling():
    return CouplingParams(detuning0=-0.5 * GAMMA_CS, rabi0=4 * GAMMA_CS, rabi_scaling=RabiScaling.PEAK)


@pytest.fixture
def cs_system(cs_beam, cs_atom, cs_coupling):
    return AtomSystem(cs_beam, cs_atom, cs_coupling)


@pytest.fixture
def latex_weight():
    """Quoted diameter read as radius (weight reading)."""
    return DropletConfig(radius=1.070e-6, density=1050.0, charge_n=0, field_volt=50.0, field_gap=6.0e-3)


@pytest.fixture
def latex_field():
    return DropletConfig(radius=1.070e-6, density=1050.0, charge_n=2, field_volt=50.0, field_gap=6.0e-3)


@pytest.fixture
def latex_drag():
    """Weight from r = 1.070 um, drag from r = 0.535 um."""
    return DropletConfig(radius=1.070e-6, density=1050.0, charge_n=0, field_volt=50.0, field_gap=6.0e-3,
                         drag_radius=0.535e-6)


ACCEPTANCE_RESULTS: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_RESULTS:
            terminalreporter.write_line(line)
