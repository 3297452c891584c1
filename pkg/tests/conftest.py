import math

import mpmath
import numpy as np
import pytest

from besselwell import Parity, PotentialSpec, Family, spectra
from besselwell.cli import moment_step

# references must carry more digits than the doubles they check
mpmath.mp.dps = 30

ACCEPTANCE_RESULTS = {}


@pytest.fixture(scope="session")
def well_levels():
    """Even and odd J-condition roots for V0 = 50, a = 1."""
    return {p: spectra.special_states_well_family(50.0, 1.0, p, n_max=10) for p in Parity}


@pytest.fixture(scope="session")
def valley_levels():
    """Lowest three K-condition roots of each parity for V0 = 5, a = 1."""
    return {p: spectra.special_states_valley_family(5.0, 1.0, p, n_max=3) for p in Parity}


@pytest.fixture(scope="session")
def v4_ground_grid(well_levels):
    """V4 (V0 = 50) ground state sampled finely enough on |x| <= 6 for derivatives."""
    spec = PotentialSpec(Family.V4, 50.0, 1.0)
    level = well_levels[Parity.EVEN][0]
    step = moment_step(spec, level.E, 6.0)
    n = int(math.ceil(12.0 / step)) + 1
    return spectra.wavefunction(spec, level, -6.0, 6.0, n)


def record_acceptance(number, passed, detail):
    ACCEPTANCE_RESULTS[number] = (bool(passed), detail)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE_RESULTS):
        passed, detail = ACCEPTANCE_RESULTS[number]
        terminalreporter.write_line(f"criterion {number:2d}: {'PASS' if passed else 'FAIL'}  {detail}")


def local_maxima(values):
    v = np.asarray(values)
    idx = np.where((v[1:-1] > v[:-2]) & (v[1:-1] >= v[2:]))[0] + 1
    return idx
