import math

import numpy as np
import pytest

from besselwell import Family, Parity, PotentialSpec, oracle
from besselwell.errors import DomainError, PoleError, RegimeError
from besselwell.scattering import (
    ScatteringResult,
    amplitudes_v2,
    amplitudes_v2_verbatim,
    amplitudes_v4,
    find_poles,
    min_abs_a,
    probability_flux,
    reflection_transmission,
    transfer_matrix,
)


def test_v4_unitarity_mid_band():
    assert abs(amplitudes_v4(25.0, 50.0, 1.0).unitarity_defect) < 1e-9


def test_v4_quoted_energies_give_b_minus_a():
    assert abs(amplitudes_v4(18.611, 50.0, 1.0).B - amplitudes_v4(18.611, 50.0, 1.0).A + 1.0) < 1e-3
    r = amplitudes_v4(37.263, 50.0, 1.0)
    assert abs(r.B - r.A - 1.0) < 1e-3


def test_v4_b_minus_a_at_every_root(well_levels):
    for parity, sign in ((Parity.EVEN, -1.0), (Parity.ODD, 1.0)):
        for level in well_levels[parity]:
            r = amplitudes_v4(level.E, 50.0, 1.0)
            assert abs(r.B - r.A - sign) < 1e-6
            # A = +-1 + ib with B = ib
            assert abs(r.A.imag - r.B.imag) < 1e-6


@pytest.mark.parametrize("V0,a", [(50.0, 1.0), (7.0, 2.3)])
def test_v4_sweep_unitary_with_imaginary_b(V0, a):
    for E in np.linspace(0.02 * V0, 0.98 * V0, 60):
        r = amplitudes_v4(E, V0, a)
        assert abs(r.unitarity_defect) < 1e-8
        assert abs(r.B.real) < 1e-10 * abs(r.B)
        assert r.R + r.T == pytest.approx(1.0, abs=1e-8)


def test_v4_regime():
    for E in (0.0, -1.0, 50.0, 60.0):
        with pytest.raises(RegimeError):
            amplitudes_v4(E, 50.0, 1.0)
    with pytest.raises(DomainError):
        amplitudes_v4(1.0, -50.0, 1.0)


def test_v2_unitarity_at_ten():
    assert abs(amplitudes_v2(10.0, 5.0, 1.0).unitarity_defect) < 1e-8


def test_v2_r_plus_t_scan():
    for E in np.linspace(0.5, 40.0, 80):
        r = amplitudes_v2(E, 5.0, 1.0)
        assert r.R + r.T == pytest.approx(1.0, abs=1e-8)


def test_v2_high_energy_transparent():
    assert amplitudes_v2(100 * 5.0, 5.0, 1.0).T > 0.99


def test_v2_regime():
    for E in (0.0, -2.0):
        with pytest.raises(RegimeError):
            amplitudes_v2(E, 5.0, 1.0)


@pytest.mark.parametrize("E", [1.0, 10.0, 40.0])
def test_v2_transmission_matches_numerov(E):
    _, T, mismatch = oracle.transmission(PotentialSpec(Family.V2, 5.0, 1.0), E, 12.0)
    assert mismatch < 1e-6
    assert amplitudes_v2(E, 5.0, 1.0).T == pytest.approx(T, abs=1e-6)


def test_verbatim_v2_form_is_not_unitary():
    defects = [abs(amplitudes_v2_verbatim(E, 5.0, 1.0).unitarity_defect) for E in (0.5, 3.0, 10.0, 40.0)]
    assert min(defects) > 0.1


def test_reflection_transmission_examples():
    assert reflection_transmission(ScatteringResult(0.0, 1.0, 0.0, math.nan, math.nan)) == (0.0, 1.0)
    b = 0.7
    for sign in (1.0, -1.0):
        R, T = reflection_transmission(ScatteringResult(0.0, complex(sign, b), complex(0, b), math.nan, math.nan))
        assert T == pytest.approx(1 / (1 + b * b), rel=1e-15)
        assert R == pytest.approx(b * b / (1 + b * b), rel=1e-15)
        assert R + T == pytest.approx(1.0, rel=1e-15)


def test_reflection_transmission_pole():
    with pytest.raises(PoleError):
        reflection_transmission(ScatteringResult(0.0, 1e-13, 0.5, math.nan, math.nan))


def test_transfer_matrix_signs(well_levels):
    even = transfer_matrix(amplitudes_v4(well_levels[Parity.EVEN][0].E, 50.0, 1.0))
    odd = transfer_matrix(amplitudes_v4(well_levels[Parity.ODD][0].E, 50.0, 1.0))
    np.testing.assert_allclose(even.apply([1, 1]), [1, 1], atol=1e-6)
    np.testing.assert_allclose(odd.apply([1, 1]), [-1, -1], atol=1e-6)
    np.testing.assert_allclose(even.eigenvalues(), [1, 1], atol=1e-6)
    np.testing.assert_allclose(odd.eigenvalues(), [-1, -1], atol=1e-6)


def test_transfer_matrix_structure():
    for E in (3.0, 18.611, 30.0, 49.0):
        m = transfer_matrix(amplitudes_v4(E, 50.0, 1.0))
        assert abs(m.det - 1.0) < 1e-9
        assert m.m11 == m.m22.conjugate() and m.m12 == m.m21.conjugate()
        assert m.as_array().shape == (2, 2)


@pytest.mark.parametrize("nu,a", [(2.3, 1.0), (0.0, 1.0), (7.7, 3.0)])
def test_flux_constant(nu, a):
    for z in (0.5, nu + 1.0, 40.0):
        assert probability_flux(nu, a, 1.0, z=z) == pytest.approx(2 / (math.pi * a), abs=1e-10)
    assert probability_flux(nu, a, 1.0, z=3.0, wave="hankel2") == pytest.approx(-2 / (math.pi * a), abs=1e-10)


def test_flux_scaling_and_standing_wave():
    assert probability_flux(2.3, 1.0, 2.0) == pytest.approx(8 / math.pi, abs=1e-10)
    assert probability_flux(2.3, 1.0, 1j) == pytest.approx(2 / math.pi, abs=1e-10)
    assert probability_flux(2.3, 1.0, 1.0, wave="bessel_j") == 0.0


def test_flux_validation():
    with pytest.raises(DomainError):
        probability_flux(1.0, 0.0, 1.0)
    with pytest.raises(DomainError):
        probability_flux(1.0, 1.0, 1.0, wave="airy")


def test_flipped_poles_match_quoted_energies():
    v4 = [p.E for p in find_poles(Family.V4, 5.0, 1.0, True, n_max=2)]
    v2 = [p.E for p in find_poles("v2", 50.0, 1.0, True, n_max=2)]
    assert v4 == pytest.approx([6.465, 17.537], abs=1e-3)
    assert v2 == pytest.approx([18.611, 37.263], abs=1e-3)


def test_poles_equal_bound_states(well_levels, valley_levels):
    valley = sorted(lv.E for p in Parity for lv in valley_levels[p])
    poles = find_poles(Family.V4, 5.0, 1.0, True, n_max=len(valley))
    assert [p.E for p in poles] == pytest.approx(valley, abs=1e-8)
    well = sorted((lv.E, lv.condition) for p in Parity for lv in well_levels[p])
    poles = find_poles(Family.V2, 50.0, 1.0, True, n_max=len(well))
    assert [p.E for p in poles] == pytest.approx([e for e, _ in well], abs=1e-8)
    assert [p.condition for p in poles] == [c for _, c in well]


def test_unflipped_v4_has_no_poles():
    assert find_poles(Family.V4, 50.0, 1.0, False, E_range=(0.0, 50.0)) == []
    assert min_abs_a(Family.V4, 50.0, 1.0, (0.0, 50.0)) >= 1.0 - 1e-12


def test_poles_restricted_to_scattering_families():
    with pytest.raises(DomainError):
        find_poles(Family.V5, 50.0, 1.0)
