import math

import numpy as np
import pytest

from besselwell import Family, PotentialSpec, evaluate, wave_params
from besselwell.errors import DomainError, RegimeError
from besselwell.potentials import energy_from_order

XS = np.linspace(-3.0, 3.0, 61)


def V(family, V0=1.0, a=1.0):
    return PotentialSpec(family, V0, a)


def test_v4_origin_and_v6_asymptote():
    assert evaluate(V(Family.V4), 0.0) == 0.0
    assert evaluate(V(Family.V6), 60.0) == pytest.approx(1.0, abs=1e-15)


@pytest.mark.parametrize("family", [Family.V1, Family.V2, Family.V4, Family.V5])
def test_symmetric_families_vanish_at_origin_and_are_even(family):
    spec = V(family, 3.0, 0.7)
    assert evaluate(spec, 0.0) == 0.0
    np.testing.assert_array_equal(evaluate(spec, XS), evaluate(spec, -XS))


def test_hybrids_glue_their_parents():
    for hybrid, left, right in ((Family.V6, Family.V4, Family.V5), (Family.V3, Family.V1, Family.V2)):
        h = evaluate(V(hybrid, 2.0), XS)
        np.testing.assert_allclose(h[XS <= 0], evaluate(V(left, 2.0), XS[XS <= 0]), rtol=1e-15)
        np.testing.assert_allclose(h[XS >= 0], evaluate(V(right, 2.0), XS[XS >= 0]), rtol=1e-15)


def test_sign_relations():
    np.testing.assert_allclose(evaluate(V(Family.V4), XS), -evaluate(V(Family.V1), XS))
    np.testing.assert_allclose(evaluate(V(Family.V5), XS), -evaluate(V(Family.V2), XS))


def test_kinks_only_in_non_analytic_members():
    h = 1e-6
    for family, kinked in ((Family.V1, True), (Family.V5, True), (Family.V3, False), (Family.V6, False)):
        spec = V(family)
        left = (evaluate(spec, 0.0) - evaluate(spec, -h)) / h
        right = (evaluate(spec, h) - evaluate(spec, 0.0)) / h
        assert (abs(left - right) > 1.0) is kinked


def test_cubic_triple():
    assert evaluate(V(Family.CUBIC), -2.0) == -8.0
    assert evaluate(V(Family.CUBIC_ABS), -2.0) == 8.0
    assert evaluate(V(Family.CUBIC_ABS_NEG), 2.0) == -8.0


def test_scalar_in_scalar_out():
    assert isinstance(evaluate(V(Family.V2), 0.5), float)
    assert evaluate(V(Family.V2), XS).shape == XS.shape


def test_wave_params_well_family():
    wp = wave_params(V(Family.V4, 50.0), 18.611)
    assert wp.kappa == pytest.approx(5.6026, abs=1e-4)
    assert wp.q == pytest.approx(7.0711, abs=1e-4)
    assert wp.nu == wp.kappa and wp.z0 == wp.q
    assert wave_params(V(Family.V4, 50.0), 50.0).kappa == 0.0


def test_wave_params_valley_family():
    wp = wave_params(V(Family.V2, 5.0), 0.0)
    assert wp.kappa == wp.q == pytest.approx(math.sqrt(5.0))


def test_wave_params_scale_with_a():
    wp = wave_params(V(Family.V5, 50.0, 2.0), 10.0)
    assert wp.nu == pytest.approx(2.0 * math.sqrt(40.0))
    assert wp.z0 == pytest.approx(2.0 * math.sqrt(50.0))


def test_regime_errors():
    with pytest.raises(RegimeError):
        wave_params(V(Family.V5, 50.0), 50.5)
    with pytest.raises(RegimeError):
        wave_params(V(Family.V1, 5.0), -5.5)
    with pytest.raises(DomainError):
        wave_params(V(Family.CUBIC), 1.0)


@pytest.mark.parametrize("V0,a", [(0.0, 1.0), (-1.0, 1.0), (1.0, 0.0), (math.nan, 1.0)])
def test_spec_validation(V0, a):
    with pytest.raises(DomainError):
        PotentialSpec(Family.V4, V0, a)


def test_cubic_ignores_parameters():
    PotentialSpec(Family.CUBIC, -3.0, 0.0)


def test_family_parse():
    assert Family.parse("V5") is Family.V5
    assert Family.parse("x^3") is Family.CUBIC
    assert Family.parse("cubic_abs") is Family.CUBIC_ABS
    with pytest.raises(ValueError):
        Family.parse("v7")


@pytest.mark.parametrize("family", [Family.V5, Family.V2])
def test_energy_from_order_inverts_wave_params(family):
    spec = V(family, 7.0, 1.3)
    E = 3.25
    assert energy_from_order(spec, wave_params(spec, E).nu) == pytest.approx(E, rel=1e-14)
