"""Invariant suite behind ``besselwell validate``.

Each check returns a :class:`Check` carrying the worst observed deviation
and the tolerance it is held to.
"""
import math
from dataclasses import dataclass

import numpy as np

from . import oracle, scattering, spectra
from .potentials import Family, PotentialSpec
from .specfun import run_identity_suite

WELL_V0 = 50.0
VALLEY_V0 = 5.0


@dataclass(frozen=True)
class Check:
    name: str
    deviation: float
    tolerance: float

    @property
    def passed(self):
        return bool(self.deviation <= self.tolerance)

    def line(self):
        status = "PASS" if self.passed else "FAIL"
        return f"{status} {self.name}: deviation {self.deviation:.3e} (tolerance {self.tolerance:.1e})"


def _well_levels(V0=WELL_V0, n=10):
    levels = []
    for parity in spectra.Parity:
        levels += spectra.special_states_well_family(V0, 1.0, parity, n_max=n)
    return sorted(levels, key=lambda lv: lv.E)


def _valley_levels(V0=VALLEY_V0, n=2):
    levels = []
    for parity in spectra.Parity:
        levels += spectra.special_states_valley_family(V0, 1.0, parity, n_max=n)
    return sorted(levels, key=lambda lv: lv.E)


def check_specfun():
    return [Check(f"specfun.{c.name}", c.max_deviation, c.tolerance) for c in run_identity_suite()]


def check_unitarity():
    v4 = [scattering.amplitudes_v4(E, WELL_V0, 1.0) for E in np.linspace(0.02 * WELL_V0, 0.98 * WELL_V0, 200)]
    v2 = [scattering.amplitudes_v2(E, VALLEY_V0, 1.0) for E in np.linspace(0.1, 8.0 * VALLEY_V0, 200)]
    return [
        Check("scattering.v4_unitarity", max(abs(r.unitarity_defect) for r in v4), 1e-8),
        Check("scattering.v4_B_imaginary", max(abs(r.B.real) / abs(r.B) for r in v4), 1e-10),
        Check("scattering.v2_unitarity", max(abs(r.unitarity_defect) for r in v2), 1e-8),
        Check("scattering.v2_R_plus_T", max(abs(r.R + r.T - 1.0) for r in v2), 1e-8),
    ]


def check_special_energies():
    worst_identity = worst_vector = worst_det = worst_eig = 0.0
    for level in _well_levels():
        result = scattering.amplitudes_v4(level.E, WELL_V0, 1.0)
        sign = -1.0 if level.condition is spectra.Condition.J_PRIME_ZERO else 1.0
        worst_identity = max(worst_identity, abs(result.B - result.A - sign))
        m = scattering.transfer_matrix(result)
        image = m.apply([1.0, 1.0])
        worst_vector = max(worst_vector, float(np.max(np.abs(image + sign))))
        worst_det = max(worst_det, abs(m.det - 1.0))
        worst_eig = max(worst_eig, float(np.max(np.abs(m.eigenvalues() + sign))))
    return [
        Check("scattering.B_minus_A_special", worst_identity, 1e-6),
        Check("scattering.transfer_eigenvector", worst_vector, 1e-6),
        Check("scattering.transfer_det", worst_det, 1e-9),
        Check("scattering.transfer_eigenvalues", worst_eig, 1e-6),
    ]


def check_poles():
    valley = _valley_levels(n=2)
    poles = scattering.find_poles(Family.V4, VALLEY_V0, 1.0, True, n_max=len(valley))
    d4 = max(abs(p.E - lv.E) for p, lv in zip(poles, valley)) if len(poles) == len(valley) else math.inf
    well = _well_levels()
    poles = scattering.find_poles(Family.V2, WELL_V0, 1.0, True, n_max=len(well))
    d2 = max(abs(p.E - lv.E) for p, lv in zip(poles, well)) if len(poles) == len(well) else math.inf
    unflipped = scattering.find_poles(Family.V4, WELL_V0, 1.0, False)
    return [
        Check("scattering.v4_poles_vs_v1_levels", d4, 1e-8),
        Check("scattering.v2_poles_vs_v5_levels", d2, 1e-8),
        Check("scattering.v4_unflipped_no_poles", float(len(unflipped)), 0.0),
    ]


def check_flux():
    values = [scattering.probability_flux(nu, 1.0, 1.0, z=z) for nu in (0.0, 2.3, 7.5) for z in (0.7, 3.0, 40.0)]
    return [Check("scattering.flux_constant", max(abs(v - 2.0 / math.pi) for v in values), 1e-10)]


def check_oracle_agreement():
    worst = 0.0
    cases = [(PotentialSpec(Family.V5, WELL_V0, 1.0), _well_levels(n=3), WELL_V0 - 1e-6),
             (PotentialSpec(Family.V1, VALLEY_V0, 1.0), _valley_levels(n=3), None)]
    for spec, levels, ceiling in cases:
        for parity in spectra.Parity:
            wanted = [lv for lv in levels if lv.parity is parity][:3]
            matching = oracle.Matching.DPSI_ZERO_AT_ORIGIN if parity is spectra.Parity.EVEN else oracle.Matching.PSI_ZERO_AT_ORIGIN
            top = ceiling if ceiling is not None else wanted[-1].E + 5.0
            shot = oracle.shoot_levels(spec, matching, 1e-3, top, len(wanted), 0.25)
            if len(shot) != len(wanted):
                return [Check("oracle.eigenvalues_vs_bessel_roots", math.inf, 1e-5)]
            worst = max(worst, max(abs(s.E - w.E) / w.E for s, w in zip(shot, wanted)))
    return [Check("oracle.eigenvalues_vs_bessel_roots", worst, 1e-5)]


def free_particle_error(step, x_max=10.0):
    """Max |psi - sin x| for the Numerov run of psi'' = -psi from sin initial data."""
    grid = oracle.numerov_integrate(lambda x: np.zeros_like(np.asarray(x, dtype=float)), 1.0, 0.0, x_max, step,
                                    0.0, math.sin(step))
    return float(np.max(np.abs(grid.psi - np.sin(grid.xs))))


def check_numerov_order():
    errors = [free_particle_error(h) for h in (4e-2, 2e-2, 1e-2, 5e-3)]
    worst = max(abs(errors[i] / errors[i + 1] / 16.0 - 1.0) for i in range(3))
    return [Check("oracle.fourth_order_convergence", worst, 0.2),
            Check("oracle.free_particle_accuracy", free_particle_error(1e-3), 1e-8)]


def _one_sided_slopes(grid):
    i0 = int(np.argmin(np.abs(grid.xs)))
    h = grid.step
    p = grid.psi
    left = (3.0 * p[i0] - 4.0 * p[i0 - 1] + p[i0 - 2]) / (2.0 * h)
    right = (-3.0 * p[i0] + 4.0 * p[i0 + 1] - p[i0 + 2]) / (2.0 * h)
    return left, right, i0


def _proportionality_defect(u, v):
    """Relative residual of the least-squares fit u ~ c v."""
    c = np.dot(u, v) / np.dot(v, v)
    return float(np.max(np.abs(u - c * v)) / np.max(np.abs(u)))


def hybrid_gluing_defect(hybrid, left_family, right_family, level, half_width=1e-3, n_points=201):
    """Worst of: derivative jump at 0 and mismatch with the parent states on each side."""
    V0, a = hybrid.V0, hybrid.a
    grid = spectra.wavefunction(hybrid, level, -half_width, half_width, n_points, normalize=False)
    left, right, _ = _one_sided_slopes(grid)
    scale = max(abs(left), abs(right), abs(grid.psi).max() / hybrid.a)
    jump = abs(left - right) / scale
    wide = spectra.wavefunction(hybrid, level, -3.0 * a, 3.0 * a, 601, normalize=False)
    neg, pos = wide.xs < 0, wide.xs > 0
    mismatch = 0.0
    for family, mask in ((left_family, neg), (right_family, pos)):
        parent = spectra.wavefunction(PotentialSpec(family, V0, a), level, -3.0 * a, 3.0 * a, 601, normalize=False)
        mismatch = max(mismatch, _proportionality_defect(wide.psi[mask], parent.psi[mask]))
    return max(jump, mismatch)


def check_gluing():
    worst = 0.0
    spec6 = PotentialSpec(Family.V6, WELL_V0, 1.0)
    for level in _well_levels(n=2):
        worst = max(worst, hybrid_gluing_defect(spec6, Family.V4, Family.V5, level))
    spec3 = PotentialSpec(Family.V3, VALLEY_V0, 1.0)
    for level in _valley_levels(n=2):
        worst = max(worst, hybrid_gluing_defect(spec3, Family.V1, Family.V2, level))
    envelope = 0.0
    for level in _well_levels(n=2)[:2]:
        shot = oracle.shooting_wavefunction(spec6, level, -4.0, 12.0, 1e-3, mirror=False)
        env = np.abs(shot.psi) * np.exp(np.abs(shot.xs) / 2.0)
        far = env[(shot.xs >= -4.0) & (shot.xs <= -2.0)].max()
        near = env[(shot.xs > -2.0) & (shot.xs <= 0.0)].max()
        envelope = max(envelope, far / near)
    return [Check("spectra.hybrid_gluing", worst, 1e-8),
            Check("oracle.v6_left_envelope_ratio", envelope, 10.0)]


def check_normalization():
    spec = PotentialSpec(Family.V5, WELL_V0, 1.0)
    level = spectra.special_states_well_family(WELL_V0, 1.0, "even", 1)[0]
    small = spectra.wavefunction(spec, level, -8.0, 8.0, 16001)
    large = spectra.wavefunction(spec, level, -12.0, 12.0, 24001)
    a = oracle.moments(small, "x", 2, 8.0)
    b = oracle.moments(large, "x", 2, 12.0)
    return [Check("oracle.normalization_conservation", abs(a - b) / abs(b), 1e-4)]


SUITE = (
    check_specfun,
    check_unitarity,
    check_special_energies,
    check_poles,
    check_flux,
    check_numerov_order,
    check_oracle_agreement,
    check_gluing,
    check_normalization,
)


def run_suite():
    checks = []
    for group in SUITE:
        checks.extend(group())
    return checks
