"""Left-incidence scattering on the bottomless well V4 and the valley V2.

The incoming wave is normalized so that the transmitted wave has unit
amplitude; ``A`` is the incident and ``B`` the reflected amplitude, so
T = |1/A|^2 and R = |B/A|^2 with |A|^2 - |B|^2 = 1 expressing flux
conservation.
"""
import math
import warnings
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, LossOfAccuracyWarning, PoleError, RegimeError
from .potentials import Family, PotentialSpec, energy_from_order
from .roots import scan_brackets
from .spectra import Condition, SCAN_POINTS, VALLEY_ORDER_STEP, _refine, default_valley_ceiling, valley_order_ceiling
from .specfun import ascending_series, bessel_i_imag, bessel_j, bessel_k_imag_via_hankel, hankel

POLE_THRESHOLD = 1e-12


@dataclass(frozen=True)
class ScatteringResult:
    E: float
    A: complex
    B: complex
    R: float
    T: float

    @property
    def unitarity_defect(self):
        """|A|^2 - |B|^2 - 1; zero for a flux-conserving pair."""
        return abs(self.A) ** 2 - abs(self.B) ** 2 - 1.0


@dataclass(frozen=True)
class TransferMatrix:
    m11: complex
    m12: complex
    m21: complex
    m22: complex

    def as_array(self):
        return np.array([[self.m11, self.m12], [self.m21, self.m22]], dtype=complex)

    @property
    def det(self):
        return self.m11 * self.m22 - self.m12 * self.m21

    def apply(self, vector):
        return self.as_array() @ np.asarray(vector, dtype=complex)

    def eigenvalues(self):
        return np.linalg.eigvals(self.as_array())


def reflection_transmission(result):
    """(R, T) = (|B/A|^2, |1/A|^2).

    Raises
    ------
    PoleError
        If |A| < 1e-12.
    """
    A, B = complex(result.A), complex(result.B)
    if abs(A) < POLE_THRESHOLD:
        raise PoleError(f"|A| = {abs(A):.3g} at a transmission pole")
    return abs(B / A) ** 2, abs(1.0 / A) ** 2


def _result(E, A, B):
    R, T = reflection_transmission(ScatteringResult(E, A, B, math.nan, math.nan))
    return ScatteringResult(E=E, A=A, B=B, R=R, T=T)


def _check_positive(V0, a):
    if not (V0 > 0 and a > 0):
        raise DomainError(f"V0 and a must be positive, got V0={V0!r}, a={a!r}")


def amplitudes_v4(E, V0, a):
    """A = -(i pi z0/2) H1 H1',  B = (i pi z0/4)(H1 H2' + H2 H1'), at order kappa a and z0 = q a.

    Valid for 0 < E < V0, where the order is real.
    """
    _check_positive(V0, a)
    if not (0.0 < E < V0):
        raise RegimeError(f"V4 amplitudes need 0 < E < V0, got E={E!r}, V0={V0!r}")
    nu = math.sqrt(V0 - E) * a
    z0 = math.sqrt(V0) * a
    h1, h1p = hankel(1, nu, z0), hankel(1, nu, z0, True)
    h2, h2p = h1.conjugate(), h1p.conjugate()
    A = -0.5j * math.pi * z0 * h1 * h1p
    B = 0.25j * math.pi * z0 * (h1 * h2p + h2 * h1p)
    return _result(E, A, B)


def _v2_pieces(E, V0, a):
    _check_positive(V0, a)
    if not E > 0.0:
        raise RegimeError(f"V2 amplitudes need E > 0, got E={E!r}")
    nu = math.sqrt(E + V0) * a
    z0 = math.sqrt(V0) * a
    return nu, z0, bessel_i_imag(nu, z0), bessel_i_imag(nu, z0, True)


def amplitudes_v2(E, V0, a):
    """Flux-conserving V2 amplitudes at order i kappa a, kappa = sqrt(E + V0).

    With I = I_{i nu}(z0), I' its derivative and s = sinh(pi nu):

        A = i pi z0 conj(I I') / s,    B = -i pi z0 Re(I conj(I')) / s

    so that |A|^2 - |B|^2 = 1 follows from the Wronskian of I_{+-i nu}.
    """
    nu, z0, i_val, i_der = _v2_pieces(E, V0, a)
    s = math.sinh(math.pi * nu)
    A = 1j * math.pi * z0 * (i_val * i_der).conjugate() / s
    B = -1j * math.pi * z0 * (i_val * i_der.conjugate()).real / s
    return _result(E, A, B)


def amplitudes_v2_verbatim(E, V0, a):
    """The V2 amplitudes in their commonly quoted closed form, kept as a diagnostic.

        A = -(i pi z0 / (2 s)) I I',   B = (i pi z0 / (2 s)) (I I' + conj(I I'))

    This pair is not flux conserving; ``unitarity_defect`` of the result
    reports by how much. R and T are filled in from the same formulas and
    need not sum to one.
    """
    nu, z0, i_val, i_der = _v2_pieces(E, V0, a)
    s = math.sinh(math.pi * nu)
    prod = i_val * i_der
    A = -0.5j * math.pi * z0 * prod / s
    B = 0.5j * math.pi * z0 * (prod + prod.conjugate()) / s
    return _result(E, A, B)


def transfer_matrix(result):
    """M22 = A, M21 = -B, M11 = conj(M22), M12 = conj(M21)."""
    A, B = complex(result.A), complex(result.B)
    return TransferMatrix(m11=A.conjugate(), m12=-B.conjugate(), m21=-B, m22=A)


_WAVES = {
    "hankel1": lambda nu, z, d: hankel(1, nu, z, d),
    "hankel2": lambda nu, z, d: hankel(2, nu, z, d),
    "bessel_j": lambda nu, z, d: complex(bessel_j(nu, z, d)),
}


def probability_flux(nu, a, amplitude, z=None, wave="hankel1"):
    """Current (psi* psi' - psi psi*')/(2i) of psi = amplitude * W_nu(z(x)) with dz/dx = z/a.

    For the outgoing Hankel wave this is |amplitude|^2 * 2/(pi a) at every
    point. ``z`` defaults to the order itself plus one; a real standing
    wave (``bessel_j``) carries no current.
    """
    if not a > 0:
        raise DomainError(f"a must be positive, got {a!r}")
    if wave not in _WAVES:
        raise DomainError(f"unknown wave {wave!r}; choose from {sorted(_WAVES)}")
    if z is None:
        z = abs(nu) + 1.0
    f = _WAVES[wave]
    c = complex(amplitude)
    psi = c * f(nu, z, False)
    dpsi = c * f(nu, z, True) * z / a
    return ((psi.conjugate() * dpsi - psi * dpsi.conjugate()) / 2j).real


# --- poles ---------------------------------------------------------------------------


def _v4_flipped_poles(V0, a, E_range, n_max):
    # q -> iq, kappa -> i kappa turns H1 into K_{i kappa a}(q a), kappa = sqrt(E + V0)
    spec = PotentialSpec(Family.V1, V0, a)
    x = spec.q * a
    E_lo, E_hi = E_range
    nu_lo = max(a * math.sqrt(max(E_lo, 0.0) + V0), 1e-9)
    nu_hi = min(a * math.sqrt(E_hi + V0), valley_order_ceiling(x))
    levels = []
    if nu_hi <= nu_lo:
        return levels
    n = max(SCAN_POINTS, int(math.ceil((nu_hi - nu_lo) / VALLEY_ORDER_STEP)) + 1)
    grid = np.linspace(nu_lo, nu_hi, n)
    for condition in (Condition.K_PRIME_ZERO, Condition.K_ZERO):
        derivative = condition is Condition.K_PRIME_ZERO

        def func(nu, derivative=derivative):
            return bessel_k_imag_via_hankel(nu, x, derivative) * math.exp(0.5 * math.pi * nu)

        brackets = scan_brackets(func, grid)
        levels += _refine(func, brackets, condition, lambda nu: energy_from_order(spec, nu), E_lo, E_hi)
    return sorted(levels, key=lambda lv: lv.E)[:n_max]


def _v2_flipped_poles(V0, a, E_range, n_max):
    # q -> iq, kappa -> i kappa turns I_{i kappa a}(q a) into J_{kappa a}(q a), kappa = sqrt(V0 - E)
    z0 = math.sqrt(V0) * a
    E_lo, E_hi = max(E_range[0], 0.0), min(E_range[1], V0)
    levels = []
    if E_hi <= E_lo:
        return levels
    grid = np.linspace(E_lo, E_hi, SCAN_POINTS)
    for condition in (Condition.J_PRIME_ZERO, Condition.J_ZERO):
        derivative = condition is Condition.J_PRIME_ZERO

        def func(E, derivative=derivative):
            nu = math.sqrt(max(V0 - E, 0.0)) * a
            return ascending_series(nu, z0, sign=-1, derivative=derivative).real

        # the series loses digits relative to J only because J itself vanishes at the
        # roots; the absolute error stays at rounding level
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", LossOfAccuracyWarning)
            brackets = scan_brackets(func, grid)
            levels += _refine(func, brackets, condition, lambda E: E, E_lo, E_hi)
    return sorted(levels, key=lambda lv: lv.E)[:n_max]


def min_abs_a(family, V0, a, E_range, n_points=SCAN_POINTS):
    """Smallest |A| over a uniform energy scan of the physical (unflipped) amplitudes."""
    amplitudes = amplitudes_v4 if Family.parse(family) is Family.V4 else amplitudes_v2
    lo, hi = E_range
    grid = np.linspace(lo, hi, n_points + 2)[1:-1]
    return min(abs(amplitudes(E, V0, a).A) for E in grid)


def find_poles(family, V0, a, sign_flipped=True, E_range=None, n_max=10):
    """Energies where A vanishes after V0 -> -V0, labelled by the vanishing factor.

    For V4 the factors are K_{i kappa a}(q a) (odd) and its derivative (even),
    evaluated through the Hankel function at imaginary argument; for V2 they
    are J_{kappa a}(q a) and its derivative from the ascending series.
    Without the sign flip |A| >= 1 throughout and the diagnostic scan
    returns no poles.
    """
    family = Family.parse(family)
    _check_positive(V0, a)
    if family not in (Family.V4, Family.V2):
        raise DomainError(f"poles are defined for v4 and v2, not {family.value}")
    if not sign_flipped:
        if E_range is None:
            E_range = (0.0, V0) if family is Family.V4 else (0.0, 8.0 * V0)
        return [] if min_abs_a(family, V0, a, E_range) >= POLE_THRESHOLD else _unexpected_pole(family)
    if family is Family.V4:
        if E_range is None:
            E_range = (0.0, default_valley_ceiling(V0, a))
        return _v4_flipped_poles(V0, a, E_range, n_max)
    if E_range is None:
        E_range = (0.0, V0)
    return _v2_flipped_poles(V0, a, E_range, n_max)


def _unexpected_pole(family):
    raise PoleError(f"|A| vanished on the physical {family.value} sheet")
