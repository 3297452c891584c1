"""Discrete energies from the Bessel-zero conditions and the matching wavefunctions.

Well family (V4, V5, V6), with kappa = sqrt(V0 - E), nu = kappa a, z0 = q a:

* even: J'_nu(z0) = 0, odd: J_nu(z0) = 0. These are the special scattering
  states of V4, the bound states of V5 and the hybrid states of V6.
* the negative-order roots J'_{-nu}(z0) = 0, J_{-nu}(z0) = 0 are reported
  separately and flagged non-physical.

Valley family (V1, V2, V3), with kappa = sqrt(E + V0):

* even: K'_{i nu}(z0) = 0, odd: K_{i nu}(z0) = 0. These are the bound states
  of V1, the special states of V2 and the hybrid states of V3.
"""
import enum
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError, IncompatibleLevelError, ScanExhaustedError, UnderflowSignal
from .potentials import Family, PotentialSpec, VALLEY_FAMILY, WELL_FAMILY, energy_from_order, wave_params
from .roots import bisect, scan_brackets
from .specfun import bessel_jy, bessel_k_imag, cospi, sinpi

SCAN_POINTS = 2000
VALLEY_ORDER_STEP = 0.02
RESIDUAL_FACTOR = 1e-10
DUPLICATE_TOL = 1e-9
NEAR_INTEGER = 1e-6


class Parity(str, enum.Enum):
    EVEN = "even"
    ODD = "odd"


class Condition(str, enum.Enum):
    J_PRIME_ZERO = "J_PRIME_ZERO"
    J_ZERO = "J_ZERO"
    K_PRIME_ZERO = "K_PRIME_ZERO"
    K_ZERO = "K_ZERO"
    J_NEG_PRIME_ZERO = "J_NEG_PRIME_ZERO"
    J_NEG_ZERO = "J_NEG_ZERO"
    # numerical shooting conditions at the origin
    DPSI_ZERO_AT_ORIGIN = "DPSI_ZERO_AT_ORIGIN"
    PSI_ZERO_AT_ORIGIN = "PSI_ZERO_AT_ORIGIN"


_COMPATIBLE = {
    Condition.J_PRIME_ZERO: WELL_FAMILY,
    Condition.J_ZERO: WELL_FAMILY,
    Condition.J_NEG_PRIME_ZERO: frozenset({Family.V4, Family.V5}),
    Condition.J_NEG_ZERO: frozenset({Family.V4, Family.V5}),
    Condition.K_PRIME_ZERO: VALLEY_FAMILY,
    Condition.K_ZERO: VALLEY_FAMILY,
}


@dataclass(frozen=True)
class EnergyLevel:
    E: float
    parity: Parity
    condition: Condition
    residual: float
    bracket: tuple
    scale: float = 1.0

    @property
    def physical(self):
        return self.condition not in (Condition.J_NEG_PRIME_ZERO, Condition.J_NEG_ZERO)


@dataclass
class WavefunctionGrid:
    xs: np.ndarray
    psi: np.ndarray
    parity: Parity
    normalized: bool
    sign_flip_at_origin: bool
    E: float = math.nan
    meta: dict = field(default_factory=dict)

    @property
    def step(self):
        return float(self.xs[1] - self.xs[0])

    def norm(self):
        return float(np.trapezoid(self.psi**2, self.xs))


# --- condition functions -------------------------------------------------------


def well_condition(V0, a, condition):
    """Condition function of E for the well family (J_{+-nu} at z0 = q a)."""
    z0 = math.sqrt(V0) * a

    def f(E):
        nu = math.sqrt(max(V0 - E, 0.0)) * a
        if condition in (Condition.J_NEG_ZERO, Condition.J_NEG_PRIME_ZERO):
            nu = -nu
        j, _, jp, _ = bessel_jy(nu, z0)
        return jp if condition in (Condition.J_PRIME_ZERO, Condition.J_NEG_PRIME_ZERO) else j

    return f


def valley_condition_order(x, condition):
    """Condition of the order nu for the valley family: K or K' at x, scaled by e^{pi nu/2}.

    The scaling is a positive factor, so zeros are unchanged, but the
    residual is measured against the oscillation amplitude rather than
    against an exponentially small number.
    """
    derivative = condition is Condition.K_PRIME_ZERO

    def f(nu):
        return bessel_k_imag(nu, x, derivative) * math.exp(0.5 * math.pi * nu)

    return f


def valley_order_ceiling(x):
    """Largest order whose K_{i nu}(x) oscillation clears the quadrature noise floor.

    Amplitude ~ sqrt(2 pi/nu) e^{-pi nu/2} against absolute noise ~ 1e-15 e^{-x};
    keep at least five significant digits of signal.
    """
    lo, hi = 0.0, 400.0
    for _ in range(80):
        mid = 0.5 * (lo + hi)
        amp = math.sqrt(2.0 * math.pi / max(mid, 1e-3)) * math.exp(-0.5 * math.pi * mid)
        if amp > 1e5 * 1e-15 * math.exp(-x):
            lo = mid
        else:
            hi = mid
    return min(lo, 100.0)


def default_valley_ceiling(V0, a):
    """Default energy ceiling for the valley-family scan."""
    qa = math.sqrt(V0) * a
    return V0 * (1.0 + 20.0 / qa**2) + 50.0 / a**2


# --- root search -----------------------------------------------------------------


def _parity_of(condition):
    if condition in (Condition.J_PRIME_ZERO, Condition.K_PRIME_ZERO, Condition.J_NEG_PRIME_ZERO,
                     Condition.DPSI_ZERO_AT_ORIGIN):
        return Parity.EVEN
    return Parity.ODD


def _refine(func, brackets, condition, to_energy, lo_limit, hi_limit):
    levels = []
    for lo, hi, f_lo, f_hi, scale in brackets:
        root, r_lo, r_hi, f_root = bisect(func, lo, hi, f_lo, f_hi)
        residual = abs(f_root)
        if residual > RESIDUAL_FACTOR * max(scale, 1e-300) and residual > 1e-15:
            continue
        E = to_energy(root)
        b_lo, b_hi = sorted((to_energy(lo), to_energy(hi)))
        if not (lo_limit < E < hi_limit):
            continue
        levels.append(
            EnergyLevel(E=E, parity=_parity_of(condition), condition=condition,
                        residual=residual, bracket=(b_lo, b_hi), scale=scale)
        )
    return _dedupe(levels)


def _dedupe(levels):
    levels = sorted(levels, key=lambda lv: lv.E)
    out = []
    for lv in levels:
        if out and abs(lv.E - out[-1].E) <= DUPLICATE_TOL * max(1.0, abs(lv.E)):
            if lv.residual < out[-1].residual:
                out[-1] = lv
            continue
        out.append(lv)
    return out


def _check_inputs(V0, a, n_max):
    if not (V0 > 0 and a > 0):
        raise DomainError(f"V0 and a must be positive, got V0={V0!r}, a={a!r}")
    if n_max < 1:
        raise DomainError(f"n_max must be at least 1, got {n_max!r}")


def _well_roots(V0, a, condition, n_max, n_points):
    _check_inputs(V0, a, n_max)
    func = well_condition(V0, a, condition)
    grid = np.linspace(0.0, V0, n_points)
    brackets = scan_brackets(func, grid)
    levels = _refine(func, brackets, condition, lambda E: E, 0.0, V0)
    return levels[:n_max]


def special_states_well_family(V0, a, parity, n_max=10, n_points=SCAN_POINTS):
    """Energies in (0, V0) with J'_{kappa a}(q a) = 0 (even) or J_{kappa a}(q a) = 0 (odd).

    These are simultaneously the special scattering states of V4, the
    bound states of V5 and the hybrid states of V6. May return fewer than
    ``n_max`` levels, including none.
    """
    condition = Condition.J_PRIME_ZERO if Parity(parity) is Parity.EVEN else Condition.J_ZERO
    return _well_roots(V0, a, condition, n_max, n_points)


def nonphysical_states(V0, a, parity, n_max=10, n_points=SCAN_POINTS):
    """Energies in (0, V0) with J'_{-kappa a}(q a) = 0 (even) or J_{-kappa a}(q a) = 0 (odd).

    The returned levels have ``physical == False``.
    """
    condition = Condition.J_NEG_PRIME_ZERO if Parity(parity) is Parity.EVEN else Condition.J_NEG_ZERO
    return _well_roots(V0, a, condition, n_max, n_points)


def special_states_valley_family(V0, a, parity, n_max=10, E_max=None, raise_on_exhaustion=True):
    """Lowest ``n_max`` energies E > 0 with K'_{i kappa a}(q a) = 0 (even) or K_{i kappa a}(q a) = 0 (odd).

    The scan runs in the order nu = a sqrt(E + V0) with step at most 0.02,
    from E = 0 up to ``E_max`` (default ``V0 (1 + 20/(qa)^2) + 50/a^2``),
    capped where the K oscillation sinks into quadrature noise.

    Raises
    ------
    ScanExhaustedError
        If fewer than ``n_max`` roots lie below the ceiling (and
        ``raise_on_exhaustion``); the roots found are attached.
    """
    _check_inputs(V0, a, n_max)
    condition = Condition.K_PRIME_ZERO if Parity(parity) is Parity.EVEN else Condition.K_ZERO
    spec = PotentialSpec(Family.V1, V0, a)
    x = spec.q * a
    if E_max is None:
        E_max = default_valley_ceiling(V0, a)
    nu_lo = x
    nu_hi = min(a * math.sqrt(E_max + V0), valley_order_ceiling(x))
    levels = []
    if nu_hi > nu_lo:
        n = max(SCAN_POINTS, int(math.ceil((nu_hi - nu_lo) / VALLEY_ORDER_STEP)) + 1)
        grid = np.linspace(nu_lo, nu_hi, n)
        func = valley_condition_order(x, condition)
        brackets = scan_brackets(func, grid)
        levels = _refine(func, brackets, condition, lambda nu: energy_from_order(spec, nu), 0.0, math.inf)
    if len(levels) < n_max and raise_on_exhaustion:
        raise ScanExhaustedError(
            f"found {len(levels)} of {n_max} {Parity(parity).value} levels below E={energy_from_order(spec, nu_hi):.6g}",
            levels,
        )
    return levels[:n_max]


# --- wavefunctions ---------------------------------------------------------------


def _near_integer(nu):
    return abs(nu - round(nu)) < NEAR_INTEGER


def _j_pair(nu, z):
    """(first, second) basis at z: (J_nu, J_{-nu}) or (J_nu, Y_nu) at near-integer nu."""
    j, y, jp, yp = bessel_jy(nu, z)
    if _near_integer(nu):
        return (j, jp), (y, yp)
    # reflection J_{-nu} = cos(pi nu) J_nu - sin(pi nu) Y_nu reuses the same evaluation
    c, s = cospi(nu), sinpi(nu)
    return (j, jp), (c * j - s * y, c * jp - s * yp)


def _v4_profile(nu, z0, zs, odd):
    (j0, jp0), (m0, mp0) = _j_pair(nu, z0)
    if odd:
        c_first, c_second = m0, -j0
    else:
        c_first, c_second = mp0, -jp0
    out = np.empty_like(zs)
    for i, z in enumerate(zs):
        (j, _), (m, _) = _j_pair(nu, z)
        out[i] = c_first * j + c_second * m
    return out


def _j_profile(order, zs):
    return np.array([bessel_jy(order, z)[0] for z in zs])


def _k_profile(nu, zs):
    out = np.empty_like(zs)
    for i, z in enumerate(zs):
        try:
            out[i] = bessel_k_imag(nu, z)
        except UnderflowSignal:
            out[i] = 0.0
    return out


def wavefunction(spec, level, x_min, x_max, n_points, cosmetic_sign_flip=False, normalize=True):
    """Sample the closed-form wavefunction of ``level`` for potential ``spec``.

    V4 uses the matched even/odd combinations of J_{+-nu}(q a e^{|x|/a})
    (J_{-nu} replaced by Y_nu at near-integer order); V5 uses
    J_nu(q a e^{-|x|/a}); V1 and V2 use K_{i nu} at q a e^{+-|x|/a}; the
    analytic V6 and V3 use the single profile J_nu(q a e^{-x/a}) or
    K_{i nu}(q a e^{-x/a}), which is the V5/V2 solution on the right glued
    smoothly onto the V4/V1 solution on the left.

    Odd states are stored as true odd functions. ``cosmetic_sign_flip``
    multiplies by sgn(x), giving the even-looking variant with a cusp at 0.
    The L2 norm is taken with the trapezoid rule over the requested grid.
    """
    spec = spec if isinstance(spec, PotentialSpec) else PotentialSpec(*spec)
    allowed = _COMPATIBLE.get(level.condition)
    if allowed is None or spec.family not in allowed:
        raise IncompatibleLevelError(
            f"level with condition {level.condition.value} does not belong to family {spec.family.value}"
        )
    if n_points < 2 or not x_max > x_min:
        raise DomainError("need n_points >= 2 and x_max > x_min")
    xs = np.linspace(x_min, x_max, int(n_points))
    wp = wave_params(spec, level.E)
    a = spec.a
    odd = level.parity is Parity.ODD
    sgn = np.sign(xs)
    f = spec.family
    negative = level.condition in (Condition.J_NEG_ZERO, Condition.J_NEG_PRIME_ZERO)

    if f is Family.V4:
        psi = _v4_profile(wp.nu, wp.z0, wp.z0 * np.exp(np.abs(xs) / a), odd)
    elif f is Family.V5:
        psi = _j_profile(-wp.nu if negative else wp.nu, wp.z0 * np.exp(-np.abs(xs) / a))
    elif f is Family.V6:
        psi = _j_profile(wp.nu, wp.z0 * np.exp(-xs / a))
    elif f is Family.V1:
        psi = _k_profile(wp.nu, wp.z0 * np.exp(np.abs(xs) / a))
    elif f is Family.V2:
        psi = _k_profile(wp.nu, wp.z0 * np.exp(-np.abs(xs) / a))
    else:
        psi = _k_profile(wp.nu, wp.z0 * np.exp(-xs / a))

    hybrid = f in (Family.V3, Family.V6)
    if odd and not hybrid:
        psi = sgn * psi
    flipped = bool(cosmetic_sign_flip and odd and not hybrid)
    if flipped:
        psi = sgn * psi
    grid = WavefunctionGrid(
        xs=xs, psi=psi, parity=level.parity, normalized=False, sign_flip_at_origin=flipped, E=level.E,
        meta={"family": f.value, "V0": spec.V0, "a": a, "condition": level.condition.value},
    )
    if normalize:
        norm = grid.norm()
        if norm > 0.0:
            grid.psi = psi / math.sqrt(norm)
            grid.normalized = True
    return grid
