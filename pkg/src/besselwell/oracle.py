"""Bessel-free verification path: Numerov integration, shooting eigenvalues, moments.

Everything here works directly on psi'' = (V(x) - E) psi and never calls
the special-function module, so agreement with the closed-form results is
a genuine cross-check.
"""
import enum
import math
import warnings
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, GridResolutionWarning, NoSignChangeError, OverflowSignal, ResolutionError
from .potentials import CUBIC_FAMILY, Family, PotentialSpec
from .roots import bisect
from .spectra import Condition, EnergyLevel, Parity, WavefunctionGrid

OVERFLOW_LIMIT = 1e300
RESCALE_AT = 1e100
DEFAULT_STEP = 1e-3
CUBIC_STEP = 5e-4
CUBIC_X_LEFT = -8.0
DECAY_TARGET = 40.0
MAX_START_DISTANCE = 200.0
EIGEN_REL_WIDTH = 1e-10
POINTS_PER_WAVELENGTH = 30


class Matching(str, enum.Enum):
    PSI_ZERO_AT_ORIGIN = "PSI_ZERO_AT_ORIGIN"
    DPSI_ZERO_AT_ORIGIN = "DPSI_ZERO_AT_ORIGIN"

    @property
    def parity(self):
        return Parity.EVEN if self is Matching.DPSI_ZERO_AT_ORIGIN else Parity.ODD

    @property
    def condition(self):
        return Condition(self.value)


@dataclass(frozen=True)
class ShootingProblem:
    """Inward shooting from the decaying side ``x_start`` to the matching point ``x_end``."""

    spec: object
    matching: Matching
    x_start: float
    x_end: float = 0.0
    grid_step: float = DEFAULT_STEP

    def __post_init__(self):
        object.__setattr__(self, "matching", Matching(self.matching))
        if not self.grid_step > 0:
            raise DomainError("grid_step must be positive")
        if self.x_start == self.x_end:
            raise DomainError("x_start must differ from x_end")


def _potential(spec):
    if isinstance(spec, PotentialSpec):
        return spec.__call__
    if callable(spec):
        return spec
    raise DomainError(f"not a potential: {spec!r}")


def _grid(x_from, x_to, step):
    span = x_to - x_from
    n = int(round(abs(span) / step))
    if n < 1 or abs(n * step - abs(span)) > 1e-9 * max(1.0, abs(span)):
        raise DomainError(f"step {step!r} does not divide the interval [{x_from!r}, {x_to!r}]")
    return np.linspace(x_from, x_to, n + 1)


def numerov_integrate(spec, E, x_from, x_to, step, psi0, psi1):
    """Integrate psi'' = (V - E) psi with Numerov's scheme from x_from to x_to.

    ``psi0`` and ``psi1`` are the values at ``x_from`` and at the next grid
    point (one ``step`` towards ``x_to``). Global error is O(step^4).

    Raises
    ------
    OverflowSignal
        If |psi| exceeds 1e300; the caller has to rescale.
    """
    V = _potential(spec)
    xs = _grid(x_from, x_to, step)
    h = xs[1] - xs[0]
    f = (np.asarray(V(xs), dtype=float) - E) * (h * h / 12.0)
    if not np.all(np.isfinite(f)):
        raise DomainError("potential is not finite on the integration interval")
    try:
        _, _, path = _march(f.tolist(), float(psi0), float(psi1), keep=True, rescale=False)
    except OverflowSignal as exc:
        raise OverflowSignal(f"|psi| exceeded {OVERFLOW_LIMIT:g} at x={xs[exc.args[0]]:.6g}") from None
    psi = np.asarray(path)
    return WavefunctionGrid(xs=xs, psi=psi, parity=None, normalized=False, sign_flip_at_origin=False, E=E,
                            meta={"method": "numerov", "step": abs(h)})


def _march(f, p0, p1, keep=False, rescale=True):
    """Numerov recurrence on pre-scaled f = (V - E) h^2 / 12.

    Advances w = psi (1 - f) through its first difference, which keeps the
    rounding error growing linearly rather than quadratically in the number
    of steps. With ``rescale`` the running solution (and any kept path) is
    divided by 1e100 whenever it exceeds that size; otherwise OverflowSignal
    carries the offending grid index. Returns the last two psi values and
    the path if ``keep``.
    """
    p_prev, p = p0, p1
    w = p1 * (1.0 - f[1])
    d = w - p0 * (1.0 - f[0])
    path = [p0, p1] if keep else None
    for n in range(1, len(f) - 1):
        d += 12.0 * f[n] * p
        w += d
        p_prev, p = p, w / (1.0 - f[n + 1])
        if abs(p) > RESCALE_AT:
            if not rescale:
                if not abs(p) <= OVERFLOW_LIMIT:
                    raise OverflowSignal(n + 1)
            else:
                p_prev /= RESCALE_AT
                p /= RESCALE_AT
                w /= RESCALE_AT
                d /= RESCALE_AT
                if keep:
                    path = [v / RESCALE_AT for v in path]
        if keep:
            path.append(p)
    return p_prev, p, path


def decay_start(spec, E, step=DEFAULT_STEP, side=+1, target=DECAY_TARGET, x_from=0.0):
    """Starting point on the decaying side for inward shooting at energy E.

    Walks outward from the classical turning point, accumulating the WKB
    exponent int sqrt(V - E) dx, and stops at the first of: exponent >= target;
    the exponential seed becoming exact (|V'| / (V - E)^{3/2} < 1e-12);
    Numerov's stability margin (step^2 (V - E) / 12 > 0.02); a hard cap.
    The result is a grid multiple of ``step`` away from ``x_from``.
    """
    V = _potential(spec)
    x = x_from
    exponent = 0.0
    n = 0
    while n * step < MAX_START_DISTANCE:
        n += 1
        x = x_from + side * n * step
        k2 = float(V(x)) - E
        if k2 <= 0.0:
            exponent = 0.0
            continue
        k = math.sqrt(k2)
        exponent += k * step
        slope = abs(float(V(x + step)) - float(V(x - step))) / (2.0 * step)
        if exponent >= target or slope < 1e-12 * k2 * k or step * step * k2 / 12.0 > 0.02:
            break
    return x


def _seeded_path(V, E, x_start, x_end, step):
    xs = _grid(x_start, x_end, step)
    h = abs(xs[1] - xs[0])
    fx = (np.asarray(V(xs), dtype=float) - E)
    if fx[0] <= 0.0:
        raise DomainError(f"x_start={x_start:g} is not in the classically forbidden region at E={E:g}")
    seed0 = 1.0
    seed1 = math.exp(math.sqrt(fx[0]) * h)
    return xs, (fx * (h * h / 12.0)).tolist(), seed0, seed1, h


def matching_functional(problem, E):
    """psi(0) (odd) or the discrete Numerov analogue of psi'(0) (even) after inward shooting."""
    V = _potential(problem.spec)
    xs, f, s0, s1, h = _seeded_path(V, E, problem.x_start, problem.x_end, problem.grid_step)
    p_prev, p_cur, _ = _march(f, s0, s1)
    if problem.matching is Matching.PSI_ZERO_AT_ORIGIN:
        return p_cur
    # mirror the last step: psi(-h) = psi(h) for an even state of the reflected
    # potential. A kink of V at the origin makes psi''' jump by 2 V'(0+) psi(0);
    # the h^3 term restores fourth-order accuracy.
    x0 = problem.x_end
    side = math.copysign(1.0, problem.x_start - x0)
    slope = side * (-3.0 * V(x0) + 4.0 * V(x0 + side * h) - V(x0 + 2.0 * side * h)) / (2.0 * h)
    return p_cur * (1.0 + 5.0 * f[-1]) - p_prev * (1.0 - f[-2]) + h**3 * slope * p_cur / 12.0


def eigen_shoot(problem, E_lo, E_hi, rel_width=EIGEN_REL_WIDTH):
    """Refine the eigenvalue in [E_lo, E_hi] where the matching functional changes sign.

    The residual of the returned level is |functional| at the root divided
    by its larger magnitude at the bracket ends.

    Raises
    ------
    NoSignChangeError
        If the functional has the same sign at both ends.
    """
    func = lambda E: matching_functional(problem, E)  # noqa: E731
    f_lo, f_hi = func(E_lo), func(E_hi)
    if f_lo * f_hi > 0.0:
        raise NoSignChangeError(f"matching functional does not change sign on [{E_lo:g}, {E_hi:g}]")
    root, lo, hi, f_root = bisect(func, E_lo, E_hi, f_lo, f_hi, rel_width=rel_width, to_ulp=False)
    # the functional carries an arbitrary normalization; report it relative to the bracket ends
    scale = max(abs(f_lo), abs(f_hi))
    return EnergyLevel(E=float(root), parity=problem.matching.parity, condition=problem.matching.condition,
                       residual=abs(f_root) / scale, bracket=(E_lo, E_hi), scale=1.0)


def shooting_problem(spec, matching, E_ceiling, step=DEFAULT_STEP):
    """ShootingProblem for a potential that confines on the right, started where it decays at E_ceiling."""
    x_start = decay_start(spec, E_ceiling, step)
    return ShootingProblem(spec=spec, matching=matching, x_start=x_start, grid_step=step)


def shoot_levels(spec, matching, E_lo, E_hi, n_max, scan_step, step=DEFAULT_STEP):
    """Lowest ``n_max`` shooting eigenvalues in (E_lo, E_hi) for one matching condition."""
    problem = shooting_problem(spec, matching, E_hi, step)
    grid = np.linspace(E_lo, E_hi, max(2, int(math.ceil((E_hi - E_lo) / scan_step)) + 1))
    values = [matching_functional(problem, E) for E in grid]
    levels = []
    for i in range(grid.size - 1):
        if values[i] * values[i + 1] < 0.0:
            levels.append(eigen_shoot(problem, grid[i], grid[i + 1]))
            if len(levels) == n_max:
                break
    return levels


# --- cubic potential --------------------------------------------------------------


def _cubic_x_right(E):
    return max(E, 0.0) ** (1.0 / 3.0) + 6.0


def _check_cubic_resolution(E, x_left, step):
    k_max = math.sqrt(max(E - x_left**3, E, 1e-12))
    wavelength = 2.0 * math.pi / k_max
    if step > wavelength / POINTS_PER_WAVELENGTH:
        raise ResolutionError(
            f"step {step:g} exceeds 1/{POINTS_PER_WAVELENGTH} of the shortest wavelength {wavelength:.4g} on [{x_left:g}, 0]"
        )


def cubic_levels(n_max=2, x_right=None, x_left=CUBIC_X_LEFT, step=CUBIC_STEP, scan_step=0.1):
    """Lowest ``n_max`` hybrid eigenvalues of V(x) = x^3.

    Each level satisfies psi(0) = 0 (odd label) or psi'(0) = 0 (even label)
    together with exponential decay for x > 0; no condition is imposed at
    ``x_left``, which only bounds the domain of the returned wavefunctions.
    """
    spec = PotentialSpec(Family.CUBIC)
    found = []
    E_top = 4.0
    while True:
        _check_cubic_resolution(E_top, x_left, step)
        xr = x_right if x_right is not None else _cubic_x_right(E_top)
        xr = step * math.ceil(xr / step)
        grid = np.arange(scan_step, E_top + 0.5 * scan_step, scan_step)
        found = []
        for matching in Matching:
            problem = ShootingProblem(spec, matching, x_start=xr, grid_step=step)
            values = [matching_functional(problem, E) for E in grid]
            for i in range(grid.size - 1):
                if values[i] * values[i + 1] < 0.0:
                    found.append(eigen_shoot(problem, grid[i], grid[i + 1]))
        found.sort(key=lambda lv: lv.E)
        if len(found) >= n_max:
            return found[:n_max]
        E_top *= 2.0
        if E_top > 1e4:
            return found


def shooting_wavefunction(spec, level, x_left, x_right, step, normalize=True, mirror=None):
    """Wavefunction at a shooting eigenvalue, integrated inward from ``x_right``.

    With ``mirror`` (the default for symmetric potentials) only x >= 0 is
    integrated and the left half is the even/odd image, because continuing
    into the decaying left side would amplify rounding errors. Otherwise
    the recurrence runs on through the origin to ``x_left``, which is the
    outward integration on the falling side of the x^3 potential.
    """
    V = _potential(spec)
    if mirror is None:
        mirror = isinstance(spec, PotentialSpec) and spec.symmetric
    E = level.E
    xr = step * math.ceil(x_right / step)
    xl = -step * math.ceil(-x_left / step)
    if isinstance(spec, PotentialSpec) and spec.family in CUBIC_FAMILY:
        _check_cubic_resolution(E, xl, step)
    xs = _grid(xr, 0.0 if mirror else xl, step)
    h = abs(xs[1] - xs[0])
    fx = np.asarray(V(xs), dtype=float) - E
    if fx[0] <= 0.0:
        raise DomainError(f"x_right={x_right:g} is not in the forbidden region at E={E:g}")
    f = (fx * (h * h / 12.0)).tolist()
    _, _, path = _march(f, 1.0, math.exp(math.sqrt(fx[0]) * h), keep=True)
    xs = xs[::-1]
    psi = np.asarray(path[::-1])
    if mirror:
        if level.parity is Parity.ODD:
            psi[0] = 0.0
        sign = -1.0 if level.parity is Parity.ODD else 1.0
        n_left = int(round(-xl / h))
        xs = np.concatenate([-xs[n_left:0:-1], xs])
        psi = np.concatenate([sign * psi[n_left:0:-1], psi])
    grid = WavefunctionGrid(xs=xs, psi=psi, parity=level.parity, normalized=False, sign_flip_at_origin=False,
                            E=E, meta={"method": "numerov", "step": h})
    if normalize:
        grid.psi = psi / math.sqrt(grid.norm())
        grid.normalized = True
    return grid


def cubic_wavefunction(level, x_left=CUBIC_X_LEFT, x_right=None, step=CUBIC_STEP):
    """Hybrid x^3 eigenfunction on [x_left, x_right], normalized on that domain."""
    xr = x_right if x_right is not None else _cubic_x_right(level.E)
    return shooting_wavefunction(PotentialSpec(Family.CUBIC), level, x_left, xr, step)


# --- transmission through a finite scatterer -------------------------------------


def transmission(spec, E, x_max, step=DEFAULT_STEP):
    """(R, T, flux_mismatch) for left incidence on a potential that tends to a constant.

    Integrates from the right with the pure transmitted wave exp(i k x),
    k = sqrt(E - V(+x_max)), back to -x_max and decomposes there into
    incoming and reflected plane waves with k_L = sqrt(E - V(-x_max)).
    """
    V = _potential(spec)
    kr = math.sqrt(E - float(V(x_max)))
    kl = math.sqrt(E - float(V(-x_max)))
    xs = _grid(x_max, -x_max, step)
    h = abs(xs[1] - xs[0])
    f = ((np.asarray(V(xs), dtype=float) - E) * (h * h / 12.0)).tolist()
    p_prev = complex(math.cos(kr * xs[0]), math.sin(kr * xs[0]))
    p_cur = complex(math.cos(kr * xs[1]), math.sin(kr * xs[1]))
    p_prev, p_cur, _ = _march(f, p_prev, p_cur, rescale=False)
    x1, x0 = xs[-2], xs[-1]
    # psi = A e^{ikx} + B e^{-ikx} fitted through the last two points
    e1p, e1m = np.exp(1j * kl * x1), np.exp(-1j * kl * x1)
    e0p, e0m = np.exp(1j * kl * x0), np.exp(-1j * kl * x0)
    det = e1p * e0m - e1m * e0p
    A = (p_prev * e0m - e1m * p_cur) / det
    B = (e1p * p_cur - p_prev * e0p) / det
    T = (kr / kl) / abs(A) ** 2
    R = abs(B) ** 2 / abs(A) ** 2
    return R, T, abs(R + T - 1.0)


# --- moments ------------------------------------------------------------------------


class Observable(str, enum.Enum):
    X_POWER = "x"
    P_POWER = "p"


def _restrict(grid, cutoff_L):
    mask = np.abs(grid.xs) <= cutoff_L + 1e-12 * max(1.0, cutoff_L)
    if not mask.any():
        raise DomainError(f"cutoff {cutoff_L!r} leaves no grid points")
    if cutoff_L > max(abs(grid.xs[0]), abs(grid.xs[-1])) + 1e-9:
        raise DomainError(f"cutoff {cutoff_L!r} lies outside the sampled grid")
    return grid.xs[mask], grid.psi[mask]


def moments(psi, observable, power, cutoff_L):
    """Expectation value <x^n> or <p^n> of a real wavefunction over |x| <= cutoff_L.

    The state is renormalized on the cutoff domain. <p^2> uses int |psi'|^2;
    higher even powers use |d^{n/2} psi / dx^{n/2}|^2 from repeated central
    differences. Odd powers of p vanish identically for real psi and are
    returned as exactly 0.
    """
    observable = Observable(observable)
    power = int(power)
    if power < 1:
        raise DomainError("power must be >= 1")
    xs, values = _restrict(psi, cutoff_L)
    norm = np.trapezoid(values**2, xs)
    if observable is Observable.X_POWER:
        return float(np.trapezoid(xs**power * values**2, xs) / norm)
    if power % 2 == 1:
        return 0.0
    h = xs[1] - xs[0]
    deriv = values
    for _ in range(power // 2):
        deriv = np.gradient(deriv, h)
    tail = slice(int(0.95 * xs.size), None)
    k_local = math.sqrt(np.mean(np.gradient(values, h)[tail] ** 2) / max(np.mean(values[tail] ** 2), 1e-300))
    if k_local * h > 2.0 * math.pi / 12.0:
        warnings.warn(
            f"grid step {h:.3g} resolves fewer than 12 points per local wavelength near the cutoff",
            GridResolutionWarning,
            stacklevel=2,
        )
    return float(np.trapezoid(deriv**2, xs) / norm)
