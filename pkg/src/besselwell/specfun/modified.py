"""Modified Bessel functions of imaginary order.

``K_{i nu}(x)`` is real for real ``nu`` and ``x > 0`` and is computed from

    K_{i nu}(x) = int_0^inf exp(-x cosh t) cos(nu t) dt

by composite Simpson quadrature plus one Richardson step. ``I_{i nu}(x)`` is
complex and comes from its ascending series. A second, independent route to
``K_{i nu}`` goes through the Hankel function at rotated argument,
``K_mu(x) = (i pi / 2) exp(i mu pi / 2) H^(1)_mu(i x)``, with the Hankel
function assembled from ascending series of ``J_{+-mu}``.
"""
import cmath
import math

import numpy as np

from ..errors import DomainError, UnderflowSignal
from .bessel import ascending_series

MAX_IMAG_ORDER = 100.0
ROTATED_MAX_ARG = 25.0

_TAIL_EXPONENT = 45.0
_TINY = np.finfo(float).tiny


def _check(nu, x, max_order=MAX_IMAG_ORDER):
    if not (x > 0.0) or not math.isfinite(x):
        raise DomainError(f"argument must be positive and finite, got x={x!r}")
    if not (0.0 <= nu <= max_order):
        raise DomainError(f"order magnitude nu={nu!r} outside [0, {max_order:g}]")


def _simpson(values, h):
    n = values.size - 1
    return h / 3.0 * (values[0] + values[-1] + 4.0 * values[1:n:2].sum() + 2.0 * values[2:n - 1:2].sum())


def _k_quadrature(x, nu, derivative, hyperbolic):
    """exp(x) * K (or K') by Simpson + Richardson on the cosh representation."""
    # cutoff T: x (cosh T - 1) - |order growth| >= 45, so the tail is below
    # e^-45 relative to the integrand at t = 0
    grow = nu if hyperbolic else 0.0

    def excess(t):
        return x * (math.cosh(t) - 1.0) - grow * t - math.log(max(math.cosh(t), 1.0)) * derivative

    lo, hi = 0.0, 1.0
    while excess(hi) < _TAIL_EXPONENT:
        hi *= 2.0
    for _ in range(60):
        mid = 0.5 * (lo + hi)
        if excess(mid) < _TAIL_EXPONENT:
            lo = mid
        else:
            hi = mid
    cutoff = hi
    # step resolves cos(nu t) and the exp(-x t^2 / 2) core
    h = min(0.1, 1.0 / (4.0 * (1.0 + nu)), 0.5 / math.sqrt(x))
    n = max(2, int(math.ceil(cutoff / h)))
    if n % 2:
        n += 1

    def simpson(npts):
        t = np.linspace(0.0, cutoff, npts + 1)
        weight = np.cosh(nu * t) if hyperbolic else np.cos(nu * t)
        integrand = np.exp(-x * (np.cosh(t) - 1.0)) * weight
        if derivative:
            integrand = -np.cosh(t) * integrand
        return _simpson(integrand, cutoff / npts)

    coarse = simpson(n)
    fine = simpson(2 * n)
    return fine + (fine - coarse) / 15.0


def _scale(x):
    scale = math.exp(-x)
    if scale < _TINY:
        raise UnderflowSignal(f"exp(-x) underflows for x={x:g}")
    return scale


def bessel_k_imag(nu, x, derivative=False):
    """K_{i nu}(x), or its x-derivative, from the integral representation.

    Absolute accuracy is about 1e-12 * exp(-x). For ``nu > x`` the function
    oscillates with amplitude ~ exp(-pi nu / 2), so relative accuracy near
    its zeros degrades accordingly.

    Raises
    ------
    DomainError
        If x <= 0 or nu outside [0, 100].
    UnderflowSignal
        If exp(-x) is below the smallest normal double.
    """
    nu = float(nu)
    x = float(x)
    _check(nu, x)
    scale = _scale(x)
    return scale * _k_quadrature(x, nu, derivative, hyperbolic=False)


def bessel_k_real(nu, x, derivative=False):
    """K_nu(x) for real order, from int_0^inf exp(-x cosh t) cosh(nu t) dt."""
    nu = abs(float(nu))
    x = float(x)
    _check(nu, x, max_order=200.0)
    scale = _scale(x)
    return scale * _k_quadrature(x, nu, derivative, hyperbolic=True)


def bessel_i_imag(nu, x, derivative=False):
    """I_{i nu}(x) (complex), or its x-derivative, from the ascending series.

    The leading term has modulus ``sqrt(sinh(pi nu) / (pi nu))`` as x -> 0.
    """
    nu = float(nu)
    x = float(x)
    _check(abs(nu), x)
    return ascending_series(1j * nu, x, sign=+1, derivative=derivative)


def bessel_i(order, z, derivative=False):
    """I_order(z) for complex order and argument by the ascending series."""
    return ascending_series(order, z, sign=+1, derivative=derivative)


def hankel1_rotated(order, x, derivative=False):
    """H^(1)_order(i x) for x > 0 and non-integer complex order.

    Built as ``(J_{-mu}(w) - exp(-i mu pi) J_mu(w)) / (i sin(mu pi))`` with
    ``w = i x``. With ``derivative=True`` returns d/dx of ``H^(1)_mu(i x)``.
    """
    mu = complex(order)
    if mu.imag == 0.0 and mu.real == round(mu.real):
        raise DomainError("rotated Hankel route needs non-integer order")
    if x > ROTATED_MAX_ARG:
        # the J_{+-mu}(ix) terms grow like e^x while the result decays like e^-x
        raise DomainError(f"rotated Hankel route unusable for x={x:g} > {ROTATED_MAX_ARG:g}")
    w = 1j * float(x)
    jm = ascending_series(-mu, w, sign=-1, derivative=derivative)
    jp = ascending_series(mu, w, sign=-1, derivative=derivative)
    val = (jm - cmath.exp(-1j * math.pi * mu) * jp) / (1j * cmath.sin(math.pi * mu))
    return 1j * val if derivative else val


def k_from_hankel(order, x, derivative=False):
    """K_order(x) via (i pi/2) exp(i order pi/2) H^(1)_order(i x).

    Complex in general; real up to rounding for real order or for purely
    imaginary order.
    """
    mu = complex(order)
    return 0.5j * math.pi * cmath.exp(0.5j * math.pi * mu) * hankel1_rotated(mu, x, derivative)


def bessel_k_imag_via_hankel(nu, x, derivative=False):
    """K_{i nu}(x) through the rotated-argument Hankel identity (real part)."""
    nu = float(nu)
    x = float(x)
    _check(nu, x)
    if nu == 0.0:
        raise DomainError("Hankel route to K_{i nu} is singular at nu = 0")
    return k_from_hankel(1j * nu, x, derivative).real
