"""Bessel functions of the first and second kind for real order, and Hankel functions.

Three evaluation regimes are used for ``J_nu``/``Y_nu`` with ``nu >= 0``:

* ``x < 2``: the ascending series for ``J``; Temme's series for ``Y_mu``
  (``|mu| <= 1/2``) with the continued fraction for ``J'/J`` and recurrence
  in order for ``Y``.
* ``2 <= x`` and not asymptotic: Steed's method (CF1 + complex CF2) with the
  same backward recurrence for ``J`` and forward recurrence for ``Y``.
* ``x >= max(25, nu**2 / 16)``: Hankel's asymptotic expansion, accepted only
  when no term exceeds 1e3 and the tail drops below double precision.

Negative orders go through the reflection
``J_{-nu} = cos(nu pi) J_nu - sin(nu pi) Y_nu``, which stays well defined
at integer orders where ``J_{-n} = (-1)^n J_n``.
"""
import cmath
import math
import warnings

from ..errors import DomainError, LossOfAccuracyWarning
from .gamma import gamma_complex, loggamma_complex, temme_gammas

MAX_ORDER = 200.0
MAX_ARG = 1.0e4

_EPS = 1.0e-16
_FPMIN = 1.0e-300
_RESCALE = 1.0e250
_MAXIT = 200000
_ASYMPTOTIC_MIN_X = 25.0
_SERIES_MAX_X = 2.0


def _check_args(nu, x):
    if not (x > 0.0) or not math.isfinite(x):
        raise DomainError(f"Bessel argument must be positive and finite, got x={x!r}")
    if x > MAX_ARG:
        raise DomainError(f"Bessel argument x={x:g} exceeds supported range {MAX_ARG:g}")
    if not math.isfinite(nu) or abs(nu) > MAX_ORDER:
        raise DomainError(f"Bessel order nu={nu!r} outside |nu| <= {MAX_ORDER:g}")


def cospi(v):
    """cos(pi v), exact at integers and half-integers."""
    r = math.fmod(abs(v), 2.0)
    if r == 0.0:
        return 1.0
    if r == 1.0:
        return -1.0
    if r == 0.5 or r == 1.5:
        return 0.0
    return math.cos(math.pi * r)


def sinpi(v):
    """sin(pi v), exact at integers and half-integers."""
    s = -1.0 if v < 0 else 1.0
    r = math.fmod(abs(v), 2.0)
    if r == 0.0 or r == 1.0:
        return 0.0
    if r == 0.5:
        return s
    if r == 1.5:
        return -s
    return s * math.sin(math.pi * r)


def _asymptotic_pq(nu, x):
    """Hankel asymptotic P, Q for order nu, or None when not converged."""
    mu = 4.0 * nu * nu
    p = 1.0
    q = 0.0
    term = 1.0
    prev = math.inf
    k = 0
    while True:
        k += 1
        term *= (mu - (2 * k - 1) ** 2) / (k * 8.0 * x)
        size = abs(term)
        if size > 1e3 or (size > prev and (2 * k - 1) ** 2 > mu):
            return None
        if k % 2 == 1:
            q += term if (k // 2) % 2 == 0 else -term
        else:
            p += -term if (k // 2) % 2 == 1 else term
        if size < _EPS * 1e-2 * max(abs(p), 1e-300):
            return p, q
        prev = size
        if k > 1000:
            return None


def _asymptotic_jy(nu, x):
    pq = _asymptotic_pq(nu, x)
    if pq is None:
        return None
    p, q = pq
    c = 0.5 * nu + 0.25
    # cos(x - c pi) and sin(x - c pi) without rounding x - c pi first
    cx, sx = math.cos(x), math.sin(x)
    cc, sc = cospi(c), sinpi(c)
    cw = cx * cc + sx * sc
    sw = sx * cc - cx * sc
    amp = math.sqrt(2.0 / (math.pi * x))
    return amp * (p * cw - q * sw), amp * (p * sw + q * cw)


def _jy_asymptotic_with_derivs(nu, x):
    centre = _asymptotic_jy(nu, x)
    lower = _asymptotic_jy(nu - 1.0, x)
    upper = _asymptotic_jy(nu + 1.0, x)
    if centre is None or lower is None or upper is None:
        return None
    j, y = centre
    jp = 0.5 * (lower[0] - upper[0])
    yp = 0.5 * (lower[1] - upper[1])
    return j, y, jp, yp


def _jy_steed(xnu, x):
    """J, Y, J', Y' for xnu >= 0 by the Temme/Steed continued-fraction method."""
    if x < 2.0:
        nl = int(xnu + 0.5)
    else:
        nl = max(0, int(xnu - x + 1.5))
    xmu = xnu - nl
    xmu2 = xmu * xmu
    xi = 1.0 / x
    xi2 = 2.0 * xi
    w = xi2 / math.pi

    # CF1: J'_nu / J_nu by modified Lentz
    isign = 1
    h = xnu * xi
    if h < _FPMIN:
        h = _FPMIN
    b = xi2 * xnu
    d = 0.0
    c = h
    for _ in range(_MAXIT):
        b += xi2
        d = b - d
        if abs(d) < _FPMIN:
            d = _FPMIN
        c = b - 1.0 / c
        if abs(c) < _FPMIN:
            c = _FPMIN
        d = 1.0 / d
        delta = c * d
        h *= delta
        if d < 0.0:
            isign = -isign
        if abs(delta - 1.0) < _EPS:
            break
    else:
        raise DomainError(f"CF1 failed to converge for nu={xnu}, x={x}")

    # backward recurrence from order xnu down to xmu
    rjl = isign * _FPMIN * 1e100
    rjpl = h * rjl
    rjl1 = rjl
    rjp1 = rjpl
    fact = xnu * xi
    for _ in range(nl, 0, -1):
        rjtemp = fact * rjl + rjpl
        fact -= xi
        rjpl = fact * rjtemp - rjl
        rjl = rjtemp
        if abs(rjl) > _RESCALE:
            rjl /= _RESCALE
            rjpl /= _RESCALE
            rjl1 /= _RESCALE
            rjp1 /= _RESCALE
    if rjl == 0.0:
        rjl = _EPS
    f = rjpl / rjl

    if x < 2.0:
        x2 = 0.5 * x
        pimu = math.pi * xmu
        fact = 1.0 if abs(pimu) < _EPS else pimu / math.sin(pimu)
        d = -math.log(x2)
        e = xmu * d
        fact2 = 1.0 if abs(e) < _EPS else math.sinh(e) / e
        gam1, gam2, gampl, gammi = temme_gammas(xmu)
        ff = 2.0 / math.pi * fact * (gam1 * math.cosh(e) + gam2 * fact2 * d)
        e = math.exp(e)
        p = e / (gampl * math.pi)
        q = 1.0 / (e * math.pi * gammi)
        pimu2 = 0.5 * pimu
        fact3 = 1.0 if abs(pimu2) < _EPS else math.sin(pimu2) / pimu2
        r = math.pi * pimu2 * fact3 * fact3
        c = 1.0
        d = -x2 * x2
        total = ff + r * q
        total1 = p
        for i in range(1, _MAXIT):
            ff = (i * ff + p + q) / (i * i - xmu2)
            c *= d / i
            p /= i - xmu
            q /= i + xmu
            delta = c * (ff + r * q)
            total += delta
            delta1 = c * p - i * delta
            total1 += delta1
            if abs(delta) < (1.0 + abs(total)) * _EPS:
                break
        rymu = -total
        ry1 = -total1 * xi2
        rymup = xmu * xi * rymu - ry1
        rjmu = w / (rymup - f * rymu)
    else:
        # CF2: p + iq = (J' + iY') / (J + iY) by Steed's algorithm
        a = 0.25 - xmu2
        p = -0.5 * xi
        q = 1.0
        br = 2.0 * x
        bi = 2.0
        fact = a * xi / (p * p + q * q)
        cr = br + q * fact
        ci = bi + p * fact
        den = br * br + bi * bi
        dr = br / den
        di = -bi / den
        dlr = cr * dr - ci * di
        dli = cr * di + ci * dr
        temp = p * dlr - q * dli
        q = p * dli + q * dlr
        p = temp
        for i in range(2, _MAXIT):
            a += 2 * (i - 1)
            bi += 2.0
            dr = a * dr + br
            di = a * di + bi
            if abs(dr) + abs(di) < _FPMIN:
                dr = _FPMIN
            fact = a / (cr * cr + ci * ci)
            cr = br + cr * fact
            ci = bi - ci * fact
            if abs(cr) + abs(ci) < _FPMIN:
                cr = _FPMIN
            den = dr * dr + di * di
            dr /= den
            di /= -den
            dlr = cr * dr - ci * di
            dli = cr * di + ci * dr
            temp = p * dlr - q * dli
            q = p * dli + q * dlr
            p = temp
            if abs(dlr - 1.0) + abs(dli) < _EPS:
                break
        gam = (p - f) / q
        rjmu = math.sqrt(w / ((p - f) * gam + q))
        rjmu = math.copysign(rjmu, rjl)
        rymu = rjmu * gam
        rymup = rymu * (p + q / gam)
        ry1 = xmu * xi * rymu - rymup

    fact = rjmu / rjl
    rj = rjl1 * fact
    rjp = rjp1 * fact
    for i in range(1, nl + 1):
        rytemp = (xmu + i) * xi2 * ry1 - rymu
        rymu = ry1
        ry1 = rytemp
    ry = rymu
    ryp = xnu * xi * rymu - ry1
    return rj, ry, rjp, ryp


def _jy_nonneg(nu, x):
    if x >= max(_ASYMPTOTIC_MIN_X, nu * nu / 16.0):
        res = _jy_asymptotic_with_derivs(nu, x)
        if res is not None:
            return res
    j, y, jp, yp = _jy_steed(nu, x)
    if x < _SERIES_MAX_X:
        # the Wronskian normalisation of J cancels when mu < 0 and x is tiny;
        # for x < 2 the series error is absolute at rounding level, so any
        # cancellation is only the function passing through a zero
        j = ascending_series(nu, x, cancellation_budget=math.inf).real
        jp = ascending_series(nu, x, derivative=True, cancellation_budget=math.inf).real
    return j, y, jp, yp


def bessel_jy(nu, x):
    """Return ``(J_nu(x), Y_nu(x), J'_nu(x), Y'_nu(x))`` for real nu, x > 0.

    Derivatives are with respect to x.

    Raises
    ------
    DomainError
        If x <= 0, x > 1e4 or |nu| > 200.
    """
    nu = float(nu)
    x = float(x)
    _check_args(nu, x)
    if nu >= 0.0:
        return _jy_nonneg(nu, x)
    m = -nu
    j, y, jp, yp = _jy_nonneg(m, x)
    c, s = cospi(m), sinpi(m)
    return (
        c * j - s * y,
        s * j + c * y,
        c * jp - s * yp,
        s * jp + c * yp,
    )


def bessel_j(nu, x, derivative=False):
    """J_nu(x) or its x-derivative, for real order and x > 0."""
    j, _, jp, _ = bessel_jy(nu, x)
    return jp if derivative else j


def bessel_y(nu, x, derivative=False):
    """Y_nu(x) or its x-derivative, for real order and x > 0."""
    _, y, _, yp = bessel_jy(nu, x)
    return yp if derivative else y


def hankel(kind, nu, x, derivative=False):
    """Hankel function H^(kind)_nu(x) = J +/- iY (or its x-derivative).

    For real nu and x the two kinds are exact complex conjugates of each
    other as returned here.
    """
    if kind not in (1, 2):
        raise DomainError(f"Hankel kind must be 1 or 2, got {kind!r}")
    j, y, jp, yp = bessel_jy(nu, x)
    if derivative:
        j, y = jp, yp
    return complex(j, y) if kind == 1 else complex(j, -y)


def _first_term(order, half_z):
    """(z/2)^order / Gamma(order + 1), or 0 when order+1 is a pole."""
    s = order + 1.0
    if s.imag == 0.0 and s.real <= 0.0 and s.real == math.floor(s.real):
        return 0.0j
    if s.real >= 0.5:
        return cmath.exp(order * cmath.log(half_z) - loggamma_complex(s))
    return cmath.exp(order * cmath.log(half_z)) / gamma_complex(s)


def ascending_series(order, z, sign=-1, derivative=False, cancellation_budget=1e8):
    """Power series sum_k sign^k (z/2)^(order+2k) / (k! Gamma(order+k+1)).

    ``sign=-1`` gives J_order(z), ``sign=+1`` gives I_order(z), for complex
    order and argument (principal branch of the power). With
    ``derivative=True`` the z-derivative is returned instead.

    A :class:`LossOfAccuracyWarning` is emitted when the largest term
    exceeds the result by more than ``cancellation_budget``.
    """
    order = complex(order)
    z = complex(z)
    if z == 0:
        raise DomainError("ascending series needs z != 0")
    if order.imag == 0.0 and order.real < 0 and order.real == math.floor(order.real):
        n = int(-order.real)
        val = ascending_series(n, z, sign, derivative, cancellation_budget)
        return val * (-1) ** n if sign == -1 else val
    half_z = 0.5 * z
    sq = sign * half_z * half_z
    term = _first_term(order, half_z)
    total = 0.0j
    biggest = 0.0
    k = 0
    while True:
        contrib = term * (order + 2 * k) / z if derivative else term
        total += contrib
        size = abs(contrib)
        biggest = max(biggest, size)
        k += 1
        term *= sq / (k * (order + k))
        if abs(term) <= 1e-17 * abs(total) and k > abs(z) / 2:
            break
        if k > 10000:
            break
    if biggest > cancellation_budget * abs(total):
        warnings.warn(
            f"ascending series lost {math.log10(biggest / max(abs(total), 1e-300)):.1f} "
            f"digits to cancellation (order={order}, z={z})",
            LossOfAccuracyWarning,
            stacklevel=2,
        )
    return total


def bessel_j_series(nu, x, derivative=False):
    """J_nu(x) from the ascending series alone (real nu, x > 0)."""
    _check_args(float(nu), float(x))
    return ascending_series(nu, x, -1, derivative).real
