"""Complex gamma function (Lanczos, g=7, 9 terms) and 1/Gamma near 1."""
import cmath
import math

from ..errors import PoleError

_G = 7.0
_LANCZOS = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)
_HALF_LOG_2PI = 0.5 * math.log(2.0 * math.pi)

# Taylor coefficients c_k of 1/Gamma(z) = sum c_k z^k, k = 1..28.
_RGAMMA_TAYLOR = (
    1.0,
    0.57721566490153286061,
    -0.65587807152025388108,
    -0.042002635034095235529,
    0.1665386113822914895,
    -0.042197734555544336748,
    -0.0096219715278769735621,
    0.0072189432466630995424,
    -0.0011651675918590651121,
    -0.00021524167411495097282,
    0.00012805028238811618615,
    -0.000020134854780788238656,
    -1.2504934821426706573e-6,
    1.1330272319816958824e-6,
    -2.0563384169776071035e-7,
    6.1160951044814158179e-9,
    5.0020076444692229301e-9,
    -1.1812745704870201446e-9,
    1.0434267116911005105e-10,
    7.782263439905071254e-12,
    -3.6968056186422057082e-12,
    5.100370287454475979e-13,
    -2.0583260535665067832e-14,
    -5.3481225394230179824e-15,
    1.2267786282382607902e-15,
    -1.1812593016974587695e-16,
    1.1866922547516003326e-18,
    1.4123806553180317816e-18,
)


def _check_pole(z):
    if z.imag == 0.0 and z.real <= 0.0 and z.real == math.floor(z.real):
        raise PoleError(f"gamma has a pole at z={z.real:g}")


def loggamma_complex(z):
    """Principal-branch-free log Gamma(z) for Re z >= 0.5.

    Only the real part and the phase modulo 2 pi are meaningful; this is
    used internally to build Gamma(z) without intermediate overflow.
    """
    z = complex(z) - 1.0
    x = _LANCZOS[0]
    for i in range(1, len(_LANCZOS)):
        x += _LANCZOS[i] / (z + i)
    t = z + _G + 0.5
    return _HALF_LOG_2PI + (z + 0.5) * cmath.log(t) - t + cmath.log(x)


def gamma_complex(z):
    """Gamma(z) for complex z, relative accuracy about 1e-13.

    Uses the reflection formula for Re z < 0.5.

    Raises
    ------
    PoleError
        If z is zero or a negative integer.
    """
    z = complex(z)
    _check_pole(z)
    if z.real < 0.5:
        return math.pi / (cmath.sin(math.pi * z) * gamma_complex(1.0 - z))
    return cmath.exp(loggamma_complex(z))


def rgamma_one_plus(mu):
    """1/Gamma(1+mu) for |mu| <= 1/2 by its Taylor series."""
    acc = 0.0
    for c in reversed(_RGAMMA_TAYLOR):
        acc = acc * mu + c
    return acc


def temme_gammas(mu):
    """Return (gam1, gam2, 1/Gamma(1+mu), 1/Gamma(1-mu)) for |mu| <= 1/2.

    gam1 = (1/Gamma(1-mu) - 1/Gamma(1+mu)) / (2 mu) and
    gam2 = (1/Gamma(1-mu) + 1/Gamma(1+mu)) / 2, both free of the
    cancellation a direct evaluation suffers at small mu.
    """
    gam1 = 0.0
    gam2 = 0.0
    # even k: gam1 -= c_k mu^(k-2); odd k: gam2 += c_k mu^(k-1)
    for k in range(len(_RGAMMA_TAYLOR), 0, -1):
        c = _RGAMMA_TAYLOR[k - 1]
        if k % 2 == 0:
            gam1 = gam1 * mu * mu - c
        else:
            gam2 = gam2 * mu * mu + c
    gampl = gam2 - mu * gam1
    gammi = gam2 + mu * gam1
    return gam1, gam2, gampl, gammi
