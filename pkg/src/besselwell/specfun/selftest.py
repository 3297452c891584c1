"""Identity suite for the special functions; reports the worst deviation per identity."""
import itertools
import math
from dataclasses import dataclass

from .bessel import bessel_j, bessel_y, hankel
from .gamma import gamma_complex
from .modified import bessel_i_imag, bessel_k_imag, bessel_k_imag_via_hankel, bessel_k_real, k_from_hankel

WRONSKIAN_ORDERS = (0.0, 0.5, 1.7, 5.6)
WRONSKIAN_ARGS = (0.5, 2.0, 7.0, 50.0)
FD_STEP = 1e-6


@dataclass(frozen=True)
class IdentityCheck:
    name: str
    max_deviation: float
    tolerance: float

    @property
    def passed(self):
        return self.max_deviation <= self.tolerance


def hankel_wronskian_deviation(nu, x):
    """|H1 H2' - H2 H1' + 4i/(pi x)|."""
    h1, h2 = hankel(1, nu, x), hankel(2, nu, x)
    d1, d2 = hankel(1, nu, x, True), hankel(2, nu, x, True)
    return abs(h1 * d2 - h2 * d1 + 4j / (math.pi * x))


def _wronskian():
    worst = max(hankel_wronskian_deviation(nu, x) for nu, x in itertools.product(WRONSKIAN_ORDERS, WRONSKIAN_ARGS))
    return IdentityCheck("hankel_wronskian", worst, 1e-10)


def _conjugation():
    worst = 0.0
    for nu, x in itertools.product(WRONSKIAN_ORDERS + (2.7,), WRONSKIAN_ARGS + (5.0,)):
        for deriv in (False, True):
            worst = max(worst, abs(hankel(2, nu, x, deriv) - hankel(1, nu, x, deriv).conjugate()))
    return IdentityCheck("hankel_conjugation", worst, 0.0)


def _small_z():
    z = 1e-3
    worst = max(abs(bessel_j(nu, z) * math.gamma(nu + 1) / (0.5 * z) ** nu - 1.0) for nu in (0.3, 2.5))
    return IdentityCheck("small_z_law", worst, 1e-6)


def _fd_relative(f, x, exact):
    fd = (f(x + FD_STEP) - f(x - FD_STEP)) / (2 * FD_STEP)
    return abs(fd - exact) / max(abs(exact), abs(f(x)))


def _derivatives():
    worst = 0.0
    for nu, x in [(0.0, 1.3), (1.7, 2.2), (5.6026, 7.07), (-2.3, 4.1), (3.0, 60.0)]:
        worst = max(worst, _fd_relative(lambda t: bessel_j(nu, t), x, bessel_j(nu, x, True)))
        worst = max(worst, _fd_relative(lambda t: bessel_y(nu, t), x, bessel_y(nu, x, True)))
        for kind in (1, 2):
            worst = max(worst, _fd_relative(lambda t: hankel(kind, nu, t), x, hankel(kind, nu, x, True)))
    for nu, x in [(0.0, 1.0), (3.386, 2.236), (4.7473, 2.236), (1.0, 0.3)]:
        worst = max(worst, _fd_relative(lambda t: bessel_k_imag(nu, t), x, bessel_k_imag(nu, x, True)))
        worst = max(worst, _fd_relative(lambda t: bessel_i_imag(nu, t), x, bessel_i_imag(nu, x, True)))
    for nu, x in [(0.3, 0.7), (2.5, 3.0)]:
        worst = max(worst, _fd_relative(lambda t: bessel_k_real(nu, t), x, bessel_k_real(nu, x, True)))
    return IdentityCheck("derivative_vs_finite_difference", worst, 1e-6)


def _gamma_modulus():
    y = 1.5
    lhs = abs(gamma_complex(1 + 1j * y)) ** 2
    rhs = math.pi * y / math.sinh(math.pi * y)
    return IdentityCheck("gamma_modulus_reflection", abs(lhs / rhs - 1.0), 1e-12)


def _k_hankel():
    worst = 0.0
    for nu, x in itertools.product((0.3, 1.7, 2.5), (0.5, 1.0, 2.0, 5.0)):
        worst = max(worst, abs(bessel_k_real(nu, x) - k_from_hankel(nu, x)))
    for nu, x in itertools.product((1.0, 3.386, 4.7473), (1.0, 2.236)):
        worst = max(worst, abs(bessel_k_imag(nu, x) - bessel_k_imag_via_hankel(nu, x)))
        worst = max(worst, abs(bessel_k_imag(nu, x, True) - bessel_k_imag_via_hankel(nu, x, True)))
    return IdentityCheck("k_hankel_identity", worst, 1e-9)


def run_identity_suite():
    """Run every special-function identity and return a list of IdentityCheck."""
    return [_wronskian(), _conjugation(), _small_z(), _derivatives(), _gamma_modulus(), _k_hankel()]

