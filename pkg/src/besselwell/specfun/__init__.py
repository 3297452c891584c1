"""Special functions: Bessel/Hankel of real order, imaginary-order K and I, complex gamma."""
from .bessel import (
    ascending_series,
    bessel_j,
    bessel_j_series,
    bessel_jy,
    bessel_y,
    cospi,
    hankel,
    sinpi,
)
from .gamma import gamma_complex
from .modified import (
    bessel_i,
    bessel_i_imag,
    bessel_k_imag,
    bessel_k_imag_via_hankel,
    bessel_k_real,
    hankel1_rotated,
    k_from_hankel,
)
from .selftest import run_identity_suite

__all__ = [
    "ascending_series",
    "bessel_i",
    "bessel_i_imag",
    "bessel_j",
    "bessel_j_series",
    "bessel_jy",
    "bessel_k_imag",
    "bessel_k_imag_via_hankel",
    "bessel_k_real",
    "bessel_y",
    "cospi",
    "gamma_complex",
    "hankel",
    "hankel1_rotated",
    "k_from_hankel",
    "run_identity_suite",
    "sinpi",
]
