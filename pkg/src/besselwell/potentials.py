"""The exponential potential family V1..V6, the cubic triple, and energy -> wave-parameter maps.

Units have 2m/hbar^2 = 1, so the Schrodinger equation reads psi'' = (V - E) psi.
"""
import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, RegimeError


class Family(str, enum.Enum):
    V1 = "v1"  # V0 (e^{2|x|/a} - 1), confining well
    V2 = "v2"  # V0 (e^{-2|x|/a} - 1), finite valley
    V3 = "v3"  # V0 (e^{-2x/a} - 1), analytic: V1 on the left, V2 on the right
    V4 = "v4"  # V0 (1 - e^{2|x|/a}), bottomless
    V5 = "v5"  # V0 (1 - e^{-2|x|/a}), confining
    V6 = "v6"  # V0 (1 - e^{-2x/a}), analytic: V4 on the left, V5 on the right
    CUBIC_ABS_NEG = "-|x|^3"
    CUBIC_ABS = "|x|^3"
    CUBIC = "x^3"

    @classmethod
    def parse(cls, text):
        key = text.strip().lower()
        for member in cls:
            if key in (member.value, member.name.lower()):
                return member
        raise ValueError(f"unknown potential family {text!r}")


# families whose closed-form solutions are J_{kappa a} with kappa = sqrt(V0 - E)
WELL_FAMILY = frozenset({Family.V4, Family.V5, Family.V6})
# families whose closed-form solutions are K_{i kappa a} with kappa = sqrt(E + V0)
VALLEY_FAMILY = frozenset({Family.V1, Family.V2, Family.V3})
CUBIC_FAMILY = frozenset({Family.CUBIC_ABS_NEG, Family.CUBIC_ABS, Family.CUBIC})
# potentials with a derivative kink at the origin
NON_ANALYTIC = frozenset({Family.V1, Family.V2, Family.V4, Family.V5})


@dataclass(frozen=True)
class WaveParams:
    kappa: float
    q: float
    nu: float
    z0: float


@dataclass(frozen=True)
class PotentialSpec:
    """One member of the potential family; V0 and a are ignored for the cubic ones."""

    family: Family
    V0: float = 1.0
    a: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "family", Family(self.family))
        if self.family not in CUBIC_FAMILY:
            if not (self.V0 > 0.0 and math.isfinite(self.V0)):
                raise DomainError(f"V0 must be positive, got {self.V0!r}")
            if not (self.a > 0.0 and math.isfinite(self.a)):
                raise DomainError(f"a must be positive, got {self.a!r}")

    def __call__(self, x):
        return evaluate(self, x)

    @property
    def q(self):
        return math.sqrt(self.V0)

    @property
    def symmetric(self):
        return self.family in NON_ANALYTIC or self.family in (Family.CUBIC_ABS, Family.CUBIC_ABS_NEG)


def evaluate(spec, x):
    """Potential V(x); accepts scalars or numpy arrays."""
    x = np.asarray(x, dtype=float)
    f, v0, a = spec.family, spec.V0, spec.a
    if f is Family.V1:
        out = v0 * np.expm1(2.0 * np.abs(x) / a)
    elif f is Family.V2:
        out = v0 * np.expm1(-2.0 * np.abs(x) / a)
    elif f is Family.V3:
        out = v0 * np.expm1(-2.0 * x / a)
    elif f is Family.V4:
        out = -v0 * np.expm1(2.0 * np.abs(x) / a)
    elif f is Family.V5:
        out = -v0 * np.expm1(-2.0 * np.abs(x) / a)
    elif f is Family.V6:
        out = -v0 * np.expm1(-2.0 * x / a)
    elif f is Family.CUBIC_ABS_NEG:
        out = -np.abs(x) ** 3
    elif f is Family.CUBIC_ABS:
        out = np.abs(x) ** 3
    else:
        out = x**3
    return out if out.ndim else float(out)


def wave_params(spec, E):
    """(kappa, q, nu = kappa a, z0 = q a) for energy E.

    Well family (V4, V5, V6): kappa = sqrt(V0 - E), requires E <= V0.
    Valley family (V1, V2, V3): kappa = sqrt(E + V0), requires E >= -V0.
    """
    if spec.family in CUBIC_FAMILY:
        raise DomainError("the cubic potentials have no Bessel wave parameters")
    q = spec.q
    if spec.family in WELL_FAMILY:
        k2 = spec.V0 - E
        if k2 < 0.0:
            raise RegimeError(f"E={E:g} above V0={spec.V0:g}: kappa would be imaginary")
    else:
        k2 = E + spec.V0
        if k2 < 0.0:
            raise RegimeError(f"E={E:g} below -V0={-spec.V0:g}: kappa would be imaginary")
    kappa = math.sqrt(k2)
    return WaveParams(kappa=kappa, q=q, nu=kappa * spec.a, z0=q * spec.a)


def energy_from_order(spec, nu):
    """Inverse of wave_params: the energy at which kappa a equals nu."""
    kappa = nu / spec.a
    if spec.family in WELL_FAMILY:
        return spec.V0 - kappa * kappa
    return kappa * kappa - spec.V0
