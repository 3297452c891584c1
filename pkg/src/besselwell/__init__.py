"""Exact spectra, wavefunctions and scattering for exponential wells and valleys.

Units have 2m/hbar^2 = 1, so the Schrodinger equation is psi'' = (V - E) psi.
"""
from .errors import (
    BesselWellError,
    DomainError,
    IncompatibleLevelError,
    NoSignChangeError,
    OverflowSignal,
    PoleError,
    RegimeError,
    ResolutionError,
    ScanExhaustedError,
    UnderflowSignal,
)
from .potentials import Family, PotentialSpec, WaveParams, evaluate, wave_params
from .spectra import (
    Condition,
    EnergyLevel,
    Parity,
    WavefunctionGrid,
    nonphysical_states,
    special_states_valley_family,
    special_states_well_family,
    wavefunction,
)

__version__ = "0.1.0"
