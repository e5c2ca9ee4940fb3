"""Bound states of the N-dimensional Schrodinger equation with a Mie-type
potential: closed-form spectrum, eigenfunctions and a finite-difference
cross-check."""

from .core import (
    DimensionlessModel,
    PotentialSpec,
    QuantumState,
    UnitSystem,
    harmonic_params,
    potential_general,
    potential_special,
    quadratic_expansion,
    reduce,
)
from .errors import (
    ConfigurationError,
    MiepotError,
    NoBoundStateError,
    OracleError,
    ParameterDomainError,
    PoleError,
    SeriesRangeError,
    UnsupportedOrderError,
)
from .oracle import Grid, OracleResult, richardson, solve_fd, solve_general_mie
from .spectrum import (
    BoundLevel,
    ExpansionTerms,
    bound_energy,
    bound_energy_generalized,
    coulomb_check,
    expand_energy,
    exponent_q,
    positive_energy,
    spectroscopic_energy,
)
from .wavefunction import (
    LaguerreParams,
    RadialFunction,
    kummer_series,
    laguerre,
    normalization,
    radial_bound,
    radial_continuum,
    series_coefficients,
)

__version__ = "0.1.0"
