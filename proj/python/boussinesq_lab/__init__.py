"""Spectral laboratory for the (abcd)-Boussinesq system.

Thin bindings over the C++ core: dispersion symbols and propagators, the
norm-inflation sweeps for the second Picard iterate, the lemma and geometry
samplers, Schur sums, energy and Picard-order runs, and the batch runner
used by the ``boussinesq_lab`` executable (``run_cli``).
"""

from ._core import (
    AbcdParams,
    AliasingError,
    BlowUpError,
    BoussinesqError,
    ConfigError,
    DomainError,
    GridError,
    QuadratureError,
    RegimeError,
    critical_regularity,
    diagonalization_check,
    dispersion,
    energy_series,
    geometry_check,
    h,
    inflation_sweep,
    lemma_check,
    picard_defect,
    predicted_exponent,
    propagator_1d,
    propagator_2d,
    regimes,
    run_cli,
    schur_sum,
    semigroup_checks,
    sigma,
    time_scale,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
