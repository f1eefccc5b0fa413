"""Information-theoretic measures of tunneling in one-dimensional square wells.

Exact bound states of a double square well (and the infinite square well for
comparison), two-level superpositions evolving in time, and the Shannon,
Fisher, Renyi and LMC measures of their position and momentum densities.
"""
from .eigensolver import EigenState, IswpState, iswp_state, matching_function, solve_spectrum
from .errors import (
    BoundViolation,
    ConfigError,
    NumericalError,
    ParseError,
    TunnelInfoError,
    ValidationError,
)
from .infomeasures import MeasureRecord, fit_measures, measure_record, measure_series
from .potentials import DEFAULT_CONSTANTS, DswpParams, IswpParams, PhysicalConstants
from .quantum_state import SuperpositionState, bohr_frequency, make_superposition

__version__ = "0.1.0"

__all__ = [
    "BoundViolation", "ConfigError", "DEFAULT_CONSTANTS", "DswpParams", "EigenState",
    "IswpParams", "IswpState", "MeasureRecord", "NumericalError", "ParseError",
    "PhysicalConstants", "SuperpositionState", "TunnelInfoError", "ValidationError",
    "bohr_frequency", "fit_measures", "iswp_state", "make_superposition", "matching_function",
    "measure_record", "measure_series", "solve_spectrum", "__version__",
]
