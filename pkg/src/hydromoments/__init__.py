"""Moments, uncertainty relations and entropy bounds of D-dimensional hydrogenic states."""

from .hydrogenic import (
    DerivedParams,
    Evaluation,
    HydrogenicState,
    Method,
    SingularFormulaError,
    ValidityError,
    derive_params,
    energy,
    log_momentum_expectation,
    log_position_expectation,
    momentum_expectation,
    position_expectation,
)
from .specfun import DivergenceError, DomainError, NonTerminatingError

__version__ = "0.1.0"

__all__ = [
    "DerivedParams",
    "DivergenceError",
    "DomainError",
    "Evaluation",
    "HydrogenicState",
    "Method",
    "NonTerminatingError",
    "SingularFormulaError",
    "ValidityError",
    "derive_params",
    "energy",
    "log_momentum_expectation",
    "log_position_expectation",
    "momentum_expectation",
    "position_expectation",
]
