"""Numerical verification of integral-table entries involving complete elliptic integrals."""

from .catalog import list_entries, verify_all, verify_entry
from .elliptic import ellip_e, ellip_k, ellip_pair
from .errors import (
    ConvergenceError,
    DivergenceError,
    DomainError,
    PoleError,
    ToleranceNotMet,
    UnboundedKernelError,
)

__version__ = "0.1.0"

__all__ = [
    "list_entries",
    "verify_all",
    "verify_entry",
    "ellip_k",
    "ellip_e",
    "ellip_pair",
    "ConvergenceError",
    "DivergenceError",
    "DomainError",
    "PoleError",
    "ToleranceNotMet",
    "UnboundedKernelError",
]
