"""Certified upper bounds for Sobolev embedding constants on domains with
minimally smooth boundary, built on outward-rounded interval arithmetic."""

__version__ = "0.1.0"

from .errors import ContractError, DomainError, MaxRefinementError, SobocertError, UsageError
from .interval import Interval, const_e, const_pi

__all__ = [
    "__version__",
    "Interval",
    "const_pi",
    "const_e",
    "SobocertError",
    "DomainError",
    "ContractError",
    "MaxRefinementError",
    "UsageError",
]
