"""Exception hierarchy shared by every radinv module."""

from __future__ import annotations

from typing import Any, Dict, Mapping


class RadinvError(Exception):
    """Base class for all radinv errors."""


class InputError(RadinvError, ValueError):
    """Malformed or inconsistent input (shapes, ring spaces, witnesses)."""


class NonexistenceError(RadinvError):
    """A requested inverse or decomposition provably does not exist.

    Args:
        reason: Short human readable explanation.
        residual: The nonzero quantity that certifies the negative verdict, if any.
        details: Extra diagnostic values (ranks, indices, ...).
    """

    def __init__(self, reason: str, residual: Any = None, details: Mapping[str, Any] | None = None) -> None:
        super().__init__(reason)
        self.reason = reason
        self.residual = residual
        self.details: Dict[str, Any] = dict(details or {})


class NonNilpotentError(RadinvError, ArithmeticError):
    """An element expected to be nilpotent did not vanish within the bound."""


class BudgetError(RadinvError):
    """An enumeration exceeded the configured budget."""


class EquivalenceError(RadinvError, AssertionError):
    """Conditions that must agree (or two computation paths) disagreed."""
