"""Exception types shared across the package."""

from __future__ import annotations


class InvalidOrderError(ValueError):
    """Raised when an operation requires a valid order but validation fails."""

    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("; ".join(f"{v.code}: {v.detail}" for v in self.violations))


class InvalidQuiverError(ValueError):
    """Raised on malformed valued quivers (bad valuations, parallel arrows)."""


class NotFiniteTypeError(RuntimeError):
    """Raised when a root closure leaves the finite-type regime."""


class NotSemisimpleError(RuntimeError):
    """Raised when a Wedderburn decomposition is requested but the colimit
    endomorphism algebra is not semisimple."""

    def __init__(self, witness):
        self.witness = witness
        super().__init__(f"stable endomorphism algebra is not semisimple: {witness}")


class InternalInvariantError(RuntimeError):
    """An internal consistency check failed; this always indicates a bug."""
