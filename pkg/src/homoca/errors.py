"""Error types shared across the package.

InputError covers malformed tables, out-of-range indices and broken
preconditions; BoundError means an exhaustive computation was refused
because the instance is too large for table-based checking.
"""

from __future__ import annotations


class InputError(ValueError):
    """Malformed input: bad shape, bad index, or a violated precondition."""


class BoundError(RuntimeError):
    """Instance too large for the exhaustive table this operation needs."""


class EquivarianceError(ValueError):
    """A global map required to commute with shifts does not.

    Carries a witness dict with the offending group element and
    configuration so callers can report it.
    """

    def __init__(self, message: str, witness: dict):
        super().__init__(message)
        self.witness = witness
