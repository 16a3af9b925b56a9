"""Exception types raised across the package."""


class RqaoaError(Exception):
    """Base class for errors raised by this package."""


class DimensionError(RqaoaError, ValueError):
    """An assignment or vector does not match the instance size."""


class ArityError(RqaoaError, ValueError):
    """An operation received hyperedges of an unsupported size."""


class ParityError(RqaoaError, ValueError):
    """Coupling parity is undefined for non-unit weights."""


class CapacityError(RqaoaError, ValueError):
    """The requested problem size exceeds an enumeration or memory cap."""


class UnsupportedInstanceError(RqaoaError, ValueError):
    """The instance does not have the structure an operation requires."""


class GenerationError(RqaoaError, RuntimeError):
    """Random instance generation failed after the retry budget."""

    def __init__(self, message, retries):
        super().__init__(f"{message} (after {retries} retries)")
        self.retries = retries


class RoundingError(RqaoaError, RuntimeError):
    """Correlation rounding was asked to pick from an empty table."""
