"""Exception types shared across the library."""

from __future__ import annotations


class ErlangSpectralError(Exception):
    """Base class for all library errors."""


class DomainError(ErlangSpectralError, ValueError):
    """An argument lies outside the mathematical domain of the operation."""


class CapabilityError(ErlangSpectralError):
    """The request is valid but outside what the implementation supports."""


class BracketError(ErlangSpectralError):
    """A root search found no sign change in the scanned interval.

    Carries the scanned interval so callers can report a meaningful
    diagnostic instead of silently returning a default.
    """

    def __init__(self, message: str, lo: float, hi: float, n_points: int):
        super().__init__(f"{message} (scanned [{lo:.6g}, {hi:.6g}] with {n_points} points)")
        self.lo = lo
        self.hi = hi
        self.n_points = n_points


class PoleError(ErlangSpectralError, ZeroDivisionError):
    """Evaluation requested at (or too close to) a pole.

    ``location`` is the offending root of the characteristic function.
    """

    def __init__(self, message: str, location: float):
        super().__init__(f"{message} (pole at theta = {location:.12g})")
        self.location = location


class ConvergenceError(ErlangSpectralError):
    """An iterative scheme failed to reach its tolerance."""
