"""Sign/log-magnitude arithmetic for quantities spanning huge dynamic ranges.

Several internal quantities (parabolic cylinder functions of large index,
the contour functions of the discrete queue) overflow double precision by
hundreds of orders of magnitude while only their signs and relative sizes
matter for root finding.  A value x is represented as ``(sign, log|x|)``
with ``sign in {-1, 0, +1}``; ``log|0| = -inf``.
"""

from __future__ import annotations

import math
from typing import NamedTuple

_NEG_INF = float("-inf")


class LogScaled(NamedTuple):
    sign: int
    logmag: float

    @staticmethod
    def zero() -> "LogScaled":
        return LogScaled(0, _NEG_INF)

    @staticmethod
    def from_float(x: float) -> "LogScaled":
        if x == 0.0:
            return LogScaled.zero()
        return LogScaled(1 if x > 0 else -1, math.log(abs(x)))

    @staticmethod
    def from_parts(mantissa: float, log_scale: float) -> "LogScaled":
        if mantissa == 0.0:
            return LogScaled.zero()
        return LogScaled(1 if mantissa > 0 else -1, math.log(abs(mantissa)) + log_scale)

    def to_float(self) -> float:
        """Collapse to a plain float; overflows to +-inf, underflows to 0."""
        if self.sign == 0:
            return 0.0
        if self.logmag > 709.0:
            return math.inf * self.sign
        if self.logmag < -745.0:
            return 0.0
        return self.sign * math.exp(self.logmag)

    def mantissa_at(self, log_scale: float) -> float:
        """Mantissa m such that the value equals m * exp(log_scale)."""
        if self.sign == 0:
            return 0.0
        return self.sign * math.exp(self.logmag - log_scale)

    def __mul__(self, other: "LogScaled") -> "LogScaled":  # type: ignore[override]
        if self.sign == 0 or other.sign == 0:
            return LogScaled.zero()
        return LogScaled(self.sign * other.sign, self.logmag + other.logmag)

    def __neg__(self) -> "LogScaled":
        return LogScaled(-self.sign, self.logmag)

    def __add__(self, other: "LogScaled") -> "LogScaled":  # type: ignore[override]
        if self.sign == 0:
            return other
        if other.sign == 0:
            return self
        hi, lo = (self, other) if self.logmag >= other.logmag else (other, self)
        # hi.sign * e^hi.logmag * (1 + s * e^(lo.logmag - hi.logmag))
        s = hi.sign * lo.sign
        inner = 1.0 + s * math.exp(lo.logmag - hi.logmag)
        if inner == 0.0:
            return LogScaled.zero()
        return LogScaled(hi.sign if inner > 0 else -hi.sign, hi.logmag + math.log(abs(inner)))

    def scale_by_exp(self, log_factor: float) -> "LogScaled":
        if self.sign == 0:
            return self
        return LogScaled(self.sign, self.logmag + log_factor)
