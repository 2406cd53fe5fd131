"""Airy function Ai, its derivative, and their negative real zeros."""

from __future__ import annotations

import math
import threading

import scipy.special as _sp

from ..errors import CapabilityError, DomainError

_ZERO_KIND_AI = "of_Ai"
_ZERO_KIND_AI_PRIME = "of_Ai_prime"
_MAX_ZERO_INDEX = 100_000

_zero_lock = threading.Lock()
_zero_table: dict[str, tuple[float, ...]] = {_ZERO_KIND_AI: (), _ZERO_KIND_AI_PRIME: ()}


def airy_ai(x: float, precision: str = "double") -> tuple[float, float]:
    """(Ai(x), Ai'(x)) for real x."""
    if not math.isfinite(x):
        raise DomainError(f"airy_ai requires finite x, got {x}")
    if precision == "extended":
        import mpmath as mp

        with mp.workdps(30):
            return float(mp.airyai(x)), float(mp.airyai(x, 1))
    ai, aip, _, _ = _sp.airy(x)
    return float(ai), float(aip)


def airy_zero(kind: str, n: int) -> float:
    """nth (0-based) largest negative zero of Ai or of Ai'.

    Zeros are strictly decreasing in n; the two families interlace as
    0 > b_0 > a_0 > b_1 > a_1 > ...  (a = zeros of Ai, b = zeros of Ai').
    """
    if kind not in (_ZERO_KIND_AI, _ZERO_KIND_AI_PRIME):
        raise DomainError(f"unknown Airy zero kind {kind!r}")
    if n < 0 or n != int(n):
        raise DomainError(f"zero index must be a non-negative integer, got {n}")
    if n >= _MAX_ZERO_INDEX:
        raise CapabilityError(f"Airy zero index {n} exceeds supported limit {_MAX_ZERO_INDEX}")
    table = _zero_table[kind]
    if n >= len(table):
        with _zero_lock:
            table = _zero_table[kind]
            if n >= len(table):  # re-check under the lock
                count = max(n + 1, 2 * len(table), 16)
                a, ap, _, _ = _sp.ai_zeros(count)
                _zero_table[_ZERO_KIND_AI] = tuple(float(v) for v in a)
                _zero_table[_ZERO_KIND_AI_PRIME] = tuple(float(v) for v in ap)
            table = _zero_table[kind]
    return table[n]
