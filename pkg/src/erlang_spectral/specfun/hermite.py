"""Probabilists' Hermite polynomials He_n."""

from __future__ import annotations

import math


def hermite_he(n: int, z: float) -> float:
    """He_n(z) with He_0 = 1, He_1(z) = z and leading term z^n.

    Three-term recurrence He_{k+1}(z) = z He_k(z) - k He_{k-1}(z).
    Raises OverflowError when the value exceeds the double range.
    """
    if n < 0 or n != int(n):
        raise ValueError(f"Hermite degree must be a non-negative integer, got {n}")
    if n == 0:
        return 1.0
    prev, cur = 1.0, z
    for k in range(1, n):
        prev, cur = cur, z * cur - k * prev
        if math.isinf(cur):
            raise OverflowError(f"He_{k + 1}({z}) overflows double precision")
    return cur
