"""Gamma and reciprocal-Gamma on the real line.

The reciprocal is exposed separately so that the poles of Gamma at
0, -1, -2, ... map to exact zeros of ``rgamma`` instead of overflow;
several characteristic-function identities rely on that behavior.
"""

from __future__ import annotations

import math

_MAX_GAMMA_ARG = 171.61447887182298  # gamma overflows double beyond this


def gamma_fn(x: float) -> float:
    """Gamma(x) for real x; +-inf at the poles, inf on overflow."""
    if math.isnan(x):
        return math.nan
    if x <= 0.0 and x == math.floor(x):
        # Simple pole; return +inf as the marker.
        return math.inf
    if x > _MAX_GAMMA_ARG:
        return math.inf
    return math.gamma(x)


def ln_abs_gamma(x: float) -> float:
    """log|Gamma(x)|, finite except at the poles."""
    if x <= 0.0 and x == math.floor(x):
        return math.inf
    return math.lgamma(x)


def rgamma(x: float) -> float:
    """1/Gamma(x); entire, with exact zeros at x = 0, -1, -2, ...

    1/Gamma grows super-exponentially toward -infinity; values beyond the
    double range saturate to +-inf.
    """
    if math.isnan(x):
        return math.nan
    if x <= 0.0 and x == math.floor(x):
        return 0.0
    if x >= 0.5:
        # exp(-lgamma) underflows gracefully for large x.
        return math.exp(-math.lgamma(x))
    # Reflection: 1/Gamma(x) = sin(pi x) Gamma(1-x) / pi, numerically as
    # sign(sin) * exp(lgamma(1-x) + log|sin(pi x)| - log pi).
    s = math.sin(math.pi * x)
    if s == 0.0:
        return 0.0
    logmag = math.lgamma(1.0 - x) + math.log(abs(s)) - math.log(math.pi)
    if logmag > 709.0:
        return math.copysign(math.inf, s)
    return math.copysign(math.exp(logmag), s)
