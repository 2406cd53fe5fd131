"""Small-eta asymptotics of the spectral gap: five regimes in beta.

For eta -> 0 the gap behaves very differently depending on where beta sits
relative to 0 and to beta_star, the smallest positive root of
D'_{beta^2/4}(-beta) = 0:

    beta < 0            r ~ eta + exponentially small correction
    beta = gamma*sqrt(eta)   r ~ eta * R(gamma)
    0 < beta < beta_star     r ~ beta^2/4 + Airy-zero corrections
    beta ~ beta_star         r ~ beta^2/4 - Airy/Robin-eigenvalue shift
    beta > beta_star         r ~ r0(beta) + A(beta) * eta

The regime boundary multipliers (the 3 in 3*sqrt(eta) and 3*eta^(1/3))
are tunable constants chosen so the reference tables stay in-regime.

Note on the near-beta_star estimate: the transition-regime derivation
scales the Airy shift by (beta_star/2)^{2/3}, but every published
reference value for this estimator was generated with exponent 1/3.
This module reproduces the published estimator (exponent 1/3); see the
regression tests pinning the reference values.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
import scipy.special as _ssp

from .characteristic import ModelParams
from .errors import BracketError, DomainError
from .specfun import airy_ai, airy_zero
from .specfun.pcf import pcf_batch_pair, pcf_d, pcf_d_dz, pcf_d_dz_dp, pcf_d_dp

REGIME_NEG_BETA = "NegBeta"
REGIME_SMALL_BETA = "SmallBeta"
REGIME_MID_BETA = "MidBeta"
REGIME_NEAR_BETA_STAR = "NearBetaStar"
REGIME_LARGE_BETA = "LargeBeta"

SMALL_BETA_MULTIPLIER = 3.0    # |beta| < 3 sqrt(eta)   -> SmallBeta
NEAR_STAR_MULTIPLIER = 3.0     # |beta - beta_star| < 3 eta^(1/3) -> NearBetaStar
_ROOT_GUARD = 1e-6


@dataclass(frozen=True)
class RegimeEstimate:
    """Approximate gap as a sum of named additive terms."""

    regime: str
    value: float
    terms: tuple[tuple[str, float], ...]
    validity_note: str

    def __post_init__(self) -> None:
        total = sum(v for _, v in self.terms)
        if not math.isclose(total, self.value, rel_tol=1e-12, abs_tol=1e-300):
            raise DomainError("estimate value must equal the sum of its terms")


@dataclass(frozen=True)
class BranchPoint:
    """A solved auxiliary root: kind in {r0, R_of_gamma, chi_of_W}."""

    kind: str
    parameter: float
    root: float


# ---------------------------------------------------------------------------
# auxiliary roots and constants
# ---------------------------------------------------------------------------

def _vtilde(p: float, beta: float) -> float:
    """D'_p(-beta) - sqrt(beta^2/4 - p) D_p(-beta); zero at p = r0(beta)."""
    rad = beta * beta / 4.0 - p
    if rad < 0.0:
        raise DomainError(f"p={p} beyond the parabola p = beta^2/4")
    return pcf_d_dz(p, -beta) - math.sqrt(rad) * pcf_d(p, -beta)


@lru_cache(maxsize=1)
def beta_star() -> float:
    """Smallest positive root of D'_{beta^2/4}(-beta) = 0 (~1.85722)."""

    def g(b: float) -> float:
        return pcf_d_dz(b * b / 4.0, -b)

    lo, hi = 1.5, 2.2
    flo = g(lo)
    if flo * g(hi) > 0:
        raise BracketError("no sign change for the beta_star bracket", lo, hi, 2)
    for _ in range(80):
        mid = 0.5 * (lo + hi)
        if g(mid) * flo > 0:
            lo = mid
        else:
            hi = mid
        if hi - lo < 1e-13:
            break
    return 0.5 * (lo + hi)


def r0_of_beta(beta: float) -> float | None:
    """Minimal positive p with D'_p(-beta) = sqrt(beta^2/4 - p) D_p(-beta).

    Returns None for beta below beta_star, where no positive solution
    exists.  This is the zero-abandonment limit of the gap for large beta.
    """
    bs = beta_star()
    if beta < bs:
        return None
    top = beta * beta / 4.0
    if beta == bs:
        return top
    n = 4000
    # denser near the parabola where the square root vanishes steeply
    u = np.linspace(0.0, 1.0, n)
    grid = _ROOT_GUARD + (top - _ROOT_GUARD) * (1.0 - (1.0 - u) ** 2)
    vals = np.array([_vtilde(float(p), beta) for p in grid])
    sign = np.sign(vals)
    flips = np.nonzero(sign[:-1] * sign[1:] < 0)[0]
    if flips.size == 0:
        raise BracketError("no root of the zero-abandonment branch found",
                           _ROOT_GUARD, top, n)
    i = int(flips[0])
    lo, hi = float(grid[i]), float(grid[i + 1])
    s_lo = float(sign[i])
    for _ in range(100):
        mid = 0.5 * (lo + hi)
        if _vtilde(mid, beta) * s_lo > 0:
            lo = mid
        else:
            hi = mid
        if hi - lo < 1e-13:
            break
    return 0.5 * (lo + hi)


def _vtilde_dp(p: float, beta: float) -> float:
    """d/dp of the zero-abandonment branch function at fixed beta."""
    rad = beta * beta / 4.0 - p
    sq = math.sqrt(rad)
    return (pcf_d_dz_dp(p, -beta)
            + pcf_d(p, -beta) / (2.0 * sq)
            - sq * pcf_d_dp(p, -beta))


def correction_A(beta: float) -> float:
    """First-order abandonment correction to r0(beta); strictly positive.

    A = (beta - sqrt(beta^2 - 4 r0)) / (2 (beta^2 - 4 r0))
        * D_{r0}(-beta) / (d vtilde / dp at r0).
    Diverges as beta decreases to beta_star.
    """
    bs = beta_star()
    if beta <= bs:
        raise DomainError(
            f"correction term is defined for beta > beta_star ({bs:.5f}); "
            f"it develops a singularity at beta_star")
    r0 = r0_of_beta(beta)
    assert r0 is not None
    disc = beta * beta - 4.0 * r0
    a = 0.5 * (beta - math.sqrt(disc)) / disc * pcf_d(r0, -beta) / _vtilde_dp(r0, beta)
    return a


def R_of_gamma(gamma: float) -> float:
    """Minimal positive eigenvalue R(gamma) of the reflecting-boundary case.

    Solves D_{R-1}(gamma) = 0, which shares its nonzero root set with
    gamma D_R(gamma) = D_{1+R}(gamma) and is better conditioned near R=0.
    """
    if not math.isfinite(gamma):
        raise DomainError(f"gamma must be finite, got {gamma}")
    hi = gamma * gamma / 4.0 + 10.0
    n = max(int(hi / 0.005), 400)
    grid = np.linspace(_ROOT_GUARD, hi, n)
    sv, _, _, _ = pcf_batch_pair(grid - 1.0, gamma)
    flips = np.nonzero(sv[:-1] * sv[1:] < 0)[0]
    if flips.size == 0:
        raise BracketError("no root for R(gamma)", _ROOT_GUARD, hi, n)
    i = int(flips[0])
    lo, hi_c = float(grid[i]), float(grid[i + 1])
    s_lo = int(sv[i])
    for _ in range(100):
        mid = 0.5 * (lo + hi_c)
        s = pcf_d(mid - 1.0, gamma)
        if (s > 0) == (s_lo > 0):
            lo = mid
        else:
            hi_c = mid
        if hi_c - lo < 1e-12:
            break
    return 0.5 * (lo + hi_c)


@lru_cache(maxsize=1)
def L_constant() -> float:
    """Slope constant of the near-beta_star transition (~2.73875).

    L = (d/dbeta D'_{beta^2/4}(-beta)) / D_{beta^2/4}(-beta) at beta_star,
    with the beta-derivative taken analytically:
    d/dbeta g(beta) = (beta/2) d2D/dpdz + D/2 evaluated at p = beta^2/4,
    z = -beta (the ODE turns D'' into -D/2 on the parabola).
    """
    bs = beta_star()
    p = bs * bs / 4.0
    d_val = pcf_d(p, -bs)
    dg = 0.5 * bs * pcf_d_dz_dp(p, -bs) + 0.5 * d_val
    return dg / d_val


def chi_of_W(w_arg: float) -> float:
    """Maximal solution of Ai'(chi) + (2/beta_star)^(1/3) L W Ai(chi) = 0.

    Bracketing uses the interlacing 0 > b0 > a0 of the Airy and Airy-prime
    zeros: the maximal branch lies in (a0, b0) for W < 0, at b0 for W = 0,
    and in (b0, +inf) for W > 0 (chi ~ w^2 as W -> +inf).
    """
    if not math.isfinite(w_arg):
        raise DomainError(f"W must be finite, got {w_arg}")
    coeff = (2.0 / beta_star()) ** (1.0 / 3.0) * L_constant() * w_arg
    b0 = airy_zero("of_Ai_prime", 0)
    if coeff == 0.0:
        return b0
    a0 = airy_zero("of_Ai", 0)

    def h(x: float) -> float:
        ai, aip = airy_ai(x)
        return aip + coeff * ai

    if coeff > 0.0:
        lo, hi = b0, coeff * coeff + 2.0
        # h(b0) = coeff*Ai(b0) > 0; h -> 0^- beyond chi ~ coeff^2
        while h(hi) > 0.0:
            hi = 2.0 * hi + 1.0
            if hi > 1e8:
                raise BracketError("no upper bracket for the Robin-Airy root",
                                   lo, hi, 2)
    else:
        lo, hi = a0, b0  # h(a0) = Ai'(a0) > 0, h(b0) = coeff*Ai(b0) < 0
    s_lo = h(lo)
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if h(mid) * s_lo > 0:
            lo = mid
        else:
            hi = mid
        if hi - lo < 1e-13:
            break
    return 0.5 * (lo + hi)


# ---------------------------------------------------------------------------
# the five regime estimates
# ---------------------------------------------------------------------------

def gap_neg_beta(params: ModelParams) -> RegimeEstimate:
    """r ~ eta - (beta sqrt(eta)/sqrt(2 pi)) e^{-beta^2/(2 eta)} [1 + beta R],
    with R the scaled Gaussian tail: e^{beta^2/2} Int_{-inf}^beta e^{-u^2/2} du.
    """
    beta, eta = params.beta, params.eta
    if beta >= 0.0:
        raise DomainError(f"negative-beta estimate requires beta < 0, got {beta}")
    note = ""
    if eta > 0.5:
        note = "eta > 0.5: correction term is outside its small-eta regime"
    # e^{beta^2/2} Int_{-inf}^{beta} e^{-u^2/2} du  =  sqrt(pi/2) erfcx(-beta/sqrt(2))
    tail = math.sqrt(math.pi / 2.0) * _ssp.erfcx(-beta / math.sqrt(2.0))
    corr = (-beta * math.sqrt(eta) / math.sqrt(2.0 * math.pi)
            * math.exp(-beta * beta / (2.0 * eta)) * (1.0 + beta * tail))
    return RegimeEstimate(
        regime=REGIME_NEG_BETA,
        value=eta + corr,
        terms=(("eta", eta), ("exponential_correction", corr)),
        validity_note=note,
    )


def gap_small_beta(params: ModelParams) -> RegimeEstimate:
    """r ~ eta R(gamma) on the balanced scale gamma = beta / sqrt(eta)."""
    beta, eta = params.beta, params.eta
    gamma = beta / math.sqrt(eta)
    note = ""
    if abs(gamma) > SMALL_BETA_MULTIPLIER:
        note = f"|gamma| = {abs(gamma):.3g} > {SMALL_BETA_MULTIPLIER}: outside the balanced regime"
    val = eta * R_of_gamma(gamma)
    return RegimeEstimate(
        regime=REGIME_SMALL_BETA,
        value=val,
        terms=(("eta_R_gamma", val),),
        validity_note=note,
    )


def gap_mid_beta(params: ModelParams) -> RegimeEstimate:
    """r ~ beta^2/4 + eta^(2/3) |a0| (beta/2)^(2/3) for 0 < beta < beta_star.

    This is the published two-term estimator; every reference value for
    this regime was generated without an O(eta) term.  (The O(eta)
    correction derived from the turning-point expansion of the
    characteristic equation is (eta/2)(beta D/D' - 1) with the ratio at
    p = beta^2/4, z = -beta; it is recorded in the validity note since
    the published sources disagree on it.)
    """
    beta, eta = params.beta, params.eta
    bs = beta_star()
    if not (0.0 < beta < bs):
        raise DomainError(f"mid-range estimate requires 0 < beta < beta_star, got {beta}")
    a0 = abs(airy_zero("of_Ai", 0))
    p = beta * beta / 4.0
    lead = p
    airy_shift = math.pow(eta, 2.0 / 3.0) * a0 * math.pow(0.5 * beta, 2.0 / 3.0)
    ratio = pcf_d(p, -beta) / pcf_d_dz(p, -beta)
    eta_coef = 0.5 * (beta * ratio - 1.0)
    note = f"omitted O(eta) coefficient ~ {eta_coef:.4g}"
    if beta < SMALL_BETA_MULTIPLIER * math.sqrt(eta):
        note += "; overlaps the balanced regime"
    elif bs - beta < NEAR_STAR_MULTIPLIER * math.pow(eta, 1.0 / 3.0):
        note += "; close to beta_star where the expansion degrades"
    return RegimeEstimate(
        regime=REGIME_MID_BETA,
        value=lead + airy_shift,
        terms=(("quarter_beta_sq", lead), ("airy_shift", airy_shift)),
        validity_note=note,
    )


def gap_near_beta_star(params: ModelParams) -> RegimeEstimate:
    """r ~ beta^2/4 - eta^(2/3) (beta_star/2)^(1/3) chi(W), W = (beta-beta_star)/eta^(1/3).

    Exponent 1/3 on (beta_star/2) reproduces the published reference values
    for this estimator; see the module docstring.
    """
    beta, eta = params.beta, params.eta
    bs = beta_star()
    w_arg = (beta - bs) / math.pow(eta, 1.0 / 3.0)
    note = ""
    if abs(w_arg) > NEAR_STAR_MULTIPLIER:
        note = f"|W| = {abs(w_arg):.3g} > {NEAR_STAR_MULTIPLIER}: outside the transition regime"
    lead = beta * beta / 4.0
    shift = -math.pow(eta, 2.0 / 3.0) * math.pow(0.5 * bs, 1.0 / 3.0) * chi_of_W(w_arg)
    return RegimeEstimate(
        regime=REGIME_NEAR_BETA_STAR,
        value=lead + shift,
        terms=(("quarter_beta_sq", lead), ("airy_robin_shift", shift)),
        validity_note=note,
    )


def gap_large_beta(params: ModelParams) -> RegimeEstimate:
    """r ~ r0(beta) + A(beta) eta beyond beta_star."""
    beta, eta = params.beta, params.eta
    if beta <= beta_star():
        raise DomainError(f"large-beta estimate requires beta > beta_star, got {beta}")
    r0 = r0_of_beta(beta)
    assert r0 is not None
    linear = correction_A(beta) * eta
    note = ""
    if beta - beta_star() < NEAR_STAR_MULTIPLIER * math.pow(eta, 1.0 / 3.0):
        note = "close to beta_star where the linear coefficient diverges"
    return RegimeEstimate(
        regime=REGIME_LARGE_BETA,
        value=r0 + linear,
        terms=(("r0", r0), ("linear_in_eta", linear)),
        validity_note=note,
    )


def regime_select(params: ModelParams) -> RegimeEstimate:
    """Dispatch to the regime estimate matching (beta, eta)."""
    beta, eta = params.beta, params.eta
    if eta <= 0:
        raise DomainError(f"eta must be positive, got {eta}")
    bs = beta_star()
    sqrt_eta = math.sqrt(eta)
    cbrt_eta = math.pow(eta, 1.0 / 3.0)
    if beta <= -SMALL_BETA_MULTIPLIER * sqrt_eta:
        return gap_neg_beta(params)
    if abs(beta) < SMALL_BETA_MULTIPLIER * sqrt_eta:
        return gap_small_beta(params)
    if abs(beta - bs) < NEAR_STAR_MULTIPLIER * cbrt_eta:
        return gap_near_beta_star(params)
    if beta < bs:
        return gap_mid_beta(params)
    return gap_large_beta(params)
