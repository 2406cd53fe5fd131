"""Time-dependent behavior of the hybrid OU diffusion.

Pieces: the stationary density (piecewise Gaussian), the Laplace transform
over time of the transient density started from a point mass at x0 (three
regions, built from the characteristic functions V and M), the spectral
expansion of the density, the orthonormal eigenfunctions, and the three
limiting reductions (no abandonment, balanced abandonment, reflecting
limit).

Starting points x0 > 0 are handled through the scaling relation

    p(x, t; x0; beta, eta) = sqrt(eta) p(-x sqrt(eta), t eta; -x0 sqrt(eta);
                                       -beta/sqrt(eta), 1/eta),

so only the x0 <= 0 formulas are coded.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Callable

import numpy as np
import scipy.integrate as _sint
import scipy.special as _ssp

from .characteristic import EigenSet, ModelParams, eigenvalues, _v_scaled, _m_scaled
from .errors import DomainError, PoleError
from .logscaled import LogScaled
from .specfun.gammafn import gamma_fn
from .specfun.pcf import pcf_d, pcf_d_complex_index, pcf_d_dz, pcf_pair_scaled

_LOG_SQRT_2PI = 0.9189385332046727
SMALL_T_WARNING = 0.05
MAX_SPECTRAL_TERMS = 200
_TAIL_STOP = 1e-12
# relative cancellation in V below which an evaluation counts as "at a pole"
_POLE_CANCEL = 1e-11


# ---------------------------------------------------------------------------
# stationary density
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SteadyDensity:
    """Stationary density C e^{-eta x^2/2 - beta x} (x>0) / C e^{-x^2/2 - beta x} (x<0).

    The normalizer is carried in log form; ``c`` is the density value at 0.
    """

    params: ModelParams
    log_c: float

    @property
    def c(self) -> float:
        return math.exp(self.log_c)

    def __call__(self, x: float) -> float:
        beta, eta = self.params.beta, self.params.eta
        if x >= 0.0:
            expo = -0.5 * eta * x * x - beta * x
        else:
            expo = -0.5 * x * x - beta * x
        return math.exp(self.log_c + expo)

    def relaxation_time(self) -> float:
        from .characteristic import spectral_gap

        return 1.0 / spectral_gap(self.params).r


def steady_state(params: ModelParams) -> SteadyDensity:
    beta, eta = params.beta, params.eta
    # Int_0^inf e^{-eta x^2/2 - beta x} dx  = sqrt(2 pi/eta) e^{beta^2/(2 eta)} Phi(-beta/sqrt(eta))
    # Int_{-inf}^0 e^{-x^2/2 - beta x} dx   = sqrt(2 pi) e^{beta^2/2} Phi(beta)
    half = 0.5 * math.log(2.0 * math.pi)
    log_pos = -0.5 * math.log(eta) + beta * beta / (2.0 * eta) + half \
        + _ssp.log_ndtr(-beta / math.sqrt(eta))
    log_neg = beta * beta / 2.0 + half + _ssp.log_ndtr(beta)
    return SteadyDensity(params, -float(np.logaddexp(log_pos, log_neg)))


def steady_density(x: float, params: ModelParams) -> float:
    """Stationary density at x."""
    return steady_state(params)(x)


# ---------------------------------------------------------------------------
# Laplace transform of the transient density
# ---------------------------------------------------------------------------

def _check_pole(v: LogScaled, t1: LogScaled, t2: LogScaled, theta: float) -> None:
    scale = max(t1.logmag, t2.logmag)
    if v.sign == 0 or (math.isfinite(scale) and v.logmag < scale + math.log(_POLE_CANCEL)):
        raise PoleError("transform evaluated at a root of the characteristic function",
                        theta)


def _v_m_with_guard(theta: float, beta: float, eta: float) -> tuple[LogScaled, LogScaled]:
    sq = math.sqrt(eta)
    da, dpa = pcf_pair_scaled(-theta, -beta)
    db, dpb = pcf_pair_scaled(-theta / eta, beta / sq)
    t1 = -(LogScaled.from_float(sq) * da * dpb)
    t2 = -(dpa * db)
    v = t1 + t2
    _check_pole(v, t1, t2, theta)
    m = _m_scaled(theta, beta, eta)
    return v, m


def laplace_density(x: float, theta: float, x0: float, params: ModelParams,
                    allow_continuation: bool = False) -> float:
    """Laplace transform (over time) of the transient density at x.

    Valid for theta > 0; pass ``allow_continuation=True`` to evaluate the
    analytic continuation at real theta <= 0 (poles of the characteristic
    function raise PoleError).
    """
    if not (math.isfinite(x) and math.isfinite(theta) and math.isfinite(x0)):
        raise DomainError("non-finite arguments")
    if theta <= 0.0 and not allow_continuation:
        raise DomainError(f"transform requires theta > 0 (got {theta}); "
                          "pass allow_continuation=True for theta <= 0")
    beta, eta = params.beta, params.eta
    if x0 > 0.0:
        reflected = ModelParams(-beta / math.sqrt(eta), 1.0 / eta)
        return laplace_density(-x * math.sqrt(eta), theta / eta,
                               -x0 * math.sqrt(eta), reflected,
                               allow_continuation) / math.sqrt(eta)
    sq = math.sqrt(eta)
    v, m = _v_m_with_guard(theta, beta, eta)
    if x >= 0.0:
        num = (pcf_pair_scaled(-theta, -x0 - beta)[0]
               * pcf_pair_scaled(-theta / eta, (eta * x + beta) / sq)[0])
        pref = 0.5 * beta * (x0 - x) + 0.25 * (x0 * x0 - eta * x * x)
        res = num * LogScaled(v.sign, -v.logmag)
        return res.scale_by_exp(pref).to_float()
    # below zero: Gamma(theta)/sqrt(2 pi) times a two-solution bracket
    g = gamma_fn(theta)
    if math.isinf(g):
        raise PoleError("transform prefactor Gamma(theta) is singular", theta)
    pref = 0.5 * beta * (x0 - x) + 0.25 * (x0 * x0 - x * x)
    m_over_v = m * LogScaled(v.sign, -v.logmag)
    if x < x0:
        outer = pcf_pair_scaled(-theta, -x - beta)[0]
        bracket = pcf_pair_scaled(-theta, x0 + beta)[0] \
            + pcf_pair_scaled(-theta, -x0 - beta)[0] * m_over_v
    else:
        outer = pcf_pair_scaled(-theta, -x0 - beta)[0]
        bracket = pcf_pair_scaled(-theta, x + beta)[0] \
            + pcf_pair_scaled(-theta, -x - beta)[0] * m_over_v
    res = LogScaled.from_float(g / math.sqrt(2.0 * math.pi)) * outer * bracket
    return res.scale_by_exp(pref).to_float()


def laplace_density_dx(x: float, theta: float, x0: float, params: ModelParams,
                       allow_continuation: bool = False) -> float:
    """d/dx of the transform; analytic, used for the source-jump identity."""
    if theta <= 0.0 and not allow_continuation:
        raise DomainError(f"transform requires theta > 0 (got {theta})")
    beta, eta = params.beta, params.eta
    if x0 > 0.0:
        reflected = ModelParams(-beta / math.sqrt(eta), 1.0 / eta)
        return -laplace_density_dx(-x * math.sqrt(eta), theta / eta,
                                   -x0 * math.sqrt(eta), reflected,
                                   allow_continuation)
    sq = math.sqrt(eta)
    v, m = _v_m_with_guard(theta, beta, eta)
    inv_v = LogScaled(v.sign, -v.logmag)
    if x >= 0.0:
        arg = (eta * x + beta) / sq
        db, dpb = pcf_pair_scaled(-theta / eta, arg)
        da0 = pcf_pair_scaled(-theta, -x0 - beta)[0]
        pref = 0.5 * beta * (x0 - x) + 0.25 * (x0 * x0 - eta * x * x)
        # d/dx [e^{-beta x/2 - eta x^2/4} D(arg)] = e^{...} [(-beta-eta x)/2 D + sqrt(eta) D']
        slope = (LogScaled.from_float(-0.5 * (beta + eta * x)) * db
                 + LogScaled.from_float(sq) * dpb)
        return (da0 * slope * inv_v).scale_by_exp(pref).to_float()
    g = gamma_fn(theta)
    if math.isinf(g):
        raise PoleError("transform prefactor Gamma(theta) is singular", theta)
    pref = 0.5 * beta * (x0 - x) + 0.25 * (x0 * x0 - x * x)
    m_over_v = m * inv_v
    half_slope = LogScaled.from_float(-0.5 * (beta + x))
    if x < x0:
        dval, dder = pcf_pair_scaled(-theta, -x - beta)
        bracket = pcf_pair_scaled(-theta, x0 + beta)[0] \
            + pcf_pair_scaled(-theta, -x0 - beta)[0] * m_over_v
        slope = (half_slope * dval) + (-(dder))  # d/dx D(-x-beta) = -D'
        res = slope * bracket
    else:
        outer = pcf_pair_scaled(-theta, -x0 - beta)[0]
        bval, bder = pcf_pair_scaled(-theta, x + beta)
        cval, cder = pcf_pair_scaled(-theta, -x - beta)
        dbracket = (half_slope * (bval + cval * m_over_v)) \
            + bder + (-(cder * m_over_v))
        res = outer * dbracket
    res = LogScaled.from_float(g / math.sqrt(2.0 * math.pi)) * res
    return res.scale_by_exp(pref).to_float()


def laplace_density_complex(x: float, theta: complex, x0: float,
                            params: ModelParams) -> complex:
    """Transform at complex theta (Re theta > 0); powers the inversion oracle."""
    beta, eta = params.beta, params.eta
    if theta.real <= 0.0:
        raise DomainError("complex evaluation requires Re(theta) > 0")
    if x0 > 0.0:
        reflected = ModelParams(-beta / math.sqrt(eta), 1.0 / eta)
        return laplace_density_complex(-x * math.sqrt(eta), theta / eta,
                                       -x0 * math.sqrt(eta), reflected) / math.sqrt(eta)
    sq = math.sqrt(eta)

    def d(p: complex, z: float) -> complex:
        return pcf_d_complex_index(p, z)

    def dprime(p: complex, z: float) -> complex:
        return 0.5 * z * d(p, z) - d(p + 1, z)

    w = beta / sq
    v = -sq * d(-theta, -beta) * dprime(-theta / eta, w) \
        - dprime(-theta, -beta) * d(-theta / eta, w)
    if x >= 0.0:
        pref = math.exp(0.5 * beta * (x0 - x) + 0.25 * (x0 * x0 - eta * x * x))
        return pref * d(-theta, -x0 - beta) * d(-theta / eta, (eta * x + beta) / sq) / v
    m = sq * d(-theta, beta) * dprime(-theta / eta, w) \
        - dprime(-theta, beta) * d(-theta / eta, w)
    import mpmath as mp

    g = complex(mp.gamma(theta))
    pref = math.exp(0.5 * beta * (x0 - x) + 0.25 * (x0 * x0 - x * x))
    if x < x0:
        return pref * g / math.sqrt(2 * math.pi) * d(-theta, -x - beta) * (
            d(-theta, x0 + beta) + d(-theta, -x0 - beta) * m / v)
    return pref * g / math.sqrt(2 * math.pi) * d(-theta, -x0 - beta) * (
        d(-theta, x + beta) + d(-theta, -x - beta) * m / v)


# ---------------------------------------------------------------------------
# spectral expansion
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SpectralTerm:
    """One decaying mode: rate, norming constant, and the eigenfunctions."""

    lambda_n: float
    k_n: float
    delta_n_star: float
    psi_minus_at: Callable[[float], float]
    psi_plus_at: Callable[[float], float]


def spectral_terms(params: ModelParams, count: int,
                   eigs: EigenSet | None = None) -> list[SpectralTerm]:
    """First ``count`` modes with their orthonormal eigenfunctions."""
    beta, eta = params.beta, params.eta
    sq = math.sqrt(eta)
    if eigs is None:
        eigs = eigenvalues(params, count)
    terms: list[SpectralTerm] = []
    for lam, dstar in zip(eigs.lambdas[:count], eigs.v_theta_derivs[:count]):
        d_b = pcf_d(lam, -beta)
        d_w = pcf_d(lam / eta, beta / sq)
        k_n = d_b * d_w / dstar
        if k_n <= 0.0:
            raise DomainError(
                f"norming constant k_n <= 0 at lambda={lam}; degenerate mode "
                "(eigenfunction normalization would need the residue form)")
        root_k = math.sqrt(k_n)

        def psi_minus(x: float, lam=lam, d_b=d_b, root_k=root_k) -> float:
            return root_k * pcf_d(lam, -x - beta) / d_b

        def psi_plus(x: float, lam=lam, d_w=d_w, root_k=root_k) -> float:
            return root_k * pcf_d(lam / eta, (eta * x + beta) / sq) / d_w

        terms.append(SpectralTerm(lam, k_n, dstar, psi_minus, psi_plus))
    return terms


def spectral_density(x: float, t: float, x0: float, params: ModelParams,
                     n_terms: int, eigs: EigenSet | None = None
                     ) -> tuple[float, float]:
    """Transient density by eigenfunction expansion: (value, tail_bound).

    The tail bound is heuristic: (largest coefficient seen) *
    exp(-lambda_hat_{n+1} t) / (1 - exp(-spacing t)), with the next rate
    extrapolated from the last spacing.
    """
    if t <= 0.0:
        raise DomainError(f"time must be positive, got {t}")
    if n_terms < 1:
        raise DomainError(f"n_terms must be >= 1, got {n_terms}")
    if t < SMALL_T_WARNING:
        warnings.warn(f"spectral expansion converges slowly for t = {t} < "
                      f"{SMALL_T_WARNING}; the tail bound may be optimistic",
                      stacklevel=2)
    beta, eta = params.beta, params.eta
    if x0 > 0.0:
        sq = math.sqrt(eta)
        reflected = ModelParams(-beta / sq, 1.0 / eta)
        val, tail = spectral_density(-x * sq, t * eta, -x0 * sq, reflected,
                                     n_terms, eigs=eigs)
        return sq * val, sq * tail
    n_terms = min(n_terms, MAX_SPECTRAL_TERMS)
    if eigs is None:
        eigs = eigenvalues(params, n_terms)
    sq = math.sqrt(eta)
    p_inf = steady_density(x, params)
    if x >= 0.0:
        log_pref = 0.5 * beta * (x0 - x) + 0.25 * (x0 * x0 - eta * x * x)
    else:
        log_pref = 0.5 * beta * (x0 - x) + 0.25 * (x0 * x0 - x * x)
    total = 0.0
    max_coef = 0.0
    lambdas = eigs.lambdas[:n_terms]
    for i, (lam, dstar) in enumerate(zip(lambdas, eigs.v_theta_derivs)):
        da0, _ = pcf_pair_scaled(lam, -x0 - beta)
        inv_dstar = LogScaled.from_float(1.0 / dstar)
        if x >= 0.0:
            dx_, _ = pcf_pair_scaled(lam / eta, (eta * x + beta) / sq)
            coef_ls = da0 * dx_ * inv_dstar
        else:
            dw, _ = pcf_pair_scaled(lam / eta, beta / sq)
            dxm, _ = pcf_pair_scaled(lam, -x - beta)
            db, _ = pcf_pair_scaled(lam, -beta)
            coef_ls = dw * da0 * dxm * inv_dstar * LogScaled(db.sign, -db.logmag)
        coef = coef_ls.scale_by_exp(log_pref).to_float()
        max_coef = max(max_coef, abs(coef))
        term = coef * math.exp(-lam * t)
        total += term
        if abs(coef) * math.exp(-lam * t) < _TAIL_STOP * (abs(p_inf) + abs(total)) \
                and i >= 1:
            lambdas = lambdas[:i + 1]
            break
    if len(lambdas) >= 2:
        spacing = lambdas[-1] - lambdas[-2]
    else:
        spacing = max(min(1.0, eta), 1e-2)
    lam_next = lambdas[-1] + spacing
    denom = 1.0 - math.exp(-spacing * t)
    tail = max_coef * math.exp(-lam_next * t) / max(denom, 1e-12)
    return p_inf + total, tail


def orthogonality_check(params: ModelParams, n: int, m: int,
                        eigs: EigenSet | None = None) -> float:
    """Int psi_n^- psi_m^- over (-inf,0) plus Int psi_n^+ psi_m^+ over (0,inf).

    Returns the value (1 for n = m, 0 otherwise, up to quadrature error).
    Indices are 1-based as in the spectral expansion.
    """
    if n < 1 or m < 1:
        raise DomainError("mode indices are 1-based")
    count = max(n, m)
    terms = spectral_terms(params, count, eigs=eigs)
    tn, tm = terms[n - 1], terms[m - 1]
    neg, _ = _sint.quad(lambda x: tn.psi_minus_at(x) * tm.psi_minus_at(x),
                        -np.inf, 0.0, limit=200)
    pos, _ = _sint.quad(lambda x: tn.psi_plus_at(x) * tm.psi_plus_at(x),
                        0.0, np.inf, limit=200)
    return neg + pos


# ---------------------------------------------------------------------------
# limiting reductions
# ---------------------------------------------------------------------------

def ou_laplace_density(x: float, theta: float, x0: float, beta: float) -> float:
    """Free-space OU transform (balanced abandonment, eta = 1):

    Gamma(theta)/sqrt(2 pi) e^{(x0^2-x^2)/4} e^{beta(x0-x)/2}
        D_{-theta}(x_> + beta) D_{-theta}(-x_< - beta).
    """
    hi, lo = (x, x0) if x >= x0 else (x0, x)
    pref = math.exp(0.25 * (x0 * x0 - x * x) + 0.5 * beta * (x0 - x))
    return (gamma_fn(theta) / math.sqrt(2 * math.pi) * pref
            * pcf_d(-theta, hi + beta) * pcf_d(-theta, -lo - beta))


def ou_density(x: float, t: float, x0: float, beta: float) -> float:
    """Closed-form OU transition density (eta = 1)."""
    if t <= 0:
        raise DomainError(f"time must be positive, got {t}")
    s = 1.0 - math.exp(-2.0 * t)
    mean_shift = (x0 + beta) * math.exp(-t)
    return math.exp(-((x + beta - mean_shift) ** 2) / (2.0 * s)) / math.sqrt(2.0 * math.pi * s)


def hw_laplace_limit(x: float, theta: float, x0: float, beta: float) -> float:
    """No-abandonment limit of the transform for x > 0 > x0.

    Valid for theta + beta^2/4 > 0; below that branch point the spectrum
    is continuous and this closed form does not apply.
    """
    if not (x > 0.0 and x0 < 0.0):
        raise DomainError("closed form requires x > 0 > x0")
    rad = theta + beta * beta / 4.0
    if rad <= 0.0:
        raise DomainError(f"branch point at theta = -beta^2/4 = {-beta * beta / 4.0}; "
                          f"got theta = {theta}")
    root = math.sqrt(rad)
    d0 = pcf_d(-theta, -beta)
    d0p = pcf_d_dz(-theta, -beta)
    pref = math.exp(0.25 * x0 * x0 + 0.5 * beta * x0)
    return (pref * pcf_d(-theta, -beta - x0) / d0
            * math.exp(-0.5 * x * beta - x * root) / (root - d0p / d0))


def rou_limit_check(theta: float, beta: float, eta_large: float) -> tuple[float, float]:
    """Ratios of V and M to their reflecting-limit forms; both approach 1.

    The limits are V -> theta D_{-1-theta}(-beta) and M -> theta D_{-1-theta}(beta)
    as eta -> infinity.  At theta = 0 the ratio is taken in the limit via
    the theta-derivatives (removable singularity).
    """
    if eta_large < 100.0:
        raise DomainError(f"reflecting-limit check expects eta >= 100, got {eta_large}")
    params = ModelParams(beta, eta_large)
    if theta == 0.0:
        from .characteristic import char_v

        ev = char_v(0.0, params)
        # V(theta) ~ theta dV/dtheta(0) and the limit form ~ theta D_{-1}(-beta)
        v_ratio = ev.dv_dtheta / pcf_d(-1.0, -beta)
        dm = _dm_dtheta0(beta, eta_large)
        m_ratio = dm / pcf_d(-1.0, beta)
        return v_ratio, m_ratio
    v = _v_scaled(theta, beta, eta_large).to_float()
    m = _m_scaled(theta, beta, eta_large).to_float()
    return (v / (theta * pcf_d(-1.0 - theta, -beta)),
            m / (theta * pcf_d(-1.0 - theta, beta)))


def _dm_dtheta0(beta: float, eta: float) -> float:
    """dM/dtheta at theta = 0 by a central difference (M(0) = 0)."""
    h = 1e-6
    m_plus = _m_scaled(h, beta, eta).to_float()
    m_minus = _m_scaled(-h, beta, eta).to_float()
    return (m_plus - m_minus) / (2.0 * h)
