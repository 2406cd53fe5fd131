"""Characteristic functions of the hybrid OU diffusion and their real roots.

The diffusion with piecewise-linear drift (-beta - eta*x above zero,
-beta - x below) has a purely discrete spectrum; the negated eigenvalues
are the zeros of

    V(theta) = -sqrt(eta) D_{-theta}(-beta) D'_{-theta/eta}(beta/sqrt(eta))
               - D'_{-theta}(-beta) D_{-theta/eta}(beta/sqrt(eta)),

and the spectral gap r(beta, eta) is the least positive lambda with
V(-lambda) = 0.  The companion function M (same structure with the sign
of beta flipped in the left-side family) enters the transient transform.

Root finding scans [min(1,eta)(1-0.05), max(1,eta)(1+0.05)] for sign
changes and bisects.  For strongly loaded systems the gap sits a distance
~exp(-beta^2/(2 eta)) from a bracket edge, which double precision cannot
resolve; those solves run on a logarithmic edge-distance ladder in
software floats with working precision sized to the cancellation loss.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import BracketError, ConvergenceError, DomainError
from .logscaled import LogScaled
from .specfun import gammafn, pcf
from .specfun.pcf import pcf_dp_pair_scaled, pcf_pair_scaled

SCAN_DELTA = 0.05
SCAN_POINTS = 2000
SCAN_POINTS_MAX = 32000
BISECT_TOL = 1e-12
EIGEN_TOL = 1e-10
EDGE_GUARD = 1e-6
# Escalate to software floats when the digit loss exp(beta^2/(2 eta)) near an
# edge exceeds ~8 digits, or when the double-precision root lands inside the
# sliver next to an edge where the sign of V is noise.
_PREEMPT_LOSS = 18.0
_LADDER_FLOOR = 1e-30


@dataclass(frozen=True)
class ModelParams:
    """Diffusion parameter pair: capacity slack beta, abandonment ratio eta."""

    beta: float
    eta: float

    def __post_init__(self) -> None:
        if not math.isfinite(self.beta):
            raise DomainError(f"beta must be finite, got {self.beta}")
        if not (math.isfinite(self.eta) and self.eta > 0.0):
            raise DomainError(f"eta must be positive and finite, got {self.eta}")


@dataclass(frozen=True)
class CharEval:
    """V, M and dV/dtheta at one point; values saturate to +-inf if huge."""

    theta: float
    v: float
    m: float
    dv_dtheta: float


@dataclass(frozen=True)
class EigenSet:
    """First eigenvalues 0 < lambda_1 < lambda_2 < ... with dV/dtheta at each."""

    params: ModelParams
    lambdas: tuple[float, ...]
    v_theta_derivs: tuple[float, ...]
    complete: bool = True

    def __post_init__(self) -> None:
        lam = self.lambdas
        if any(l2 <= l1 for l1, l2 in zip(lam, lam[1:])):
            raise DomainError("eigenvalues must be strictly increasing")
        if lam and lam[0] <= 0.0:
            raise DomainError("eigenvalues must be positive")


@dataclass(frozen=True)
class SpectralGap:
    """Least positive root of V(-lambda) = 0 with solve diagnostics.

    When the root hugs a bracket edge (|edge_offset| below the float spacing
    of r), ``edge`` and ``edge_offset`` carry the exact decomposition
    r = edge + edge_offset from the ladder solve.
    """

    r: float
    details: CharEval
    precision_used: str
    scanned: tuple[float, float]
    edge: float | None = None
    edge_offset: float | None = None

    @property
    def relaxation_time(self) -> float:
        return 1.0 / self.r

    def offset_from(self, edge: float) -> float:
        """r - edge, using the ladder decomposition when available."""
        if self.edge is not None and self.edge == edge:
            return self.edge_offset  # type: ignore[return-value]
        return self.r - edge


# ---------------------------------------------------------------------------
# scaled evaluation (double)
# ---------------------------------------------------------------------------

def _v_scaled(theta: float, beta: float, eta: float) -> LogScaled:
    sq = math.sqrt(eta)
    da, dpa = pcf_pair_scaled(-theta, -beta)
    db, dpb = pcf_pair_scaled(-theta / eta, beta / sq)
    t1 = -(LogScaled.from_float(sq) * da * dpb)
    t2 = -(dpa * db)
    return t1 + t2


def _m_scaled(theta: float, beta: float, eta: float) -> LogScaled:
    sq = math.sqrt(eta)
    da, dpa = pcf_pair_scaled(-theta, beta)
    db, dpb = pcf_pair_scaled(-theta / eta, beta / sq)
    return (LogScaled.from_float(sq) * da * dpb) + (-(dpa * db))


def _dv_dtheta_scaled(theta: float, beta: float, eta: float) -> LogScaled:
    sq = math.sqrt(eta)
    w = beta / sq
    da, dpa = pcf_pair_scaled(-theta, -beta)
    db, dpb = pcf_pair_scaled(-theta / eta, w)
    ia, iza = pcf_dp_pair_scaled(-theta, -beta)
    ib, izb = pcf_dp_pair_scaled(-theta / eta, w)
    sq_l = LogScaled.from_float(sq)
    inv_sq = LogScaled.from_float(1.0 / sq)
    inv_eta = LogScaled.from_float(1.0 / eta)
    return (sq_l * ia * dpb) + (inv_sq * da * izb) + (iza * db) + (inv_eta * dpa * ib)


def char_v(theta: float, params: ModelParams, precision: str = "double") -> CharEval:
    """Evaluate V, M and dV/dtheta at real theta."""
    if not math.isfinite(theta):
        raise DomainError(f"theta must be finite, got {theta}")
    beta, eta = params.beta, params.eta
    if precision == "extended":
        import mpmath as mp

        with mp.workdps(pcf.EXTENDED_DPS):
            v = _v_mp(mp.mpf(theta), beta, eta)
            m = _m_mp(mp.mpf(theta), beta, eta)
            dv = _dv_mp(mp.mpf(theta), beta, eta)
        return CharEval(theta, float(v), float(m), float(dv))
    v = _v_scaled(theta, beta, eta)
    m = _m_scaled(theta, beta, eta)
    dv = _dv_dtheta_scaled(theta, beta, eta)
    return CharEval(theta, v.to_float(), m.to_float(), dv.to_float())


def char_v_beta0(theta: float, eta: float) -> float:
    """Characteristic combination for beta = 0 in reciprocal-Gamma form.

    sqrt(eta)/(Gamma(theta/(2 eta)) Gamma((1+theta)/2))
      + 1/(Gamma(theta/2) Gamma(1/2 + theta/(2 eta)));
    entire in theta, zero set equal to that of V(. ; eta, beta=0).
    """
    if eta <= 0:
        raise DomainError(f"eta must be positive, got {eta}")
    rg = gammafn.rgamma
    return (math.sqrt(eta) * rg(theta / (2.0 * eta)) * rg(0.5 * (1.0 + theta))
            + rg(0.5 * theta) * rg(0.5 + theta / (2.0 * eta)))


# ---------------------------------------------------------------------------
# extended-tier evaluation
# ---------------------------------------------------------------------------

def _v_mp(theta, beta, eta):
    import mpmath as mp

    sq = mp.sqrt(eta)
    w = mp.mpf(beta) / sq
    a = mp.pcfd(-theta, -beta)
    ap = 0.5 * mp.mpf(-beta) * a - mp.pcfd(-theta + 1, -beta)
    b = mp.pcfd(-theta / eta, w)
    bp = 0.5 * w * b - mp.pcfd(-theta / eta + 1, w)
    return -sq * a * bp - ap * b


def _m_mp(theta, beta, eta):
    import mpmath as mp

    sq = mp.sqrt(eta)
    w = mp.mpf(beta) / sq
    a = mp.pcfd(-theta, beta)
    ap = 0.5 * mp.mpf(beta) * a - mp.pcfd(-theta + 1, beta)
    b = mp.pcfd(-theta / eta, w)
    bp = 0.5 * w * b - mp.pcfd(-theta / eta + 1, w)
    return sq * a * bp - ap * b


def _dv_mp(theta, beta, eta):
    import mpmath as mp

    return mp.diff(lambda t: _v_mp(t, beta, eta), theta)


def _edge_loss(beta: float, eta: float) -> tuple[float, float, int]:
    """(digit-loss exponent, edge, interior direction) for the edge the gap
    collapses onto as |beta| grows."""
    if beta < 0.0:
        # probability mass migrates above zero; gap approaches eta
        edge = eta
        direction = 1 if eta < 1.0 else -1
        loss = beta * beta / (2.0 * eta)
    else:
        edge = 1.0
        direction = -1 if eta < 1.0 else 1
        loss = beta * beta / 2.0
    return loss, edge, direction


def _working_dps(loss: float) -> int:
    return min(30 + int(math.ceil(loss * 0.4342944819)) + 10, 250)


# ---------------------------------------------------------------------------
# scanning machinery
# ---------------------------------------------------------------------------

def _v_sign_grid(lams: np.ndarray, beta: float, eta: float) -> np.ndarray:
    """Signs of V(-lambda) on a grid, vectorized over lambda."""
    sq = math.sqrt(eta)
    w = beta / sq
    s_da, l_da, s_dpa, l_dpa = pcf.pcf_batch_pair(lams, -beta)
    s_db, l_db, s_dpb, l_dpb = pcf.pcf_batch_pair(lams / eta, w)
    s1 = -(s_da * s_dpb)
    l1 = 0.5 * math.log(eta) + l_da + l_dpb
    s2 = -(s_dpa * s_db)
    l2 = l_dpa + l_db
    hi_is_1 = l1 >= l2
    s_hi = np.where(hi_is_1, s1, s2)
    s_lo = np.where(hi_is_1, s2, s1)
    l_hi = np.where(hi_is_1, l1, l2)
    l_lo = np.where(hi_is_1, l2, l1)
    inner = 1.0 + s_hi * s_lo * np.exp(np.minimum(l_lo - l_hi, 0.0))
    return (s_hi * np.sign(inner)).astype(int)


def _v_sign(theta: float, beta: float, eta: float) -> int:
    return _v_scaled(theta, beta, eta).sign


def _bisect_lambda(lo: float, hi: float, s_lo: int, beta: float, eta: float,
                   tol: float) -> float:
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if mid == lo or mid == hi:
            break
        s = _v_sign(-mid, beta, eta)
        if s == 0:
            return mid
        if s == s_lo:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def _scan_first_root(params: ModelParams, n_points: int) -> tuple[float, float, float]:
    """(root, cell_lo, cell_hi) for the least positive root of V(-lambda)."""
    beta, eta = params.beta, params.eta
    lo = min(1.0, eta) * (1.0 - SCAN_DELTA)
    hi = max(1.0, eta) * (1.0 + SCAN_DELTA)
    n = n_points
    while True:
        grid = np.linspace(lo, hi, n)
        signs = _v_sign_grid(grid, beta, eta)
        flips = np.nonzero(signs[:-1] * signs[1:] < 0)[0]
        if flips.size == 0:
            zeros = np.nonzero(signs == 0)[0]
            if zeros.size:
                i = int(zeros[0])
                return float(grid[i]), float(grid[max(i - 1, 0)]), float(grid[min(i + 1, n - 1)])
            if n < SCAN_POINTS_MAX:
                n = min(2 * n, SCAN_POINTS_MAX)
                continue
            raise BracketError(
                "no sign change of the characteristic function; root at bracket edge?",
                lo, hi, n)
        i = int(flips[0])
        cell_lo, cell_hi = float(grid[i]), float(grid[i + 1])
        root = _bisect_lambda(cell_lo, cell_hi, int(signs[i]), beta, eta, BISECT_TOL)
        # Guard against a hidden root pair below the detected cell: the sign
        # of V(-lambda) must be constant on (lo, cell_lo].
        if i > 0:
            recheck = np.linspace(lo, cell_lo, min(4 * max(i, 8), 4096))
            s2 = _v_sign_grid(recheck, beta, eta)
            bad = np.nonzero(s2[:-1] * s2[1:] < 0)[0]
            if bad.size:
                j = int(bad[0])
                root = _bisect_lambda(float(recheck[j]), float(recheck[j + 1]),
                                      int(s2[j]), beta, eta, BISECT_TOL)
                return root, float(recheck[j]), float(recheck[j + 1])
        return root, cell_lo, cell_hi


def _edge_ladder_extended(params: ModelParams, edge: float, direction: int,
                          loss: float) -> tuple[float, float]:
    """Solve for the root at lambda = edge * (1 + direction*eps), eps on a
    logarithmic ladder, in software floats.  Returns (root, offset)."""
    import mpmath as mp

    beta, eta = params.beta, params.eta
    with mp.workdps(_working_dps(loss)):
        edge_mp = mp.mpf(edge)

        def resid(eps):
            return _v_mp(-(edge_mp * (1 + direction * eps)), beta, eta)

        hi_eps = mp.mpf("0.5")
        s_hi = mp.sign(resid(hi_eps))
        bracket = None
        prev = hi_eps
        e = hi_eps
        while e > _LADDER_FLOOR:
            e = e / 10
            if mp.sign(resid(e)) != s_hi:
                bracket = (e, prev)
                break
            prev = e
        if bracket is None:
            raise ConvergenceError(
                f"no sign change on the edge ladder down to eps={_LADDER_FLOOR:.0e} "
                f"(edge {edge:.6g}, beta={beta}, eta={eta})")
        a, b = bracket
        s_b = s_hi
        for _ in range(200):
            mid = mp.sqrt(a * b)
            if mp.sign(resid(mid)) == s_b:
                b = mid
            else:
                a = mid
            if b - a < mp.mpf("1e-15") * b:
                break
        eps_root = mp.sqrt(a * b)
        offset = float(direction * edge_mp * eps_root)
        return float(edge_mp * (1 + direction * eps_root)), offset


def _extended_polish(params: ModelParams, lo: float, hi: float) -> float:
    """Plain bisection of V(-lambda) in software floats on [lo, hi]."""
    import mpmath as mp

    beta, eta = params.beta, params.eta
    loss, _, _ = _edge_loss(beta, eta)
    with mp.workdps(_working_dps(loss)):
        a, b = mp.mpf(lo), mp.mpf(hi)
        fa = _v_mp(-a, beta, eta)
        fb = _v_mp(-b, beta, eta)
        if mp.sign(fa) == mp.sign(fb):
            raise ConvergenceError("extended polish lost the sign change")
        for _ in range(220):
            mid = 0.5 * (a + b)
            fm = _v_mp(-mid, beta, eta)
            if mp.sign(fm) == mp.sign(fa):
                a, fa = mid, fm
            else:
                b, fb = mid, fm
            if b - a < mp.mpf("1e-30"):
                break
        return float(0.5 * (a + b))


def spectral_gap(params: ModelParams, precision: str = "auto") -> SpectralGap:
    """Spectral gap r(beta, eta): least positive root of V(-lambda) = 0.

    ``precision``: "double" (never escalate), "extended" (always refine in
    software floats), or "auto" (escalate only when the root lands in, or
    the conditioning predicts, the ill-conditioned sliver next to an edge).
    """
    if precision not in ("auto", "double", "extended"):
        raise DomainError(f"unknown precision tier {precision!r}")
    beta, eta = params.beta, params.eta
    lo_edge, hi_edge = min(1.0, eta), max(1.0, eta)
    scanned = (lo_edge * (1 - SCAN_DELTA), hi_edge * (1 + SCAN_DELTA))
    if abs(eta - 1.0) < 1e-12:
        # free-space OU: V = sqrt(2 pi)/Gamma(theta), the gap is exactly 1
        details = char_v(-1.0, params)
        return SpectralGap(1.0, details, "closed-form", scanned)

    loss, edge, direction = _edge_loss(beta, eta)
    if precision != "double" and loss > _PREEMPT_LOSS:
        root, offset = _edge_ladder_extended(params, edge, direction, loss)
        details = char_v(-root, params)
        return SpectralGap(root, details, "extended", scanned,
                           edge=edge, edge_offset=offset)

    n0 = SCAN_POINTS
    if beta < 0.0 and eta < 0.2:
        n0 = 8000
    root, cell_lo, cell_hi = _scan_first_root(params, n0)
    used = "double"

    if precision != "double":
        near_threshold = max(EDGE_GUARD, 1e-3 * lo_edge)
        near_lo = abs(root - lo_edge) < near_threshold
        near_hi = abs(root - hi_edge) < near_threshold
        if near_lo or near_hi:
            e = lo_edge if near_lo else hi_edge
            d = 1 if near_lo else -1
            root, offset = _edge_ladder_extended(params, e, d, max(loss, 1.0))
            details = char_v(-root, params)
            return SpectralGap(root, details, "extended", scanned,
                               edge=e, edge_offset=offset)
        if precision == "extended":
            pad = max(1e-9 * root, 1e-11)
            a, b = root - pad, root + pad
            if _v_sign(-a, beta, eta) * _v_sign(-b, beta, eta) < 0:
                root = _extended_polish(params, a, b)
            else:
                root = _extended_polish(params, cell_lo, cell_hi)
            used = "extended"

    details = char_v(-root, params)
    return SpectralGap(root, details, used, scanned)


def eigenvalues(params: ModelParams, count: int) -> EigenSet:
    """First ``count`` positive roots of V(-lambda) = 0, refined to 1e-10.

    Scans upward in windows.  A missed pair of roots inside one grid cell
    would break the sign alternation of dV/dtheta at consecutive simple
    roots; any violation triggers a 4x denser rescan of the window.
    """
    if count < 1:
        raise DomainError(f"count must be >= 1, got {count}")
    beta, eta = params.beta, params.eta
    roots: list[float] = []
    derivs: list[float] = []
    w_lo = EDGE_GUARD * min(1.0, eta)
    width = max(1.0, eta) * (1.0 + SCAN_DELTA)
    w_hi = w_lo + width
    step0 = min(width / SCAN_POINTS, min(1.0, eta) / 16.0)
    ceiling = 80.0 * max(1.0, eta) * count
    complete = True
    while len(roots) < count and w_lo < ceiling:
        step = step0
        while True:
            n = min(max(int(math.ceil((w_hi - w_lo) / step)) + 1, 64), 400000)
            grid = np.linspace(w_lo, w_hi, n)
            signs = _v_sign_grid(grid, beta, eta)
            flips = np.nonzero(signs[:-1] * signs[1:] < 0)[0]
            cand: list[float] = []
            cand_d: list[float] = []
            for i in flips:
                lam = _bisect_lambda(float(grid[i]), float(grid[i + 1]),
                                     int(signs[i]), beta, eta, EIGEN_TOL * 1e-2)
                if roots and lam <= roots[-1] + EIGEN_TOL:
                    continue
                if cand and lam <= cand[-1] + EIGEN_TOL:
                    continue
                cand.append(lam)
                cand_d.append(_dv_dtheta_scaled(-lam, beta, eta).to_float())
            seq = ([derivs[-1]] if derivs else []) + cand_d
            alternates = all(
                a == 0.0 or b == 0.0 or (a > 0) != (b > 0)
                for a, b in zip(seq, seq[1:])
            )
            if alternates or step < 1e-9:
                if not alternates:
                    complete = False
                break
            step /= 4.0
        roots.extend(cand)
        derivs.extend(cand_d)
        w_lo, w_hi = w_hi, w_hi + width
    if len(roots) < count:
        complete = False
    return EigenSet(params, tuple(roots[:count]), tuple(derivs[:count]),
                    complete=complete)


def gap_beta_derivative_sign(params: ModelParams, step: float = 1e-4) -> int:
    """Sign of dr/dbeta by central difference; 0 when eta = 1."""
    if abs(params.eta - 1.0) < 1e-12:
        return 0
    r_plus = spectral_gap(ModelParams(params.beta + step, params.eta)).r
    r_minus = spectral_gap(ModelParams(params.beta - step, params.eta)).r
    diff = r_plus - r_minus
    if diff > 0:
        return 1
    if diff < 0:
        return -1
    return 0
