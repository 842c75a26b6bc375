"""Saddle-point diagnostics for the contour-integral representation.

The stationary points of

    Φ(t) = (λ+1) log t + α log(t − z_+) + α log(t − z_−)

solve Φ′(t) = 0, i.e. (λ+1)/t + α/(t−z_+) + α/(t−z_−) = 0, with the closed
form

    t_± = (1+α′)/(1+2α′) [z ± √(z² − 1 + (α′/(1+α′))²)],  α′ = α/(λ+1).

The leading-order theorems assume the two saddles are well separated
compared with the Gaussian width √|2α z_±²/λ²| of each one.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .errors import DomainError
from .numeric_core import BranchedPoint, Parameters, sqrt_zsq_minus_1, z_plus_minus

__all__ = ["SaddleInfo", "saddle_points", "saddle_residual"]


@dataclass(frozen=True)
class SaddleInfo:
    """Saddle locations and how well separated they are.

    Attributes
    ----------
    t_plus, t_minus : complex
        Polished stationary points.
    alpha_prime : complex
        α/(λ+1).
    separation : float
        |t_plus − t_minus|.
    scale : float
        Sum of the two Gaussian widths √|2α z_±²/λ²|.
    coalesced : bool
        ``separation < margin * scale``; the leading-order forms off and
        on the cut are not reliable then.
    theta_plus : float
        Steepest-descent angle arg λ − arg z_+ − ½ arg α at t_+.
    phi2_plus : complex
        Φ″(t_+), the quadratic coefficient of Φ at t_+.
    residual_plus, residual_minus : float
        |Φ′(t)|·|t|/|λ+1| after polishing.
    """

    t_plus: complex
    t_minus: complex
    alpha_prime: complex
    separation: float
    scale: float
    coalesced: bool
    theta_plus: float
    phi2_plus: complex
    residual_plus: float
    residual_minus: float
    margin: float = 10.0


def _dphi(t, lam1, alpha, zp, zm):
    return lam1 / t + alpha / (t - zp) + alpha / (t - zm)


def _d2phi(t, lam1, alpha, zp, zm):
    return -lam1 / t ** 2 - alpha / (t - zp) ** 2 - alpha / (t - zm) ** 2


def saddle_residual(params: Parameters, p: BranchedPoint, t: complex) -> float:
    """Normalized stationarity residual |Φ′(t)|·|t|/|λ+1|."""
    zpm = z_plus_minus(p)
    lam1 = params.lam + 1.0
    return abs(_dphi(t, lam1, params.alpha, zpm.z_plus, zpm.z_minus)) * abs(t) / abs(lam1)


def _polish(t, lam1, alpha, zp, zm):
    best, best_r = t, abs(_dphi(t, lam1, alpha, zp, zm))
    for _ in range(30):
        g = _dphi(t, lam1, alpha, zp, zm)
        h = _d2phi(t, lam1, alpha, zp, zm)
        if h == 0:
            break
        step = g / h
        t = t - step
        r = abs(_dphi(t, lam1, alpha, zp, zm))
        if r < best_r:
            best, best_r = t, r
        if abs(step) <= 1e-16 * abs(t):
            break
    return best


def saddle_points(params: Parameters, p: BranchedPoint, *, margin: float = 10.0) -> SaddleInfo:
    """Locate and polish the two saddles, and flag coalescence.

    Raises
    ------
    DomainError
        For λ = −1 or z at ±1.
    BranchError
        For real z < 1 without a side.
    """
    lam, alpha = params.lam, params.alpha
    lam1 = lam + 1.0
    if lam1 == 0:
        raise DomainError("lambda = -1 has no saddle structure")
    if lam == 0:
        raise DomainError("lambda must be nonzero")
    zpm = z_plus_minus(p)
    if zpm.degenerate:
        raise DomainError("z coincides with a branch point")
    z = p.z
    zp, zm = zpm.z_plus, zpm.z_minus
    r = sqrt_zsq_minus_1(p)
    ap = alpha / lam1
    k = (1.0 + ap) / (1.0 + 2.0 * ap)
    root = cmath.sqrt(z * z - 1.0 + (ap / (1.0 + ap)) ** 2)
    if abs(-root - r) < abs(root - r):
        root = -root
    tp, tm = k * (z + root), k * (z - root)
    if alpha != 0:
        tp = _polish(tp, lam1, alpha, zp, zm)
        tm = _polish(tm, lam1, alpha, zp, zm)
        res_p = abs(_dphi(tp, lam1, alpha, zp, zm)) * abs(tp) / abs(lam1)
        res_m = abs(_dphi(tm, lam1, alpha, zp, zm)) * abs(tm) / abs(lam1)
        phi2 = _d2phi(tp, lam1, alpha, zp, zm)
    else:
        res_p = res_m = 0.0
        phi2 = -lam1 / tp ** 2
    width = math.sqrt(abs(2.0 * alpha * zp * zp / lam ** 2)) + math.sqrt(abs(2.0 * alpha * zm * zm / lam ** 2))
    sep = abs(tp - tm)
    theta = cmath.phase(lam) - cmath.phase(zp) - 0.5 * (cmath.phase(alpha) if alpha != 0 else 0.0)
    return SaddleInfo(
        t_plus=tp,
        t_minus=tm,
        alpha_prime=ap,
        separation=sep,
        scale=width,
        coalesced=sep < margin * width,
        theta_plus=theta,
        phi2_plus=phi2,
        residual_plus=res_p,
        residual_minus=res_m,
        margin=margin,
    )
