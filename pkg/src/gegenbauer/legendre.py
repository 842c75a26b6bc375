"""Associated Legendre functions through the Gegenbauer evaluators.

With λ = ν−μ and α = μ+½,

    P_ν^{−μ}(z) = 2^μ/√π · Γ(μ+½)Γ(ν−μ+1)/Γ(ν+μ+1) · (z²−1)^{μ/2} C_λ^α(z),
    Q_ν^{−μ}(z) = 2^μ √π e^{−2πi(μ+¼)} · Γ(μ+½)Γ(ν−μ+1)/Γ(ν+μ+1)
                  · (z²−1)^{μ/2} D_λ^α(z).

For real x in (−1, 1) given without a cut side, P uses (1−x²)^{μ/2}, i.e.
the Ferrers function.  The Q phase is applied exactly as written; checks
against closed forms at μ = 0 and against independent type-3 Legendre
values at μ ≠ 0 found no residual constant, so the calibration factor
:data:`Q_PHASE_CALIBRATION` is 1.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from . import asymptotics as _asym
from .exact import gegenbauer_c, gegenbauer_d
from .numeric_core import BranchedPoint, Parameters, Side, branch_pow, gamma_fn, gamma_ratio

__all__ = ["LegendreIndices", "legendre_p", "legendre_q", "Q_PHASE_CALIBRATION"]

Q_PHASE_CALIBRATION = 1.0 + 0j

_SQRT_PI = math.sqrt(math.pi)


@dataclass(frozen=True)
class LegendreIndices:
    """Degree ``nu_deg`` (ν) and order ``mu_ord`` (μ) of P_ν^{−μ}, Q_ν^{−μ}."""

    nu_deg: complex
    mu_ord: complex

    def __post_init__(self):
        object.__setattr__(self, "nu_deg", complex(self.nu_deg))
        object.__setattr__(self, "mu_ord", complex(self.mu_ord))

    def gegenbauer_parameters(self) -> Parameters:
        return Parameters(self.nu_deg - self.mu_ord, self.mu_ord + 0.5)


def _common(idx: LegendreIndices, p: BranchedPoint, ferrers: bool) -> complex:
    mu, nu = idx.mu_ord, idx.nu_deg
    coef = 2.0 ** mu * gamma_fn(mu + 0.5) * gamma_ratio(nu - mu + 1.0, nu + mu + 1.0)
    z = p.z
    if mu == 0:
        return coef
    if ferrers:
        return coef * branch_pow(1.0 - z * z, mu / 2.0)
    return coef * branch_pow(z - 1.0, mu / 2.0, p.side) * branch_pow(z + 1.0, mu / 2.0, p.side)


def _c_value(params: Parameters, p: BranchedPoint, method: str) -> complex:
    if method == "exact":
        return gegenbauer_c(params, p).value
    if method == "thm1":
        return _asym.thm1_c(params, p).value
    if method == "thm2":
        if not p.on_interval:
            raise ValueError("the thm2 backend needs real x in (-1, 1)")
        return _asym.thm2_c(params, math.acos(p.z.real)).value
    if method == "thm3":
        if p.on_interval:
            return _asym.thm3_cut(params, p.z.real, "C").value
        return _asym.thm3_c(params, p).value
    if method == "thm4":
        if not p.on_interval:
            raise ValueError("the thm4 backend for C needs real x in (-1, 1)")
        return _asym.thm4_cut(params, p.z.real, "C").value
    raise ValueError(f"unknown method {method!r}")


def legendre_p(idx: LegendreIndices, p: BranchedPoint, *, method: str = "exact") -> complex:
    """P_ν^{−μ}(z); the Ferrers function for real x in (−1, 1) with no side.

    Parameters
    ----------
    method : {"exact", "thm1", "thm2", "thm3", "thm4"}
        Evaluator used for the Gegenbauer factor.
    """
    params = idx.gegenbauer_parameters()
    ferrers = p.on_interval and p.side is Side.OFF
    return _common(idx, p, ferrers) / _SQRT_PI * _c_value(params, p, method)


def legendre_q(idx: LegendreIndices, p: BranchedPoint, *, route: str = "auto") -> complex:
    """Q_ν^{−μ}(z) from the second-kind Gegenbauer function.

    ``route`` is passed to :func:`gegenbauer_d`.
    """
    params = idx.gegenbauer_parameters()
    phase = cmath.exp(-2j * math.pi * (idx.mu_ord + 0.25)) * Q_PHASE_CALIBRATION
    d = gegenbauer_d(params, p, route=route).value
    return _common(idx, p, False) * _SQRT_PI * phase * d
