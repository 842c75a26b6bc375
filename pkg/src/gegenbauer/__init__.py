"""Gegenbauer functions of complex degree, order and argument.

Exact series for C_λ^α and D_λ^α, four large-degree asymptotic regimes with
their validity checks, saddle diagnostics, a regime selector, associated
Legendre functions, and a verification CLI (``python -m gegenbauer``).
"""

from __future__ import annotations

from .asymptotics import (
    DEFAULT_MARGIN,
    AsymptoticResult,
    Regime,
    hyp2f1_bessel_series,
    thm1_c,
    thm1_d,
    thm2_c,
    thm2_d,
    thm3_c,
    thm3_cut,
    thm3_d,
    thm4_cut,
    thm4_d,
)
from .bessel import bessel_i, bessel_j, bessel_k, bessel_y, hankel_j, k_rotation
from .errors import (
    AccuracyError,
    BranchError,
    DomainError,
    GegenbauerError,
    NoRouteError,
    NumericalError,
    OutOfRegionError,
    PoleError,
    RegimeError,
)
from .exact import (
    ferrers_c_cut,
    ferrers_d_cut,
    gegenbauer_c,
    gegenbauer_d,
    gegenbauer_poly,
    hyp2f1,
)
from .legendre import Q_PHASE_CALIBRATION, LegendreIndices, legendre_p, legendre_q
from .numeric_core import BranchedPoint, Parameters, Side, gamma_fn, gamma_ratio, z_plus_minus
from .regimes import RegimeReport, regime_select
from .saddles import SaddleInfo, saddle_points, saddle_residual

__version__ = "0.1.0"

__all__ = [
    "AccuracyError",
    "AsymptoticResult",
    "BranchError",
    "BranchedPoint",
    "DEFAULT_MARGIN",
    "DomainError",
    "GegenbauerError",
    "LegendreIndices",
    "NoRouteError",
    "NumericalError",
    "OutOfRegionError",
    "Parameters",
    "PoleError",
    "Q_PHASE_CALIBRATION",
    "Regime",
    "RegimeError",
    "RegimeReport",
    "SaddleInfo",
    "Side",
    "bessel_i",
    "bessel_j",
    "bessel_k",
    "bessel_y",
    "ferrers_c_cut",
    "ferrers_d_cut",
    "gamma_fn",
    "gamma_ratio",
    "gegenbauer_c",
    "gegenbauer_d",
    "gegenbauer_poly",
    "hankel_j",
    "hyp2f1",
    "hyp2f1_bessel_series",
    "k_rotation",
    "legendre_p",
    "legendre_q",
    "regime_select",
    "saddle_points",
    "saddle_residual",
    "thm1_c",
    "thm1_d",
    "thm2_c",
    "thm2_d",
    "thm3_c",
    "thm3_cut",
    "thm3_d",
    "thm4_cut",
    "thm4_d",
    "z_plus_minus",
]
