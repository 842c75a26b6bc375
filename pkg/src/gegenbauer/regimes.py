"""Choose which evaluator applies at a given (λ, α, z)."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .asymptotics import DEFAULT_MARGIN, Regime, z_condition
from .errors import DomainError, RegimeError
from .numeric_core import BranchedPoint, Parameters

__all__ = ["Threshold", "RegimeReport", "regime_select", "EXACT_FLOOR"]

EXACT_FLOOR = 30.0


@dataclass(frozen=True)
class Threshold:
    lhs: float
    rhs: float
    ratio: float
    passed: bool


@dataclass(frozen=True)
class RegimeReport:
    """Outcome of :func:`regime_select` with every threshold it tested."""

    chosen: Regime | None
    thresholds: dict = field(default_factory=dict)
    reasons: str = ""
    margin: float = DEFAULT_MARGIN

    def as_dict(self) -> dict:
        return {
            "chosen": None if self.chosen is None else self.chosen.value,
            "margin": self.margin,
            "reasons": self.reasons,
            "thresholds": {
                k: {"lhs": t.lhs, "rhs": t.rhs, "ratio": t.ratio, "passed": t.passed}
                for k, t in self.thresholds.items()
            },
        }


def _domain_ok(check) -> bool:
    try:
        check()
    except DomainError:
        return False
    return True


def regime_select(
    params: Parameters,
    p: BranchedPoint,
    *,
    margin: float = DEFAULT_MARGIN,
    exact_floor: float = EXACT_FLOOR,
) -> RegimeReport:
    """Pick Exact, Thm3, Thm4, Thm2 or Thm1, in that order of precedence.

    Exact when |λ| < ``exact_floor``; Thm3 (Thm4) when
    |λ+α||(1∓z)/2|^{3/2} <= 1/M; otherwise Thm2 on (−1, 1) or Thm1 off it
    when |λ||√(z²−1)| >= M√|α|.

    Raises
    ------
    RegimeError
        When no test passes; the exception's ``report`` lists all values.
    """
    lam, alpha = params.lam, params.alpha
    z = p.z
    th = {}
    a = abs(lam)
    th["lambda_floor"] = Threshold(a, exact_floor, a / exact_floor, a < exact_floor)
    for name, w in (("z_condition_plus", 1.0 - z), ("z_condition_minus", 1.0 + z)):
        v = z_condition(params, w)
        th[name] = Threshold(v, 1.0 / margin, v * margin, v <= 1.0 / margin)
    lhs = a * math.sqrt(abs(z * z - 1.0))
    rhs = margin * math.sqrt(abs(alpha))
    ratio = lhs / rhs if rhs else math.inf
    th["separation"] = Threshold(lhs, rhs, ratio, lhs >= rhs)

    on_cut = p.on_interval
    bessel_ok = _domain_ok(params.require_thm34_domain) and alpha.imag == 0.0
    trig_ok = _domain_ok(params.require_thm12_domain)

    if th["lambda_floor"].passed:
        return RegimeReport(Regime.EXACT, th, f"|lambda| = {a:.4g} < {exact_floor:g}", margin)
    if bessel_ok and th["z_condition_plus"].passed:
        return RegimeReport(Regime.THM3, th, "z close to +1", margin)
    if bessel_ok and th["z_condition_minus"].passed:
        return RegimeReport(Regime.THM4, th, "z close to -1", margin)
    if trig_ok and th["separation"].passed:
        if on_cut:
            return RegimeReport(Regime.THM2, th, "on the cut, saddles separated", margin)
        return RegimeReport(Regime.THM1, th, "off the cut, saddles separated", margin)
    report = RegimeReport(None, th, "no regime condition holds", margin)
    raise RegimeError(
        "no asymptotic regime applies: "
        + ", ".join(f"{k}={t.lhs:.4g} vs {t.rhs:.4g}" for k, t in th.items()),
        report,
    )
