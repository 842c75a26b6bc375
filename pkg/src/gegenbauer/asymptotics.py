"""Large-degree asymptotic forms of C_λ^α and D_λ^α.

Four regimes are covered:

* ``Thm1``: z off [−1, 1] and away from ±1, leading term in powers of
  z_± = z ± √(z²−1);
* ``Thm2``: x = cos θ on the cut, trigonometric form;
* ``Thm3``: z near +1, Bessel functions of Z = √(2(λ+α)²(1−z));
* ``Thm4``: z near −1, Bessel functions of Z″ = √(2(λ+α)²(1+z)).

Every evaluator checks its own validity condition against a margin M
(default 10) and raises :class:`RegimeError` when it fails; pass
``check=False`` to evaluate anyway (used by matching studies).  The
returned :class:`AsymptoticResult` carries an a priori relative error,
c/|λ| for the first two regimes and c/|λ|^{2/3} for the Bessel regimes.
"""

from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass, field

from .bessel import ORDER_OFFSET, bessel_i, bessel_j, bessel_j_reduced, bessel_k, bessel_y
from .errors import BranchError, DomainError, RegimeError
from .numeric_core import (
    BranchedPoint,
    Parameters,
    Side,
    branch_pow,
    gamma_fn,
    gamma_ratio,
    cos_pi,
    rgamma,
    sin_pi,
    z_plus_minus,
)

__all__ = [
    "Regime",
    "AsymptoticResult",
    "DEFAULT_MARGIN",
    "thm1_d",
    "thm1_c",
    "thm2_d",
    "thm2_c",
    "hyp2f1_bessel_series",
    "thm3_c",
    "thm3_d",
    "thm3_cut",
    "thm4_d",
    "thm4_cut",
    "z_condition",
    "separation_ratio",
]

DEFAULT_MARGIN = 10.0
_SQRT_PI = math.sqrt(math.pi)


class Regime(str, enum.Enum):
    THM1 = "Thm1"
    THM2 = "Thm2"
    THM3 = "Thm3"
    THM4 = "Thm4"
    EXACT = "Exact"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class AsymptoticResult:
    """An asymptotic value with its regime tag and a priori error.

    ``variables`` records the derived quantities that entered the formula
    (z_±, θ, Z, Z′, Z″, X, X″, Y as applicable).
    """

    value: complex
    regime: Regime
    est_rel_error: float
    variables: dict = field(default_factory=dict)


def _est_linear(lam: complex, c: float) -> float:
    return c / abs(lam) if lam != 0 else math.inf


def _est_two_thirds(lam: complex, c: float) -> float:
    return c / abs(lam) ** (2.0 / 3.0) if lam != 0 else math.inf


def _require_thm12(params: Parameters) -> None:
    params.require_thm12_domain()
    if params.lam == 0:
        raise DomainError("lambda must be nonzero")


def separation_ratio(params: Parameters, z: complex, margin: float = DEFAULT_MARGIN) -> float:
    """|λ|·|√(z²−1)| divided by M√|α|; at least 1 inside the Thm1/Thm2 regime."""
    lhs = abs(params.lam) * math.sqrt(abs(complex(z) ** 2 - 1.0))
    rhs = margin * math.sqrt(abs(params.alpha))
    return lhs / rhs if rhs else math.inf


def z_condition(params: Parameters, w: complex) -> float:
    """|λ+α|·|w/2|^{3/2}, the smallness parameter of the Bessel regimes.

    ``w`` is 1−z near +1 and 1+z near −1.
    """
    return abs(params.lam + params.alpha) * abs(complex(w) / 2.0) ** 1.5


def _check_separation(params, z, margin, regime: str) -> None:
    r = separation_ratio(params, z, margin)
    if r < 1.0:
        raise RegimeError(
            f"{regime}: |lambda||sqrt(z^2-1)| = {r * margin * math.sqrt(abs(params.alpha)):.4g} "
            f"is below M*sqrt|alpha| = {margin * math.sqrt(abs(params.alpha)):.4g}",
            {"test": "separation", "ratio": r, "margin": margin},
        )


def _check_z(params, w, margin, regime: str) -> None:
    v = z_condition(params, w)
    if v > 1.0 / margin:
        raise RegimeError(
            f"{regime}: |lambda+alpha||w/2|^(3/2) = {v:.4g} exceeds 1/M = {1.0 / margin:.4g}",
            {"test": "z_condition", "value": v, "margin": margin},
        )


def _thm1_prefactor(params: Parameters, p: BranchedPoint) -> complex:
    lam, alpha = params.lam, params.alpha
    side = p.side
    z = p.z
    return (
        2.0 ** (-alpha)
        * rgamma(alpha)
        * cmath.exp((alpha - 1.0) * cmath.log(lam))
        * branch_pow(z - 1.0, -alpha / 2.0, side)
        * branch_pow(z + 1.0, -alpha / 2.0, side)
    )


def _thm1_point(p: BranchedPoint) -> BranchedPoint:
    # C is continuous across (−1, 1); its formula needs a side there
    if p.is_real and p.side is Side.OFF and -1.0 < p.z.real < 1.0:
        return BranchedPoint(p.z, Side.ABOVE)
    return p


def thm1_d(
    params: Parameters,
    p: BranchedPoint,
    *,
    margin: float = DEFAULT_MARGIN,
    check: bool = True,
    c: float = 1.0,
) -> AsymptoticResult:
    """Leading large-λ form of D off the cut.

    D ≈ 2^{−α}/Γ(α) λ^{α−1} (z²−1)^{−α/2} e^{iπα} z_+^{−λ−α}.

    Raises
    ------
    DomainError
        Unless Re λ >= 0, Re α > 0.
    BranchError
        For real z < 1 without a side.
    RegimeError
        If z is degenerate or |λ||√(z²−1)| < M√|α| (when ``check``).
    """
    _require_thm12(params)
    zp = z_plus_minus(p)
    if zp.degenerate:
        raise RegimeError("Thm1: z coincides with a branch point")
    if check:
        _check_separation(params, p.z, margin, "Thm1")
    lam, alpha = params.lam, params.alpha
    log_term = 1j * math.pi * alpha - (lam + alpha) * cmath.log(zp.z_plus)
    value = _thm1_prefactor(params, p) * cmath.exp(log_term)
    return AsymptoticResult(
        value,
        Regime.THM1,
        _est_linear(lam, c),
        {"z_plus": zp.z_plus, "z_minus": zp.z_minus},
    )


def thm1_c(
    params: Parameters,
    p: BranchedPoint,
    *,
    margin: float = DEFAULT_MARGIN,
    check: bool = True,
    c: float = 1.0,
    sign: int | None = None,
) -> AsymptoticResult:
    """Leading large-λ form of C off the cut.

    C ≈ 2^{−α}/Γ(α) λ^{α−1} (z²−1)^{−α/2} (e^{±iπα} z_+^{−λ−α} + z_+^{λ+α}),
    upper sign for Im z > 0.  A term smaller than ``est_rel_error`` times
    the other is dropped.  For real z > 1, where neither sign is singled
    out, the mean of the two phases (cos πα) is used.

    Parameters
    ----------
    sign : {+1, -1, None}
        Force the phase e^{±iπα}; ``None`` takes it from z.
    """
    _require_thm12(params)
    p = _thm1_point(p)
    zp = z_plus_minus(p)
    if zp.degenerate:
        raise RegimeError("Thm1: z coincides with a branch point")
    if check:
        _check_separation(params, p.z, margin, "Thm1")
    lam, alpha = params.lam, params.alpha
    est = _est_linear(lam, c)
    if sign is None:
        sign = p.half_plane()
    if sign == 0:
        phase = cmath.cos(math.pi * alpha)
    elif sign in (1, -1):
        phase = cmath.exp(sign * 1j * math.pi * alpha)
    else:
        raise ValueError("sign must be +1, -1 or None")
    lz = cmath.log(zp.z_plus)
    log_sub = -(lam + alpha) * lz
    log_dom = (lam + alpha) * lz
    kept = "both"
    if phase != 0:
        log_sub += cmath.log(phase)
    else:
        log_sub = complex(-math.inf, 0.0)
    if log_sub.real > log_dom.real:
        log_sub, log_dom = log_dom, log_sub
        swapped = True
    else:
        swapped = False
    if log_sub.real - log_dom.real < math.log(est):
        total = cmath.exp(log_dom)
        kept = "growing" if not swapped else "decaying"
    else:
        total = cmath.exp(log_dom) + cmath.exp(log_sub)
    value = _thm1_prefactor(params, p) * total
    return AsymptoticResult(
        value,
        Regime.THM1,
        est,
        {"z_plus": zp.z_plus, "z_minus": zp.z_minus, "terms": kept},
    )


def _thm2_common(params: Parameters, theta: float, margin: float, check: bool):
    _require_thm12(params)
    theta = float(theta)
    if not 0.0 < theta < math.pi:
        raise RegimeError(f"Thm2: theta={theta} is not inside (0, pi)")
    if check:
        _check_separation(params, math.cos(theta), margin, "Thm2")
    lam, alpha = params.lam, params.alpha
    amp = (
        2.0 ** (1.0 - alpha)
        * rgamma(alpha)
        * cmath.exp((alpha - 1.0) * cmath.log(lam))
        * math.sin(theta) ** (-alpha)
    )
    phase = (lam + alpha) * theta - 0.5 * math.pi * alpha
    return amp, phase


def thm2_d(
    params: Parameters,
    theta: float,
    *,
    margin: float = DEFAULT_MARGIN,
    check: bool = True,
    c: float = 1.0,
) -> AsymptoticResult:
    """On-cut second-kind function at x = cos θ.

    𝖣 ≈ −2^{1−α}/Γ(α) λ^{α−1} (sin θ)^{−α} sin((λ+α)θ − πα/2).
    """
    amp, phase = _thm2_common(params, theta, margin, check)
    return AsymptoticResult(-amp * cmath.sin(phase), Regime.THM2, _est_linear(params.lam, c), {"theta": theta})


def thm2_c(
    params: Parameters,
    theta: float,
    *,
    margin: float = DEFAULT_MARGIN,
    check: bool = True,
    c: float = 1.0,
) -> AsymptoticResult:
    """On-cut first-kind function, the cosine partner of :func:`thm2_d`."""
    amp, phase = _thm2_common(params, theta, margin, check)
    return AsymptoticResult(amp * cmath.cos(phase), Regime.THM2, _est_linear(params.lam, c), {"theta": theta})


# ---------------------------------------------------------------------------
# Bessel-type regimes


def hyp2f1_bessel_series(b: complex, nu: float, u: complex, order: int = 1) -> complex:
    """Bessel-function approximation of 2F1(b+½, −b+½; ν+1; u/2) for large b.

    With s = b²u/2 = (U/2)² and Λ_μ(s) = (U/2)^{−μ} J_μ(U),

        Γ(ν+1) {Λ_ν + b^{−2} [¼ s Λ_{ν+1} − s² Λ_{ν+2} + ⅓ s³ Λ_{ν+3}]},

    the bracket being included for ``order=1``.  Working with Λ makes the
    result independent of the branch of U.

    Raises
    ------
    DomainError
        If |b| < 10, or ``order`` is not 0 or 1.
    """
    b = complex(b)
    if abs(b) < 10.0:
        raise DomainError("hyp2f1_bessel_series needs |b| >= 10")
    if order not in (0, 1):
        raise DomainError("order must be 0 or 1")
    s = b * b * complex(u) / 2.0
    total = bessel_j_reduced(nu, s)
    if order == 1:
        corr = (
            0.25 * s * bessel_j_reduced(nu + 1.0, s)
            - s * s * bessel_j_reduced(nu + 2.0, s)
            + s ** 3 / 3.0 * bessel_j_reduced(nu + 3.0, s)
        )
        total += corr / (b * b)
    return gamma_fn(nu + 1.0) * total


def _nu_of(alpha: complex) -> float:
    if alpha.imag != 0.0:
        raise DomainError("the Bessel regimes need real alpha")
    return alpha.real - 0.5


def _thm3_prefactor(params: Parameters) -> complex:
    lam, alpha = params.lam, params.alpha
    return gamma_ratio(lam + 2.0 * alpha, lam + 1.0) * rgamma(2.0 * alpha)


def thm3_c(
    params: Parameters,
    p: BranchedPoint,
    *,
    order: int = 1,
    variant: str = "Z",
    margin: float = DEFAULT_MARGIN,
    check: bool = True,
    c: float = 1.0,
) -> AsymptoticResult:
    """C near z = +1 through Bessel functions.

    ``variant="Z"`` (default) uses

        Γ(λ+2α)/(Γ(λ+1)Γ(2α)) ((1+z)/2)^{−ν} · hyp2f1_bessel_series(λ+α, ν, 1−z),

    with ν = α−½ and Z = √(2(λ+α)²(1−z)).  ``variant="Y"`` uses the closely
    related expansion in Y = √(2λ(λ+2α)(1−z)) with its own 1/(λ(λ+2α))
    bracket.  ``order`` switches the bracket on (1) or off (0).
    """
    params.require_thm34_domain()
    lam, alpha = params.lam, params.alpha
    nu = _nu_of(alpha)
    z = p.z
    if check:
        _check_z(params, 1.0 - z, margin, "Thm3")
    if order not in (0, 1):
        raise DomainError("order must be 0 or 1")
    pref = _thm3_prefactor(params)
    b = lam + alpha
    zz = 2.0 * b * b * (1.0 - z)
    variables = {"Z": cmath.sqrt(zz)}
    if variant == "Z":
        value = pref * branch_pow((1.0 + z) / 2.0, -nu) * hyp2f1_bessel_series(b, nu, 1.0 - z, order)
    elif variant == "Y":
        yy = 2.0 * lam * (lam + 2.0 * alpha) * (1.0 - z)
        s = yy / 4.0
        inner = bessel_j_reduced(nu, s)
        if order == 1:
            inner += (
                -(2.0 * alpha + 1.0) / 2.0 * s * s * bessel_j_reduced(nu + 2.0, s)
                + s ** 3 / 3.0 * bessel_j_reduced(nu + 3.0, s)
            ) / (lam * (lam + 2.0 * alpha))
        value = pref * gamma_fn(nu + 1.0) * inner
        variables["Y"] = cmath.sqrt(yy)
    else:
        raise ValueError(f"unknown variant {variant!r}")
    return AsymptoticResult(value, Regime.THM3, _est_two_thirds(lam, c), variables)


def thm3_d(
    params: Parameters,
    p: BranchedPoint,
    *,
    full: bool = False,
    margin: float = DEFAULT_MARGIN,
    check: bool = True,
    c: float = 1.0,
) -> AsymptoticResult:
    """D near z = +1 through the Macdonald function.

    Leading form

        D ≈ e^{iπα}/(√π Γ(α)) 2^{−ν} (λ+α)^ν (z²−1)^{−ν/2} K_ν(Z′),

    Z′ = √(2(λ+α)²(z−1)).  With ``full=True`` the form that keeps
    ((z+1)/2)^{ν/2} and the I_ν(Z′) term is returned; the I_ν coefficient,
    which should be small, is reported as ``variables["i_coefficient"]``.
    Points on (−1, 1) need a side; Z′ then lies on the imaginary axis.
    """
    params.require_thm34_domain()
    lam, alpha = params.lam, params.alpha
    nu = _nu_of(alpha)
    z = p.z
    side = p.side
    if p.is_real and side is Side.OFF and z.real < 1.0:
        raise BranchError("thm3_d on the cut needs a side; use thm3_cut for the on-cut pair")
    if z == 1.0:
        raise RegimeError("Thm3: D is singular at z = 1")
    if check:
        _check_z(params, 1.0 - z, margin, "Thm3")
    b = lam + alpha
    q = 2.0 * b * b * (z - 1.0)
    # Z′ = (λ+α)·√2·√(z−1), with the cut side carried by √(z−1)
    zprime = b * math.sqrt(2.0) * branch_pow(z - 1.0, 0.5, side) if b.imag == 0 else cmath.sqrt(q)
    base = (
        cmath.exp(1j * math.pi * alpha)
        / _SQRT_PI
        * rgamma(alpha)
        * 2.0 ** (-nu)
        * cmath.exp(nu * cmath.log(b))
        * branch_pow(z - 1.0, -nu / 2.0, side)
        * branch_pow(z + 1.0, -nu / 2.0, side)
    )
    variables = {"Z_prime": zprime}
    if not full:
        value = base * bessel_k(nu, zprime)
        return AsymptoticResult(value, Regime.THM3, _est_two_thirds(lam, c), variables)
    if abs(math.sin(math.pi * nu)) < 1e-12:
        raise DomainError("the I_nu bracket is singular for integer nu (half-integer alpha)")
    coef = 1.0 - gamma_ratio(lam + 2.0 * alpha, lam + 1.0) * cmath.exp((1.0 - 2.0 * alpha) * cmath.log(b)) * branch_pow(
        (z + 1.0) / 2.0, -nu, side
    )
    bracket = bessel_k(nu, zprime) + 0.5 * math.pi / math.sin(math.pi * nu) * coef * bessel_i(nu, zprime)
    value = base * branch_pow((z + 1.0) / 2.0, nu / 2.0, side) * bracket
    variables["i_coefficient"] = coef
    return AsymptoticResult(value, Regime.THM3, _est_two_thirds(lam, c), variables)


def _cut_x(x) -> float:
    if isinstance(x, complex):
        if x.imag != 0:
            raise DomainError("on-cut forms need real x")
        x = x.real
    x = float(x)
    if not -1.0 < x < 1.0:
        raise DomainError(f"x must lie in (-1, 1), got {x}")
    return x


def _kind(kind: str) -> str:
    k = str(kind).upper()
    if k not in ("C", "D"):
        raise ValueError(f"kind must be C or D, got {kind!r}")
    return k


def thm3_cut(
    params: Parameters,
    x: float,
    kind: str = "C",
    *,
    margin: float = DEFAULT_MARGIN,
    check: bool = True,
    c: float = 1.0,
) -> AsymptoticResult:
    """On-cut pair near x = 1.

    √π/Γ(α) 2^{−ν} (λ+α)^ν (1−x²)^{−ν/2} × {J_ν(X) for C, −Y_ν(X) for D},
    X = √(2(λ+α)²(1−x)).
    """
    params.require_thm34_domain()
    kind = _kind(kind)
    x = _cut_x(x)
    lam, alpha = params.lam, params.alpha
    nu = _nu_of(alpha)
    if check:
        _check_z(params, 1.0 - x, margin, "Thm3")
    b = lam + alpha
    xx = cmath.sqrt(2.0 * b * b * (1.0 - x))
    amp = _SQRT_PI * rgamma(alpha) * 2.0 ** (-nu) * cmath.exp(nu * cmath.log(b)) * (1.0 - x * x) ** (-nu / 2.0)
    f = bessel_j(nu, xx) if kind == "C" else -bessel_y(nu, xx)
    return AsymptoticResult(amp * f, Regime.THM3, _est_two_thirds(lam, c), {"X": xx, "kind": kind})


def _thm4_d_value(lam: complex, alpha: float, z: complex, side: Side, s: int) -> tuple[complex, complex]:
    nu = alpha - 0.5
    b = lam + alpha
    q = 2.0 * b * b * (1.0 + z)
    zdd = b * math.sqrt(2.0) * branch_pow(1.0 + z, 0.5, side) if b.imag == 0 else cmath.sqrt(q)
    pref = (
        cmath.exp(1j * math.pi * alpha)
        * 2.0 ** (-alpha)
        * cmath.exp((alpha - 1.0) * cmath.log(b))
        * _SQRT_PI
        / math.sin(math.pi * nu)
        * rgamma(alpha)
        * branch_pow(2.0 * (1.0 + z), -alpha / 2.0, side)
        * branch_pow(zdd / 2.0, 0.5)
    )
    bracket = -bessel_j(nu, zdd) + cmath.exp(s * 1j * math.pi * nu) * bessel_j(-nu, zdd)
    return pref * cmath.exp(-s * 1j * math.pi * (lam + 2.0 * alpha)) * bracket, zdd


def thm4_d(
    params: Parameters,
    p: BranchedPoint,
    *,
    margin: float = DEFAULT_MARGIN,
    check: bool = True,
    c: float = 1.0,
) -> AsymptoticResult:
    """D near z = −1.

    D ≈ e^{iπα} 2^{−α} (λ+α)^{α−1} √π/(sin π(α−½) Γ(α)) (2(1+z))^{−α/2}
        (Z″/2)^{½} e^{∓iπ(λ+2α)} {−J_ν(Z″) + e^{±iπν} J_{−ν}(Z″)},

    ν = α−½, Z″ = √(2(λ+α)²(1+z)), upper signs above the real axis (or
    for side=above).  At half-integer α the removable singularity is
    resolved by order offsets as in the Bessel module.
    """
    params.require_thm34_domain()
    lam, alpha = params.lam, params.alpha
    _nu_of(alpha)
    a = alpha.real
    s = p.half_plane()
    if s == 0:
        raise BranchError("thm4_d needs Im z != 0 or a cut side")
    if p.z == -1.0:
        raise RegimeError("Thm4: D is singular at z = -1")
    if check:
        _check_z(params, 1.0 + p.z, margin, "Thm4")
    if abs(math.sin(math.pi * (a - 0.5))) < 1e-9:
        d = ORDER_OFFSET
        v = [_thm4_d_value(lam, a + k * d, p.z, p.side, s)[0] for k in (1, -1, 2, -2)]
        value = (2.0 * (v[0] + v[1]) - 0.5 * (v[2] + v[3])) / 3.0
        zdd = _thm4_d_value(lam, a + d, p.z, p.side, s)[1] * (lam + a) / (lam + a + d)
    else:
        value, zdd = _thm4_d_value(lam, a, p.z, p.side, s)
    return AsymptoticResult(value, Regime.THM4, _est_two_thirds(lam, c), {"Z_dprime": zdd})


def thm4_cut(
    params: Parameters,
    x: float,
    kind: str = "C",
    *,
    margin: float = DEFAULT_MARGIN,
    check: bool = True,
    c: float = 1.0,
) -> AsymptoticResult:
    """On-cut pair near x = −1.

    With A = √π/Γ(α) ((λ+α)/2)^{α−1} (2(1+x))^{−α/2} (X″/2)^{½}:
    𝖣 ≈ A[−sin πλ J_ν(X″) + cos πλ Y_ν(X″)],
    𝖢 ≈ A[cos πλ J_ν(X″) + sin πλ Y_ν(X″)].
    """
    params.require_thm34_domain()
    kind = _kind(kind)
    x = _cut_x(x)
    lam, alpha = params.lam, params.alpha
    nu = _nu_of(alpha)
    if check:
        _check_z(params, 1.0 + x, margin, "Thm4")
    b = lam + alpha
    xdd = cmath.sqrt(2.0 * b * b * (1.0 + x))
    amp = (
        _SQRT_PI
        * rgamma(alpha)
        * cmath.exp((alpha - 1.0) * cmath.log(b / 2.0))
        * (2.0 * (1.0 + x)) ** (-alpha.real / 2.0)
        * cmath.sqrt(xdd / 2.0)
    )
    jv = bessel_j(nu, xdd)
    yv = bessel_y(nu, xdd)
    sl, cl = sin_pi(lam), cos_pi(lam)
    if kind == "D":
        f = -sl * jv + cl * yv
    else:
        f = cl * jv + sl * yv
    return AsymptoticResult(amp * f, Regime.THM4, _est_two_thirds(lam, c), {"X_dprime": xdd, "kind": kind})
