"""Bessel functions J, Y, I, K of real order and complex argument.

Small and moderate arguments use the ascending series (summed with
adaptive precision, see :mod:`gegenbauer._series`); for
``|w| >= 20 + ν²/2`` in the right half plane the complete Hankel
expansion is used, truncated at its smallest term.  Y and K are formed
from J_{±ν} and I_{±ν}; at integer order the limit is taken from symmetric
order offsets of 1e-5 and 2e-5 with one Richardson step.
"""

from __future__ import annotations

import cmath
import math

from ._series import _mp_pass, adaptive, pfq
from .errors import AccuracyError, DomainError
from .numeric_core import rgamma

__all__ = [
    "bessel_j",
    "bessel_y",
    "bessel_i",
    "bessel_k",
    "k_rotation",
    "hankel_j",
    "bessel_j_reduced",
    "bessel_i_reduced",
    "crossover_radius",
    "ORDER_OFFSET",
]

ORDER_OFFSET = 1e-5
MAX_ORDER = 50.0
_SERIES_CAP = 300


def crossover_radius(nu: float) -> float:
    """Radius beyond which the Hankel expansion replaces the series."""
    return 20.0 + 0.5 * nu * nu


def _check_order(nu) -> float:
    if isinstance(nu, complex):
        if nu.imag != 0.0:
            raise DomainError("complex Bessel order is not supported")
        nu = nu.real
    nu = float(nu)
    if not math.isfinite(nu) or abs(nu) > MAX_ORDER:
        raise DomainError(f"|nu| must be <= {MAX_ORDER:g}, got {nu}")
    return nu


def _is_int(nu: float) -> bool:
    return nu == math.floor(nu)


def _near_int(nu: float) -> bool:
    return abs(nu - round(nu)) < 1e-12


def _in_hankel_region(nu: float, w: complex) -> bool:
    return abs(w) >= crossover_radius(nu) and w.real >= 0.0


def _term_cap(w: complex) -> int:
    return max(_SERIES_CAP, int(3 * abs(w)) + 60)


# ---------------------------------------------------------------------------
# Hankel expansion


def _hankel_terms(nu: float, w: complex):
    """Yield a_k(ν)/w^k until the asymptotic series stops improving."""
    mu = 4.0 * nu * nu
    t = 1.0 + 0j
    yield 0, t
    prev = 1.0
    for k in range(1, 200):
        t = t * (mu - (2 * k - 1) ** 2) / (k * 8.0 * w)
        m = abs(t)
        if m == 0.0:
            return
        if k > abs(nu) + 1 and m > prev:
            return
        yield k, t
        if m < 1e-18:
            return
        prev = m


def _hankel_pq(nu: float, w: complex) -> tuple[complex, complex]:
    p = 0j
    q = 0j
    for k, t in _hankel_terms(nu, w):
        sgn = -1.0 if (k // 2) % 2 else 1.0
        if k % 2 == 0:
            p += sgn * t
        else:
            q += sgn * t
    return p, q


def _hankel_jy(nu: float, w: complex) -> tuple[complex, complex]:
    p, q = _hankel_pq(nu, w)
    omega = w - (0.5 * nu + 0.25) * math.pi
    c, s = cmath.cos(omega), cmath.sin(omega)
    amp = cmath.sqrt(2.0 / (math.pi * w))
    return amp * (p * c - q * s), amp * (p * s + q * c)


def _hankel_k(nu: float, w: complex) -> complex:
    total = 0j
    for _, t in _hankel_terms(nu, w):
        total += t
    return cmath.sqrt(math.pi / (2.0 * w)) * cmath.exp(-w) * total


def hankel_j(nu: float, w: complex) -> complex:
    """Two-term Hankel approximation to J_ν(w).

    J_ν(w) ≈ √(2/(πw)) [cos ω − (4ν²−1)/(8w) sin ω],  ω = w − νπ/2 − π/4.

    Raises
    ------
    AccuracyError
        If |w| < 10 + ν²/2, where the omitted terms are not small.
    """
    nu = _check_order(nu)
    w = complex(w)
    if abs(w) < 10.0 + 0.5 * nu * nu:
        raise AccuracyError(f"|w|={abs(w):.3g} is below the Hankel cutoff {10.0 + 0.5 * nu * nu:.3g}")
    omega = w - (0.5 * nu + 0.25) * math.pi
    corr = (4.0 * nu * nu - 1.0) / (8.0 * w)
    return cmath.sqrt(2.0 / (math.pi * w)) * (cmath.cos(omega) - corr * cmath.sin(omega))


# ---------------------------------------------------------------------------
# ascending series


def _ascending(nu: float, w: complex, sign: int) -> complex:
    """(w/2)^ν Σ (±w²/4)^k / (k! Γ(ν+k+1)) in double precision."""
    u = sign * w * w / 4.0
    out = pfq([], [nu + 1.0], u, max_terms=_term_cap(w), route="series")
    return cmath.exp(nu * cmath.log(w / 2.0)) * rgamma(nu + 1.0) * out.value


def _ascending_mp(ctx, nu: float, w: complex, sign: int):
    wm = ctx.mpc(w)
    u = sign * wm * wm / 4
    total, _, _, _, biggest = _mp_pass(ctx, [], [ctx.mpf(nu) + 1], u, _term_cap(w))
    pref = ctx.power(wm / 2, nu) * ctx.rgamma(ctx.mpf(nu) + 1)
    return pref * total, abs(pref) * biggest


def _y_series(nu: float, w: complex) -> complex:
    def fn(ctx):
        jp, sp = _ascending_mp(ctx, nu, w, -1)
        jm, sm = _ascending_mp(ctx, -nu, w, -1)
        s = ctx.sinpi(nu)
        val = (jp * ctx.cospi(nu) - jm) / s
        return val, max(sp, sm) / abs(s)

    return adaptive(fn)[0]


def _k_series(nu: float, w: complex) -> complex:
    def fn(ctx):
        ip, sp = _ascending_mp(ctx, nu, w, 1)
        im, sm = _ascending_mp(ctx, -nu, w, 1)
        s = ctx.sinpi(nu)
        val = ctx.pi / 2 * (im - ip) / s
        return val, ctx.pi / 2 * max(sp, sm) / abs(s)

    return adaptive(fn)[0]


def _order_limit(fn, nu: float) -> complex:
    """Limit of fn at integer ν from symmetric offsets δ and 2δ (Richardson)."""
    d = ORDER_OFFSET
    m1 = 0.5 * (fn(nu + d) + fn(nu - d))
    m2 = 0.5 * (fn(nu + 2 * d) + fn(nu - 2 * d))
    return (4.0 * m1 - m2) / 3.0


# ---------------------------------------------------------------------------
# public evaluators


def bessel_j(nu: float, w: complex, *, method: str = "auto") -> complex:
    """Bessel function of the first kind J_ν(w), principal branch.

    Parameters
    ----------
    nu : float
        Real order with |ν| ≤ 50.
    w : complex
        Argument, −π < arg w ≤ π.
    method : {"auto", "series", "hankel"}
        Force one evaluator; ``auto`` switches at ``crossover_radius(nu)``.

    Raises
    ------
    DomainError
        At w = 0 for negative non-integer ν.
    """
    nu = _check_order(nu)
    w = complex(w)
    if nu < 0 and _is_int(nu):
        n = int(-nu)
        return (-1) ** n * bessel_j(float(n), w, method=method)
    if w == 0:
        if nu == 0:
            return 1.0 + 0j
        if nu > 0:
            return 0j
        raise DomainError("J_nu(0) is infinite for negative non-integer order")
    if method == "series" or (method == "auto" and not (abs(w) >= crossover_radius(nu))):
        return _ascending(nu, w, -1)
    if method not in ("auto", "hankel"):
        raise ValueError(f"unknown method {method!r}")
    if w.real >= 0.0:
        return _hankel_jy(nu, w)[0]
    # J_ν(w e^{±iπ}) = e^{±iπν} J_ν(w)
    phase = cmath.exp((1j if w.imag >= 0 else -1j) * math.pi * nu)
    return phase * _hankel_jy(nu, -w)[0]


def bessel_y(nu: float, w: complex) -> complex:
    """Bessel function of the second kind, Y_ν = (J_ν cos πν − J_{−ν})/sin πν.

    Integer orders are evaluated from the symmetric offsets ν ± 1e-5 and
    ν ± 2e-5 combined by Richardson extrapolation.

    Raises
    ------
    DomainError
        At w = 0.
    """
    nu = _check_order(nu)
    w = complex(w)
    if w == 0:
        raise DomainError("Y_nu is singular at w = 0")
    if nu < 0 and _is_int(nu):
        n = int(-nu)
        return (-1) ** n * bessel_y(float(n), w)
    if _in_hankel_region(nu, w):
        return _hankel_jy(nu, w)[1]
    if _near_int(nu):
        return _order_limit(lambda v: _y_series(v, w), nu)
    return _y_series(nu, w)


def bessel_i(nu: float, w: complex) -> complex:
    """Modified Bessel function I_ν(w), principal branch."""
    nu = _check_order(nu)
    w = complex(w)
    if nu < 0 and _is_int(nu):
        nu = -nu
    if w == 0:
        if nu == 0:
            return 1.0 + 0j
        if nu > 0:
            return 0j
        raise DomainError("I_nu(0) is infinite for negative non-integer order")
    if abs(w) >= crossover_radius(nu):
        # I_ν(w) = e^{±iνπ/2} J_ν(w e^{∓iπ/2}); the rotated point has Re >= 0
        if w.imag > 0 or (w.imag == 0 and w.real < 0):
            return cmath.exp(0.5j * math.pi * nu) * bessel_j(nu, -1j * w)
        return cmath.exp(-0.5j * math.pi * nu) * bessel_j(nu, 1j * w)
    return _ascending(nu, w, 1)


def bessel_k(nu: float, w: complex) -> complex:
    """Macdonald function K_ν(w) = (π/2)(I_{−ν} − I_ν)/sin πν.

    Raises
    ------
    DomainError
        At w = 0.
    """
    nu = abs(_check_order(nu))
    w = complex(w)
    if w == 0:
        raise DomainError("K_nu is singular at w = 0")
    if _in_hankel_region(nu, w):
        return _hankel_k(nu, w)
    if _near_int(nu):
        return _order_limit(lambda v: _k_series(v, w), nu)
    return _k_series(nu, w)


def k_rotation(nu: float, x: float, sign: int) -> complex:
    """K_ν(e^{±iπ/2} x) = ∓(iπ/2) e^{∓iπν/2} [J_ν(x) ∓ i Y_ν(x)] for x > 0."""
    nu = _check_order(nu)
    x = float(x)
    if x <= 0:
        raise DomainError("k_rotation needs x > 0")
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    s = float(sign)
    jv = bessel_j(nu, x)
    yv = bessel_y(nu, x)
    return -s * 0.5j * math.pi * cmath.exp(-s * 0.5j * math.pi * nu) * (jv - s * 1j * yv)


# ---------------------------------------------------------------------------
# reduced (entire) forms used by the Bessel-type asymptotics


def _reduced(nu: float, s: complex, sign: int) -> complex:
    s = complex(s)
    if nu < 0 and _is_int(nu):
        n = int(-nu)
        return (sign * s) ** n * _reduced(float(n), s, sign)
    radius = 2.0 * math.sqrt(abs(s))
    if radius >= crossover_radius(nu):
        u = 2.0 * cmath.sqrt(s)
        f = bessel_j(nu, u) if sign < 0 else bessel_i(nu, u)
        return cmath.exp(-nu * cmath.log(u / 2.0)) * f
    out = pfq([], [nu + 1.0], sign * s, max_terms=_term_cap(radius), route="series")
    return rgamma(nu + 1.0) * out.value


def bessel_j_reduced(nu: float, s: complex) -> complex:
    """Λ_ν(s) = Σ (−s)^k / (k! Γ(ν+k+1)) = (U/2)^{−ν} J_ν(U) with s = U²/4.

    Entire in s, so no branch of U has to be chosen.
    """
    return _reduced(_check_order(nu), s, -1)


def bessel_i_reduced(nu: float, s: complex) -> complex:
    """Σ s^k / (k! Γ(ν+k+1)) = (U/2)^{−ν} I_ν(U) with s = U²/4."""
    return _reduced(_check_order(nu), s, 1)
