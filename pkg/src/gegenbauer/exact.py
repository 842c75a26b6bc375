"""Convergent-series ("exact") evaluation of C_λ^α, D_λ^α and the on-cut pair.

The first-kind function is

    C_λ^α(z) = Γ(λ+2α)/(Γ(λ+1)Γ(2α)) · 2F1(−λ, λ+2α; α+½; (1−z)/2).

The second-kind function is available through three representations:

route A
    e^{iπα}(2(z−1))^{−λ−2α} Γ(λ+2α)/(Γ(λ+α+1)Γ(α))
    · 2F1(λ+2α, λ+α+½; 2λ+2α+1; 2/(1−z)), for z away from [−1, 1];
route B
    e^{iπα}/(2 cos πα) · [C_λ^α(z) − √π/(Γ(α)Γ(3/2−α)) (z²−1)^{½−α}
    · 2F1(1−λ−2α, λ+1; 3/2−α; (1−z)/2)], for z near +1.  This is the
    connection formula with C_{λ+2α−1}^{1−α}, after the gamma factors were
    simplified with the duplication formula so that integer α is harmless;
route C
    the expansion about z = −1 with the phase e^{∓iπ(λ+2α)} chosen by the
    half plane (or cut side) of z.

Route B and route C subtract nearly equal quantities for large |λ|, so every
route is evaluated in a private mpmath context whose precision is raised
until the result keeps at least 60 significant bits.
"""

from __future__ import annotations

import cmath
import math

from ._series import SeriesOutcome, _mp_pass, mp_context, pfq
from .errors import BranchError, DomainError, NoRouteError, OutOfRegionError, PoleError
from .numeric_core import BranchedPoint, Parameters, Side, gamma_ratio, is_nonpositive_integer, rgamma

__all__ = [
    "SeriesOutcome",
    "hyp2f1",
    "gegenbauer_c",
    "gegenbauer_d",
    "ferrers_c_cut",
    "ferrers_d_cut",
    "gegenbauer_poly",
    "d_route_moduli",
    "HALF_INTEGER_COS",
    "ALPHA_OFFSET",
]

HALF_INTEGER_COS = 0.05
ALPHA_OFFSET = 1e-5
ROUTE_A_MAX = 0.9
ROUTE_BC_MAX = 0.8
_MAX_PREC = 40000


# ---------------------------------------------------------------------------
# 2F1


def _terminating_index(v: complex) -> int | None:
    return int(-v.real) if is_nonpositive_integer(v) else None


def _check_c(a: complex, b: complex, c: complex) -> None:
    if not is_nonpositive_integer(c):
        return
    stops = [n for n in (_terminating_index(a), _terminating_index(b)) if n is not None]
    if not stops or min(stops) > int(-c.real):
        raise PoleError(f"2F1 lower parameter c={c} is a nonpositive integer")


def hyp2f1(a: complex, b: complex, c: complex, u: complex, *, max_terms: int = 20000) -> SeriesOutcome:
    """Gauss hypergeometric function by its power series.

    The direct series in ``u`` is used when ``|u| <= |u/(u−1)|``, otherwise
    the Pfaff form ``(1−u)^{−a} 2F1(a, c−b; c; u/(u−1))``.  When neither
    modulus is below one the outcome is returned with ``converged=False``
    and a NaN value, unless the series terminates.

    Raises
    ------
    PoleError
        If ``c`` is a nonpositive integer not shielded by an earlier
        terminating upper parameter.
    """
    a, b, c, u = complex(a), complex(b), complex(c), complex(u)
    _check_c(a, b, c)
    if u == 0:
        return SeriesOutcome(1.0 + 0j, 0, True, 0.0, "direct")
    m_direct = abs(u)
    m_pfaff = abs(u / (u - 1.0)) if u != 1 else math.inf
    terminating = _terminating_index(a) is not None or _terminating_index(b) is not None
    if min(m_direct, m_pfaff) >= 1.0 and not terminating:
        return SeriesOutcome(complex(math.nan, math.nan), 0, False, math.inf, "none")
    if m_direct <= m_pfaff or (terminating and m_pfaff >= 1.0):
        return pfq([a, b], [c], u, max_terms=max_terms, route="direct")
    if _terminating_index(b) is not None and _terminating_index(a) is None:
        a, b = b, a
    w = u / (u - 1.0)
    out = pfq([a, c - b], [c], w, max_terms=max_terms, route="pfaff")
    return out.scaled(cmath.exp(-a * cmath.log(1.0 - u)))


# ---------------------------------------------------------------------------
# C


def _c_prefactor(lam: complex, alpha: complex) -> complex:
    top = lam + 2.0 * alpha
    if is_nonpositive_integer(top):
        if is_nonpositive_integer(2.0 * alpha):
            return gamma_ratio(top, 2.0 * alpha) * rgamma(lam + 1.0)
        if is_nonpositive_integer(lam + 1.0):
            return gamma_ratio(top, lam + 1.0) * rgamma(2.0 * alpha)
        raise PoleError(f"Gamma(lambda + 2 alpha) has a pole at {top}")
    if is_nonpositive_integer(lam + 1.0):
        return 0j
    return gamma_ratio(top, lam + 1.0) * rgamma(2.0 * alpha)


def c_region_ok(z: complex) -> bool:
    """True where one of the two C series converges."""
    return abs(1.0 - z) < 2.0 or z.real > 0.0


def gegenbauer_c(params: Parameters, p: BranchedPoint, *, max_terms: int = 20000) -> SeriesOutcome:
    """First-kind Gegenbauer function by its hypergeometric series.

    Parameters
    ----------
    params : Parameters
        Degree λ and order α.
    p : BranchedPoint
        Argument.  C is continuous across (−1, 1), so ``p.side`` is ignored.

    Returns
    -------
    SeriesOutcome

    Raises
    ------
    OutOfRegionError
        When ``|1−z| >= 2`` and ``Re z <= 0``, unless λ is a nonnegative
        integer (the series then terminates).
    PoleError
        When the gamma prefactor is singular.
    """
    lam, alpha = params.lam, params.alpha
    z = p.z
    if not c_region_ok(z) and not is_nonpositive_integer(-lam):
        raise OutOfRegionError(f"C series does not converge at z={z}")
    pref = _c_prefactor(lam, alpha)
    if pref == 0:
        return SeriesOutcome(0j, 0, True, 0.0, "C")
    out = hyp2f1(-lam, lam + 2.0 * alpha, alpha + 0.5, (1.0 - z) / 2.0, max_terms=max_terms)
    if not math.isfinite(abs(out.value)):
        raise OutOfRegionError(f"C series does not converge at z={z}")
    return out.scaled(pref, route="C:" + out.route)


# ---------------------------------------------------------------------------
# D: multiprecision building blocks


def _mp_log(ctx, w, side: Side):
    if ctx.im(w) == 0 and ctx.re(w) < 0:
        arg = -ctx.pi if side is Side.BELOW else ctx.pi
        return ctx.mpc(ctx.log(-ctx.re(w)), arg)
    return ctx.log(w)


def _mp_pow(ctx, w, e, side: Side = Side.OFF):
    return ctx.exp(e * _mp_log(ctx, w, side))


def _mp_f21(ctx, a, b, c, u, max_terms):
    """2F1 in the current context; returns (value, scale, terms, converged)."""
    m_direct = abs(u)
    m_pfaff = abs(u / (u - 1))
    if m_direct <= m_pfaff:
        total, n, conv, _, big = _mp_pass(ctx, [a, b], [c], u, max_terms)
        return total, big, n, conv
    w = u / (u - 1)
    fac = ctx.power(1 - u, -a)
    total, n, conv, _, big = _mp_pass(ctx, [a, c - b], [c], w, max_terms)
    return fac * total, abs(fac) * big, n, conv


def _route_a(ctx, lam, alpha, p: BranchedPoint, max_terms):
    z = ctx.mpc(p.z)
    a = lam + 2 * alpha
    f, big, n, conv = _mp_f21(ctx, a, lam + alpha + ctx.mpf(0.5), 2 * lam + 2 * alpha + 1, 2 / (1 - z), max_terms)
    pref = (
        ctx.expjpi(alpha)
        * _mp_pow(ctx, 2 * (z - 1), -a, p.side)
        * ctx.gamma(a)
        * ctx.rgamma(lam + alpha + 1)
        * ctx.rgamma(alpha)
    )
    return pref * f, abs(pref) * big, n, conv


def _route_b(ctx, lam, alpha, p: BranchedPoint, max_terms):
    z = ctx.mpc(p.z)
    u = (1 - z) / 2
    half = ctx.mpf(0.5)
    f1, big1, n1, c1 = _mp_f21(ctx, -lam, lam + 2 * alpha, alpha + half, u, max_terms)
    p1 = ctx.gamma(lam + 2 * alpha) * ctx.rgamma(lam + 1) * ctx.rgamma(2 * alpha)
    f2, big2, n2, c2 = _mp_f21(ctx, 1 - lam - 2 * alpha, lam + 1, 3 * half - alpha, u, max_terms)
    e = half - alpha
    p2 = (
        ctx.sqrt(ctx.pi)
        * ctx.rgamma(alpha)
        * ctx.rgamma(3 * half - alpha)
        * _mp_pow(ctx, z - 1, e, p.side)
        * _mp_pow(ctx, z + 1, e, p.side)
    )
    outer = ctx.expjpi(alpha) / (2 * ctx.cospi(alpha))
    val = outer * (p1 * f1 - p2 * f2)
    scale = abs(outer) * max(abs(p1) * big1, abs(p2) * big2)
    return val, scale, n1 + n2, c1 and c2


def _route_c(ctx, lam, alpha, p: BranchedPoint, max_terms):
    s = p.half_plane()
    if s == 0:
        raise BranchError("route C needs a half plane or a cut side")
    z = ctx.mpc(p.z)
    v = (1 + z) / 2
    half = ctx.mpf(0.5)
    e = half - alpha
    f1, big1, n1, c1 = _mp_f21(ctx, half - lam - alpha, lam + alpha + half, alpha + half, v, max_terms)
    f2, big2, n2, c2 = _mp_f21(ctx, half - lam - alpha, lam + alpha + half, 3 * half - alpha, v, max_terms)
    t1 = ctx.gamma(lam + 2 * alpha) * ctx.rgamma(lam + 1) * ctx.gamma(e) * _mp_pow(ctx, (1 - z) / 2, e, p.side.flipped())
    t2 = ctx.expjpi(s * (alpha - half)) * ctx.gamma(alpha - half) * _mp_pow(ctx, v, e, p.side)
    outer = ctx.expjpi(alpha) * ctx.power(2, -2 * alpha) * ctx.rgamma(alpha) / ctx.sqrt(ctx.pi) * ctx.expjpi(-s * (lam + 2 * alpha))
    val = outer * (t1 * f1 + t2 * f2)
    scale = abs(outer) * max(abs(t1) * big1, abs(t2) * big2)
    return val, scale, n1 + n2, c1 and c2


_ROUTES = {"A": _route_a, "B": _route_b, "C": _route_c}


def _run_route(name: str, lam: complex, alpha: complex, p: BranchedPoint, max_terms: int) -> SeriesOutcome:
    fn = _ROUTES[name]
    ctx = mp_context()
    saved = ctx.prec
    prec = 96
    try:
        while True:
            ctx.prec = prec
            val, scale, n, conv = fn(ctx, ctx.mpc(lam), ctx.mpc(alpha), p, max_terms)
            av = abs(val)
            lost = 0.0 if av == 0 or scale == 0 else max(0.0, float(ctx.log(scale, 2) - ctx.log(av, 2)))
            if (av != 0 and prec - lost >= 60) or prec >= _MAX_PREC or scale == 0:
                break
            if av == 0 and prec >= 2048:
                break
            prec = min(_MAX_PREC, int(max(2 * prec, lost + 90)))
        value = complex(val)
        rel = 2.0 ** (-(prec - lost) + 3) if av != 0 else 1.0
        err = max(rel, 2.0 ** -53) * abs(value)
        return SeriesOutcome(value, n, bool(conv), err, name, False, prec)
    finally:
        ctx.prec = saved


def d_route_moduli(z: complex) -> dict[str, float]:
    """Convergence moduli of the series behind routes A, B and C at z."""
    z = complex(z)

    def _m(u: complex) -> float:
        if u == 1:
            return math.inf
        return min(abs(u), abs(u / (u - 1.0)))

    out = {}
    out["A"] = _m(2.0 / (1.0 - z)) if z != 1 else math.inf
    out["B"] = _m((1.0 - z) / 2.0)
    out["C"] = _m((1.0 + z) / 2.0)
    return out


def _near_half_integer(alpha: complex) -> bool:
    return abs(cmath.cos(math.pi * alpha)) <= HALF_INTEGER_COS


def _alpha_limit(route: str, params: Parameters, p: BranchedPoint, max_terms: int) -> SeriesOutcome:
    """Value at a half-integer-like α from offsets ±δ, ±2δ (Richardson)."""
    lam, alpha = params.lam, params.alpha
    vals = []
    for k in (1, 2):
        d = k * ALPHA_OFFSET
        hi = _run_route(route, lam, alpha + d, p, max_terms)
        lo = _run_route(route, lam, alpha - d, p, max_terms)
        vals.append((hi, lo))
    m1 = 0.5 * (vals[0][0].value + vals[0][1].value)
    m2 = 0.5 * (vals[1][0].value + vals[1][1].value)
    value = (4.0 * m1 - m2) / 3.0
    # what is left is the O(δ⁴) extrapolation remainder plus the cancellation
    # between the two offsets
    err = abs(m1 - m2) * 1e-6 + sum(o.est_abs_error for pair in vals for o in pair)
    terms = sum(o.terms_used for pair in vals for o in pair)
    conv = all(o.converged for pair in vals for o in pair)
    return SeriesOutcome(value, terms, conv, err, route + "*", True, max(o.precision for pair in vals for o in pair))


def _check_d_point(p: BranchedPoint) -> None:
    z = p.z
    if abs(z - 1.0) == 0 or abs(z + 1.0) == 0:
        raise DomainError("D is singular at z = +-1")
    if p.is_real and p.side is Side.OFF and z.real < 1.0:
        raise BranchError(f"z={z.real:g} lies on the cut of D; choose side=above or below")


def gegenbauer_d(
    params: Parameters,
    p: BranchedPoint,
    *,
    route: str = "auto",
    max_terms: int = 20000,
) -> SeriesOutcome:
    """Second-kind Gegenbauer function D_λ^α(z).

    Parameters
    ----------
    params : Parameters
    p : BranchedPoint
        Real points below 1 must carry ``side`` above or below.
    route : {"auto", "A", "B", "C"}
        ``auto`` uses route A when its series modulus is at most 0.9,
        otherwise whichever of B and C has the smaller modulus (at most
        0.8).  Near half-integer α (|cos πα| <= 0.05) routes B and C are
        singular term by term; if route A is unavailable the value is
        extrapolated from α ± 1e-5, α ± 2e-5 and flagged ``degraded``.

    Returns
    -------
    SeriesOutcome
        ``route`` names the representation used.

    Raises
    ------
    BranchError
        For real z < 1 without a side.
    NoRouteError
        When no representation converges at z.
    """
    _check_d_point(p)
    lam, alpha = params.lam, params.alpha
    if is_nonpositive_integer(lam + 2.0 * alpha):
        raise PoleError("Gamma(lambda + 2 alpha) has a pole")
    mod = d_route_moduli(p.z)
    half = _near_half_integer(alpha)
    route = route.upper() if route != "auto" else route
    if route in _ROUTES:
        if mod[route] >= 1.0:
            raise NoRouteError(f"route {route} does not converge at z={p.z}")
        if route != "A" and half:
            return _alpha_limit(route, params, p, max_terms)
        return _run_route(route, lam, alpha, p, max_terms)
    if route != "auto":
        raise ValueError(f"unknown route {route!r}")
    if mod["A"] <= ROUTE_A_MAX:
        return _run_route("A", lam, alpha, p, max_terms)
    near = "B" if mod["B"] <= mod["C"] else "C"
    if mod[near] <= ROUTE_BC_MAX:
        if half:
            return _alpha_limit(near, params, p, max_terms)
        return _run_route(near, lam, alpha, p, max_terms)
    if mod["A"] < 1.0:
        return _run_route("A", lam, alpha, p, max_terms)
    raise NoRouteError(f"no convergent representation of D at z={p.z}")


def ferrers_d_cut(params: Parameters, x: float, **kw) -> complex:
    """On-cut second-kind function −i e^{−iπα}(e^{iπα}D(x+i0) − e^{−iπα}D(x−i0))."""
    x = _check_cut_x(x)
    alpha = params.alpha
    up = gegenbauer_d(params, BranchedPoint.above(x), **kw).value
    dn = gegenbauer_d(params, BranchedPoint.below(x), **kw).value
    return -1j * cmath.exp(-1j * math.pi * alpha) * (cmath.exp(1j * math.pi * alpha) * up - cmath.exp(-1j * math.pi * alpha) * dn)


def ferrers_c_cut(params: Parameters, x: float, **kw) -> complex:
    """On-cut first-kind function e^{−iπα}(e^{iπα}D(x+i0) + e^{−iπα}D(x−i0)).

    Equal to C_λ^α(x); computing it from the two boundary values of D keeps
    it an independent check on :func:`gegenbauer_c`.
    """
    x = _check_cut_x(x)
    alpha = params.alpha
    up = gegenbauer_d(params, BranchedPoint.above(x), **kw).value
    dn = gegenbauer_d(params, BranchedPoint.below(x), **kw).value
    return cmath.exp(-1j * math.pi * alpha) * (cmath.exp(1j * math.pi * alpha) * up + cmath.exp(-1j * math.pi * alpha) * dn)


def _check_cut_x(x) -> float:
    if isinstance(x, complex):
        if x.imag != 0:
            raise DomainError("on-cut functions need real x")
        x = x.real
    x = float(x)
    if not -1.0 < x < 1.0:
        raise DomainError(f"x must lie in (-1, 1), got {x}")
    return x


def gegenbauer_poly(n: int, alpha: float, x: float) -> float:
    """Gegenbauer polynomial by the three-term recurrence.

    C_0 = 1, C_1 = 2αx, k C_k = 2x(k+α−1) C_{k−1} − (k+2α−2) C_{k−2}.
    """
    if n < 0 or int(n) != n:
        raise DomainError("n must be a nonnegative integer")
    if n > 500:
        raise DomainError("n must be <= 500")
    n = int(n)
    prev, cur = 1.0, 2.0 * alpha * x
    if n == 0:
        return prev
    for k in range(2, n + 1):
        prev, cur = cur, (2.0 * x * (k + alpha - 1.0) * cur - (k + 2.0 * alpha - 2.0) * prev) / k
    return cur
