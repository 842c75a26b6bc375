"""Adaptive-precision summation of generalized hypergeometric series.

Many series needed here cancel badly: ``2F1(-λ, λ+2α; α+½; (1−x)/2)`` at
λ = 400 on (−1, 1) has terms near 1e130 summing to O(1).  A double
precision pass is tried first and accepted only when the observed
cancellation is mild; otherwise the sum is redone with binary precision
raised by the number of bits lost, using a thread-local mpmath context so
callers in different threads never share precision state.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass, field
from typing import Callable, Sequence

import mpmath

__all__ = ["SeriesOutcome", "pfq", "mp_context", "adaptive"]

_EPS = 2.0 ** -52
_TOL = 1e-17
_GUARD_BITS = 24
_MAX_PREC = 40000

_local = threading.local()


def mp_context() -> mpmath.ctx_mp.MPContext:
    """A private mpmath context for the calling thread."""
    ctx = getattr(_local, "ctx", None)
    if ctx is None:
        ctx = mpmath.MPContext()
        _local.ctx = ctx
    return ctx


@dataclass
class SeriesOutcome:
    """Result of a series evaluation.

    Attributes
    ----------
    value : complex
        Best available value, also when ``converged`` is false.
    terms_used : int
        Number of terms added after the leading 1.
    converged : bool
        Whether the stopping rule was met before the term cap.
    est_abs_error : float
        Absolute error estimate: last term magnitude plus rounding.
    route : str
        Which representation produced the value.
    degraded : bool
        Set when a limiting procedure (parameter offset) was used.
    precision : int
        Binary precision of the final pass (53 for the float pass).
    """

    value: complex
    terms_used: int
    converged: bool
    est_abs_error: float
    route: str = "direct"
    degraded: bool = False
    precision: int = 53
    notes: list = field(default_factory=list)

    def scaled(self, factor: complex, route: str | None = None) -> "SeriesOutcome":
        return SeriesOutcome(
            self.value * factor,
            self.terms_used,
            self.converged,
            self.est_abs_error * abs(factor),
            route or self.route,
            self.degraded,
            self.precision,
            list(self.notes),
        )


def _min_terms(numer, denom) -> int:
    # the ratio of consecutive terms only settles once n exceeds the parameters
    big = max([abs(v) for v in numer] + [abs(v) for v in denom] + [0.0])
    return int(min(big, 1e6)) + 2


def _terminates(numer) -> int | None:
    best = None
    for a in numer:
        a = complex(a)
        if a.imag == 0.0 and a.real <= 0.0 and a.real == math.floor(a.real):
            n = int(-a.real)
            best = n if best is None else min(best, n)
    return best


def _float_pass(numer, denom, u, max_terms):
    numer = [complex(a) for a in numer]
    denom = [complex(c) for c in denom]
    u = complex(u)
    nmin = _min_terms(numer, denom)
    stop_at = _terminates(numer)
    term = 1.0 + 0j
    total = 1.0 + 0j
    biggest = 1.0
    n = 0
    converged = False
    while n < max_terms:
        r = u / (n + 1)
        for a in numer:
            r *= a + n
        for c in denom:
            r /= c + n
        term *= r
        n += 1
        if term == 0:
            converged = True
            break
        total += term
        m = abs(term)
        if not math.isfinite(m) or not math.isfinite(abs(total)):
            return None
        if m > biggest:
            biggest = m
        if stop_at is not None and n > stop_at:
            converged = True
            break
        if n >= nmin and m <= _TOL * abs(total) and abs(r) < 1.0:
            converged = True
            break
    return total, n, converged, abs(term), biggest


def _mp_pass(ctx, numer, denom, u, max_terms):
    nmin = _min_terms([complex(a) for a in numer], [complex(c) for c in denom])
    stop_at = _terminates([complex(a) for a in numer])
    real = all(ctx.im(v) == 0 for v in (*numer, *denom, u))
    kind = ctx.mpf if real else ctx.mpc
    if real:
        numer = [ctx.re(ctx.mpc(a)) for a in numer]
        denom = [ctx.re(ctx.mpc(c)) for c in denom]
        u = ctx.re(ctx.mpc(u))
    else:
        numer = [ctx.mpc(a) for a in numer]
        denom = [ctx.mpc(c) for c in denom]
        u = ctx.mpc(u)
    term = kind(1)
    total = kind(1)
    biggest = ctx.mpf(1)
    tol = ctx.mpf(2) ** (-ctx.prec - 4)
    n = 0
    converged = False
    while n < max_terms:
        top = u
        for a in numer:
            top *= a + n
        bot = kind(n + 1)
        for c in denom:
            bot *= c + n
        r = top / bot
        term *= r
        n += 1
        if term == 0:
            converged = True
            break
        total += term
        m = abs(term)
        if m > biggest:
            biggest = m
        if stop_at is not None and n > stop_at:
            converged = True
            break
        if n >= nmin and m <= tol * abs(total) and abs(r) < 1:
            converged = True
            break
    return total, n, converged, abs(term), biggest


def _fixed_pass(numer, denom, u, prec: int, max_terms: int):
    """Real series in binary fixed point on Python integers.

    Inputs are exact dyadic rationals, so each term update costs one
    rounded integer division; the absolute error per term is 2^-prec.
    Returns (total, n, converged, last, biggest) as exact-scaled floats plus
    the lost-bit count, or None if a float conversion overflows.
    """
    nr = [float(complex(a).real).as_integer_ratio() for a in numer]
    dr = [float(complex(c).real).as_integer_ratio() for c in denom]
    up, uq = float(complex(u).real).as_integer_ratio()
    nmin = _min_terms([complex(a) for a in numer], [complex(c) for c in denom])
    stop_at = _terminates(numer)
    one = 1 << prec
    term = one
    total = one
    biggest = one
    n = 0
    converged = False
    while n < max_terms:
        num = up
        den = uq * (n + 1)
        for pa, qa in nr:
            num *= pa + n * qa
            den *= qa
        for pc, qc in dr:
            num *= qc
            den *= pc + n * qc
        if den < 0:
            num, den = -num, -den
        term = (2 * term * num + den) // (2 * den)
        n += 1
        if term == 0:
            converged = stop_at is not None or abs(num) < den
            break
        total += term
        m = abs(term)
        if m > biggest:
            biggest = m
        if stop_at is not None and n > stop_at:
            converged = True
            break
        if n >= nmin and abs(num) < den and (m << 60) <= abs(total):
            converged = True
            break
    try:
        lost = biggest.bit_length() - abs(total).bit_length() if total else prec
        return (total / one, n, converged, abs(term) / one, biggest / one), lost
    except OverflowError:
        return None


class _ZeroWatch:
    """Detects a sum that is zero to within rounding.

    A sum whose lost bits grow in step with the precision on two
    consecutive escalations, with an absolute error already below 2^-60 of
    the unit leading term, is returned as is instead of escalating further.
    """

    def __init__(self):
        self.prev = None
        self.hits = 0

    def is_zero(self, prec: int, lost: float, big_bits: float) -> bool:
        if self.prev is not None and lost - self.prev[1] >= (prec - self.prev[0]) - 8:
            self.hits += 1
        else:
            self.hits = 0
        self.prev = (prec, lost)
        return self.hits >= 2 and prec - big_bits >= 60


def _loss_bits(total_abs: float, biggest: float) -> float:
    if total_abs == 0:
        return float("inf")
    return max(0.0, math.log2(biggest) - math.log2(total_abs))


def pfq(
    numer: Sequence[complex],
    denom: Sequence[complex],
    u: complex,
    *,
    max_terms: int = 20000,
    route: str = "direct",
) -> SeriesOutcome:
    """Sum ``Σ Π(a_i)_n / Π(c_j)_n · uⁿ/n!`` to double precision.

    The stopping rule requires the term index to exceed the parameter
    moduli (so the term ratio has settled), the ratio to be below one and
    the last term to be below 1e-17 of the running sum.  Terminating series
    stop after their last nonzero term.

    Returns
    -------
    SeriesOutcome
        ``est_abs_error`` combines the last-term magnitude with the
        rounding error implied by the largest term and the working
        precision.
    """
    res = _float_pass(numer, denom, u, max_terms)
    if res is not None:
        total, n, conv, last, biggest = res
        loss = _loss_bits(abs(total), biggest)
        if loss <= 6.0:
            err = last + 4 * _EPS * biggest * max(1.0, math.sqrt(n))
            return SeriesOutcome(total, n, conv, err, route, False, 53)
        prec = int(53 + loss + _GUARD_BITS) if math.isfinite(loss) else 256
    else:
        prec = 160
    return _pfq_mp(numer, denom, u, max_terms, route, prec)


def _pfq_fixed(numer, denom, u, max_terms, route, prec):
    watch = _ZeroWatch()
    while True:
        prec = min(prec, _MAX_PREC)
        out = _fixed_pass(numer, denom, u, prec, max_terms)
        if out is None:
            return None
        (total, n, conv, last, biggest), lost = out
        if total == 0 or prec - lost >= 60 or prec >= _MAX_PREC:
            break
        if watch.is_zero(prec, lost, math.log2(biggest)):
            break
        prec = int(lost + 53 + _GUARD_BITS + 16)
    err = last + biggest * 2.0 ** (-prec + 4) * max(1.0, math.sqrt(n)) + _EPS * abs(total)
    return SeriesOutcome(complex(total), n, bool(conv), err, route, False, prec)


def _pfq_mp(numer, denom, u, max_terms, route, prec):
    if all(complex(v).imag == 0 for v in (*numer, *denom, u)):
        out = _pfq_fixed(numer, denom, u, max_terms, route, prec)
        if out is not None:
            return out
    ctx = mp_context()
    saved = ctx.prec
    watch = _ZeroWatch()
    try:
        while True:
            prec = min(prec, _MAX_PREC)
            ctx.prec = prec
            total, n, conv, last, biggest = _mp_pass(ctx, numer, denom, u, max_terms)
            mag_total = abs(total)
            if mag_total == 0:
                break
            big_bits = float(ctx.log(biggest, 2))
            lost = big_bits - float(ctx.log(mag_total, 2))
            if prec - lost >= 60 or prec >= _MAX_PREC:
                break
            if watch.is_zero(prec, lost, big_bits):
                break
            prec = int(lost + 53 + _GUARD_BITS + 16)
        value = complex(total)
        err = float(last) + float(biggest) * 2.0 ** (-prec + 4) + _EPS * abs(value)
        return SeriesOutcome(value, n, bool(conv), err, route, False, prec)
    finally:
        ctx.prec = saved


def adaptive(fn: Callable, *, start_bits: int = 80, need_bits: int = 60) -> tuple[complex, float]:
    """Evaluate ``fn(ctx) -> (value, scale)`` with growing precision.

    ``scale`` is the magnitude of the largest quantity that entered the
    computation; precision is raised until ``value`` keeps ``need_bits``
    significant bits relative to it.  Returns ``(value, rel_error)``.
    """
    ctx = mp_context()
    saved = ctx.prec
    prec = start_bits
    try:
        while True:
            ctx.prec = min(prec, _MAX_PREC)
            value, scale = fn(ctx)
            av = abs(value)
            if av == 0 or scale == 0:
                return complex(value), 1.0 if av == 0 else _EPS
            lost = max(0.0, float(ctx.log(scale, 2) - ctx.log(av, 2)))
            if prec - lost >= need_bits:
                rel = 2.0 ** (-(prec - lost) + 2)
                return complex(value), max(rel, _EPS)
            if ctx.prec >= _MAX_PREC:
                return complex(value), 1.0
            prec = int(max(prec * 2, lost + need_bits + 16))
    finally:
        ctx.prec = saved
