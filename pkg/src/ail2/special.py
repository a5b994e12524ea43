"""Regularized incomplete beta function and the F distribution built on it."""

from __future__ import annotations

import math

_EPS = 1e-15
_TINY = 1e-300
_MAX_ITER = 100_000

# Bisection stops once the CDF is this close to the target probability.
CDF_TOLERANCE = 1e-12


def _betacf(a: float, b: float, x: float) -> float:
    # Continued fraction for I_x(a, b), modified Lentz evaluation.
    qab = a + b
    qap = a + 1.0
    qam = a - 1.0
    c = 1.0
    d = 1.0 - qab * x / qap
    if abs(d) < _TINY:
        d = _TINY
    d = 1.0 / d
    h = d
    for m in range(1, _MAX_ITER + 1):
        m2 = 2 * m
        aa = m * (b - m) * x / ((qam + m2) * (a + m2))
        d = 1.0 + aa * d
        if abs(d) < _TINY:
            d = _TINY
        c = 1.0 + aa / c
        if abs(c) < _TINY:
            c = _TINY
        d = 1.0 / d
        h *= d * c
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2))
        d = 1.0 + aa * d
        if abs(d) < _TINY:
            d = _TINY
        c = 1.0 + aa / c
        if abs(c) < _TINY:
            c = _TINY
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < _EPS:
            return h
    raise ArithmeticError(f"incomplete beta continued fraction did not converge (a={a}, b={b}, x={x})")


def _stirling_tail(z: float) -> float:
    # lgamma(z) minus its Stirling approximation, accurate for z >= 20
    z2 = z * z
    return (1.0 / 12.0 - (1.0 / 360.0 - (1.0 / 1260.0 - 1.0 / (1680.0 * z2)) / z2) / z2) / z


def _lgamma_ratio(small: float, big: float) -> float:
    # lgamma(small + big) - lgamma(big) for big >= 20, without the
    # cancellation of two huge lgamma values.
    s = small + big
    return (
        (big - 0.5) * math.log1p(small / big) + small * math.log(s) - small
        + _stirling_tail(s) - _stirling_tail(big)
    )


def _log_ratio(delta: float, base: float, value: float) -> float:
    # log(value / base) where value = base + delta; log1p keeps precision
    # near the mode, the plain quotient is safer far from it.
    t = delta / base
    if t > -0.5:
        return math.log1p(t)
    return math.log(value / base)


def _log_front(a: float, b: float, x: float) -> float:
    """log(x**a * (1-x)**b / B(a, b))."""
    if a < 20.0 and b < 20.0:
        return (
            math.lgamma(a + b) - math.lgamma(a) - math.lgamma(b)
            + a * math.log(x) + b * math.log1p(-x)
        )
    if a < 20.0:
        return _lgamma_ratio(a, b) - math.lgamma(a) + a * math.log(x) + b * math.log1p(-x)
    if b < 20.0:
        return _lgamma_ratio(b, a) - math.lgamma(b) + a * math.log(x) + b * math.log1p(-x)
    # Large shapes: the lgamma terms cancel catastrophically, so expand
    # around the mode x = a/(a+b) where both logarithms are near zero.
    s = a + b
    return (
        a * _log_ratio(x * b - (1.0 - x) * a, a, x * s)
        + b * _log_ratio((1.0 - x) * a - x * b, b, (1.0 - x) * s)
        + 0.5 * math.log(a * b / s)
        - 0.5 * math.log(2.0 * math.pi)
        + _stirling_tail(s) - _stirling_tail(a) - _stirling_tail(b)
    )


def betainc(a: float, b: float, x: float) -> float:
    """Regularized incomplete beta function I_x(a, b) for a, b > 0."""
    if a <= 0 or b <= 0:
        raise ValueError("betainc requires a > 0 and b > 0")
    if not 0.0 <= x <= 1.0:
        raise ValueError("betainc requires 0 <= x <= 1")
    if x == 0.0 or x == 1.0:
        return x
    front = math.exp(_log_front(a, b, x))
    # The continued fraction converges fast only on this side of the mode.
    if x < (a + 1.0) / (a + b + 2.0):
        return front * _betacf(a, b, x) / a
    return 1.0 - front * _betacf(b, a, 1.0 - x) / b


def f_cdf(x: float, dfn: float, dfd: float) -> float:
    """P(F <= x) for an F(dfn, dfd) variate."""
    if dfn <= 0 or dfd <= 0:
        raise ValueError("degrees of freedom must be positive")
    if x <= 0:
        return 0.0
    if math.isinf(x):
        return 1.0
    a, b = dfn / 2.0, dfd / 2.0
    u = dfn * x / (dfn * x + dfd)
    if u <= 0.5:
        return betainc(a, b, u)
    # 1 - u computed directly keeps its relative precision near u = 1
    return 1.0 - betainc(b, a, dfd / (dfn * x + dfd))


def _beta_quantile(a: float, b: float, p: float) -> float:
    lo, hi = 0.0, 1.0
    mid = 0.5
    while True:
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        value = betainc(a, b, mid)
        if abs(value - p) <= CDF_TOLERANCE:
            break
        if value < p:
            lo = mid
        else:
            hi = mid
    return mid


def f_ppf(p: float, dfn: float, dfd: float) -> float:
    """Quantile of F(dfn, dfd), found by bisecting the incomplete beta CDF.

    The search runs on the bounded beta scale u = dfn*x / (dfn*x + dfd).
    When most of the mass sits above u = 0.5 it searches the complement
    1 - u instead, which is Beta(dfd/2, dfn/2) distributed.
    """
    if dfn <= 0 or dfd <= 0:
        raise ValueError("degrees of freedom must be positive")
    if not 0.0 < p < 1.0:
        if p == 0.0:
            return 0.0
        if p == 1.0:
            return math.inf
        raise ValueError("p must lie in [0, 1]")
    a, b = dfn / 2.0, dfd / 2.0
    if betainc(a, b, 0.5) >= p:
        u = _beta_quantile(a, b, p)
        return dfd * u / (dfn * (1.0 - u))
    w = _beta_quantile(b, a, 1.0 - p)
    if w == 0.0:
        return math.inf
    return dfd * (1.0 - w) / (dfn * w)
