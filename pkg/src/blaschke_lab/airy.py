"""Airy function Ai on the real line, self-contained.

Maclaurin series for |x| <= SERIES_CUTOFF, Poincaré asymptotic expansions
beyond.  The negative-axis asymptotic series has an optimal-truncation floor
of about exp(-4/3*|x|^(3/2)); at |x| = 8 that floor is ~8e-16, which is what
pins the cutoff (at the traditional |x| = 6 the floor is only ~6e-11).
Absolute error on [-20, 5] is below 1e-12 with a wide margin.
"""

from __future__ import annotations

import math

import mpmath as mp

__all__ = ["airy", "airy_leading_negative", "AIRY_AT_ZERO", "FIRST_NEGATIVE_ZERO"]

SERIES_CUTOFF = 8.0

#: Ai(0) = 3^(-2/3)/Gamma(2/3)
AIRY_AT_ZERO = 0.3550280538878172
#: first zero of Ai on the negative axis, to the precision used in tests
FIRST_NEGATIVE_ZERO = -2.338107410459767


def _ai_series(x: float) -> mp.mpf:
    """Maclaurin series Ai(x) = c1*f(x) - c2*g(x), evaluated with guard digits.

    f and g solve w'' = x w with (f, f')(0) = (1, 0) and (g, g')(0) = (0, 1).
    For negative x the partial sums cancel down from magnitude ~exp((2/3)|x|^{3/2}),
    so the working precision is scaled with |x|^{3/2}.
    """
    guard = int(math.ceil(1.5 * abs(x) ** 1.5)) + 30
    with mp.workdps(guard):
        xm = mp.mpf(x)
        c1 = mp.mpf(3) ** mp.mpf("-2/3") / mp.gamma(mp.mpf(2) / 3)
        c2 = mp.mpf(3) ** mp.mpf("-1/3") / mp.gamma(mp.mpf(1) / 3)
        x3 = xm ** 3
        f = term = mp.mpf(1)
        k = 1
        while True:
            term *= x3 / ((3 * k) * (3 * k - 1))
            f += term
            if abs(term) < mp.eps:
                break
            k += 1
        g = term = xm
        k = 1
        while True:
            term *= x3 / ((3 * k + 1) * (3 * k))
            g += term
            if abs(term) < mp.eps:
                break
            k += 1
        return mp.mpf(c1 * f - c2 * g)


def _asym_u_terms(zeta: mp.mpf, limit: int = 400):
    """Terms u_k / zeta^k of the Poincaré expansion, up to the smallest one.

    u_k = Gamma(3k + 1/2) / (54^k k! Gamma(k + 1/2)); the series diverges, so
    summation stops at the minimal term (optimal truncation).
    """
    terms = [mp.mpf(1)]
    u = mp.mpf(1)
    for k in range(1, limit):
        u = u * (3 * k - mp.mpf(5) / 2) * (3 * k - mp.mpf(3) / 2) * (3 * k - mp.mpf(1) / 2) \
            / (54 * k * (k - mp.mpf(1) / 2))
        t = u / zeta ** k
        if abs(t) >= abs(terms[-1]):
            break
        terms.append(t)
    return terms


def _ai_asymptotic_negative(x: float) -> mp.mpf:
    """Ai(-x) for x > 0 via the oscillatory expansion at optimal truncation."""
    with mp.workdps(40):
        xm = mp.mpf(x)
        zeta = mp.mpf(2) / 3 * xm ** mp.mpf("3/2")
        terms = _asym_u_terms(zeta)
        even = sum((-1) ** j * terms[2 * j] for j in range((len(terms) + 1) // 2))
        odd = sum((-1) ** j * terms[2 * j + 1] for j in range(len(terms) // 2))
        phase = zeta - mp.pi / 4
        return (mp.cos(phase) * even + mp.sin(phase) * odd) / (mp.sqrt(mp.pi) * xm ** mp.mpf("1/4"))


def _ai_asymptotic_positive(x: float) -> mp.mpf:
    """Ai(x) for large x > 0: exponentially decaying expansion."""
    with mp.workdps(40):
        xm = mp.mpf(x)
        zeta = mp.mpf(2) / 3 * xm ** mp.mpf("3/2")
        terms = _asym_u_terms(zeta)
        s = sum((-1) ** k * t for k, t in enumerate(terms))
        return mp.exp(-zeta) * s / (2 * mp.sqrt(mp.pi) * xm ** mp.mpf("1/4"))


def airy(x: float) -> mp.mpf:
    """Ai(x) to absolute accuracy well below 1e-12 on [-20, 5] (and beyond)."""
    if not math.isfinite(x):
        raise ValueError(f"airy requires finite x, got {x}")
    if abs(x) <= SERIES_CUTOFF:
        return _ai_series(x)
    if x > 0:
        return _ai_asymptotic_positive(x)
    return _ai_asymptotic_negative(-x)


def airy_leading_negative(x: float) -> float:
    """Leading oscillatory approximation cos((2/3)x^{3/2} - pi/4) / (sqrt(pi) x^{1/4}).

    Valid for x > 0 as an approximation to Ai(-x); remainder O(x^{-7/4}).
    """
    if x <= 0:
        raise ValueError("leading negative-axis form needs x > 0")
    zeta = 2.0 / 3.0 * x ** 1.5
    return math.cos(zeta - math.pi / 4.0) / (math.sqrt(math.pi) * x ** 0.25)
