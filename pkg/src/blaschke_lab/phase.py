"""Phase g(t) = n*f(t) - k*t of the coefficient integral and its critical points.

f is the boundary phase of the Möbius factor: m(e^{it}) = e^{i f(t)} with
f(0) = 0, f(pi) = pi, and

    f'(t) = (1 - a^2) / (1 + a^2 - 2 a cos t),   a = lambda.

g' decreases strictly from g'(0) = n/alpha0 - k to g'(pi) = n*alpha0 - k, so a
stationary angle exists exactly when k/n lies in [alpha0, 1/alpha0]; there it
has the closed form cos(phi+) = (r(1+a^2) - (1-a^2)) / (2 a r) with r = k/n.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import DomainError
from .params import BlaschkeParams

__all__ = ["PhaseFunction", "stationary_point", "g2_at_stationary", "vdc_bound"]


@dataclass(frozen=True)
class PhaseFunction:
    params: BlaschkeParams
    k: int

    def __post_init__(self):
        if self.k < 0:
            raise DomainError("k must be >= 0")

    # exact endpoint slopes
    @property
    def g1_at_0(self) -> Fraction:
        return self.params.n * self.params.alpha0_inv - self.k

    @property
    def g1_at_pi(self) -> Fraction:
        return self.params.n * self.params.alpha0 - self.k

    @property
    def alpha(self) -> Fraction:
        return Fraction(self.k, self.params.n)

    def f(self, t):
        lam = self.params.lam_float
        z = np.exp(1j * np.asarray(t, dtype=float))
        return np.angle((z - lam) / (1.0 - lam * z))

    def g(self, t):
        return self.params.n * self.f(t) - self.k * np.asarray(t, dtype=float)

    def g1(self, t):
        lam = self.params.lam_float
        t = np.asarray(t, dtype=float)
        fp = (1.0 - lam * lam) / (1.0 + lam * lam - 2.0 * lam * np.cos(t))
        return self.params.n * fp - self.k

    def g2(self, t):
        lam = self.params.lam_float
        t = np.asarray(t, dtype=float)
        den = 1.0 + lam * lam - 2.0 * lam * np.cos(t)
        return -2.0 * lam * self.params.n * (1.0 - lam * lam) * np.sin(t) / den ** 2

    @property
    def stationary_angle(self):
        return stationary_point(self)


def stationary_point(phase: PhaseFunction):
    """Unique zero phi+ of g' in [0, pi], or None when k/n is outside [alpha0, 1/alpha0].

    Uses the closed form for cos(phi+); the coalescing endpoint cases
    k/n = 1/alpha0 (phi+ = 0) and k/n = alpha0 (phi+ = pi) are included.
    """
    p = phase.params
    alpha = phase.alpha
    if alpha < p.alpha0 or alpha > p.alpha0_inv:
        return None
    lam = p.lam
    cos_phi = (alpha * (1 + lam * lam) - (1 - lam * lam)) / (2 * lam * alpha)
    c = min(1.0, max(-1.0, float(cos_phi)))
    return math.acos(c)


def g2_at_stationary(phase: PhaseFunction) -> float:
    """|g''(phi+)| = k * sqrt((k/n - alpha0) * (1/alpha0 - k/n)).

    Raises if the stationary angle does not exist.  At the coalescence points
    the value degenerates to 0 together with the angle formula.
    """
    p = phase.params
    alpha = phase.alpha
    if stationary_point(phase) is None:
        raise DomainError(
            f"no stationary angle: k/n = {alpha} outside [{p.alpha0}, {p.alpha0_inv}]")
    prod = (alpha - p.alpha0) * (p.alpha0_inv - alpha)
    return phase.k * math.sqrt(float(prod))


def vdc_bound(phase: PhaseFunction, a: float, b: float) -> float:
    """Oscillatory-integral bound 2/|g'(a)| + 2/|g'(b)| on [a, b].

    Requires g' monotone (automatic here: g'' < 0 on (0, pi)) and nonvanishing
    on [a, b]; an interval straddling the stationary angle is rejected.
    Guarantees |int_a^b e^{i g}| <= returned value.
    """
    if not (0.0 <= a < b <= math.pi):
        raise DomainError(f"need 0 <= a < b <= pi, got [{a}, {b}]")
    ga, gb = float(phase.g1(a)), float(phase.g1(b))
    if ga == 0.0 or gb == 0.0 or (ga > 0) != (gb > 0):
        raise DomainError(
            f"g' changes sign on [{a}, {b}] (g'({a}) = {ga}, g'({b}) = {gb})")
    return 2.0 / abs(ga) + 2.0 / abs(gb)
