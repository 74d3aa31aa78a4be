"""Core parameters: the Möbius factor m(z) = (z - lambda)/(1 - lambda*z) and its power n.

lambda is kept as an exact rational in (0, 1).  Everything downstream (the
critical ratios alpha0 = (1-lambda)/(1+lambda) and its inverse, region
boundaries, tail optimisation brackets) is derived from it exactly, which is
what makes the exact coefficient engine possible.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Rational

import mpmath as mp

from .errors import DomainError, PrecisionExhaustedError

#: Environment variable overriding PrecisionPolicy.max_bits (see default_policy).
MAX_BITS_ENV = "BLASCHKE_MAX_BITS"


def _as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, str):
        return Fraction(value)
    if isinstance(value, Rational):  # includes int
        return Fraction(value)
    raise DomainError(
        f"lambda must be an exact rational (Fraction, 'p/q' string or int), got {value!r}"
    )


@dataclass(frozen=True)
class BlaschkeParams:
    """Validated pair (lambda, n) with derived exact quantities.

    Invariants: 0 < lambda < 1 strictly and n >= 1.  alpha0 * alpha0_inv == 1
    holds exactly in rational arithmetic.
    """

    lam: Fraction
    n: int
    lam_hp: mp.mpf = field(compare=False, repr=False, default=None)

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 1:
            raise DomainError(f"n must be a positive integer, got {self.n!r}")
        if not (0 < self.lam < 1):
            raise DomainError(f"lambda must lie strictly in (0, 1), got {self.lam}")
        if self.lam_hp is None:
            hp = mp.mpf(self.lam.numerator) / self.lam.denominator
            object.__setattr__(self, "lam_hp", hp)

    @property
    def alpha0(self) -> Fraction:
        """Critical ratio (1 - lambda)/(1 + lambda)."""
        return (1 - self.lam) / (1 + self.lam)

    @property
    def alpha0_inv(self) -> Fraction:
        """(1 + lambda)/(1 - lambda), the reciprocal critical ratio."""
        return (1 + self.lam) / (1 - self.lam)

    @property
    def lam_float(self) -> float:
        return float(self.lam)

    def default_kmax(self) -> int:
        """Series length so that everything beyond is certified by the tail bound."""
        return math.ceil(2 * self.n * self.alpha0_inv)

    def __str__(self) -> str:
        return f"(lambda={self.lam}, n={self.n})"


def make_params(lam, n: int) -> BlaschkeParams:
    """Validate and build BlaschkeParams; lam may be a Fraction, 'p/q' string or int ratio."""
    return BlaschkeParams(_as_fraction(lam), int(n))


@dataclass(frozen=True)
class PrecisionPolicy:
    """Output-precision contract for the exact coefficient engine.

    target_abs_error is the requested absolute error of returned values;
    start_bits a floor on the working mantissa; max_bits a hard cap.
    """

    target_abs_error: float = 1e-12
    start_bits: int = 64
    max_bits: int = 16384

    def __post_init__(self):
        if self.start_bits < 64:
            raise DomainError("start_bits must be >= 64")
        if self.max_bits < self.start_bits:
            raise DomainError("max_bits must be >= start_bits")
        if not self.target_abs_error > 0:
            raise DomainError("target_abs_error must be positive")

    def bits_for_target(self) -> int:
        """Mantissa bits needed so rounding a value of magnitude <= 1 meets the target."""
        needed = max(self.start_bits, int(math.ceil(-math.log2(self.target_abs_error))) + 4)
        if needed > self.max_bits:
            raise PrecisionExhaustedError(
                f"need {needed} bits for target {self.target_abs_error}, cap is {self.max_bits}"
            )
        return needed


def default_policy(params: BlaschkeParams | None = None,
                   target_abs_error: float = 1e-12) -> PrecisionPolicy:
    """Policy with the n-scaled start_bits heuristic.

    start_bits = 64 + ceil(n*log2((1+lambda)/(1-lambda))) tracks the worst-case
    digit loss of the naive convolution; the exact integer engine does not need
    it for correctness, but the floor keeps single-coefficient output precision
    generous.  BLASCHKE_MAX_BITS in the environment overrides max_bits.
    """
    if params is None:
        start = 64
    else:
        growth = params.alpha0_inv
        start = 64 + math.ceil(params.n * math.log2(float(growth)))
    max_bits = max(4 * start, 16384)
    env = os.environ.get(MAX_BITS_ENV)
    if env is not None:
        try:
            max_bits = int(env)
        except ValueError as exc:
            raise DomainError(f"{MAX_BITS_ENV} must be an integer, got {env!r}") from exc
    return PrecisionPolicy(target_abs_error=target_abs_error,
                           start_bits=min(start, max_bits),
                           max_bits=max_bits)
