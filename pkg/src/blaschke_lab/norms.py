"""lp-norms of the coefficient sequence and the seven-range decay partition.

For a fixed cut ratio alpha in (0, alpha0) the index axis splits into seven
ranges: exponential decay (I), reciprocal-distance decay to n*alpha0 (II), the
left critical window of width ~n^(1/3) (III), the two-saddle oscillatory bulk
(IV), the right critical window (V), reciprocal decay away from n/alpha0 (VI),
and the exponential far tail (VII).  Boundary indices belong to the
lower-numbered range.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction

import mpmath as mp
import numpy as np

from .engines import CoefficientSeries, tail_power_bound
from .errors import DomainError, InsufficientRangeError, RegionOrderError
from .params import BlaschkeParams

__all__ = ["Region", "RegionPartition", "region_partition", "NormReport",
           "lp_norm", "region_mass"]


class Region(enum.IntEnum):
    I = 1
    II = 2
    III = 3
    IV = 4
    V = 5
    VI = 6
    VII = 7


def _cbrt_floor(base: Fraction, n: int, sign: int) -> int:
    """floor(base + sign*n^(1/3)) with exact handling of perfect cubes."""
    r = round(n ** (1.0 / 3.0))
    if r ** 3 == n:
        return math.floor(base + sign * r)
    with mp.workdps(50):
        v = mp.mpf(base.numerator) / base.denominator + sign * mp.cbrt(n)
        return int(mp.floor(v))


def _cbrt_ceil(base: Fraction, n: int, sign: int) -> int:
    r = round(n ** (1.0 / 3.0))
    if r ** 3 == n:
        return math.ceil(base + sign * r)
    with mp.workdps(50):
        v = mp.mpf(base.numerator) / base.denominator + sign * mp.cbrt(n)
        return int(mp.ceil(v))


@dataclass(frozen=True)
class RegionPartition:
    """Seven half-open integer ranges covering [0, inf) for given (params, alpha)."""

    params: BlaschkeParams
    alpha: Fraction
    boundaries: tuple   # (b1..b6); range i is (b_{i-1}, b_i], VII = (b6, inf)

    def __post_init__(self):
        b = self.boundaries
        if len(b) != 6:
            raise DomainError("expected six boundaries")
        if any(b[i] > b[i + 1] for i in range(5)) or b[0] < 0:
            raise RegionOrderError(
                f"boundaries {b} not nondecreasing; n = {self.params.n} too small "
                f"for alpha = {self.alpha}")

    @property
    def beta(self) -> Fraction:
        """Midpoint (alpha0 + 1/alpha0)/2 of the oscillatory bulk, as a ratio."""
        return (self.params.alpha0 + self.params.alpha0_inv) / 2

    def region_of(self, k: int) -> Region:
        if k < 0:
            raise DomainError("k must be >= 0")
        for region, bound in zip(Region, self.boundaries):
            if k <= bound:
                return region
        return Region.VII

    def ranges(self) -> dict:
        """Region -> (lo, hi) half-open; hi is None for the unbounded VII."""
        out = {}
        lo = 0
        for region, bound in zip(Region, self.boundaries):
            out[region] = (lo, bound + 1)
            lo = bound + 1
        out[Region.VII] = (lo, None)
        return out


def region_partition(params: BlaschkeParams, alpha) -> RegionPartition:
    """Partition with boundaries floor(alpha*n), floor/ceil of n*alpha0 -+ n^(1/3),
    floor/ceil of n/alpha0 -+ n^(1/3), and ceil(n/alpha).

    Requires 0 < alpha < alpha0 and n large enough that the six boundaries are
    nondecreasing (raises RegionOrderError otherwise).
    """
    if not isinstance(alpha, Fraction):
        alpha = Fraction(alpha)
    if not (0 < alpha < params.alpha0):
        raise DomainError(f"alpha must lie in (0, alpha0) = (0, {params.alpha0})")
    n = params.n
    left = params.alpha0 * n
    right = params.alpha0_inv * n
    boundaries = (
        math.floor(alpha * n),
        _cbrt_floor(left, n, -1),
        _cbrt_ceil(left, n, +1),
        _cbrt_floor(right, n, -1),
        _cbrt_ceil(right, n, +1),
        math.ceil(n / alpha),
    )
    return RegionPartition(params=params, alpha=alpha, boundaries=boundaries)


@dataclass(frozen=True)
class NormReport:
    """Norm value with per-range mass decomposition and a tail certificate.

    For p < inf the per-range masses are partial p-th-power sums over the
    computed range, so sum(masses) == value^p up to rounding and
    sum(masses) + tail_certificate bounds the full mass from above.  For
    p = inf masses are partial sups and value is their maximum.
    """

    p: float
    value: float
    per_region_mass: dict | None
    tail_certificate: float


def _mass(values: np.ndarray, p: float) -> float:
    a = np.abs(values)
    if p == math.inf:
        return float(a.max()) if a.size else 0.0
    return float((a ** p).sum())


def region_mass(series: CoefficientSeries, partition: RegionPartition,
                region: Region, p: float) -> float:
    """sum_{k in region} |c(k)|^p (sup for p = inf).

    Ranges through VI must lie inside the computed series; the unbounded part
    of VII beyond kmax is covered by the geometric tail certificate.
    """
    _check_p(p)
    lo, hi = partition.ranges()[region]
    if hi is None:
        inside = _mass(series.values[min(lo, series.kmax + 1):], p)
        tail = float(tail_power_bound(series.params, series.kmax + 1, p))
        return max(inside, tail) if p == math.inf else inside + tail
    if hi - 1 > series.kmax:
        raise InsufficientRangeError(
            f"region {region.name} reaches k = {hi - 1} beyond computed kmax = {series.kmax}")
    return _mass(series.values[lo:hi], p)


def _check_p(p: float):
    if p != math.inf and not p >= 1:
        raise DomainError(f"p must satisfy p >= 1 or p = inf, got {p}")


def lp_norm(series: CoefficientSeries, p: float,
            alpha: Fraction | None = None) -> NormReport:
    """(sum_k |c(k)|^p)^(1/p) over the computed range (sup for p = inf).

    The omitted mass beyond kmax is bounded by the tail certificate and must
    stay below 1% of value^p, else InsufficientRangeError.  Per-range masses
    use the partition at `alpha` (default alpha0/2) and are omitted when the
    partition does not exist at this n.
    """
    _check_p(p)
    values = series.values
    tail = float(tail_power_bound(series.params, series.kmax + 1, p))
    if p == math.inf:
        value = float(np.abs(values).max())
        rel_gate = tail > 0.01 * value
    else:
        power_sum = _mass(values, p)
        value = power_sum ** (1.0 / p)
        rel_gate = tail > 0.01 * power_sum
    if not math.isfinite(tail) or rel_gate:
        raise InsufficientRangeError(
            f"tail certificate {tail:.3e} exceeds 1% of the computed mass; "
            f"extend kmax = {series.kmax}")

    if alpha is None:
        alpha = series.params.alpha0 / 2
    masses = None
    try:
        partition = region_partition(series.params, alpha)
    except RegionOrderError:
        partition = None
    if partition is not None:
        masses = {}
        for region in Region:
            lo, hi = partition.ranges()[region]
            if hi is None:
                hi = series.kmax + 1
            hi = min(hi, series.kmax + 1)
            masses[region] = _mass(values[lo:hi], p) if lo < hi else 0.0
    return NormReport(p=p, value=value, per_region_mass=masses, tail_certificate=tail)
