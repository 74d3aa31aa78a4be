"""Decay envelopes per region and the uniform coalescing-saddle predictor.

Near k/n -> 1/alpha0 the two conjugate saddle points of the phase merge at
z = 1 and the coefficients follow an Airy profile

    c(k) ~ a0 * Ai(-n^(2/3) * delta^2) / n^(1/3),
    delta^2 = (1 - a) / (a (1 + a))^(1/3) * (1/alpha0 - k/n),
    a0 = (1 - a)^(1/4) / (a (1 + a))^(1/12) * sqrt(2) / (sqrt(r) (r - alpha0)^(1/4)),

with a = lambda, r = k/n.  The companion Ai' coefficient vanishes identically,
and the cubic change of variables behind the expansion has no constant term
(rho = 0), so no offset enters the prediction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import mpmath as mp
import numpy as np

from .airy import airy
from .engines import CoefficientSeries, coeff_series_fft
from .errors import DomainError
from .norms import RegionPartition, Region, region_partition
from .params import BlaschkeParams

__all__ = ["AiryPrediction", "airy_predict", "decay_envelope", "sup_coefficient",
           "airy_window"]


def airy_window(params: BlaschkeParams) -> tuple:
    """Integer window [ceil(n/alpha0 - n^(3/4)), floor(n/alpha0)] where the
    predictor is considered trustworthy."""
    hi = params.alpha0_inv * params.n
    with mp.workdps(40):
        lo = int(mp.ceil(mp.mpf(hi.numerator) / hi.denominator - mp.mpf(params.n) ** mp.mpf("3/4")))
    return lo, math.floor(hi)


@dataclass(frozen=True)
class AiryPrediction:
    k: int
    alpha: float          # k/n
    gamma2: float         # squared half-separation of the cubic's saddle images
    delta2: float         # same quantity in the expansion's notation
    a0: float             # leading amplitude
    a1: float             # Ai' amplitude; identically 0
    airy_argument: float  # -n^(2/3) * delta2
    predicted: float
    in_window: bool


def airy_predict(params: BlaschkeParams, k: int) -> AiryPrediction:
    """Airy-profile prediction for c(k); out-of-window predictions are flagged.

    For k/n <= alpha0 the amplitude is undefined (the expansion lives at the
    right critical ratio) and predicted comes back NaN rather than an error.
    """
    if k < 0:
        raise DomainError("k must be >= 0")
    n = params.n
    lam = params.lam_float
    alpha = k / n
    scale = (1.0 - lam) / (lam * (1.0 + lam)) ** (1.0 / 3.0)
    delta2 = scale * (float(params.alpha0_inv) - alpha)
    argument = -(n ** (2.0 / 3.0)) * delta2
    lo, hi = airy_window(params)
    in_window = lo <= k <= hi
    if alpha <= params.alpha0:
        a0 = math.nan
        predicted = math.nan
    else:
        a0 = ((1.0 - lam) ** 0.25 / (lam * (1.0 + lam)) ** (1.0 / 12.0)
              * math.sqrt(2.0) / (math.sqrt(alpha) * (alpha - float(params.alpha0)) ** 0.25))
        predicted = a0 * float(airy(argument)) / n ** (1.0 / 3.0)
    return AiryPrediction(k=k, alpha=alpha, gamma2=delta2, delta2=delta2,
                          a0=a0, a1=0.0, airy_argument=argument,
                          predicted=predicted, in_window=in_window)


# ---------------------------------------------------------------------------
# envelopes
# ---------------------------------------------------------------------------

def _radial_envelope(params: BlaschkeParams, k: int, inner: bool) -> mp.mpf:
    """min over the radius of the contour bound max|B| / s^k.

    inner: radii in (0, 1) with max|m| = (s+a)/(1+a*s); otherwise radii in
    (1, 1/a) with max|m| = (s-a)/(1-a*s).  Includes the stationary radius
    (the candidates multiply pairwise to 1) alongside a uniform grid.
    """
    lam = params.lam_hp
    n, kk = params.n, k
    if inner and kk == 0:
        # bound is monotone increasing in s; infimum at s -> 0 equals lambda^n,
        # which is also exactly |c(0)|
        return lam ** n
    if inner:
        lo, hi = mp.mpf(0), mp.mpf(1)
        def log_bound(s):
            return n * mp.log((s + lam) / (1 + lam * s)) - kk * mp.log(s)
    else:
        lo, hi = mp.mpf(1), 1 / lam
        def log_bound(s):
            return n * mp.log((s - lam) / (1 - lam * s)) - kk * mp.log(s)
    grid = [lo + (hi - lo) * mp.mpf(i) / 129 for i in range(1, 129)]
    # stationary radii of either bound solve k*a*s^2 +- b*s + k*a = 0 and come
    # in reciprocal pairs, so trying root and 1/root covers both brackets
    b = kk * (1 + lam * lam) - n * (1 - lam * lam)
    disc = b * b - 4 * (kk * lam) ** 2
    if disc > 0:
        root = (abs(b) + mp.sqrt(disc)) / (2 * kk * lam)
        for cand in (root, 1 / root):
            if lo < cand < hi:
                grid.append(cand)
    return mp.exp(min(log_bound(s) for s in grid))


def decay_envelope(params: BlaschkeParams, k: int, alpha,
                   partition: RegionPartition | None = None) -> mp.mpf:
    """Envelope for |c(k)| according to the region k falls in.

    I, VII: optimised exponential contour bound; II: 1/(n*alpha0 - k);
    VI: 1/(k - n/alpha0); III, V: n^(-1/3);
    IV: n^(-1/2) * ((k/n - alpha0)(1/alpha0 - k/n))^(-1/4).
    The implied constants are left to the caller (fit one per region).
    """
    if partition is None:
        partition = region_partition(params, alpha)
    region = partition.region_of(k)
    n = params.n
    if region is Region.I:
        return _radial_envelope(params, k, inner=True)
    if region is Region.VII:
        return _radial_envelope(params, k, inner=False)
    if region is Region.II:
        d = abs(params.alpha0 * n - k)
        return mp.mpf(d.denominator) / d.numerator
    if region is Region.VI:
        d = abs(Fraction(k) - params.alpha0_inv * n)
        return mp.mpf(d.denominator) / d.numerator
    if region in (Region.III, Region.V):
        return mp.mpf(n) ** mp.mpf("-1/3")
    ratio = Fraction(k, n)
    prod = (ratio - params.alpha0) * (params.alpha0_inv - ratio)
    return mp.mpf(n) ** mp.mpf("-1/2") * mp.mpf(float(prod)) ** mp.mpf("-1/4")


def sup_coefficient(params: BlaschkeParams,
                    series: CoefficientSeries | None = None) -> tuple:
    """(k*, |c(k*)|): the largest coefficient over the default range.

    The maximiser sits in one of the two critical windows; by construction the
    default kmax covers both with a certified-negligible remainder.
    """
    if series is None:
        series = coeff_series_fft(params, params.default_kmax())
    absvals = np.abs(series.values)
    k_star = int(np.argmax(absvals))
    return k_star, float(absvals[k_star])
