"""Experiment harness: norm scaling over n-grids, the p=4 log law, and the
fractional-part equidistribution experiment behind it.

Theory slopes for log||c||_p against log n:

    (2 - p)/(2p)   for p in [1, 4)
    (1 - p)/(3p)   for p in (4, inf),  -1/3 at p = inf

and at the boundary p = 4 the norm follows (log n / n)^(1/4), which the
harness fits against x = (1/4) log(log n / n) with unit theory slope.
"""

from __future__ import annotations

import math
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .engines import coeff_exact, coeff_series_fft, CoefficientSeries
from .errors import DomainError, EmptyWindowError
from .norms import lp_norm
from .params import BlaschkeParams, make_params

__all__ = ["ScalingFit", "WeylExperiment", "theory_slope", "fit_exponent",
           "run_norm_scaling", "p4_ratio_scan", "p4_model_residuals",
           "weyl_sums", "airy_regime_mass", "cached_series"]


@lru_cache(maxsize=64)
def cached_series(lam: Fraction, n: int) -> CoefficientSeries:
    """FFT series at the default kmax, cached across experiments."""
    params = make_params(lam, n)
    return coeff_series_fft(params, params.default_kmax())


def theory_slope(p: float):
    """Predicted log-log slope as an exact rational (1 for the p=4 log model)."""
    if p == math.inf:
        return Fraction(-1, 3)
    p = Fraction(p)
    if p < 1:
        raise DomainError("p must satisfy p >= 1")
    if p == 4:
        return Fraction(1)
    if p < 4:
        return (2 - p) / (2 * p)
    return (1 - p) / (3 * p)


@dataclass(frozen=True)
class ScalingFit:
    lam: Fraction
    p: float
    n_grid: tuple
    norms: tuple
    fitted_slope: float
    slope_stderr: float
    theory_slope: Fraction

    def abscissa(self, n: int) -> float:
        """Regressor value at n: log n, or (1/4) log(log n / n) when p = 4."""
        if self.p == 4:
            return 0.25 * math.log(math.log(n) / n)
        return math.log(n)


def fit_exponent(points) -> tuple:
    """Ordinary least squares slope and residual-based standard error.

    points: iterable of (x, y).  Needs at least 4 points and nondegenerate
    abscissae.  Invariant under shifting all y by a constant.
    """
    pts = [(float(x), float(y)) for x, y in points]
    if len(pts) < 4:
        raise DomainError(f"need at least 4 points, got {len(pts)}")
    xs = np.array([p[0] for p in pts])
    ys = np.array([p[1] for p in pts])
    sxx = float(((xs - xs.mean()) ** 2).sum())
    if sxx == 0.0:
        raise DomainError("degenerate fit: all abscissae equal")
    slope = float(((xs - xs.mean()) * (ys - ys.mean())).sum()) / sxx
    intercept = ys.mean() - slope * xs.mean()
    resid = ys - (slope * xs + intercept)
    sse = float((resid ** 2).sum())
    stderr = math.sqrt(sse / (len(pts) - 2) / sxx)
    return slope, stderr


def _validate_grid(n_grid) -> tuple:
    grid = tuple(int(n) for n in n_grid)
    if len(grid) < 4:
        raise DomainError("n_grid needs at least 4 points")
    if grid[0] < 64:
        raise DomainError("smallest n must be >= 64")
    for a, b in zip(grid, grid[1:]):
        if b != 2 * a:
            raise DomainError(f"grid must be geometric with ratio 2, got {grid}")
    return grid


def measured_norm(lam: Fraction, n: int, p: float) -> float:
    return lp_norm(cached_series(lam, n), p).value


def _spot_check_engines(lam: Fraction, n: int):
    """Exact-engine check of the FFT values at the smallest grid point."""
    params = make_params(lam, n)
    series = cached_series(lam, n)
    for k in (0, 1, round(float(params.alpha0_inv) * n)):
        exact = float(coeff_exact(params, k))
        if abs(exact - float(series.values[k])) > 1e-9:
            raise AssertionError(
                f"engine mismatch at n={n}, k={k}: fft={series.values[k]!r} exact={exact!r}")


def run_norm_scaling(lam, p: float, n_grid, workers: int = 1) -> ScalingFit:
    """Measure ||c||_p over a ratio-2 grid and regress the scaling exponent.

    p = 4 switches to the log-corrected model automatically; p within 0.05 of
    4 (but not equal) warns that finite-n convergence is slow there.  Norms
    come from the FFT engine; the smallest grid point is spot-checked against
    the exact engine.
    """
    lam = Fraction(lam)
    grid = _validate_grid(n_grid)
    if p != 4 and abs(p - 4) <= 0.05:
        warnings.warn(f"p = {p} is near the regime boundary 4; finite-n slopes "
                      "converge slowly there", stacklevel=2)
    _spot_check_engines(lam, grid[0])
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            norms = tuple(pool.map(lambda n: measured_norm(lam, n, p), grid))
    else:
        norms = tuple(measured_norm(lam, n, p) for n in grid)
    if p == 4:
        xs = [0.25 * math.log(math.log(n) / n) for n in grid]
    else:
        xs = [math.log(n) for n in grid]
    slope, stderr = fit_exponent(zip(xs, [math.log(v) for v in norms]))
    return ScalingFit(lam=lam, p=p, n_grid=grid, norms=norms,
                      fitted_slope=slope, slope_stderr=stderr,
                      theory_slope=theory_slope(p))


def p4_ratio_scan(lam, n_grid) -> list:
    """[(n, ||c||_4^4 * n / log n)] over the grid; bounded ratios at the log law."""
    lam = Fraction(lam)
    grid = _validate_grid(n_grid)
    out = []
    for n in grid:
        norm4 = measured_norm(lam, n, 4.0)
        out.append((n, norm4 ** 4 * n / math.log(n)))
    return out


def p4_model_residuals(lam, n_grid) -> tuple:
    """(sse_log_model, sse_pure_model) for log||c||_4 regressed on
    (1/4)log(log n / n) versus -(1/4)log n; the log-corrected model should win."""
    lam = Fraction(lam)
    grid = _validate_grid(n_grid)
    ys = [math.log(measured_norm(lam, n, 4.0)) for n in grid]

    def sse(xs):
        slope, _ = fit_exponent(zip(xs, ys))
        x = np.array(xs)
        y = np.array(ys)
        inter = y.mean() - slope * x.mean()
        return float(((y - slope * x - inter) ** 2).sum())

    xs_log = [0.25 * math.log(math.log(n) / n) for n in grid]
    xs_pure = [-0.25 * math.log(n) for n in grid]
    return sse(xs_log), sse(xs_pure)


# ---------------------------------------------------------------------------
# fractional-part equidistribution experiment
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class WeylExperiment:
    """Exponential sums A_k = sum_{l <= k} exp(2*pi*i*j*s_{nl}) over the window.

    s_{nk} is the fractional part of n * phi(k/n) with
    phi(t) = (2/(3*pi)) (1-a)^(3/2) / (a(1+a))^(1/2) * (1/alpha0 - t)^(3/2);
    the window is [ceil(n/alpha0 - n^(3/4)), floor(n/alpha0 - sqrt(n))].
    """

    lam: Fraction
    n: int
    j: int
    k_lo: int
    k_hi: int
    s_values: np.ndarray
    partial_sums: np.ndarray
    max_abs_A: float

    def __post_init__(self):
        self.s_values.setflags(write=False)
        self.partial_sums.setflags(write=False)

    @property
    def window_size(self) -> int:
        return self.k_hi - self.k_lo + 1


def phase_fraction_window(params: BlaschkeParams) -> tuple:
    """The integer window used by the equidistribution experiment."""
    hi_ratio = params.alpha0_inv * params.n
    hi_f = hi_ratio.numerator / hi_ratio.denominator
    lo = math.ceil(hi_f - params.n ** 0.75)
    hi = math.floor(hi_f - math.sqrt(params.n))
    return lo, hi


def weyl_sums(lam, n: int, j: int) -> WeylExperiment:
    """Compute s_{nk} and the partial exponential sums A_k over the window.

    j must be a nonzero integer; the window must be nonempty (it is for
    n >= 16; n >= 4096 makes the statistics meaningful).
    """
    lam = Fraction(lam)
    if j == 0:
        raise DomainError("j must be a nonzero integer")
    params = make_params(lam, n)
    lo, hi = phase_fraction_window(params)
    if hi < lo:
        raise EmptyWindowError(f"window empty at n = {n}")
    ks = np.arange(lo, hi + 1, dtype=np.int64)
    lam_f = params.lam_float
    a0i = float(params.alpha0_inv)
    t = ks / float(n)
    phi = (2.0 / (3.0 * math.pi)) * (1.0 - lam_f) ** 1.5 \
        / (lam_f * (1.0 + lam_f)) ** 0.5 * (a0i - t) ** 1.5
    s = np.mod(n * phi, 1.0)
    partial = np.cumsum(np.exp(2j * math.pi * j * s))
    return WeylExperiment(lam=lam, n=n, j=j, k_lo=lo, k_hi=hi,
                          s_values=s, partial_sums=partial,
                          max_abs_A=float(np.abs(partial).max()))


def airy_regime_mass(lam, n: int) -> tuple:
    """(sum over the window of |c(k)|^4, its ratio to log n / n).

    The window is the same as in weyl_sums; the ratio stays bounded below
    across a doubling grid, which is the content of the p=4 lower bound.
    """
    lam = Fraction(lam)
    if n < 1024:
        raise DomainError("need n >= 1024 for a meaningful window")
    params = make_params(lam, n)
    lo, hi = phase_fraction_window(params)
    if hi < lo:
        raise EmptyWindowError(f"window empty at n = {n}")
    series = cached_series(lam, n)
    if hi > series.kmax:
        raise DomainError("window exceeds the default series range")
    mass = float((np.abs(series.values[lo:hi + 1]) ** 4).sum())
    return mass, mass * n / math.log(n)
