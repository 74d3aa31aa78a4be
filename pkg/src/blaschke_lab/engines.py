"""Three independent engines for the Taylor coefficients c(k) of ((z-a)/(1-a*z))^n.

exact        -- integer three-term recurrence, mathematically exact, O(kmax) big-int ops
fft          -- unimodular boundary samples + DFT, double precision, O(N log N)
oscillatory  -- adaptive Gauss-Legendre panels on (1/pi) Re int_0^pi e^{i g(t)} dt

The engines share no code path, so pairwise agreement is a strong correctness
check.  The exact engine is authoritative in the far tails where the other two
sit below their noise floors.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import mpmath as mp
import numpy as np

from .errors import DomainError, GridTooSmallError, QuadratureError
from .params import BlaschkeParams, PrecisionPolicy, default_policy

__all__ = [
    "CoefficientSeries",
    "coeff_exact",
    "coeff_exact_rational",
    "coeff_series_exact",
    "coeff_series_fft",
    "coeff_oscillatory",
    "oscillatory_integral",
    "tail_bound",
    "tail_power_bound",
    "default_grid_size",
]

# Double-precision noise floor of the FFT engine: coefficients smaller than
# this are reported but only the exact engine is authoritative there.
FFT_RESOLUTION = 1e-12

_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(16)


@dataclass(frozen=True)
class CoefficientSeries:
    """Coefficients c(0..kmax) with engine tag and an absolute-error certificate.

    values are correctly rounded doubles; for the exact engine the rounding
    error (<= 1 ulp per entry) is the only error.  All coefficients are real
    because lambda is real.
    """

    params: BlaschkeParams
    kmax: int
    values: np.ndarray
    engine: str
    achieved_abs_error: float

    def __post_init__(self):
        self.values.setflags(write=False)
        if len(self.values) != self.kmax + 1:
            raise DomainError("values must cover k = 0..kmax")

    # --- identity residuals used by tests and sanity checks -----------------
    def sum_residual(self) -> float:
        """|sum_k c(k) - 1|; the full series sums to 1 (value of the map at z=1)."""
        return abs(float(self.values.sum()) - 1.0)

    def alternating_residual(self) -> float:
        """|sum_k (-1)^k c(k) - (-1)^n| (value at z=-1)."""
        signs = np.where(np.arange(self.kmax + 1) % 2 == 0, 1.0, -1.0)
        return abs(float((signs * self.values).sum()) - (-1.0) ** self.params.n)

    def plancherel_residual(self) -> float:
        """|sum_k c(k)^2 - 1|; the boundary values are unimodular."""
        return abs(float((self.values.astype(np.float64) ** 2).sum()) - 1.0)

    def tail_tolerance(self) -> float:
        """Allowance for the mass beyond kmax plus accumulated per-value error."""
        t = tail_bound(self.params, self.kmax + 1)
        return float(t) + (self.kmax + 1) * self.achieved_abs_error


# ---------------------------------------------------------------------------
# exact engine
# ---------------------------------------------------------------------------

def _ratio_to_float(num: int, den: int) -> float:
    """num/den as a correctly-rounded-to-nearest-ish double; big-int safe."""
    if num == 0:
        return 0.0
    sign = -1.0 if num < 0 else 1.0
    num = abs(num)
    shift = den.bit_length() - num.bit_length() + 64
    if shift >= 0:
        q = (num << shift) // den
    else:
        q = num // (den << -shift)
    return sign * math.ldexp(q, -shift)


def _recurrence_integers(params: BlaschkeParams, kmax: int):
    """Yield D_k for k=0..kmax where c(k) = D_k / q^(n+k), lambda = p/q.

    The map B satisfies (z - a)(1 - a*z) B' = n (1 - a^2) B, which gives the
    exact integer recurrence

        p (k+1) D_{k+1} = ((q^2 + p^2) k - n (q^2 - p^2)) D_k - p q^2 (k-1) D_{k-1}.

    Division by p(k+1) is exact; this is asserted rather than trusted.
    """
    p, q = params.lam.numerator, params.lam.denominator
    n = params.n
    qq, pp = q * q, p * p
    d_prev, d_cur = 0, (-p) ** n
    yield d_cur
    for k in range(kmax):
        t = ((qq + pp) * k - n * (qq - pp)) * d_cur
        if k >= 1:
            t -= p * qq * (k - 1) * d_prev
        d_next, rem = divmod(t, p * (k + 1))
        assert rem == 0, "recurrence division must be exact"
        d_prev, d_cur = d_cur, d_next
        yield d_cur


def coeff_exact_rational(params: BlaschkeParams, k: int) -> Fraction:
    """c(k) as an exact rational, via the integer recurrence."""
    if k < 0:
        raise DomainError("k must be >= 0")
    q = params.lam.denominator
    for j, d in enumerate(_recurrence_integers(params, k)):
        if j == k:
            return Fraction(d, q ** (params.n + k))
    raise AssertionError("unreachable")


def convolution_rational(params: BlaschkeParams, k: int) -> Fraction:
    """Closed-form convolution of the binomial series of the two factors.

    c(k) = sum_{j=0}^{min(n,k)} C(n,j) (-a)^(n-j) a^(k-j) C(n-1+k-j, n-1).
    Slower than the recurrence (O(min(n,k)) big terms); kept as an independent
    formulation.
    """
    if k < 0:
        raise DomainError("k must be >= 0")
    a, n = params.lam, params.n
    total = Fraction(0)
    for j in range(min(n, k) + 1):
        total += (math.comb(n, j) * (-a) ** (n - j) * a ** (k - j)
                  * math.comb(n - 1 + k - j, n - 1))
    return total


def coeff_exact(params: BlaschkeParams, k: int,
                policy: PrecisionPolicy | None = None) -> mp.mpf:
    """c(k) rounded to the policy's precision; absolute error <= target_abs_error.

    The value itself is computed exactly in integer arithmetic (all
    coefficients have magnitude <= 1, so rounding at B bits gives absolute
    error <= 2^-B).
    """
    if policy is None:
        policy = default_policy(params)
    bits = policy.bits_for_target()
    rat = coeff_exact_rational(params, k)
    with mp.workprec(bits):
        return mp.mpf(rat.numerator) / rat.denominator


def coeff_series_exact(params: BlaschkeParams, kmax: int,
                       policy: PrecisionPolicy | None = None) -> CoefficientSeries:
    """Exact series, stored as correctly rounded doubles.

    Values below the double subnormal range round to 0.0; their true size is
    then below 5e-324 and irrelevant to every norm at these scales.
    """
    if kmax < 0:
        raise DomainError("kmax must be >= 0")
    if policy is None:
        policy = default_policy(params)
    if policy.target_abs_error < 2.0 ** -53:
        # double storage cannot certify tighter output than one ulp at 1.0
        raise DomainError(
            "series storage is double precision; use coeff_exact for tighter targets")
    q = params.lam.denominator
    den = q ** params.n
    out = np.empty(kmax + 1)
    for k, d in enumerate(_recurrence_integers(params, kmax)):
        out[k] = _ratio_to_float(d, den)
        den *= q
    return CoefficientSeries(params=params, kmax=kmax, values=out,
                             engine="exact", achieved_abs_error=2.0 ** -53)


# ---------------------------------------------------------------------------
# fft engine
# ---------------------------------------------------------------------------

def default_grid_size(params: BlaschkeParams) -> int:
    """Smallest power of two >= 8*ceil(n/alpha0), floored

    at 256 so small n still leaves a comfortable aliasing margin."""
    target = max(8 * math.ceil(params.n / params.alpha0), 256)
    return 1 << (target - 1).bit_length()


def coeff_series_fft(params: BlaschkeParams, kmax: int,
                     grid_size: int | None = None,
                     target_abs_error: float = 1e-10) -> CoefficientSeries:
    """DFT extraction from boundary samples m(e^{it})^n.

    The samples are unimodular, so the computation is overflow-free; aliasing
    folds in only coefficients of index >= grid_size - kmax, whose total mass
    is certified by tail_bound.
    """
    if kmax < 0:
        raise DomainError("kmax must be >= 0")
    if grid_size is None:
        grid_size = default_grid_size(params)
        while grid_size < 2 * kmax + 2:
            grid_size *= 2
    if grid_size & (grid_size - 1):
        raise DomainError(f"grid_size must be a power of two, got {grid_size}")
    if grid_size < 2 * kmax + 2:
        raise GridTooSmallError(f"grid_size {grid_size} < 2*kmax+2 = {2 * kmax + 2}")

    alias = tail_bound(params, grid_size - kmax)
    roundoff = 4e-16 * math.log2(grid_size)
    if not alias < target_abs_error:
        raise GridTooSmallError(
            f"aliasing bound {mp.nstr(alias, 4)} exceeds target {target_abs_error}; "
            "increase grid_size")

    lam = params.lam_float
    t = 2.0 * np.pi * np.arange(grid_size) / grid_size
    z = np.exp(1j * t)
    samples = ((z - lam) / (1.0 - lam * z)) ** params.n
    spec = np.fft.fft(samples)[: kmax + 1] / grid_size
    worst_imag = float(np.abs(spec.imag).max())
    if worst_imag > 1e-12:
        raise GridTooSmallError(
            f"imaginary residue {worst_imag:.3e} above 1e-12; samples inconsistent")
    return CoefficientSeries(params=params, kmax=kmax,
                             values=np.ascontiguousarray(spec.real),
                             engine="fft",
                             achieved_abs_error=float(alias) + roundoff + worst_imag)


# ---------------------------------------------------------------------------
# oscillatory engine
# ---------------------------------------------------------------------------

def _f_angle(lam: float, t: np.ndarray) -> np.ndarray:
    # continuous phase of m(e^{it}) on [0, pi]; coincides with the principal
    # argument because it runs from 0 to pi
    z = np.exp(1j * t)
    return np.angle((z - lam) / (1.0 - lam * z))


def _f_prime(lam: float, t) :
    return (1.0 - lam * lam) / (1.0 + lam * lam - 2.0 * lam * np.cos(t))


def _initial_panels(params: BlaschkeParams, k: int) -> np.ndarray:
    """Panels on [0, pi] with width <= min(pi/32, pi/(1 + |g'(center)|))."""
    lam, n = params.lam_float, params.n
    stack = [(0.0, math.pi)]
    out = []
    while stack:
        a, b = stack.pop()
        c = 0.5 * (a + b)
        gp = abs(n * _f_prime(lam, c) - k)
        if (b - a) > min(math.pi / 32.0, math.pi / (1.0 + gp)):
            stack.append((a, c))
            stack.append((c, b))
        else:
            out.append((a, b))
    out.sort()
    return np.asarray(out)


def _quad_panels(params: BlaschkeParams, k: int, panels: np.ndarray) -> float:
    lam, n = params.lam_float, params.n
    mid = 0.5 * (panels[:, 0] + panels[:, 1])[:, None]
    half = 0.5 * (panels[:, 1] - panels[:, 0])[:, None]
    ts = mid + half * _GL_NODES[None, :]
    g = n * _f_angle(lam, ts) - k * ts
    return float(((np.cos(g) * _GL_WEIGHTS[None, :]).sum(axis=1) * half[:, 0]).sum())


def oscillatory_integral(params: BlaschkeParams, k: int,
                         target_abs_error: float = 1e-11,
                         max_panels: int = 1 << 20):
    """(value, error_estimate, panels_used) for (1/pi) Re int_0^pi e^{i g}.

    g(t) = n*f(t) - k*t with f the boundary phase of the Möbius factor.  The
    initial panelisation ties widths to the local frequency |g'|; afterwards
    every panel is split in half until two successive global estimates agree,
    which is an honest (if slightly pessimistic) error certificate.
    """
    if k < 0:
        raise DomainError("k must be >= 0")
    panels = _initial_panels(params, k)
    est = _quad_panels(params, k, panels)
    while True:
        if 2 * len(panels) > max_panels:
            raise QuadratureError(
                f"no convergence within {max_panels} panels for k={k}, {params}")
        mids = 0.5 * (panels[:, 0] + panels[:, 1])
        panels = np.concatenate([
            np.stack([panels[:, 0], mids], axis=1),
            np.stack([mids, panels[:, 1]], axis=1),
        ])
        refined = _quad_panels(params, k, panels)
        err = abs(refined - est) / math.pi
        if err < target_abs_error:
            return refined / math.pi, err, len(panels)
        est = refined


def coeff_oscillatory(params: BlaschkeParams, k: int,
                      target_abs_error: float = 1e-11) -> float:
    """c(k) by oscillatory quadrature of the phase integral."""
    value, _, _ = oscillatory_integral(params, k, target_abs_error)
    return value


# ---------------------------------------------------------------------------
# tail bounds
# ---------------------------------------------------------------------------

def _radial_log_bound(params: BlaschkeParams, s: mp.mpf) -> mp.mpf:
    """log of max_{|z|=s} |m(z)^n| for s in (1, 1/lambda)."""
    lam = params.lam_hp
    return params.n * mp.log((s - lam) / (1 - lam * s))


def _tail_stationary_radius(params: BlaschkeParams, K: int) -> mp.mpf | None:
    """Stationary point of n*log m(s) - K*log s inside (1, 1/lambda), if any."""
    # K*lam*s^2 - (K(1+lam^2)-n(1-lam^2))*s + K*lam = 0; the roots multiply to 1
    lam, n = params.lam_hp, params.n
    b = K * (1 + lam * lam) - n * (1 - lam * lam)
    disc = b * b - 4 * (K * lam) ** 2
    if disc <= 0:
        return None
    root = (b + mp.sqrt(disc)) / (2 * K * lam)
    lo, hi = mp.mpf(1), 1 / lam
    if lo < root < hi:
        return root
    return None


def tail_bound(params: BlaschkeParams, K: int) -> mp.mpf:
    """Upper bound on sum_{k>=K} |c(k)|, via |c(k)| <= m(s)^n / s^k on (1, 1/lambda).

    Minimised over a radius grid (plus the analytic stationary radius).  Only
    meaningful beyond the oscillatory range: returns +inf when K <= n/alpha0.
    """
    if K <= params.alpha0_inv * params.n:
        return mp.inf
    return tail_power_bound(params, K, 1.0)


def tail_power_bound(params: BlaschkeParams, K: int, p: float) -> mp.mpf:
    """Upper bound on sum_{k>=K} |c(k)|^p (sup_{k>=K} |c(k)| for p=inf)."""
    if K <= params.alpha0_inv * params.n:
        return mp.inf
    lam = params.lam_hp
    lo, hi = mp.mpf(1), 1 / lam
    grid = [lo + (hi - lo) * mp.mpf(i) / 65 for i in range(1, 65)]
    opt = _tail_stationary_radius(params, K)
    if opt is not None:
        grid.append(opt)
    best = mp.inf
    for s in grid:
        logs = mp.log(s)
        log_point = _radial_log_bound(params, s) - K * logs   # log of bound at k=K
        if p == math.inf:
            val = mp.exp(log_point)
        else:
            # geometric sum of the p-th powers: point^p / (1 - s^-p)
            val = mp.exp(p * log_point) / (1 - mp.exp(-p * logs))
        if val < best:
            best = val
    return best
