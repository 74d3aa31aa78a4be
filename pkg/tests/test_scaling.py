"""Regression harness: exponent fits, theory slopes, p=4 specifics."""

import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from blaschke_lab import (DomainError, fit_exponent, p4_model_residuals,
                          p4_ratio_scan, run_norm_scaling, theory_slope)

HALF = Fraction(1, 2)
SMALL_GRID = (64, 128, 256, 512)


def test_fit_exact_line():
    pts = [(x, -x / 3 + 2.0) for x in (1.0, 2.0, 3.0, 4.0, 5.0)]
    slope, stderr = fit_exponent(pts)
    assert slope == pytest.approx(-1 / 3, abs=1e-14)
    assert stderr == pytest.approx(0.0, abs=1e-14)


def test_fit_with_tiny_noise():
    rng = np.random.default_rng(7)
    xs = np.linspace(0, 3, 12)
    ys = xs / 2 + 1.0 + rng.uniform(-1e-6, 1e-6, xs.size)
    slope, stderr = fit_exponent(zip(xs, ys))
    assert slope == pytest.approx(0.5, abs=1e-5)
    assert stderr < 1e-5


def test_fit_needs_four_points():
    with pytest.raises(DomainError):
        fit_exponent([(1, 1), (2, 2), (3, 3)])


def test_fit_degenerate_abscissae():
    with pytest.raises(DomainError):
        fit_exponent([(1, 1), (1, 2), (1, 3), (1, 4)])


@settings(max_examples=40, deadline=None)
@given(shift=st.floats(-50, 50, allow_nan=False),
       scale=st.floats(0.01, 100, allow_nan=False))
def test_slope_invariant_under_norm_rescaling(shift, scale):
    # rescaling all norms by a constant shifts log-norms; slope must not move
    xs = [1.0, 2.0, 3.0, 4.0, 6.0]
    ys = [0.7 * x - 1.0 + 0.01 * math.sin(x) for x in xs]
    base, _ = fit_exponent(zip(xs, ys))
    shifted, _ = fit_exponent(zip(xs, [y + shift + math.log(scale) for y in ys]))
    assert shifted == pytest.approx(base, abs=1e-9)


def test_theory_slope_table():
    assert theory_slope(1.0) == Fraction(1, 2)
    assert theory_slope(2.0) == 0
    assert theory_slope(3.0) == Fraction(-1, 6)
    assert theory_slope(3.5) == Fraction(-3, 14)
    assert theory_slope(4.0) == 1
    assert theory_slope(6.0) == Fraction(-5, 18)
    assert theory_slope(math.inf) == Fraction(-1, 3)
    with pytest.raises(DomainError):
        theory_slope(0.5)


def test_grid_validation():
    with pytest.raises(DomainError):
        run_norm_scaling(HALF, 2.0, (64, 128, 256))          # too short
    with pytest.raises(DomainError):
        run_norm_scaling(HALF, 2.0, (32, 64, 128, 256))      # starts too low
    with pytest.raises(DomainError):
        run_norm_scaling(HALF, 2.0, (64, 128, 300, 600))     # ratio not 2


def test_plancherel_slope_is_flat():
    fit = run_norm_scaling(HALF, 2.0, SMALL_GRID)
    assert abs(fit.fitted_slope - 0.0) <= 0.01
    assert fit.theory_slope == 0


def test_parallel_matches_serial():
    serial = run_norm_scaling(HALF, 3.0, SMALL_GRID)
    parallel = run_norm_scaling(HALF, 3.0, SMALL_GRID, workers=4)
    assert serial.norms == parallel.norms
    assert serial.fitted_slope == parallel.fitted_slope


def test_near_boundary_warning():
    with pytest.warns(UserWarning, match="regime boundary"):
        run_norm_scaling(HALF, 3.97, SMALL_GRID)


def test_p4_uses_log_corrected_model():
    fit = run_norm_scaling(HALF, 4.0, SMALL_GRID)
    assert fit.theory_slope == 1
    # abscissa is the log-corrected regressor, not log n
    assert fit.abscissa(256) == pytest.approx(0.25 * math.log(math.log(256) / 256))
    assert fit.fitted_slope == pytest.approx(1.0, abs=0.25)


def test_p4_ratios_drift_slowly():
    ratios = [r for _, r in p4_ratio_scan(HALF, SMALL_GRID)]
    for a, b in zip(ratios, ratios[1:]):
        assert abs(b - a) / a < 0.15  # doubling n moves the ratio by < 15%


def test_p4_log_model_beats_pure_power_law():
    sse_log, sse_pure = p4_model_residuals(HALF, (256, 512, 1024, 2048))
    assert sse_log < sse_pure
