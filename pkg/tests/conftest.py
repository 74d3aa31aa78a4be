"""Shared fixtures: cached series and params so expensive grids are built once."""

from fractions import Fraction
from functools import lru_cache

import pytest

from blaschke_lab import coeff_series_exact, coeff_series_fft, make_params

HALF = Fraction(1, 2)


@lru_cache(maxsize=128)
def fft_series_cached(lam: Fraction, n: int, kmax: int | None = None):
    params = make_params(lam, n)
    return coeff_series_fft(params, kmax if kmax is not None else params.default_kmax())


@lru_cache(maxsize=32)
def exact_series_cached(lam: Fraction, n: int, kmax: int | None = None):
    params = make_params(lam, n)
    return coeff_series_exact(params, kmax if kmax is not None else params.default_kmax())


@pytest.fixture(scope="session")
def fft_series():
    return fft_series_cached


@pytest.fixture(scope="session")
def exact_series():
    return exact_series_cached
