"""Numerical laboratory for the Taylor coefficients of powers of a Blaschke
factor ((z - a)/(1 - a z))^n: three cross-validating coefficient engines,
lp-norms with a seven-range decay decomposition, Airy-type uniform
asymptotics at the coalescing saddle, and scaling-exponent experiments.
"""

__version__ = "0.1.0"

from .airy import airy, airy_leading_negative
from .asymptotics import (AiryPrediction, airy_predict, airy_window,
                          decay_envelope, sup_coefficient)
from .engines import (CoefficientSeries, coeff_exact, coeff_exact_rational,
                      coeff_oscillatory, coeff_series_exact, coeff_series_fft,
                      convolution_rational, default_grid_size,
                      oscillatory_integral, tail_bound, tail_power_bound)
from .errors import (BlaschkeLabError, DomainError, EmptyWindowError,
                     GridTooSmallError, InsufficientRangeError,
                     PrecisionExhaustedError, QuadratureError,
                     RegionOrderError)
from .norms import (NormReport, Region, RegionPartition, lp_norm,
                    region_mass, region_partition)
from .params import BlaschkeParams, PrecisionPolicy, default_policy, make_params
from .phase import PhaseFunction, g2_at_stationary, stationary_point, vdc_bound
from .scaling import (ScalingFit, WeylExperiment, airy_regime_mass,
                      fit_exponent, p4_model_residuals, p4_ratio_scan,
                      run_norm_scaling, theory_slope, weyl_sums)

__all__ = [name for name in dir() if not name.startswith("_")]
