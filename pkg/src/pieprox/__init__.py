"""Proximal operator of the piece-wise exponential penalty and IRL1 analysis."""

__version__ = "0.1.0"

from .lambert_w import BranchValue, LambertDomainError, lambert_w0, lambert_wm1
from .prox import (
    Params,
    ProxDomainError,
    ProxResult,
    Regime,
    RegimeError,
    Thresholds,
    objective,
    phi,
    prox,
    prox_elementwise,
    tau_bar,
    x1,
    x2,
    x2_inverse,
)
from .irl1 import (
    Interval,
    LimitKind,
    LimitPrediction,
    PreconditionError,
    RegionReport,
    Trajectory,
    adaptive_init,
    deviation_region,
    error_bounds,
    irl1_run,
    irl1_step,
    iterate_errors,
    predict_limit,
    qlinear_rate,
)
from .oracle import GridSpec, brute_force_prox, brute_force_tau_bar

__all__ = [
    "BranchValue", "LambertDomainError", "lambert_w0", "lambert_wm1",
    "Params", "ProxDomainError", "ProxResult", "Regime", "RegimeError", "Thresholds",
    "objective", "phi", "prox", "prox_elementwise", "tau_bar", "x1", "x2", "x2_inverse",
    "Interval", "LimitKind", "LimitPrediction", "PreconditionError", "RegionReport",
    "Trajectory", "adaptive_init", "deviation_region", "error_bounds", "irl1_run",
    "irl1_step", "iterate_errors", "predict_limit", "qlinear_rate",
    "GridSpec", "brute_force_prox", "brute_force_tau_bar",
]
