"""Performance analysis of noncoherent SWIPT amplify-and-forward relay links.

The package computes moments, a Pade-reconstructed MGF, outage probability,
throughput and average symbol error rate of a dual-hop link whose relay
harvests energy by time switching (TS) or power splitting (PS), for M-DPSK
and noncoherent M-FSK.  High-SNR approximations and a Monte-Carlo oracle
are included for cross-checking.
"""

from .errors import (
    ConditioningError,
    ConvergenceError,
    DegenerateError,
    DomainError,
    NumericalError,
    PoleError,
    PoleProximityError,
    SwiptError,
    UnsupportedError,
)
from .model import DPSK, FSK, PS, TS, SystemConfig, UnifiedParams, gamma_eq, unified_params
from .moments import aof, asnr
from .mgf import PadeApproximant, adaptive_pade, build_pade
from .metrics import EulerInversionParams, MetricResult, aser, outage, throughput
from .pipeline import analytic_mgf, evaluate_point

__version__ = "0.1.0"

__all__ = [
    "ConditioningError",
    "ConvergenceError",
    "DPSK",
    "DegenerateError",
    "DomainError",
    "EulerInversionParams",
    "FSK",
    "MetricResult",
    "NumericalError",
    "PS",
    "PadeApproximant",
    "PoleError",
    "PoleProximityError",
    "SwiptError",
    "SystemConfig",
    "TS",
    "UnifiedParams",
    "UnsupportedError",
    "adaptive_pade",
    "analytic_mgf",
    "aof",
    "aser",
    "asnr",
    "build_pade",
    "evaluate_point",
    "gamma_eq",
    "outage",
    "throughput",
    "unified_params",
]
