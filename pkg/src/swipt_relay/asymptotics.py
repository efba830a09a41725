"""High-SNR approximations of outage, MGF and ASER, and diversity order.

When the first hop is much stronger than the second the end-to-end SNR
behaves like ``b_hat * g_sr**2 * g_rd``.  Its CDF and MGF are Meijer-G
functions:

    F(t) = 1 - G^{0,3}_{3,0}[Omega*b_hat | 0, 1/2, 1 ; -] / sqrt(pi)
    M(s) = 1 - G^{1,3}_{3,1}[xi*b_hat*s | 0, 1/2, 1 ; 1] / sqrt(pi)

with ``xi = 4 lam_sr^2 lam_rd`` and ``Omega = xi / t``.  Both are evaluated
through equivalent G-functions that produce the small quantities directly
(moving the contour across the pole at ``s = 0``), which avoids the
cancellation in ``1 - ...`` at high SNR.  The printed forms are available
as :func:`outage_first_hop_printed` and :func:`mgf_first_hop_printed`.
"""

from __future__ import annotations

import math
from enum import Enum
from typing import Sequence

import numpy as np
from scipy import integrate

from . import metrics
from .errors import ConvergenceError, DomainError
from .model import UnifiedParams
from .specfun import MeijerGSpec, gamma_complex, meijer_g

__all__ = [
    "Regime",
    "aser_asym",
    "diversity_order",
    "in_validity_region",
    "mgf_asym",
    "mgf_first_hop_printed",
    "outage_asym",
    "outage_asym_oracle",
    "outage_first_hop_printed",
]

SQRT_PI = math.sqrt(math.pi)
_G_HALF = gamma_complex(0.5).real
_G_MHALF = gamma_complex(-0.5).real
_G_3HALF = gamma_complex(1.5).real

# CDF and its complement
_CDF_PRINTED = MeijerGSpec(m=0, n=3, a=(0.0, 0.5, 1.0), b=())
_CDF_DIRECT = MeijerGSpec(m=1, n=3, a=(0.0, 0.0, 0.5, 1.0), b=(0.0,))
# MGF and its complement
_MGF_PRINTED = MeijerGSpec(m=1, n=3, a=(0.0, 0.5, 1.0), b=(1.0,))
_MGF_DIRECT = MeijerGSpec(m=1, n=3, a=(0.0, 0.0, 0.5), b=(0.0,))


class Regime(str, Enum):
    FIRST_HOP_HIGH = "first-hop-high"
    BOTH_HOPS_HIGH = "both-hops-high"
    DOMINANT = "dominant-term"


def _regime(regime) -> Regime:
    try:
        return Regime(regime)
    except ValueError as exc:
        raise DomainError(f"unknown asymptotic regime {regime!r}") from exc


def in_validity_region(p: UnifiedParams, lambda_sr: float = 1.0, threshold: float = 100.0) -> bool:
    """True when the first-hop average SNR ``a_hat * lam_sr`` is at least `threshold`."""
    return p.a_hat * lambda_sr >= threshold


def outage_first_hop_printed(p: UnifiedParams, gamma_th: float,
                             lambda_sr: float = 1.0, lambda_rd: float = 1.0) -> float:
    """``1 - G^{0,3}_{3,0}[...] / sqrt(pi)`` evaluated literally."""
    z = 4.0 * p.b_hat * lambda_sr**2 * lambda_rd / gamma_th
    return 1.0 - meijer_g(_CDF_PRINTED, z) / SQRT_PI


def mgf_first_hop_printed(p: UnifiedParams, s: float,
                          lambda_sr: float = 1.0, lambda_rd: float = 1.0) -> float:
    """``1 - G^{1,3}_{3,1}[...] / sqrt(pi)`` evaluated literally."""
    z = 4.0 * lambda_sr**2 * lambda_rd * p.b_hat * s
    return 1.0 - meijer_g(_MGF_PRINTED, z) / SQRT_PI


def outage_asym(p: UnifiedParams, gamma_th: float, regime="first-hop-high",
                lambda_sr: float = 1.0, lambda_rd: float = 1.0) -> float:
    """Asymptotic outage probability at threshold `gamma_th`.

    ``first-hop-high`` is the Meijer-G expression, ``both-hops-high`` its
    elementary large-argument expansion and ``dominant-term`` the leading
    ``SNR^(-1/2)`` term alone.
    """
    if not gamma_th > 0:
        raise DomainError(f"threshold must be positive, got {gamma_th!r}")
    regime = _regime(regime)
    omega_b = 4.0 * lambda_sr**2 * lambda_rd / gamma_th * p.b_hat
    if regime is Regime.FIRST_HOP_HIGH:
        return meijer_g(_CDF_DIRECT, omega_b) / SQRT_PI
    if regime is Regime.BOTH_HOPS_HIGH:
        bracket = (_G_MHALF / omega_b + _G_HALF * _G_MHALF / math.sqrt(omega_b) + _G_HALF)
        return 1.0 - bracket / SQRT_PI
    return -_G_HALF * _G_MHALF / math.sqrt(math.pi * omega_b)


def outage_asym_oracle(p: UnifiedParams, gamma_th: float,
                       lambda_sr: float = 1.0, lambda_rd: float = 1.0,
                       atol: float = 1e-10) -> float:
    """``P(b_hat g_sr^2 g_rd <= gamma_th)`` by one-dimensional quadrature.

    Averages ``1 - exp(-gamma_th / (b_hat lam_rd g^2))`` over the
    exponential first-hop gain; ``-expm1`` keeps small probabilities exact.
    """
    if not gamma_th > 0:
        raise DomainError(f"threshold must be positive, got {gamma_th!r}")
    w = gamma_th / (p.b_hat * lambda_rd)

    def f(x):
        if x == 0.0:
            return 1.0 / lambda_sr
        return -math.expm1(-w / (x * x)) * math.exp(-x / lambda_sr) / lambda_sr

    # the factor switches off around x ~ sqrt(w) and then decays like w/x^2;
    # split geometrically from there so each piece is smooth
    top = 50.0 * lambda_sr
    knee = min(math.sqrt(w), top)
    edges = [0.0, knee]
    while edges[-1] < top:
        edges.append(min(edges[-1] * 8.0, top))
    edges.append(math.inf)
    total, err = 0.0, 0.0
    for lo, hi in zip(edges[:-1], edges[1:]):
        if hi <= lo:
            continue
        v, e = integrate.quad(f, lo, hi, epsabs=atol * 0.1, epsrel=1e-12, limit=400)
        total += v
        err += e
    if err > atol:
        raise ConvergenceError("asymptotic outage quadrature did not converge", error=err)
    return total


def mgf_asym(p: UnifiedParams, s: float, regime="first-hop-high",
             lambda_sr: float = 1.0, lambda_rd: float = 1.0) -> float:
    """Asymptotic MGF of the SNR at real ``s > 0``."""
    if not s > 0:
        raise DomainError(f"asymptotic MGF needs s > 0, got {s!r}")
    regime = _regime(regime)
    xi_b_s = 4.0 * lambda_sr**2 * lambda_rd * p.b_hat * s
    if regime is Regime.FIRST_HOP_HIGH:
        return meijer_g(_MGF_DIRECT, xi_b_s) / SQRT_PI
    if regime is Regime.BOTH_HOPS_HIGH:
        bracket = (_G_MHALF / xi_b_s + _G_HALF * _G_MHALF * _G_3HALF / math.sqrt(xi_b_s)
                   + _G_HALF)
        return 1.0 - bracket / SQRT_PI
    return -_G_HALF * _G_MHALF * _G_3HALF / math.sqrt(math.pi * xi_b_s)


def aser_asym(p: UnifiedParams, mod, regime="first-hop-high",
              lambda_sr: float = 1.0, lambda_rd: float = 1.0) -> float:
    """ASER obtained by feeding the asymptotic MGF into the exact ASER formulas."""
    regime = _regime(regime)

    def mgf(s):
        s = np.asarray(s)
        if s.ndim == 0:
            return mgf_asym(p, float(np.real(s)), regime, lambda_sr, lambda_rd)
        return np.array([mgf_asym(p, float(np.real(v)), regime, lambda_sr, lambda_rd)
                         for v in s.ravel()]).reshape(s.shape)

    return metrics.aser(mgf, mod)


def diversity_order(curve: Sequence[tuple[float, float]]) -> float:
    """Least-squares slope of ``-log10(P_out)`` against ``log10(SNR)``.

    `curve` holds ``(snr_db, p_out)`` pairs from the high-SNR region.
    """
    pts = np.asarray(curve, dtype=float)
    if pts.ndim != 2 or pts.shape[1] != 2 or len(pts) < 2:
        raise DomainError("need at least two (snr_db, p_out) points")
    if np.any(pts[:, 1] <= 0):
        raise DomainError("outage probabilities must be positive")
    x = pts[:, 0] / 10.0
    y = -np.log10(pts[:, 1])
    slope, _ = np.polyfit(x, y, 1)
    return float(slope)
