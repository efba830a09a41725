"""Moments of the end-to-end SNR under independent Rayleigh fading.

The closed form is

    mu_n = a^n C lam_sr^(n-1) / (b lam_rd Gamma(n))
           * G^{1,3}_{3,1}[ b lam_sr lam_rd / C | 2, 1, 1-n ; n+1 ],

obtained by writing ``(1 + C/(b x y))^(-n)`` as a Mellin-Barnes integral
and averaging ``x^(n+s) y^s`` over the two exponential gains.  The
two-dimensional quadrature in :func:`moment_quadrature` integrates the
definition directly and serves as an independent check.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import integrate, special

from .errors import ConvergenceError, DegenerateError, DomainError
from .model import UnifiedParams
from .specfun import MeijerGSpec, lngamma_complex, meijer_g

__all__ = [
    "MAX_ORDER",
    "MomentRequest",
    "aof",
    "asnr",
    "moment_closed_form",
    "moment_meijer_spec",
    "moment_quadrature",
    "moments",
]

MAX_ORDER = 20


@dataclass(frozen=True)
class MomentRequest:
    params: UnifiedParams
    n: int
    lambda_sr: float = 1.0
    lambda_rd: float = 1.0

    def __post_init__(self):
        if isinstance(self.n, bool) or not isinstance(self.n, (int, np.integer)) or self.n < 1:
            raise DomainError(f"moment order must be a positive integer, got {self.n!r}")
        if self.n > MAX_ORDER:
            raise DomainError(
                f"moment order {self.n} exceeds {MAX_ORDER}; higher moments are "
                "useless for the Hankel system in double precision"
            )
        if not (self.lambda_sr > 0 and self.lambda_rd > 0):
            raise DomainError("channel means must be positive")


def moment_meijer_spec(n: int) -> MeijerGSpec:
    """Meijer-G parameter class appearing in the n-th moment."""
    return MeijerGSpec(m=1, n=3, a=(2.0, 1.0, 1.0 - n), b=(n + 1.0,))


def moment_closed_form(req: MomentRequest) -> float:
    """n-th moment of the end-to-end SNR from the Meijer-G closed form."""
    p, n = req.params, req.n
    if p.a_hat == 0:
        return 0.0
    C = p.C
    z = p.b_hat * req.lambda_sr * req.lambda_rd / C
    g = meijer_g(moment_meijer_spec(n), z)
    log_pref = (
        n * math.log(p.a_hat) + math.log(C) + (n - 1) * math.log(req.lambda_sr)
        - math.log(p.b_hat) - math.log(req.lambda_rd)
        - lngamma_complex(float(n)).real
    )
    return math.exp(log_pref) * g


def _x_upper_limit(n: int, lam: float, rtol: float) -> float:
    # integrand <= (a x)^n e^{-x/lam}/lam: extend 40*lam until the tail bound is negligible
    upper = 40.0
    while special.gammaincc(n + 1, upper) > 1e-3 * rtol:
        upper *= 1.5
    return upper * lam


def moment_quadrature(req: MomentRequest, rtol: float = 1e-9) -> float:
    """n-th moment by nested adaptive quadrature of its defining double integral.

    The outer integral runs over ``g_rd`` and the inner one over ``g_sr``,
    both weighted by their exponential densities.
    """
    p, n = req.params, req.n
    if p.a_hat == 0:
        return 0.0
    lam_sr, lam_rd = req.lambda_sr, req.lambda_rd
    a, b, C = p.a_hat, p.b_hat, p.C
    x_max = _x_upper_limit(n, lam_sr, rtol)
    y_max = 40.0 * lam_rd
    # work with gamma/(a*lam_sr) to keep magnitudes O(1)
    scale = (a * lam_sr) ** n

    def inner(y):
        def f(x):
            u = b * x * y
            return (x / lam_sr * u / (u + C)) ** n * math.exp(-x / lam_sr) / lam_sr

        val, err = integrate.quad(f, 0.0, x_max, epsabs=0.0, epsrel=rtol * 0.1, limit=200)
        return val * math.exp(-y / lam_rd) / lam_rd

    val, err = integrate.quad(inner, 0.0, y_max, epsabs=0.0, epsrel=rtol, limit=200)
    if not math.isfinite(val) or err > 10 * rtol * abs(val):
        raise ConvergenceError("double quadrature failed to converge", value=val, error=err)
    return scale * val


def moments(params: UnifiedParams, order: int, lambda_sr: float = 1.0,
            lambda_rd: float = 1.0) -> np.ndarray:
    """Array ``[mu_0, mu_1, ..., mu_order]`` with ``mu_0 = 1``."""
    out = np.empty(order + 1)
    out[0] = 1.0
    for n in range(1, order + 1):
        out[n] = moment_closed_form(MomentRequest(params, n, lambda_sr, lambda_rd))
    return out


def asnr(params: UnifiedParams, lambda_sr: float = 1.0, lambda_rd: float = 1.0) -> float:
    """Average end-to-end SNR (the first moment)."""
    return moment_closed_form(MomentRequest(params, 1, lambda_sr, lambda_rd))


def aof(params: UnifiedParams, lambda_sr: float = 1.0, lambda_rd: float = 1.0) -> float:
    """Amount of fading ``mu_2 / mu_1**2 - 1``."""
    mu1 = asnr(params, lambda_sr, lambda_rd)
    if not mu1 > 1e-300:
        raise DegenerateError("first moment underflowed; amount of fading undefined", mu1=mu1)
    mu2 = moment_closed_form(MomentRequest(params, 2, lambda_sr, lambda_rd))
    return max(mu2 / (mu1 * mu1) - 1.0, 0.0)
