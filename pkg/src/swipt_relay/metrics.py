"""Outage probability, throughput and ASER from an MGF evaluator.

Every function here takes ``mgf``: any callable mapping real or complex
``s`` (scalar or array) to ``E[exp(-s*gamma)]``.  That is usually a
:class:`~swipt_relay.mgf.PadeApproximant`, but closed-form MGFs and the
asymptotic ones from :mod:`swipt_relay.asymptotics` plug in the same way.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy import integrate

from .errors import ConvergenceError, DomainError
from .model import PS, TS, Protocol
from .specfun import binomial

__all__ = [
    "EulerInversionParams",
    "MetricResult",
    "aser",
    "aser_dpsk",
    "aser_fsk",
    "outage",
    "throughput",
]

MGF = Callable[[complex], complex]


@dataclass(frozen=True)
class EulerInversionParams:
    """Truncation parameters of the Euler-summation Laplace inversion."""

    A: float = 23.0
    Q: int = 15
    N: int = 21

    def __post_init__(self):
        if not self.A > 0:
            raise DomainError(f"A must be positive, got {self.A!r}")
        if self.Q < 0 or self.N < 0 or int(self.Q) != self.Q or int(self.N) != self.N:
            raise DomainError("Q and N must be non-negative integers")

    @classmethod
    def parse(cls, text: str) -> "EulerInversionParams":
        """Parse ``"A,Q,N"``."""
        try:
            a, q, n = (part.strip() for part in text.split(","))
            return cls(float(a), int(q), int(n))
        except ValueError as exc:
            raise DomainError(f"expected 'A,Q,N', got {text!r}") from exc


@dataclass(frozen=True)
class MetricResult:
    """A metric value with a non-negative error estimate and its provenance.

    ``out_of_range`` is set when a probability left ``[0, 1]`` by more than
    its error estimate; ``value`` is never altered, use :meth:`clamped`
    for display.
    """

    value: float
    error_estimate: float = 0.0
    method: str = "exact"
    out_of_range: bool = False

    def __post_init__(self):
        if not self.error_estimate >= 0:
            raise DomainError("error estimate must be non-negative")

    def clamped(self) -> float:
        return min(max(self.value, 0.0), 1.0)

    def __float__(self) -> float:
        return float(self.value)


def _euler_terms(mgf: MGF, gamma_th: float, A: float, n_max: int) -> np.ndarray:
    n = np.arange(n_max + 1)
    s = (A + 2j * math.pi * n) / (2.0 * gamma_th)
    vals = np.asarray(mgf(s), dtype=complex) / s
    return vals.real


def outage(mgf: MGF, gamma_th: float, ep: EulerInversionParams = EulerInversionParams(),
           method: str = "pade-euler") -> MetricResult:
    """CDF of the SNR at `gamma_th` by Euler-summation Laplace inversion.

    Inverts ``M(s)/s``; the error estimate is the usual discretisation term
    ``exp(-A)/(1-exp(-A))`` plus the magnitude of the first omitted block of
    the Euler sum.
    """
    if not gamma_th > 0:
        raise DomainError(f"threshold must be positive, got {gamma_th!r}")
    A, Q, N = ep.A, ep.Q, ep.N
    re = _euler_terms(mgf, gamma_th, A, N + Q + 1)
    sign = np.where(np.arange(len(re)) % 2 == 0, 1.0, -1.0)
    weighted = sign * re
    weighted[0] *= 0.5
    partial = np.cumsum(weighted)
    pref = 2.0 ** (-Q) * math.exp(A / 2.0) / gamma_th
    total = 0.0
    tail = 0.0
    for q in range(Q + 1):
        w = binomial(Q, q)
        total += w * partial[N + q]
        tail += (-1) ** (N + 1 + q) * w * re[N + q + 1]
    value = pref * total
    err = math.exp(-A) / (1.0 - math.exp(-A)) + abs(pref * tail)
    flagged = value < -err or value > 1.0 + err
    return MetricResult(float(value), float(err), method, bool(flagged))


def throughput(proto: Protocol, p_out: float, R_T: float) -> float:
    """Delay-limited throughput ``(1 - p_out) R_T / 2``, scaled by ``1 - beta`` for TS."""
    if not -1e-9 <= p_out <= 1.0 + 1e-9:
        raise DomainError(f"outage probability must lie in [0, 1], got {p_out!r}")
    p_out = min(max(p_out, 0.0), 1.0)
    base = (1.0 - p_out) * R_T / 2.0
    if isinstance(proto, TS):
        return base * (1.0 - proto.beta)
    if isinstance(proto, PS):
        return base
    raise DomainError(f"unknown protocol {proto!r}")


def _check_M(M):
    if isinstance(M, bool) or int(M) != M or M < 2:
        raise DomainError(f"constellation size must be an integer >= 2, got {M!r}")
    return int(M)


def aser_fsk(mgf: MGF, M: int) -> float:
    """Average symbol error rate of noncoherent M-FSK."""
    M = _check_M(M)
    total = 0.0
    for m in range(1, M):
        total += (-1) ** (m + 1) * binomial(M - 1, m) / (m + 1) * float(np.real(mgf(m / (m + 1))))
    return total


def aser_dpsk(mgf: MGF, M: int, atol: float = 1e-9) -> float:
    """Average symbol error rate of M-DPSK (single finite-range integral)."""
    M = _check_M(M)
    g = math.sin(math.pi / M) ** 2
    root = math.sqrt(1.0 - g)
    upper = (M - 1) * math.pi / M
    if M == 2:
        # g = 1: the integrand is constant
        return upper / math.pi * float(np.real(mgf(1.0)))

    def integrand(phi):
        return float(np.real(mgf(g / (1.0 + root * math.cos(phi)))))

    val, err = integrate.quad(integrand, 0.0, upper, epsabs=atol * math.pi, epsrel=0.0, limit=200)
    if not err <= atol * math.pi:
        raise ConvergenceError("M-DPSK ASER quadrature did not converge", error=err / math.pi)
    return val / math.pi


def aser(mgf: MGF, mod) -> float:
    """Dispatch on a :class:`~swipt_relay.model.DPSK` or ``FSK`` instance."""
    name = getattr(mod, "name", None)
    if name == "FSK":
        return aser_fsk(mgf, mod.M)
    if name == "DPSK":
        return aser_dpsk(mgf, mod.M)
    raise DomainError(f"unknown modulation {mod!r}")
