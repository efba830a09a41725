"""Monte-Carlo estimators for the end-to-end SNR.

Trials are split into fixed-size shards.  Each shard draws from its own
generator spawned from a single :class:`numpy.random.SeedSequence`, so the
result for a given seed does not depend on how many worker threads run the
shards.  Shards return ``(count, sum, sum of squares)`` triples that are
merged in shard order.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Iterator

import numpy as np

from .errors import ConvergenceError, DomainError
from .model import UnifiedParams, gamma_eq

__all__ = [
    "SHARD_SIZE",
    "SimEstimate",
    "SimPlan",
    "empirical_mgf",
    "empirical_moment",
    "empirical_outage",
    "run",
    "sample_gamma_eq",
    "semi_analytic_aser",
]

#: trials per shard (and per generator)
SHARD_SIZE = 1 << 18


@dataclass(frozen=True)
class SimPlan:
    params: UnifiedParams
    trials: int = 1_000_000
    seed: int = 0
    lambda_sr: float = 1.0
    lambda_rd: float = 1.0

    def __post_init__(self):
        if isinstance(self.trials, bool) or int(self.trials) != self.trials or self.trials < 1:
            raise DomainError(f"trials must be a positive integer, got {self.trials!r}")
        if not (self.lambda_sr > 0 and self.lambda_rd > 0):
            raise DomainError("channel means must be positive")

    def shard_sizes(self) -> list[int]:
        full, rest = divmod(int(self.trials), SHARD_SIZE)
        return [SHARD_SIZE] * full + ([rest] if rest else [])


@dataclass(frozen=True)
class SimEstimate:
    """Sample mean and its standard error."""

    mean: float
    std_error: float
    trials: int

    def z_score(self, reference: float) -> float:
        """Distance from `reference` in standard errors (inf if the SE is zero and they differ)."""
        diff = abs(self.mean - reference)
        if self.std_error == 0:
            return 0.0 if diff == 0 else math.inf
        return diff / self.std_error


def _exponential(rng: np.random.Generator, lam: float, size: int) -> np.ndarray:
    # inverse CDF; 1 - U lies in (0, 1] so the log is finite
    return -lam * np.log1p(-rng.random(size))


def _shard_samples(plan: SimPlan, rng: np.random.Generator, size: int) -> np.ndarray:
    g_sr = _exponential(rng, plan.lambda_sr, size)
    g_rd = _exponential(rng, plan.lambda_rd, size)
    return gamma_eq(plan.params, g_sr, g_rd)


def sample_gamma_eq(plan: SimPlan) -> Iterator[np.ndarray]:
    """Yield the SNR samples of each shard in order."""
    children = np.random.SeedSequence(plan.seed).spawn(len(plan.shard_sizes()))
    for ss, size in zip(children, plan.shard_sizes()):
        yield _shard_samples(plan, np.random.default_rng(ss), size)


def run(plan: SimPlan, statistic: Callable[[np.ndarray], np.ndarray],
        workers: int = 1) -> SimEstimate:
    """Average ``statistic(gamma)`` over the plan's trials.

    `statistic` maps an array of SNR samples to an array of per-trial
    values.  Shards are evaluated on up to `workers` threads; the merge is
    in shard order so results are reproducible for any worker count.
    """
    sizes = plan.shard_sizes()
    children = np.random.SeedSequence(plan.seed).spawn(len(sizes))

    def shard(i):
        vals = np.asarray(statistic(_shard_samples(plan, np.random.default_rng(children[i]), sizes[i])),
                          dtype=float)
        return vals.size, float(vals.sum()), float(np.dot(vals, vals))

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(shard, range(len(sizes))))
    else:
        parts = [shard(i) for i in range(len(sizes))]
    n = sum(p[0] for p in parts)
    s1 = math.fsum(p[1] for p in parts)
    s2 = math.fsum(p[2] for p in parts)
    mean = s1 / n
    var = max(s2 / n - mean * mean, 0.0) * n / max(n - 1, 1)
    return SimEstimate(mean, math.sqrt(var / n), n)


def empirical_outage(plan: SimPlan, gamma_th: float, workers: int = 1) -> SimEstimate:
    """Fraction of trials with SNR below `gamma_th`, with the binomial standard error."""
    if not gamma_th > 0:
        raise DomainError(f"threshold must be positive, got {gamma_th!r}")
    est = run(plan, lambda g: (g < gamma_th).astype(float), workers)
    p = est.mean
    return SimEstimate(p, math.sqrt(p * (1.0 - p) / est.trials), est.trials)


def empirical_mgf(plan: SimPlan, s: float, workers: int = 1) -> SimEstimate:
    """Sample mean of ``exp(-s*gamma)`` for real ``s >= 0``."""
    if not s >= 0:
        raise DomainError(f"s must be non-negative, got {s!r}")
    return run(plan, lambda g: np.exp(-s * g), workers)


def empirical_moment(plan: SimPlan, n: int, workers: int = 1) -> SimEstimate:
    """Sample mean of ``gamma**n``."""
    if isinstance(n, bool) or int(n) != n or n < 1:
        raise DomainError(f"moment order must be a positive integer, got {n!r}")
    return run(plan, lambda g: g ** int(n), workers)


def _fsk_kernel(M: int) -> Callable[[np.ndarray], np.ndarray]:
    from .specfun import binomial

    terms = [((-1) ** (m + 1) * binomial(M - 1, m) / (m + 1), m / (m + 1)) for m in range(1, M)]

    def kernel(g):
        out = np.zeros_like(g)
        for w, a in terms:
            out += w * np.exp(-a * g)
        return out

    return kernel


def _dpsk_kernel(M: int, nodes: int) -> Callable[[np.ndarray], np.ndarray]:
    if M == 2:
        return lambda g: 0.5 * np.exp(-g)
    sin2 = math.sin(math.pi / M) ** 2
    root = math.sqrt(1.0 - sin2)
    upper = (M - 1) * math.pi / M
    x, w = np.polynomial.legendre.leggauss(nodes)
    phi = 0.5 * upper * (x + 1.0)
    w = 0.5 * upper * w / math.pi
    rate = sin2 / (1.0 + root * np.cos(phi))

    def kernel(g):
        out = np.zeros_like(g)
        for wi, ri in zip(w, rate):
            out += wi * np.exp(-ri * g)
        return out

    return kernel


def _dpsk_rule_check(M: int, atol: float = 1e-9):
    # the two rule sizes must agree on the conditional SER over a wide SNR range
    g = np.logspace(-3, 4, 400)
    diff = np.max(np.abs(_dpsk_kernel(M, 48)(g) - _dpsk_kernel(M, 96)(g)))
    if diff > atol:
        raise ConvergenceError("Gauss-Legendre rule for the M-DPSK kernel not converged", diff=diff)


def semi_analytic_aser(plan: SimPlan, mod, workers: int = 1) -> SimEstimate:
    """Average of the conditional symbol error probability over simulated SNRs."""
    name = getattr(mod, "name", None)
    if name == "FSK":
        kernel = _fsk_kernel(mod.M)
    elif name == "DPSK":
        if mod.M > 2:
            _dpsk_rule_check(mod.M)
        kernel = _dpsk_kernel(mod.M, 96)
    else:
        raise DomainError(f"unknown modulation {mod!r}")
    return run(plan, kernel, workers)
