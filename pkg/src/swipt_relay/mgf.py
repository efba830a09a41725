"""Moment-generating function from moments via subdiagonal Pade approximants.

The MGF ``M(s) = E[exp(-s*gamma)]`` has the formal power series
``sum_n (-1)^n mu_n s^n / n!``.  A ``[X/X+1]`` Pade approximant matches
the first ``2X+2`` coefficients.  Coefficients are fitted in the scaled
variable ``u = scale * s``.  The default ``scale = (mu_W / W!)^(1/W)``
makes the highest coefficient unity; for strongly fading SNRs it keeps the
Hankel-type system many orders of magnitude better conditioned than
``scale = mu_1`` (the approximant itself does not depend on the scale).
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass

import numpy as np

from .errors import ConditioningError, DomainError, PoleProximityError

__all__ = [
    "MomentSeries",
    "PadeApproximant",
    "adaptive_pade",
    "build_pade",
    "default_scale",
    "eval_mgf",
    "solve_full_pivot",
    "taylor_coeffs",
]

log = logging.getLogger(__name__)

#: condition number above which the fitted coefficients carry no digits
MAX_CONDITION = 1e15


@dataclass(frozen=True)
class MomentSeries:
    """Moments ``mu_0 .. mu_W`` of a non-negative random variable."""

    mu: tuple[float, ...]

    def __post_init__(self):
        mu = tuple(float(v) for v in self.mu)
        object.__setattr__(self, "mu", mu)
        if not mu or mu[0] != 1.0:
            raise DomainError("moment series must start with mu_0 = 1")
        if not all(math.isfinite(v) and v > 0 for v in mu):
            raise DomainError("moments must be finite and positive")

    @property
    def order(self) -> int:
        return len(self.mu) - 1

    def __len__(self):
        return len(self.mu)


def _as_series(mu) -> MomentSeries:
    return mu if isinstance(mu, MomentSeries) else MomentSeries(tuple(mu))


def taylor_coeffs(mu, scale: float = 1.0) -> np.ndarray:
    """Coefficients ``c_n = (-1)^n mu_n scale^-n / n!`` of the MGF series."""
    mu = np.asarray(_as_series(mu).mu if not isinstance(mu, np.ndarray) else mu, dtype=float)
    n = np.arange(len(mu))
    log_fact = np.array([math.lgamma(k + 1.0) for k in n])
    mag = np.exp(np.log(mu) - n * math.log(scale) - log_fact)
    return np.where(n % 2 == 0, mag, -mag)


def default_scale(mu) -> float:
    """``(mu_W / W!)^(1/W)``, the scale that makes the last Taylor coefficient +-1."""
    mu = np.asarray(_as_series(mu).mu if not isinstance(mu, np.ndarray) else mu, dtype=float)
    W = len(mu) - 1
    if W < 1:
        return 1.0
    return float(np.exp((np.log(mu[W]) - math.lgamma(W + 1.0)) / W))


def solve_full_pivot(A, rhs) -> np.ndarray:
    """Solve ``A x = rhs`` by Gaussian elimination with complete pivoting."""
    A = np.array(A, dtype=float)
    b = np.array(rhs, dtype=float)
    n = A.shape[0]
    cols = np.arange(n)
    for k in range(n):
        sub = np.abs(A[k:, k:])
        i, j = np.unravel_index(np.argmax(sub), sub.shape)
        i += k
        j += k
        if A[i, j] == 0.0:
            raise ConditioningError("singular Pade system", pivot_step=k)
        if i != k:
            A[[k, i]] = A[[i, k]]
            b[[k, i]] = b[[i, k]]
        if j != k:
            A[:, [k, j]] = A[:, [j, k]]
            cols[[k, j]] = cols[[j, k]]
        f = A[k + 1 :, k] / A[k, k]
        A[k + 1 :, k:] -= np.outer(f, A[k, k:])
        b[k + 1 :] -= f * b[k]
    x = np.empty(n)
    for k in range(n - 1, -1, -1):
        x[k] = (b[k] - A[k, k + 1 :] @ x[k + 1 :]) / A[k, k]
    out = np.empty(n)
    out[cols] = x
    return out


@dataclass(frozen=True)
class PadeApproximant:
    """Rational MGF approximation ``P(s) = num(u) / den(u)`` with ``u = scale*s``.

    ``x`` holds the numerator coefficients (lowest degree first) and ``y``
    the denominator coefficients of degree 1..Y; the constant term of the
    denominator is fixed at 1.
    """

    x: tuple[float, ...]
    y: tuple[float, ...]
    scale: float = 1.0
    condition: float = float("nan")

    @property
    def X(self) -> int:
        return len(self.x) - 1

    @property
    def Y(self) -> int:
        return len(self.y)

    def _num_den(self, s):
        u = self.scale * np.asarray(s, dtype=complex)
        num = np.zeros_like(u)
        for coef in reversed(self.x):
            num = num * u + coef
        den = np.zeros_like(u)
        for coef in reversed(self.y):
            den = den * u + coef
        den = den * u + 1.0
        return num, den

    def __call__(self, s):
        return eval_mgf(self, s)

    def poles(self) -> np.ndarray:
        """Roots of the denominator in the original ``s`` variable."""
        coeffs = np.r_[1.0, self.y][::-1]
        return np.roots(coeffs) / self.scale

    def taylor(self, order: int) -> np.ndarray:
        """Power-series coefficients of ``P`` in the original variable."""
        den = np.r_[1.0, self.y]
        num = np.r_[self.x, np.zeros(max(0, order + 1 - len(self.x)))]
        out = np.zeros(order + 1)
        for k in range(order + 1):
            acc = num[k]
            for j in range(1, min(k, self.Y) + 1):
                acc -= den[j] * out[k - j]
            out[k] = acc
        return out * self.scale ** np.arange(order + 1)


def eval_mgf(p: PadeApproximant, s):
    """Evaluate a Pade approximant at real or complex `s` (scalar or array).

    Raises
    ------
    PoleProximityError
        If the denominator is numerically zero relative to the numerator.
    """
    num, den = p._num_den(s)
    bad = np.abs(den) < 1e-14 * np.abs(num)
    if np.any(bad):
        where = np.asarray(s)[bad] if np.ndim(s) else s
        raise PoleProximityError("MGF approximant evaluated at a pole", s=where)
    out = num / den
    if np.ndim(out) == 0:
        out = complex(out)
        return out.real if np.isrealobj(s) else out
    return out.real if np.isrealobj(s) else out


def _fit(c: np.ndarray, X: int, scale: float) -> PadeApproximant:
    Y = X + 1
    A = np.zeros((Y, Y))
    for i in range(Y):
        for j in range(Y):
            k = X + i - j
            if k >= 0:
                A[i, j] = c[k]
    rhs = -c[X + 1 : X + 1 + Y]
    cond = np.linalg.cond(A)
    if not np.isfinite(cond) or cond > MAX_CONDITION:
        raise ConditioningError(
            f"Pade system of order [{X}/{Y}] is too ill-conditioned; use a smaller X",
            condition=cond, X=X,
        )
    y = solve_full_pivot(A, rhs)
    den = np.r_[1.0, y]
    x = np.array([sum(den[j] * c[k - j] for j in range(min(k, Y) + 1)) for k in range(X + 1)])
    return PadeApproximant(tuple(x), tuple(y), scale, cond)


def _has_bad_poles(p: PadeApproximant) -> bool:
    # an MGF of a non-negative variable is analytic in the closed right half-plane
    return bool(np.any(p.poles().real >= 0))


def build_pade(mu, X: int = 7, *, scale: float | None = None, screen: bool = True) -> PadeApproximant:
    """Fit the subdiagonal Pade approximant ``[X/X+1]`` to an MGF series.

    Parameters
    ----------
    mu : MomentSeries or sequence
        Moments ``mu_0 = 1, mu_1, ..., mu_W`` with ``W >= 2X + 1``.
    X : int
        Numerator degree.
    scale : float, optional
        Variable scaling; defaults to :func:`default_scale`.
    screen : bool
        Reject approximants with a pole in the closed right half-plane and
        fall back to ``X - 1`` (down to ``X = 0``).

    Raises
    ------
    ConditioningError
        If the linear system is singular or too ill-conditioned.
    """
    series = _as_series(mu)
    if X < 0:
        raise DomainError("Pade numerator degree must be non-negative")
    if series.order < 2 * X + 1:
        raise DomainError(
            f"[{X}/{X + 1}] needs moments up to order {2 * X + 1}, got {series.order}"
        )
    mu_used = np.asarray(series.mu[: 2 * X + 2])
    scale = default_scale(mu_used) if scale is None else float(scale)
    c = taylor_coeffs(mu_used, scale)
    for order in range(X, -1, -1):
        approx = _fit(c, order, scale)
        if not screen or not _has_bad_poles(approx):
            if order != X:
                log.warning("Pade [%d/%d] had right half-plane poles; using [%d/%d]",
                            X, X + 1, order, order + 1)
            return approx
    raise ConditioningError("no pole-free Pade approximant found", X=X)


def adaptive_pade(mu, X_start: int = 7, *, tol: float = 1e-4, s_max: float = 5.0,
                  scale: float | None = None) -> PadeApproximant:
    """Raise the order until consecutive approximants agree on ``[0, s_max]``.

    Stops at the last approximant that could be built when the moments run
    out, the system becomes too ill-conditioned or pole screening forces a
    fallback.
    """
    series = _as_series(mu)
    grid = np.linspace(0.0, s_max, 101)
    current = build_pade(series, X_start, scale=scale)
    while True:
        X = current.X + 1
        if series.order < 2 * X + 1:
            return current
        try:
            nxt = build_pade(series, X, scale=scale)
        except ConditioningError:
            return current
        if nxt.X != X:
            return current
        if np.max(np.abs(nxt(grid) - current(grid))) <= tol:
            return nxt
        current = nxt
