"""System configuration and the unified end-to-end SNR of the relay link.

All four scenarios (power-splitting or time-switching relay, M-DPSK or
noncoherent M-FSK) reduce to

    gamma_eq = a_hat * b_hat * g_sr**2 * g_rd / (b_hat * g_sr * g_rd + C),
    C = a_hat * sigma2_sr + Psi,

with ``g_sr = |h_sr|^2`` and ``g_rd = |h_rd|^2`` exponential channel gains.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Union

import numpy as np

from .errors import DomainError

__all__ = [
    "DPSK",
    "FSK",
    "PS",
    "TS",
    "Modulation",
    "Protocol",
    "SystemConfig",
    "UnifiedParams",
    "db_to_linear",
    "gamma_eq",
    "unified_params",
]


def db_to_linear(db: float) -> float:
    return 10.0 ** (db / 10.0)


def _check_positive(**values):
    for name, v in values.items():
        if v is None:
            continue
        if not (isinstance(v, (int, float)) and math.isfinite(v) and v > 0):
            raise DomainError(f"{name} must be a finite positive number, got {v!r}")


@dataclass(frozen=True)
class SystemConfig:
    """Physical parameters of the source -> relay -> destination link.

    Noise variances are in watts and powers in joules/second.  When
    ``N0_sr`` is given it pins the effective noise at the relay's
    information receiver for both protocols; otherwise it is derived from
    ``N0_ra`` and ``N0_rc`` (``kappa*N0_ra + N0_rc`` under power splitting,
    ``N0_ra + N0_rc`` under time switching).
    """

    Ps: float = 1.0
    eta: float = 1.0
    alpha: float = 2.7
    d_sr: float = 1.0
    d_rd: float = 1.0
    N0_ra: float = 0.005
    N0_rc: float = 0.005
    N0_rd: float = 0.01
    lambda_sr: float = 1.0
    lambda_rd: float = 1.0
    sigma2_sr: float = 1.0
    R_T: float = 3.0
    N0_sr: float | None = None

    def __post_init__(self):
        _check_positive(
            Ps=self.Ps, eta=self.eta, alpha=self.alpha, d_sr=self.d_sr,
            d_rd=self.d_rd, N0_ra=self.N0_ra, N0_rc=self.N0_rc, N0_rd=self.N0_rd,
            lambda_sr=self.lambda_sr, lambda_rd=self.lambda_rd,
            sigma2_sr=self.sigma2_sr, R_T=self.R_T, N0_sr=self.N0_sr,
        )
        if self.eta > 1:
            raise DomainError(f"eta must not exceed 1, got {self.eta}")
        if self.alpha <= 2:
            raise DomainError(f"path-loss exponent must exceed 2, got {self.alpha}")

    @classmethod
    def from_snr(cls, snr_db: float, *, relay_noise: str = "fixed", **overrides) -> "SystemConfig":
        """Build a config parametrised by ``SNR = Ps / N0`` (in dB).

        The relay antenna and conversion noises each get ``N0/2`` and the
        destination gets ``N0``.  With ``relay_noise="fixed"`` the
        effective relay noise is held at ``N0`` for both protocols (the
        convention behind the published throughput optima); with
        ``"split"`` it follows from the two halves.
        """
        if relay_noise not in ("fixed", "split"):
            raise DomainError(f"relay_noise must be 'fixed' or 'split', got {relay_noise!r}")
        Ps = overrides.pop("Ps", 1.0)
        N0 = Ps / db_to_linear(snr_db)
        base = dict(Ps=Ps, N0_ra=N0 / 2, N0_rc=N0 / 2, N0_rd=N0,
                    N0_sr=N0 if relay_noise == "fixed" else None)
        base.update(overrides)
        return cls(**base)

    @property
    def gamma_th(self) -> float:
        """Outage threshold ``2**R_T - 1``."""
        return 2.0 ** self.R_T - 1.0

    @property
    def snr_db(self) -> float:
        return 10.0 * math.log10(self.Ps / self.N0_rd)

    def with_snr(self, snr_db: float) -> "SystemConfig":
        """Rescale every noise variance so that ``Ps / N0_rd`` hits `snr_db`."""
        k = self.N0_rd / (self.Ps / db_to_linear(snr_db))
        return replace(
            self, N0_ra=self.N0_ra / k, N0_rc=self.N0_rc / k, N0_rd=self.N0_rd / k,
            N0_sr=None if self.N0_sr is None else self.N0_sr / k,
        )


def _check_ratio(name: str, value: float):
    if not (isinstance(value, (int, float)) and 0.0 < value < 1.0):
        raise DomainError(f"{name} must lie strictly inside (0, 1), got {value!r}")


@dataclass(frozen=True)
class PS:
    """Power-splitting relay: fraction `theta` of received power is harvested."""

    theta: float

    def __post_init__(self):
        _check_ratio("theta", self.theta)

    @property
    def ratio(self) -> float:
        return self.theta

    name = "PS"


@dataclass(frozen=True)
class TS:
    """Time-switching relay: fraction `beta` of the block is spent harvesting."""

    beta: float

    def __post_init__(self):
        _check_ratio("beta", self.beta)

    @property
    def ratio(self) -> float:
        return self.beta

    name = "TS"


def _check_order(M):
    if isinstance(M, bool) or not isinstance(M, (int, np.integer)) or M < 2:
        raise DomainError(f"constellation size must be an integer >= 2, got {M!r}")


@dataclass(frozen=True)
class DPSK:
    M: int = 2

    def __post_init__(self):
        _check_order(self.M)

    @property
    def Psi(self) -> float:
        return 1.0

    name = "DPSK"


@dataclass(frozen=True)
class FSK:
    M: int = 2

    def __post_init__(self):
        _check_order(self.M)

    @property
    def Psi(self) -> float:
        return float(self.M)

    name = "FSK"


Protocol = Union[PS, TS]
Modulation = Union[DPSK, FSK]


@dataclass(frozen=True)
class UnifiedParams:
    """Dimensionless parameters ``(a_hat, b_hat, Psi, sigma2_sr)`` of the unified SNR."""

    a_hat: float
    b_hat: float
    Psi: float = 1.0
    sigma2_sr: float = 1.0

    def __post_init__(self):
        if not (math.isfinite(self.a_hat) and self.a_hat >= 0):
            raise DomainError(f"a_hat must be non-negative, got {self.a_hat!r}")
        if not (math.isfinite(self.b_hat) and self.b_hat > 0):
            raise DomainError(f"b_hat must be positive, got {self.b_hat!r}")
        if not self.Psi >= 1:
            raise DomainError(f"Psi must be at least 1, got {self.Psi!r}")
        _check_positive(sigma2_sr=self.sigma2_sr)

    @property
    def C(self) -> float:
        return self.a_hat * self.sigma2_sr + self.Psi


def unified_params(cfg: SystemConfig, proto: Protocol, mod: Modulation) -> UnifiedParams:
    """Map a physical scenario onto :class:`UnifiedParams`."""
    path_sr = cfg.d_sr ** cfg.alpha
    path_rd = cfg.d_rd ** cfg.alpha
    rho_rd = cfg.Ps / cfg.N0_rd
    if isinstance(proto, PS):
        kappa = 1.0 - proto.theta
        N0_sr = cfg.N0_sr if cfg.N0_sr is not None else kappa * cfg.N0_ra + cfg.N0_rc
        a_hat = kappa * (cfg.Ps / N0_sr) / path_sr
        b_hat = cfg.eta * proto.theta * rho_rd / (path_sr * path_rd)
    elif isinstance(proto, TS):
        N0_sr = cfg.N0_sr if cfg.N0_sr is not None else cfg.N0_ra + cfg.N0_rc
        a_hat = (cfg.Ps / N0_sr) / path_sr
        beta = proto.beta
        b_hat = 2.0 * cfg.eta * beta * rho_rd / (path_sr * path_rd * (1.0 - beta))
    else:
        raise DomainError(f"unknown protocol {proto!r}")
    if not isinstance(mod, (DPSK, FSK)):
        raise DomainError(f"unknown modulation {mod!r}")
    return UnifiedParams(a_hat=a_hat, b_hat=b_hat, Psi=mod.Psi, sigma2_sr=cfg.sigma2_sr)


def gamma_eq(p: UnifiedParams, g_sr, g_rd):
    """Instantaneous end-to-end SNR for channel power gains `g_sr`, `g_rd`."""
    g_sr = np.asarray(g_sr, dtype=float)
    g_rd = np.asarray(g_rd, dtype=float)
    if np.any(g_sr < 0) or np.any(g_rd < 0):
        raise DomainError("channel power gains must be non-negative")
    hop2 = p.b_hat * g_sr * g_rd
    with np.errstate(divide="ignore", over="ignore"):
        out = p.a_hat * g_sr / (1.0 + p.C / hop2)
    return out if out.ndim else float(out)
