"""End-to-end evaluation of one operating point.

Ties the modules together: scenario -> unified parameters -> moments ->
Pade MGF -> outage, throughput and ASER, with an optional Monte-Carlo
cross-check of every analytic number.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import mcsim, metrics, moments
from .errors import DomainError
from .mgf import PadeApproximant, build_pade
from .model import SystemConfig, UnifiedParams, unified_params

__all__ = ["MCCheck", "PointReport", "analytic_mgf", "evaluate_point"]

MAX_PADE_ORDER = (moments.MAX_ORDER - 1) // 2


def analytic_mgf(params: UnifiedParams, X: int = 7, lambda_sr: float = 1.0,
                 lambda_rd: float = 1.0) -> PadeApproximant:
    """Pade ``[X/X+1]`` MGF built from the closed-form moments."""
    if isinstance(X, bool) or int(X) != X or not 0 <= X <= MAX_PADE_ORDER:
        raise DomainError(f"Pade order must be an integer in 0..{MAX_PADE_ORDER}, got {X!r}")
    mu = moments.moments(params, 2 * int(X) + 1, lambda_sr, lambda_rd)
    return build_pade(mu, int(X))


@dataclass(frozen=True)
class MCCheck:
    """Monte-Carlo counterparts of the analytic metrics."""

    asnr: mcsim.SimEstimate
    outage: mcsim.SimEstimate
    aser: mcsim.SimEstimate


@dataclass(frozen=True)
class PointReport:
    params: UnifiedParams
    gamma_th: float
    asnr: float
    aof: float
    outage: metrics.MetricResult
    throughput: float
    aser: float
    pade_order: int
    mc: MCCheck | None = field(default=None)

    def rows(self) -> list[tuple[str, float, float | str]]:
        """``(metric, analytic value, MC value or '')`` triples for tabular output."""
        mc = self.mc
        return [
            ("asnr", self.asnr, mc.asnr.mean if mc else ""),
            ("aof", self.aof, ""),
            ("outage", self.outage.value, mc.outage.mean if mc else ""),
            ("throughput", self.throughput, ""),
            ("aser", self.aser, mc.aser.mean if mc else ""),
        ]


def evaluate_point(cfg: SystemConfig, proto, mod, *, pade_order: int = 7,
                   euler: metrics.EulerInversionParams = metrics.EulerInversionParams(),
                   mc_trials: int | None = None, seed: int = 0, workers: int = 1) -> PointReport:
    """Every analytic metric at one operating point, optionally with MC checks."""
    params = unified_params(cfg, proto, mod)
    lam_sr, lam_rd = cfg.lambda_sr, cfg.lambda_rd
    mgf = analytic_mgf(params, pade_order, lam_sr, lam_rd)
    p_out = metrics.outage(mgf, cfg.gamma_th, euler)
    mc = None
    if mc_trials:
        plan = mcsim.SimPlan(params, int(mc_trials), seed, lam_sr, lam_rd)
        mc = MCCheck(
            asnr=mcsim.empirical_moment(plan, 1, workers),
            outage=mcsim.empirical_outage(plan, cfg.gamma_th, workers),
            aser=mcsim.semi_analytic_aser(plan, mod, workers),
        )
    return PointReport(
        params=params,
        gamma_th=cfg.gamma_th,
        asnr=moments.asnr(params, lam_sr, lam_rd),
        aof=moments.aof(params, lam_sr, lam_rd),
        outage=p_out,
        throughput=metrics.throughput(proto, p_out.clamped(), cfg.R_T),
        aser=metrics.aser(mgf, mod),
        pade_order=mgf.X,
        mc=mc,
    )
