"""Command-line front end.

Subcommands
-----------
point     every metric at one operating point, optional MC cross-check
sweep     one variable over a grid, CSV with argmin/argmax summary rows
figure    plot-ready CSV files for a named recipe
validate  analytic vs Monte-Carlo agreement in standard errors
moments   closed-form moments, optionally checked by quadrature

Exit codes: 0 ok, 1 validation disagreement, 2 usage/config/domain error,
3 numerical failure, 4 I/O error.
"""

from __future__ import annotations

import argparse
import configparser
import csv
import io
import math
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from datetime import datetime, timezone
from pathlib import Path
from typing import Callable, Iterable, Sequence

import numpy as np
from scipy import optimize

from . import asymptotics, mcsim, metrics, moments
from .errors import DomainError, NumericalError, SwiptError
from .model import DPSK, FSK, PS, TS, SystemConfig, unified_params
from .pipeline import MAX_PADE_ORDER, analytic_mgf, evaluate_point

__all__ = ["FIGURES", "Scenario", "SweepSpec", "load_scenario", "main", "run_sweep"]

EXIT_OK, EXIT_DISAGREE, EXIT_USAGE, EXIT_NUMERICAL, EXIT_IO = 0, 1, 2, 3, 4
DEFAULT_TRIALS = 1_000_000

_SYSTEM_KEYS = ("Ps", "eta", "alpha", "d_sr", "d_rd", "N0_ra", "N0_rc", "N0_rd",
                "N0_sr", "lambda_sr", "lambda_rd", "sigma2_sr", "R_T")


class UsageError(SwiptError):
    pass


# --------------------------------------------------------------------------
# scenario / configuration

@dataclass(frozen=True)
class Scenario:
    """A physical configuration plus protocol and modulation choices."""

    cfg: SystemConfig
    protocol: str = "TS"
    ratio: float = 0.5
    modulation: str = "DPSK"
    M: int = 2
    relay_noise: str = "fixed"

    def proto(self):
        return (TS if self.protocol == "TS" else PS)(self.ratio)

    def mod(self):
        return (DPSK if self.modulation == "DPSK" else FSK)(self.M)

    def at_snr(self, snr_db: float) -> "Scenario":
        keep = {k: getattr(self.cfg, k) for k in _SYSTEM_KEYS if k not in ("N0_ra", "N0_rc", "N0_rd", "N0_sr")}
        return replace(self, cfg=SystemConfig.from_snr(snr_db, relay_noise=self.relay_noise, **keep))

    def with_(self, **changes) -> "Scenario":
        cfg_changes = {k: changes.pop(k) for k in list(changes) if k in _SYSTEM_KEYS}
        out = replace(self, **changes)
        if cfg_changes:
            out = replace(out, cfg=replace(out.cfg, **cfg_changes))
        return out


def _choice(value: str, options: Sequence[str], what: str) -> str:
    v = value.strip().upper()
    if v not in options:
        raise UsageError(f"{what} must be one of {', '.join(options)}, got {value!r}")
    return v


def load_scenario(path: str | None) -> Scenario:
    """Read an INI file with ``[system]``, ``[protocol]`` and ``[modulation]`` sections.

    ``[system]`` accepts ``snr_db`` (noise levels then follow from it; see
    :meth:`SystemConfig.from_snr`) or explicit noise variances, plus any
    other :class:`SystemConfig` field and ``relay_noise = fixed|split``.
    """
    parser = configparser.ConfigParser(inline_comment_prefixes=("#", ";"))
    parser.optionxform = str
    if path is not None:
        try:
            with open(path, encoding="utf-8") as fh:
                parser.read_file(fh)
        except OSError:
            raise
        except configparser.Error as exc:
            raise UsageError(f"cannot parse config {path}: {exc}") from exc
    known = {"system", "protocol", "modulation"}
    extra = set(parser.sections()) - known
    if extra:
        raise UsageError(f"unknown config section(s): {', '.join(sorted(extra))}")

    def number(section, key, cast=float):
        raw = parser.get(section, key)
        try:
            return cast(raw)
        except ValueError as exc:
            raise UsageError(f"[{section}] {key}: not a number: {raw!r}") from exc

    sysvals: dict[str, float] = {}
    snr_db = 20.0
    relay_noise = "fixed"
    if parser.has_section("system"):
        for key in parser.options("system"):
            if key == "snr_db":
                snr_db = number("system", key)
            elif key == "relay_noise":
                relay_noise = parser.get("system", key).strip().lower()
                if relay_noise not in ("fixed", "split"):
                    raise UsageError(f"relay_noise must be fixed or split, got {relay_noise!r}")
            elif key in _SYSTEM_KEYS:
                sysvals[key] = number("system", key)
            else:
                raise UsageError(f"unknown key in [system]: {key}")
    explicit_noise = any(k in sysvals for k in ("N0_ra", "N0_rc", "N0_rd", "N0_sr"))
    if explicit_noise:
        if parser.has_option("system", "snr_db"):
            raise UsageError("give either snr_db or explicit noise variances, not both")
        cfg = SystemConfig(**sysvals)
    else:
        cfg = SystemConfig.from_snr(snr_db, relay_noise=relay_noise, **sysvals)

    scen = Scenario(cfg, relay_noise=relay_noise)
    if parser.has_section("protocol"):
        for key in parser.options("protocol"):
            if key == "type":
                scen = replace(scen, protocol=_choice(parser.get("protocol", key), ("TS", "PS"), "protocol"))
            elif key in ("ratio", "beta", "theta"):
                scen = replace(scen, ratio=number("protocol", key))
            else:
                raise UsageError(f"unknown key in [protocol]: {key}")
    if parser.has_section("modulation"):
        for key in parser.options("modulation"):
            if key == "type":
                scen = replace(scen, modulation=_choice(parser.get("modulation", key), ("DPSK", "FSK"), "modulation"))
            elif key == "M":
                scen = replace(scen, M=number("modulation", key, int))
            else:
                raise UsageError(f"unknown key in [modulation]: {key}")
    return scen


def _apply_overrides(scen: Scenario, args) -> Scenario:
    if getattr(args, "snr_db", None) is not None:
        scen = scen.at_snr(args.snr_db)
    if getattr(args, "protocol", None):
        scen = replace(scen, protocol=args.protocol)
    if getattr(args, "ratio", None) is not None:
        scen = replace(scen, ratio=args.ratio)
    if getattr(args, "modulation", None):
        scen = replace(scen, modulation=args.modulation)
    if getattr(args, "M", None) is not None:
        scen = replace(scen, M=args.M)
    if getattr(args, "eta", None) is not None:
        scen = scen.with_(eta=args.eta)
    # surface domain errors (e.g. ratio outside (0, 1)) early
    scen.proto()
    scen.mod()
    return scen


# --------------------------------------------------------------------------
# output helpers

def _fmt(v) -> str:
    if isinstance(v, (bool, np.bool_)):
        return "1" if v else "0"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        return repr(float(v))
    return str(v)


def write_csv(path: str | None, header: Sequence[str], rows: Iterable[Sequence], *,
              stdout=None) -> None:
    """RFC-4180 CSV preceded by a single ``# generated ...`` timestamp line."""
    buf = io.StringIO()
    stamp = datetime.now(timezone.utc).replace(microsecond=0).isoformat()
    buf.write(f"# generated {stamp}\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([_fmt(v) for v in row])
    text = buf.getvalue()
    if path is None or path == "-":
        (stdout or sys.stdout).write(text)
        return
    Path(path).write_text(text, encoding="utf-8")


def read_csv(path: str) -> tuple[list[str], list[list[str]]]:
    """Inverse of :func:`write_csv` (header and string rows)."""
    with open(path, encoding="utf-8", newline="") as fh:
        lines = [ln for ln in fh if not ln.startswith("#")]
    rows = list(csv.reader(lines))
    return rows[0], rows[1:]


def _table(rows: Sequence[Sequence], header: Sequence[str]) -> str:
    cells = [[str(h) for h in header]] + [[_cell(v) for v in r] for r in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(header))]
    lines = ["  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in cells]
    lines.insert(1, "  ".join("-" * w for w in widths))
    return "\n".join(lines)


def _cell(v) -> str:
    if isinstance(v, (float, np.floating)):
        return f"{float(v):.6g}"
    return str(v)


# --------------------------------------------------------------------------
# sweeps

SWEEP_VARIABLES = ("theta", "beta", "eta", "snr_db", "M", "gamma_th")


@dataclass(frozen=True)
class SweepSpec:
    variable: str
    start: float
    stop: float
    step: float

    def __post_init__(self):
        if self.variable not in SWEEP_VARIABLES:
            raise UsageError(f"sweep variable must be one of {', '.join(SWEEP_VARIABLES)}")
        if not (math.isfinite(self.step) and self.step > 0):
            raise UsageError("sweep step must be positive")
        if not self.start < self.stop:
            raise UsageError("sweep range is empty: start must be below stop")

    def grid(self) -> np.ndarray:
        count = int(math.floor((self.stop - self.start) / self.step + 1e-9)) + 1
        vals = np.round(self.start + self.step * np.arange(count), 12)
        if self.variable == "M":
            vals = np.unique(np.round(vals).astype(int))
        return vals


def _scenario_at(scen: Scenario, variable: str, value) -> Scenario:
    if variable == "theta":
        return replace(scen, protocol="PS", ratio=float(value))
    if variable == "beta":
        return replace(scen, protocol="TS", ratio=float(value))
    if variable == "eta":
        return scen.with_(eta=float(value))
    if variable == "snr_db":
        return scen.at_snr(float(value))
    if variable == "M":
        return replace(scen, M=int(value))
    if float(value) <= 0:
        raise DomainError("gamma_th must be positive")
    return scen.with_(R_T=math.log2(1.0 + float(value)))


SWEEP_HEADER = ["row", "variable", "value", "protocol", "ratio", "modulation", "M", "snr_db",
                "a_hat", "b_hat", "asnr", "aof", "outage", "outage_err", "outage_flag",
                "throughput", "aser", "pade_order",
                "mc_trials", "mc_asnr", "mc_asnr_se", "mc_outage", "mc_outage_se",
                "mc_aser", "mc_aser_se"]


def _sweep_row(job) -> list:
    scen, variable, value, X, euler, trials, seed = job
    r = evaluate_point(scen.cfg, scen.proto(), scen.mod(), pade_order=X, euler=euler,
                       mc_trials=trials, seed=seed)
    mc = r.mc
    mc_cols = ([trials, mc.asnr.mean, mc.asnr.std_error, mc.outage.mean, mc.outage.std_error,
                mc.aser.mean, mc.aser.std_error] if mc else ["", "", "", "", "", "", ""])
    return ["point", variable, value, scen.protocol, scen.ratio, scen.modulation, scen.M,
            scen.cfg.snr_db, r.params.a_hat, r.params.b_hat, float(r.asnr), float(r.aof),
            r.outage.value, r.outage.error_estimate, r.outage.out_of_range,
            r.throughput, r.aser, r.pade_order] + mc_cols


def run_sweep(scen: Scenario, spec: SweepSpec, *, pade_order: int = 7,
              euler: metrics.EulerInversionParams = metrics.EulerInversionParams(),
              trials: int | None = None, seed: int = 0, workers: int = 1) -> list[list]:
    """Rows for every grid point followed by argmin/argmax summary rows."""
    jobs = [(_scenario_at(scen, spec.variable, v), spec.variable, v, pade_order, euler, trials, seed)
            for v in spec.grid()]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(_sweep_row, jobs, chunksize=max(1, len(jobs) // (4 * workers))))
    else:
        rows = [_sweep_row(j) for j in jobs]
    col = {name: i for i, name in enumerate(SWEEP_HEADER)}
    summary = []
    for metric in ("outage", "throughput", "aser"):
        vals = np.array([r[col[metric]] for r in rows], dtype=float)
        for tag, idx in (("argmin", int(np.argmin(vals))), ("argmax", int(np.argmax(vals)))):
            summary.append([f"{tag}_{metric}"] + rows[idx][1:])
    return rows + summary


# --------------------------------------------------------------------------
# figure recipes

@dataclass
class FigureContext:
    scen: Scenario
    pade_order: int
    euler: metrics.EulerInversionParams
    trials: int
    seed: int


def _outage_point(ctx: FigureContext, scen: Scenario) -> float:
    p = unified_params(scen.cfg, scen.proto(), scen.mod())
    mgf = analytic_mgf(p, ctx.pade_order, scen.cfg.lambda_sr, scen.cfg.lambda_rd)
    return metrics.outage(mgf, scen.cfg.gamma_th, ctx.euler).value


def _mc_plan(ctx: FigureContext, scen: Scenario) -> mcsim.SimPlan:
    p = unified_params(scen.cfg, scen.proto(), scen.mod())
    return mcsim.SimPlan(p, ctx.trials, ctx.seed, scen.cfg.lambda_sr, scen.cfg.lambda_rd)


def _ratio_grid():
    return np.round(np.arange(0.02, 0.99, 0.02), 12)


def _snr_grid(lo=0.0, hi=30.0, step=2.5):
    return np.round(np.arange(lo, hi + 1e-9, step), 12)


def _fig_vs_ratio(ctx: FigureContext, metric: str):
    header = ["series", "protocol", "ratio", "value", "std_error"]
    rows = {"analytic": [], "mc": []}
    for proto in ("PS", "TS"):
        for r in _ratio_grid():
            scen = replace(ctx.scen, protocol=proto, ratio=float(r))
            p_out = _outage_point(ctx, scen)
            est = mcsim.empirical_outage(_mc_plan(ctx, scen), scen.cfg.gamma_th)
            if metric == "outage":
                a, m, se = p_out, est.mean, est.std_error
            else:
                f = lambda q: metrics.throughput(scen.proto(), min(max(q, 0.0), 1.0), scen.cfg.R_T)
                a, m = f(p_out), f(est.mean)
                se = abs(f(0.0) - f(1.0)) * est.std_error
            rows["analytic"].append(["analytic", proto, r, a, ""])
            rows["mc"].append(["mc", proto, r, m, se])
    return header, rows


def _fig5(ctx):
    return _fig_vs_ratio(ctx, "outage")


def _fig6(ctx):
    return _fig_vs_ratio(ctx, "throughput")


def _optimal_throughput(ctx: FigureContext, scen: Scenario) -> tuple[float, float]:
    def neg(r):
        s = replace(scen, ratio=float(r))
        p_out = min(max(_outage_point(ctx, s), 0.0), 1.0)
        return -metrics.throughput(s.proto(), p_out, s.cfg.R_T)

    res = optimize.minimize_scalar(neg, bounds=(0.01, 0.99), method="bounded",
                                   options={"xatol": 1e-3})
    return float(res.x), float(-res.fun)


def _fig7(ctx):
    header = ["series", "protocol", "snr_db", "ratio", "value", "std_error"]
    rows = {"analytic": [], "mc": []}
    for proto in ("PS", "TS"):
        for snr in _snr_grid(0.0, 30.0, 2.5):
            scen = replace(ctx.scen, protocol=proto).at_snr(float(snr))
            r_opt, tp = _optimal_throughput(ctx, scen)
            s = replace(scen, ratio=r_opt)
            est = mcsim.empirical_outage(_mc_plan(ctx, s), s.cfg.gamma_th)
            full = metrics.throughput(s.proto(), 0.0, s.cfg.R_T)
            rows["analytic"].append(["analytic", proto, snr, r_opt, tp, ""])
            rows["mc"].append(["mc", proto, snr, r_opt, full * (1.0 - est.mean), full * est.std_error])
    return header, rows


def _fig9(ctx):
    header = ["series", "protocol", "snr_db", "eta", "ratio", "value", "std_error"]
    rows = {"analytic": [], "mc": []}
    for snr in (10.0, 20.0):
        for proto in ("PS", "TS"):
            for eta in np.round(np.arange(0.1, 1.0 + 1e-9, 0.1), 12):
                scen = replace(ctx.scen, protocol=proto).at_snr(snr).with_(eta=float(eta))
                r_opt, tp = _optimal_throughput(ctx, scen)
                s = replace(scen, ratio=r_opt)
                est = mcsim.empirical_outage(_mc_plan(ctx, s), s.cfg.gamma_th)
                full = metrics.throughput(s.proto(), 0.0, s.cfg.R_T)
                rows["analytic"].append(["analytic", proto, snr, eta, r_opt, tp, ""])
                rows["mc"].append(["mc", proto, snr, eta, r_opt, full * (1.0 - est.mean),
                                   full * est.std_error])
    return header, rows


def _fig_aser(ctx, M: int, with_asym: bool, snr_grid):
    header = ["series", "protocol", "modulation", "M", "snr_db", "value", "std_error"]
    rows = {"analytic": [], "mc": []}
    if with_asym:
        rows["asymptotic"] = []
    for proto in ("PS", "TS"):
        for modname in ("DPSK", "FSK"):
            for snr in snr_grid:
                scen = replace(ctx.scen, protocol=proto, modulation=modname, M=M).at_snr(float(snr))
                p = unified_params(scen.cfg, scen.proto(), scen.mod())
                lam = (scen.cfg.lambda_sr, scen.cfg.lambda_rd)
                mgf = analytic_mgf(p, ctx.pade_order, *lam)
                key = [proto, modname, M, snr]
                rows["analytic"].append(["analytic"] + key + [metrics.aser(mgf, scen.mod()), ""])
                est = mcsim.semi_analytic_aser(_mc_plan(ctx, scen), scen.mod())
                rows["mc"].append(["mc"] + key + [est.mean, est.std_error])
                if with_asym:
                    for regime in (asymptotics.Regime.FIRST_HOP_HIGH, asymptotics.Regime.DOMINANT):
                        v = asymptotics.aser_asym(p, scen.mod(), regime, *lam)
                        rows["asymptotic"].append([regime.value] + key + [v, ""])
    return header, rows


def _fig10(ctx):
    return _fig_aser(ctx, 2, False, _snr_grid(0.0, 30.0, 2.5))


def _fig13(ctx):
    return _fig_aser(ctx, 8, False, _snr_grid(0.0, 30.0, 2.5))


def _fig4(ctx):
    return _fig_aser(ctx, 2, True, _snr_grid(0.0, 50.0, 5.0))


def _fig3(ctx):
    header = ["series", "protocol", "snr_db", "value", "std_error"]
    rows = {"analytic": [], "mc": [], "asymptotic": []}
    for proto in ("PS", "TS"):
        for snr in _snr_grid(0.0, 50.0, 5.0):
            scen = replace(ctx.scen, protocol=proto).at_snr(float(snr))
            p = unified_params(scen.cfg, scen.proto(), scen.mod())
            lam = (scen.cfg.lambda_sr, scen.cfg.lambda_rd)
            rows["analytic"].append(["analytic", proto, snr, _outage_point(ctx, scen), ""])
            est = mcsim.empirical_outage(_mc_plan(ctx, scen), scen.cfg.gamma_th)
            rows["mc"].append(["mc", proto, snr, est.mean, est.std_error])
            for regime in asymptotics.Regime:
                v = asymptotics.outage_asym(p, scen.cfg.gamma_th, regime, *lam)
                rows["asymptotic"].append([regime.value, proto, snr, v, ""])
    return header, rows


FIGURES: dict[str, Callable] = {
    "fig3-outage-asymptotics": _fig3,
    "fig4-aser-asymptotics": _fig4,
    "fig5-outage-vs-ratio": _fig5,
    "fig6-throughput-vs-ratio": _fig6,
    "fig7-throughput-vs-snr": _fig7,
    "fig9-throughput-vs-eta": _fig9,
    "fig10-aser-binary": _fig10,
    "fig13-aser-mary": _fig13,
}


# --------------------------------------------------------------------------
# subcommands

def _euler(args) -> metrics.EulerInversionParams:
    return metrics.EulerInversionParams.parse(args.euler) if args.euler else metrics.EulerInversionParams()


def _pade_order(args) -> int:
    X = args.pade_order
    if not 0 <= X <= MAX_PADE_ORDER:
        raise UsageError(f"--pade-order must lie in 0..{MAX_PADE_ORDER}")
    return X


def cmd_point(args, scen: Scenario, out) -> int:
    trials = args.trials if (args.mc or args.trials) else None
    if args.mc and trials is None:
        trials = DEFAULT_TRIALS
    r = evaluate_point(scen.cfg, scen.proto(), scen.mod(), pade_order=_pade_order(args),
                       euler=_euler(args), mc_trials=trials, seed=args.seed, workers=args.workers)
    mc = r.mc
    ses = {"asnr": mc.asnr.std_error, "outage": mc.outage.std_error, "aser": mc.aser.std_error} if mc else {}
    rows = []
    for name, val, mc_val in r.rows():
        err = r.outage.error_estimate if name == "outage" else ""
        se = ses.get(name, "")
        z = abs(val - mc_val) / se if (se not in ("", 0.0)) else ""
        rows.append([name, float(val), err, mc_val, se, z])
    header = ["metric", "analytic", "error_bound", "mc", "mc_se", "delta_in_se"]
    if args.out:
        write_csv(args.out, header, rows)
    else:
        out.write(f"{scen.protocol}(ratio={scen.ratio}) {scen.M}-{scen.modulation}  "
                  f"SNR={scen.cfg.snr_db:.4g} dB  gamma_th={r.gamma_th:.6g}  "
                  f"a_hat={r.params.a_hat:.6g} b_hat={r.params.b_hat:.6g}  Pade [{r.pade_order}/{r.pade_order + 1}]\n")
        if r.outage.out_of_range:
            out.write("warning: outage estimate left [0, 1] by more than its error bound\n")
        out.write(_table(rows, header) + "\n")
    return EXIT_OK


def cmd_sweep(args, scen: Scenario, out) -> int:
    spec = SweepSpec(args.var, args.start, args.stop, args.step)
    trials = args.trials if args.mc else None
    if args.mc and trials is None:
        trials = DEFAULT_TRIALS
    rows = run_sweep(scen, spec, pade_order=_pade_order(args), euler=_euler(args),
                     trials=trials, seed=args.seed, workers=args.workers)
    write_csv(args.out, SWEEP_HEADER, rows, stdout=out)
    if args.out:
        col = {name: i for i, name in enumerate(SWEEP_HEADER)}
        summary = [[r[0], r[col["value"]], r[col["outage"]], r[col["throughput"]], r[col["aser"]]]
                   for r in rows if r[0] != "point"]
        out.write(_table(summary, ["row", spec.variable, "outage", "throughput", "aser"]) + "\n")
    return EXIT_OK


def cmd_figure(args, scen: Scenario, out) -> int:
    if args.recipe not in FIGURES:
        raise UsageError(f"unknown figure recipe {args.recipe!r}; known: {', '.join(FIGURES)}")
    ctx = FigureContext(scen, _pade_order(args), _euler(args),
                        args.trials or DEFAULT_TRIALS, args.seed)
    header, series = FIGURES[args.recipe](ctx)
    outdir = Path(args.out or ".")
    outdir.mkdir(parents=True, exist_ok=True)
    for name, rows in series.items():
        path = outdir / f"{args.recipe}-{name}.csv"
        write_csv(str(path), header, rows)
        out.write(f"wrote {path} ({len(rows)} rows)\n")
    return EXIT_OK


def cmd_validate(args, scen: Scenario, out) -> int:
    trials = args.trials or DEFAULT_TRIALS
    X = _pade_order(args)
    cfg = scen.cfg
    p = unified_params(cfg, scen.proto(), scen.mod())
    lam = (cfg.lambda_sr, cfg.lambda_rd)
    mgf = analytic_mgf(p, X, *lam)
    plan = mcsim.SimPlan(p, trials, args.seed, *lam)
    w = args.workers
    checks = [("asnr", moments.asnr(p, *lam), mcsim.empirical_moment(plan, 1, w))]
    for s in (0.25, 0.5, 1.0, 2.0, 4.0):
        checks.append((f"mgf(s={s})", float(mgf(s)), mcsim.empirical_mgf(plan, s, w)))
    checks.append(("outage", metrics.outage(mgf, cfg.gamma_th, _euler(args)).value,
                   mcsim.empirical_outage(plan, cfg.gamma_th, w)))
    checks.append(("aser", metrics.aser(mgf, scen.mod()), mcsim.semi_analytic_aser(plan, scen.mod(), w)))
    rows, ok = [], True
    for name, val, est in checks:
        z = est.z_score(val)
        passed = z <= args.sigmas
        ok &= passed
        rows.append([name, val, est.mean, est.std_error, z, "ok" if passed else "FAIL"])
    header = ["metric", "analytic", "mc", "mc_se", "delta_in_se", "status"]
    if args.out:
        write_csv(args.out, header, rows)
    out.write(_table(rows, header) + "\n")
    return EXIT_OK if ok else EXIT_DISAGREE


def cmd_moments(args, scen: Scenario, out) -> int:
    if not 1 <= args.order <= moments.MAX_ORDER:
        raise UsageError(f"--order must lie in 1..{moments.MAX_ORDER}")
    p = unified_params(scen.cfg, scen.proto(), scen.mod())
    lam = (scen.cfg.lambda_sr, scen.cfg.lambda_rd)
    rows = []
    for n in range(1, args.order + 1):
        req = moments.MomentRequest(p, n, *lam)
        closed = moments.moment_closed_form(req)
        row = [n, closed]
        if args.check:
            quad = moments.moment_quadrature(req)
            row += [quad, abs(closed - quad) / abs(quad) if quad else 0.0]
        rows.append(row)
    header = ["n", "closed_form"] + (["quadrature", "rel_diff"] if args.check else [])
    if args.out:
        write_csv(args.out, header, rows)
    else:
        out.write(_table(rows, header) + "\n")
    return EXIT_OK


# --------------------------------------------------------------------------
# argument parsing

def _positive_int(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if v < 1:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def _seed(text: str) -> int:
    try:
        v = int(text, 0)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if not 0 <= v < 2**64:
        raise argparse.ArgumentTypeError("seed must fit in an unsigned 64-bit integer")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    g = common.add_argument_group("global options")
    g.add_argument("--config", help="INI file with [system], [protocol], [modulation]")
    g.add_argument("--seed", type=_seed, default=0, help="Monte-Carlo seed (default 0)")
    g.add_argument("--trials", type=_positive_int, help="Monte-Carlo trials")
    g.add_argument("--out", help="output file (directory for 'figure')")
    g.add_argument("--pade-order", type=int, default=7, help="Pade numerator degree X (default 7)")
    g.add_argument("--euler", help="Euler inversion parameters 'A,Q,N' (default 23,15,21)")
    g.add_argument("--workers", type=_positive_int, default=1, help="parallel workers")
    s = common.add_argument_group("scenario overrides")
    s.add_argument("--snr-db", type=float, help="SNR = Ps/N0 in dB")
    s.add_argument("--protocol", type=str.upper, choices=("TS", "PS"))
    s.add_argument("--ratio", type=float, help="beta (TS) or theta (PS)")
    s.add_argument("--modulation", type=str.upper, choices=("DPSK", "FSK"))
    s.add_argument("-M", type=int, help="constellation size")
    s.add_argument("--eta", type=float, help="energy conversion efficiency")

    parser = argparse.ArgumentParser(
        prog="swipt-relay",
        description="Performance metrics of noncoherent SWIPT amplify-and-forward relay links.",
    )
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")
    p = sub.add_parser("point", parents=[common], help="all metrics at one operating point")
    p.add_argument("--mc", action="store_true", help="add a Monte-Carlo cross-check")
    p = sub.add_parser("sweep", parents=[common], help="sweep one variable, write CSV")
    p.add_argument("--var", required=True, choices=SWEEP_VARIABLES)
    p.add_argument("--start", type=float, required=True)
    p.add_argument("--stop", type=float, required=True)
    p.add_argument("--step", type=float, required=True)
    p.add_argument("--mc", action="store_true", help="add Monte-Carlo columns")
    p = sub.add_parser("figure", parents=[common], help="plot-ready CSVs for a recipe")
    p.add_argument("recipe", help=f"one of: {', '.join(FIGURES)}")
    p = sub.add_parser("validate", parents=[common], help="analytic vs Monte-Carlo agreement")
    p.add_argument("--sigmas", type=float, default=3.0, help="allowed deviation in SE (default 3)")
    p = sub.add_parser("moments", parents=[common], help="moments of the end-to-end SNR")
    p.add_argument("--order", type=int, default=8)
    p.add_argument("--check", action="store_true", help="compare with double quadrature")
    return parser


COMMANDS = {"point": cmd_point, "sweep": cmd_sweep, "figure": cmd_figure,
            "validate": cmd_validate, "moments": cmd_moments}


def main(argv: Sequence[str] | None = None, *, stdout=None, stderr=None) -> int:
    out = stdout or sys.stdout
    err = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        scen = _apply_overrides(load_scenario(args.config), args)
        return COMMANDS[args.command](args, scen, out)
    except (UsageError, DomainError) as exc:
        err.write(f"error: {exc}\n")
        return EXIT_USAGE
    except NumericalError as exc:
        err.write(f"numerical error: {exc}\n")
        return EXIT_NUMERICAL
    except OSError as exc:
        err.write(f"I/O error: {exc}\n")
        return EXIT_IO


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
