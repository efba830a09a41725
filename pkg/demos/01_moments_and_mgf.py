"""From channel parameters to the MGF of the end-to-end SNR.

Walks through the unified parameters, the closed-form moments (checked
against direct quadrature), the Pade reconstruction of the MGF, and how
that MGF compares with a Monte-Carlo estimate.
"""

import numpy as np

from swipt_relay import mcsim
from swipt_relay.mgf import build_pade
from swipt_relay.model import DPSK, TS, SystemConfig, unified_params
from swipt_relay.moments import MomentRequest, aof, moment_closed_form, moment_quadrature, moments

# A time-switching relay spending half of each block harvesting, 20 dB link SNR.
cfg = SystemConfig.from_snr(20.0)
p = unified_params(cfg, TS(0.5), DPSK(2))
print(f"a_hat = {p.a_hat:.4g}, b_hat = {p.b_hat:.4g}, C = {p.C:.4g}")

# Closed-form moments next to the double integral they come from.
for n in (1, 2, 3):
    req = MomentRequest(p, n)
    print(f"mu_{n}: closed form {moment_closed_form(req):.10g}   quadrature {moment_quadrature(req):.10g}")
print(f"amount of fading: {aof(p):.4f}")

# Fifteen moments feed a [7/8] Pade approximant of E[exp(-s*gamma)].
mu = moments(p, 15)
pade = build_pade(mu, 7)
print(f"Pade [{pade.X}/{pade.Y}], condition number {pade.condition:.1e}")

# The same expectation by simulation. The rational approximant is close for
# small s and drifts away as s grows, since large s probes the density near
# zero, which behaves like SNR^(-1/2) and has no rational counterpart.
plan = mcsim.SimPlan(p, trials=1_000_000, seed=1)
for s in (0.25, 1.0, 4.0):
    est = mcsim.empirical_mgf(plan, s)
    print(f"M({s}): Pade {float(pade(s)):.5f}   MC {est.mean:.5f} +- {est.std_error:.1e}")

# The approximant's poles sit in the left half-plane, as an MGF of a
# non-negative variable requires.
print("poles:", np.round(np.sort_complex(pade.poles()), 4))
