"""Tests for Euler-inversion outage, throughput and MGF-based ASER."""

import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy import integrate

from swipt_relay.errors import DomainError, PoleProximityError
from swipt_relay.metrics import (
    EulerInversionParams, MetricResult, aser, aser_dpsk, aser_fsk, outage, throughput,
)
from swipt_relay.mgf import PadeApproximant
from swipt_relay.model import DPSK, FSK, PS, TS, SystemConfig, unified_params
from swipt_relay.pipeline import analytic_mgf


def exp_mgf(s):
    return 1.0 / (1.0 + np.asarray(s))


def one_mgf(s):
    return np.ones_like(np.asarray(s, dtype=complex)).real if np.ndim(s) else 1.0


class TestEulerParams:
    def test_defaults(self):
        ep = EulerInversionParams()
        assert (ep.A, ep.Q, ep.N) == (23.0, 15, 21)

    def test_parse(self):
        assert EulerInversionParams.parse("20, 10,30") == EulerInversionParams(20.0, 10, 30)

    @pytest.mark.parametrize("text", ["1,2", "a,b,c", "-1,2,3", "1,2.5,3"])
    def test_parse_errors(self, text):
        with pytest.raises(DomainError):
            EulerInversionParams.parse(text)


class TestOutage:
    def test_exponential_cdf(self):
        r = outage(exp_mgf, 1.0)
        assert abs(r.value - (1.0 - math.exp(-1.0))) <= 1e-8
        assert r.method == "pade-euler"
        assert not r.out_of_range

    @pytest.mark.parametrize("t", [0.05, 0.7, 3.0, 12.0])
    def test_gamma2_cdf(self, t):
        # Gamma(2, 1) variable: MGF 1/(1+s)^2, CDF 1 - (1+t) e^-t
        r = outage(lambda s: 1.0 / (1.0 + s) ** 2, t)
        assert r.value == pytest.approx(1.0 - (1.0 + t) * math.exp(-t), abs=1e-8)

    def test_error_estimate_floor(self):
        r = outage(exp_mgf, 1.0)
        assert r.error_estimate >= math.exp(-23.0)

    def test_threshold_must_be_positive(self):
        with pytest.raises(DomainError):
            outage(exp_mgf, 0.0)

    def test_pole_propagates(self):
        # put a conjugate pole pair exactly on the second Euler node
        node = (23.0 + 2j * math.pi) / 2.0
        inv = 1.0 / node
        p = PadeApproximant((1.0,), (-2.0 * inv.real, abs(inv) ** 2), 1.0)
        with pytest.raises(PoleProximityError):
            outage(p, 1.0)

    def test_monotone_in_threshold(self):
        mgf = analytic_mgf(unified_params(SystemConfig.from_snr(20.0), TS(0.5), DPSK(2)))
        vals = [outage(mgf, t) for t in np.linspace(0.1, 60.0, 50)]
        for r in vals:
            assert -r.error_estimate <= r.value <= 1.0 + r.error_estimate
        assert all(b.value >= a.value - 1e-9 for a, b in zip(vals, vals[1:]))

    def test_flag_when_outside_unit_interval(self):
        r = outage(lambda s: 2.0 * exp_mgf(s), 50.0)
        assert r.out_of_range
        assert r.clamped() == 1.0


class TestMetricResult:
    def test_negative_error(self):
        with pytest.raises(DomainError):
            MetricResult(0.5, -1.0)

    def test_float(self):
        assert float(MetricResult(0.25)) == 0.25


class TestThroughput:
    def test_examples(self):
        assert throughput(PS(0.3), 1.0, 3.0) == 0.0
        assert throughput(PS(0.3), 0.0, 3.0) == 1.5
        assert throughput(TS(0.5), 0.0, 3.0) == 0.75

    def test_bad_probability(self):
        with pytest.raises(DomainError):
            throughput(PS(0.3), 1.5, 3.0)

    @given(st.floats(0.0, 1.0), st.floats(0.0, 1.0), st.floats(0.01, 0.99))
    def test_affine(self, p1, p2, beta):
        proto = TS(beta)
        mid = throughput(proto, 0.5 * (p1 + p2), 3.0)
        assert mid == pytest.approx(0.5 * (throughput(proto, p1, 3.0) + throughput(proto, p2, 3.0)))


class TestAser:
    def test_degenerate_mgf(self):
        assert aser_fsk(one_mgf, 4) == pytest.approx(0.75, abs=1e-12)
        assert aser_dpsk(one_mgf, 4) == pytest.approx(0.75, abs=1e-9)

    def test_binary_reductions(self):
        assert aser_fsk(exp_mgf, 2) == pytest.approx(0.5 * exp_mgf(0.5))
        assert aser_dpsk(exp_mgf, 2) == pytest.approx(0.5 * exp_mgf(1.0))

    @pytest.mark.parametrize("M", [4, 8, 16])
    def test_dpsk_against_direct_quadrature(self, M):
        g = math.sin(math.pi / M) ** 2
        ref = integrate.quad(lambda phi: exp_mgf(g / (1 + math.sqrt(1 - g) * math.cos(phi))),
                             0, (M - 1) * math.pi / M, epsabs=1e-13)[0] / math.pi
        assert aser_dpsk(exp_mgf, M) == pytest.approx(ref, abs=1e-10)

    @pytest.mark.parametrize("M", [3, 4, 8])
    def test_fsk_rayleigh_closed_form(self, M):
        # Rayleigh noncoherent FSK with mean SNR 1: sum (-1)^{m+1} C(M-1,m) / (1 + m + m)
        ref = sum((-1) ** (m + 1) * math.comb(M - 1, m) / (1 + m + m) for m in range(1, M))
        assert aser_fsk(exp_mgf, M) == pytest.approx(ref, rel=1e-12)

    def test_dispatch(self):
        assert aser(exp_mgf, FSK(2)) == aser_fsk(exp_mgf, 2)
        with pytest.raises(DomainError):
            aser(exp_mgf, object())

    @pytest.mark.parametrize("M", [1, 2.5])
    def test_bad_order(self, M):
        with pytest.raises(DomainError):
            aser_fsk(exp_mgf, M)

    @pytest.mark.parametrize("proto", [TS(0.5), PS(0.5)])
    @pytest.mark.parametrize("mod", [DPSK(2), FSK(2)])
    def test_decreasing_in_snr(self, proto, mod):
        vals = [aser(analytic_mgf(unified_params(SystemConfig.from_snr(snr), proto, mod)), mod)
                for snr in np.linspace(0.0, 30.0, 10)]
        assert all(b < a for a, b in zip(vals, vals[1:]))
