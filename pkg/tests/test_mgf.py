"""Tests for the Pade reconstruction of the MGF."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from swipt_relay.errors import ConditioningError, DomainError, PoleProximityError
from swipt_relay.mgf import (
    MomentSeries, PadeApproximant, adaptive_pade, build_pade, default_scale, eval_mgf,
    solve_full_pivot, taylor_coeffs,
)
from swipt_relay.model import DPSK, FSK, PS, TS, SystemConfig, unified_params
from swipt_relay.moments import moments


def exp_moments(lam, order):
    return [math.factorial(n) * lam**n for n in range(order + 1)]


@pytest.fixture(scope="module")
def default_mu():
    p = unified_params(SystemConfig.from_snr(20.0), TS(0.5), DPSK(2))
    return moments(p, 19)


class TestTaylorCoeffs:
    def test_exponential(self):
        c = taylor_coeffs(exp_moments(1.0, 6))
        np.testing.assert_allclose(c, [(-1) ** n for n in range(7)], rtol=1e-14)

    def test_first_coefficient_is_minus_mean(self, default_mu):
        c = taylor_coeffs(default_mu)
        assert c[0] == 1.0
        assert c[1] == pytest.approx(-default_mu[1], rel=1e-14)


class TestMomentSeries:
    def test_requires_unit_mu0(self):
        with pytest.raises(DomainError):
            MomentSeries((2.0, 1.0))

    def test_requires_positive(self):
        with pytest.raises(DomainError):
            MomentSeries((1.0, -1.0))


class TestSolveFullPivot:
    @given(st.integers(1, 9), st.integers(0, 2**31))
    @settings(max_examples=30)
    def test_matches_numpy(self, n, seed):
        rng = np.random.default_rng(seed)
        A = rng.normal(size=(n, n)) + n * np.eye(n)
        b = rng.normal(size=n)
        np.testing.assert_allclose(solve_full_pivot(A, b), np.linalg.solve(A, b), rtol=1e-10, atol=1e-12)

    def test_singular(self):
        with pytest.raises(ConditioningError):
            solve_full_pivot(np.zeros((2, 2)), np.ones(2))


class TestBuildPade:
    def test_exponential_exact(self):
        p = build_pade(exp_moments(2.5, 1), 0)
        s = np.array([0.0, 0.3, 4.0])
        np.testing.assert_allclose(p(s), 1.0 / (1.0 + 2.5 * s), rtol=1e-14)

    def test_unit_at_origin(self, default_mu):
        for X in range(0, 9):
            assert build_pade(default_mu, X)(0.0) == pytest.approx(1.0, abs=1e-14)

    def test_taylor_match(self, default_mu):
        p = build_pade(default_mu, 7)
        c = taylor_coeffs(default_mu[:16])
        np.testing.assert_allclose(p.taylor(15), c, rtol=1e-8)

    def test_scale_invariance(self, default_mu):
        s = np.linspace(0, 5, 21)
        a = build_pade(default_mu, 5)(s)
        b = build_pade(default_mu, 5, scale=default_mu[1])(s)
        np.testing.assert_allclose(a, b, rtol=1e-7)

    def test_default_scale(self):
        mu = exp_moments(3.0, 9)
        assert default_scale(mu) == pytest.approx(3.0)

    def test_needs_enough_moments(self, default_mu):
        with pytest.raises(DomainError):
            build_pade(default_mu[:10], 7)

    def test_ill_conditioned_raises(self):
        # an exactly rational series of lower degree makes the Hankel system singular
        with pytest.raises(ConditioningError):
            build_pade(exp_moments(1.0, 15), 7)

    def test_no_right_half_plane_poles(self, default_mu):
        p = build_pade(default_mu, 7)
        assert np.all(p.poles().real < 0)

    @pytest.mark.parametrize("proto", [TS(0.5), PS(0.5), TS(0.05), PS(0.95)])
    @pytest.mark.parametrize("mod", [DPSK(2), FSK(8)])
    def test_mgf_shape_properties(self, proto, mod):
        p = build_pade(moments(unified_params(SystemConfig.from_snr(20.0), proto, mod), 15), 7)
        v = p(np.linspace(0.0, 20.0, 200))
        assert np.all(v > 0) and np.all(v <= 1.0 + 1e-14)
        assert np.all(np.diff(v) <= 0)
        assert np.all(np.diff(v, 2) >= -1e-14)

    @pytest.mark.xfail(strict=True, reason="[7/8] and [8/9] differ by ~3e-3 at defaults; "
                       "the rational form cannot follow the SNR^-1/2 density near zero")
    def test_self_consistency(self, default_mu):
        s = np.linspace(0.0, 5.0, 101)
        assert np.max(np.abs(build_pade(default_mu, 7)(s) - build_pade(default_mu, 8)(s))) <= 1e-4


class TestEvalMgf:
    def test_conjugate_symmetry(self, default_mu):
        p = build_pade(default_mu, 7)
        s = np.array([0.3 + 2j, 4.0 - 7.5j, 12 + 0.1j])
        np.testing.assert_allclose(p(np.conj(s)), np.conj(p(s)), rtol=1e-13)

    def test_real_input_gives_real_output(self, default_mu):
        p = build_pade(default_mu, 7)
        assert isinstance(p(1.0), float)
        assert isinstance(p(1.0 + 0j), complex)

    def test_pole_proximity(self):
        p = PadeApproximant((1.0,), (1.0,), 1.0)
        with pytest.raises(PoleProximityError):
            eval_mgf(p, -1.0)


class TestAdaptivePade:
    def test_stops_at_available_order(self, default_mu):
        p = adaptive_pade(default_mu, 5)
        assert 5 <= p.X <= 9

    def test_converged_exponential(self):
        p = adaptive_pade(exp_moments(1.0, 7), 0)
        assert p(1.0) == pytest.approx(0.5, rel=1e-12)
