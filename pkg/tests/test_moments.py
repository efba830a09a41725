"""Tests for the closed-form SNR moments and their quadrature oracle."""

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from swipt_relay.errors import DomainError
from swipt_relay.model import UnifiedParams
from swipt_relay.moments import (
    MAX_ORDER, MomentRequest, aof, asnr, moment_closed_form, moment_quadrature, moments,
)


def mp_moment(a, b, psi, n, lam_sr=1.0, lam_rd=1.0):
    """Closed form evaluated entirely in mpmath (independent of the package's G evaluator)."""
    mpmath.mp.dps = 30
    C = a + psi
    z = b * lam_sr * lam_rd / C
    g = mpmath.meijerg([[2, 1, 1 - n], []], [[n + 1], []], z)
    return float(a**n * C * lam_sr ** (n - 1) / (b * lam_rd * mpmath.gamma(n)) * g)


class TestClosedForm:
    @pytest.mark.parametrize("n", [1, 2, 3, 5, 8])
    def test_reference_parameters(self, n):
        p = UnifiedParams(2.0 / 3.0, 0.5)
        assert moment_closed_form(MomentRequest(p, n)) == pytest.approx(mp_moment(2 / 3, 0.5, 1, n), rel=1e-10)

    def test_first_moment_frozen(self):
        # mpmath value computed once for a = 2/3, b = 1/2, Psi = 1
        assert asnr(UnifiedParams(2.0 / 3.0, 0.5)) == pytest.approx(0.18617430627066, rel=1e-11)

    @pytest.mark.parametrize("a,b,psi,n", [(50.0, 0.5, 16.0, 4), (0.5, 50.0, 4.0, 7), (5.0, 5.0, 1.0, 20)])
    def test_against_mpmath_grid(self, a, b, psi, n):
        p = UnifiedParams(a, b, psi)
        assert moment_closed_form(MomentRequest(p, n)) == pytest.approx(mp_moment(a, b, psi, n), rel=1e-9)

    def test_channel_means(self):
        p = UnifiedParams(3.0, 2.0)
        req = MomentRequest(p, 3, lambda_sr=0.7, lambda_rd=1.9)
        assert moment_closed_form(req) == pytest.approx(mp_moment(3.0, 2.0, 1.0, 3, 0.7, 1.9), rel=1e-9)

    def test_zero_first_hop(self):
        assert moment_closed_form(MomentRequest(UnifiedParams(0.0, 1.0), 2)) == 0.0

    def test_moments_vector(self):
        mu = moments(UnifiedParams(1.0, 1.0), 4)
        assert mu[0] == 1.0
        assert len(mu) == 5


class TestQuadratureOracle:
    @pytest.mark.parametrize("a,b,psi", [(0.5, 0.5, 1.0), (5.0, 50.0, 4.0), (50.0, 5.0, 16.0)])
    @pytest.mark.parametrize("n", [1, 4])
    def test_agrees(self, a, b, psi, n):
        req = MomentRequest(UnifiedParams(a, b, psi), n)
        assert moment_closed_form(req) == pytest.approx(moment_quadrature(req), rel=1e-7)


class TestRequestValidation:
    @pytest.mark.parametrize("n", [0, -1, MAX_ORDER + 1, 2.5, True])
    def test_bad_order(self, n):
        with pytest.raises(DomainError):
            MomentRequest(UnifiedParams(1.0, 1.0), n)

    def test_bad_lambda(self):
        with pytest.raises(DomainError):
            MomentRequest(UnifiedParams(1.0, 1.0), 1, lambda_sr=0.0)


class TestProperties:
    @given(st.floats(0.1, 100.0), st.floats(0.1, 100.0), st.sampled_from([1.0, 2.0, 8.0]))
    @settings(max_examples=20, deadline=None)
    def test_log_convexity(self, a, b, psi):
        mu = moments(UnifiedParams(a, b, psi), 8)
        for n in range(2, 8):
            assert mu[n - 1] * mu[n + 1] >= mu[n] ** 2 * (1 - 1e-9)

    @given(st.floats(0.1, 100.0), st.floats(0.1, 100.0), st.floats(1.05, 3.0))
    @settings(max_examples=20, deadline=None)
    def test_monotone_in_parameters(self, a, b, f):
        base = moments(UnifiedParams(a, b), 4)
        more_a = moments(UnifiedParams(a * f, b), 4)
        more_b = moments(UnifiedParams(a, b * f), 4)
        assert all(more_a[1:] > base[1:])
        assert all(more_b[1:] > base[1:])

    def test_aof_nonnegative(self):
        assert aof(UnifiedParams(100.0, 200.0)) > 0.0
