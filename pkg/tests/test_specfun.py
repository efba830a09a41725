"""Tests for the complex gamma function, binomials and the Meijer G evaluator."""

import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from swipt_relay.errors import ConvergenceError, DomainError, PoleError, UnsupportedError
from swipt_relay.specfun import MeijerGSpec, binomial, gamma_complex, lngamma_complex, meijer_g

finite_z = st.complex_numbers(min_magnitude=0.0, max_magnitude=30.0, allow_nan=False,
                              allow_infinity=False)


def mp_meijerg(spec: MeijerGSpec, z: float) -> float:
    a, b = list(spec.a), list(spec.b)
    return float(mpmath.meijerg([a[: spec.n], a[spec.n :]], [b[: spec.m], b[spec.m :]], z))


class TestGamma:
    def test_frozen_values(self):
        assert gamma_complex(5.0).real == pytest.approx(24.0, rel=1e-14)
        assert gamma_complex(0.5).real == pytest.approx(math.sqrt(math.pi), rel=1e-14)
        assert gamma_complex(-0.5).real == pytest.approx(-2.0 * math.sqrt(math.pi), rel=1e-14)
        assert gamma_complex(1.5).real == pytest.approx(math.sqrt(math.pi) / 2.0, rel=1e-14)

    @pytest.mark.parametrize("z", [0.1 + 0.2j, 3.7 - 1.1j, -2.5 + 0.5j, 0.5 + 40j, -7.3 - 12j, 25 + 3j])
    def test_against_mpmath(self, z):
        ref = complex(mpmath.gamma(z))
        assert abs(gamma_complex(z) - ref) <= 1e-12 * abs(ref)

    @pytest.mark.parametrize("z", [0.3 + 150j, -40.5 + 0.1j, 3 - 500j])
    def test_log_gamma_large_imaginary(self, z):
        ref = complex(mpmath.loggamma(z))
        got = lngamma_complex(z)
        # compare modulo 2*pi*i, only the exponential matters downstream
        assert abs(got.real - ref.real) <= 1e-10 * max(1.0, abs(ref.real))
        assert abs(np.exp(1j * (got.imag - ref.imag)) - 1.0) < 1e-9

    @pytest.mark.parametrize("z", [0, -1, -2, -17])
    def test_poles_raise(self, z):
        with pytest.raises(PoleError):
            gamma_complex(z)

    @given(finite_z)
    @settings(max_examples=200, deadline=None)
    def test_recurrence(self, z):
        if abs(z - round(z.real)) < 1e-6 and round(z.real) <= 0:
            return
        g1 = gamma_complex(z + 1)
        g0 = gamma_complex(z)
        if not (np.isfinite(g1) and np.isfinite(g0)) or abs(g1) > 1e250:
            return
        assert abs(g1 - z * g0) <= 1e-11 * max(abs(g1), 1e-300)

    @given(finite_z)
    @settings(max_examples=100, deadline=None)
    def test_conjugate_symmetry(self, z):
        if abs(z - round(z.real)) < 1e-6 and round(z.real) <= 0:
            return
        g = gamma_complex(z)
        if not np.isfinite(g):
            return
        assert abs(gamma_complex(np.conj(z)) - np.conj(g)) <= 1e-13 * abs(g)


class TestBinomial:
    def test_frozen(self):
        assert binomial(15, 7) == 6435
        assert binomial(7, 0) == 1
        assert binomial(0, 0) == 1

    @given(st.integers(0, 60), st.integers(0, 60))
    def test_matches_math_comb(self, n, k):
        if k > n:
            with pytest.raises(DomainError):
                binomial(n, k)
        else:
            assert binomial(n, k) == math.comb(n, k)


class TestMeijerG:
    @pytest.mark.parametrize("z", [0.01, 0.1, 1.0, 10.0, 100.0])
    def test_exponential(self, z):
        spec = MeijerGSpec(1, 0, (), (0.0,))
        assert meijer_g(spec, z) == pytest.approx(math.exp(-z), rel=1e-10, abs=1e-300)

    @pytest.mark.parametrize("z", [0.01, 0.1, 1.0, 10.0, 100.0])
    def test_rational(self, z):
        # G^{1,1}_{1,1}[z | 1 ; 1] = z / (1 + z)
        spec = MeijerGSpec(1, 1, (1.0,), (1.0,))
        assert meijer_g(spec, z) == pytest.approx(z / (1.0 + z), rel=1e-10)

    @pytest.mark.parametrize("n", [1, 2, 5, 8, 15, 20])
    @pytest.mark.parametrize("z", [1e-3, 0.37, 5.0, 400.0])
    def test_moment_class_against_mpmath(self, n, z):
        spec = MeijerGSpec(1, 3, (2.0, 1.0, 1.0 - n), (n + 1.0,))
        assert meijer_g(spec, z) == pytest.approx(mp_meijerg(spec, z), rel=1e-9)

    @pytest.mark.parametrize("z", [1e-2, 1.0, 57.0, 1e4])
    def test_outage_class_against_mpmath(self, z):
        spec = MeijerGSpec(0, 3, (0.0, 0.5, 1.0), ())
        assert meijer_g(spec, z) == pytest.approx(mp_meijerg(spec, z), rel=1e-9)

    @given(st.floats(0.05, 0.95))
    @settings(max_examples=25, deadline=None)
    def test_contour_shift_independence(self, frac):
        spec = MeijerGSpec(1, 3, (2.0, 1.0, -3.0), (5.0,))
        lo, hi = spec.strip()
        c = lo + frac * (hi - lo)
        assert meijer_g(spec, 3.3, c=c) == pytest.approx(meijer_g(spec, 3.3), rel=1e-9)

    def test_full_output(self):
        spec = MeijerGSpec(1, 0, (), (0.0,))
        value, info = meijer_g(spec, 2.0, full_output=True)
        assert value == pytest.approx(math.exp(-2.0), rel=1e-10)
        assert set(info) >= {"c", "t_max", "step", "abs_error", "rel_error"}
        assert info["rel_error"] <= 1e-8

    def test_empty_strip_unsupported(self):
        spec = MeijerGSpec(1, 1, (1.0,), (-1.0,))
        with pytest.raises(UnsupportedError):
            meijer_g(spec, 1.0)

    def test_nondecaying_unsupported(self):
        spec = MeijerGSpec(0, 1, (0.5,), (0.0,))
        with pytest.raises(UnsupportedError):
            meijer_g(spec, 1.0)

    @pytest.mark.parametrize("z", [0.0, -1.0, math.inf, math.nan])
    def test_bad_argument(self, z):
        with pytest.raises(DomainError):
            meijer_g(MeijerGSpec(1, 0, (), (0.0,)), z)

    def test_abscissa_outside_strip(self):
        with pytest.raises(DomainError):
            meijer_g(MeijerGSpec(1, 0, (), (0.0,)), 1.0, c=0.5)

    def test_invalid_orders(self):
        with pytest.raises(DomainError):
            MeijerGSpec(2, 0, (), (0.0,))

    def test_impossible_tolerance_raises(self):
        with pytest.raises(ConvergenceError):
            meijer_g(MeijerGSpec(1, 0, (), (0.0,)), 1.0, max_rel_error=1e-18)
