"""Tests for the scalar special functions.

Oracles: scipy.special / scipy.integrate.quad / math for classical values,
plus independent series and integral representations computed in-test.
"""

import cmath
import math

import numpy as np
import pytest
import scipy.integrate
import scipy.special as sp
from hypothesis import given, settings
from hypothesis import strategies as st
from numpy.testing import assert_allclose

from dunkl.specfun import (
    DEFAULT_POLICY,
    DunklParams,
    GammaPoleError,
    SeriesConvergenceError,
    SeriesPolicy,
    bessel_j_normalized,
    bessel_j_normalized_dz,
    bessel_k,
    dunkl_kernel,
    dunkl_kernel_dx,
    gamma,
    j_normalized_real_array,
)


class TestGamma:
    def test_half_integer_values(self):
        assert_allclose(gamma(0.5), math.sqrt(math.pi), rtol=1e-12)
        assert_allclose(gamma(1.5), math.sqrt(math.pi) / 2, rtol=1e-12)
        assert_allclose(gamma(1.0), 1.0, rtol=1e-12)
        assert_allclose(gamma(5.0), 24.0, rtol=1e-12)

    def test_against_quadrature_oracle(self):
        # Gamma(2.5) = int_0^inf t^{1.5} e^{-t} dt
        ref, _ = scipy.integrate.quad(lambda t: t**1.5 * math.exp(-t), 0, 50)
        assert_allclose(gamma(2.5), ref, rtol=1e-10)

    def test_sweep_against_stdlib(self):
        xs = np.concatenate([np.linspace(1e-3, 0.49, 25), np.linspace(0.5, 50, 120)])
        for x in xs:
            assert_allclose(gamma(float(x)), math.gamma(float(x)), rtol=1e-12)

    def test_reflection_negative(self):
        assert_allclose(gamma(-0.5), -2.0 * math.sqrt(math.pi), rtol=1e-12)
        assert_allclose(gamma(-1.5), math.gamma(-1.5), rtol=1e-12)

    @pytest.mark.parametrize("x", [0.0, -1.0, -7.0])
    def test_poles_raise(self, x):
        with pytest.raises(GammaPoleError):
            gamma(x)


class TestSeriesPolicy:
    def test_validation(self):
        with pytest.raises(ValueError):
            SeriesPolicy(max_terms=8)
        with pytest.raises(ValueError):
            SeriesPolicy(abs_tol=1e-3)
        with pytest.raises(ValueError):
            SeriesPolicy(switch_radius=-1.0)


class TestDunklParams:
    def test_constants_k_half(self):
        p = DunklParams.from_k(0.5)
        assert_allclose(p.c_k, 0.5, rtol=1e-12)
        assert_allclose(p.d_k, 1.0 / math.pi, rtol=1e-12)
        assert_allclose(p.c_tilde_k, 1.0, rtol=1e-12)

    def test_constants_k_zero(self):
        p = DunklParams.from_k(0.0)
        assert_allclose(p.c_k, 1.0 / math.sqrt(2 * math.pi), rtol=1e-12)
        assert_allclose(p.c_tilde_k, math.sqrt(2 / math.pi), rtol=1e-12)
        assert p.d_k is None

    def test_constants_k_three_halves(self):
        p = DunklParams.from_k(1.5)
        assert_allclose(p.c_k, 0.25, rtol=1e-12)
        assert_allclose(p.d_k, 2.0 / math.pi, rtol=1e-12)
        assert_allclose(p.c_tilde_k, 3.0, rtol=1e-12)

    def test_negative_k_rejected(self):
        with pytest.raises(ValueError):
            DunklParams.from_k(-0.1)


class TestNormalizedBessel:
    def test_cosine_degeneration(self):
        # j_{-1/2}(z) = cos(z); near cosine zeros (z = 11) the series keeps
        # absolute, not relative, accuracy
        for z in [0.3, 2.0, 11.0]:
            assert_allclose(complex(bessel_j_normalized(-0.5, z)),
                            complex(math.cos(z)), rtol=1e-12, atol=5e-13)

    def test_sinc_degeneration_imaginary(self):
        # j_{1/2}(i) = sin(i)/i = sinh(1)
        got = bessel_j_normalized(0.5, 1j)
        assert_allclose(got.real, math.sinh(1.0), rtol=1e-12)
        assert abs(got.imag) < 1e-14

    @pytest.mark.parametrize("alpha", [-0.5, 0.0, 0.25, 1.0, 2.0])
    @pytest.mark.parametrize("u", [0.1, 1.0, 5.0, 11.9, 12.5, 20.0, 50.0, 99.0])
    def test_real_axis_vs_scipy(self, alpha, u):
        ref = math.gamma(alpha + 1) * (u / 2) ** (-alpha) * sp.jv(alpha, u)
        got = complex(bessel_j_normalized(alpha, u))
        assert abs(got - ref) < 1e-9 * max(1.0, abs(ref)) + 1e-12

    @pytest.mark.parametrize("alpha", [0.0, 0.25, 1.0, 2.0])
    @pytest.mark.parametrize("v", [0.5, 5.0, 13.0, 30.0, 80.0])
    def test_imaginary_axis_vs_scipy(self, alpha, v):
        ref = math.gamma(alpha + 1) * (v / 2) ** (-alpha) * sp.iv(alpha, v)
        got = bessel_j_normalized(alpha, 1j * v)
        assert_allclose(got.real, ref, rtol=1e-9)

    def test_value_at_zero(self):
        assert bessel_j_normalized(0.7, 0.0) == 1.0 + 0.0j

    def test_derivative_identity(self):
        # j_a'(z) = -z j_{a+1}(z) / (2(a+1)) vs central differences
        for alpha, z in [(0.0, 0.7), (1.0, 2.0 + 0.0j), (0.5, 1.5j)]:
            h = 1e-5
            fd = (bessel_j_normalized(alpha, z + h)
                  - bessel_j_normalized(alpha, z - h)) / (2 * h)
            assert_allclose(complex(bessel_j_normalized_dz(alpha, z)),
                            complex(fd), rtol=1e-8, atol=1e-10)

    def test_off_axis_large_argument_raises(self):
        with pytest.raises(SeriesConvergenceError):
            bessel_j_normalized(0.5, 20.0 + 20.0j)

    def test_order_below_range_rejected(self):
        with pytest.raises(ValueError):
            bessel_j_normalized(-0.75, 1.0)

    def test_vectorized_matches_scalar(self):
        u = np.array([-40.0, -12.5, -3.0, -1e-8, 1e-8, 0.5, 11.99, 12.01, 75.0])
        for alpha in [-0.5, 0.0, 0.5, 1.0, 2.0]:
            vec = j_normalized_real_array(alpha, u)
            ref = np.array([complex(bessel_j_normalized(alpha, x)).real for x in u])
            assert_allclose(vec, ref, rtol=1e-9, atol=1e-12)


class TestBesselK:
    def test_integral_representation_oracle(self):
        # K_nu(x) = int_0^inf e^{-x cosh t} cosh(nu t) dt
        nu, x = 2.3, 0.7
        ref, _ = scipy.integrate.quad(
            lambda t: math.exp(-x * math.cosh(t)) * math.cosh(nu * t), 0, 12,
            epsabs=1e-13, epsrel=1e-12)
        assert_allclose(bessel_k(nu, x), ref, rtol=1e-9)

    def test_half_integer_closed_form(self):
        for x in [0.05, 1.0, 9.0, 25.0]:
            ref = math.sqrt(math.pi / (2 * x)) * math.exp(-x)
            assert_allclose(bessel_k(0.5, x), ref, rtol=1e-12)
            assert_allclose(bessel_k(1.5, x), ref * (1 + 1 / x), rtol=1e-12)

    @pytest.mark.parametrize("nu", [0.0, 0.3, 0.5, 1.0, 1.5, 2.3, 3.7, 5.0, 7.5, 10.0])
    @pytest.mark.parametrize("x", [1e-3, 0.1, 0.7, 3.0, 11.9, 12.1, 30.0])
    def test_sweep_vs_scipy(self, nu, x):
        assert_allclose(bessel_k(nu, x), float(sp.kv(nu, x)), rtol=1e-9)

    def test_even_in_order(self):
        assert bessel_k(-2.3, 0.9) == bessel_k(2.3, 0.9)

    def test_nonpositive_argument_rejected(self):
        with pytest.raises(ValueError):
            bessel_k(1.0, 0.0)


def _dunkl_derivative_of_kernel(k, lam, x):
    """D_k applied to E_k(lam, .) at x, from the closed x-derivative."""
    p = DunklParams.from_k(k)
    d = dunkl_kernel_dx(p, lam, x)
    if x == 0.0:
        return (1.0 + 2.0 * k) * d
    refl = (dunkl_kernel(p, lam, x) - dunkl_kernel(p, lam, -x)) / x
    return d + k * refl


class TestDunklKernel:
    def test_k_zero_is_exponential(self):
        p = DunklParams.from_k(0.0)
        for lam, x in [(2.0, 1.3), (-1.0, 0.4), (1j, 2.0)]:
            assert_allclose(complex(dunkl_kernel(p, lam, x)),
                            cmath.exp(lam * x), rtol=1e-10)

    def test_value_at_origin(self):
        p = DunklParams.from_k(0.75)
        assert_allclose(complex(dunkl_kernel(p, 2.0, 0.0)), 1.0 + 0j, rtol=1e-14)

    def test_ode_series_oracle(self):
        # power-series solution of D_k E = E with E(0)=1, at x=1, k=0.5:
        # b_0 = 1, b_{n+1} = b_n / (n+1 + 2k * [n+1 odd])
        k = 0.5
        b = 1.0
        acc = 1.0
        for n in range(80):
            m = n + 1
            div = m + (2.0 * k if m % 2 == 1 else 0.0)
            b = b / div
            acc += b
        got = dunkl_kernel(DunklParams.from_k(k), 1.0, 1.0)
        assert_allclose(got.real, acc, rtol=1e-10)
        assert abs(got.imag) < 1e-14

    def test_symmetry_in_arguments(self):
        p = DunklParams.from_k(0.8)
        for lam, x in [(0.7, 2.2), (1.4, -0.3)]:
            a = dunkl_kernel(p, lam, x)
            bb = dunkl_kernel(p, x, lam)
            assert_allclose(complex(a), complex(bb), rtol=1e-12)

    @pytest.mark.parametrize("k", [0.0, 0.25, 0.5, 1.5])
    @pytest.mark.parametrize("lam", [1.0, -1.0, 1j, -1j, 2.0])
    def test_eigenfunction_relation(self, k, lam):
        # 33-point lattice on [-3, 3] minus the origin
        xs = [x for x in np.linspace(-3, 3, 33) if abs(x) > 1e-12]
        p = DunklParams.from_k(k)
        for x in xs:
            resid = _dunkl_derivative_of_kernel(k, lam, float(x)) \
                - lam * dunkl_kernel(p, lam, float(x))
            assert abs(resid) <= 1e-6

    def test_closed_derivative_vs_finite_differences(self):
        p = DunklParams.from_k(1.5)
        lam, x, h = 2.0, 0.7, 1e-5
        fd = (dunkl_kernel(p, lam, x - 2 * h) - 8 * dunkl_kernel(p, lam, x - h)
              + 8 * dunkl_kernel(p, lam, x + h) - dunkl_kernel(p, lam, x + 2 * h)) \
            / (12 * h)
        assert_allclose(complex(dunkl_kernel_dx(p, lam, x)), complex(fd),
                        rtol=1e-8)

    @settings(max_examples=60, deadline=None)
    @given(k=st.floats(0.0, 3.0), y=st.floats(-8.0, 8.0), x=st.floats(-8.0, 8.0))
    def test_boundedness_properties(self, k, y, x):
        p = DunklParams.from_k(k)
        # |E_k(-iy, x)| <= 1 and |E_k(lam, x)| <= e^{|lam x|}
        assert abs(dunkl_kernel(p, -1j * y, x)) <= 1.0 + 1e-10
        assert abs(dunkl_kernel(p, 1.1, x)) <= math.exp(abs(1.1 * x)) * (1 + 1e-10)
