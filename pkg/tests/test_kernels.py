"""Tests for the heat, Poisson and Bessel-potential kernels.

Oracles: finite differences in t for the closed-form time derivatives,
scipy.special for Macdonald values, the spectral (inverse-transform) route
for composite kernels, and exact scaling/PDE identities.
"""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from numpy.testing import assert_allclose

from dunkl.dunkl_ops import (
    convolve,
    dunkl_transform_at,
    inverse_transform_at,
    standard_x_grid,
)
from dunkl.kernels import (
    BesselKernel,
    HeatKernel,
    PoissonKernel,
    bessel_kernel_eval,
    heat_kernel_dt,
    poisson_bessel_negative,
    poisson_kernel_dt,
)
from dunkl.measure import build_grid, integrate_weighted
from dunkl.specfun import DunklParams, gamma

KS = [0.0, 0.5, 1.5]
XS = np.array([0.0, 0.3, 1.2, 2.5])


# ---------------------------------------------------------------------------
# heat kernel
# ---------------------------------------------------------------------------


class TestHeatKernel:
    def test_closed_form_values(self):
        p = DunklParams.from_k(0.5)
        hk = HeatKernel(p, 0.25)
        x = np.array([0.0, 1.0])
        assert_allclose(hk(x), 0.5 ** (-1.0) * np.exp(-x * x), rtol=1e-14)

    def test_requires_positive_time(self):
        p = DunklParams.from_k(0.5)
        with pytest.raises(ValueError):
            HeatKernel(p, 0.0)
        with pytest.raises(ValueError):
            HeatKernel(p, -1.0)

    @pytest.mark.parametrize("k", KS)
    @pytest.mark.parametrize("t", [0.1, 1.0])
    def test_unit_mass(self, k, t):
        # c_k * integral of F_t against the weighted measure equals 1
        p = DunklParams.from_k(k)
        g = build_grid(k, 14.0 * max(1.0, math.sqrt(t)), "smooth")
        got = p.c_k * integrate_weighted(g, HeatKernel(p, t))
        assert_allclose(got, 1.0, rtol=1e-8)

    def test_dx_matches_finite_difference(self):
        p = DunklParams.from_k(1.5)
        hk = HeatKernel(p, 0.7)
        h = 1e-5
        fd = (hk(XS + h) - hk(XS - h)) / (2 * h)
        assert_allclose(hk.dx(XS), fd, rtol=1e-8, atol=1e-12)

    def test_dxx_matches_finite_difference(self):
        p = DunklParams.from_k(1.5)
        hk = HeatKernel(p, 0.7)
        h = 1e-4
        fd = (hk(XS + h) - 2 * hk(XS) + hk(XS - h)) / (h * h)
        assert_allclose(hk.dxx(XS), fd, rtol=1e-6, atol=1e-10)

    @pytest.mark.parametrize("k", KS)
    @pytest.mark.parametrize("m", [1, 2, 3, 4, 5, 6])
    def test_dt_matches_finite_difference(self, k, m):
        # d/dt of the (m-1)-st derivative equals the m-th derivative
        p = DunklParams.from_k(k)
        h = 1e-4
        fd = (heat_kernel_dt(HeatKernel(p, 1.0 + h), m - 1, XS)
              - heat_kernel_dt(HeatKernel(p, 1.0 - h), m - 1, XS)) / (2 * h)
        ex = heat_kernel_dt(HeatKernel(p, 1.0), m, XS)
        assert_allclose(ex, fd, rtol=5e-6, atol=1e-10)

    def test_dt_order_zero_is_kernel(self):
        p = DunklParams.from_k(0.5)
        hk = HeatKernel(p, 0.3)
        assert_allclose(heat_kernel_dt(hk, 0, XS), hk(XS), rtol=0)

    def test_dt_rejects_negative_order(self):
        p = DunklParams.from_k(0.5)
        with pytest.raises(ValueError):
            heat_kernel_dt(HeatKernel(p, 1.0), -1, XS)

    @pytest.mark.parametrize("k", KS)
    def test_heat_equation(self, k):
        # for even functions the Dunkl Laplacian is f'' + (2k/x) f'
        p = DunklParams.from_k(k)
        hk = HeatKernel(p, 0.6)
        x = np.array([0.2, 0.9, 1.7, 3.1])
        lap = hk.dxx(x) + (2.0 * k / x) * hk.dx(x)
        assert_allclose(lap, hk.dt(1, x), rtol=1e-12)

    def test_scaling(self):
        # F_t(x) = t^{-(k+1/2)} F_1(x / sqrt(t))
        p = DunklParams.from_k(1.5)
        t = 0.37
        lhs = HeatKernel(p, t)(XS)
        rhs = t ** (-2.0) * HeatKernel(p, 1.0)(XS / math.sqrt(t))
        assert_allclose(lhs, rhs, rtol=1e-14)

    @pytest.mark.parametrize("k", KS)
    def test_semigroup_under_convolution(self, k):
        p = DunklParams.from_k(k)
        g = standard_x_grid(k)
        f1 = HeatKernel(p, 0.4).as_real_function()
        f2 = HeatKernel(p, 0.9).as_real_function()
        xs = np.array([0.0, 0.5, 1.5])
        got = convolve(p, g, f1, f2, probe_nodes=xs)
        assert_allclose(got, HeatKernel(p, 1.3)(xs), rtol=1e-6)

    def test_transform_is_gaussian_multiplier(self):
        p = DunklParams.from_k(0.5)
        g = standard_x_grid(0.5)
        xis = np.array([0.0, 0.7, 1.4, 2.8])
        got = dunkl_transform_at(p, g, HeatKernel(p, 0.8), xis)
        assert_allclose(got.real, np.exp(-0.8 * xis * xis), atol=1e-9)
        assert np.max(np.abs(got.imag)) < 1e-12


# ---------------------------------------------------------------------------
# Poisson kernel
# ---------------------------------------------------------------------------


class TestPoissonKernel:
    def test_closed_form_values(self):
        p = DunklParams.from_k(0.5)  # c_tilde = 2/sqrt(pi)*Gamma(2) -> 2*...
        pk = PoissonKernel(p, 2.0)
        x = np.array([0.0, 1.0])
        expect = p.c_tilde_k * 2.0 / (4.0 + x * x) ** 1.5
        assert_allclose(pk(x), expect, rtol=1e-14)

    def test_requires_positive_time(self):
        p = DunklParams.from_k(0.5)
        with pytest.raises(ValueError):
            PoissonKernel(p, 0.0)

    @pytest.mark.parametrize("k", KS)
    @pytest.mark.parametrize("t", [0.1, 1.0])
    def test_unit_mass(self, k, t):
        # c_k * integral of P_t against the weighted measure equals 1;
        # the x^{-2k-2} tail needs a very large truncation radius
        p = DunklParams.from_k(k)
        g = build_grid(k, 1e8, "heavy_tail")
        got = p.c_k * integrate_weighted(g, PoissonKernel(p, t))
        assert_allclose(got, 1.0, rtol=1e-6)

    def test_dx_matches_finite_difference(self):
        p = DunklParams.from_k(0.5)
        pk = PoissonKernel(p, 0.8)
        h = 1e-5
        fd = (pk(XS + h) - pk(XS - h)) / (2 * h)
        assert_allclose(pk.dx(XS), fd, rtol=1e-8, atol=1e-12)

    def test_dxx_matches_finite_difference(self):
        p = DunklParams.from_k(0.5)
        pk = PoissonKernel(p, 0.8)
        h = 1e-4
        fd = (pk(XS + h) - 2 * pk(XS) + pk(XS - h)) / (h * h)
        assert_allclose(pk.dxx(XS), fd, rtol=1e-6, atol=1e-10)

    @pytest.mark.parametrize("k", KS)
    @pytest.mark.parametrize("n", [1, 2, 3, 4])
    def test_dt_matches_finite_difference(self, k, n):
        p = DunklParams.from_k(k)
        h = 1e-4
        fd = (poisson_kernel_dt(PoissonKernel(p, 1.0 + h), n - 1, XS)
              - poisson_kernel_dt(PoissonKernel(p, 1.0 - h), n - 1, XS)) / (2 * h)
        ex = poisson_kernel_dt(PoissonKernel(p, 1.0), n, XS)
        assert_allclose(ex, fd, rtol=5e-6, atol=1e-10)

    def test_dt_order_zero_is_kernel(self):
        p = DunklParams.from_k(1.5)
        pk = PoissonKernel(p, 0.5)
        assert_allclose(poisson_kernel_dt(pk, 0, XS), pk(XS), rtol=1e-14)

    @pytest.mark.parametrize("k", KS)
    def test_harmonicity(self, k):
        # (d^2/dt^2 + Dunkl Laplacian) P_t = 0, Laplacian on evens as above
        p = DunklParams.from_k(k)
        pk = PoissonKernel(p, 0.9)
        x = np.array([0.2, 0.9, 1.7, 3.1])
        lap = pk.dxx(x) + (2.0 * k / x) * pk.dx(x)
        resid = lap + pk.dt(2, x)
        scale = np.abs(pk.dt(2, x)) + np.abs(lap)
        assert np.max(np.abs(resid) / scale) < 1e-12

    def test_scaling(self):
        # P_t(x) = t^{-(2k+1)} P_1(x / t)
        p = DunklParams.from_k(1.5)
        t = 0.42
        lhs = PoissonKernel(p, t)(XS)
        rhs = t ** (-4.0) * PoissonKernel(p, 1.0)(XS / t)
        assert_allclose(lhs, rhs, rtol=1e-14)

    @pytest.mark.parametrize("k", KS)
    def test_semigroup_under_convolution(self, k):
        # direct quadrature on a long-tailed grid: both factors decay like
        # |x|^{-2k-2} so the product integrand falls off fast enough
        p = DunklParams.from_k(k)
        g = build_grid(k, 2000.0, "heavy_tail", 12)
        f1 = PoissonKernel(p, 0.6).as_real_function()
        f2 = PoissonKernel(p, 0.7).as_real_function()
        xs = np.array([0.0, 0.5, 1.5])
        got = convolve(p, g, f1, f2, probe_nodes=xs)
        assert_allclose(got, PoissonKernel(p, 1.3)(xs), rtol=1e-6)


# ---------------------------------------------------------------------------
# Bessel-potential kernel
# ---------------------------------------------------------------------------


class TestBesselKernel:
    def test_validation(self):
        p = DunklParams.from_k(0.5)
        with pytest.raises(ValueError):
            BesselKernel(p, 0.0)
        with pytest.raises(ValueError):
            BesselKernel(p, 1.0, evaluation_route="fancy")
        with pytest.raises(ValueError):
            BesselKernel(p, 1.0)(np.array([0.0, 1.0]))

    def test_classical_exponential_case(self):
        # k = 0, alpha = 2: the kernel is sqrt(pi/2) e^{-|x|}
        p = DunklParams.from_k(0.0)
        bk = BesselKernel(p, 2.0)
        x = np.array([0.3, 1.0, 4.0])
        assert_allclose(bk(x), math.sqrt(math.pi / 2.0) * np.exp(-x),
                        rtol=1e-12)

    @pytest.mark.parametrize("k", KS)
    @pytest.mark.parametrize("alpha", [0.5, 1.0, 2.5])
    def test_route_agreement(self, k, alpha):
        p = DunklParams.from_k(k)
        bk = BesselKernel(p, alpha)
        xs = np.geomspace(1e-2, 20.0, 60)
        v1 = bessel_kernel_eval(bk, xs, "laplace_integral")
        v2 = bessel_kernel_eval(bk, xs, "k_bessel_closed_form")
        assert_allclose(v1, v2, rtol=1e-8)

    def test_auto_route_is_continuous_at_switch(self):
        p = DunklParams.from_k(0.5)
        bk = BesselKernel(p, 1.0)
        xs = np.array([0.05 - 1e-9, 0.05 + 1e-9])
        v = bk(xs)
        assert abs(v[0] - v[1]) < 1e-6 * abs(v[1])

    def test_overflow_guard(self):
        p = DunklParams.from_k(0.5)
        bk = BesselKernel(p, 1.0)
        v = bk(np.array([1.0, 800.0, 1200.0]))
        assert v[1] == 0.0 and v[2] == 0.0
        assert v[0] > 0.0
        assert bk.overflow_events == 2

    def test_scalar_round_trip(self):
        p = DunklParams.from_k(0.5)
        bk = BesselKernel(p, 1.5)
        v = bk(1.3)
        assert isinstance(v, float)
        assert_allclose(v, bk(np.array([1.3]))[0], rtol=0)

    @pytest.mark.parametrize("k", KS)
    @pytest.mark.parametrize("alpha", [0.5, 1.0, 2.5])
    def test_unit_mass(self, k, alpha):
        # alpha = 0.5 puts a |x|^{alpha-1-2k} singularity at the origin whose
        # innermost-panel residual caps the quadrature near 1e-7
        p = DunklParams.from_k(k)
        g = build_grid(k, 60.0, "singular_origin")
        got = p.c_k * integrate_weighted(g, BesselKernel(p, alpha))
        assert_allclose(got, 1.0, rtol=1e-6)

    @pytest.mark.parametrize("k", KS)
    @pytest.mark.parametrize("alpha", [0.5, 1.0, 2.5])
    def test_transform_is_bessel_multiplier(self, k, alpha):
        p = DunklParams.from_k(k)
        g = build_grid(k, 60.0, "singular_origin")
        xis = np.array([0.0, 0.5, 1.0, 2.0, 3.0])
        got = dunkl_transform_at(p, g, BesselKernel(p, alpha), xis)
        assert_allclose(got.real, (1.0 + xis * xis) ** (-alpha / 2.0),
                        atol=1e-8)
        assert np.max(np.abs(got.imag)) < 1e-12

    def test_origin_asymptote(self):
        # for alpha < 2k+1 the kernel behaves like C |x|^{alpha-1-2k} at 0
        for k, alpha in [(0.5, 1.0), (1.5, 2.5), (0.0, 0.5)]:
            p = DunklParams.from_k(k)
            bk = BesselKernel(p, alpha)
            x = 1e-3
            assert_allclose(bk(x), bk.asymptotic_origin(x), rtol=0.05)

    def test_tail_asymptote(self):
        for k, alpha in [(0.0, 0.5), (0.5, 1.0), (1.5, 2.5)]:
            p = DunklParams.from_k(k)
            bk = BesselKernel(p, alpha)
            x = 25.0
            assert_allclose(bk(x), bk.asymptotic_tail(x), rtol=0.05)

    @pytest.mark.parametrize("k", [0.0, 0.5])
    def test_convolution_with_heat_matches_spectral_route(self, k):
        # smooth factor translated, singular factor sampled at nodes only;
        # the product of transforms supplies the oracle
        p = DunklParams.from_k(k)
        g = build_grid(k, 60.0, "singular_origin")
        heat = HeatKernel(p, 0.5).as_real_function()
        bess = BesselKernel(p, 1.5).as_real_function()
        xs = np.array([0.0, 0.4, 1.0, 2.2])
        got = convolve(p, g, heat, bess, probe_nodes=xs)
        fg = build_grid(k, 30.0, "smooth", 12, max_panel_width=0.3)
        mult = lambda xi: np.exp(-0.5 * xi * xi) * (1.0 + xi * xi) ** -0.75
        oracle = inverse_transform_at(p, fg, mult, xs).real
        assert_allclose(got, oracle, rtol=1e-6)

    def test_grid_value_cache(self):
        p = DunklParams.from_k(0.5)
        bk = BesselKernel(p, 1.0)
        g = build_grid(0.5, 40.0, "singular_origin")
        v1 = bk.eval_on_grid(g)
        v2 = bk.eval_on_grid(g)
        assert v1 is v2


# ---------------------------------------------------------------------------
# Poisson integral of negative-order Bessel kernels
# ---------------------------------------------------------------------------


class TestPoissonBesselNegative:
    def test_validation(self):
        p = DunklParams.from_k(0.5)
        with pytest.raises(ValueError):
            poisson_bessel_negative(p, 0.0, 1.0, 1.0)
        with pytest.raises(ValueError):
            poisson_bessel_negative(p, 1.0, 0.0, 1.0)

    @staticmethod
    def _spectral_oracle(p, beta, t, xs):
        fg = build_grid(p.k, 120.0, "smooth", 12, max_panel_width=0.3)
        mult = lambda xi: np.exp(-t * np.abs(xi)) * (1.0 + xi * xi) ** (beta / 2.0)
        return inverse_transform_at(p, fg, mult, xs).real

    @pytest.mark.parametrize("k", KS)
    def test_low_order_matches_spectral_route(self, k):
        p = DunklParams.from_k(k)
        xs = np.array([0.0, 0.4, 1.3, 3.0])
        for beta, t in ((1.0, 1.0), (0.7, 0.6)):
            got = poisson_bessel_negative(p, beta, t, xs)
            oracle = self._spectral_oracle(p, beta, t, xs)
            assert_allclose(got, oracle, rtol=1e-5)

    @pytest.mark.parametrize("k", [0.0, 0.5])
    def test_high_order_matches_spectral_route(self, k):
        # beta >= 2 exercises the iterated (I + d^2/dt^2)^m reduction
        p = DunklParams.from_k(k)
        xs = np.array([0.0, 0.8, 2.0])
        for beta, t in ((2.0, 1.0), (2.5, 1.0), (3.7, 0.8)):
            got = poisson_bessel_negative(p, beta, t, xs)
            oracle = self._spectral_oracle(p, beta, t, xs)
            assert_allclose(got, oracle, rtol=2e-4)

    def test_scalar_round_trip(self):
        p = DunklParams.from_k(0.5)
        v = poisson_bessel_negative(p, 1.0, 1.0, 0.7)
        assert isinstance(v, float)


# ---------------------------------------------------------------------------
# shared structural properties
# ---------------------------------------------------------------------------


@settings(max_examples=40, deadline=None)
@given(
    k=st.sampled_from([0.0, 0.25, 0.5, 1.5]),
    t=st.floats(0.05, 5.0),
    x=st.floats(0.0, 10.0),
)
def test_kernels_positive_even_decreasing(k, t, x):
    p = DunklParams.from_k(k)
    for kern in (HeatKernel(p, t), PoissonKernel(p, t)):
        v = kern(np.array([x]))[0]
        assert v > 0.0
        assert_allclose(kern(np.array([-x]))[0], v, rtol=1e-14)
        v2 = kern(np.array([x + 0.5]))[0]
        assert v2 <= v * (1.0 + 1e-14)
