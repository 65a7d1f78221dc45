"""Smoothness-norm functionals: routes, reports, and their cross-checks."""

import math
import warnings

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.interpolate import PchipInterpolator

from dunkl.dunkl_ops import RealFunction, SampledFunction
from dunkl.kernels import BesselKernel
from dunkl.lipschitz import (
    DivergenceWarning,
    EmbeddingReport,
    EquivalenceReport,
    LipschitzParams,
    TGrid,
    a_functional,
    e_functional,
    embedding_report,
    equivalence_report,
    heat_seminorm_family,
    l_functional,
    lipschitz_norm_heat,
    lipschitz_norm_modulus,
    standard_tgrid,
    star_tgrid,
)
from dunkl.measure import build_grid, lp_norm
from dunkl.potentials import (
    GrowthPreconditionError,
    PotentialOrder,
    potential_multiplier_fn,
    potential_on_temperature,
)
from dunkl.specfun import DunklParams
from dunkl.transforms import (
    Temperature,
    closed_form_temperature,
    heat_temperature,
)

KS = [0.0, 0.5, 1.5]

GAUSS = RealFunction(
    lambda x: np.exp(-x * x),
    parity="even",
    decay="gaussian",
    derivative=lambda x: -2.0 * x * np.exp(-x * x),
    name="gaussian",
)
XGAUSS = RealFunction(
    lambda x: x * np.exp(-x * x), parity="odd", decay="gaussian", name="xgauss"
)
H2G = RealFunction(
    lambda x: (4.0 * x * x - 2.0) * np.exp(-x * x),
    parity="even",
    decay="gaussian",
    name="h2gauss",
)
ZERO = RealFunction(lambda x: 0.0 * np.asarray(x), parity="even",
                    decay="gaussian", name="zero")

TG = TGrid.build(1e-3, 1e2, 32)
YG = TGrid.build(1e-2, 1e2, 32)

_params: dict = {}
_xg: dict = {}
_fg: dict = {}
_U: dict = {}
_norms: dict = {}


def params(k: float) -> DunklParams:
    if k not in _params:
        _params[k] = DunklParams.from_k(k)
    return _params[k]


def xgrid(k: float):
    if k not in _xg:
        _xg[k] = build_grid(k, 10.0, "smooth", 8, max_panel_width=1.0)
    return _xg[k]


def fgrid(k: float):
    if k not in _fg:
        _fg[k] = build_grid(k, 16.0, "smooth", 8, max_panel_width=1.0)
    return _fg[k]


def heat_U(k: float, f) -> Temperature:
    key = (k, f.name)
    if key not in _U:
        _U[key] = heat_temperature(params(k), f, grid=xgrid(k), freq_grid=fgrid(k))
    return _U[key]


def heat_norm(k, f, alpha, p=2.0, q=2.0, n=None):
    key = (k, f.name, alpha, p, q, n)
    if key not in _norms:
        _norms[key] = lipschitz_norm_heat(
            params(k), LipschitzParams(alpha, p, q), f, grid=xgrid(k), tgrid=TG, n=n
        )
    return _norms[key]


def scaled(f, c: float) -> RealFunction:
    return RealFunction(
        lambda x: c * f(x), parity=f.parity, decay=f.decay, name=f"{c}*{f.name}"
    )


def added(f, g) -> RealFunction:
    return RealFunction(
        lambda x: f(x) + g(x), parity="none", decay="gaussian",
        name=f"{f.name}+{g.name}"
    )


class TestLipschitzParams:
    def test_derivative_order_values(self):
        assert LipschitzParams(0.7, 2, 2).n_bar == 1
        assert LipschitzParams(1.0, 2, 2).n_bar == 1
        assert LipschitzParams(2.0, 2, 2).n_bar == 2
        assert LipschitzParams(0.0, 2, 2).n_bar == 1
        assert LipschitzParams(-0.5, 2, 2).n_bar == 0
        assert LipschitzParams(4.0, 2, 2).n_bar == 3

    def test_alpha_bar_values(self):
        assert LipschitzParams(0.5, 2, 2).alpha_bar == 1
        assert LipschitzParams(1.0, 2, 2).alpha_bar == 2
        assert LipschitzParams(-1.0, 2, 2).alpha_bar == 0
        assert LipschitzParams(2.5, 2, 2).alpha_bar == 3

    @given(st.floats(min_value=-20.0, max_value=20.0,
                     allow_nan=False, allow_infinity=False))
    @settings(max_examples=200, deadline=None)
    def test_derivative_order_invariants(self, alpha):
        lp = LipschitzParams(alpha, 2.0, 2.0)
        assert lp.n_bar > alpha / 2.0
        assert lp.n_bar >= 0
        if alpha >= 0.0:
            assert lp.n_bar - 1 <= alpha / 2.0
        assert lp.alpha_bar > alpha
        if alpha >= 0.0:
            assert lp.alpha_bar - 1 <= alpha

    def test_rejects_bad_integrability_indices(self):
        with pytest.raises(ValueError):
            LipschitzParams(0.5, 0.5, 2.0)
        with pytest.raises(ValueError):
            LipschitzParams(0.5, 2.0, 0.0)
        with pytest.raises(ValueError):
            LipschitzParams(math.nan, 2.0, 2.0)
        assert LipschitzParams(0.5, math.inf, math.inf).n_bar == 1


class TestTGrid:
    def test_build_endpoints_and_density(self):
        tg = TGrid.build(1e-2, 1e2, 40)
        assert tg.t_min == pytest.approx(1e-2)
        assert tg.t_max == pytest.approx(1e2)
        decades = math.log10(tg.t_max / tg.t_min)
        assert (tg.nodes.size - 1) / decades >= 40 - 1e-9
        assert np.all(np.diff(tg.nodes) > 0)

    def test_rejects_sparse_or_malformed(self):
        with pytest.raises(ValueError):
            TGrid.build(1e-2, 1e2, 16)
        with pytest.raises(ValueError):
            TGrid.build(1.0, 0.5, 64)
        with pytest.raises(ValueError):
            TGrid(np.array([0.0, 1.0]))
        with pytest.raises(ValueError):
            TGrid(np.array([2.0, 1.0]))
        with pytest.raises(ValueError):
            TGrid(np.geomspace(1e-2, 1e2, 20))

    def test_standard_ranges(self):
        tg = standard_tgrid()
        assert tg.t_min == pytest.approx(1e-4) and tg.t_max == pytest.approx(1e2)
        sg = star_tgrid()
        assert sg.t_max == pytest.approx(1.0)


class TestAFunctional:
    def test_zero_family_gives_zero(self):
        for k in KS:
            lp = LipschitzParams(0.7, 2.0, 2.0)
            assert a_functional(params(k), lp, lambda t: ZERO, xgrid(k), TG) == 0.0

    def test_restricted_never_exceeds_full(self):
        k = 0.5
        lp = LipschitzParams(0.7, 2.0, 2.0)
        V = heat_seminorm_family(params(k), heat_U(k, GAUSS), 0.7, 1, xgrid(k))
        full = a_functional(params(k), lp, V, xgrid(k))
        star = a_functional(params(k), lp, V, xgrid(k), star=True)
        assert star <= full + 1e-12

    def test_matches_denser_grid_oracle(self):
        # alpha = 0.7, p = q = 2, k = 0.5 heat family against a refined
        # time grid: agreement within 1%.
        k = 0.5
        lp = LipschitzParams(0.7, 2.0, 2.0)
        V = heat_seminorm_family(params(k), heat_U(k, GAUSS), 0.7, 1, xgrid(k))
        coarse = a_functional(params(k), lp, V, xgrid(k))
        fine = a_functional(params(k), lp, V, xgrid(k), TGrid.build(1e-5, 1e3, 128))
        assert math.isfinite(coarse)
        assert abs(coarse - fine) <= 0.01 * fine

    def test_homogeneous_in_the_family(self):
        k = 0.5
        lp = LipschitzParams(0.7, 2.0, 2.0)
        V = heat_seminorm_family(params(k), heat_U(k, GAUSS), 0.7, 1, xgrid(k))

        def V3(t):
            s = V(t)
            return SampledFunction(s.grid, 3.0 * s.values, interpolation="none")

        a1 = a_functional(params(k), lp, V, xgrid(k), TG)
        a3 = a_functional(params(k), lp, V3, xgrid(k), TG)
        assert a3 == pytest.approx(3.0 * a1, rel=1e-12)

    def test_sup_variant_is_max_over_nodes(self):
        k = 0.5
        lp = LipschitzParams(0.7, 2.0, math.inf)
        V = heat_seminorm_family(params(k), heat_U(k, GAUSS), 0.7, 1, xgrid(k))
        got = a_functional(params(k), lp, V, xgrid(k), TG)
        manual = max(
            lp_norm(xgrid(k), V(float(t)), 2.0).value for t in TG.nodes
        )
        assert got == pytest.approx(manual, rel=1e-13)

    def test_flags_divergence_at_small_time(self):
        k = 0.5
        lp = LipschitzParams(0.7, 2.0, 2.0)
        with pytest.warns(DivergenceWarning):
            out = a_functional(
                params(k), lp,
                lambda t: (lambda x, t=t: np.exp(-x * x) / t),
                xgrid(k), TG,
            )
        assert out == math.inf

    def test_flags_divergence_at_large_time(self):
        k = 0.5
        lp = LipschitzParams(0.7, 2.0, 2.0)
        with pytest.warns(DivergenceWarning):
            out = a_functional(
                params(k), lp,
                lambda t: (lambda x, t=t: t * np.exp(-x * x)),
                xgrid(k), TG,
            )
        assert out == math.inf

    def test_restricted_range_tolerates_growth_toward_cutoff(self):
        # The restricted functional integrates to a finite cutoff; an
        # integrand increasing toward t = 1 is integrable and must not be
        # misreported as divergent.
        k = 0.5
        lp = LipschitzParams(0.7, 2.0, 2.0)
        with warnings.catch_warnings():
            warnings.simplefilter("error", DivergenceWarning)
            out = a_functional(
                params(k), lp,
                lambda t: (lambda x, t=t: t * np.exp(-x * x)),
                xgrid(k), star=True,
            )
        assert math.isfinite(out)


class TestModulusNorm:
    def test_golden_value(self):
        # Frozen by an independent refinement study (denser x-grid, wider
        # and denser y-grid agreed to 6e-4).
        got = lipschitz_norm_modulus(
            params(0.5), LipschitzParams(0.5, 2.0, 2.0), GAUSS
        )
        assert got == pytest.approx(1.9067893253, rel=0.01)

    def test_matches_denser_grid_oracle(self):
        k = 0.5
        lp = LipschitzParams(0.5, 2.0, 2.0)
        light = lipschitz_norm_modulus(params(k), lp, GAUSS, xgrid(k), YG)
        refined = lipschitz_norm_modulus(
            params(k), lp, GAUSS,
            build_grid(k, 14.0, "smooth", 10, max_panel_width=0.4),
            TGrid.build(1e-3, 1e3, 64),
        )
        assert abs(light - refined) <= 0.01 * refined

    def test_zero_function_and_homogeneity(self):
        k = 0.5
        lp = LipschitzParams(0.5, 2.0, 2.0)
        assert lipschitz_norm_modulus(params(k), lp, ZERO, xgrid(k), YG) == 0.0
        v1 = lipschitz_norm_modulus(params(k), lp, GAUSS, xgrid(k), YG)
        v2 = lipschitz_norm_modulus(params(k), lp, scaled(GAUSS, -2.0), xgrid(k), YG)
        assert v2 == pytest.approx(2.0 * v1, rel=1e-9)

    def test_requires_fractional_smoothness(self):
        for bad in (0.0, 1.0, -0.3, 1.7):
            with pytest.raises(ValueError):
                lipschitz_norm_modulus(
                    params(0.5), LipschitzParams(bad, 2.0, 2.0), GAUSS,
                    xgrid(0.5), YG,
                )

    def test_finite_across_parameters(self):
        for k in KS:
            v = lipschitz_norm_modulus(
                params(k), LipschitzParams(0.5, 2.0, 2.0), GAUSS, xgrid(k), YG
            )
            assert math.isfinite(v) and v > 0.0

    def test_sup_variant_finite(self):
        v = lipschitz_norm_modulus(
            params(0.5), LipschitzParams(0.5, 2.0, math.inf), GAUSS,
            xgrid(0.5), YG,
        )
        assert math.isfinite(v) and v > 0.0

    def test_singular_kernel_membership(self):
        # The potential kernel of order 1/2 has an integrable origin
        # singularity yet finite sup-route seminorm at alpha = 1/2, p = 1.
        # The kernel is tabulated in log-log once for speed; interpolation
        # error is irrelevant to a finiteness check.
        k = 0.5
        B = BesselKernel(params(k), 0.5)
        ax = np.geomspace(1e-9, 30.0, 3000)
        table = PchipInterpolator(np.log(ax), np.log(B(ax)))

        def b_eval(x):
            ax_in = np.maximum(np.abs(np.asarray(x, dtype=float)), 1e-9)
            out = np.exp(table(np.log(np.minimum(ax_in, 30.0))))
            return np.where(ax_in >= 30.0, 0.0, out)

        Bfun = RealFunction(b_eval, parity="even", decay="exponential",
                            name="bessel_kernel_eval")
        sg = build_grid(k, 20.0, "singular_origin", 8)
        v = lipschitz_norm_modulus(
            params(k), LipschitzParams(0.5, 1.0, math.inf), Bfun,
            sg, TGrid.build(1e-2, 1e2, 32), n_theta=48,
        )
        assert math.isfinite(v) and v > 0.0


class TestHeatNorm:
    def test_positive_alpha_finite_and_near_difference_route(self):
        k = 0.5
        hv = heat_norm(k, GAUSS, 0.7)
        mv = lipschitz_norm_modulus(
            params(k), LipschitzParams(0.7, 2.0, 2.0), GAUSS, xgrid(k), YG
        )
        assert math.isfinite(hv)
        assert 1.0 / 50.0 <= hv / mv <= 50.0

    def test_nonpositive_alpha_base_term_is_representative_norm(self):
        k = 0.5
        lp = LipschitzParams(-1.0, 2.0, 2.0)
        total = lipschitz_norm_heat(params(k), lp, GAUSS, grid=xgrid(k), tgrid=TG)
        base = lp_norm(xgrid(k), GAUSS, 2.0).value
        T = potential_multiplier_fn(params(k), -1.5, GAUSS, xgrid(k))
        U = heat_temperature(params(k), T, grid=xgrid(k))
        tail = a_functional(
            params(k), lp, heat_seminorm_family(params(k), U, -1.0, 0, xgrid(k)),
            xgrid(k), TG, star=True,
        )
        assert total == pytest.approx(base + tail, rel=1e-12)
        assert math.isfinite(total) and total > base

    def test_alpha_zero_uses_one_derivative(self):
        k = 0.5
        lp = LipschitzParams(0.0, 2.0, 2.0)
        assert lp.n_bar == 1
        v = lipschitz_norm_heat(params(k), lp, GAUSS, grid=xgrid(k), tgrid=TG)
        assert math.isfinite(v) and v > 0.0

    def test_missing_function_or_representative(self):
        with pytest.raises(ValueError, match="function"):
            lipschitz_norm_heat(params(0.5), LipschitzParams(0.5, 2, 2))
        with pytest.raises(ValueError, match="representative"):
            lipschitz_norm_heat(params(0.5), LipschitzParams(-1.0, 2, 2))

    def test_stable_under_derivative_order_increase(self):
        # Replacing the minimal admissible derivative order by the next one
        # changes the norm by a bounded factor.
        k = 0.5
        r = heat_norm(k, GAUSS, 0.7) / heat_norm(k, GAUSS, 0.7, n=2)
        assert 0.1 <= r <= 10.0

    def test_rejects_insufficient_derivative_order(self):
        with pytest.raises(ValueError):
            lipschitz_norm_heat(
                params(0.5), LipschitzParams(3.0, 2, 2), GAUSS,
                grid=xgrid(0.5), tgrid=TG, n=1,
            )

    def test_sup_in_time_variant_finite(self):
        v = heat_norm(0.5, GAUSS, 0.7, q=math.inf)
        assert math.isfinite(v) and v > 0.0


def zero_temperature(k: float) -> Temperature:
    zf = lambda xs, t: 0.0 * np.asarray(xs)
    return Temperature(params(k), zf, lambda m, xs, t: 0.0 * np.asarray(xs),
                       name="zero")


class TestEFunctional:
    def test_zero_temperature_gives_zero(self):
        assert e_functional(params(0.5), 0.5, zero_temperature(0.5),
                            2.0, 2.0, xgrid(0.5)) == 0.0

    def test_finite_and_controlled_by_heat_norm(self):
        # The temperature-side functional of the Gaussian extension is
        # bounded by a constant times the function-side norm.
        k = 0.5
        e = e_functional(params(k), 0.5, heat_U(k, GAUSS), 2.0, 2.0, xgrid(k))
        nv = heat_norm(k, GAUSS, 0.5)
        assert math.isfinite(e) and e > 0.0
        assert e <= 50.0 * nv and e >= nv / 50.0

    def test_default_offset_matches_explicit(self):
        k = 0.5
        U = heat_U(k, GAUSS)
        assert e_functional(params(k), 0.0, U, 2.0, 2.0, xgrid(k)) == (
            e_functional(params(k), 0.0, U, 2.0, 2.0, xgrid(k), beta=2.0)
        )

    def test_offset_variants_equivalent(self):
        k = 0.5
        U = heat_U(k, GAUSS)
        e2 = e_functional(params(k), 0.0, U, 2.0, 2.0, xgrid(k), beta=2.0)
        e4 = e_functional(params(k), 0.0, U, 2.0, 2.0, xgrid(k), beta=4.0)
        assert 1.0 / 50.0 <= e2 / e4 <= 50.0

    def test_invariant_under_potential_shift(self):
        # Applying a potential of order 1 to the temperature while raising
        # the smoothness index by 1 leaves the functional unchanged.
        k = 0.5
        U = heat_U(k, GAUSS)
        lhs = e_functional(params(k), -1.0, U, 2.0, 2.0, xgrid(k))
        J1U = potential_on_temperature(U, PotentialOrder.from_alpha(1.0))
        rhs = e_functional(params(k), 0.0, J1U, 2.0, 2.0, xgrid(k))
        assert rhs == pytest.approx(lhs, rel=1e-6)

    def test_sup_and_l1_variants_finite(self):
        k = 0.5
        U = heat_U(k, GAUSS)
        vi = e_functional(params(k), 0.0, U, 2.0, math.inf, xgrid(k),
                          tgrid=TGrid.build(1e-3, 30.0, 32))
        v1 = e_functional(params(k), 0.0, U, 1.0, 1.0, xgrid(k))
        assert math.isfinite(vi) and vi > 0.0
        assert math.isfinite(v1) and v1 > 0.0

    def test_rejects_bad_offset_and_growth(self):
        with pytest.raises(ValueError):
            e_functional(params(0.5), 0.5, heat_U(0.5, GAUSS), 2.0, 2.0,
                         xgrid(0.5), beta=0.5)
        W = closed_form_temperature(params(0.5), "blow_up", blow_up_time=1.0)
        with pytest.raises(GrowthPreconditionError):
            e_functional(params(0.5), 0.5, W, 2.0, 2.0, xgrid(0.5))

    def test_late_time_supremum_attained_at_left_end(self):
        # Heat-semigroup norms decrease in time, so the supremum over
        # t >= 1/2 is the value at t = 1/2.
        k = 0.5
        U = heat_U(k, GAUSS)
        lv = l_functional(params(k), U, 2.0, xgrid(k))
        first = lp_norm(xgrid(k), lambda x: U.eval(x, 0.5), 2.0).value
        assert lv == pytest.approx(first, rel=1e-12)
        assert lv <= lp_norm(xgrid(k), GAUSS, 2.0).value


class TestEquivalenceReports:
    def test_scaling_leaves_ratios_unchanged(self):
        k = 0.5
        lp = LipschitzParams(0.5, 2.0, 2.0)

        def heat_route(f):
            return lipschitz_norm_heat(params(k), lp, f, grid=xgrid(k), tgrid=TG)

        def modulus_route(f):
            return lipschitz_norm_modulus(params(k), lp, f, xgrid(k), YG)

        rep = equivalence_report(
            heat_route, modulus_route,
            [("f", GAUSS), ("2f", scaled(GAUSS, 2.0))],
        )
        assert rep.all_pass
        assert rep.rows[0].ratio == pytest.approx(rep.rows[1].ratio, rel=1e-9)
        assert rep.rows[1].left == pytest.approx(2.0 * rep.rows[0].left, rel=1e-9)
        assert rep.ratio_spread == pytest.approx(1.0, rel=1e-9)

    def test_temperature_functional_matches_restricted_heat_route(self):
        # Temperature-side route against restricted time-integral plus
        # late-time supremum, across smoothness indices and derivative
        # orders.
        k = 0.5
        U = heat_U(k, GAUSS)

        def left(point):
            alpha, n = point
            return e_functional(params(k), alpha, U, 2.0, 2.0, xgrid(k))

        def right(point):
            alpha, n = point
            ast = a_functional(
                params(k), LipschitzParams(alpha, 2.0, 2.0),
                heat_seminorm_family(params(k), U, alpha, n, xgrid(k)),
                xgrid(k), star=True,
            )
            return ast + l_functional(params(k), U, 2.0, xgrid(k))

        sweep = [(f"alpha={a},n={n}", (a, n))
                 for a in (0.5, 1.5) for n in (1, 2)]
        rep = equivalence_report(left, right, sweep)
        assert rep.all_pass
        assert all(r.in_window for r in rep.rows)

    def test_temperature_functional_other_parameters(self):
        for k in (0.0, 1.5):
            U = heat_U(k, GAUSS)
            lhs = e_functional(params(k), 0.5, U, 2.0, 2.0, xgrid(k))
            ast = a_functional(
                params(k), LipschitzParams(0.5, 2.0, 2.0),
                heat_seminorm_family(params(k), U, 0.5, 1, xgrid(k)),
                xgrid(k), star=True,
            )
            rhs = ast + l_functional(params(k), U, 2.0, xgrid(k))
            assert 1.0 / 50.0 <= lhs / rhs <= 50.0

    def test_potential_shifts_smoothness_index(self):
        # A potential of order 1 maps the alpha = 0.5 space to alpha = 1.5
        # with two-sided norm bounds; the measured ratio is stable across
        # the suite.
        k = 0.5

        def left(f):
            Jf = potential_multiplier_fn(params(k), 1.0, f, xgrid(k), fgrid(k))
            return lipschitz_norm_heat(
                params(k), LipschitzParams(1.5, 2.0, 2.0), Jf,
                grid=xgrid(k), tgrid=TG,
            )

        def right(f):
            return heat_norm(k, f, 0.5)

        rep = equivalence_report(
            left, right, [(f.name, f) for f in (GAUSS, XGAUSS, H2G)]
        )
        assert rep.all_pass
        assert rep.ratio_spread <= 20.0

    def test_zero_pair_counts_as_matching(self):
        rep = equivalence_report(
            lambda f: 0.0, lambda f: 0.0, [("zero", ZERO)]
        )
        assert rep.all_pass
        assert rep.rows[0].ratio == 1.0

    def test_vanishing_denominator_fails(self):
        rep = equivalence_report(
            lambda f: 1.0, lambda f: 0.0, [("bad", ZERO)]
        )
        assert not rep.all_pass
        assert rep.rows[0].ratio == math.inf

    def test_unstable_ratio_fails_even_inside_window(self):
        rep = equivalence_report(
            lambda x: float(x), lambda x: 1.0,
            [("a", 1.0), ("b", 30.0)],
        )
        assert all(r.in_window for r in rep.rows)
        assert not rep.all_pass


class TestEmbeddingReports:
    def test_identity_embedding_has_unit_constant(self):
        k = 0.5
        route = lambda f: heat_norm(k, f, 0.5)
        rep = embedding_report([("identity", route, route, [GAUSS, XGAUSS])])
        assert rep.all_pass
        assert rep.rows[0].constant == 1.0

    def test_lower_smoothness_norm_bounded(self):
        # alpha = 0.8 controls alpha = 0.5 at fixed integrability.
        k = 0.5
        rep = embedding_report([(
            "smoothness_decrease",
            lambda f: heat_norm(k, f, 0.8),
            lambda f: heat_norm(k, f, 0.5),
            [GAUSS, XGAUSS, H2G],
        )])
        assert rep.all_pass
        assert all(r < 50.0 for r in rep.rows[0].ratios)

    def test_integrability_upgrade_with_smoothness_payment(self):
        # p = 1 with alpha = alpha' + (2k+1)/2 controls p = 2 with alpha'.
        k = 0.5
        rep = embedding_report([(
            "integrability_upgrade",
            lambda f: heat_norm(k, f, 1.5, p=1.0),
            lambda f: heat_norm(k, f, 0.5, p=2.0),
            [GAUSS, XGAUSS, H2G],
        )])
        assert rep.all_pass

    def test_strict_index_gap_embedding(self):
        # (alpha, p) = (0.8, 2) embeds into (0.25, 4): the effective index
        # alpha - (2k+1)/p strictly decreases (-0.2 > -0.25).
        k = 0.5
        rep = embedding_report([(
            "index_gap",
            lambda f: heat_norm(k, f, 0.8, p=2.0),
            lambda f: heat_norm(k, f, 0.25, p=4.0),
            [GAUSS, XGAUSS, H2G],
        )])
        assert rep.all_pass

    def test_derivative_splitting_route(self):
        # ||f|| plus the derivative's norm one order down controls the full
        # norm.
        k = 0.5
        dgauss = RealFunction(
            lambda x: -2.0 * x * np.exp(-x * x), parity="odd",
            decay="gaussian", name="dgauss",
        )
        dxgauss = RealFunction(
            lambda x: ((1.0 + 2.0 * k) - 2.0 * x * x) * np.exp(-x * x),
            parity="even", decay="gaussian", name="dxgauss",
        )
        pairs = {"gaussian": dgauss, "xgauss": dxgauss}

        def source(f):
            df = pairs[f.name]
            return lp_norm(xgrid(k), f, 2.0).value + heat_norm(k, df, 0.5)

        rep = embedding_report([(
            "derivative_split",
            source,
            lambda f: heat_norm(k, f, 1.5),
            [GAUSS, XGAUSS],
        )])
        assert rep.all_pass
        assert all(r < 10.0 for r in rep.rows[0].ratios)

    def test_temperature_side_integrability_upgrade(self):
        # Temperature-side norms: p = 1 at alpha = 0.5 controls p = 2 at
        # alpha - (2k+1)(1/1 - 1/2) = -0.5.
        k = 0.5
        rows = []
        for f in (GAUSS, XGAUSS):
            U = heat_U(k, f)
            src = e_functional(params(k), 0.5, U, 1.0, 2.0, xgrid(k))
            tgt = e_functional(params(k), -0.5, U, 2.0, 2.0, xgrid(k))
            rows.append(tgt / src)
        rep = embedding_report([(
            "temperature_integrability",
            lambda r: 1.0, lambda r: r, rows,
        )])
        assert rep.all_pass
        assert all(math.isfinite(r) and r > 0.0 for r in rows)

    def test_empty_suite_fails(self):
        rep = embedding_report([("empty", lambda f: 1.0, lambda f: 1.0, [])])
        assert not rep.all_pass


class TestInvariants:
    def test_triangle_inequality_heat_route(self):
        k = 0.5
        fg_sum = added(GAUSS, XGAUSS)
        lhs = lipschitz_norm_heat(
            params(k), LipschitzParams(0.7, 2, 2), fg_sum, grid=xgrid(k), tgrid=TG
        )
        rhs = heat_norm(k, GAUSS, 0.7) + heat_norm(k, XGAUSS, 0.7)
        assert lhs <= rhs + 1e-6

    def test_triangle_inequality_difference_route(self):
        k = 0.5
        lp = LipschitzParams(0.5, 2.0, 2.0)
        fg_sum = added(GAUSS, XGAUSS)
        lhs = lipschitz_norm_modulus(params(k), lp, fg_sum, xgrid(k), YG)
        rhs = (
            lipschitz_norm_modulus(params(k), lp, GAUSS, xgrid(k), YG)
            + lipschitz_norm_modulus(params(k), lp, XGAUSS, xgrid(k), YG)
        )
        assert lhs <= rhs + 1e-6

    def test_heat_route_homogeneous(self):
        k = 0.5
        v1 = heat_norm(k, GAUSS, 0.7)
        v2 = lipschitz_norm_heat(
            params(k), LipschitzParams(0.7, 2, 2), scaled(GAUSS, -2.0),
            grid=xgrid(k), tgrid=TG,
        )
        assert v2 == pytest.approx(2.0 * v1, rel=1e-9)

    def test_temperature_functional_homogeneous(self):
        k = 0.5
        e1 = e_functional(params(k), 0.5, heat_U(k, GAUSS), 2.0, 2.0, xgrid(k))
        e2 = e_functional(
            params(k), 0.5, heat_U(k, scaled(GAUSS, 2.0)), 2.0, 2.0, xgrid(k)
        )
        assert e2 == pytest.approx(2.0 * e1, rel=1e-9)

    def test_heat_extension_roundtrip(self):
        # f -> extension -> early-time slices recover f along dyadic times,
        # and the temperature-side norm stays within the equivalence window
        # of the function-side norm.
        k = 0.5
        U = heat_U(k, GAUSS)
        errs = []
        for j in (4, 8, 12, 16):
            t = 2.0**-j
            diff = np.asarray(U.eval_fn(xgrid(k).nodes, t)) - GAUSS(xgrid(k).nodes)
            errs.append(
                lp_norm(
                    xgrid(k),
                    SampledFunction(xgrid(k), diff, interpolation="none"),
                    2.0,
                ).value
            )
        assert all(a > b for a, b in zip(errs, errs[1:]))
        assert errs[-1] <= 1e-4
        tside = e_functional(params(k), 0.5, U, 2.0, 2.0, xgrid(k)) + l_functional(
            params(k), U, 2.0, xgrid(k)
        )
        fside = heat_norm(k, GAUSS, 0.5)
        assert 1.0 / 50.0 <= tside / fside <= 50.0
