"""Smoothness-space norm functionals and comparison reports.

The weighted Lipschitz spaces attached to a reflection parameter ``k``
carry several norms that are equivalent but computed along very different
routes:

* a **difference route** built from Dunkl translations (a modulus of
  continuity integrated against ``|y|^{-1-alpha q}``),
* a **heat route** built from time derivatives of the Gaussian extension
  ``t -> G_t f``, weighted by ``t^{n - alpha/2}``,
* **temperature-side functionals** that apply Bessel potentials of
  negative order to a solution of the heat equation and integrate the
  resulting norms against an exponential weight.

This module computes each route and provides report builders that compare
two routes across a parameter sweep (:func:`equivalence_report`) or measure
the constant in a norm inequality across a function suite
(:func:`embedding_report`).  Infinite values are legitimate outputs: a
functional that diverges on its integration domain reports ``inf`` together
with a :class:`DivergenceWarning` diagnostic rather than raising.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

import numpy as np
from scipy.special import roots_genlaguerre

from .dunkl_ops import SampledFunction, standard_x_grid, translate
from .measure import WeightedGrid, lp_norm
from .potentials import (
    PotentialOrder,
    potential_multiplier_fn,
    potential_on_temperature,
)
from .specfun import DunklParams
from .transforms import Temperature, heat_temperature

__all__ = [
    "DivergenceWarning",
    "LipschitzParams",
    "TGrid",
    "standard_tgrid",
    "star_tgrid",
    "a_functional",
    "heat_seminorm_family",
    "lipschitz_norm_modulus",
    "lipschitz_norm_heat",
    "e_functional",
    "l_functional",
    "EquivalenceRow",
    "EquivalenceReport",
    "equivalence_report",
    "EmbeddingRow",
    "EmbeddingReport",
    "embedding_report",
]


class DivergenceWarning(RuntimeWarning):
    """A log-grid integral's endpoint decades fail to decay; the functional
    reports ``inf`` instead of a spuriously finite partial sum."""


def _next_integer(x: float) -> int:
    """Smallest non-negative integer strictly greater than ``x``."""
    if x < 0.0:
        return 0
    return int(math.floor(x)) + 1


@dataclass(frozen=True)
class LipschitzParams:
    """Index triple (alpha, p, q) of a smoothness space, with the derived
    derivative orders used by the heat route.

    ``n_bar`` is the smallest non-negative integer strictly greater than
    ``alpha/2`` (so ``n_bar = 1`` for alpha in (0, 2] and ``0`` for negative
    alpha); ``alpha_bar`` is the analogous integer for ``alpha`` itself.
    The strict reading applies at integers: ``alpha = 2`` gives
    ``n_bar = 2``.
    """

    alpha: float
    p: float
    q: float

    def __post_init__(self) -> None:
        if not math.isfinite(self.alpha):
            raise ValueError("alpha must be finite")
        for name, v in (("p", self.p), ("q", self.q)):
            if v != math.inf and not v >= 1.0:
                raise ValueError(f"{name} must lie in [1, inf], got {v!r}")

    @property
    def n_bar(self) -> int:
        return _next_integer(self.alpha / 2.0)

    @property
    def alpha_bar(self) -> int:
        return _next_integer(self.alpha)


@dataclass(frozen=True)
class TGrid:
    """Log-spaced positive abscissae for ``dt/t`` integrals.

    Nodes must be strictly increasing, strictly positive, and at least 32
    per decade so that trapezoid-in-log quadrature resolves integrands that
    are smooth in ``log t``.
    """

    nodes: np.ndarray

    def __post_init__(self) -> None:
        nodes = np.asarray(self.nodes, dtype=float)
        object.__setattr__(self, "nodes", nodes)
        if nodes.ndim != 1 or nodes.size < 2:
            raise ValueError("need a 1-D array of at least two nodes")
        if not np.all(nodes > 0.0):
            raise ValueError("nodes must be strictly positive")
        if not np.all(np.diff(nodes) > 0.0):
            raise ValueError("nodes must be strictly increasing")
        decades = math.log10(nodes[-1] / nodes[0])
        if decades > 0.0 and (nodes.size - 1) / decades < 32.0 - 1e-9:
            raise ValueError("need at least 32 nodes per decade")

    @property
    def t_min(self) -> float:
        return float(self.nodes[0])

    @property
    def t_max(self) -> float:
        return float(self.nodes[-1])

    @classmethod
    def build(cls, t_min: float, t_max: float, per_decade: int = 64) -> "TGrid":
        """Geometric grid from ``t_min`` to ``t_max`` at ``per_decade`` density."""
        if not (0.0 < t_min < t_max):
            raise ValueError("need 0 < t_min < t_max")
        if per_decade < 32:
            raise ValueError("need at least 32 nodes per decade")
        decades = math.log10(t_max / t_min)
        n = int(math.ceil(decades * per_decade)) + 1
        return cls(np.geomspace(t_min, t_max, n))


def standard_tgrid() -> TGrid:
    """Default time grid for full-range ``dt/t`` functionals: 64 nodes per
    decade on [1e-4, 1e2]."""
    return TGrid.build(1e-4, 1e2, 64)


def star_tgrid() -> TGrid:
    """Default time grid for the restricted functional over (0, 1]."""
    return TGrid.build(1e-4, 1.0, 64)


def _log_trapezoid_weights(ts: np.ndarray) -> np.ndarray:
    """Trapezoid weights for integration in ``u = log t`` (the ``dt/t`` rule)."""
    u = np.log(ts)
    w = np.empty_like(u)
    w[0] = 0.5 * (u[1] - u[0])
    w[-1] = 0.5 * (u[-1] - u[-2])
    w[1:-1] = 0.5 * (u[2:] - u[:-2])
    return w


def _diverging_end(
    ts: np.ndarray, contrib: np.ndarray, check_high: bool = True
) -> str | None:
    """Detect an endpoint decade whose contribution fails to decay.

    Partial sums of a convergent ``dt/t`` integral must shrink toward the
    asymptotic domain ends for suite-quality integrands.  The sums are taken
    over decade-wide windows of nodes anchored at each end (windows are
    counted in nodes so that grid endpoints falling on decade boundaries do
    not produce artificially small groups); a boundary window carrying at
    least 0.9 of its neighbour signals divergence, or a nearly critical
    exponent, which is treated the same way.  ``check_high`` is False for
    integrals whose upper limit is a finite cutoff rather than an
    asymptotic end (growth toward a finite endpoint is integrable).
    """
    n = ts.size
    decades = math.log10(ts[-1] / ts[0])
    if decades <= 0.0:
        return None
    w = max(2, int(round((n - 1) / decades)))
    if n < 2 * w:
        w = n // 2
        if w < 2:
            return None
    low0 = float(np.sum(contrib[:w]))
    low1 = float(np.sum(contrib[w : 2 * w]))
    if low0 > 0.0 and low0 >= 0.9 * low1:
        return "small-t"
    if check_high:
        high0 = float(np.sum(contrib[-w:]))
        high1 = float(np.sum(contrib[-2 * w : -w]))
        if high0 > 0.0 and high0 >= 0.9 * high1:
            return "large-t"
    return None


def a_functional(
    params: DunklParams,
    lp: LipschitzParams,
    V: Callable[[float], Callable],
    grid: WeightedGrid | None = None,
    tgrid: TGrid | None = None,
    star: bool = False,
) -> float:
    """Time-integrated norm ``(∫ ||V(t)||_{k,p}^q dt/t)^{1/q}`` of a family.

    ``V`` maps a positive time to a function evaluable on ``grid``.  With
    ``star`` False the integral runs over the full sampled range; with
    ``star`` True it is restricted to t <= 1.  For ``q = inf`` the value is
    the maximum of ``||V(t)||_{k,p}`` over the t-nodes.  When the endpoint
    decades of the discretized integral fail to decay the value is ``inf``
    and a :class:`DivergenceWarning` names the offending end.
    """
    xg = grid if grid is not None else standard_x_grid(params.k)
    tg = tgrid if tgrid is not None else (star_tgrid() if star else standard_tgrid())
    ts = tg.nodes
    if star:
        ts = ts[ts <= 1.0 + 1e-12]
        if ts.size < 2:
            raise ValueError("restricted functional needs at least two t-nodes in (0, 1]")
    if hasattr(V, "batch"):
        rows = np.asarray(V.batch(ts))
        norms = np.array(
            [
                lp_norm(xg, SampledFunction(xg, row, interpolation="none"), lp.p).value
                for row in rows
            ]
        )
    else:
        norms = np.array([lp_norm(xg, V(float(t)), lp.p).value for t in ts])
    if not np.all(np.isfinite(norms)):
        return math.inf
    if lp.q == math.inf:
        return float(np.max(norms))
    contrib = norms**lp.q * _log_trapezoid_weights(ts)
    total = float(np.sum(contrib))
    if total == 0.0:
        return 0.0
    end = _diverging_end(ts, contrib, check_high=not star)
    if end is not None:
        warnings.warn(
            f"per-decade sums do not decay at the {end} end; "
            "reporting the functional as infinite",
            DivergenceWarning,
            stacklevel=2,
        )
        return math.inf
    return total ** (1.0 / lp.q)


class _HeatSeminormFamily:
    """The map ``t -> t^{power} d_t^n U(., t)`` sampled on a grid, with a
    grouped ``batch`` evaluation that :func:`a_functional` exploits."""

    def __init__(self, U: Temperature, n: int, power: float, grid: WeightedGrid):
        self.U = U
        self.n = n
        self.power = power
        self.grid = grid

    def __call__(self, t: float) -> SampledFunction:
        vals = np.asarray(self.U.dt_eval(self.n, self.grid.nodes, float(t)))
        return SampledFunction(
            self.grid, (float(t) ** self.power) * vals, interpolation="none"
        )

    def batch(self, ts) -> np.ndarray:
        ts = np.asarray(ts, dtype=float)
        vals = self.U.dt_batch(self.n, self.grid.nodes, ts)
        return (ts**self.power)[:, None] * vals


def heat_seminorm_family(
    params: DunklParams,
    U: Temperature,
    alpha: float,
    n: int,
    grid: WeightedGrid,
) -> _HeatSeminormFamily:
    """The map ``t -> t^{n - alpha/2} d_t^n U(., t)`` sampled on ``grid``,
    in the form :func:`a_functional` consumes."""
    return _HeatSeminormFamily(U, n, n - alpha / 2.0, grid)


def lipschitz_norm_modulus(
    params: DunklParams,
    lp: LipschitzParams,
    f,
    grid: WeightedGrid | None = None,
    ygrid: TGrid | None = None,
    n_theta: int = 64,
) -> float:
    """Difference-route smoothness norm for ``0 < alpha < 1``.

    Computes ``||f||_{k,p}`` plus the ``L^q`` average of the translated
    differences ``T_y f - f`` against ``|y|^{-1-alpha q} dy``, discretized on
    a sign-symmetric log grid in ``|y|``; for ``q = inf`` the second term is
    ``sup_y ||T_y f - f||_{k,p} / |y|^alpha`` over the sampled ``y``.
    """
    if not (0.0 < lp.alpha < 1.0):
        raise ValueError("the difference route needs 0 < alpha < 1")
    xg = grid if grid is not None else standard_x_grid(params.k)
    yg = ygrid if ygrid is not None else TGrid.build(1e-3, 1e3, 32)
    base = lp_norm(xg, f, lp.p).value
    fx = np.asarray(f(xg.nodes), dtype=float)
    ys = yg.nodes

    def dnorm(y: float) -> float:
        dv = np.asarray(translate(params, y, f, xg.nodes, n_theta=n_theta)) - fx
        return lp_norm(xg, SampledFunction(xg, dv, interpolation="none"), lp.p).value

    pos = np.array([dnorm(float(y)) for y in ys])
    neg = np.array([dnorm(float(-y)) for y in ys])
    if not (np.all(np.isfinite(pos)) and np.all(np.isfinite(neg))):
        return math.inf
    if lp.q == math.inf:
        sup = float(np.max(np.maximum(pos, neg) / ys**lp.alpha))
        return base + sup
    contrib = (pos**lp.q + neg**lp.q) * ys ** (-lp.alpha * lp.q)
    contrib *= _log_trapezoid_weights(ys)
    total = float(np.sum(contrib))
    if total == 0.0:
        return base
    end = _diverging_end(ys, contrib)
    if end is not None:
        warnings.warn(
            f"per-decade sums do not decay at the {end.replace('t', 'y')} end; "
            "reporting the norm as infinite",
            DivergenceWarning,
            stacklevel=2,
        )
        return math.inf
    return base + total ** (1.0 / lp.q)


def lipschitz_norm_heat(
    params: DunklParams,
    lp: LipschitzParams,
    f=None,
    grid: WeightedGrid | None = None,
    tgrid: TGrid | None = None,
    *,
    n: int | None = None,
    freq_grid: WeightedGrid | None = None,
) -> float:
    """Heat-route smoothness norm, defined for every real ``alpha``.

    For ``alpha > 0`` the value is ``||f||_{k,p}`` plus the full-range
    :func:`a_functional` of ``t^{n - alpha/2} d_t^n G_t f`` with
    ``n = lp.n_bar`` (overridable; any integer ``n > alpha/2`` yields an
    equivalent norm).

    For ``alpha <= 0`` the space is presented constructively: pass the
    potential representative ``g`` as ``f``.  The element is
    ``T = J_{alpha - 1/2} g``, its norm contribution is exactly
    ``||g||_{k,p}``, and the second term is the restricted-range functional
    of ``t^{n - alpha/2} d_t^n G_t T``.

    ``freq_grid`` selects the spectral lattice of the internal heat
    extension.  High derivative orders amplify quadrature noise near the
    lattice edge at small times; a lattice whose reach matches the decay
    of the transform of ``f`` keeps the small-time family clean.
    """
    if f is None:
        if lp.alpha <= 0.0:
            raise ValueError(
                "alpha <= 0 requires the potential representative g "
                "(the element is J_{alpha-1/2} g)"
            )
        raise ValueError("a function is required")
    nn = lp.n_bar if n is None else int(n)
    if nn < 0 or not nn > lp.alpha / 2.0:
        raise ValueError("derivative order must be a non-negative integer > alpha/2")
    xg = grid if grid is not None else standard_x_grid(params.k)
    base = lp_norm(xg, f, lp.p).value
    if lp.alpha > 0.0:
        U = heat_temperature(params, f, grid=xg, freq_grid=freq_grid)
        star = False
    else:
        T = potential_multiplier_fn(params, lp.alpha - 0.5, f, xg, freq_grid)
        U = heat_temperature(params, T, grid=xg, freq_grid=freq_grid)
        star = True
    V = heat_seminorm_family(params, U, lp.alpha, nn, xg)
    return base + a_functional(params, lp, V, xg, tgrid, star=star)


def e_functional(
    params: DunklParams,
    alpha: float,
    U: Temperature,
    p: float = 2.0,
    q: float = 2.0,
    grid: WeightedGrid | None = None,
    tgrid: TGrid | None = None,
    *,
    beta: float | None = None,
    quad_nodes: int = 32,
) -> float:
    """Exponentially weighted potential functional of a temperature.

    With ``beta`` defaulting to ``alpha + 2`` this computes, for finite
    ``q``,

        ( ∫_0^∞ t^{q(beta-alpha)/2 - 1} e^{-t}
                ||J_{-beta} U(., t)||_{k,p}^q dt )^{1/q}

    by a generalized Gauss-Laguerre rule whose weight absorbs the
    ``t^{...-1} e^{-t}`` factor; for ``q = inf`` it is the supremum of
    ``t^{(beta-alpha)/2} e^{-t} ||J_{-beta} U(., t)||_{k,p}`` over the time
    grid.  Different ``beta > alpha`` give equivalent functionals.  The
    admissible-growth precondition on ``U`` is enforced when the potential
    is formed.
    """
    b = alpha + 2.0 if beta is None else float(beta)
    if not b > alpha:
        raise ValueError("beta must exceed alpha")
    if q != math.inf and not q >= 1.0:
        raise ValueError(f"q must lie in [1, inf], got {q!r}")
    xg = grid if grid is not None else standard_x_grid(params.k)
    V = potential_on_temperature(U, PotentialOrder.from_alpha(-b))

    def norms_at(ts: np.ndarray) -> np.ndarray:
        rows = V.dt_batch(0, xg.nodes, ts)
        return np.array(
            [
                lp_norm(xg, SampledFunction(xg, row, interpolation="none"), p).value
                for row in rows
            ]
        )

    power = (b - alpha) / 2.0
    if q == math.inf:
        tg = tgrid if tgrid is not None else standard_tgrid()
        vals = tg.nodes**power * np.exp(-tg.nodes) * norms_at(tg.nodes)
        if not np.all(np.isfinite(vals)):
            return math.inf
        return float(np.max(vals))
    s = q * power
    t_nodes, t_weights = roots_genlaguerre(quad_nodes, s - 1.0)
    vals = norms_at(np.asarray(t_nodes)) ** q
    if not np.all(np.isfinite(vals)):
        return math.inf
    return float(np.dot(t_weights, vals)) ** (1.0 / q)


def l_functional(
    params: DunklParams,
    U: Temperature,
    p: float = 2.0,
    grid: WeightedGrid | None = None,
    t_max: float = 20.0,
    per_decade: int = 32,
) -> float:
    """Late-time supremum ``sup_{t >= 1/2} ||U(., t)||_{k,p}``.

    Sampled on a log grid over [1/2, t_max]; because the heat semigroup is
    an ``L^p`` contraction the norm is non-increasing in ``t``, so the
    sampled range certifies the unbounded tail.
    """
    xg = grid if grid is not None else standard_x_grid(params.k)
    ts = TGrid.build(0.5, t_max, per_decade).nodes
    rows = U.dt_batch(0, xg.nodes, ts)
    vals = [
        lp_norm(xg, SampledFunction(xg, row, interpolation="none"), p).value
        for row in rows
    ]
    return float(np.max(vals))


# ---------------------------------------------------------------------------
# comparison reports
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class EquivalenceRow:
    """One sweep point: both route values and their ratio."""

    label: str
    left: float
    right: float
    ratio: float
    in_window: bool


@dataclass(frozen=True)
class EquivalenceReport:
    """Two norm routes compared across a sweep.

    Passing requires every ratio inside ``window`` and a stable ratio
    across the sweep (max/min at most ``stability_cap``).  The window is a
    recorded artifact choice: equivalence theorems guarantee constants
    exist, not their size, so the report makes regressions visible rather
    than asserting sharpness.
    """

    rows: tuple[EquivalenceRow, ...]
    window: tuple[float, float]
    stability_cap: float

    @property
    def ratio_spread(self) -> float:
        ratios = [r.ratio for r in self.rows]
        if not ratios or not all(math.isfinite(r) and r > 0.0 for r in ratios):
            return math.inf
        return max(ratios) / min(ratios)

    @property
    def all_pass(self) -> bool:
        return (
            bool(self.rows)
            and all(r.in_window for r in self.rows)
            and self.ratio_spread <= self.stability_cap
        )


def equivalence_report(
    route_left: Callable,
    route_right: Callable,
    sweep: Sequence[tuple[str, object]],
    *,
    window: tuple[float, float] = (1.0 / 50.0, 50.0),
    stability_cap: float = 20.0,
) -> EquivalenceReport:
    """Evaluate two norm routes on each labelled sweep point.

    ``sweep`` is a sequence of ``(label, point)`` pairs; each point is
    passed to both routes.  Two exactly-zero values count as ratio 1 (both
    routes annihilate the point); a vanishing or non-finite denominator
    yields an infinite ratio and fails the window.
    """
    rows = []
    for label, point in sweep:
        lv = float(route_left(point))
        rv = float(route_right(point))
        if lv == 0.0 and rv == 0.0:
            ratio = 1.0
        elif rv == 0.0 or not (math.isfinite(lv) and math.isfinite(rv)):
            ratio = math.inf
        else:
            ratio = lv / rv
        in_window = math.isfinite(ratio) and window[0] <= ratio <= window[1]
        rows.append(EquivalenceRow(str(label), lv, rv, ratio, in_window))
    return EquivalenceReport(tuple(rows), window, stability_cap)


@dataclass(frozen=True)
class EmbeddingRow:
    """Measured constant for one norm inequality across a suite."""

    name: str
    constant: float
    ratios: tuple[float, ...]
    passed: bool


@dataclass(frozen=True)
class EmbeddingReport:
    """Norm inequalities ``||f||_target <= B ||f||_source`` with measured B."""

    rows: tuple[EmbeddingRow, ...]

    @property
    def all_pass(self) -> bool:
        return bool(self.rows) and all(r.passed for r in self.rows)


def embedding_report(
    cases: Iterable[tuple[str, Callable, Callable, Iterable]],
) -> EmbeddingReport:
    """Measure the constant in ``||f||_target <= B ||f||_source`` per case.

    Each case is ``(name, source_norm, target_norm, suite)`` where the norms
    are callables on functions and ``suite`` iterates functions with both
    norms finite.  The measured constant is the largest target/source ratio
    over the suite; a case passes when that constant is finite (the
    inequality then holds with ``B`` equal to it).  Pairs with both norms
    exactly zero contribute ratio 1.
    """
    rows = []
    for name, source_norm, target_norm, suite in cases:
        ratios = []
        for fn in suite:
            sv = float(source_norm(fn))
            tv = float(target_norm(fn))
            if sv == 0.0 and tv == 0.0:
                ratios.append(1.0)
            elif sv == 0.0 or not (math.isfinite(sv) and math.isfinite(tv)):
                ratios.append(math.inf)
            else:
                ratios.append(tv / sv)
        constant = max(ratios) if ratios else math.inf
        rows.append(
            EmbeddingRow(str(name), constant, tuple(ratios), math.isfinite(constant))
        )
    return EmbeddingReport(tuple(rows))
