"""Machine-checked verification suites with deterministic reports.

Each suite bundles identity, inequality, or norm-equivalence checks into
small named records.  A run produces a :class:`VerificationReport` whose JSON
and CSV renderings are byte-stable across repeated runs with the same
configuration (timings are reported but excluded from comparisons), so
reports can be diffed or golden-tested.

Suites
------
``classical``
    Degeneration at ``k = 0``: the generalized translation becomes the
    ordinary shift and the Dunkl derivative becomes ``d/dx``.  At ``k != 0``
    the rows are informational.
``kernels``
    Unit masses ``c_k * int kernel dmu_k = 1`` for the heat, Poisson, and
    potential kernels.
``transforms``
    Multiplier identities (the transforms of the three kernels), the
    Plancherel identity, and the derivative-to-multiplier exchange.
``semigroup``
    Convolution semigroup laws for the three kernel families and the
    reproducing formula for admissible temperatures.
``pde``
    Heat-equation and harmonicity residuals on (x, t) lattices.
``potentials``
    Composition and inversion laws of the potential operators on functions
    and on temperatures.
``asymptotics``
    Ratio checks of the potential kernel against its origin and tail
    expansions.
``decay``
    Smoothing/decay rates as strictly-monotone surrogates along dyadic
    time sequences.
``equivalences``
    Two-sided norm comparisons between independent routes to the same
    smoothness norm, summarized by ratio windows and sweep stability.
``embeddings``
    One-sided norm inequalities between smoothness spaces with measured
    constants.
"""

from __future__ import annotations

import json
import math
import threading
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from io import StringIO
from time import perf_counter
from typing import Callable

import numpy as np

from .dunkl_ops import (
    RealFunction,
    SampledFunction,
    convolve,
    dunkl_derivative,
    dunkl_transform,
    dunkl_transform_at,
    standard_freq_grid,
    standard_x_grid,
    transform_slow_decay,
    translate,
)
from .kernels import BesselKernel, HeatKernel, PoissonKernel
from .lipschitz import (
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
)
from .measure import build_grid, integrate_weighted, lp_norm
from .potentials import (
    PotentialOrder,
    bessel_potential_fn,
    bessel_potential_fn_negative,
    potential_multiplier_fn,
    potential_on_temperature,
)
from .specfun import DunklParams
from .transforms import (
    closed_form_temperature,
    heat_residual,
    heat_temperature,
    semigroup_check,
)

__all__ = [
    "SCHEMA_VERSION",
    "SUITE_NAMES",
    "CheckResult",
    "VerificationReport",
    "builtin_input",
    "equivalence_sweep",
    "embedding_sweep",
    "run_suites",
]

SCHEMA_VERSION = 1

SUITE_NAMES = (
    "classical",
    "kernels",
    "transforms",
    "semigroup",
    "pde",
    "potentials",
    "asymptotics",
    "decay",
    "equivalences",
    "embeddings",
)

_XI_LATTICE = np.array([-3.0, -2.0, -1.0, -0.5, 0.0, 0.5, 1.0, 2.0, 3.0])
_PROBE_XS = np.array([0.0, 0.5, 1.5])
_DYADIC_TS = (0.8, 0.4, 0.2, 0.1)


# ---------------------------------------------------------------------------
# report data model
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CheckResult:
    """One verification check: identity, residual, or report summary."""

    id: str
    statement: str
    computed: float
    expected: str
    verdict: str  # "PASS" | "FAIL" | "INFO"
    runtime_ms: float


@dataclass(frozen=True)
class VerificationReport:
    """Outcome of a suite run; renders deterministically to JSON or CSV."""

    schema: int
    k: float
    tol: float | None
    suites: tuple[str, ...]
    checks: tuple[CheckResult, ...]

    @property
    def n_pass(self) -> int:
        return sum(1 for c in self.checks if c.verdict == "PASS")

    @property
    def n_fail(self) -> int:
        return sum(1 for c in self.checks if c.verdict == "FAIL")

    @property
    def n_info(self) -> int:
        return sum(1 for c in self.checks if c.verdict == "INFO")

    @property
    def all_pass(self) -> bool:
        return self.n_fail == 0

    @property
    def exit_code(self) -> int:
        return 0 if self.all_pass else 1

    def to_dict(self, include_runtime: bool = True) -> dict:
        def num(v: float):
            return float(v) if math.isfinite(v) else repr(float(v))

        return {
            "schema": self.schema,
            "k": self.k,
            "tol": self.tol,
            "suites": list(self.suites),
            "summary": {
                "pass": self.n_pass,
                "fail": self.n_fail,
                "info": self.n_info,
            },
            "checks": [
                {
                    "id": c.id,
                    "statement": c.statement,
                    "computed": num(c.computed),
                    "expected": c.expected,
                    "verdict": c.verdict,
                    "runtime_ms": round(c.runtime_ms, 3) if include_runtime else None,
                }
                for c in self.checks
            ],
        }

    def to_json(self, include_runtime: bool = True) -> str:
        return json.dumps(
            self.to_dict(include_runtime), indent=2, sort_keys=True
        ) + "\n"

    def to_csv(self, include_runtime: bool = True) -> str:
        import csv

        buf = StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["id", "statement", "computed", "expected", "verdict",
                    "runtime_ms"])
        for c in self.checks:
            w.writerow([
                c.id,
                c.statement,
                format(c.computed, ".17g"),
                c.expected,
                c.verdict,
                format(c.runtime_ms, ".3f") if include_runtime else "",
            ])
        return buf.getvalue()

    def to_table(self) -> str:
        """Fixed-width human-readable rendering of the check rows."""
        wid = max([len("id")] + [len(c.id) for c in self.checks])
        wexp = max([len("expected")] + [len(c.expected) for c in self.checks])
        lines = [
            f"{'id':<{wid}}  {'verdict':<7}  {'computed':>12}  "
            f"{'expected':<{wexp}}  {'ms':>8}"
        ]
        lines.append("-" * len(lines[0]))
        for c in self.checks:
            lines.append(
                f"{c.id:<{wid}}  {c.verdict:<7}  {c.computed:>12.6g}  "
                f"{c.expected:<{wexp}}  {c.runtime_ms:>8.1f}"
            )
        lines.append("-" * len(lines[0]))
        lines.append(
            f"{self.n_pass} passed, {self.n_fail} failed, "
            f"{self.n_info} informational"
        )
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class _Check:
    id: str
    statement: str
    expected: str
    fn: Callable[[], tuple[float, bool]] | None = None
    static_computed: float = math.nan


def _execute(check: _Check) -> CheckResult:
    start = perf_counter()
    if check.fn is None:
        verdict, computed = "INFO", check.static_computed
    else:
        try:
            computed, ok = check.fn()
            computed = float(computed)
            verdict = "PASS" if ok else "FAIL"
        except Exception:
            computed, verdict = math.nan, "FAIL"
    ms = (perf_counter() - start) * 1e3
    return CheckResult(check.id, check.statement, computed, check.expected,
                       verdict, ms)


# ---------------------------------------------------------------------------
# canonical inputs
# ---------------------------------------------------------------------------


def builtin_input(params: DunklParams, name: str, *, t: float | None = None,
                  alpha: float | None = None) -> RealFunction:
    """Canonical input functions keyed by name.

    ``gaussian``, ``xgaussian`` and ``hermite2_gaussian`` take no
    parameters; ``heat_kernel`` and ``poisson_kernel`` require ``t > 0``;
    ``bessel_kernel`` requires ``alpha > 0``.
    """
    if name == "gaussian":
        return RealFunction(lambda x: np.exp(-np.asarray(x, dtype=float) ** 2),
                            parity="even", decay="gaussian", name="gaussian")
    if name == "xgaussian":
        return RealFunction(
            lambda x: np.asarray(x, dtype=float)
            * np.exp(-np.asarray(x, dtype=float) ** 2),
            parity="odd", decay="gaussian", name="xgaussian")
    if name == "hermite2_gaussian":
        return RealFunction(
            lambda x: (4.0 * np.asarray(x, dtype=float) ** 2 - 2.0)
            * np.exp(-np.asarray(x, dtype=float) ** 2),
            parity="even", decay="gaussian", name="hermite2_gaussian")
    if name == "heat_kernel":
        if t is None or t <= 0.0:
            raise ValueError("heat_kernel input requires t > 0")
        return HeatKernel(params, float(t)).as_real_function()
    if name == "poisson_kernel":
        if t is None or t <= 0.0:
            raise ValueError("poisson_kernel input requires t > 0")
        return PoissonKernel(params, float(t)).as_real_function()
    if name == "bessel_kernel":
        if alpha is None or alpha <= 0.0:
            raise ValueError("bessel_kernel input requires alpha > 0")
        return BesselKernel(params, float(alpha)).as_real_function()
    raise ValueError(
        f"unknown input {name!r}; choose from gaussian, xgaussian, "
        "hermite2_gaussian, heat_kernel, poisson_kernel, bessel_kernel"
    )


# ---------------------------------------------------------------------------
# shared per-run context (grids, temperatures, memoized norms)
# ---------------------------------------------------------------------------


class _Ctx:
    def __init__(self, k: float):
        self.k = float(k)
        self.params = DunklParams.from_k(self.k)
        self.gauss = builtin_input(self.params, "gaussian")
        self.xgauss = builtin_input(self.params, "xgaussian")
        self.h2g = builtin_input(self.params, "hermite2_gaussian")
        # reentrant: cache builders routinely read other cached properties
        self._lock = threading.RLock()
        self._cache: dict = {}

    def _get(self, key, make):
        with self._lock:
            if key not in self._cache:
                self._cache[key] = make()
            return self._cache[key]

    @property
    def xg(self):
        return self._get(("xg",), lambda: build_grid(
            self.k, 10.0, "smooth", 8, max_panel_width=1.0))

    @property
    def fg(self):
        return self._get(("fg",), lambda: build_grid(
            self.k, 16.0, "smooth", 8, max_panel_width=1.0))

    @property
    def xg_std(self):
        return self._get(("xg_std",), lambda: standard_x_grid(self.k))

    @property
    def fg_std(self):
        return self._get(("fg_std",), lambda: standard_freq_grid(self.k))

    @property
    def tg(self):
        return self._get(("tg",), lambda: TGrid.build(1e-3, 1e2, 32))

    def heat_u(self, f, grids: str = "light"):
        def make():
            if grids == "light":
                return heat_temperature(self.params, f, grid=self.xg,
                                        freq_grid=self.fg)
            return heat_temperature(self.params, f)

        return self._get(("U", f.name, grids), make)

    def heat_norm(self, f, alpha, p=2.0, q=2.0, n=None):
        def make():
            return lipschitz_norm_heat(
                self.params, LipschitzParams(alpha, p, q), f,
                grid=self.xg, tgrid=self.tg, n=n, freq_grid=self.fg)

        return self._get(("N", f.name, alpha, p, q, n), make)

    def e_value(self, f, alpha, p=2.0, q=2.0):
        def make():
            return e_functional(self.params, alpha, self.heat_u(f), p, q,
                                self.xg)

        return self._get(("E", f.name, alpha, p, q), make)

    def l_value(self, f, p=2.0):
        def make():
            return l_functional(self.params, self.heat_u(f), p, self.xg)

        return self._get(("L", f.name, p), make)

    def a_star(self, f, alpha, n, p=2.0, q=2.0):
        def make():
            fam = heat_seminorm_family(self.params, self.heat_u(f), alpha, n,
                                       self.xg)
            return a_functional(self.params, LipschitzParams(alpha, p, q),
                                fam, self.xg, star=True)

        return self._get(("Astar", f.name, alpha, n, p, q), make)

    def heat_slice(self, f, t0: float = 1.0) -> RealFunction:
        U = self.heat_u(f)

        def ev(x, U=U, t0=t0):
            arr = np.atleast_1d(np.asarray(x, dtype=float))
            out = np.asarray(U.eval_fn(arr, t0), dtype=float)
            return out if np.ndim(x) else float(out[0])

        return RealFunction(ev, parity=f.parity, decay="gaussian",
                            name=f"heat_slice({f.name},{t0:g})")


# ---------------------------------------------------------------------------
# suite builders
# ---------------------------------------------------------------------------


def _suite_classical(ctx: _Ctx, T) -> list[_Check]:
    if ctx.k != 0.0:
        note = "requires k = 0; run with --k 0"
        return [
            _Check("classical/derivative_matches_ddx",
                   "at k = 0 the Dunkl derivative is d/dx",
                   note, None, ctx.k),
            _Check("classical/translation_matches_shift",
                   "at k = 0 the generalized translation is f(x + y)",
                   note, None, ctx.k),
        ]
    p = ctx.params
    bump = RealFunction(lambda x: np.exp(-((np.asarray(x) - 0.3) ** 2)),
                        parity="none", decay="gaussian", name="offset_gaussian")
    bare = RealFunction(lambda x: np.exp(-np.asarray(x, dtype=float) ** 2),
                        parity="even", decay="gaussian", name="bare_gaussian")
    xs = np.array([-1.4, -0.3, 0.0, 0.6, 1.7])

    def deriv():
        got = dunkl_derivative(p, bare, xs)
        want = -2.0 * xs * np.exp(-xs * xs)
        return float(np.max(np.abs(got - want))), bool(
            np.max(np.abs(got - want)) <= T(1e-6))

    def shift():
        got = translate(p, 0.5, bump, xs)
        want = bump(xs + 0.5)
        err = float(np.max(np.abs(got - want)))
        return err, err <= T(1e-8)

    return [
        _Check("classical/derivative_matches_ddx",
               "at k = 0 the Dunkl derivative is d/dx",
               f"max abs err <= {T(1e-6):g}", deriv),
        _Check("classical/translation_matches_shift",
               "at k = 0 the generalized translation is f(x + y)",
               f"max abs err <= {T(1e-8):g}", shift),
    ]


def _suite_kernels(ctx: _Ctx, T) -> list[_Check]:
    p = ctx.params
    out = []
    for t in (0.1, 1.0):
        def heat_mass(t=t):
            g = build_grid(ctx.k, 14.0 * max(1.0, math.sqrt(t)), "smooth")
            got = p.c_k * integrate_weighted(g, HeatKernel(p, t))
            return float(got), abs(got - 1.0) <= T(1e-8)

        out.append(_Check(
            f"kernels/heat_mass/t={t:g}",
            "c_k * int F_t dmu_k = 1",
            f"1 (rel err <= {T(1e-8):g})", heat_mass))
    for t in (0.1, 1.0):
        def poisson_mass(t=t):
            g = build_grid(ctx.k, 1e8, "heavy_tail")
            got = p.c_k * integrate_weighted(g, PoissonKernel(p, t))
            return float(got), abs(got - 1.0) <= T(1e-6)

        out.append(_Check(
            f"kernels/poisson_mass/t={t:g}",
            "c_k * int P_t dmu_k = 1",
            f"1 (rel err <= {T(1e-6):g})", poisson_mass))
    for a in (0.5, 1.0, 2.5):
        def bessel_mass(a=a):
            g = build_grid(ctx.k, 60.0, "singular_origin")
            got = p.c_k * integrate_weighted(g, BesselKernel(p, a))
            return float(got), abs(got - 1.0) <= T(1e-4)

        out.append(_Check(
            f"kernels/bessel_mass/alpha={a:g}",
            "c_k * int B_alpha dmu_k = 1",
            f"1 (rel err <= {T(1e-4):g})", bessel_mass))
    return out


def _suite_transforms(ctx: _Ctx, T) -> list[_Check]:
    p = ctx.params
    out = []
    for t in (0.1, 1.0):
        def heat_mult(t=t):
            got = dunkl_transform_at(p, ctx.xg_std, HeatKernel(p, t),
                                     _XI_LATTICE)
            err = float(np.max(np.abs(got - np.exp(-t * _XI_LATTICE ** 2))))
            return err, err <= T(1e-8)

        out.append(_Check(
            f"transforms/heat_multiplier/t={t:g}",
            "transform of F_t is exp(-t xi^2)",
            f"max abs err <= {T(1e-8):g}", heat_mult))
    for t in (0.1, 1.0):
        def poisson_mult(t=t):
            # xi = 0 is the unit mass (heavy-tail quadrature); nonzero xi
            # go through the oscillatory slow-decay transform
            xs = _XI_LATTICE[_XI_LATTICE != 0.0]
            got = transform_slow_decay(p, PoissonKernel(p, t), xs)
            err = float(np.max(np.abs(got - np.exp(-t * np.abs(xs)))))
            g0 = build_grid(ctx.k, 1e8, "heavy_tail")
            mass = p.c_k * integrate_weighted(g0, PoissonKernel(p, t))
            err = max(err, abs(mass - 1.0))
            return err, err <= T(1e-6)

        out.append(_Check(
            f"transforms/poisson_multiplier/t={t:g}",
            "transform of P_t is exp(-t |xi|)",
            f"max abs err <= {T(1e-6):g}", poisson_mult))
    for a in (0.5, 1.0, 2.5):
        def bessel_mult(a=a):
            g = build_grid(ctx.k, 60.0, "singular_origin")
            got = dunkl_transform_at(p, g, BesselKernel(p, a), _XI_LATTICE)
            err = float(np.max(np.abs(
                got - (1.0 + _XI_LATTICE ** 2) ** (-a / 2.0))))
            return err, err <= T(1e-5)

        out.append(_Check(
            f"transforms/bessel_multiplier/alpha={a:g}",
            "transform of B_alpha is (1 + xi^2)^(-alpha/2)",
            f"max abs err <= {T(1e-5):g}", bessel_mult))
    for f in (ctx.gauss, ctx.xgauss, ctx.h2g):
        def plancherel(f=f):
            phi = dunkl_transform(p, ctx.xg_std, f)
            nf = lp_norm(ctx.xg_std, f, 2).value
            nphi = math.sqrt(float(np.dot(
                ctx.fg_std.weights, np.abs(phi.values) ** 2)))
            err = abs(nf - nphi) / nf
            return err, err <= T(1e-6)

        out.append(_Check(
            f"transforms/plancherel/f={f.name}",
            "the transform preserves the L^2 norm",
            f"rel err <= {T(1e-6):g}", plancherel))

        def exchange(f=f):
            df = RealFunction(lambda x, f=f: dunkl_derivative(p, f, x))
            phi_df = dunkl_transform(p, ctx.xg_std, df)
            phi = dunkl_transform(p, ctx.xg_std, f)
            err = float(np.max(np.abs(
                phi_df.values - 1j * phi.grid.nodes * phi.values)))
            return err, err <= T(1e-6)

        out.append(_Check(
            f"transforms/derivative_exchange/f={f.name}",
            "transform of D_k f is (i xi) times the transform of f",
            f"max abs err <= {T(1e-6):g}", exchange))
    return out


def _suite_semigroup(ctx: _Ctx, T) -> list[_Check]:
    p = ctx.params
    out = []

    def heat_conv():
        got = convolve(p, ctx.xg_std, HeatKernel(p, 0.4).as_real_function(),
                       HeatKernel(p, 0.9).as_real_function(),
                       probe_nodes=_PROBE_XS)
        err = float(np.max(np.abs(got - HeatKernel(p, 1.3)(_PROBE_XS))))
        return err, err <= T(1e-5)

    out.append(_Check(
        "semigroup/heat_convolution",
        "F_s * F_t = F_{s+t} under the mass-normalized convolution",
        f"max abs err <= {T(1e-5):g}", heat_conv))

    def poisson_conv():
        g = build_grid(ctx.k, 2000.0, "heavy_tail", 12)
        got = convolve(p, g, PoissonKernel(p, 0.6).as_real_function(),
                       PoissonKernel(p, 0.7).as_real_function(),
                       probe_nodes=_PROBE_XS)
        err = float(np.max(np.abs(got - PoissonKernel(p, 1.3)(_PROBE_XS))))
        return err, err <= T(1e-5)

    out.append(_Check(
        "semigroup/poisson_convolution",
        "P_s * P_t = P_{s+t} under the mass-normalized convolution",
        f"max abs err <= {T(1e-5):g}", poisson_conv))

    def bessel_conv():
        # transform route: both factor transforms are measured numerically
        # from samples of the singular kernels, multiplied, and inverted;
        # orders are chosen so the product transform decays fast enough for
        # the frequency truncation
        g = build_grid(ctx.k, 60.0, "singular_origin")
        fg = build_grid(ctx.k, 80.0, "smooth", 12, max_panel_width=0.5)
        xs = np.array([0.3, 0.9, 2.0])
        got = convolve(p, g, BesselKernel(p, 2.5).as_real_function(),
                       BesselKernel(p, 2.5).as_real_function(),
                       method="transform", probe_nodes=xs, freq_grid=fg)
        err = float(np.max(np.abs(got - BesselKernel(p, 5.0)(xs))))
        return err, err <= T(1e-5)

    out.append(_Check(
        "semigroup/bessel_convolution",
        "B_alpha * B_beta = B_{alpha+beta} under the convolution",
        f"max abs err <= {T(1e-5):g}", bessel_conv))

    def repro_kernel():
        U = closed_form_temperature(p, "heat_kernel")
        rep = semigroup_check(U, 0.5, 0.5, _PROBE_XS)
        return rep.residual_abs, rep.residual_abs <= T(1e-5)

    out.append(_Check(
        "semigroup/reproducing_formula/heat_kernel",
        "U(x, s+t) equals the translated-kernel integral of the time-s "
        "slice, for U the heat kernel",
        f"abs residual <= {T(1e-5):g}", repro_kernel))

    def repro_gauss():
        U = ctx.heat_u(ctx.gauss, "default")
        rep = semigroup_check(U, 0.25, 0.25, _PROBE_XS)
        return rep.residual_abs, rep.residual_abs <= T(1e-5)

    out.append(_Check(
        "semigroup/reproducing_formula/gaussian_extension",
        "U(x, s+t) equals the translated-kernel integral of the time-s "
        "slice, for U the heat extension of the Gaussian",
        f"abs residual <= {T(1e-5):g}", repro_gauss))
    return out


def _suite_pde(ctx: _Ctx, T) -> list[_Check]:
    p = ctx.params
    xs5 = np.array([-1.4, -0.5, 0.2, 0.9, 1.7])
    ts5 = (0.3, 0.55, 0.8, 1.2, 1.6)
    out = []

    def heat_closed():
        rep = heat_residual(closed_form_temperature(p, "heat_kernel"),
                            xs=xs5, ts=ts5)
        return rep.max_rel, rep.max_rel <= T(1e-6)

    out.append(_Check(
        "pde/heat_residual/closed_form",
        "the heat kernel solves (D_k^2 - d/dt) U = 0",
        f"max rel residual <= {T(1e-6):g}", heat_closed))

    def heat_ext():
        rep = heat_residual(ctx.heat_u(ctx.gauss, "default"), xs=xs5, ts=ts5)
        return rep.max_rel, rep.max_rel <= T(1e-6)

    out.append(_Check(
        "pde/heat_residual/gaussian_extension",
        "the heat extension of the Gaussian solves (D_k^2 - d/dt) U = 0",
        f"max rel residual <= {T(1e-6):g}", heat_ext))

    def harmonicity():
        pk = PoissonKernel(p, 1.0)
        worst = 0.0
        for t in ts5:
            pt = PoissonKernel(p, t)
            x = np.array([0.2, 0.9, 1.7, 3.1, 4.0])
            lap = pt.dxx(x) + (2.0 * ctx.k / x) * pt.dx(x)
            dtt = pt.dt(2, x)
            worst = max(worst, float(np.max(
                np.abs(lap + dtt) / (np.abs(lap) + np.abs(dtt)))))
        del pk
        return worst, worst <= T(1e-8)

    out.append(_Check(
        "pde/poisson_harmonicity",
        "the Poisson kernel solves (D_k^2 + d^2/dt^2) U = 0",
        f"max rel residual <= {T(1e-8):g}", harmonicity))
    return out


def _suite_potentials(ctx: _Ctx, T) -> list[_Check]:
    p = ctx.params
    xs = np.array([0.0, 0.3, 1.2, 2.5])
    out = []

    def fn_comp():
        inner = potential_multiplier_fn(p, 1.0, ctx.gauss)
        got = bessel_potential_fn(p, 1.0, inner, xs)
        want = potential_multiplier_fn(p, 2.0, ctx.gauss)(xs)
        err = float(np.max(np.abs(got - want)))
        return err, err <= T(1e-4)

    out.append(_Check(
        "potentials/function_composition",
        "J_1(J_1 f) = J_2 f across the integral and multiplier routes",
        f"max abs err <= {T(1e-4):g}", fn_comp))

    def fn_inv():
        j1 = potential_multiplier_fn(p, 1.0, ctx.gauss)
        got = bessel_potential_fn_negative(p, 1.0, j1, xs)
        err = float(np.max(np.abs(got - ctx.gauss(xs))))
        return err, err <= T(1e-3)

    out.append(_Check(
        "potentials/function_inversion",
        "J_{-1}(J_1 f) = f on functions",
        f"max abs err <= {T(1e-3):g}", fn_inv))

    s = 0.5
    for a, b in ((1.0, 1.0), (-2.0, -2.0), (2.0, -3.3)):
        def temp_comp(a=a, b=b):
            U = ctx.heat_u(ctx.gauss, "default")
            Va = potential_on_temperature(
                U, PotentialOrder.from_alpha(a), check_growth=False)
            Vab = potential_on_temperature(
                Va, PotentialOrder.from_alpha(b), check_growth=False)
            W = potential_on_temperature(
                U, PotentialOrder.from_alpha(a + b), check_growth=False)
            err = float(np.max(np.abs(
                Vab.eval_fn(xs, s) - W.eval_fn(xs, s))))
            return err, err <= T(1e-4)

        out.append(_Check(
            f"potentials/temperature_composition/a={a:g},b={b:g}",
            "J_a(J_b U) = J_{a+b} U on temperatures",
            f"max abs err <= {T(1e-4):g}", temp_comp))

    def temp_inv():
        U = ctx.heat_u(ctx.gauss, "default")
        Va = potential_on_temperature(
            U, PotentialOrder.from_alpha(1.5), check_growth=False)
        Vb = potential_on_temperature(
            Va, PotentialOrder.from_alpha(-1.5), check_growth=False)
        err = float(np.max(np.abs(Vb.eval_fn(xs, s) - U.eval_fn(xs, s))))
        return err, err <= T(1e-3)

    out.append(_Check(
        "potentials/temperature_inversion",
        "J_{-alpha}(J_alpha U) = U on temperatures",
        f"max abs err <= {T(1e-3):g}", temp_inv))
    return out


def _suite_asymptotics(ctx: _Ctx, T) -> list[_Check]:
    p = ctx.params
    a_small = ctx.k + 0.5
    out = []

    def origin():
        bk = BesselKernel(p, a_small)
        x = 1e-3
        ratio = bk(x) / bk.asymptotic_origin(x)
        return ratio, abs(ratio - 1.0) <= T(0.05)

    out.append(_Check(
        f"asymptotics/origin_ratio/alpha={a_small:g}",
        "B_alpha matches its origin expansion at |x| = 1e-3",
        f"ratio within 1 +- {T(0.05):g}", origin))

    for a in (a_small, 2.5):
        def tail(a=a):
            bk = BesselKernel(p, a)
            x = 25.0
            ratio = bk(x) / bk.asymptotic_tail(x)
            return ratio, abs(ratio - 1.0) <= T(0.05)

        out.append(_Check(
            f"asymptotics/tail_ratio/alpha={a:g}",
            "B_alpha matches its tail expansion at |x| = 25",
            f"ratio within 1 +- {T(0.05):g}", tail))
    return out


def _monotone(seq: list[float]) -> tuple[float, bool]:
    ratios = [b / a for a, b in zip(seq, seq[1:])]
    return max(ratios), all(r < 1.0 for r in ratios)


def _suite_decay(ctx: _Ctx, T) -> list[_Check]:
    p = ctx.params
    out = []

    def heat_smoothing():
        U = ctx.heat_u(ctx.gauss, "default")
        g = ctx.xg_std
        rows = U.dt_batch(0, g.nodes, np.array(_DYADIC_TS))
        seq = [
            t ** ((ctx.k + 0.5) / 2.0)
            * lp_norm(g, SampledFunction(g, row, interpolation="none"),
                      2.0).value
            for t, row in zip(_DYADIC_TS, rows)
        ]
        return _monotone(seq)

    out.append(_Check(
        "decay/heat_smoothing",
        "t^((k+1/2)(1/p - 1/r)) ||G_t f||_r decreases along dyadic t -> 0 "
        "(p = 1, r = 2)",
        "successive ratios < 1", heat_smoothing))

    def potential_decay():
        U = ctx.heat_u(ctx.gauss, "default")
        V = potential_on_temperature(
            U, PotentialOrder.from_alpha(-1.0), check_growth=False)
        g = ctx.xg_std
        rows = V.dt_batch(0, g.nodes, np.array(_DYADIC_TS))
        seq = [
            math.sqrt(t)
            * lp_norm(g, SampledFunction(g, row, interpolation="none"),
                      2.0).value
            for t, row in zip(_DYADIC_TS, rows)
        ]
        return _monotone(seq)

    out.append(_Check(
        "decay/potential_smoothing",
        "t^(alpha/2) ||J_{-alpha} G_t f||_p decreases along dyadic t -> 0 "
        "(alpha = 1, p = 2)",
        "successive ratios < 1", potential_decay))

    def poisson_decay():
        phi = dunkl_transform(p, ctx.xg_std, ctx.gauss)
        w = ctx.fg_std.weights
        xi = np.abs(ctx.fg_std.nodes)
        mag = np.abs(np.asarray(phi.values))
        seq = [
            t * math.sqrt(float(np.dot(w, (xi * np.exp(-t * xi) * mag) ** 2)))
            for t in _DYADIC_TS
        ]
        return _monotone(seq)

    out.append(_Check(
        "decay/poisson_derivative",
        "t ||d/dt P_t f||_2 decreases along dyadic t -> 0",
        "successive ratios < 1", poisson_decay))
    return out


# ---------------------------------------------------------------------------
# equivalence and embedding sweeps
# ---------------------------------------------------------------------------


def equivalence_sweep(k: float = 0.5, _ctx: _Ctx | None = None
                      ) -> dict[str, EquivalenceReport]:
    """Two-sided norm-equivalence reports on the Gaussian-family suite.

    Returns four reports (13 sweep points in total), each checking that the
    ratio of two independent routes to the same norm stays inside the
    acceptance window [1/50, 50] with sweep stability factor <= 20.
    """
    ctx = _ctx if _ctx is not None else _Ctx(k)
    fns = (ctx.gauss, ctx.xgauss, ctx.h2g)
    out: dict[str, EquivalenceReport] = {}

    # temperature-side functional vs restricted heat functional + late-time
    # supremum, across smoothness indices and derivative orders
    def t_left(point):
        alpha, _n = point
        return ctx.e_value(ctx.gauss, alpha)

    def t_right(point):
        alpha, n = point
        return ctx.a_star(ctx.gauss, alpha, n) + ctx.l_value(ctx.gauss)

    out["temperature_route"] = equivalence_report(
        t_left, t_right,
        [(f"alpha={a:g},n={n}", (a, n)) for a in (0.5, 1.5) for n in (1, 2)])

    # minimal vs next-larger derivative order in the heat-route norm
    def d_left(alpha):
        return ctx.heat_norm(ctx.gauss, alpha)

    def d_right(alpha):
        nn = LipschitzParams(alpha, 2.0, 2.0).n_bar + 1
        return ctx.heat_norm(ctx.gauss, alpha, n=nn)

    out["derivative_order"] = equivalence_report(
        d_left, d_right, [(f"alpha={a:g}", a) for a in (0.7, 1.5, 2.5)])

    # a potential of order 1 shifts the smoothness index by 1
    def p_left(f):
        jf = potential_multiplier_fn(ctx.params, 1.0, f, ctx.xg, ctx.fg)
        return lipschitz_norm_heat(
            ctx.params, LipschitzParams(1.5, 2.0, 2.0), jf,
            grid=ctx.xg, tgrid=ctx.tg)

    def p_right(f):
        return ctx.heat_norm(f, 0.5)

    out["potential_shift"] = equivalence_report(
        p_left, p_right, [(f.name, f) for f in fns])

    # the time-1 heat transform is an isomorphism on the smoothness space
    def i_left(f):
        return ctx.heat_norm(ctx.heat_slice(f), 0.5)

    def i_right(f):
        return ctx.heat_norm(f, 0.5)

    out["heat_isomorphism"] = equivalence_report(
        i_left, i_right, [(f.name, f) for f in fns])
    return out


def embedding_sweep(k: float = 0.5, _ctx: _Ctx | None = None
                    ) -> EmbeddingReport:
    """One-sided embedding inequalities with measured constants.

    Four cases: smoothness decrease at fixed integrability, integrability
    upgrade paying (2k+1)(1/p - 1/r) in smoothness, a strict-index-gap
    embedding, and the temperature-side integrability upgrade.
    """
    ctx = _ctx if _ctx is not None else _Ctx(k)
    fns = [ctx.gauss, ctx.xgauss]
    kk = 2.0 * ctx.k + 1.0
    a_pay = 0.5 + kk / 2.0
    a_gap = 0.25 + kk / 4.0 + 0.3
    a_temp = 0.5 - kk / 2.0
    cases = [
        ("smoothness_decrease",
         lambda f: ctx.heat_norm(f, 0.8),
         lambda f: ctx.heat_norm(f, 0.5),
         fns),
        ("integrability_upgrade",
         lambda f: ctx.heat_norm(f, a_pay, p=1.0),
         lambda f: ctx.heat_norm(f, 0.5, p=2.0),
         fns),
        ("index_gap",
         lambda f: ctx.heat_norm(f, a_gap, p=2.0),
         lambda f: ctx.heat_norm(f, 0.25, p=4.0),
         fns),
        ("temperature_side",
         lambda f: ctx.e_value(f, 0.5, p=1.0),
         lambda f: ctx.e_value(f, a_temp, p=2.0),
         fns),
    ]
    return embedding_report(cases)


def _suite_equivalences(ctx: _Ctx, T) -> list[_Check]:
    window = "each ratio in [0.02, 50]; sweep spread <= 20"
    statements = {
        "temperature_route": (
            "temperature-side norm functional vs restricted heat functional "
            "plus late-time supremum"),
        "derivative_order": (
            "heat-route norm with the minimal derivative order vs the next "
            "larger order"),
        "potential_shift": (
            "norm after an order-1 potential at smoothness 1.5 vs the "
            "original norm at smoothness 0.5"),
        "heat_isomorphism": (
            "norm of the time-1 heat transform vs the norm of the input"),
    }

    def make(name):
        def fn():
            rep = equivalence_sweep(ctx.k, _ctx=ctx)[name]
            return rep.ratio_spread, rep.all_pass

        return fn

    return [
        _Check(f"equivalences/{name}", statements[name], window, make(name))
        for name in sorted(statements)
    ]


def _suite_embeddings(ctx: _Ctx, T) -> list[_Check]:
    statements = {
        "smoothness_decrease": (
            "lowering the smoothness index at fixed integrability is "
            "norm-bounded"),
        "integrability_upgrade": (
            "raising integrability is norm-bounded after paying "
            "(2k+1)(1/p - 1/r) in smoothness"),
        "index_gap": (
            "a strict gap in the effective index alpha - (2k+1)/p gives a "
            "bounded embedding"),
        "temperature_side": (
            "the temperature-side integrability upgrade is norm-bounded"),
    }

    def make(name):
        def fn():
            rep = embedding_sweep(ctx.k, _ctx=ctx)
            row = next(r for r in rep.rows if r.name == name)
            return row.constant, row.passed

        return fn

    return [
        _Check(f"embeddings/{name}", statements[name],
               "finite measured constant", make(name))
        for name in sorted(statements)
    ]


_SUITE_BUILDERS = {
    "classical": _suite_classical,
    "kernels": _suite_kernels,
    "transforms": _suite_transforms,
    "semigroup": _suite_semigroup,
    "pde": _suite_pde,
    "potentials": _suite_potentials,
    "asymptotics": _suite_asymptotics,
    "decay": _suite_decay,
    "equivalences": _suite_equivalences,
    "embeddings": _suite_embeddings,
}


# ---------------------------------------------------------------------------
# runner
# ---------------------------------------------------------------------------


def run_suites(suites=("all",), *, k: float = 0.5, tol: float | None = None,
               workers: int = 4) -> VerificationReport:
    """Run the selected verification suites at multiplicity ``k``.

    ``suites`` is an iterable of suite names (or ``"all"``).  ``tol``, when
    given, replaces the per-check default tolerance of every
    tolerance-compared check; window-based checks (equivalences,
    embeddings, monotone decay) are unaffected.  Checks execute on a small
    thread pool; the report is assembled in check-id order and its JSON and
    CSV renderings are byte-stable for a fixed configuration.
    """
    if isinstance(suites, str):
        suites = (suites,)
    names = list(dict.fromkeys(suites))
    if "all" in names:
        names = list(SUITE_NAMES)
    unknown = [s for s in names if s not in SUITE_NAMES]
    if unknown:
        raise ValueError(
            f"unknown suite(s) {unknown}; choose from "
            f"{', '.join(SUITE_NAMES)} or all")
    if tol is not None and not tol > 0.0:
        raise ValueError("tol must be positive")
    k = float(k)
    if k < 0.0:
        raise ValueError("k must be non-negative")

    def T(default: float) -> float:
        return default if tol is None else float(tol)

    ctx = _Ctx(k)
    checks: list[_Check] = []
    for name in SUITE_NAMES:
        if name in names:
            checks.extend(_SUITE_BUILDERS[name](ctx, T))
    seen = set()
    for c in checks:
        if c.id in seen:
            raise RuntimeError(f"duplicate check id {c.id!r}")
        seen.add(c.id)

    if workers > 1 and len(checks) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_execute, checks))
    else:
        results = [_execute(c) for c in checks]
    results.sort(key=lambda r: r.id)
    ordered = tuple(sorted(names, key=SUITE_NAMES.index))
    return VerificationReport(SCHEMA_VERSION, k, tol, ordered, tuple(results))
