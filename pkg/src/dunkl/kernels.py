"""Heat, Poisson and Bessel-potential kernels for the weighted line.

Closed forms (with nu = k + 1/2 and q = t^2 + x^2):

    F_t(x)      = (2t)^{-nu} e^{-x^2/(4t)}
    P_t(x)      = c_tilde_k t / q^{k+1}
    B_alpha(x)  = |x|^sigma K_sigma(|x|) / (2^{alpha/2-1} Gamma(alpha/2)),
                  sigma = (alpha-1)/2 - k   (alpha > 0)

Their Dunkl transforms are e^{-t xi^2}, e^{-t|xi|} and (1+xi^2)^{-alpha/2};
all three families are semigroups under the mass-normalized convolution, and
c_k times each kernel's weighted mass equals 1.

Time derivatives are produced by exact recurrences:

* heat: d^m/dt^m F_t = t^{-m} R_m(x^2/4t) F_t with the polynomial recurrence
  R_{m+1}(u) = (u - nu - m) R_m(u) - u R_m'(u), R_0 = 1;
* Poisson: the term algebra  c t^i q^{-(k+1+r)}  is closed under d/dt.

The Bessel kernel has two evaluation routes -- a Laplace-type integral in
log-substituted form (robust near x = 0) and the Macdonald closed form -- that
must agree to 1e-8 relative on [1e-2, 20]; ``auto`` switches at |x| = 0.05.
The composite kernel P_t(B_{-beta}) (negative potential order) uses the
iterated identity  (I + d^2/dt^2)^m P_t(B_{2m-beta})  with m = floor(beta/2)+1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .dunkl_ops import RealFunction, translate
from .measure import WeightedGrid, build_grid
from .specfun import DunklParams, bessel_k_array, gamma

__all__ = [
    "HeatKernel",
    "PoissonKernel",
    "BesselKernel",
    "heat_kernel_dt",
    "poisson_kernel_dt",
    "bessel_kernel_eval",
    "poisson_bessel_negative",
]


# ---------------------------------------------------------------------------
# heat kernel
# ---------------------------------------------------------------------------

_heat_poly_cache: dict[tuple, np.ndarray] = {}


def _heat_dt_poly(k: float, m: int) -> np.ndarray:
    """Ascending coefficients of R_m: d^m/dt^m F_t = t^{-m} R_m(x^2/4t) F_t."""
    key = (k, m)
    if key in _heat_poly_cache:
        return _heat_poly_cache[key]
    nu = k + 0.5
    r = np.array([1.0])
    for j in range(m):
        nxt = np.zeros(r.size + 1)
        nxt[1:] += r                      # u * R
        nxt[:-1] -= (nu + j) * r          # -(nu + j) R
        nxt[:-1] -= np.arange(r.size) * r  # -u R'
        r = nxt
    _heat_poly_cache[key] = r
    return r


@dataclass(frozen=True)
class HeatKernel:
    """Gauss--Weierstrass kernel F_t for the Dunkl heat semigroup."""

    params: DunklParams
    t: float

    def __post_init__(self) -> None:
        if self.t <= 0.0:
            raise ValueError("heat kernel requires t > 0")

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        nu = self.params.k + 0.5
        return (2.0 * self.t) ** (-nu) * np.exp(-x * x / (4.0 * self.t))

    def dx(self, x):
        x = np.asarray(x, dtype=float)
        return -x / (2.0 * self.t) * self(x)

    def dxx(self, x):
        x = np.asarray(x, dtype=float)
        return (x * x / (4.0 * self.t * self.t) - 1.0 / (2.0 * self.t)) * self(x)

    def dt(self, m: int, x):
        return heat_kernel_dt(self, m, x)

    def as_real_function(self) -> RealFunction:
        t = self.t
        return RealFunction(self.__call__, parity="even", decay="gaussian",
                            derivative=self.dx,
                            transform_hint=lambda xi: np.exp(-t * xi * xi),
                            name=f"heat_kernel(t={t})")


def heat_kernel_dt(kernel: HeatKernel, m: int, x):
    """m-th time derivative of the heat kernel (exact polynomial recurrence)."""
    if m < 0:
        raise ValueError("derivative order must be >= 0")
    x = np.asarray(x, dtype=float)
    coeffs = _heat_dt_poly(kernel.params.k, m)
    u = x * x / (4.0 * kernel.t)
    acc = np.zeros_like(u)
    for c in coeffs[::-1]:
        acc = acc * u + c
    return kernel.t ** (-m) * acc * kernel(x)


def heat_kernel_dt_dx(kernel: HeatKernel, m: int, x):
    """Mixed derivative d/dx d^m/dt^m of the heat kernel, in closed form:
    (x/2t) t^{-m} (R_m' - R_m)(x^2/4t) F_t(x)."""
    if m < 0:
        raise ValueError("derivative order must be >= 0")
    x = np.asarray(x, dtype=float)
    r = _heat_dt_poly(kernel.params.k, m)
    dr = r[1:] * np.arange(1, r.size)
    u = x * x / (4.0 * kernel.t)
    acc_r = np.zeros_like(u)
    for c in r[::-1]:
        acc_r = acc_r * u + c
    acc_dr = np.zeros_like(u)
    for c in dr[::-1]:
        acc_dr = acc_dr * u + c
    return (x / (2.0 * kernel.t)) * kernel.t ** (-m) * (acc_dr - acc_r) * kernel(x)


# ---------------------------------------------------------------------------
# Poisson kernel
# ---------------------------------------------------------------------------

_poisson_terms_cache: dict[tuple, tuple] = {}


def _poisson_dt_terms(k: float, n: int) -> tuple:
    """Terms (c, i, r) meaning c * t^i * (t^2+x^2)^{-(k+1+r)} for d^n/dt^n P."""
    key = (k, n)
    if key in _poisson_terms_cache:
        return _poisson_terms_cache[key]
    terms = [(1.0, 1, 0)]  # P_t / c_tilde_k
    for _ in range(n):
        nxt: dict[tuple[int, int], float] = {}
        for c, i, r in terms:
            if i > 0:
                key2 = (i - 1, r)
                nxt[key2] = nxt.get(key2, 0.0) + c * i
            key3 = (i + 1, r + 1)
            nxt[key3] = nxt.get(key3, 0.0) - 2.0 * c * (k + 1.0 + r)
        terms = [(c, i, r) for (i, r), c in sorted(nxt.items())]
    out = tuple(terms)
    _poisson_terms_cache[key] = out
    return out


@dataclass(frozen=True)
class PoissonKernel:
    """Poisson kernel P_t = c_tilde_k t / (t^2 + x^2)^{k+1}."""

    params: DunklParams
    t: float

    def __post_init__(self) -> None:
        if self.t <= 0.0:
            raise ValueError("Poisson kernel requires t > 0")

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        q = self.t * self.t + x * x
        return self.params.c_tilde_k * self.t * q ** (-(self.params.k + 1.0))

    def dx(self, x):
        x = np.asarray(x, dtype=float)
        q = self.t * self.t + x * x
        kk = self.params.k + 1.0
        return self.params.c_tilde_k * self.t * (-kk) * 2.0 * x * q ** (-kk - 1.0)

    def dxx(self, x):
        x = np.asarray(x, dtype=float)
        q = self.t * self.t + x * x
        kk = self.params.k + 1.0
        return self.params.c_tilde_k * self.t * (
            -2.0 * kk * q ** (-kk - 1.0)
            + 4.0 * kk * (kk + 1.0) * x * x * q ** (-kk - 2.0))

    def dt(self, n: int, x):
        return poisson_kernel_dt(self, n, x)

    def as_real_function(self) -> RealFunction:
        t = self.t
        return RealFunction(self.__call__, parity="even", decay="polynomial",
                            derivative=self.dx,
                            transform_hint=lambda xi: np.exp(-t * np.abs(xi)),
                            name=f"poisson_kernel(t={t})")


def poisson_kernel_dt(kernel: PoissonKernel, n: int, x):
    """n-th time derivative of the Poisson kernel (exact term algebra)."""
    if n < 0:
        raise ValueError("derivative order must be >= 0")
    x = np.asarray(x, dtype=float)
    k, t = kernel.params.k, kernel.t
    q = t * t + x * x
    acc = np.zeros_like(q)
    for c, i, r in _poisson_dt_terms(k, n):
        acc += c * t**i * q ** (-(k + 1.0 + r))
    return kernel.params.c_tilde_k * acc


# ---------------------------------------------------------------------------
# Bessel kernel
# ---------------------------------------------------------------------------


@dataclass(eq=False)
class BesselKernel:
    """Bessel-potential kernel B_alpha (Dunkl transform (1+xi^2)^{-alpha/2}).

    ``evaluation_route`` is "auto" (Laplace integral below |x| = 0.05, closed
    Macdonald form above), "laplace_integral" or "k_bessel_closed_form".
    Arguments beyond |x| = 700 underflow to 0 and are counted in
    ``overflow_events``.
    """

    params: DunklParams
    alpha: float
    evaluation_route: str = "auto"
    overflow_events: int = 0
    _grid_values: dict = field(default_factory=dict, repr=False)

    def __post_init__(self) -> None:
        if self.alpha <= 0.0:
            raise ValueError("Bessel kernel requires alpha > 0")
        if self.evaluation_route not in ("auto", "laplace_integral",
                                         "k_bessel_closed_form"):
            raise ValueError("unknown evaluation route")

    @property
    def sigma(self) -> float:
        """Macdonald order (alpha - 1)/2 - k."""
        return (self.alpha - 1.0) / 2.0 - self.params.k

    def _closed_form(self, ax: np.ndarray) -> np.ndarray:
        sig = self.sigma
        pref = 1.0 / (2.0 ** (self.alpha / 2.0 - 1.0) * gamma(self.alpha / 2.0))
        return pref * ax**sig * bessel_k_array(sig, ax)

    def _laplace(self, ax: np.ndarray) -> np.ndarray:
        # B(x) = C int exp(-e^s - (x^2/4) e^{-s} + sigma s) ds on the line,
        # trapezoid on an s-grid wide enough for every x in the batch.
        sig = self.sigma
        C = 1.0 / (2.0 ** (self.params.k + 0.5) * gamma(self.alpha / 2.0))
        xmin = float(np.min(ax))
        s_lo = min(2.0 * math.log(max(xmin, 1e-290) / 2.0) - 6.0, -8.0)
        s_hi = 6.0
        h = 0.04
        s = np.arange(s_lo, s_hi + h, h)
        expo = (-np.exp(s)[None, :]
                - (ax.ravel()[:, None] ** 2 / 4.0) * np.exp(-s)[None, :]
                + sig * s[None, :])
        vals = np.exp(np.clip(expo, -745.0, 700.0))
        out = C * h * (vals.sum(axis=1) - 0.5 * (vals[:, 0] + vals[:, -1]))
        return out.reshape(ax.shape)

    def __call__(self, x, route: str | None = None):
        return bessel_kernel_eval(self, x, route)

    def eval_on_grid(self, grid: WeightedGrid) -> np.ndarray:
        key = grid.fingerprint
        if key not in self._grid_values:
            self._grid_values[key] = bessel_kernel_eval(self, grid.nodes)
        return self._grid_values[key]

    def asymptotic_origin(self, x) -> np.ndarray:
        """Leading small-|x| form C |x|^{alpha-1-2k} (valid for alpha < 2k+1)."""
        k, a = self.params.k, self.alpha
        C = gamma(k + (1.0 - a) / 2.0) * 2.0 ** (k + 0.5 - a) / gamma(a / 2.0)
        return C * np.abs(np.asarray(x, dtype=float)) ** (a - 1.0 - 2.0 * k)

    def asymptotic_tail(self, x) -> np.ndarray:
        """Leading large-|x| form sqrt(pi) 2^{-(alpha-1)/2}/Gamma(alpha/2)
        |x|^{alpha/2-1-k} e^{-|x|}."""
        k, a = self.params.k, self.alpha
        ax = np.abs(np.asarray(x, dtype=float))
        C = math.sqrt(math.pi) / (2.0 ** ((a - 1.0) / 2.0) * gamma(a / 2.0))
        return C * ax ** (a / 2.0 - 1.0 - k) * np.exp(-ax)

    def as_real_function(self) -> RealFunction:
        a = self.alpha
        return RealFunction(self.__call__, parity="even", decay="exponential",
                            transform_hint=lambda xi:
                                (1.0 + xi * xi) ** (-a / 2.0),
                            name=f"bessel_kernel(alpha={a})")


def bessel_kernel_eval(kernel: BesselKernel, x, route: str | None = None):
    """Evaluate B_alpha with route selection and the overflow guard."""
    x = np.asarray(x, dtype=float)
    scalar = x.ndim == 0
    ax = np.abs(np.atleast_1d(x).astype(float))
    if np.any(ax == 0.0):
        raise ValueError("B_alpha is singular/undefined at x = 0; "
                         "grids never place nodes there")
    route = route or kernel.evaluation_route
    out = np.zeros_like(ax)
    over = ax > 700.0
    if np.any(over):
        kernel.overflow_events += int(np.sum(over))
    ok = ~over
    axok = ax[ok]
    if route == "laplace_integral":
        out[ok] = kernel._laplace(axok)
    elif route == "k_bessel_closed_form":
        out[ok] = kernel._closed_form(axok)
    else:
        small = axok < 0.05
        res = np.empty_like(axok)
        if np.any(small):
            res[small] = kernel._laplace(axok[small])
        if np.any(~small):
            res[~small] = kernel._closed_form(axok[~small])
        out[ok] = res
    return float(out[0]) if scalar else out.reshape(x.shape)


# ---------------------------------------------------------------------------
# P_t(B_{-beta}): Poisson transform of negative-order Bessel potentials
# ---------------------------------------------------------------------------

_pbneg_grid_cache: dict[tuple, WeightedGrid] = {}


def _pbneg_inner_grid(k: float) -> WeightedGrid:
    key = ("inner", k)
    if key not in _pbneg_grid_cache:
        _pbneg_grid_cache[key] = build_grid(k, 40.0, "singular_origin", 20)
    return _pbneg_grid_cache[key]


def poisson_bessel_negative(params: DunklParams, beta: float, t: float, x,
                            n_theta: int = 64):
    """P_t(B_{-beta})(x): Poisson integral of the order -beta Bessel kernel.

    Dunkl transform e^{-t|xi|} (1+xi^2)^{beta/2}.  With m = floor(beta/2)+1
    the residual order 2m - beta lies in (0, 2], and

        P_t(B_{-beta}) = (I + d^2/dt^2)^m [ P_t * B_{2m-beta} ],

    so a single translation quadrature against B_{2m-beta} with the combined
    kernel  sum_i C(m, i) d^{2i}/dt^{2i} P_t  evaluates every order.
    """
    if beta <= 0.0:
        raise ValueError("beta must be positive")
    if t <= 0.0:
        raise ValueError("t must be positive")
    x = np.asarray(x, dtype=float)
    scalar = x.ndim == 0
    xs = np.atleast_1d(x).astype(float)

    m = int(math.floor(beta / 2.0)) + 1
    residual_alpha = 2.0 * m - beta  # in (0, 2]
    binom = [math.comb(m, i) for i in range(m + 1)]

    g = _pbneg_inner_grid(params.k)
    bk = BesselKernel(params, residual_alpha)
    bv = bk.eval_on_grid(g)
    pk = PoissonKernel(params, t)

    def combined(z):
        acc = np.zeros_like(np.asarray(z, dtype=float))
        for i, c in enumerate(binom):
            acc += c * poisson_kernel_dt(pk, 2 * i, z)
        return acc

    comb_fn = RealFunction(combined, parity="even")
    out = np.empty_like(xs)
    for j, xj in enumerate(xs):
        tc = translate(params, float(xj), comb_fn, -g.nodes, n_theta=n_theta)
        out[j] = params.c_k * np.dot(g.weights, tc * bv)
    return float(out[0]) if scalar else out
