"""Named input functions for the CLI, the verification suites and the tests.

Each builder takes the Dunkl parameters (the transform hints depend on k) and
returns a :class:`~dunkl.dunkl_ops.RealFunction` with parity/decay metadata
and, where available, the closed-form Dunkl transform as ``transform_hint``
-- used by tests as an independent oracle, never by the library itself.
"""

from __future__ import annotations

import numpy as np

from .dunkl_ops import RealFunction
from .specfun import DunklParams

__all__ = [
    "gaussian",
    "xgaussian",
    "hermite2_gaussian",
    "heat_kernel_fn",
    "poisson_kernel_fn",
    "bessel_kernel_fn",
    "get_function",
    "FUNCTION_NAMES",
]


def gaussian(params: DunklParams) -> RealFunction:
    """f(x) = e^{-x^2};  F_k f(xi) = 2^{-(k+1/2)} e^{-xi^2/4}."""
    k = params.k
    return RealFunction(
        lambda x: np.exp(-x * x),
        parity="even",
        decay="gaussian",
        derivative=lambda x: -2.0 * x * np.exp(-x * x),
        transform_hint=lambda xi: 2.0 ** -(k + 0.5) * np.exp(-xi * xi / 4.0),
        name="gaussian",
    )


def xgaussian(params: DunklParams) -> RealFunction:
    """f(x) = x e^{-x^2};  F_k f(xi) = -(i xi / 2) 2^{-(k+1/2)} e^{-xi^2/4}."""
    k = params.k
    return RealFunction(
        lambda x: x * np.exp(-x * x),
        parity="odd",
        decay="gaussian",
        derivative=lambda x: (1.0 - 2.0 * x * x) * np.exp(-x * x),
        transform_hint=lambda xi: -0.5j * xi * 2.0 ** -(k + 0.5)
        * np.exp(-xi * xi / 4.0),
        name="xgaussian",
    )


def hermite2_gaussian(params: DunklParams) -> RealFunction:
    """f(x) = (1 - x^2) e^{-x^2/2};  F_k f(xi) = (xi^2 - 2k) e^{-xi^2/2}."""
    k = params.k
    return RealFunction(
        lambda x: (1.0 - x * x) * np.exp(-x * x / 2.0),
        parity="even",
        decay="gaussian",
        derivative=lambda x: (x * x - 3.0) * x * np.exp(-x * x / 2.0),
        transform_hint=lambda xi: (xi * xi - 2.0 * k) * np.exp(-xi * xi / 2.0),
        name="hermite2_gaussian",
    )


def heat_kernel_fn(params: DunklParams, t: float) -> RealFunction:
    """The heat kernel F_t as a RealFunction;  F_k(F_t)(xi) = e^{-t xi^2}."""
    from .kernels import HeatKernel

    hk = HeatKernel(params, t)
    return RealFunction(
        hk.__call__,
        parity="even",
        decay="gaussian",
        derivative=hk.dx,
        transform_hint=lambda xi: np.exp(-t * xi * xi),
        name=f"heat_kernel(t={t})",
    )


def poisson_kernel_fn(params: DunklParams, t: float) -> RealFunction:
    """The Poisson kernel P_t as a RealFunction;  F_k(P_t)(xi) = e^{-t |xi|}."""
    from .kernels import PoissonKernel

    pk = PoissonKernel(params, t)
    return RealFunction(
        pk.__call__,
        parity="even",
        decay="polynomial",
        derivative=pk.dx,
        transform_hint=lambda xi: np.exp(-t * np.abs(xi)),
        name=f"poisson_kernel(t={t})",
    )


def bessel_kernel_fn(params: DunklParams, alpha: float) -> RealFunction:
    """The Bessel kernel B_alpha;  F_k(B_alpha)(xi) = (1 + xi^2)^{-alpha/2}."""
    from .kernels import BesselKernel

    bk = BesselKernel(params, alpha)
    return RealFunction(
        bk.__call__,
        parity="even",
        decay="exponential",
        transform_hint=lambda xi: (1.0 + xi * xi) ** (-alpha / 2.0),
        name=f"bessel_kernel(alpha={alpha})",
    )


FUNCTION_NAMES = (
    "gaussian",
    "xgaussian",
    "hermite2_gaussian",
    "heat_kernel",
    "poisson_kernel",
    "bessel_kernel",
)


def get_function(name: str, params: DunklParams, *, t: float = 1.0,
                 alpha: float = 1.0) -> RealFunction:
    """Look up a named input function (CLI entry point)."""
    if name == "gaussian":
        return gaussian(params)
    if name == "xgaussian":
        return xgaussian(params)
    if name == "hermite2_gaussian":
        return hermite2_gaussian(params)
    if name == "heat_kernel":
        return heat_kernel_fn(params, t)
    if name == "poisson_kernel":
        return poisson_kernel_fn(params, t)
    if name == "bessel_kernel":
        return bessel_kernel_fn(params, alpha)
    raise ValueError(f"unknown function {name!r}; expected one of {FUNCTION_NAMES}")
