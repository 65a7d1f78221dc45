"""Rank-1 Dunkl harmonic analysis.

Weighted L^p norms on |x|^{2k} dx, the Dunkl transform/translation/
convolution, heat--Poisson--Bessel kernels and their semigroups, Bessel
potentials of either sign on functions and on temperatures, and
Lipschitz-space norm functionals, together with a machine-checkable
verification suite exposed through the ``dunkl`` command line tool.
"""

from .specfun import (
    DEFAULT_POLICY,
    DunklParams,
    GammaPoleError,
    SeriesConvergenceError,
    SeriesPolicy,
    bessel_j_normalized,
    bessel_k,
    dunkl_kernel,
    gamma,
)

__version__ = "0.1.0"

__all__ = [
    "DEFAULT_POLICY",
    "DunklParams",
    "GammaPoleError",
    "SeriesConvergenceError",
    "SeriesPolicy",
    "bessel_j_normalized",
    "bessel_k",
    "dunkl_kernel",
    "gamma",
    "__version__",
]
