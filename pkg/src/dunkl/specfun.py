"""Scalar special functions for rank-1 Dunkl analysis.

Everything downstream (grids, transforms, kernels) is assembled from the four
primitives in this module:

* ``gamma`` -- Euler Gamma on the reals (Lanczos approximation + reflection),
* ``bessel_j_normalized`` -- the normalized Bessel function
  ``j_a(z) = Gamma(a+1) * (z/2)^(-a) * J_a(z)``  (entire, j_a(0)=1),
* ``bessel_k`` -- the Macdonald function K_nu on (0, inf),
* ``dunkl_kernel`` -- the Dunkl kernel E_k(lambda, x), the joint eigenfunction
  of the Dunkl operator with eigenvalue lambda.

Evaluation strategy is controlled by a ``SeriesPolicy``: power series inside
``switch_radius``, asymptotic expansions outside.  The K_nu series route
suffers catastrophic cancellation (relative error grows like e^{2x}), so it is
run in 40-digit mpmath arithmetic below the switch radius; above it the
standard asymptotic expansion in 1/x takes over.  Orders are reduced to
mu in [-1/2, 1/2) and walked back up with the (stable, increasing) three-term
recurrence.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from mpmath import mp

__all__ = [
    "SeriesPolicy",
    "DunklParams",
    "DEFAULT_POLICY",
    "GammaPoleError",
    "SeriesConvergenceError",
    "gamma",
    "bessel_j_normalized",
    "bessel_j_normalized_dz",
    "bessel_k",
    "bessel_k_array",
    "dunkl_kernel",
    "dunkl_kernel_dx",
    "j_normalized_real_array",
]


class GammaPoleError(ValueError):
    """Raised when gamma() is evaluated at a non-positive integer."""


class SeriesConvergenceError(ArithmeticError):
    """Raised when a series/asymptotic evaluation cannot meet its tolerance."""


@dataclass(frozen=True)
class SeriesPolicy:
    """Tuning knobs for series evaluation.

    Attributes
    ----------
    max_terms : int
        Hard cap on series terms (>= 16).
    abs_tol : float
        Term-size stopping tolerance, in (0, 1e-6].
    switch_radius : float
        |z| above which asymptotic expansions replace the power series.
    """

    max_terms: int = 200
    abs_tol: float = 1e-15
    switch_radius: float = 12.0

    def __post_init__(self) -> None:
        if self.max_terms < 16:
            raise ValueError("max_terms must be >= 16")
        if not (0.0 < self.abs_tol <= 1e-6):
            raise ValueError("abs_tol must lie in (0, 1e-6]")
        if self.switch_radius <= 0.0:
            raise ValueError("switch_radius must be positive")


DEFAULT_POLICY = SeriesPolicy()


# ---------------------------------------------------------------------------
# Gamma
# ---------------------------------------------------------------------------

# Lanczos approximation, g = 7, 9 coefficients.  Relative accuracy is a few
# ulp across the working range [1e-3, 50].
_LANCZOS_G = 7.0
_LANCZOS_C = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)

_SQRT_TWO_PI = math.sqrt(2.0 * math.pi)


def _gamma_lanczos(x: float) -> float:
    # valid for x >= 0.5
    acc = _LANCZOS_C[0]
    for i, c in enumerate(_LANCZOS_C[1:], start=1):
        acc += c / (x - 1.0 + i)
    t = x + _LANCZOS_G - 0.5
    return _SQRT_TWO_PI * t ** (x - 0.5) * math.exp(-t) * acc


def gamma(x: float, policy: SeriesPolicy = DEFAULT_POLICY) -> float:
    """Gamma(x) for real x away from the poles at 0, -1, -2, ...

    Uses the Lanczos approximation for x >= 1/2 and the reflection formula
    Gamma(x) Gamma(1-x) = pi / sin(pi x) below.
    """
    x = float(x)
    if x <= 0.0 and abs(x - round(x)) < 1e-12:
        raise GammaPoleError(f"gamma pole at x={x!r}")
    if x >= 0.5:
        return _gamma_lanczos(x)
    # reflection; sin(pi x) is safe here because x is far from integers
    return math.pi / (math.sin(math.pi * x) * _gamma_lanczos(1.0 - x))


# ---------------------------------------------------------------------------
# Dunkl structural constants
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DunklParams:
    """Multiplicity parameter k >= 0 and the constants attached to it.

    c_k       = 1 / (2^(k+1/2) Gamma(k+1/2))   -- transform normalization
    d_k       = Gamma(k+1/2) / (Gamma(k) Gamma(1/2))  -- intertwining /
                translation weight mass (defined for k > 0 only; None at k=0)
    c_tilde_k = 2^(k+1/2) Gamma(k+1) / Gamma(1/2)     -- Poisson kernel front
    """

    k: float
    c_k: float
    d_k: float | None
    c_tilde_k: float

    @classmethod
    def from_k(cls, k: float) -> "DunklParams":
        k = float(k)
        if k < 0.0:
            raise ValueError("multiplicity k must be >= 0")
        half = gamma(k + 0.5)
        c_k = 1.0 / (2.0 ** (k + 0.5) * half)
        d_k = None
        if k > 0.0:
            d_k = half / (gamma(k) * math.sqrt(math.pi))
        c_tilde = 2.0 ** (k + 0.5) * gamma(k + 1.0) / math.sqrt(math.pi)
        return cls(k=k, c_k=c_k, d_k=d_k, c_tilde_k=c_tilde)


# ---------------------------------------------------------------------------
# Normalized Bessel function j_a
# ---------------------------------------------------------------------------


def _j_series_complex(alpha: float, z: complex, policy: SeriesPolicy) -> complex:
    q = -(z * z) / 4.0
    term: complex = 1.0 + 0.0j
    acc: complex = 1.0 + 0.0j
    for n in range(1, policy.max_terms + 1):
        term = term * q / (n * (n + alpha))
        acc += term
        if abs(term) <= policy.abs_tol * max(1.0, abs(acc)):
            return acc
    raise SeriesConvergenceError(
        f"normalized Bessel series did not converge for alpha={alpha}, z={z}"
    )


def _hankel_pq(alpha: float, u: np.ndarray, max_m: int = 24):
    """P/Q sums of the large-argument Hankel expansion of J_alpha.

    A_m = prod_{i<=m} (4 alpha^2 - (2i-1)^2) / (m! 8^m); the expansion is
    truncated adaptively before the terms start growing.
    """
    P = np.ones_like(u)
    Q = np.zeros_like(u)
    term = np.ones_like(u)
    prev = np.inf
    for m in range(1, max_m):
        ratio = (4.0 * alpha * alpha - (2.0 * m - 1.0) ** 2) / (8.0 * m)
        term = term * ratio / u
        size = float(np.max(np.abs(term))) if term.size else 0.0
        if size >= prev:  # divergent tail reached
            break
        prev = size
        sgn = -1.0 if (m // 2) % 2 else 1.0
        if m % 2 == 1:
            Q = Q + sgn * term
        else:
            P = P + sgn * term
        if size < 1e-18:
            break
    return P, Q


def _j_asymptotic_real(alpha: float, u: np.ndarray) -> np.ndarray:
    """j_alpha(u) for real |u| large, via the Hankel expansion of J_alpha."""
    au = np.abs(u)
    P, Q = _hankel_pq(alpha, au)
    w = au - alpha * math.pi / 2.0 - math.pi / 4.0
    J = np.sqrt(2.0 / (math.pi * au)) * (np.cos(w) * P - np.sin(w) * Q)
    return gamma(alpha + 1.0) * (au / 2.0) ** (-alpha) * J


def _j_asymptotic_imag(alpha: float, v: float) -> float:
    """j_alpha(i v) for real v with |v| large, via the expansion of I_alpha."""
    av = abs(v)
    s1 = 1.0
    s2 = 1.0
    term = 1.0
    prev = np.inf
    for m in range(1, 24):
        ratio = (4.0 * alpha * alpha - (2.0 * m - 1.0) ** 2) / (8.0 * m)
        term = term * ratio / av
        if abs(term) >= prev:
            break
        prev = abs(term)
        s1 += (-1.0) ** m * term
        s2 += term
        if abs(term) < 1e-18:
            break
    front = 1.0 / math.sqrt(2.0 * math.pi * av)
    iv = front * (math.exp(av) * s1 - math.sin(alpha * math.pi) * math.exp(-av) * s2)
    return gamma(alpha + 1.0) * (av / 2.0) ** (-alpha) * iv


def bessel_j_normalized(
    alpha: float, z: complex, policy: SeriesPolicy = DEFAULT_POLICY
) -> complex:
    """Normalized Bessel function j_alpha(z) = Gamma(a+1)(z/2)^-a J_a(z).

    Entire in z, j_alpha(0) = 1.  Power series inside the policy switch
    radius; outside it, asymptotic expansions are available on the real and
    imaginary axes only (general complex large arguments raise
    SeriesConvergenceError).
    """
    if alpha < -0.5:
        raise ValueError("order must satisfy alpha >= -1/2")
    z = complex(z)
    if abs(z) <= policy.switch_radius:
        return _j_series_complex(alpha, z, policy)
    if z.imag == 0.0:
        return complex(_j_asymptotic_real(alpha, np.asarray(abs(z.real))))
    if z.real == 0.0:
        return complex(_j_asymptotic_imag(alpha, z.imag))
    raise SeriesConvergenceError(
        f"no large-|z| route off the axes (alpha={alpha}, z={z})"
    )


def bessel_j_normalized_dz(
    alpha: float, z: complex, policy: SeriesPolicy = DEFAULT_POLICY
) -> complex:
    """d/dz of the normalized Bessel function.

    Uses the exact order-raising identity
    j_alpha'(z) = -z j_{alpha+1}(z) / (2 (alpha + 1)).
    """
    z = complex(z)
    return -z * bessel_j_normalized(alpha + 1.0, z, policy) / (2.0 * (alpha + 1.0))


def j_normalized_real_array(alpha: float, u: np.ndarray) -> np.ndarray:
    """Vectorized j_alpha over a real array (series + asymptotic branches).

    Workhorse for transform matrices: u may be a large 1-d or 2-d array.
    """
    u = np.asarray(u, dtype=float)
    out = np.empty(u.shape, dtype=float)
    au = np.abs(u)
    small = au <= 12.0
    if np.any(small):
        us = u[small]
        q = -(us * us) / 4.0
        term = np.ones_like(us)
        acc = np.ones_like(us)
        for n in range(1, 48):
            term = term * q / (n * (n + alpha))
            acc += term
        out[small] = acc
    if np.any(~small):
        out[~small] = _j_asymptotic_real(alpha, au[~small])
    return out


# ---------------------------------------------------------------------------
# Macdonald function K_nu
# ---------------------------------------------------------------------------


def _k_half_integer(nu: float, x: float) -> float:
    """Closed form for half-integer orders, via upward recurrence from K_1/2."""
    base = math.sqrt(math.pi / (2.0 * x)) * math.exp(-x)
    n = int(round(nu - 0.5))  # K_{n + 1/2}, n >= 0
    k_prev = base                     # K_{1/2}
    if n == 0:
        return k_prev
    k_cur = base * (1.0 + 1.0 / x)    # K_{3/2}
    mu = 1.5
    for _ in range(n - 1):
        k_prev, k_cur = k_cur, k_prev + (2.0 * mu / x) * k_cur
        mu += 1.0
    return k_cur


def _k_asymptotic(mu: float, x: float) -> float:
    """K_mu(x) ~ sqrt(pi/2x) e^-x sum_m A_m(mu)/x^m for large x."""
    acc = 1.0
    term = 1.0
    prev = np.inf
    for m in range(1, 24):
        ratio = (4.0 * mu * mu - (2.0 * m - 1.0) ** 2) / (8.0 * m)
        term = term * ratio / x
        if abs(term) >= prev:
            break
        prev = abs(term)
        acc += term
        if abs(term) < 1e-18:
            break
    return math.sqrt(math.pi / (2.0 * x)) * math.exp(-x) * acc


def _k_series_mpf(mu: float, x: float) -> float:
    """K_mu(x) = (pi/2) (I_{-mu} - I_mu) / sin(mu pi), in 40-digit arithmetic.

    The difference loses ~e^{2x} of relative accuracy, which the extended
    precision absorbs for x below the switch radius.
    """
    with mp.workdps(40):
        xm = mp.mpf(x)
        q = xm * xm / 4

        def ibes(sig):
            t = mp.power(xm / 2, sig) / mp.gamma(sig + 1)
            s = t
            n = 1
            while True:
                t = t * q / (n * (n + sig))
                s += t
                if abs(t) < abs(s) * mp.mpf(10) ** (-45) or n > 400:
                    break
                n += 1
            return s

        m = mp.mpf(mu)
        val = mp.pi / 2 * (ibes(-m) - ibes(m)) / mp.sin(m * mp.pi)
        return float(val)


def bessel_k(nu: float, x: float, policy: SeriesPolicy = DEFAULT_POLICY) -> float:
    """Macdonald (modified Bessel second kind) K_nu(x) for x > 0.

    Even in nu.  Half-integer orders use closed forms; integer orders are
    evaluated at nu +- 1e-6 and averaged (removing the O(eps) term); other
    orders reduce to mu in [-1/2, 1/2) plus upward recurrence, with the
    series-difference route (in extended precision) below the policy switch
    radius and the asymptotic expansion above it.
    """
    if x <= 0.0:
        raise ValueError("bessel_k requires x > 0")
    nu = abs(float(nu))

    if abs(nu - (math.floor(nu) + 0.5)) < 1e-9:
        return _k_half_integer(nu, x)

    if abs(nu - round(nu)) < 1e-9 and x < policy.switch_radius:
        # integer order: the sin(mu pi) denominator degenerates; average the
        # two nearby generic orders.
        eps = 1e-6
        lo = bessel_k(nu - eps if nu >= eps else eps - nu, x, policy)
        hi = bessel_k(nu + eps, x, policy)
        return 0.5 * (lo + hi)

    # reduce the order to mu in [-1/2, 1/2)
    steps = int(math.floor(nu + 0.5))
    mu = nu - steps

    if x >= policy.switch_radius:
        k0 = _k_asymptotic(mu, x)
        k1 = _k_asymptotic(mu + 1.0, x)
    else:
        k0 = _k_series_mpf(mu, x)
        k1 = _k_series_mpf(mu + 1.0, x)

    if steps == 0:
        return k0
    order = mu + 1.0
    for _ in range(steps - 1):
        k0, k1 = k1, k0 + (2.0 * order / x) * k1
        order += 1.0
    return k1


# ---------------------------------------------------------------------------
# vectorized Macdonald function (double precision throughout)
# ---------------------------------------------------------------------------

_EULER_GAMMA = 0.5772156649015329
_ZETA = {2: math.pi**2 / 6.0, 3: 1.2020569031595943,
         4: math.pi**4 / 90.0, 5: 1.0369277551433699,
         6: math.pi**6 / 945.0, 7: 1.0083492773819228}
_K_SERIES_TERMS = 48


def _psi_tables(jmax: int):
    """psi and its derivatives at integer arguments 1..jmax+1."""
    inv = np.arange(1, jmax + 1, dtype=float) ** -1.0
    H = lambda r: np.concatenate([[0.0], np.cumsum(inv**r)])
    psi0 = -_EULER_GAMMA + H(1)
    psi1 = _ZETA[2] - H(2)
    psi2 = -2.0 * _ZETA[3] + 2.0 * H(3)
    psi3 = 6.0 * _ZETA[4] - 6.0 * H(4)
    psi4 = -24.0 * _ZETA[5] + 24.0 * H(5)
    psi5 = 120.0 * _ZETA[6] - 120.0 * H(6)
    psi6 = -720.0 * _ZETA[7] + 720.0 * H(7)
    return psi0, psi1, psi2, psi3, psi4, psi5, psi6


_PSI = _psi_tables(_K_SERIES_TERMS + 4)


def _k_half_integer_array(nu: float, x: np.ndarray) -> np.ndarray:
    base = np.sqrt(math.pi / (2.0 * x)) * np.exp(-x)
    n = int(round(nu - 0.5))
    k_prev = base
    if n == 0:
        return k_prev
    k_cur = base * (1.0 + 1.0 / x)
    mu = 1.5
    for _ in range(n - 1):
        k_prev, k_cur = k_cur, k_prev + (2.0 * mu / x) * k_cur
        mu += 1.0
    return k_cur


def _k_asymptotic_array(s: float, x: np.ndarray) -> np.ndarray:
    acc = np.ones_like(x)
    term = np.ones_like(x)
    prev = np.full_like(x, np.inf)
    frozen = np.zeros_like(x, dtype=bool)
    for m in range(1, 40):
        term = term * ((4.0 * s * s - (2.0 * m - 1.0) ** 2) / (8.0 * m)) / x
        frozen |= np.abs(term) >= prev
        live = ~frozen
        if not np.any(live):
            break
        acc[live] += term[live]
        prev = np.abs(term)
        if np.max(prev[live]) < 1e-18:
            break
    return np.sqrt(math.pi / (2.0 * x)) * np.exp(-x) * acc


_K_COSH_STEP = 0.04
_K_COSH_T = np.arange(0.0, 7.2 + _K_COSH_STEP, _K_COSH_STEP)


def _k_cosh_integral_array(s: float, x: np.ndarray) -> np.ndarray:
    """K_s(x) = int_0^inf e^{-x cosh t} cosh(s t) dt by trapezoid.

    The integrand is even in t with double-exponential decay, so the
    trapezoid rule converges spectrally; used on the midrange where both
    power series (cancellation ~ e^{2x}) and asymptotics lose digits.
    """
    t = _K_COSH_T
    expo = -np.cosh(t)[None, :] * x[:, None]
    vals = np.exp(np.clip(expo, -745.0, 50.0)) * np.cosh(s * t)[None, :]
    return _K_COSH_STEP * (vals.sum(axis=1) - 0.5 * (vals[:, 0] + vals[:, -1]))


def _k_series_direct_array(s: float, x: np.ndarray) -> np.ndarray:
    """K_s = (pi/2)(I_{-s} - I_s)/sin(s pi), safe when s is >= 0.016 from
    the integers (doubles lose ~e^{2x}, harmless below the switch at 2)."""
    q = x * x / 4.0

    def ibes(t):
        term = (x / 2.0) ** t / gamma(t + 1.0)
        acc = term.copy()
        for j in range(1, _K_SERIES_TERMS):
            term = term * q / (j * (j + t))
            acc += term
        return acc

    return math.pi / 2.0 * (ibes(-s) - ibes(s)) / math.sin(s * math.pi)


def _k_series_near_integer_array(s: float, x: np.ndarray) -> np.ndarray:
    """K_{n+mu} for small |mu|, with the integer-order cancellation removed.

    Rearranging the I-difference gives

        K = 1/2 sum_{m<n} (-1)^m Gamma(n-m+mu) (x/2)^{2m-n-mu} / m!
            + (-1)^n (pi/sin(mu pi)) sum_j (x/2)^{2j+n} e^{-M_j}
              sinh(D_j - mu log(x/2)),

    where D_j and M_j collect log-Gamma Taylor data at integer arguments;
    sinh(mu ...)/sin(mu pi) is numerically stable uniformly in mu.
    """
    n = int(round(s))
    mu = s - n
    if mu == 0.0:
        mu = 1e-300  # exact integer: the sinh/sin ratio then hits its limit
    L = np.log(x / 2.0)
    psi0, psi1, psi2, psi3, psi4, psi5, psi6 = _PSI

    finite = np.zeros_like(x)
    for m in range(n):
        finite += ((-1.0) ** m * gamma(n - m + mu) / math.factorial(m)
                   * (x / 2.0) ** (2 * m - n - mu))

    q = x * x / 4.0
    qpow = (x / 2.0) ** n
    acc = np.zeros_like(x)
    for j in range(_K_SERIES_TERMS):
        a, b = j + n, j  # psi tables are indexed so entry i is psi(i+1)
        dsum = 0.5 * (mu * (psi0[a] + psi0[b])
                      + mu**2 * (psi1[a] - psi1[b]) / 2.0
                      + mu**3 * (psi2[a] + psi2[b]) / 6.0
                      + mu**4 * (psi3[a] - psi3[b]) / 24.0
                      + mu**5 * (psi4[a] + psi4[b]) / 120.0
                      + mu**6 * (psi5[a] - psi5[b]) / 720.0
                      + mu**7 * (psi6[a] + psi6[b]) / 5040.0)
        msum = (math.lgamma(a + 1.0) + math.lgamma(b + 1.0)
                + 0.5 * (mu * (psi0[a] - psi0[b])
                         + mu**2 * (psi1[a] + psi1[b]) / 2.0
                         + mu**3 * (psi2[a] - psi2[b]) / 6.0
                         + mu**4 * (psi3[a] + psi3[b]) / 24.0
                         + mu**5 * (psi4[a] - psi4[b]) / 120.0
                         + mu**6 * (psi5[a] + psi5[b]) / 720.0
                         + mu**7 * (psi6[a] - psi6[b]) / 5040.0))
        acc += qpow * np.exp(-msum) * np.sinh(dsum - mu * L)
        qpow = qpow * q
    return 0.5 * finite + (-1.0) ** n * math.pi / math.sin(mu * math.pi) * acc


def _k_order_array(s: float, x: np.ndarray) -> np.ndarray:
    """K_s on an array: series below 2, cosh integral on [2, 12), asymptotic
    expansion above (s >= 0)."""
    out = np.empty_like(x)
    big = x >= 12.0
    mid = (x >= 2.0) & ~big
    small = x < 2.0
    if np.any(big):
        out[big] = _k_asymptotic_array(s, x[big])
    if np.any(mid):
        out[mid] = _k_cosh_integral_array(s, x[mid])
    if np.any(small):
        if abs(s - round(s)) < 0.016:
            out[small] = _k_series_near_integer_array(s, x[small])
        else:
            out[small] = _k_series_direct_array(s, x[small])
    return out


def bessel_k_array(nu: float, x: np.ndarray) -> np.ndarray:
    """Vectorized Macdonald function K_nu over an array of positive x.

    Pure double precision: half-integer orders use closed forms; otherwise
    power series below x = 2 (cancellation-free rearrangement near integer
    orders), the cosh-integral trapezoid on [2, 12), and the asymptotic
    expansion above.  Relative accuracy ~1e-12 across orders |nu| <= ~4.
    """
    x = np.asarray(x, dtype=float)
    if np.any(x <= 0.0):
        raise ValueError("bessel_k_array requires x > 0")
    nu = abs(float(nu))
    if abs(nu - (math.floor(nu) + 0.5)) < 1e-9:
        return _k_half_integer_array(nu, x)
    steps = int(math.floor(nu + 0.5))
    mu = nu - steps
    k0 = _k_order_array(abs(mu), x)
    k1 = _k_order_array(mu + 1.0, x)
    if steps == 0:
        return k0
    order = mu + 1.0
    for _ in range(steps - 1):
        k0, k1 = k1, k0 + (2.0 * order / x) * k1
        order += 1.0
    return k1


# ---------------------------------------------------------------------------
# Dunkl kernel E_k
# ---------------------------------------------------------------------------


def dunkl_kernel(
    params: DunklParams, lam: complex, x: float, policy: SeriesPolicy = DEFAULT_POLICY
) -> complex:
    """Dunkl kernel E_k(lambda, x).

    E_k(lambda, x) = j_{k-1/2}(i lambda x)
                     + lambda x / (2k+1) * j_{k+1/2}(i lambda x)

    Symmetric in (lambda, x); E_0(lambda, x) = exp(lambda x); eigenfunction
    of the Dunkl operator: D_k E_k(lambda, .) = lambda E_k(lambda, .).
    """
    lam = complex(lam)
    z = 1j * lam * x
    k = params.k
    even = bessel_j_normalized(k - 0.5, z, policy)
    odd = lam * x / (2.0 * k + 1.0) * bessel_j_normalized(k + 0.5, z, policy)
    return even + odd


def dunkl_kernel_dx(
    params: DunklParams, lam: complex, x: float, policy: SeriesPolicy = DEFAULT_POLICY
) -> complex:
    """Partial derivative in x of the Dunkl kernel, via exact series identities.

    With a = k-1/2, b = k+1/2 and z = i lambda x:

        d/dx E = lambda^2 x j_b(z)/(2k+1) + lambda j_b(z)/(2k+1)
                 + lambda^3 x^2 j_{b+1}(z) / ((2k+1)(2k+3))

    (each term from j_a'(z) = -z j_{a+1}(z)/(2(a+1))).
    """
    lam = complex(lam)
    k = params.k
    z = 1j * lam * x
    jb = bessel_j_normalized(k + 0.5, z, policy)
    jb1 = bessel_j_normalized(k + 1.5, z, policy)
    t1 = lam * lam * x * jb / (2.0 * k + 1.0)
    t2 = lam * jb / (2.0 * k + 1.0)
    t3 = lam**3 * x * x * jb1 / ((2.0 * k + 1.0) * (2.0 * k + 3.0))
    return t1 + t2 + t3
