"""Curvature-indexed model coefficients and weights.

Everything here is built from two scalar families, the generalized cosine
and sine

    c_k(t) = cos(sqrt(k) t) | 1 | cosh(sqrt(-k) t)        (k > 0 | = 0 | < 0)
    s_k(t) = sin(sqrt(k) t)/sqrt(k) | t | sinh(sqrt(-k) t)/sqrt(-k)

which solve y'' + k y = 0 with (c, c')(0) = (1, 0) and (s, s')(0) = (0, 1).
Derived quantities:

    t_kappa(k, t)           = -c_k'(t)/c_k(t) = sqrt(k) tan(sqrt(k) t), continued
                              through k <= 0; the tangent-type drift coefficient.
    big_c(k, L, t)          = c_k(t) - L s_k(t); solves y'' + k y = 0 with
                              y(0) = 1, y'(0) = -L (boundary-curvature profile).
    t_kappa_lambda(k, L, t) = -big_c'/big_c; drift of the boundary family.

Weights are products of these factors: the interior (Neumann) weight
c_{k2}^{2m-2} c_{4 k1} and its boundary (Dirichlet) analogue with big_c
factors.  All functions are branch-safe in the curvature argument: near
k = 0 the tangent and sine families switch to truncated power series in
u = k t^2 so that values vary smoothly across the sign change.

Scalars broadcast over array `t` arguments; curvature arguments are scalars.
Pure functions, safe for concurrent use.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, InvalidDimension

__all__ = [
    "CurvatureParams",
    "t_kappa",
    "c_kappa",
    "s_kappa",
    "big_c",
    "big_c_prime",
    "big_c_second",
    "t_kappa_lambda",
    "first_zero",
    "drift_kahler",
    "weight_kahler",
    "weight_kahler_radius",
    "drift_dirichlet",
    "weight_dirichlet",
    "weight_dirichlet_radius",
    "weight_riemannian",
    "weight_riemannian_radius",
    "weight_riemannian_dirichlet",
    "weight_riemannian_dirichlet_radius",
]

# Below |k| t^2 < SERIES_THRESHOLD the tan/tanh and sin/sinh branch formulas
# lose relative accuracy to cancellation against the k -> 0 limit, so the
# series in u = k t^2 is used instead.
SERIES_THRESHOLD = 1e-6


@dataclass(frozen=True)
class CurvatureParams:
    """Curvature data (m, kappa1, kappa2) for the interior model problem.

    m is the complex dimension; kappa1 bounds the holomorphic sectional
    curvature from below by 4*kappa1 and kappa2 bounds the orthogonal Ricci
    curvature from below by 2(m-1)*kappa2.  At m = 1 the kappa2 channel is
    inert (its coefficient 2(m-1) vanishes).
    """

    m: int
    kappa1: float
    kappa2: float = 0.0

    def __post_init__(self):
        if self.m < 1 or int(self.m) != self.m:
            raise InvalidDimension(f"complex dimension m must be a positive integer, got {self.m}")
        for name in ("kappa1", "kappa2"):
            if not math.isfinite(getattr(self, name)):
                raise DomainError(f"{name} must be finite")


def _eval(t, fn):
    """Apply `fn` to t as a float array, returning a scalar for scalar input."""
    arr = np.asarray(t, dtype=float)
    out = fn(arr)
    if arr.ndim == 0:
        return float(out)
    return out


def t_kappa(kappa: float, t):
    """Tangent-type coefficient sqrt(k) tan(sqrt(k) t), continued through k <= 0.

    Equals -c_k'(t)/c_k(t).  Odd in t.  For k > 0 the domain is
    |t| < pi/(2 sqrt(k)); outside it a DomainError is raised.
    """

    def f(arr):
        if kappa > 0:
            half = 0.5 * math.pi / math.sqrt(kappa)
            if np.any(np.abs(arr) >= half):
                raise DomainError(
                    f"t_kappa with kappa={kappa} requires |t| < pi/(2 sqrt(kappa)) = {half}"
                )
        if kappa == 0.0:
            return np.zeros_like(arr)
        u = kappa * arr * arr
        # series for t_kappa / t in powers of u = k t^2
        series = kappa * arr * (1.0 + u / 3.0 + u * u * (2.0 / 15.0) + u**3 * (17.0 / 315.0))
        if kappa > 0:
            root = math.sqrt(kappa)
            branch = root * np.tan(root * arr)
        else:
            root = math.sqrt(-kappa)
            branch = -root * np.tanh(root * arr)
        return np.where(np.abs(u) < SERIES_THRESHOLD, series, branch)

    return _eval(t, f)


def c_kappa(kappa: float, t):
    """Generalized cosine: cos(sqrt(k) t) | 1 | cosh(sqrt(-k) t).  Even; c_k(0)=1."""

    def f(arr):
        if kappa > 0:
            return np.cos(math.sqrt(kappa) * arr)
        if kappa < 0:
            return np.cosh(math.sqrt(-kappa) * arr)
        return np.ones_like(arr)

    return _eval(t, f)


def s_kappa(kappa: float, t):
    """Generalized sine: sin(sqrt(k) t)/sqrt(k) | t | sinh(sqrt(-k) t)/sqrt(-k).

    Odd; s_k'(0) = 1.  Branch-safe near k = 0 via the series in u = k t^2.
    """

    def f(arr):
        if kappa == 0.0:
            return arr.copy()
        u = kappa * arr * arr
        series = arr * (1.0 - u / 6.0 + u * u / 120.0 - u**3 / 5040.0)
        if kappa > 0:
            root = math.sqrt(kappa)
            branch = np.sin(root * arr) / root
        else:
            root = math.sqrt(-kappa)
            branch = np.sinh(root * arr) / root
        return np.where(np.abs(u) < SERIES_THRESHOLD, series, branch)

    return _eval(t, f)


def big_c(kappa: float, lam: float, t):
    """Boundary-curvature profile: solves y'' + kappa y = 0, y(0)=1, y'(0)=-lam.

    Closed form c_kappa(t) - lam * s_kappa(t).
    """
    return c_kappa(kappa, t) - lam * s_kappa(kappa, t)


def big_c_prime(kappa: float, lam: float, t):
    """Exact derivative of big_c: -kappa*s_kappa(t) - lam*c_kappa(t)."""
    return -kappa * s_kappa(kappa, t) - lam * c_kappa(kappa, t)


def big_c_second(kappa: float, lam: float, t):
    """Exact second derivative of big_c, i.e. -kappa * big_c."""
    return -kappa * big_c(kappa, lam, t)


def first_zero(kappa: float, lam: float) -> float:
    """Smallest t > 0 where big_c(kappa, lam, t) vanishes, or +inf if none.

    Closed form per curvature sign: for kappa > 0 the profile is sinusoidal
    and always vanishes; for kappa = 0 it is the line 1 - lam*t; for
    kappa < 0 it vanishes only when lam exceeds sqrt(-kappa).
    """
    if kappa > 0:
        root = math.sqrt(kappa)
        if lam > 0:
            # atan(root/lam) = pi/2 - atan(lam/root), stable as kappa -> 0+
            return math.atan(root / lam) / root
        return (0.5 * math.pi + math.atan(-lam / root)) / root
    if kappa == 0.0:
        return 1.0 / lam if lam > 0 else math.inf
    root = math.sqrt(-kappa)
    if lam > root:
        return math.atanh(root / lam) / root
    return math.inf


def t_kappa_lambda(kappa: float, lam: float, t):
    """Drift of the boundary family: -big_c'(t)/big_c(t) on 0 <= t < first_zero.

    Reduces to t_kappa when lam = 0.  Raises DomainError at or beyond the
    first zero of the profile, where the quotient is undefined.
    """
    zero = first_zero(kappa, lam)

    def f(arr):
        if np.any(arr < 0.0):
            raise DomainError("t_kappa_lambda requires t >= 0")
        if np.any(arr >= zero):
            raise DomainError(
                f"t_kappa_lambda undefined at/beyond the first profile zero t = {zero}"
            )
        return -np.asarray(big_c_prime(kappa, lam, arr)) / np.asarray(big_c(kappa, lam, arr))

    return _eval(t, f)


# ---------------------------------------------------------------------------
# Composite drifts and weights


def drift_kahler(params: CurvatureParams, t):
    """Interior drift 2(m-1) t_kappa(kappa2, t) + t_kappa(4 kappa1, t)."""
    out = t_kappa(4.0 * params.kappa1, t)
    if params.m > 1:
        out = out + 2.0 * (params.m - 1) * t_kappa(params.kappa2, t)
    return out


def weight_kahler_radius(params: CurvatureParams) -> float:
    """Positivity radius of the interior weight (half the maximal diameter)."""
    rad = math.inf
    if params.kappa1 > 0:
        rad = 0.25 * math.pi / math.sqrt(params.kappa1)
    if params.m > 1 and params.kappa2 > 0:
        rad = min(rad, 0.5 * math.pi / math.sqrt(params.kappa2))
    return rad


def weight_kahler(params: CurvatureParams, t):
    """Interior weight c_{kappa2}^{2m-2} c_{4 kappa1}; positive inside its radius.

    The logarithmic derivative is -drift_kahler.  Raises DomainError where
    either factor is non-positive.
    """
    rad = weight_kahler_radius(params)

    def f(arr):
        if np.any(np.abs(arr) >= rad):
            raise DomainError(
                f"weight_kahler positive only for |t| < {rad} with parameters {params}"
            )
        out = np.asarray(c_kappa(4.0 * params.kappa1, arr))
        if params.m > 1:
            out = out * np.asarray(c_kappa(params.kappa2, arr)) ** (2 * params.m - 2)
        return out

    return _eval(t, f)


def drift_dirichlet(params: CurvatureParams, lam: float, t):
    """Boundary drift 2(m-1) t_kappa_lambda(kappa2, lam, t) + t_kappa_lambda(4 kappa1, lam, t)."""
    out = t_kappa_lambda(4.0 * params.kappa1, lam, t)
    if params.m > 1:
        out = out + 2.0 * (params.m - 1) * t_kappa_lambda(params.kappa2, lam, t)
    return out


def weight_dirichlet_radius(params: CurvatureParams, lam: float) -> float:
    """Validity radius of the boundary weight: smallest first zero among factors."""
    rad = first_zero(4.0 * params.kappa1, lam)
    if params.m > 1:
        rad = min(rad, first_zero(params.kappa2, lam))
    return rad


def weight_dirichlet(params: CurvatureParams, lam: float, t):
    """Boundary weight big_c_{kappa2}^{2m-2} big_c_{4 kappa1}; lam = 0 recovers weight_kahler.

    Defined for 0 <= t < weight_dirichlet_radius; log-derivative is
    -drift_dirichlet.
    """
    rad = weight_dirichlet_radius(params, lam)

    def f(arr):
        if np.any(arr < 0.0):
            raise DomainError("weight_dirichlet requires t >= 0")
        if np.any(arr >= rad):
            raise DomainError(
                f"weight_dirichlet positive only for t < {rad} with parameters {params}, lam={lam}"
            )
        out = np.asarray(big_c(4.0 * params.kappa1, lam, arr))
        if params.m > 1:
            out = out * np.asarray(big_c(params.kappa2, lam, arr)) ** (2 * params.m - 2)
        return out

    return _eval(t, f)


def _check_real_dim(n: int):
    if n < 2 or int(n) != n:
        raise InvalidDimension(f"real dimension n must be an integer >= 2, got {n}")


def weight_riemannian_radius(n: int, kappa: float) -> float:
    """Positivity radius of c_kappa^{n-1}."""
    _check_real_dim(n)
    if kappa > 0:
        return 0.5 * math.pi / math.sqrt(kappa)
    return math.inf


def weight_riemannian(n: int, kappa: float, t):
    """Real-dimension-n interior weight c_kappa^{n-1}."""
    rad = weight_riemannian_radius(n, kappa)

    def f(arr):
        if np.any(np.abs(arr) >= rad):
            raise DomainError(f"weight positive only for |t| < {rad} with kappa={kappa}")
        return np.asarray(c_kappa(kappa, arr)) ** (n - 1)

    return _eval(t, f)


def weight_riemannian_dirichlet_radius(n: int, kappa: float, lam: float) -> float:
    """Validity radius of big_c^{n-1}: the first zero of the profile."""
    _check_real_dim(n)
    return first_zero(kappa, lam)


def weight_riemannian_dirichlet(n: int, kappa: float, lam: float, t):
    """Real-dimension-n boundary weight big_c_{kappa,lam}^{n-1} on [0, first_zero)."""
    rad = first_zero(kappa, lam)

    def f(arr):
        if np.any(arr < 0.0):
            raise DomainError("boundary weight requires t >= 0")
        if np.any(arr >= rad):
            raise DomainError(f"weight positive only for t < {rad} (kappa={kappa}, lam={lam})")
        return np.asarray(big_c(kappa, lam, arr)) ** (n - 1)

    return _eval(t, f)
