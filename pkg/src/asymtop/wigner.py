"""Wigner D-functions on SO(3) in the z-x-z convention.

D^j_{mn}(g) = e^{i(m phi + n psi)} d^j_{mn}(theta) with

    d^j_{mn}(theta) = (-1)^{m-n} sqrt((j+m)!(j-m)!/((j+n)!(j-n)!))
                      * sin^{m-n}(theta/2) cos^{m+n}(theta/2)
                      * P^{(m-n, m+n)}_{j-m}(cos theta).

The closed form is evaluated directly for m >= |n| and extended elsewhere by
the symmetries d_{mn} = (-1)^{m-n} d_{nm} = d_{-n,-m}.  Factorial ratios go
through log-gamma so j up to ~50 keeps full relative precision.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import DimensionError, DomainError
from .so3 import EulerAngles, HaarRule


def jacobi_poly(k: int, alpha: float, beta: float, z: float) -> float:
    """Jacobi polynomial P_k^{(alpha,beta)}(z) by the three-term recurrence."""
    if k < 0:
        raise DomainError("polynomial degree must be >= 0")
    p_prev = 1.0
    if k == 0:
        return p_prev
    p = (alpha + 1.0) + (alpha + beta + 2.0) * (z - 1.0) / 2.0
    for n in range(2, k + 1):
        ab = alpha + beta
        c1 = 2.0 * n * (n + ab) * (2.0 * n + ab - 2.0)
        c2 = (2.0 * n + ab - 1.0) * ((2.0 * n + ab) * (2.0 * n + ab - 2.0) * z + alpha * alpha - beta * beta)
        c3 = 2.0 * (n + alpha - 1.0) * (n + beta - 1.0) * (2.0 * n + ab)
        p, p_prev = (c2 * p - c3 * p_prev) / c1, p
    return p


def _fact_ratio_sqrt(j: int, m: int, n: int) -> float:
    # sqrt((j+m)!(j-m)! / ((j+n)!(j-n)!))
    return math.exp(
        0.5
        * (
            math.lgamma(j + m + 1)
            + math.lgamma(j - m + 1)
            - math.lgamma(j + n + 1)
            - math.lgamma(j - n + 1)
        )
    )


def _small_d_direct(j: int, m: int, n: int, theta: float) -> float:
    # valid for m - n >= 0 and m + n >= 0
    half = 0.5 * theta
    sign = -1.0 if (m - n) % 2 else 1.0
    return (
        sign
        * _fact_ratio_sqrt(j, m, n)
        * math.sin(half) ** (m - n)
        * math.cos(half) ** (m + n)
        * jacobi_poly(j - m, m - n, m + n, math.cos(theta))
    )


def wigner_small_d(j: int, m: int, n: int, theta: float) -> float:
    """Reduced matrix element d^j_{mn}(theta)."""
    if j < 0:
        raise DomainError("j must be >= 0")
    if abs(m) > j or abs(n) > j:
        raise DomainError(f"|m|, |n| must be <= j={j}")
    if m >= abs(n):
        return _small_d_direct(j, m, n, theta)
    if n >= abs(m):
        sign = -1.0 if (m - n) % 2 else 1.0
        return sign * _small_d_direct(j, n, m, theta)
    if -m >= abs(n):
        sign = -1.0 if (m - n) % 2 else 1.0
        return sign * _small_d_direct(j, -m, -n, theta)
    return _small_d_direct(j, -n, -m, theta)


def wigner_D(j: int, m: int, n: int, g: EulerAngles) -> complex:
    """Matrix element D^j_{mn}(g) = e^{i(m phi + n psi)} d^j_{mn}(theta)."""
    return np.exp(1j * (m * g.phi + n * g.psi)) * wigner_small_d(j, m, n, g.theta)


def wigner_d_matrix(j: int, theta: float) -> np.ndarray:
    """Full (2j+1)x(2j+1) real matrix d^j(theta), rows/cols n = -j..j."""
    dim = 2 * j + 1
    out = np.empty((dim, dim))
    for m in range(-j, j + 1):
        for n in range(-j, j + 1):
            out[m + j, n + j] = wigner_small_d(j, m, n, theta)
    return out


def wigner_D_matrix(j: int, g: EulerAngles) -> np.ndarray:
    """Full D^j(g) matrix, rows/cols n = -j..j ascending."""
    n = np.arange(-j, j + 1)
    return (
        np.exp(1j * n * g.phi)[:, None]
        * wigner_d_matrix(j, g.theta)
        * np.exp(1j * n * g.psi)[None, :]
    )


def wigner_gram(j: int, jt: int, rule: HaarRule) -> np.ndarray:
    """Haar-quadrature Gram tensor G[m, n, mt, nt] of conj(D^j) with D^jt.

    Equals delta_{j,jt} delta_{m,mt} delta_{n,nt} / (2j+1) when the rule is
    exact at max(j, jt).
    """
    if rule.degree < max(j, jt):
        raise DomainError(
            f"rule of degree {rule.degree} cannot integrate j={j}, jt={jt} products"
        )
    thetas, inv = np.unique(rule.theta, return_inverse=True)
    d_j = np.stack([wigner_d_matrix(j, t) for t in thetas])[inv]
    d_jt = d_j if jt == j else np.stack([wigner_d_matrix(jt, t) for t in thetas])[inv]

    n_j = np.arange(-j, j + 1)
    n_jt = np.arange(-jt, jt + 1)
    dj = np.exp(1j * np.outer(rule.phi, n_j))[:, :, None] * d_j
    dj = dj * np.exp(1j * np.outer(rule.psi, n_j))[:, None, :]
    djt = np.exp(1j * np.outer(rule.phi, n_jt))[:, :, None] * d_jt
    djt = djt * np.exp(1j * np.outer(rule.psi, n_jt))[:, None, :]

    return np.einsum("k,kmn,kpq->mnpq", rule.weights, dj.conj(), djt)


def unitarity_defect(j: int, theta_values: np.ndarray) -> float:
    """Max deviation of sum_n conj(D_{mn}) D_{mt n} from delta_{m mt}."""
    worst = 0.0
    for theta in np.atleast_1d(theta_values):
        d = wigner_d_matrix(j, float(theta))
        worst = max(worst, float(np.max(np.abs(d @ d.T - np.eye(2 * j + 1)))))
    return worst


def check_dimension(j: int, vec: np.ndarray) -> np.ndarray:
    """Validate a length-(2j+1) coefficient vector; returns it as complex."""
    arr = np.asarray(vec, dtype=complex)
    if arr.shape != (2 * j + 1,):
        raise DimensionError(f"expected shape ({2 * j + 1},), got {arr.shape}")
    return arr
