"""Asymmetric-top spectra by three independent routes.

The Hamiltonian H = A L1^2 + B L2^2 + C L3^2 with A >= B >= C > 0 has, for
each integer j, exactly 2j+1 levels E_{j,s}.  This module computes them by

  * diagonalizing the pentadiagonal matrix A J1^2 + B J2^2 + C J3^2 built
    from standard spin-j matrices (route "wigner"),
  * diagonalizing the Gram-symmetrized matrix of A(-il1)^2 + B(-il2)^2
    + C(-il3)^2 acting on trigonometric polynomials (route "lambda"),
  * finding the roots of the termination conditions of four generalized
    Lame series (route "lame"),

and constructs the eigenstates Phi_{j,s} normalized to (Phi,Phi)_Q = 2j+1.

The Lame route works on the cubic P(rho) = (rho-A)(rho-B)(rho-C).  With
x = rho - B, u = A - B, v = B - C, a solution of

    4 P(rho) L'' + 2 P'(rho) L' - j(j+1) rho L + E L = 0

is sought as L = (x-u)^a (x+v)^c sum_k s_k x^(p-k) where the exponent pair
(a, c) runs over {0, 1/2}^2 (classes 1..4) and p is the root of the
indicial polynomial.  Substitution gives the three-term recurrence

    alpha(p-k) s_k + beta(p-k+1) s_{k-1} + gamma(p-k+2) s_{k-2} = 0

with beta(t) = E + b(t); the terminating energies are the eigenvalues of a
tridiagonal companion matrix of size K_N: (j//2+1, ceil(j/2), ceil(j/2),
j//2) for N = 1..4, which sum to 2j+1.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .errors import (
    DegeneracyWarning,
    DegenerateParamsError,
    DomainError,
    NotTerminatingError,
    PoleError,
    RootCountError,
    ToleranceError,
)
from .lambda_rep import ComplexQ, FourierState, ell_matrix, weight_vector

ROUTES = ("wigner", "lambda", "lame")


@dataclass(frozen=True)
class TopParams:
    """Inverse-moment parameters A >= B >= C > 0 of the top."""

    A: float
    B: float
    C: float

    def __post_init__(self):
        if not (np.isfinite(self.A) and np.isfinite(self.B) and np.isfinite(self.C)):
            raise DomainError("parameters must be finite")
        if not (self.A >= self.B >= self.C > 0):
            raise DomainError(
                f"need A >= B >= C > 0, got A={self.A}, B={self.B}, C={self.C}"
            )

    @property
    def u(self) -> float:
        return self.A - self.B

    @property
    def v(self) -> float:
        return self.B - self.C


@dataclass(frozen=True)
class EnergyLevel:
    j: int
    s: int
    E: float
    route: str
    lame_class: int | None = None


@dataclass(frozen=True)
class LameSeries:
    """Terminating series solution of one class.

    evaluate() returns L(rho) = (rho-A)^a (rho-C)^c sum_k s_k (rho-B)^(p-k)
    with principal complex powers.
    """

    j: int
    lame_class: int
    E: float
    exponents: tuple[float, float]  # (a, c)
    power: float  # leading exponent p
    coeffs: np.ndarray  # s_0..s_{K-1}, s_0 = 1
    params: "TopParams"


def require_strict(p: TopParams) -> None:
    """Reject parameter sets where the elliptic construction degenerates."""
    if p.u < 1e-9 * p.A or p.v < 1e-9 * p.A:
        raise DegenerateParamsError(
            f"need strict A > B > C; gaps ({p.u:.3e}, {p.v:.3e}) below 1e-9*A"
        )


def angular_momentum_matrices(j: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Spin-j matrices with [J1,J2] = iJ3 cyclic on the basis n = j..-j.

    J3 = diag(j..-j); J2 is the real symmetric ladder matrix; J1 the
    imaginary antisymmetric one.
    """
    if j < 0:
        raise DomainError("j must be >= 0")
    m = np.arange(j, -j - 1, -1, dtype=float)
    c = np.sqrt(j * (j + 1) - m[:-1] * m[1:])
    J3 = np.diag(m).astype(complex)
    J2 = (np.diag(c, 1) + np.diag(c, -1)).astype(complex) / 2.0
    J1 = (np.diag(1j * c, 1) + np.diag(-1j * c, -1)) / 2.0
    return J1, J2, J3


def h_matrix_wigner(j: int, p: TopParams) -> np.ndarray:
    J1, J2, J3 = angular_momentum_matrices(j)
    return p.A * J1 @ J1 + p.B * J2 @ J2 + p.C * J3 @ J3


def _h_lambda_ode(j: int, p: TopParams) -> np.ndarray:
    # Fourier image of the reduced one-variable operator: e^{inq} couples
    # only to n, n+-2.
    dim = 2 * j + 1
    out = np.zeros((dim, dim), dtype=complex)
    for n in range(-j, j + 1):
        k = n + j
        out[k, k] = 0.5 * (p.A + p.B) * (j * (j + 1) - n * n) + p.C * n * n
        if n + 2 <= j:
            out[k + 2, k] = 0.25 * (p.A - p.B) * (j - n) * (j - n - 1)
        if n - 2 >= -j:
            out[k - 2, k] = 0.25 * (p.A - p.B) * (j + n) * (j + n - 1)
    return out


def h_matrix_lambda(j: int, p: TopParams) -> np.ndarray:
    """Matrix of A(-il1)^2 + B(-il2)^2 + C(-il3)^2 on the e^{inq} basis.

    Built twice, from generator products and from the explicit ODE
    coefficients; the constructions must coincide.
    """
    ms = [-1j * ell_matrix(a, j) for a in (1, 2, 3)]
    from_ops = p.A * ms[0] @ ms[0] + p.B * ms[1] @ ms[1] + p.C * ms[2] @ ms[2]
    from_ode = _h_lambda_ode(j, p)
    scale = max(1.0, float(np.abs(from_ode).max()))
    defect = float(np.abs(from_ops - from_ode).max())
    if defect > 1e-12 * scale:
        raise ToleranceError(
            f"operator-product and ODE constructions disagree by {defect:.3e}"
        )
    return from_ode


def h_matrix_lambda_symmetrized(j: int, p: TopParams) -> np.ndarray:
    """G^(1/2) M G^(-1/2): real symmetric, same spectrum as h_matrix_lambda."""
    m = h_matrix_lambda(j, p).real
    root_b = np.sqrt(weight_vector(j))
    sym = m * root_b[None, :] / root_b[:, None]
    return (sym + sym.T) / 2.0


def spectrum(j: int, p: TopParams, route: str = "wigner") -> list[EnergyLevel]:
    """All 2j+1 levels, ascending, labeled s = -j..j."""
    if route not in ROUTES:
        raise DomainError(f"route must be one of {ROUTES}, got {route!r}")
    if route == "lame":
        return lame_spectrum(j, p)
    if route == "wigner":
        vals = np.linalg.eigvalsh(h_matrix_wigner(j, p))
    else:
        vals = np.linalg.eigvalsh(h_matrix_lambda_symmetrized(j, p))
    return [
        EnergyLevel(j=j, s=s, E=float(E), route=route)
        for s, E in zip(range(-j, j + 1), vals)
    ]


# --- Lame recurrence ---------------------------------------------------

_CLASS_EXPONENTS = {1: (0.0, 0.0), 2: (0.5, 0.0), 3: (0.0, 0.5), 4: (0.5, 0.5)}


def _class_size(N: int, j: int) -> int:
    if N == 1:
        return j // 2 + 1
    if N in (2, 3):
        return (j + 1) // 2
    return j // 2


def _leading_power(N: int, j: int) -> float:
    if N == 1:
        return j / 2.0
    if N in (2, 3):
        return (j - 1) / 2.0
    return j / 2.0 - 1.0


def _alpha(t: float, a: float, c: float, j: int) -> float:
    return 4 * t * t + (2 + 8 * a + 8 * c) * t + 8 * a * c + 4 * a + 4 * c - j * (j + 1)


def _beta_no_e(t: float, a: float, c: float, j: int, p: TopParams) -> float:
    u, v = p.u, p.v
    return (
        4 * t * (t - 1) * (v - u)
        + t * (4 * (v - u) + 8 * a * v - 8 * c * u)
        + 2 * a * v
        - 2 * c * u
        - j * (j + 1) * p.B
    )


def _gamma(t: float, p: TopParams) -> float:
    return -2.0 * p.u * p.v * t * (2 * t - 1)


def lame_recurrence(N: int, j: int, p: TopParams) -> np.ndarray:
    """Companion matrix of the class-N termination condition.

    The K equations of the truncated recurrence are linear in E; written as
    T s = E s they make the admissible energies the eigenvalues of the
    returned K x K tridiagonal matrix (K may be 0).
    """
    if N not in _CLASS_EXPONENTS:
        raise DomainError(f"class must be 1..4, got {N}")
    if j < 0:
        raise DomainError("j must be >= 0")
    require_strict(p)
    a, c = _CLASS_EXPONENTS[N]
    K = _class_size(N, j)
    pw = _leading_power(N, j)
    T = np.zeros((K, K))
    for i in range(K):
        T[i, i] = -_beta_no_e(pw - i, a, c, j, p)
        if i + 1 < K:
            T[i, i + 1] = -_alpha(pw - (i + 1), a, c, j)
        if i - 1 >= 0:
            T[i, i - 1] = -_gamma(pw - (i - 1), p)
    return T


def lame_spectrum(j: int, p: TopParams) -> list[EnergyLevel]:
    """Union of the four class spectra; exactly 2j+1 levels."""
    roots: list[tuple[float, int]] = []
    scale = max(1.0, p.A) * j * (j + 1) + 1.0
    for N in (1, 2, 3, 4):
        T = lame_recurrence(N, j, p)
        if T.shape[0] != _class_size(N, j):
            raise RootCountError(f"class {N} produced {T.shape[0]} conditions")
        if T.size == 0:
            continue
        vals = np.linalg.eigvals(T)
        if float(np.abs(vals.imag).max()) > 1e-8 * scale:
            raise RootCountError(f"class {N} roots are not real: {vals}")
        roots.extend((float(E), N) for E in vals.real)
    if len(roots) != 2 * j + 1:
        raise RootCountError(f"expected {2 * j + 1} roots, found {len(roots)}")
    roots.sort(key=lambda t: t[0])
    return [
        EnergyLevel(j=j, s=s, E=E, route="lame", lame_class=N)
        for s, (E, N) in zip(range(-j, j + 1), roots)
    ]


def lame_polynomial(N: int, j: int, E: float, p: TopParams) -> LameSeries:
    """Series coefficients for a given class root, s_0 = 1.

    Raises NotTerminatingError when E is not an admissible energy of the
    class (the coefficient after the last retained one does not vanish).
    """
    require_strict(p)
    if N not in _CLASS_EXPONENTS:
        raise DomainError(f"class must be 1..4, got {N}")
    K = _class_size(N, j)
    if K == 0:
        raise DomainError(f"class {N} is empty for j={j}")
    a, c = _CLASS_EXPONENTS[N]
    pw = _leading_power(N, j)
    s = np.zeros(K)
    s[0] = 1.0
    for k in range(1, K + 1):
        rhs = (E + _beta_no_e(pw - k + 1, a, c, j, p)) * s[k - 1]
        if k >= 2:
            rhs += _gamma(pw - k + 2, p) * s[k - 2]
        if k == K:
            # termination: the would-be s_K must vanish
            resid = abs(rhs)
            scale = (abs(E) + j * (j + 1) * p.A + 1.0) * float(np.abs(s).max())
            if resid > 1e-8 * scale:
                raise NotTerminatingError(
                    f"class {N}, j={j}: termination residual {resid:.3e} at E={E}"
                )
            break
        al = _alpha(pw - k, a, c, j)
        s[k] = -rhs / al
    return LameSeries(
        j=j, lame_class=N, E=float(E), exponents=(a, c), power=pw, coeffs=s, params=p
    )


def _series_wc(series: LameSeries, rho: complex):
    """Weight W, its log-derivative pieces, and the polynomial part S, S', S''."""
    p = series.params
    a, c = series.exponents
    rho = complex(rho)
    x = rho - p.B
    w1 = rho - p.A
    w2 = rho - p.C
    if min(abs(x), abs(w1), abs(w2)) < 1e-300:
        raise DomainError("rho coincides with a singular point of the equation")
    W = w1**a * w2**c
    S = Sp = Spp = 0.0 + 0.0j
    for k, sk in enumerate(series.coeffs):
        e = series.power - k
        S += sk * x**e
        Sp += sk * e * x ** (e - 1)
        Spp += sk * e * (e - 1) * x ** (e - 2)
    return x, w1, w2, W, S, Sp, Spp


def lame_series_eval(series: LameSeries, rho: complex) -> complex:
    _, _, _, W, S, _, _ = _series_wc(series, rho)
    return W * S


def lame_residual(series: LameSeries, rho: complex) -> complex:
    """Exact-derivative residual of the defining equation at rho."""
    j = series.j
    a, c = series.exponents
    x, w1, w2, W, S, Sp, Spp = _series_wc(series, rho)
    P = x * w1 * w2
    Pp = x * w2 + w1 * w2 + x * w1
    Wp = W * (a / w1 + c / w2)
    Wpp = W * (a * (a - 1) / w1**2 + 2 * a * c / (w1 * w2) + c * (c - 1) / w2**2)
    L = W * S
    Lp = Wp * S + W * Sp
    Lpp = Wpp * S + 2 * Wp * Sp + W * Spp
    return 4 * P * Lpp + 2 * Pp * Lp + (series.E - j * (j + 1) * rho) * L


def rho_map(q: ComplexQ, p: TopParams) -> complex:
    """Elliptic coordinate rho(q') sweeping [B, A] as q' runs over reals."""
    require_strict(p)
    qv = q.value
    cos2q = np.cos(2 * qv)
    den = p.A + p.B - 2 * p.C - (p.A - p.B) * cos2q
    scale = p.A + p.B - 2 * p.C + (p.A - p.B) * abs(cos2q)
    if abs(den) < 1e-12 * scale:
        raise PoleError(f"rho map pole at q={qv}")
    return complex(2 * (p.A - p.C) * (p.B - p.C) / den + p.C)


# --- eigenstates -------------------------------------------------------


def _fix_phase(coeffs: np.ndarray, j: int) -> np.ndarray:
    """Rotate by a unit phase so the first nonvanishing derivative at q=0
    (0th, 1st, ...) is real and positive; deterministic across routes."""
    n = np.arange(-j, j + 1)
    for k in range(2 * j + 1):
        z = np.sum(coeffs * (1j * n) ** k)
        if abs(z) > 1e-9 * float(np.sum(np.abs(coeffs) * np.abs(n) ** k) + 1e-300):
            return coeffs * (z.conjugate() / abs(z))
    return coeffs


def _lambda_eigensystem(j: int, p: TopParams):
    sym = h_matrix_lambda_symmetrized(j, p)
    vals, vecs = np.linalg.eigh(sym)
    return vals, vecs


def _warn_if_degenerate(vals: np.ndarray, idx: int) -> None:
    scale = max(1.0, float(np.abs(vals).max()))
    gaps = [
        abs(vals[idx] - vals[i]) for i in (idx - 1, idx + 1) if 0 <= i < len(vals)
    ]
    if gaps and min(gaps) < 1e-9 * scale:
        warnings.warn(
            f"level {idx} nearly degenerate (gap {min(gaps):.3e}); "
            "eigenvector basis is convention-dependent",
            DegeneracyWarning,
            stacklevel=3,
        )


def phi_state(j: int, s: int, p: TopParams) -> FourierState:
    """Eigenstate Phi_{j,s} with (Phi,Phi)_Q = 2j+1, deterministic phase."""
    if abs(s) > j:
        raise DomainError(f"|s| must be <= j={j}")
    vals, vecs = _lambda_eigensystem(j, p)
    idx = s + j
    _warn_if_degenerate(vals, idx)
    u = vecs[:, idx]
    coeffs = math.sqrt(2 * j + 1) * np.sqrt(weight_vector(j)) * u
    return FourierState(j=j, coeffs=_fix_phase(coeffs.astype(complex), j))


def phi_state_series(j: int, s: int, p: TopParams) -> FourierState:
    """Phi_{j,s} built from the Lame series of its class.

    Evaluates D(q')^(j/2) L(rho(q')) on a real grid, where D is the
    denominator of rho(q'); the result is a trigonometric polynomial of
    degree j whose Fourier coefficients are extracted by FFT, then
    normalized and phased exactly like phi_state.
    """
    require_strict(p)
    levels = lame_spectrum(j, p)
    lev = levels[s + j]
    series = lame_polynomial(lev.lame_class, j, lev.E, p)
    a, c = series.exponents

    ngrid = 8 * (j + 1)
    qp = 2.0 * math.pi * np.arange(ngrid) / ngrid
    cosq, sinq = np.cos(qp), np.sin(qp)
    den = p.A + p.B - 2 * p.C - (p.A - p.B) * np.cos(2 * qp)
    x = 2 * p.u * p.v * cosq**2 / den  # rho - B >= 0
    # half powers must follow the sign of the vanishing trig factor, or the
    # sampled function is |cos|/|sin| garbage instead of a trig polynomial
    root_x = np.sqrt(2 * p.u * p.v / den) * cosq  # sqrt(rho - B), signed
    root_w1 = 1j * np.sqrt(2 * p.u * (p.A - p.C) / den) * sinq  # sqrt(rho - A)
    root_w2 = np.sqrt(2 * (p.A - p.C) * p.v / den)  # sqrt(rho - C) > 0

    weight = np.ones(ngrid, dtype=complex)
    if a == 0.5:
        weight = weight * root_w1
    if c == 0.5:
        weight = weight * root_w2
    half = (series.power % 1.0) != 0.0
    poly = np.zeros(ngrid, dtype=complex)
    for k, sk in enumerate(series.coeffs):
        e = series.power - k - (0.5 if half else 0.0)
        poly += sk * x ** int(round(e))
    if half:
        poly = poly * root_x
    values = den ** (j / 2.0) * weight * poly

    spec = np.fft.fft(values) / ngrid
    coeffs = np.array([spec[n % ngrid] for n in range(-j, j + 1)])
    norm = math.sqrt((2 * j + 1) / np.sum(np.abs(coeffs) ** 2 / weight_vector(j)).real)
    return FourierState(j=j, coeffs=_fix_phase(coeffs * norm, j))
