"""Asymmetric-top wavefunctions on SO(3) and the reproducing kernel.

The closed-form eigenfunctions are

    Psi_{q,j,s}(g) = (cos th + i cos(q+phi) sin th)^j  Phi_{j,s}(u),

where the shifted angle u is defined branch-free through the Moebius map
e^{iu} = e^{ipsi} (cos x + i e^{-ith} sin x)/(cos x - i e^{-ith} sin x) with
x = (q+phi)/2.  The same objects are reachable through the kernel

    D^j_{qq'}(g) = (2^j (j!)^2/(2j)!) { [cos(phi+q)cos(qb'-psi)+1] cos th
                   + i [cos(phi+q)+cos(qb'-psi)] sin th
                   + sin(phi+q) sin(qb'-psi) }^j,     qb' = conj(q'),

whose matrix on the e^{inq} basis is t_mn(g) = sqrt(B_m/B_n)
e^{-i pi (m-n)/2} D^j_{mn}(g); both paths are implemented and must agree.
"""

from __future__ import annotations

import cmath
import math

import numpy as np

from .errors import DomainError, PoleError, SingularInput
from .lambda_rep import (
    ComplexQ,
    FourierState,
    const_C,
    delta_j,
    evaluate_state,
    q_rule,
    weight_vector,
)
from .so3 import EulerAngles, HaarRule, inverse, invariant_field_apply
from .spectra import TopParams, phi_state, spectrum
from .wigner import wigner_D_matrix


def mobius_phase(q: ComplexQ, g: EulerAngles) -> tuple[complex, complex]:
    """Prefactor base and w = e^{iu} of the closed-form wavefunction.

    The base is returned unexponentiated (its j-th power multiplies the
    state).  w is computed from the sine/cosine Moebius form, which is
    regular where tan((q+phi)/2) blows up; the genuine pole of u (vanishing
    denominator) raises PoleError.
    """
    qv = q.value
    vals = (qv.real, qv.imag, g.phi, g.theta, g.psi)
    if not all(math.isfinite(t) for t in vals):
        raise SingularInput(f"non-finite input: q={qv}, g={g}")
    x = (qv + g.phi) / 2.0
    rot = cmath.exp(-1j * g.theta)
    cx, sx = cmath.cos(x), cmath.sin(x)
    den = cx - 1j * rot * sx
    if abs(den) < 1e-13 * (abs(cx) + abs(sx)):
        raise PoleError(f"phase map pole at q={qv}, g={g.as_tuple()}")
    w = cmath.exp(1j * g.psi) * (cx + 1j * rot * sx) / den
    base = cmath.cos(g.theta) + 1j * cmath.cos(qv + g.phi) * cmath.sin(g.theta)
    return base, w


def _mobius_grid(qv: complex, phi, theta, psi):
    """Vectorized (base, w) over angle arrays; exact pole nodes are nudged."""
    x = (qv + phi) / 2.0
    rot = np.exp(-1j * theta)
    cx, sx = np.cos(x), np.sin(x)
    den = cx - 1j * rot * sx
    tiny = np.abs(den) < 1e-30
    if np.any(tiny):
        x = x + np.where(tiny, 1e-9, 0.0)
        cx, sx = np.cos(x), np.sin(x)
        den = cx - 1j * rot * sx
    w = np.exp(1j * psi) * (cx + 1j * rot * sx) / den
    base = np.cos(theta) + 1j * np.cos(qv + phi) * np.sin(theta)
    return base, w


def _psi_values(qv: complex, coeffs: np.ndarray, phi, theta, psi) -> np.ndarray:
    j = (len(coeffs) - 1) // 2
    base, w = _mobius_grid(qv, np.asarray(phi), np.asarray(theta), np.asarray(psi))
    pows = w[..., None] ** np.arange(-j, j + 1)
    return base**j * (pows @ coeffs)


def psi_eval(
    q: ComplexQ, j: int, s: int, p: TopParams, g: EulerAngles
) -> complex:
    """Closed-form wavefunction value Psi_{q,j,s}(g)."""
    base, w = mobius_phase(q, g)
    coeffs = phi_state(j, s, p).coeffs
    n = np.arange(-j, j + 1)
    return complex(base**j * np.sum(coeffs * w**n))


# --- kernel ------------------------------------------------------------


def _kernel_values(qv, qpv, j: int, phi, theta, psi):
    """Kernel D^j as arrays; broadcasts over all five argument arrays."""
    qb = np.conjugate(qpv)
    lead = phi + qv
    trail = qb - psi
    base = (
        (np.cos(lead) * np.cos(trail) + 1.0) * np.cos(theta)
        + 1j * (np.cos(lead) + np.cos(trail)) * np.sin(theta)
        + np.sin(lead) * np.sin(trail)
    )
    return (2 * j + 1) / const_C(j) * base**j


def kernel_eval(q: ComplexQ, qp: ComplexQ, j: int, g: EulerAngles) -> complex:
    """Closed-form kernel D^j_{qq'}(g); the second angle enters conjugated."""
    return complex(_kernel_values(q.value, qp.value, j, g.phi, g.theta, g.psi))


def kernel_factored(q: ComplexQ, qp: ComplexQ, j: int, g: EulerAngles) -> complex:
    """Kernel as prefactor times the reproducing delta of the shifted angle.

    Must equal kernel_eval wherever the phase map is regular.
    """
    base, w = mobius_phase(q, g)
    eq = cmath.exp(1j * qp.value.conjugate())
    cos_shift = 0.5 * (w / eq + eq / w)
    return (2 * j + 1) / const_C(j) * (base * (1.0 + cos_shift)) ** j


def t_matrix(j: int, g: EulerAngles) -> np.ndarray:
    """Matrix of the kernel action on e^{inq}: rows/columns n = -j..j.

    t(identity) = I; Gram-unitary (t^H G t = G with G = diag(1/B_nj)); and
    t(g1 g2) = t(g1) t(g2).
    """
    n = np.arange(-j, j + 1)
    root_b = np.sqrt(weight_vector(j))
    phase = (-1j) ** n
    d = wigner_D_matrix(j, g)
    return (root_b[:, None] / root_b[None, :]) * (phase[:, None] * np.conj(phase)[None, :]) * d


def t_matrix_quadrature(
    j: int,
    g: EulerAngles,
    beta_max: float | None = None,
    n_alpha: int | None = None,
    n_beta: int | None = None,
) -> np.ndarray:
    """t by direct double quadrature of the kernel against the basis.

    t_mn = B_m * Iint conj(e^{imq}) D^j_{qq'}(g) e^{inq'} dmu(q) dmu(q');
    slow, used to validate the closed form at small j.
    """
    rule = q_rule(j, beta_max=beta_max, n_alpha=n_alpha, n_beta=n_beta)
    n = np.arange(-j, j + 1)
    left = np.exp(-1j * np.outer(np.conj(rule.nodes), n))  # conj(psi_m)(q_a)
    right = np.exp(1j * np.outer(rule.nodes, n))
    kern = _kernel_values(
        rule.nodes[:, None], rule.nodes[None, :], j, g.phi, g.theta, g.psi
    )
    mid = (rule.weights[:, None] * kern) * rule.weights[None, :]
    return weight_vector(j)[:, None] * (left.T @ mid @ right)


def psi_via_kernel(
    q: ComplexQ, j: int, s: int, p: TopParams, g: EulerAngles
) -> complex:
    """Psi through the kernel action on Phi; must equal psi_eval."""
    coeffs = t_matrix(j, g) @ phi_state(j, s, p).coeffs
    return evaluate_state(FourierState(j=j, coeffs=coeffs), q)


# --- Wigner-basis eigenvectors ------------------------------------------


def state_jms(j: int, m: int, s: int, p: TopParams) -> np.ndarray:
    """Expansion of |j,m,s> over the |j,m,n> basis, n = -j..j.

    Orthonormal and an eigenvector of h_matrix_wigner with eigenvalue
    E_{j,s}; m enters only as a global phase.
    """
    if abs(m) > j:
        raise DomainError(f"|m| must be <= j={j}")
    coeffs = phi_state(j, s, p).coeffs
    n = np.arange(-j, j + 1)
    phase = np.exp(-0.5j * math.pi * (m - n))
    return coeffs * phase / np.sqrt(weight_vector(j)) / math.sqrt(2 * j + 1)


# --- residuals and norms -------------------------------------------------


def pde_residual(
    q: ComplexQ,
    j: int,
    s: int,
    p: TopParams,
    g: EulerAngles,
    h: float = 1e-3,
) -> tuple[float, np.ndarray]:
    """Finite-difference residuals of the defining equations at (q, g).

    Returns (|H Psi - E Psi|, the three |(eta_a + l_a) Psi|) with H built by
    nesting the invariant fields (H = A(-i xi_1)^2 + ...) and l_a acting on
    the complex angle by a central difference along its real part.  Both
    converge as O(h^2).
    """
    coeffs = phi_state(j, s, p).coeffs
    energy = spectrum(j, p, route="lambda")[s + j].E
    qv = q.value

    def psi_fn(gg: EulerAngles, _qv=qv) -> complex:
        return complex(_psi_values(_qv, coeffs, gg.phi, gg.theta, gg.psi))

    weights = (p.A, p.B, p.C)
    h_psi = 0.0 + 0.0j
    for a in (1, 2, 3):
        def first(gg: EulerAngles, a=a) -> complex:
            return invariant_field_apply("xi", a, psi_fn, gg, h=h)

        h_psi -= weights[a - 1] * invariant_field_apply("xi", a, first, g, h=h)
    schrod = abs(h_psi - energy * psi_fn(g))

    psi0 = psi_fn(g)
    dq = (
        complex(_psi_values(qv + h, coeffs, g.phi, g.theta, g.psi))
        - complex(_psi_values(qv - h, coeffs, g.phi, g.theta, g.psi))
    ) / (2.0 * h)
    ell = (
        -1j * cmath.sin(qv) * dq + 1j * j * cmath.cos(qv) * psi0,
        -1j * cmath.cos(qv) * dq - 1j * j * cmath.sin(qv) * psi0,
        dq,
    )
    sym = np.array(
        [
            abs(invariant_field_apply("eta", a, psi_fn, g, h=h) + ell[a - 1])
            for a in (1, 2, 3)
        ]
    )
    return schrod, sym


def so3_norm(q: ComplexQ, j: int, s: int, p: TopParams, rule: HaarRule) -> float:
    """Haar integral of |Psi_{q,j,s}|^2; equals delta_j(q, conj(q))."""
    if rule.degree < j:
        raise DomainError(f"rule degree {rule.degree} < j={j}")
    vals = _psi_values(q.value, phi_state(j, s, p).coeffs, rule.phi, rule.theta, rule.psi)
    return float(np.sum(rule.weights * np.abs(vals) ** 2))


def kernel_gram(
    j: int,
    jt: int,
    rule: HaarRule,
    points: list[tuple[ComplexQ, ComplexQ, ComplexQ, ComplexQ]] | None = None,
    seed: int = 7,
) -> float:
    """Largest defect of the kernel orthogonality relation at sampled points.

    Integrates conj(D^j_{q qp}) D^jt_{qt qtp} over the group and compares to
    delta_{j jt} delta_j(qt, q) delta_j(qp, qtp)/(2j+1).
    """
    if rule.degree < max(j, jt):
        raise DomainError(f"rule degree {rule.degree} < max(j, jt)")
    if points is None:
        rng = np.random.default_rng(seed)
        points = []
        for _ in range(3):
            a4 = rng.uniform(0.0, 2.0 * math.pi, size=4)
            b4 = rng.uniform(-1.0, 1.0, size=4)
            points.append(tuple(ComplexQ(a, b) for a, b in zip(a4, b4)))
        shared = ComplexQ(rng.uniform(0.0, 2.0 * math.pi), rng.uniform(-1.0, 1.0))
        shared2 = ComplexQ(rng.uniform(0.0, 2.0 * math.pi), rng.uniform(-1.0, 1.0))
        points.append((shared, shared2, shared, shared2))
    defect = 0.0
    for qq, qp, qt, qtp in points:
        left = _kernel_values(qq.value, qp.value, j, rule.phi, rule.theta, rule.psi)
        right = _kernel_values(qt.value, qtp.value, jt, rule.phi, rule.theta, rule.psi)
        quad = complex(np.sum(rule.weights * np.conj(left) * right))
        if j == jt:
            expected = delta_j(qt, qq, j) * delta_j(qp, qtp, j) / (2 * j + 1)
        else:
            expected = 0.0
        defect = max(defect, abs(quad - expected))
    return defect


def completeness_defect(j: int, p: TopParams, q: ComplexQ) -> float:
    """|sum_s |Phi_{j,s}(q)|^2/(2j+1) - delta_j(q, conj(q))|."""
    total = 0.0
    for s in range(-j, j + 1):
        total += abs(evaluate_state(phi_state(j, s, p), q)) ** 2
    return abs(total / (2 * j + 1) - delta_j(q, q, j))


def uncertainty(q: ComplexQ, j: int) -> float:
    """Squared angular-momentum spread j(j+1) delta_j(q, conj(q)).

    Exceeds j for every j >= 1; the states never saturate the bound.
    """
    return j * (j + 1) * delta_j(q, q, j).real


def kernel_conj_defect(q: ComplexQ, qp: ComplexQ, j: int, g: EulerAngles) -> float:
    """|conj(D^j_{qq'}(g)) - D^j_{q'q}(g^{-1})|: the conjugation symmetry."""
    lhs = kernel_eval(q, qp, j, g)
    rhs = kernel_eval(qp, q, j, inverse(g))
    return abs(lhs.conjugate() - rhs)
