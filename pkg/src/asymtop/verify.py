"""Self-verification suite: every identity the package is built on.

Each check_* function measures a defect that is analytically zero (or, for
pde-residual, a Richardson ratio that is analytically 4) and compares it to a
tolerance.  Defaults match the ranges the checks are specified at;
run_all caps them by the caller's jmax so quick runs stay quick.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .lambda_rep import (
    ComplexQ,
    casimir_matrix,
    delta_j,
    ell_matrix,
    gram_matrix,
    q_rule,
    weight_vector,
)
from .so3 import IDENTITY, EulerAngles, compose, haar_rule
from .spectra import ROUTES, TopParams, angular_momentum_matrices, h_matrix_lambda, spectrum
from .wavefunctions import (
    completeness_defect,
    kernel_conj_defect,
    kernel_eval,
    kernel_factored,
    pde_residual,
    psi_eval,
    psi_via_kernel,
    t_matrix,
    t_matrix_quadrature,
    uncertainty,
)
from .wigner import unitarity_defect, wigner_gram

CHECK_NAMES = (
    "route-agreement",
    "casimir",
    "commutators",
    "gram-hermiticity",
    "wigner-orthogonality",
    "kernel-group",
    "bridge",
    "pde-residual",
    "completeness",
    "measure-quadrature",
    "uncertainty",
)

DEFAULT_TOLS = {
    "route-agreement": 1e-8,
    "casimir": 1e-10,
    "commutators": 1e-10,
    "gram-hermiticity": 1e-12,
    "wigner-orthogonality": 1e-10,
    "kernel-group": 1e-10,
    "bridge": 1e-10,
    "pde-residual": 0.8,
    "completeness": 1e-8,
    "measure-quadrature": 1e-6,
    "uncertainty": 1e-10,
}

# jmax each check is specified at; run_all clips the caller's jmax to these
_JMAX_CAPS = {
    "route-agreement": 10,
    "casimir": 20,
    "commutators": 20,
    "gram-hermiticity": 10,
    "wigner-orthogonality": 5,
    "kernel-group": 5,
    "bridge": 5,
    "pde-residual": 3,
    "completeness": 6,
    "measure-quadrature": 4,
    "uncertainty": 10,
}


@dataclass(frozen=True)
class CheckResult:
    name: str
    defect: float
    tol: float
    passed: bool


def _result(name: str, defect: float, tol: float) -> CheckResult:
    return CheckResult(
        name=name, defect=float(defect), tol=float(tol), passed=bool(defect < tol)
    )


def random_strict_params(rng: np.random.Generator) -> TopParams:
    """Strictly ordered A > B > C > 0 with O(1) gaps."""
    c = rng.uniform(0.5, 2.0)
    b = c + rng.uniform(0.3, 2.0)
    a = b + rng.uniform(0.3, 2.0)
    return TopParams(A=a, B=b, C=c)


def _random_angles(rng: np.random.Generator) -> EulerAngles:
    return EulerAngles(
        rng.uniform(0.0, 2.0 * math.pi),
        rng.uniform(0.4, math.pi - 0.4),
        rng.uniform(0.0, 2.0 * math.pi),
    )


def _random_q(rng: np.random.Generator, beta: float = 0.7) -> ComplexQ:
    return ComplexQ(rng.uniform(0.0, 2.0 * math.pi), rng.uniform(-beta, beta))


def route_agreement_defects(p: TopParams, jmax: int) -> tuple[float, float]:
    """(cross-route, trace-rule) relative defects over j <= jmax.

    Trace rule: sum_s E_{j,s} = (A+B+C) j(j+1)(2j+1)/3.
    """
    worst_route = 0.0
    worst_trace = 0.0
    for j in range(jmax + 1):
        energies = {
            r: np.array([lv.E for lv in spectrum(j, p, route=r)]) for r in ROUTES
        }
        scale = np.maximum(1.0, np.abs(energies["wigner"]))
        for r in ("lambda", "lame"):
            worst_route = max(
                worst_route,
                float(np.max(np.abs(energies[r] - energies["wigner"]) / scale)),
            )
        target = (p.A + p.B + p.C) * j * (j + 1) * (2 * j + 1) / 3.0
        worst_trace = max(
            worst_trace,
            abs(float(np.sum(energies["wigner"])) - target) / max(1.0, target),
        )
    return worst_route, worst_trace


def check_route_agreement(p: TopParams, jmax: int = 10, tol: float = 1e-8) -> CheckResult:
    """All three spectral routes agree level by level; trace rule holds.

    The trace part is held to a 100x tighter bar by scaling it into the
    shared defect.
    """
    d_route, d_trace = route_agreement_defects(p, jmax)
    return _result("route-agreement", max(d_route, 100.0 * d_trace), tol)


def check_casimir(jmax: int = 20, tol: float = 1e-10) -> CheckResult:
    """l-matrix and J-matrix Casimirs equal j(j+1) I."""
    worst = 0.0
    for j in range(jmax + 1):
        eye = np.eye(2 * j + 1)
        worst = max(worst, float(np.max(np.abs(casimir_matrix(j) - j * (j + 1) * eye))))
        j1, j2, j3 = angular_momentum_matrices(j)
        total = j1 @ j1 + j2 @ j2 + j3 @ j3
        worst = max(worst, float(np.max(np.abs(total - j * (j + 1) * eye))))
    return _result("casimir", worst, tol)


def check_commutators(jmax: int = 20, tol: float = 1e-10) -> CheckResult:
    """[l_a, l_b] = eps_abc l_c and [J_a, J_b] = i eps_abc J_c."""
    worst = 0.0
    for j in range(jmax + 1):
        ells = {a: ell_matrix(a, j) for a in (1, 2, 3)}
        js = dict(zip((1, 2, 3), angular_momentum_matrices(j)))
        for a, b, c in ((1, 2, 3), (2, 3, 1), (3, 1, 2)):
            d1 = ells[a] @ ells[b] - ells[b] @ ells[a] - ells[c]
            d2 = js[a] @ js[b] - js[b] @ js[a] - 1j * js[c]
            worst = max(worst, float(np.max(np.abs(d1))), float(np.max(np.abs(d2))))
    return _result("commutators", worst, tol)


def check_gram_hermiticity(p: TopParams, jmax: int = 10, tol: float = 1e-12) -> CheckResult:
    """H and the generators -i l_a are self-adjoint for the diagonal Gram form.

    Defects are relative to the size of G M, whose entries grow like 1/B_nj.
    """
    worst = 0.0
    for j in range(jmax + 1):
        gram = gram_matrix(j)
        mats = [h_matrix_lambda(j, p)] + [-1j * ell_matrix(a, j) for a in (1, 2, 3)]
        for m in mats:
            lhs = gram @ m
            d = float(np.max(np.abs(lhs - m.conj().T @ gram)))
            worst = max(worst, d / max(1.0, float(np.max(np.abs(lhs)))))
    return _result("gram-hermiticity", worst, tol)


def check_wigner_orthogonality(jmax: int = 5, tol: float = 1e-10) -> CheckResult:
    """Haar orthogonality of the D-functions plus row unitarity of d(theta)."""
    worst = 0.0
    thetas = np.linspace(0.2, math.pi - 0.2, 5)
    for j in range(jmax + 1):
        worst = max(worst, unitarity_defect(j, thetas))
        rule = haar_rule(j)
        for jt in range(j + 1):
            gram = wigner_gram(j, jt, rule)
            if jt == j:
                eye = np.eye(2 * j + 1)
                expected = np.einsum("mp,nq->mnpq", eye, eye) / (2 * j + 1)
            else:
                expected = np.zeros(gram.shape)
            worst = max(worst, float(np.max(np.abs(gram - expected))))
    return _result("wigner-orthogonality", worst, tol)


def check_kernel_group(jmax: int = 5, seed: int = 42, tol: float = 1e-10) -> CheckResult:
    """t is a representation: t(e) = I, t(g1 g2) = t(g1) t(g2), t^H G t = G;
    the kernel at the identity reproduces delta_j and obeys the conjugation
    symmetry conj(D_{qq'}(g)) = D_{q'q}(g^{-1})."""
    rng = np.random.default_rng(seed)
    worst = 0.0
    for j in range(jmax + 1):
        eye = np.eye(2 * j + 1)
        worst = max(worst, float(np.max(np.abs(t_matrix(j, IDENTITY) - eye))))
        gram = gram_matrix(j)
        gram_scale = max(1.0, float(np.max(gram)))
        for _ in range(2):
            g1, g2 = _random_angles(rng), _random_angles(rng)
            lhs = t_matrix(j, compose(g1, g2))
            rhs = t_matrix(j, g1) @ t_matrix(j, g2)
            worst = max(worst, float(np.max(np.abs(lhs - rhs))))
            t1 = t_matrix(j, g1)
            worst = max(
                worst,
                float(np.max(np.abs(t1.conj().T @ gram @ t1 - gram))) / gram_scale,
            )
            q, qp = _random_q(rng), _random_q(rng)
            expected = delta_j(q, qp, j)
            d_id = abs(kernel_eval(q, qp, j, IDENTITY) - expected)
            worst = max(worst, d_id / max(1.0, abs(expected)))
            k_val = kernel_eval(q, qp, j, g1)
            worst = max(
                worst, kernel_conj_defect(q, qp, j, g1) / max(1.0, abs(k_val))
            )
    return _result("kernel-group", worst, tol)


def check_bridge(
    p: TopParams, jmax: int = 5, seed: int = 42, tol: float = 1e-10
) -> CheckResult:
    """Kernel route and closed form agree: Psi via t-action vs direct
    evaluation, factored vs expanded kernel, and t by double quadrature
    (quadrature-limited, so scaled by 1e-4 into the shared defect)."""
    d_matrix, d_quad = bridge_defects(p, jmax, seed)
    return _result("bridge", max(d_matrix, 1e-4 * d_quad), tol)


def bridge_defects(p: TopParams, jmax: int = 5, seed: int = 42) -> tuple[float, float]:
    """(closed-form, quadrature) parts of the bridge check."""
    rng = np.random.default_rng(seed)
    d_matrix = 0.0
    for j in range(jmax + 1):
        for _ in range(2):
            g = _random_angles(rng)
            q, qp = _random_q(rng), _random_q(rng)
            s = int(rng.integers(-j, j + 1))
            v1 = psi_eval(q, j, s, p, g)
            v2 = psi_via_kernel(q, j, s, p, g)
            d_matrix = max(d_matrix, abs(v1 - v2) / max(1.0, abs(v1)))
            k1 = kernel_eval(q, qp, j, g)
            k2 = kernel_factored(q, qp, j, g)
            d_matrix = max(d_matrix, abs(k1 - k2) / max(1.0, abs(k1)))
    d_quad = 0.0
    for j in range(min(jmax, 2) + 1):
        g = _random_angles(rng)
        d_quad = max(
            d_quad, float(np.max(np.abs(t_matrix_quadrature(j, g) - t_matrix(j, g))))
        )
    return d_matrix, d_quad


def check_pde_residual(
    p: TopParams, jmax: int = 3, seed: int = 42, tol: float = 0.8
) -> CheckResult:
    """Residuals of H Psi = E Psi and (eta_a + l_a) Psi = 0 shrink at the
    O(h^2) Richardson rate: r(h)/r(h/2) within tol of 4.

    Residuals already at the rounding floor (< 1e-10) are skipped.
    """
    rng = np.random.default_rng(seed)
    worst = 0.0
    for j in range(jmax + 1):
        s = int(rng.integers(-j, j + 1))
        g = _random_angles(rng)
        q = _random_q(rng, beta=0.3)
        coarse_s, coarse_v = pde_residual(q, j, s, p, g, h=1e-3)
        fine_s, fine_v = pde_residual(q, j, s, p, g, h=5e-4)
        coarse = np.concatenate(([coarse_s], coarse_v))
        fine = np.concatenate(([fine_s], fine_v))
        for big, small in zip(coarse, fine):
            if big < 1e-10 or small < 1e-300:
                continue
            worst = max(worst, abs(big / small - 4.0))
    return _result("pde-residual", worst, tol)


def check_completeness(
    p: TopParams, jmax: int = 6, seed: int = 42, tol: float = 1e-8
) -> CheckResult:
    """sum_s |Phi_{j,s}(q)|^2 / (2j+1) = delta_j(q, conj(q)), relative."""
    rng = np.random.default_rng(seed)
    worst = 0.0
    for j in range(jmax + 1):
        for _ in range(2):
            q = _random_q(rng, beta=0.5)
            scale = max(1.0, float(delta_j(q, q, j).real))
            worst = max(worst, completeness_defect(j, p, q) / scale)
    return _result("completeness", worst, tol)


def check_measure_quadrature(jmax: int = 4, tol: float = 1e-6) -> CheckResult:
    """Quadrature Gram of the e^{inq} basis matches diag(1/B_nj).

    Entry (m, n) defects are taken relative to the geometric mean
    sqrt(1/(B_m B_n)) of the corresponding diagonal entries.
    """
    worst = 0.0
    for j in range(jmax + 1):
        rule = q_rule(j)
        n = np.arange(-j, j + 1)
        vals = np.exp(1j * np.outer(rule.nodes, n))
        quad = vals.conj().T @ (rule.weights[:, None] * vals)
        b = weight_vector(j)
        expected = np.diag(1.0 / b)
        rel = np.abs(quad - expected) * np.sqrt(np.outer(b, b))
        worst = max(worst, float(np.max(rel)))
    return _result("measure-quadrature", worst, tol)


def check_uncertainty(jmax: int = 10, seed: int = 42, tol: float = 1e-10) -> CheckResult:
    """Momentum spread j(j+1) delta_j(q, conj(q)) stays above j for j >= 1
    and equals 4 exactly at j = 1 with real q."""
    rng = np.random.default_rng(seed)
    worst = -math.inf
    for j in range(1, max(jmax, 1) + 1):
        worst = max(worst, j - uncertainty(_random_q(rng), j))
    base = abs(uncertainty(ComplexQ(rng.uniform(0.0, 2.0 * math.pi), 0.0), 1) - 4.0)
    return _result("uncertainty", max(worst, base), tol)


def run_all(
    p: TopParams,
    jmax: int = 4,
    seed: int = 42,
    tols: dict[str, float] | None = None,
) -> list[CheckResult]:
    """Run the full suite in canonical order at min(jmax, per-check cap)."""
    tols = {**DEFAULT_TOLS, **(tols or {})}

    def cap(name: str) -> int:
        return min(jmax, _JMAX_CAPS[name])

    return [
        check_route_agreement(p, cap("route-agreement"), tols["route-agreement"]),
        check_casimir(cap("casimir"), tols["casimir"]),
        check_commutators(cap("commutators"), tols["commutators"]),
        check_gram_hermiticity(p, cap("gram-hermiticity"), tols["gram-hermiticity"]),
        check_wigner_orthogonality(
            cap("wigner-orthogonality"), tols["wigner-orthogonality"]
        ),
        check_kernel_group(cap("kernel-group"), seed, tols["kernel-group"]),
        check_bridge(p, cap("bridge"), seed, tols["bridge"]),
        check_pde_residual(p, cap("pde-residual"), seed, tols["pde-residual"]),
        check_completeness(p, cap("completeness"), seed, tols["completeness"]),
        check_measure_quadrature(cap("measure-quadrature"), tols["measure-quadrature"]),
        check_uncertainty(cap("uncertainty"), seed, tols["uncertainty"]),
    ]
