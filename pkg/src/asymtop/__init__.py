"""Spectrum and wavefunctions of the quantum asymmetric top.

Three independent routes to the same 2j+1 levels per angular momentum j:
dense diagonalization in the Wigner basis, polynomial series solutions of the
reduced second-order equation, and first-order generators acting on
trigonometric polynomials of one complex angle.  Cross-checks between the
routes, the reproducing kernel, and the Haar/complex-angle quadratures live
in asymtop.verify and behind the `asymtop verify` command.
"""

from .errors import (
    ConvergenceWarning,
    DegeneracyWarning,
    DegenerateParamsError,
    DimensionError,
    DomainError,
    NotTerminatingError,
    PoleError,
    RootCountError,
    SingularInput,
    ToleranceError,
)
from .lambda_rep import (
    ComplexQ,
    FourierState,
    casimir_matrix,
    const_C,
    delta_j,
    ell_matrix,
    evaluate_state,
    gram_matrix,
    inner_product,
    inner_product_quadrature,
    q_rule,
    weight_B,
    weight_vector,
)
from .so3 import (
    IDENTITY,
    EulerAngles,
    HaarRule,
    casimir_apply,
    compose,
    euler_to_matrix,
    haar_rule,
    inverse,
    invariant_field_apply,
    matrix_to_euler,
)
from .spectra import (
    ROUTES,
    EnergyLevel,
    LameSeries,
    TopParams,
    angular_momentum_matrices,
    h_matrix_lambda,
    h_matrix_wigner,
    lame_polynomial,
    lame_recurrence,
    lame_residual,
    lame_series_eval,
    lame_spectrum,
    phi_state,
    phi_state_series,
    require_strict,
    rho_map,
    spectrum,
)
from .verify import CheckResult, run_all
from .wavefunctions import (
    completeness_defect,
    kernel_conj_defect,
    kernel_eval,
    kernel_factored,
    kernel_gram,
    mobius_phase,
    pde_residual,
    psi_eval,
    psi_via_kernel,
    so3_norm,
    state_jms,
    t_matrix,
    t_matrix_quadrature,
    uncertainty,
)
from .wigner import (
    wigner_D,
    wigner_D_matrix,
    wigner_d_matrix,
    wigner_gram,
    wigner_small_d,
)

__version__ = "0.1.0"
