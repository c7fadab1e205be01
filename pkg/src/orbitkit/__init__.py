"""Killing forms, adjoint/coadjoint orbits and their symplectic structure.

A small numpy-based toolkit for the compact matrix families su(n), u(n),
so(n): structure constants and adjoint actions, Killing/trace forms with
Cartan's criterion, spectral orbit descriptors and flag types, the orbit
2-forms, the canonical coadjoint-orbit form, and the index-lowering
isomorphism tying the two sides together.
"""

from .algebra import (
    Ad,
    AlgebraElement,
    AlgebraMismatch,
    BadDimension,
    GroupElement,
    LieAlgebra,
    NotInAlgebra,
    UnknownPreset,
    ValidationReport,
    ad_matrix,
    adjoint_action_matrix,
    algebra_from_dict,
    bracket,
    element_from_matrix,
    elements_close,
    flow_point,
    identity_element,
    load_algebra,
    preset,
    random_element,
    random_group_element,
    validate,
)
from .forms import (
    BilinearForm,
    Covector,
    DegenerateForm,
    SemisimpleVerdict,
    ad_invariance_residual,
    classify_definiteness,
    coadjoint,
    flat,
    is_semisimple,
    killing_form,
    pairing,
    sharp,
    trace_form,
)
from .numerics import (
    DEFAULT_TOL,
    NoConvergence,
    NotHermitian,
    Tolerance,
    frobenius,
    hermitian_eig,
    matrix_exp,
    rank_with_tol,
)
from .orbits import (
    NotSkewHermitian,
    OrbitDescriptor,
    UnsupportedAlgebra,
    classify,
    isotropy_dim,
    same_orbit,
    tangent_basis,
)
from .symplectic import (
    BaseMismatch,
    CentralElement,
    KKSContext,
    NotTangent,
    Omega_h,
    OrbitTangentVector,
    PullbackReport,
    d_Omega,
    induced_orbit_map,
    kks,
    omega_h,
    omega_kernel,
    pullback_compare,
    solve_tangent_preimage,
)
from .verify import SuiteReport, run_suites

__version__ = "0.1.0"
