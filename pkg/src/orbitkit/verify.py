"""Seeded verification sweeps over the package invariants.

Each suite draws reproducible random samples, measures the worst residual
of one invariant and reports it in a fixed five-field schema:
``{"suite", "samples", "max_residual", "sign", "pass"}``.  Structural and
counting checks use a 0/1 residual.  Random elements have independent
uniform coefficients in [-1, 1]; group elements are exponentials of such
elements, so they stay in the group exactly.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import (
    Ad,
    AlgebraElement,
    LieAlgebra,
    ad_matrix,
    bracket,
    flow_point,
    random_element,
    random_group_element,
    validate,
)
from .forms import (
    BilinearForm,
    ad_invariance_residual,
    classify_definiteness,
    coadjoint,
    flat,
    is_semisimple,
    killing_form,
    sharp,
)
from .numerics import DEFAULT_TOL, Tolerance, frobenius, rank_with_tol
from .orbits import classify, isotropy_dim, tangent_basis
from .symplectic import (
    KKSContext,
    Omega_h,
    d_Omega,
    kks,
    omega_h,
    omega_kernel,
    pullback_compare,
    solve_tangent_preimage,
)

__all__ = ["SuiteReport", "run_suites"]

#: Step used by the infinitesimal-generator finite-difference check.
FLOW_STEP = 1e-5


@dataclass
class SuiteReport:
    suite: str
    samples: int
    max_residual: float
    sign: int | None
    tolerance: float

    def __post_init__(self):
        self.samples = int(self.samples)
        self.max_residual = float(self.max_residual)
        self.sign = None if self.sign is None else int(self.sign)
        self.tolerance = float(self.tolerance)

    @property
    def passed(self) -> bool:
        return bool(self.max_residual <= self.tolerance)

    def as_dict(self) -> dict:
        return {
            "suite": self.suite,
            "samples": self.samples,
            "max_residual": self.max_residual,
            "sign": self.sign,
            "pass": self.passed,
        }


def _rng(seed: int, suite_index: int) -> np.random.Generator:
    return np.random.default_rng([seed, suite_index])


def _noncentral(algebra: LieAlgebra, rng: np.random.Generator, tol: Tolerance, tries: int = 50):
    """Random element with a nontrivial orbit, or None if the algebra is abelian."""
    for _ in range(tries):
        h = random_element(algebra, rng)
        if rank_with_tol(ad_matrix(h), tol) > 0:
            return h
    return None


def _suite_algebra_axioms(algebra, form, samples, seed, tol):
    report = validate(algebra)
    residual = max(report.antisymmetry, report.jacobi, report.closure)
    return SuiteReport("algebra_axioms", 0, residual, None, report.tolerance)


def _suite_lie_closure(algebra, form, samples, seed, tol):
    rng = _rng(seed, 1)
    worst = 0.0
    for _ in range(samples):
        x = random_element(algebra, rng)
        y = random_element(algebra, rng)
        mx, my = x.matrix, y.matrix
        worst = max(worst, frobenius(bracket(x, y).matrix - (mx @ my - my @ mx)))
    return SuiteReport("lie_closure", samples, worst, None, 1e-10)


def _suite_adjoint_action(algebra, form, samples, seed, tol):
    rng = _rng(seed, 2)
    worst = 0.0
    for _ in range(samples):
        g1 = random_group_element(algebra, rng)
        g2 = random_group_element(algebra, rng)
        x = random_element(algebra, rng)
        delta = Ad(g1, Ad(g2, x)) - Ad(g1 @ g2, x)
        worst = max(worst, delta.norm())
    return SuiteReport("adjoint_action", samples, worst, None, 1e-9)


def _suite_ad_representation(algebra, form, samples, seed, tol):
    rng = _rng(seed, 3)
    worst = 0.0
    for _ in range(samples):
        x = random_element(algebra, rng)
        y = random_element(algebra, rng)
        lhs = ad_matrix(bracket(x, y))
        rhs = ad_matrix(x) @ ad_matrix(y) - ad_matrix(y) @ ad_matrix(x)
        worst = max(worst, float(np.max(np.abs(lhs - rhs), initial=0.0)))
    return SuiteReport("ad_representation", samples, worst, None, 1e-9)


def _suite_generator_flow(algebra, form, samples, seed, tol):
    # Forward difference of Ad(exp(tX)) xi at t = FLOW_STEP against [X, xi].
    # The truncation error grows with |[X, [X, xi]]|, so the absolute budget
    # of 1e-4 is scaled by that second-order magnitude above unit size.
    rng = _rng(seed, 4)
    worst = 0.0
    for _ in range(samples):
        x = random_element(algebra, rng)
        xi = random_element(algebra, rng)
        fd = (Ad(flow_point(x, FLOW_STEP), xi) - xi) * (1.0 / FLOW_STEP)
        err = (fd - bracket(x, xi)).norm()
        scale = max(1.0, bracket(x, bracket(x, xi)).norm())
        worst = max(worst, err / scale)
    return SuiteReport("generator_flow", samples, worst, None, 1e-4)


def _suite_form_invariance(algebra, form, samples, seed, tol):
    rng = _rng(seed, 5)
    worst = 0.0
    for _ in range(samples):
        g = random_group_element(algebra, rng)
        x = random_element(algebra, rng)
        y = random_element(algebra, rng)
        worst = max(worst, ad_invariance_residual(form, g, x, y))
    return SuiteReport("form_invariance", samples, worst, None, 1e-9)


def _suite_musical_equivariance(algebra, form, samples, seed, tol):
    rng = _rng(seed, 6)
    worst = 0.0
    for _ in range(samples):
        g = random_group_element(algebra, rng)
        x = random_element(algebra, rng)
        delta = flat(form, Ad(g, x)) - coadjoint(g, flat(form, x))
        worst = max(worst, delta.norm())
    return SuiteReport("musical_equivariance", samples, worst, None, 1e-9)


def _suite_musical_isomorphism(algebra, form, samples, seed, tol):
    rng = _rng(seed, 7)
    worst = 0.0
    for _ in range(samples):
        x = random_element(algebra, rng)
        worst = max(worst, (sharp(form, flat(form, x)) - x).norm())
    if rank_with_tol(form.gram, tol) < algebra.dim:
        worst = max(worst, 1.0)
    return SuiteReport("musical_isomorphism", samples, worst, None, 1e-10)


def _suite_cartan_criterion(algebra, form, samples, seed, tol):
    # Internal consistency: a degenerate Killing form must come with a
    # genuine annihilating witness; a nondegenerate one with none.
    verdict = is_semisimple(algebra, tol)
    kf = killing_form(algebra)
    if verdict.semisimple:
        residual = 0.0 if classify_definiteness(kf, tol) != "degenerate" else 1.0
    else:
        residual = float(np.linalg.norm(kf.gram @ verdict.witness.coeffs))
    return SuiteReport("cartan_criterion", 0, residual, None, 1e-9)


def _suite_orbit_descriptor_invariance(algebra, form, samples, seed, tol):
    rng = _rng(seed, 8)
    worst = 0.0
    base = _noncentral(algebra, rng, tol) or random_element(algebra, rng)
    desc = classify(base)
    for _ in range(samples):
        g = random_group_element(algebra, rng)
        moved = classify(Ad(g, base))
        if not desc.matches(moved):
            worst = 1.0
            break
        drift = np.max(np.abs(np.asarray(desc.spectrum) - np.asarray(moved.spectrum)))
        worst = max(worst, float(drift))
    return SuiteReport("orbit_descriptor_invariance", samples, worst, None, 1e-8)


def _suite_orbit_dimensions(algebra, form, samples, seed, tol):
    rng = _rng(seed, 9)
    bad = 0.0
    for _ in range(samples):
        h = random_element(algebra, rng)
        desc = classify(h)
        rank = rank_with_tol(ad_matrix(h), tol)
        ok = (
            desc.orbit_dim == rank
            and desc.orbit_dim % 2 == 0
            and desc.orbit_dim + desc.isotropy_dim == algebra.dim
            and desc.isotropy_dim == isotropy_dim(h)
        )
        if not ok:
            bad = 1.0
            break
    return SuiteReport("orbit_dimensions", samples, bad, None, 0.5)


def _suite_tangent_basis(algebra, form, samples, seed, tol):
    rng = _rng(seed, 10)
    bad = 0.0
    for _ in range(samples):
        h = random_element(algebra, rng)
        if len(tangent_basis(h)) != rank_with_tol(ad_matrix(h), tol):
            bad = 1.0
            break
    return SuiteReport("tangent_basis", samples, bad, None, 0.5)


def _suite_symplectic_bilinearity(algebra, form, samples, seed, tol):
    rng = _rng(seed, 11)
    ctx = KKSContext(form, tol=tol)
    worst = 0.0
    for _ in range(samples):
        h = random_element(algebra, rng)
        x = random_element(algebra, rng)
        y = random_element(algebra, rng)
        a, b = rng.uniform(-1.0, 1.0, 2)
        beta = flat(form, h)
        worst = max(worst, abs(omega_h(form, h, x, x)))
        worst = max(worst, abs(omega_h(form, h, x, y) + omega_h(form, h, y, x)))
        lin = omega_h(form, h, a * x + b * y, y) - (a * omega_h(form, h, x, y) + b * omega_h(form, h, y, y))
        worst = max(worst, abs(lin))
        worst = max(worst, abs(kks(ctx, beta, x, x)))
        klin = kks(ctx, beta, a * x + b * y, y) - (a * kks(ctx, beta, x, y) + b * kks(ctx, beta, y, y))
        worst = max(worst, abs(klin))
    return SuiteReport("symplectic_bilinearity", samples, worst, None, 1e-10)


def _suite_omega_invariance(algebra, form, samples, seed, tol):
    rng = _rng(seed, 12)
    worst = 0.0
    for _ in range(samples):
        g = random_group_element(algebra, rng)
        h = random_element(algebra, rng)
        x = random_element(algebra, rng)
        y = random_element(algebra, rng)
        moved = omega_h(form, Ad(g, h), Ad(g, x), Ad(g, y))
        worst = max(worst, abs(moved - omega_h(form, h, x, y)))
    return SuiteReport("omega_invariance", samples, worst, None, 1e-9)


def _suite_omega_kernel(algebra, form, samples, seed, tol):
    # Kernel of omega_h must annihilate omega and match ker ad(h) in span.
    rng = _rng(seed, 13)
    worst = 0.0
    runs = max(1, samples // 10)
    basis_elements = [AlgebraElement(algebra, row) for row in np.eye(algebra.dim)]
    for _ in range(runs):
        h = random_element(algebra, rng)
        kernel = omega_kernel(form, h, tol)
        for k in kernel:
            for e in basis_elements:
                worst = max(worst, abs(omega_h(form, h, k, e)))
        ad_h = ad_matrix(h)
        dim_ker_ad = algebra.dim - rank_with_tol(ad_h, tol)
        if len(kernel) != dim_ker_ad:
            worst = max(worst, 1.0)
            continue
        if kernel:
            stacked = np.vstack([k.coeffs for k in kernel])
            residual = float(np.max(np.abs(ad_h @ stacked.T)))
            worst = max(worst, residual)
    return SuiteReport("omega_kernel", runs, worst, None, 1e-9)


def _suite_omega_well_defined(algebra, form, samples, seed, tol):
    from .symplectic import OrbitTangentVector

    rng = _rng(seed, 14)
    ctx = KKSContext(form, tol=tol)
    worst = 0.0
    h = _noncentral(algebra, rng, tol)
    if h is None:
        return SuiteReport("omega_well_defined", 0, 0.0, None, 1e-9)
    kernel = omega_kernel(form, h, tol)
    for _ in range(samples):
        x = random_element(algebra, rng)
        y = random_element(algebra, rng)
        u = solve_tangent_preimage(h, bracket(h, x))
        w = solve_tangent_preimage(h, bracket(h, y))
        base_val = Omega_h(ctx, u, w)
        if kernel:
            shifts = rng.uniform(-1.0, 1.0, (2, len(kernel)))
            ku = sum((float(s) * k for s, k in zip(shifts[0], kernel)), start=0.0 * h)
            kw = sum((float(s) * k for s, k in zip(shifts[1], kernel)), start=0.0 * h)
            u2 = OrbitTangentVector(h, u.vector, u.preimage + ku)
            w2 = OrbitTangentVector(h, w.vector, w.preimage + kw)
            worst = max(worst, abs(Omega_h(ctx, u2, w2) - base_val))
    return SuiteReport("omega_well_defined", samples, worst, None, 1e-9)


def _suite_d_omega_closed(algebra, form, samples, seed, tol):
    rng = _rng(seed, 15)
    ctx = KKSContext(form, tol=tol)
    worst = 0.0
    for _ in range(samples):
        h = random_element(algebra, rng)
        x = random_element(algebra, rng)
        y = random_element(algebra, rng)
        z = random_element(algebra, rng)
        worst = max(worst, abs(d_Omega(ctx, h, x, y, z)))
    return SuiteReport("d_omega_closed", samples, worst, None, 1e-9)


def _suite_omega_nondegenerate(algebra, form, samples, seed, tol):
    rng = _rng(seed, 16)
    ctx = KKSContext(form, tol=tol)
    bad = 0.0
    runs = max(1, samples // 10)
    for _ in range(runs):
        h = _noncentral(algebra, rng, tol)
        if h is None:
            return SuiteReport("omega_nondegenerate", 0, 0.0, None, 0.5)
        vectors = [solve_tangent_preimage(h, t) for t in tangent_basis(h)]
        gram = np.array([[Omega_h(ctx, a, b) for b in vectors] for a in vectors])
        if rank_with_tol(gram, tol) != len(vectors):
            bad = 1.0
            break
    return SuiteReport("omega_nondegenerate", runs, bad, None, 0.5)


def _suite_kks_pullback(algebra, form, samples, seed, tol):
    rng = _rng(seed, 17)
    ctx = KKSContext(form, tol=tol)
    h = _noncentral(algebra, rng, tol)
    if h is None:
        return SuiteReport("kks_pullback", 0, 0.0, None, 1e-9)
    report = pullback_compare(ctx, h, samples=samples, seed=seed)
    return SuiteReport("kks_pullback", samples, report.max_residual, report.sign, 1e-9)


def _suite_orbit_map_square(algebra, form, samples, seed, tol):
    from .symplectic import induced_orbit_map

    rng = _rng(seed, 18)
    ctx = KKSContext(form, tol=tol)
    bad = 0.0
    runs = min(samples, 50)
    for _ in range(runs):
        x = random_element(algebra, rng)
        g = random_group_element(algebra, rng)
        left = induced_orbit_map(ctx, classify(x))
        right = classify(sharp(form, coadjoint(g, flat(form, x))))
        if not left.matches(right):
            bad = 1.0
            break
    return SuiteReport("orbit_map_square", runs, bad, None, 0.5)


_GENERIC_SUITES = (
    _suite_algebra_axioms,
    _suite_lie_closure,
    _suite_adjoint_action,
    _suite_ad_representation,
    _suite_generator_flow,
    _suite_form_invariance,
    _suite_cartan_criterion,
    _suite_tangent_basis,
)

_NONDEGENERATE_SUITES = (
    _suite_musical_isomorphism,
    _suite_musical_equivariance,
    _suite_symplectic_bilinearity,
    _suite_omega_invariance,
    _suite_omega_kernel,
    _suite_omega_well_defined,
    _suite_d_omega_closed,
    _suite_omega_nondegenerate,
    _suite_kks_pullback,
)

_UNITARY_SUITES = (
    _suite_orbit_descriptor_invariance,
    _suite_orbit_dimensions,
)

_UNITARY_NONDEGENERATE_SUITES = (_suite_orbit_map_square,)


def run_suites(
    algebra: LieAlgebra,
    form: BilinearForm,
    samples: int = 100,
    seed: int = 42,
    tol: Tolerance = DEFAULT_TOL,
) -> list[SuiteReport]:
    """Run every suite applicable to the algebra/form pair.

    A suite aborted by a domain error (the action leaving the algebra, a
    degenerate form, a non-tangent vector) is reported as failed with
    residual 1.0 over tolerance 0 rather than crashing the sweep.
    """
    from .algebra import NotInAlgebra
    from .forms import DegenerateForm
    from .numerics import NoConvergence
    from .orbits import NotSkewHermitian
    from .symplectic import BaseMismatch, CentralElement, NotTangent

    guarded = (
        NotInAlgebra,
        DegenerateForm,
        NoConvergence,
        NotSkewHermitian,
        NotTangent,
        BaseMismatch,
        CentralElement,
    )

    suites = list(_GENERIC_SUITES)
    nondegenerate = form.is_nondegenerate(tol)
    unitary = algebra.family in ("u", "su")
    if nondegenerate:
        suites += list(_NONDEGENERATE_SUITES)
    if unitary:
        suites += list(_UNITARY_SUITES)
    if unitary and nondegenerate:
        suites += list(_UNITARY_NONDEGENERATE_SUITES)

    reports = []
    for suite in suites:
        name = suite.__name__.removeprefix("_suite_")
        try:
            reports.append(suite(algebra, form, samples, seed, tol))
        except guarded:
            reports.append(SuiteReport(name, 0, 1.0, None, 0.0))
    return reports
