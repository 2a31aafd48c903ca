"""Complete-intersection presentations α: C ↠ A and the defect of the CM quotient.

For a presentation with kernel K, I = λ_C(ann_C K) and J = λ_C(Fitt_C K).
Then AQ₁(A|C; O) = K ⊗_C O has length ℓ(O/J), AQ₂(O|A; O) is read off the
Jacobi–Zariski sequence 0 → AQ₂ → AQ₁ → Φ_C → Φ_A → 0, and

    δ_A(B) = ℓ(AQ₂) − ℓ(I/J) <= ℓ(O/I)

with equality exactly when ℓΦ_C = ℓΦ_A.

Hand check for C = O[x]/(x² − ϖx) ↠ A = O[x]/(ϖx, x²): K = ϖx·O,
ann K = (x − ϖ) so I = ϖO; K has one generator with relation ideal (x − ϖ),
so J = ϖO too.  ℓΦ_C = ℓΦ_A = 1, AQ₁ = AQ₂ = 1, B = O and δ_A(O) = 1 = ℓ(O/I).
"""
from __future__ import annotations

from dataclasses import asdict, dataclass

from .algebra import AlgebraMap, FiniteOAlgebra, IdealData, cm_quotient, quotient_map
from .amodule import free_module, ideal_as_module, restrict_along_surjection, wiles_defect
from .criteria import Conclusion, ci_test, fitting_ideal, gorenstein_test
from .dvr import INFINITY
from .errors import InternalInvariantViolation, PreconditionFailed
from .linalg import Matrix
from .omodule import OModule, Subquotient


@dataclass
class CIPresentation:
    C: FiniteOAlgebra
    A: FiniteOAlgebra
    alpha: Matrix
    linear_part: Matrix | None = None

    def __post_init__(self):
        self.map = AlgebraMap(self.C, self.A, self.alpha)
        self.map.require_surjective()
        if ci_test(self.C).conclusion != Conclusion.CI:
            raise PreconditionFailed("source of the presentation is not a complete intersection")


@dataclass(frozen=True)
class VenkateshReport:
    ell_I: int
    ell_J: int
    ell_I_over_J: int
    aq1: int
    aq2: int
    delta_B: int
    minimal: bool
    ell_phi_A: int
    ell_phi_C: int

    def as_dict(self) -> dict:
        return asdict(self)


def _lam_length(C: FiniteOAlgebra, J: IdealData) -> int:
    v = J.lam_valuation()
    if v == INFINITY:
        raise InternalInvariantViolation("venkatesh-ideals", "λ_C of the ideal is zero")
    return int(v)


def kernel_ideal(pres: CIPresentation) -> IdealData:
    K = pres.map.kernel
    for g in K.vectors:
        if not pres.A.is_zero(pres.map(g)):
            raise InternalInvariantViolation("venkatesh-kernel", "kernel generator has nonzero image")
    return K


def I_and_J(pres: CIPresentation) -> tuple[int, int]:
    C = pres.C
    K = kernel_ideal(pres)
    ell_I = _lam_length(C, C.annihilator(K))
    ell_J = _lam_length(C, fitting_ideal(C, ideal_as_module(C, K)))
    if ell_J < ell_I:
        raise InternalInvariantViolation("venkatesh-ideals", f"ℓ(O/J) = {ell_J} < ℓ(O/I) = {ell_I}")
    return ell_I, ell_J


def aq_lengths(pres: CIPresentation, ell_J: int | None = None) -> tuple[int, int]:
    C, A = pres.C, pres.A
    K = kernel_ideal(pres)
    pK = C.ideal_product(C.augmentation_ideal, K)
    aq1 = Subquotient(C.underlying, K.generators.hstack(pK.generators), pK.generators,
                      check=False).length()
    aq2 = A.conormal.length() - C.conormal.length() + aq1
    if ell_J is None:
        ell_J = I_and_J(pres)[1]
    if aq1 != ell_J:
        raise InternalInvariantViolation("venkatesh-aq1", f"ℓ(AQ₁) = {aq1} but ℓ(O/J) = {ell_J}")
    if aq2 < 0:
        raise InternalInvariantViolation("venkatesh-aq2", f"ℓ(AQ₂) = {aq2} < 0")
    return aq1, aq2


def defect_of_cm_quotient(A: FiniteOAlgebra) -> int:
    """δ_A(B) for B = A/Γ, with B viewed as an A-module."""
    B = cm_quotient(A)
    q = quotient_map(A, B) if B is not A else AlgebraMap(A, A, Matrix.identity(A.spec, A.s))
    M = restrict_along_surjection(free_module(B, 1), q)
    return wiles_defect(M).delta


def venkatesh_check(pres: CIPresentation) -> VenkateshReport:
    C, A = pres.C, pres.A
    ell_I, ell_J = I_and_J(pres)
    aq1, aq2 = aq_lengths(pres, ell_J)
    phi_A, phi_C = A.conormal.length(), C.conormal.length()
    if pres.linear_part is not None:
        lp = OModule(C.spec, pres.linear_part.cols, pres.linear_part.transpose()).length()
        if lp != phi_C:
            raise InternalInvariantViolation("linear-part", f"ℓ coker(a_ij) = {lp} != ℓΦ_C = {phi_C}")
    delta_B = defect_of_cm_quotient(A)
    minimal = phi_C == phi_A
    if delta_B != aq2 - (ell_J - ell_I):
        raise InternalInvariantViolation(
            "venkatesh-formula", f"δ_A(B) = {delta_B} != ℓAQ₂ − ℓ(I/J) = {aq2 - (ell_J - ell_I)}")
    if delta_B > ell_I:
        raise InternalInvariantViolation("venkatesh-bound", f"δ_A(B) = {delta_B} > ℓ(O/I) = {ell_I}")
    if minimal and delta_B != ell_I:
        raise InternalInvariantViolation("venkatesh-minimal", "minimal presentation without equality")
    return VenkateshReport(ell_I, ell_J, ell_J - ell_I, aq1, aq2, delta_B, minimal, phi_A, phi_C)


@dataclass(frozen=True)
class GorsumReport:
    ell_psi_C: int
    ell_psi_B: int
    ell_I: int

    def as_dict(self) -> dict:
        return asdict(self)


def gorsum_check(C: FiniteOAlgebra, alpha: AlgebraMap) -> GorsumReport:
    """ℓΨ_C = ℓΨ_B + ℓ(O/I) for Gorenstein C and B the CM quotient of the target."""
    if gorenstein_test(C).conclusion != Conclusion.GORENSTEIN:
        raise PreconditionFailed("source is not Gorenstein")
    src = alpha.source
    if src is not C and (src.s != C.s or src.mult != C.mult or src.lam != C.lam):
        raise PreconditionFailed("map does not start at C")
    alpha.require_surjective()
    K = alpha.kernel
    ell_I = _lam_length(C, C.annihilator(K))
    B = cm_quotient(alpha.target)
    psi_C, psi_B = C.congruence_valuation, B.congruence_valuation
    if psi_C != psi_B + ell_I:
        raise InternalInvariantViolation("gorenstein-sum", f"ℓΨ_C = {psi_C} != {psi_B} + {ell_I}")
    return GorsumReport(psi_C, psi_B, ell_I)


def map_from_variable_images(C: FiniteOAlgebra, exponents, images, A: FiniteOAlgebra) -> Matrix:
    """Matrix of the algebra map sending the monomial basis of C (given by
    exponent tuples) to products of the variable images in A."""
    cols = []
    for e in exponents:
        v = list(A.one)
        for img, k in zip(images, e):
            for _ in range(k):
                v = A.mul(v, A.element(img))
        cols.append(v)
    return Matrix.from_columns(A.spec, cols, A.s)
