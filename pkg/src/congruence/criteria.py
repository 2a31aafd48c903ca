"""Multiplicity, Gorenstein and complete-intersection tests, and freeness criteria.

Every verdict that a theorem would justify is re-checked directly (kernels,
submodule equalities, the freeness oracle), so an input outside a theorem's
hypotheses shows up as InternalInvariantViolation instead of a wrong answer.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations

from .algebra import AlgebraMap, FiniteOAlgebra, IdealData
from .amodule import (
    AModule,
    free_module,
    ideal_times_module,
    quotient_module,
    rank_d,
    restrict_along_surjection,
    submodule_as_module,
    torsion_submodule,
    wiles_defect,
)
from .errors import (
    DimensionMismatch,
    InfiniteLength,
    InternalInvariantViolation,
    NotGorensteinInput,
    PreconditionFailed,
    StabilizationFailure,
)
from .linalg import Matrix, Solver
from .omodule import OModule, Subquotient, kernel_of_map, lattice_basis


class Conclusion(str, enum.Enum):
    FREE = "Free"
    NOT_FREE = "NotFree"
    CI = "CompleteIntersection"
    NOT_CI = "NotCI"
    GORENSTEIN = "Gorenstein"
    NOT_GORENSTEIN = "NotGorenstein"
    ISOMORPHISM = "Isomorphism"
    INCONCLUSIVE = "Inconclusive"


@dataclass
class Verdict:
    conclusion: Conclusion
    certificate: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        return {"verdict": self.conclusion.value, "certificate": self.certificate}


@dataclass(frozen=True)
class MultiplicityResult:
    e: int
    stabilization_index: int
    superficial_crosscheck: int | None
    hilbert: tuple = ()


# ---------------------------------------------------------------------------
# Artinian quotients


class ArtinianAlgebra:
    """R = A/J for an ideal J of finite colength; R-modules are A-modules killed by J."""

    def __init__(self, base: FiniteOAlgebra, ideal: IdealData):
        self.base = base
        self.ideal = ideal
        self.regular = quotient_module(free_module(base, 1), ideal.generators)
        if self.regular.underlying.free_rank():
            raise InfiniteLength(self.regular.underlying.free_rank(), "quotient is not Artinian")

    @classmethod
    def mod_pi(cls, A: FiniteOAlgebra, n: int = 1) -> ArtinianAlgebra:
        return cls(A, A.ideal([A.scalar(A.spec.pi_pow(n))]))

    def length(self) -> int:
        return self.regular.underlying.length()

    @cached_property
    def maximal_ideal(self) -> IdealData:
        A = self.base
        return A.ideal(A.maximal_ideal.vectors + self.ideal.vectors)

    @cached_property
    def socle(self) -> Subquotient:
        return torsion_submodule(self.regular, self.base.maximal_ideal)

    def socle_length(self) -> int:
        return self.socle.length()

    @cached_property
    def socle_ideal(self) -> IdealData:
        return self.base.ideal(self.socle.numerator.columns() + self.ideal.vectors)

    def free_module(self, n: int) -> AModule:
        F = free_module(self.base, n)
        gens = []
        for b in range(n):
            for v in self.ideal.vectors:
                col = [self.base.spec.zero] * (n * self.base.s)
                col[b * self.base.s:(b + 1) * self.base.s] = v
                gens.append(col)
        if not gens:
            return F
        return quotient_module(F, Matrix.from_columns(self.base.spec, gens, F.n))

    def kills(self, M: AModule) -> bool:
        return torsion_submodule(M, self.ideal).same_numerator(M.whole())


# ---------------------------------------------------------------------------
# multiplicity


def _span(M: AModule, cols) -> Matrix:
    X = Matrix.from_columns(M.spec, cols, M.n) if cols else Matrix.zeros(M.spec, M.n, 0)
    X = X.hstack(M.o_relations)
    return lattice_basis(X) if X.cols else X


def _ideal_power_times(M: AModule, gens_mats, N: Matrix) -> Matrix:
    cols = []
    for act in gens_mats:
        cols.extend((act @ N).columns())
    return _span(M, cols)


def multiplicity(A: FiniteOAlgebra, M: AModule | None = None) -> MultiplicityResult:
    """Eventual value of n ↦ ℓ(mⁿM/mⁿ⁺¹M), with a ϖ-reduction crosscheck."""
    if M is None:
        M = free_module(A, 1)
    if M.algebra is not A:
        raise DimensionMismatch("module lives over another algebra")
    free, tors = A.underlying.invariants
    cap = sum(tors) + free + 4
    mats = [M.action_of(g) for g in A.maximal_ideal.vectors]
    cur = _span(M, Matrix.identity(M.spec, M.n).columns())
    values = []
    powers = [cur]
    for n in range(cap + 1):
        nxt = _ideal_power_times(M, mats, cur)
        values.append(Subquotient(M.underlying, cur, nxt, check=False).length())
        powers.append(nxt)
        cur = nxt
        if len(values) >= 3 and values[-1] == values[-2] == values[-3]:
            break
    else:
        raise StabilizationFailure(f"Hilbert function not stable by n = {cap}: {values}")
    e = values[-1]
    idx = len(values) - 3
    cross = None
    if M.depth_ok:
        # ϖ·mⁿM = mⁿ⁺¹M witnesses that (ϖ) is a reduction of m on M
        spec = A.spec
        last = powers[-2]
        pim = _span(M, last.scale(spec.pi_pow(1)).columns())
        if Subquotient(M.underlying, pim).same_numerator(Subquotient(M.underlying, powers[-1])):
            pi_M = _span(M, [[spec.pi_pow(1) if k == j else spec.zero for k in range(M.n)]
                             for j in range(M.n)])
            cross = Subquotient(M.underlying, Matrix.identity(spec, M.n), pi_M, check=False).length()
            if cross != e:
                raise StabilizationFailure(f"Hilbert value {e} != ℓ(M/ϖM) = {cross}")
    return MultiplicityResult(e, idx, cross, tuple(values))


# ---------------------------------------------------------------------------
# freeness oracle and Fitting ideals


def _greedy_generators(M: AModule, candidates, mN_cols) -> list[list]:
    """Keep each candidate not already in (A-span of kept) + mN."""
    A = M.algebra
    Y = _span(M, mN_cols)
    solver = Solver(Y)
    kept = []
    for v in candidates:
        if solver(v) is None:
            kept.append(v)
            Y = _span(M, Y.columns() + [M.action_of(b).apply(v) for b in _basis_vectors(A)])
            solver = Solver(Y)
    return kept


def minimal_generators(M: AModule) -> list[list]:
    """Lifts of a k-basis of M/m_A·M, taken greedily from the O-generators."""
    mM = ideal_times_module(M, M.algebra.maximal_ideal).numerator
    return _greedy_generators(M, Matrix.identity(M.spec, M.n).columns(), mM.columns())


def _basis_vectors(A: FiniteOAlgebra):
    return [A.basis_vector(i) for i in range(A.s)]


def presentation_map(M: AModule, gens) -> Matrix:
    """O-matrix of A^ν -> M sending the b-th basis element of copy j to b·g_j."""
    A = M.algebra
    cols = []
    for g in gens:
        for b in _basis_vectors(A):
            cols.append(M.action_of(b).apply(g))
    return Matrix.from_columns(M.spec, cols, M.n) if cols else Matrix.zeros(M.spec, M.n, 0)


def direct_freeness_oracle(A: FiniteOAlgebra, M: AModule, over: ArtinianAlgebra | None = None) -> Verdict:
    """Free iff A^ν -> M (or R^ν -> M) is injective for minimal generators."""
    gens = minimal_generators(M)
    nu = len(gens)
    F = over.free_module(nu) if over is not None else free_module(A, nu)
    f = presentation_map(M, gens)
    ker = kernel_of_map(f, F.underlying, M.underlying, check=False)
    zero = all(F.underlying.is_zero_vector(c) for c in ker.numerator.columns())
    return Verdict(Conclusion.FREE if zero else Conclusion.NOT_FREE, {"nu": nu})


def _det(A: FiniteOAlgebra, rows) -> list:
    """Determinant of a square matrix with entries in A (coordinate lists)."""
    n = len(rows)
    if n == 0:
        return list(A.one)
    if n == 1:
        return rows[0][0]
    total = [A.spec.zero] * A.s
    for j in range(n):
        entry = rows[0][j]
        if A.is_zero(entry):
            continue
        minor = [r[:j] + r[j + 1:] for r in rows[1:]]
        term = A.mul(entry, _det(A, minor))
        if j % 2:
            total = [a - b for a, b in zip(total, term)]
        else:
            total = [a + b for a, b in zip(total, term)]
    return total


def fitting_ideal(A: FiniteOAlgebra, M: AModule) -> IdealData:
    """Fitt₀ over A from a minimal presentation A^r -> A^ν -> M -> 0."""
    if M.algebra is not A:
        raise DimensionMismatch("module lives over another algebra")
    gens = minimal_generators(M)
    nu = len(gens)
    if nu == 0:
        return A.unit_ideal()
    F = free_module(A, nu)
    f = presentation_map(M, gens)
    K = kernel_of_map(f, F.underlying, M.underlying, check=False)
    # K as an A-submodule of A^ν; pick minimal A-generators
    rels = minimal_generators_in(F, K.numerator)
    if len(rels) < nu:
        return A.zero_ideal()
    s = A.s
    # column c of the relation matrix has entries rels[c][j*s:(j+1)*s]
    entries = [[r[j * s:(j + 1) * s] for r in rels] for j in range(nu)]
    minors = []
    for cols in combinations(range(len(rels)), nu):
        sub = [[entries[j][c] for c in cols] for j in range(nu)]
        d = _det(A, sub)
        if not A.is_zero(d):
            minors.append(d)
    if not minors:
        return A.zero_ideal()
    return A.ideal(minors)


def minimal_generators_in(F: AModule, X: Matrix) -> list[list]:
    """Minimal A-generators of the A-submodule of F spanned over O by the columns of X."""
    mN = []
    for g in F.algebra.maximal_ideal.vectors:
        mN.extend((F.action_of(g) @ X).columns())
    return _greedy_generators(F, X.columns(), mN)


# ---------------------------------------------------------------------------
# ring verdicts


def zero_dim_gorenstein_free_test(R: ArtinianAlgebra, N: AModule) -> Verdict:
    """N is free over a zero-dimensional Gorenstein R iff ℓ(N) <= ℓ(soc(R)·N)·ℓ(R)."""
    if R.socle_length() != 1:
        raise NotGorensteinInput(f"socle of R has length {R.socle_length()}")
    if not R.kills(N):
        raise PreconditionFailed("module is not an R-module")
    lN = N.underlying.length()
    lsoc = ideal_times_module(N, R.socle_ideal).length()
    lR = R.length()
    free = lN <= lsoc * lR
    oracle = direct_freeness_oracle(R.base, N, over=R)
    if (oracle.conclusion == Conclusion.FREE) != free:
        raise InternalInvariantViolation("artinian-gorenstein-freeness", f"criterion says {free}, oracle disagrees")
    cert = {"ellN": lN, "ellSocN": lsoc, "ellR": lR}
    return Verdict(Conclusion.FREE if free else Conclusion.NOT_FREE, cert)


def _mod_pi_socle(A: FiniteOAlgebra):
    R = ArtinianAlgebra.mod_pi(A)
    return R, R.socle


def gorenstein_test(A: FiniteOAlgebra) -> Verdict:
    if not A.depth_at_least_one:
        return Verdict(Conclusion.NOT_GORENSTEIN, {"reason": "depth 0"})
    R, soc = _mod_pi_socle(A)
    ell = soc.length()
    cert = {"socleLength": ell}
    if ell != 1:
        return Verdict(Conclusion.NOT_GORENSTEIN, cert)
    IR = ideal_times_module(R.regular, A.dualizing_ideal)
    if not IR.same_numerator(soc):
        raise InternalInvariantViolation("socle-is-IR", "socle of A/ϖA differs from I_A·(A/ϖA)")
    cert["socleIsIR"] = True
    return Verdict(Conclusion.GORENSTEIN, cert)


def ci_test(A: FiniteOAlgebra) -> Verdict:
    ell_phi = A.conormal.length()
    ell_psi = A.congruence_valuation
    cert = {"ellPhi": ell_phi, "ellPsi": ell_psi, "depthOk": A.depth_at_least_one}
    if not A.depth_at_least_one:
        return Verdict(Conclusion.NOT_CI, cert)
    return Verdict(Conclusion.CI if ell_phi == ell_psi else Conclusion.NOT_CI, cert)


def is_faithful(M: AModule) -> bool:
    """ann_A(M) = 0."""
    A = M.algebra
    mats = []
    for j in range(M.n):
        cols = [M.action_of(A.basis_vector(i)).column(j) for i in range(A.s)]
        mats.append(Matrix.from_columns(A.spec, cols, M.n))
    f = mats[0]
    for m in mats[1:]:
        f = f.vstack(m)
    ker = kernel_of_map(f, A.underlying, M.underlying.power(M.n), check=False)
    return all(A.is_zero(c) for c in ker.numerator.columns())


def freeness_prediamond(A: FiniteOAlgebra, M: AModule) -> Verdict:
    """Free iff δ_A(M) <= d·δ_A(A) and e_A(M) <= d·e(A), for Gorenstein A and depth_ok M."""
    if gorenstein_test(A).conclusion != Conclusion.GORENSTEIN:
        raise PreconditionFailed("algebra is not Gorenstein")
    if not M.depth_ok:
        raise PreconditionFailed("module has depth 0")
    rep = wiles_defect(M)
    dA = A.conormal.length() - A.congruence_valuation
    d = rep.d
    eM = multiplicity(A, M).e
    eA = multiplicity(A).e
    delta_ok = rep.delta <= d * dA
    e_ok = eM <= d * eA
    if delta_ok and (rep.delta != d * dA or rep.ell_gap != 0):
        raise InternalInvariantViolation("defect-decomposition", "δ inequality holds but is not an equality")
    free = delta_ok and e_ok
    oracle = direct_freeness_oracle(A, M)
    if (oracle.conclusion == Conclusion.FREE) != free:
        raise InternalInvariantViolation("prediamond-freeness", f"criterion {free}, oracle {oracle.conclusion.value}")
    cert = {"d": d, "delta": rep.delta, "deltaA": dA, "e": eM, "eA": eA}
    return Verdict(Conclusion.FREE if free else Conclusion.NOT_FREE, cert)


def diamond_test(A: FiniteOAlgebra, M: AModule) -> Verdict:
    if M.underlying.invariants == (0, []):
        raise PreconditionFailed("module is zero")
    if not M.depth_ok:
        raise PreconditionFailed("module has depth 0")
    rep = wiles_defect(M)
    if rep.d < 1:
        raise PreconditionFailed("module is not supported at p_A")
    cert = {"d": rep.d, "delta": rep.delta}
    if rep.delta != 0:
        return Verdict(Conclusion.INCONCLUSIVE, cert)
    if ci_test(A).conclusion != Conclusion.CI:
        raise InternalInvariantViolation("diamond", "δ = 0 but A is not a complete intersection")
    if not is_faithful(M):
        raise InternalInvariantViolation("diamond", "δ = 0 but M is not faithful")
    if not M.torsion_p.same_numerator(M.I_times):
        raise InternalInvariantViolation("diamond", "δ = 0 but M[p] != I·M")
    eM, eA = multiplicity(A, M).e, multiplicity(A).e
    cert.update({"e": eM, "eA": eA, "ci": True, "faithful": True})
    if eM <= rep.d * eA:
        if direct_freeness_oracle(A, M).conclusion != Conclusion.FREE:
            raise InternalInvariantViolation("diamond", "criterion says free, oracle disagrees")
        return Verdict(Conclusion.FREE, cert)
    return Verdict(Conclusion.CI, cert)


def iso_criteria(f: AlgebraMap) -> Verdict:
    f.require_surjective()
    A, B = f.source, f.target
    psiA, psiB = A.congruence_valuation, B.congruence_valuation
    phiA, phiB = A.conormal.length(), B.conormal.length()
    cert = {"ellPsiA": psiA, "ellPsiB": psiB, "ellPhiA": phiA, "ellPhiB": phiB}
    pre1 = gorenstein_test(A).conclusion == Conclusion.GORENSTEIN and B.depth_at_least_one
    hit1 = pre1 and psiA == psiB
    hit2 = phiA == phiB and ci_test(B).conclusion == Conclusion.CI
    if hit1 or hit2:
        if not f.kernel_is_zero():
            raise InternalInvariantViolation("iso-criteria", "criterion met but the kernel is nonzero")
        cert["criterion"] = 1 if hit1 else 2
        return Verdict(Conclusion.ISOMORPHISM, cert)
    if not pre1 and phiA != phiB:
        raise PreconditionFailed("neither criterion applies: A not Gorenstein or B of depth 0, "
                                 "and ℓΦ_A != ℓΦ_B")
    if not pre1 and ci_test(B).conclusion != Conclusion.CI:
        raise PreconditionFailed("A not Gorenstein or B of depth 0, and B is not a complete intersection")
    return Verdict(Conclusion.INCONCLUSIVE, cert)


def wiles_criterion(f: AlgebraMap) -> Verdict:
    B = f.target
    if not B.depth_at_least_one:
        raise PreconditionFailed("target has depth 0")
    M = restrict_along_surjection(free_module(B, 1), f)
    rep = wiles_defect(M)
    cert = {"delta": rep.delta}
    if rep.delta != 0:
        return Verdict(Conclusion.INCONCLUSIVE, cert)
    if not f.kernel_is_zero():
        raise InternalInvariantViolation("wiles-criterion", "δ_A(B) = 0 but the kernel is nonzero")
    if ci_test(B).conclusion != Conclusion.CI:
        raise InternalInvariantViolation("wiles-criterion", "δ_A(B) = 0 but B is not a complete intersection")
    cert["ci"] = True
    return Verdict(Conclusion.ISOMORPHISM, cert)


def maximal_ideal_module(R: ArtinianAlgebra) -> AModule:
    """m_R as an A-module (generated inside the regular R-module)."""
    return submodule_as_module(R.regular, R.maximal_ideal.generators)


def wiebe_module_test(R: ArtinianAlgebra, M: AModule) -> Verdict:
    """If ℓ(M) <= ℓ(Fitt(m)·M)·ℓ(R) then R is a complete intersection and M is free."""
    if not R.kills(M):
        raise PreconditionFailed("module is not an R-module")
    if M.underlying.invariants == (0, []):
        raise PreconditionFailed("module is zero")
    A = R.base
    fitt = fitting_ideal(A, maximal_ideal_module(R))
    fitt_R = A.ideal(fitt.vectors + R.ideal.vectors)
    eM = M.underlying.length()
    eR = R.length()
    lfm = ideal_times_module(M, fitt_R).length()
    fitt_in_R = ideal_times_module(R.regular, fitt_R)
    cert = {"e": eM, "eR": eR, "ellFittM": lfm, "fittZero": fitt_in_R.is_zero()}
    if eM > lfm * eR:
        return Verdict(Conclusion.INCONCLUSIVE, cert)
    if not fitt_in_R.same_numerator(R.socle):
        raise InternalInvariantViolation("wiebe", "Fitt(m) differs from the socle")
    if R.socle_length() != 1:
        raise InternalInvariantViolation("wiebe", "R is not Gorenstein")
    if direct_freeness_oracle(A, M, over=R).conclusion != Conclusion.FREE:
        raise InternalInvariantViolation("wiebe", "criterion says free, oracle disagrees")
    cert.update({"ci": True, "free": True})
    return Verdict(Conclusion.FREE, cert)
