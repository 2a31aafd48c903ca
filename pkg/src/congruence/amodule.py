"""Finitely generated modules over a FiniteOAlgebra.

An AModule is an O-module coker(o_relations) on n generators together with
one n×n action matrix per algebra basis element.  Submodules are returned as
Subquotients of the underlying O-module.
"""
from __future__ import annotations

from dataclasses import asdict, dataclass
from functools import cached_property

from .algebra import AlgebraMap, FiniteOAlgebra, IdealData
from .errors import (
    ActionInvalid,
    DimensionMismatch,
    InfiniteLength,
    InternalInvariantViolation,
    NotSurjective,
)
from .linalg import Matrix, Solver
from .omodule import OModule, Subquotient, block_diag, kernel_of_map, lattice_basis


class AModule:
    def __init__(self, algebra: FiniteOAlgebra, n: int, o_relations: Matrix | None, action,
                 check: bool = True):
        spec = algebra.spec
        if o_relations is None:
            o_relations = Matrix.zeros(spec, n, 0)
        elif not isinstance(o_relations, Matrix):
            o_relations = (Matrix.from_columns(spec, [[spec.coerce(x) for x in r] for r in o_relations], n)
                           if o_relations else Matrix.zeros(spec, n, 0))
        acts = []
        for a in action:
            if not isinstance(a, Matrix):
                a = Matrix.from_rows(spec, [[spec.coerce(x) for x in r] for r in a], n)
            acts.append(a)
        if len(acts) != algebra.s:
            raise DimensionMismatch(f"need {algebra.s} action matrices, got {len(acts)}")
        if any(a.rows != n or a.cols != n for a in acts):
            raise DimensionMismatch(f"action matrices must be {n}x{n}")
        self.algebra = algebra
        self.spec = spec
        self.n = n
        self.o_relations = o_relations
        self.action = acts
        self.underlying = OModule(spec, n, o_relations)
        if check:
            self._check()

    @property
    def generator_count(self) -> int:
        return self.n

    def action_of(self, a) -> Matrix:
        """Matrix of the action of the algebra element with coordinates a."""
        spec, n = self.spec, self.n
        out = Matrix.zeros(spec, n, n)
        for ai, act in zip(a, self.action):
            if ai:
                out = out + act.scale(ai)
        return out

    def _same(self, X: Matrix, Y: Matrix) -> bool:
        D = X - Y
        return all(self.underlying.is_zero_vector(c) for c in D.columns())

    def _check(self) -> None:
        A, names = self.algebra, self.algebra.names
        zero = self.underlying.is_zero_vector
        for i, act in enumerate(self.action):
            for k, rho in enumerate(self.o_relations.columns()):
                if not zero(act.apply(rho)):
                    raise ActionInvalid(f"action of {names[i]} does not preserve relation {k}",
                                        (names[i], k))
        ident = Matrix.identity(self.spec, self.n)
        if not self._same(self.action_of(A.one), ident):
            raise ActionInvalid("one does not act as the identity", ("one",))
        for k, rho in enumerate(A.module_relations.columns()):
            act = self.action_of(rho)
            if not all(zero(c) for c in act.columns()):
                raise ActionInvalid(f"algebra relation {k} does not act as zero", ("relation", k))
        for i in range(A.s):
            for j in range(i, A.s):
                prod = self.action[i] @ self.action[j]
                if not self._same(prod, self.action[j] @ self.action[i]):
                    raise ActionInvalid(f"actions of {names[i]} and {names[j]} do not commute",
                                        (names[i], names[j]))
                if not self._same(prod, self.action_of(A.mult[i][j])):
                    raise ActionInvalid(f"action of {names[i]}*{names[j]} disagrees with the product",
                                        (names[i], names[j]))

    # derived submodules ----------------------------------------------------

    @cached_property
    def depth_ok(self) -> bool:
        return not self.underlying.invariants[1]

    @cached_property
    def torsion_p(self) -> Subquotient:
        return torsion_submodule(self, self.algebra.augmentation_ideal)

    @cached_property
    def torsion_I(self) -> Subquotient:
        return torsion_submodule(self, self.algebra.dualizing_ideal)

    @cached_property
    def I_times(self) -> Subquotient:
        return ideal_times_module(self, self.algebra.dualizing_ideal)

    def whole(self) -> Subquotient:
        return self.underlying.whole()

    def __repr__(self) -> str:
        return f"AModule(n={self.n}, relations={self.o_relations.cols})"


def _stack(mats, spec, n):
    if not mats:
        return Matrix.zeros(spec, 0, n)
    f = mats[0]
    for m in mats[1:]:
        f = f.vstack(m)
    return f


def torsion_submodule(M: AModule, J: IdealData) -> Subquotient:
    """M[J] = {m : J·m = 0}."""
    mats = [M.action_of(g) for g in J.vectors]
    if not mats:
        return M.whole()
    f = _stack(mats, M.spec, M.n)
    return kernel_of_map(f, M.underlying, M.underlying.power(len(mats)), check=False)


def ideal_times_module(M: AModule, J: IdealData) -> Subquotient:
    """J·M, spanned by the images of the generators of M under J's generators."""
    cols = []
    for g in J.vectors:
        cols.extend(M.action_of(g).columns())
    X = Matrix.from_columns(M.spec, cols, M.n) if cols else Matrix.zeros(M.spec, M.n, 0)
    return Subquotient(M.underlying, X, check=False)


def congruence_module(M: AModule) -> Subquotient:
    """Ψ_A(M) = M/(M[p] + M[I])."""
    den = M.torsion_p.numerator.hstack(M.torsion_I.numerator)
    return Subquotient(M.underlying, Matrix.identity(M.spec, M.n), den, check=False)


def bar_congruence_module(M: AModule) -> Subquotient:
    """Ψ̄_A(M) = M/(M[I] + I·M)."""
    den = M.torsion_I.numerator.hstack(M.I_times.numerator)
    return Subquotient(M.underlying, Matrix.identity(M.spec, M.n), den, check=False)


def rank_d(M: AModule) -> int:
    return M.torsion_p.free_rank()


def gap_module(M: AModule) -> Subquotient:
    """M[p]/I·M (I·M lies in M[p] because p·I = 0)."""
    return Subquotient(M.underlying, M.torsion_p.numerator.hstack(M.I_times.numerator),
                       M.I_times.numerator, check=False)


@dataclass(frozen=True)
class DefectReport:
    d: int
    ell_phi: int
    ell_psi_A: int
    ell_psi_M: int
    ell_psi_bar: int | None
    ell_gap: int | None
    delta: int
    depth_ok: bool
    decomposition_checked: bool

    def as_dict(self) -> dict:
        return asdict(self)


def _length_or_none(sq: Subquotient):
    try:
        return sq.length()
    except InfiniteLength:
        return None


def wiles_defect(M: AModule) -> DefectReport:
    A = M.algebra
    d = rank_d(M)
    ell_phi = A.conormal.length()
    ell_psi_A = A.congruence_valuation
    ell_psi_M = congruence_module(M).length()
    delta = d * ell_phi - ell_psi_M
    bar = _length_or_none(bar_congruence_module(M))
    gap = _length_or_none(gap_module(M))
    checked = False
    if M.depth_ok:
        if gap is None or bar is None:
            raise InternalInvariantViolation("defect-decomposition", "gap or bar module of infinite length")
        if delta != d * (ell_phi - ell_psi_A) + gap:
            raise InternalInvariantViolation(
                "defect-decomposition", f"δ = {delta} but d·δ_A(A) + gap = {d * (ell_phi - ell_psi_A) + gap}")
        if bar != ell_psi_M + gap:
            raise InternalInvariantViolation("bar-congruence-gap", f"ℓΨ̄ = {bar} != ℓΨ + gap = {ell_psi_M + gap}")
        if bar != d * ell_psi_A:
            raise InternalInvariantViolation("defect-decomposition", f"ℓΨ̄ = {bar} != d·ℓΨ_A = {d * ell_psi_A}")
        checked = True
    return DefectReport(d, ell_phi, ell_psi_A, ell_psi_M, bar, gap, delta, M.depth_ok, checked)


def restrict_along_surjection(M: AModule, f: AlgebraMap) -> AModule:
    """M over B viewed as a module over A through the surjection f: A -> B."""
    if M.algebra is not f.target:
        raise DimensionMismatch("module does not live over the target of the map")
    if not f.is_surjective:
        raise NotSurjective("restriction needs a surjection")
    acts = [M.action_of(c) for c in f.matrix.columns()]
    return AModule(f.source, M.n, M.o_relations, acts, check=False)


# ---------------------------------------------------------------------------
# builders


def free_module(A: FiniteOAlgebra, n: int = 1) -> AModule:
    spec = A.spec
    rel = Matrix.zeros(spec, 0, 0)
    for _ in range(n):
        rel = block_diag(rel, A.module_relations)
    acts = []
    for L in A.left_mult:
        act = Matrix.zeros(spec, 0, 0)
        for _ in range(n):
            act = block_diag(act, L)
        acts.append(act)
    return AModule(A, A.s * n, rel, acts, check=False)


def direct_sum(M: AModule, N: AModule) -> AModule:
    if M.algebra is not N.algebra:
        raise DimensionMismatch("modules over different algebras")
    acts = [block_diag(a, b) for a, b in zip(M.action, N.action)]
    return AModule(M.algebra, M.n + N.n, block_diag(M.o_relations, N.o_relations), acts, check=False)


def submodule_as_module(M: AModule, X: Matrix) -> AModule:
    """The A-stable O-submodule of M spanned by the columns of X, on those generators."""
    spec = M.spec
    t = X.cols
    syz = kernel_of_map(X, OModule(spec, t), M.underlying, check=False).numerator
    solver = Solver(X.hstack(M.o_relations))
    acts = []
    for act in M.action:
        cols = []
        for g in X.columns():
            x = solver(act.apply(g))
            if x is None:
                raise ActionInvalid("the generators do not span an A-submodule", ())
            cols.append(x[:t])
        acts.append(Matrix.from_columns(spec, cols, t) if cols else Matrix.zeros(spec, t, t))
    return AModule(M.algebra, t, syz, acts)


def ideal_as_module(A: FiniteOAlgebra, J: IdealData) -> AModule:
    """The ideal J as an A-module, generated by J's O-generators."""
    return submodule_as_module(free_module(A, 1), J.generators)


def quotient_module(M: AModule, sub) -> AModule:
    """M/N for an A-stable submodule N (a Subquotient or generator Matrix)."""
    X = sub.numerator if isinstance(sub, Subquotient) else sub
    rel = M.o_relations.hstack(X)
    if rel.cols:
        rel = lattice_basis(rel)
    return AModule(M.algebra, M.n, rel, M.action)


def lambda_module(A: FiniteOAlgebra) -> AModule:
    """O viewed as an A-module through λ."""
    spec = A.spec
    acts = [Matrix(spec, 1, 1, [[x]]) for x in A.lam]
    return AModule(A, 1, None, acts)


def residue_module(A: FiniteOAlgebra) -> AModule:
    """k = O/ϖ viewed as an A-module."""
    spec = A.spec
    acts = [Matrix(spec, 1, 1, [[x]]) for x in A.lam]
    return AModule(A, 1, Matrix(spec, 1, 1, [[spec.pi_pow(1)]]), acts)


def algebra_as_module(A: FiniteOAlgebra, f: AlgebraMap) -> AModule:
    """B as an A-module via the surjection f: A -> B."""
    return restrict_along_surjection(free_module(f.target, 1), f)
