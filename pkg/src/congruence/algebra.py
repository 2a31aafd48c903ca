"""Finite augmented O-algebras given by structure constants.

An algebra has an O-module presentation on basis symbols e_0..e_{s-1}
(``module_relations``, columns), structure constants e_i·e_j = Σ c_ij^k e_k,
a unit vector and the augmentation λ given by its values on the e_i.
``validate`` checks every axiom and names the first one that fails.

Ideals are O-submodules of the underlying module, stored as generator
columns; ambient relations are always implicit.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import product

from .dvr import INFINITY, DvrSpec
from .errors import (
    AugmentationNotInduced,
    ConormalInfinite,
    DimensionMismatch,
    InfiniteLength,
    InternalInvariantViolation,
    LambdaNotMultiplicative,
    LambdaNotUnital,
    NotAlgebraMap,
    NotAssociative,
    NotCommutative,
    NotLocal,
    NotSurjective,
    NotUnital,
    NotWellDefined,
    ParseError,
)
from .linalg import Matrix, Solver
from .omodule import OModule, Subquotient, kernel_of_map, lattice_basis


class FiniteOAlgebra:
    """A validated algebra; build instances through :func:`validate`."""

    def __init__(self, spec: DvrSpec, names, module_relations: Matrix, mult, one, lam):
        self.spec = spec
        self.names = list(names)
        self.s = len(self.names)
        self.module_relations = module_relations
        self.mult = mult  # mult[i][j] = raw coordinate list of e_i·e_j
        self.one = list(one)
        self.lam = list(lam)
        self.underlying = OModule(spec, self.s, module_relations)

    @property
    def basis_size(self) -> int:
        return self.s

    # element arithmetic --------------------------------------------------

    @cached_property
    def left_mult(self) -> list[Matrix]:
        """L[i] is the matrix of multiplication by e_i."""
        s = self.s
        return [Matrix(self.spec, s, s, [[self.mult[i][j][k] for j in range(s)] for k in range(s)])
                for i in range(s)]

    def mult_matrix(self, a) -> Matrix:
        """Matrix of multiplication by the element with coordinates a."""
        s, spec = self.s, self.spec
        z = spec.zero
        data = [[z] * s for _ in range(s)]
        for i, ai in enumerate(a):
            if ai:
                Li = self.left_mult[i].data
                for r in range(s):
                    row, src = data[r], Li[r]
                    for c in range(s):
                        if src[c]:
                            row[c] = row[c] + ai * src[c]
        return Matrix(spec, s, s, data)

    def mul(self, a, b) -> list:
        return self.mult_matrix(a).apply(b)

    def basis_vector(self, i: int) -> list:
        z, o = self.spec.zero, self.spec.one
        return [o if k == i else z for k in range(self.s)]

    def element(self, coords) -> list:
        return [self.spec.coerce(c) for c in coords]

    def scalar(self, c) -> list:
        c = self.spec.coerce(c)
        return [c * x for x in self.one]

    def lam_of(self, v):
        """λ of the element with coordinates v (raw)."""
        z = self.spec.zero
        s = z
        for a, b in zip(v, self.lam):
            if a and b:
                s = s + a * b
        return s

    def is_zero(self, v) -> bool:
        return self.underlying.is_zero_vector(v)

    def equal(self, a, b) -> bool:
        return self.is_zero([x - y for x, y in zip(a, b)])

    @cached_property
    def lam_matrix(self) -> Matrix:
        return Matrix(self.spec, 1, self.s, [list(self.lam)])

    # ideals ----------------------------------------------------------------

    def ideal(self, elements) -> IdealData:
        """The ideal generated by ``elements`` (coordinate lists)."""
        elements = [self.element(e) for e in elements]
        gens = []
        for g in elements:
            gens.append(g)
            for L in self.left_mult:
                gens.append(L.apply(g))
        return IdealData.from_vectors(self, gens)

    def ideal_product(self, I: IdealData, J: IdealData) -> IdealData:
        gens = [self.mul(a, b) for a in I.vectors for b in J.vectors]
        return IdealData.from_vectors(self, gens)

    def unit_ideal(self) -> IdealData:
        return IdealData.from_vectors(self, [self.basis_vector(i) for i in range(self.s)])

    def zero_ideal(self) -> IdealData:
        return IdealData(self, Matrix.zeros(self.spec, self.s, 0))

    @cached_property
    def augmentation_ideal(self) -> IdealData:
        O = OModule(self.spec, 1)
        ker = kernel_of_map(self.lam_matrix, self.underlying, O, check=False)
        return IdealData(self, ker.numerator)

    @cached_property
    def maximal_ideal(self) -> IdealData:
        pi = self.scalar(self.spec.pi_pow(1))
        return IdealData.from_vectors(self, [pi] + self.augmentation_ideal.vectors)

    def annihilator(self, J: IdealData) -> IdealData:
        """A[J] = {a : a·J = 0}."""
        mats = [self.mult_matrix(g) for g in J.vectors]
        if not mats:
            return self.unit_ideal()
        f = mats[0]
        for m in mats[1:]:
            f = f.vstack(m)
        target = self.underlying.power(len(mats))
        ker = kernel_of_map(f, self.underlying, target, check=False)
        return IdealData(self, ker.numerator)

    @cached_property
    def dualizing_ideal(self) -> IdealData:
        """I_A = A[p_A]."""
        return self.annihilator(self.augmentation_ideal)

    @cached_property
    def conormal(self) -> Subquotient:
        p = self.augmentation_ideal
        p2 = self.ideal_product(p, p)
        return Subquotient(self.underlying, p.generators, p2.generators, check=False)

    @cached_property
    def congruence_valuation(self):
        """v with λ(I_A) = ϖᵛ O."""
        val = self.spec.val
        v = min((val(self.lam_of(g)) for g in self.dualizing_ideal.vectors), default=INFINITY)
        if v == INFINITY:
            raise InternalInvariantViolation("dualizing-rank", "λ(I_A) = 0")
        return int(v)

    @cached_property
    def depth_at_least_one(self) -> bool:
        return not self.underlying.invariants[1]

    @cached_property
    def torsion_ideal(self) -> IdealData:
        t = self.underlying.torsion_part()
        return IdealData(self, t.numerator)

    @cached_property
    def rank(self) -> int:
        return self.underlying.free_rank()

    def __repr__(self) -> str:
        return f"FiniteOAlgebra({self.spec}, basis={self.names})"


@dataclass
class IdealData:
    algebra: FiniteOAlgebra
    generators: Matrix  # columns, basis coordinates

    @classmethod
    def from_vectors(cls, A: FiniteOAlgebra, vecs) -> IdealData:
        spec = A.spec
        if not vecs:
            return cls(A, Matrix.zeros(spec, A.s, 0))
        X = Matrix.from_columns(spec, vecs, A.s)
        return cls(A, _prune(A, lattice_basis(X)))

    @property
    def vectors(self) -> list[list]:
        return self.generators.columns()

    def as_subquotient(self) -> Subquotient:
        return Subquotient(self.algebra.underlying, self.generators, check=False)

    def contains(self, v) -> bool:
        return self.as_subquotient().contains(v)

    def same_as(self, other: IdealData) -> bool:
        return self.as_subquotient().same_numerator(other.as_subquotient())

    def is_zero(self) -> bool:
        A = self.algebra
        return all(A.is_zero(v) for v in self.vectors)

    def lam_valuation(self):
        A = self.algebra
        return min((A.spec.val(A.lam_of(g)) for g in self.vectors), default=INFINITY)

    def is_closed(self) -> bool:
        A = self.algebra
        return all(self.contains(L.apply(g)) for L in A.left_mult for g in self.vectors)


def _prune(A: FiniteOAlgebra, X: Matrix) -> Matrix:
    """Drop generator columns that are zero in A."""
    keep = [j for j, c in enumerate(X.columns()) if not A.is_zero(c)]
    return X.select_columns(keep)


# ---------------------------------------------------------------------------
# validation


def _vec(spec, v, s, what):
    if len(v) != s:
        raise DimensionMismatch(f"{what} has length {len(v)}, expected {s}")
    return [spec.coerce(x) for x in v]


def validate(spec: DvrSpec, names, module_relations, mult, one, lam) -> FiniteOAlgebra:
    """Check the axioms of a finite augmented O-algebra and return it.

    ``mult`` is an s×s nested list of coordinate vectors, or a dict keyed by
    "xi*xj" over basis names (missing symmetric entries are filled in).
    ``module_relations`` is a list of relation vectors or a Matrix.
    """
    names = list(names)
    s = len(names)
    if len(set(names)) != s:
        raise ParseError("duplicate basis names")
    if isinstance(module_relations, Matrix):
        R = module_relations
    else:
        rels = [_vec(spec, r, s, "module relation") for r in module_relations]
        R = Matrix.from_columns(spec, rels, s) if rels else Matrix.zeros(spec, s, 0)
    if isinstance(mult, dict):
        mult = _mult_from_dict(spec, names, mult)
    if len(mult) != s or any(len(row) != s for row in mult):
        raise DimensionMismatch("mult must be s x s")
    C = [[_vec(spec, mult[i][j], s, f"mult[{i}][{j}]") for j in range(s)] for i in range(s)]
    A = FiniteOAlgebra(spec, names, R, C, _vec(spec, one, s, "one"),
                       _vec(spec, lam, s, "lambda"))
    _check_axioms(A)
    return A


def _mult_from_dict(spec, names, d):
    idx = {n: i for i, n in enumerate(names)}
    s = len(names)
    out = [[None] * s for _ in range(s)]
    for key, coords in d.items():
        parts = key.split("*")
        if len(parts) != 2 or parts[0].strip() not in idx or parts[1].strip() not in idx:
            raise ParseError(f"bad mult key {key!r}")
        i, j = idx[parts[0].strip()], idx[parts[1].strip()]
        out[i][j] = coords
    for i in range(s):
        for j in range(s):
            if out[i][j] is None:
                if out[j][i] is None:
                    raise ParseError(f"missing product {names[i]}*{names[j]}")
                out[i][j] = out[j][i]
    return out


def _check_axioms(A: FiniteOAlgebra) -> None:
    spec, s, names = A.spec, A.s, A.names
    zero_in_A = A.underlying.is_zero_vector
    L = A.left_mult
    for k, rho in enumerate(A.module_relations.columns()):
        if A.lam_of(rho):
            raise NotWellDefined(f"λ does not vanish on module relation {k}", ("lambda", k))
        for i in range(s):
            if not zero_in_A(L[i].apply(rho)):
                raise NotWellDefined(
                    f"{names[i]} times module relation {k} is not zero", (names[i], k))
    for i in range(s):
        for j in range(i + 1, s):
            if not A.equal(A.mult[i][j], A.mult[j][i]):
                raise NotCommutative(f"{names[i]}*{names[j]} != {names[j]}*{names[i]}",
                                     (names[i], names[j]))
    for i in range(s):
        if not A.equal(A.mul(A.one, A.basis_vector(i)), A.basis_vector(i)):
            raise NotUnital(f"one*{names[i]} != {names[i]}", (names[i],))
    for i, j, k in product(range(s), repeat=3):
        left = L[k].apply(A.mult[i][j])      # (e_i e_j) e_k
        right = L[i].apply(A.mult[j][k])     # e_i (e_j e_k)
        if not A.equal(left, right):
            raise NotAssociative(f"({names[i]}*{names[j]})*{names[k]} != "
                                 f"{names[i]}*({names[j]}*{names[k]})",
                                 (names[i], names[j], names[k]))
    if A.lam_of(A.one) != spec.one:
        raise LambdaNotUnital("λ(one) != 1", ("one",))
    for i in range(s):
        for j in range(i, s):
            if A.lam_of(A.mult[i][j]) != A.lam[i] * A.lam[j]:
                raise LambdaNotMultiplicative(
                    f"λ({names[i]}*{names[j]}) != λ({names[i]})·λ({names[j]})", (names[i], names[j]))
    _check_local(A)
    phi = A.conormal
    free = phi.free_rank()
    if free:
        raise ConormalInfinite(f"conormal module has free rank {free}", (free,))


def _check_local(A: FiniteOAlgebra) -> None:
    """m_A^N ⊆ ϖA for some N <= s+1."""
    spec, s = A.spec, A.s
    pi = spec.pi_pow(1)
    piA = [[pi if k == i else spec.zero for k in range(s)] for i in range(s)]
    target = Subquotient(A.underlying, Matrix.from_columns(spec, piA, s), check=False)
    m = A.maximal_ideal.vectors
    power = m
    for _ in range(s + 1):
        if all(target.contains(v) for v in power):
            return
        prods = [A.mul(a, b) for a in m for b in power] + piA
        X = Matrix.from_columns(spec, prods, s)
        power = lattice_basis(X).columns()
    if all(target.contains(v) for v in power):
        return
    raise NotLocal(f"m_A^{s + 1} is not contained in ϖA", (s + 1,))


# ---------------------------------------------------------------------------
# derived operations (functional API)


def augmentation_ideal(A: FiniteOAlgebra) -> IdealData:
    return A.augmentation_ideal


def annihilator_of_ideal(A: FiniteOAlgebra, J: IdealData) -> IdealData:
    return A.annihilator(J)


def conormal_module(A: FiniteOAlgebra) -> OModule:
    return A.conormal.as_omodule()


def congruence_algebra(A: FiniteOAlgebra) -> tuple[int, int]:
    """(v, ℓ(Ψ_A)) where λ(I_A) = ϖᵛ; the two numbers agree."""
    v = A.congruence_valuation
    return v, v


def depth_at_least_one(A: FiniteOAlgebra) -> bool:
    return A.depth_at_least_one


def torsion_ideal(A: FiniteOAlgebra) -> IdealData:
    return A.torsion_ideal


def quotient_by_ideal(A: FiniteOAlgebra, J: IdealData) -> FiniteOAlgebra:
    """A/J on the same basis symbols; requires λ(J) = 0."""
    for g in J.vectors:
        if A.lam_of(g):
            raise AugmentationNotInduced("λ does not vanish on the ideal", tuple(g))
    R = A.module_relations.hstack(J.generators)
    R = _prune_relations(A.spec, R)
    return validate(A.spec, A.names, R, A.mult, A.one, A.lam)


def _prune_relations(spec, R: Matrix) -> Matrix:
    if R.cols == 0:
        return R
    return lattice_basis(R)


def cm_quotient(A: FiniteOAlgebra) -> FiniteOAlgebra:
    """B = A/Γ with Γ the O-torsion ideal."""
    if A.depth_at_least_one:
        return A
    return quotient_by_ideal(A, A.torsion_ideal)


def conormal_from_presentation(a: Matrix) -> OModule:
    """coker(O^c -(a_ij)-> O^n): rows of ``a`` are relations, columns variables."""
    return OModule(a.spec, a.cols, a.transpose())


# ---------------------------------------------------------------------------
# maps


class AlgebraMap:
    """O-linear algebra map A -> B; column j of ``matrix`` is the image of e_j."""

    def __init__(self, source: FiniteOAlgebra, target: FiniteOAlgebra, matrix, check: bool = True):
        if source.spec != target.spec:
            raise DimensionMismatch("algebras over different DVRs")
        if not isinstance(matrix, Matrix):
            matrix = Matrix.from_rows(source.spec, matrix)
        if matrix.rows != target.s or matrix.cols != source.s:
            raise DimensionMismatch(f"map matrix must be {target.s}x{source.s}")
        self.source, self.target, self.matrix = source, target, matrix
        if check:
            self._check()

    def __call__(self, v) -> list:
        return self.matrix.apply(v)

    def _check(self) -> None:
        A, B, F = self.source, self.target, self.matrix
        for k, rho in enumerate(A.module_relations.columns()):
            if not B.is_zero(F.apply(rho)):
                raise NotAlgebraMap(f"module relation {k} does not map to zero", ("relation", k))
        if not B.equal(F.apply(A.one), B.one):
            raise NotAlgebraMap("one does not map to one", ("one",))
        cols = F.columns()
        for i in range(A.s):
            for j in range(i, A.s):
                if not B.equal(F.apply(A.mult[i][j]), B.mul(cols[i], cols[j])):
                    raise NotAlgebraMap(f"map is not multiplicative on {A.names[i]}*{A.names[j]}",
                                        (A.names[i], A.names[j]))
        for i in range(A.s):
            if B.lam_of(cols[i]) != A.lam[i]:
                raise NotAlgebraMap(f"λ_B∘φ != λ_A on {A.names[i]}", (A.names[i],))

    @cached_property
    def is_surjective(self) -> bool:
        B = self.target
        img = Subquotient(B.underlying, self.matrix, check=False)
        return all(img.contains(B.basis_vector(k)) for k in range(B.s))

    def require_surjective(self) -> None:
        if not self.is_surjective:
            raise NotSurjective("map is not surjective")

    @cached_property
    def kernel(self) -> IdealData:
        A, B = self.source, self.target
        ker = kernel_of_map(self.matrix, A.underlying, B.underlying, check=False)
        return IdealData(A, ker.numerator)

    def kernel_is_zero(self) -> bool:
        return self.kernel.is_zero()


def identity_map(A: FiniteOAlgebra) -> AlgebraMap:
    return AlgebraMap(A, A, Matrix.identity(A.spec, A.s), check=False)


def quotient_map(A: FiniteOAlgebra, B: FiniteOAlgebra) -> AlgebraMap:
    """The canonical map A -> B when B = A/J shares A's basis symbols."""
    return AlgebraMap(A, B, Matrix.identity(A.spec, A.s))


# ---------------------------------------------------------------------------
# monomial-quotient input format


def compile_monomial(spec: DvrSpec, variables, basis, rules, lam, module_relations=()):
    """Compile a claimed monomial basis into structure constants and validate.

    ``basis`` lists exponent tuples (one entry per variable) and must contain
    the zero tuple.  ``rules[(v, b)]`` gives x_v·(basis monomial b) as a
    coordinate vector over the basis.  ``lam`` gives λ on the variables.
    Products of two basis monomials are formed by peeling variables off the
    first factor one at a time; validation then confirms the result is a
    commutative associative algebra, which certifies the claimed basis.
    """
    variables = list(variables)
    nv = len(variables)
    basis = [tuple(b) for b in basis]
    s = len(basis)
    idx = {b: i for i, b in enumerate(basis)}
    zero = tuple([0] * nv)
    if zero not in idx:
        raise ParseError("monomial basis must contain 1")
    act = []
    for v in range(nv):
        cols = []
        for b in basis:
            key = (v, b)
            if key in rules:
                cols.append(_vec(spec, rules[key], s, f"rule {variables[v]}*{b}"))
                continue
            shifted = list(b)
            shifted[v] += 1
            shifted = tuple(shifted)
            if shifted not in idx:
                raise ParseError(f"no reduction rule for {variables[v]}*{_mono_name(variables, b)}")
            cols.append([spec.one if k == idx[shifted] else spec.zero for k in range(s)])
        act.append(Matrix.from_columns(spec, cols, s))

    def times_monomial(mono, vec):
        for v in range(nv):
            for _ in range(mono[v]):
                vec = act[v].apply(vec)
        return vec

    one_vec = [spec.one if k == idx[zero] else spec.zero for k in range(s)]
    mult = [[times_monomial(basis[i], [spec.one if k == j else spec.zero for k in range(s)])
             for j in range(s)] for i in range(s)]
    lam_vars = [spec.coerce(x) for x in lam]
    lam_basis = []
    for b in basis:
        val = spec.one
        for v in range(nv):
            for _ in range(b[v]):
                val = val * lam_vars[v]
        lam_basis.append(val)
    names = [_mono_name(variables, b) for b in basis]
    return validate(spec, names, list(module_relations), mult, one_vec, lam_basis)


def _mono_name(variables, b) -> str:
    parts = []
    for v, e in zip(variables, b):
        if e == 1:
            parts.append(v)
        elif e > 1:
            parts.append(f"{v}^{e}")
    return "".join(parts) or "1"
