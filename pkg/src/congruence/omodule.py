"""Finitely presented O-modules and subquotients inside a fixed presentation.

An ``OModule`` is coker(relations: O^k -> O^n).  A ``Subquotient`` of it is
N/D with N, D given by generator columns in O^n; the ambient relations are
always added to both.  Lengths are computed by choosing a basis of the lattice
N + relations and writing D + relations in that basis.
"""
from __future__ import annotations

from functools import cached_property

from .dvr import DvrSpec
from .errors import AmbientMismatch, DimensionMismatch, IllDefinedMap, InfiniteLength
from .linalg import Matrix, Solver, cokernel_invariants, kernel_basis, snf


def _cols(spec: DvrSpec, n: int, columns) -> Matrix:
    if isinstance(columns, Matrix):
        return columns
    return Matrix.from_columns(spec, columns, n)


def lattice_basis(X: Matrix) -> Matrix:
    """A basis (as columns) of the column span of X."""
    if X.cols == 0:
        return X
    res = snf(X)
    return X @ res.V.select_columns(range(res.rank))


class OModule:
    """coker of ``relations`` (n x k, columns are relations) on n generators."""

    def __init__(self, spec: DvrSpec, n: int, relations: Matrix | None = None):
        if relations is None:
            relations = Matrix.zeros(spec, n, 0)
        if relations.rows != n:
            raise DimensionMismatch(f"relations have {relations.rows} rows, expected {n}")
        self.spec = spec
        self.n = n
        self.relations = relations

    @property
    def generator_count(self) -> int:
        return self.n

    @cached_property
    def invariants(self) -> tuple[int, list]:
        return cokernel_invariants(self.relations)

    def length(self) -> int:
        free, tors = self.invariants
        if free:
            raise InfiniteLength(free)
        return sum(tors)

    def free_rank(self) -> int:
        return self.invariants[0]

    def whole(self) -> Subquotient:
        return Subquotient(self, Matrix.identity(self.spec, self.n))

    def zero(self) -> Subquotient:
        return Subquotient(self, Matrix.zeros(self.spec, self.n, 0))

    def torsion_part(self) -> Subquotient:
        return self.whole().torsion_part()

    def direct_sum(self, other: OModule) -> OModule:
        return OModule(self.spec, self.n + other.n, block_diag(self.relations, other.relations))

    def power(self, t: int) -> OModule:
        rel = Matrix.zeros(self.spec, 0, 0)
        for _ in range(t):
            rel = block_diag(rel, self.relations)
        return OModule(self.spec, self.n * t, rel)

    @cached_property
    def _rel_solver(self) -> Solver:
        return Solver(self.relations)

    def is_zero_vector(self, v) -> bool:
        """Is the vector v of O^n zero in the module?"""
        if not any(v):
            return True
        return self._rel_solver(v) is not None

    def __repr__(self) -> str:
        return f"OModule(n={self.n}, relations={self.relations.cols})"


def block_diag(a: Matrix, b: Matrix) -> Matrix:
    spec = a.spec
    z = spec.zero
    data = [list(r) + [z] * b.cols for r in a.data]
    data += [[z] * a.cols + list(r) for r in b.data]
    return Matrix(spec, a.rows + b.rows, a.cols + b.cols, data)


class Subquotient:
    """N/D inside ``ambient``; ``numerator``/``denominator`` are generator columns."""

    def __init__(self, ambient: OModule, numerator, denominator=None, check: bool = True):
        spec, n = ambient.spec, ambient.n
        self.ambient = ambient
        self.numerator = _cols(spec, n, numerator)
        self.denominator = _cols(spec, n, denominator if denominator is not None else [])
        if self.numerator.rows != n or self.denominator.rows != n:
            raise DimensionMismatch("generator columns must live in the ambient")
        if check:
            solver = Solver(self._nmat)
            for c in self.denominator.columns():
                if solver(c) is None:
                    raise AmbientMismatch("denominator is not contained in numerator")

    @cached_property
    def _nmat(self) -> Matrix:
        return self.numerator.hstack(self.ambient.relations)

    @cached_property
    def _dmat(self) -> Matrix:
        return self.denominator.hstack(self.ambient.relations)

    @cached_property
    def basis(self) -> Matrix:
        """O-basis of the lattice N + relations, as columns of O^n."""
        return lattice_basis(self._nmat)

    @cached_property
    def _basis_solver(self) -> Solver:
        return Solver(self.basis)

    def coordinates(self, v) -> list | None:
        """Coordinates of v in ``basis``, None if v is outside the lattice."""
        return self._basis_solver(v)

    @cached_property
    def presentation(self) -> Matrix:
        """Relation matrix of N/D in the coordinates of ``basis``."""
        spec = self.ambient.spec
        r = self.basis.cols
        cols = []
        for c in self._dmat.columns():
            x = self.coordinates(c)
            if x is None:
                raise AmbientMismatch("denominator is not contained in numerator")
            cols.append(x)
        return Matrix.from_columns(spec, cols, r) if cols else Matrix.zeros(spec, r, 0)

    def as_omodule(self) -> OModule:
        return OModule(self.ambient.spec, self.basis.cols, self.presentation)

    @cached_property
    def invariants(self) -> tuple[int, list]:
        return cokernel_invariants(self.presentation)

    def length(self) -> int:
        free, tors = self.invariants
        if free:
            raise InfiniteLength(free)
        return sum(tors)

    def free_rank(self) -> int:
        return self.invariants[0]

    def is_zero(self) -> bool:
        free, tors = self.invariants
        return free == 0 and not tors

    def contains(self, v) -> bool:
        """Does the vector v of O^n lie in N (modulo relations)?"""
        return self._nsolver(v) is not None

    @cached_property
    def _nsolver(self) -> Solver:
        return Solver(self._nmat)

    def is_subset_of(self, other: Subquotient) -> bool:
        """N ⊆ other.N, with ambient relations on both sides."""
        _same_ambient(self, other)
        return all(other.contains(c) for c in self.numerator.columns())

    def same_numerator(self, other: Subquotient) -> bool:
        return self.is_subset_of(other) and other.is_subset_of(self)

    def torsion_part(self) -> Subquotient:
        """The O-torsion of N/D, as a subquotient with the same denominator."""
        P = self.presentation
        r = P.rows
        if self.invariants[0] == 0:
            return self
        spec = self.ambient.spec
        left = kernel_basis(P.transpose())  # columns y with yᵀ·P = 0
        Y = left.transpose()
        sat = kernel_basis(Y) if Y.rows else Matrix.identity(spec, r)
        gens = self.basis @ sat
        return Subquotient(self.ambient, gens.hstack(self.denominator), self.denominator, check=False)

    def __repr__(self) -> str:
        return f"Subquotient({self.numerator.cols} gens / {self.denominator.cols} gens)"


def _same_ambient(a: Subquotient, b: Subquotient) -> None:
    if a.ambient is not b.ambient and not (
            a.ambient.n == b.ambient.n and a.ambient.relations == b.ambient.relations):
        raise AmbientMismatch("subquotients live in different ambients")


def _same_denominator(a: Subquotient, b: Subquotient) -> None:
    _same_ambient(a, b)
    da = Subquotient(a.ambient, a.denominator, check=False)
    db = Subquotient(b.ambient, b.denominator, check=False)
    if not da.same_numerator(db):
        raise AmbientMismatch("subquotients have different denominators")


def length(m) -> int:
    return m.length()


def free_rank(m) -> int:
    return m.free_rank()


def torsion_part(m) -> Subquotient:
    return m.torsion_part()


def sum_(a: Subquotient, b: Subquotient) -> Subquotient:
    _same_denominator(a, b)
    return Subquotient(a.ambient, a.numerator.hstack(b.numerator), a.denominator, check=False)


def intersect(a: Subquotient, b: Subquotient) -> Subquotient:
    """(N_a ∩ N_b)/D, relations included on both sides."""
    _same_denominator(a, b)
    X1, X2 = a._nmat, b._nmat
    K = kernel_basis(X1.hstack(-X2))
    top = K.select_rows(range(X1.cols))
    gens = X1 @ top
    return Subquotient(a.ambient, gens.hstack(a.denominator), a.denominator, check=False)


def check_map(f: Matrix, source: OModule, target: OModule) -> None:
    if f.rows != target.n or f.cols != source.n:
        raise DimensionMismatch(f"map is {f.rows}x{f.cols}, expected {target.n}x{source.n}")
    img = f @ source.relations
    for j, c in enumerate(img.columns()):
        if not target.is_zero_vector(c):
            raise IllDefinedMap(f"relation {j} of the source does not map to zero")


def kernel_of_map(f: Matrix, source: OModule, target: OModule, check: bool = True) -> Subquotient:
    """ker(f: source -> target) as a subquotient of source (denominator 0)."""
    if check:
        check_map(f, source, target)
    K = kernel_basis(f.hstack(target.relations))
    gens = K.select_rows(range(source.n))
    return Subquotient(source, gens, check=False)


def image_of_map(f: Matrix, source: Subquotient, target: OModule) -> Subquotient:
    """f(N) as a subquotient of target (denominator 0)."""
    return Subquotient(target, f @ source.numerator, check=False)

