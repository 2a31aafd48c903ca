"""Dense exact matrices over O and the Smith normal form.

Entries are stored as raw ring values (see ``dvr``).  Every routine funnels
through :func:`snf`; kernels, solving and cokernel invariants are read off the
transforms it returns.

Small matrices, and every RatFuncLocal matrix, use direct elimination with
minimal-valuation pivoting.  Large ZLocal matrices use ``_fastsnf``, which
finds the same pivots modulo p^N and then builds exact transforms from one
exact inverse.
"""
from __future__ import annotations

from dataclasses import dataclass

import gmpy2

from .dvr import INFINITY, DvrElement, DvrSpec
from .errors import DimensionMismatch, SpecMismatch

FAST_THRESHOLD = 40


class Matrix:
    """Immutable dense matrix; ``data`` is a list of row lists of raw values."""

    __slots__ = ("spec", "rows", "cols", "data")

    def __init__(self, spec: DvrSpec, rows: int, cols: int, data):
        self.spec = spec
        self.rows = rows
        self.cols = cols
        self.data = data
        if len(data) != rows or any(len(r) != cols for r in data):
            raise DimensionMismatch(f"expected {rows}x{cols} entries")

    @classmethod
    def from_rows(cls, spec: DvrSpec, rows, cols: int | None = None) -> Matrix:
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        co = spec.coerce
        return cls(spec, len(rows), cols, [[co(x) for x in r] for r in rows])

    @classmethod
    def from_columns(cls, spec: DvrSpec, columns, rows: int) -> Matrix:
        columns = [list(c) for c in columns]
        co = spec.coerce
        data = [[co(c[i]) for c in columns] for i in range(rows)]
        return cls(spec, rows, len(columns), data)

    @classmethod
    def zeros(cls, spec: DvrSpec, rows: int, cols: int) -> Matrix:
        z = spec.zero
        return cls(spec, rows, cols, [[z] * cols for _ in range(rows)])

    @classmethod
    def identity(cls, spec: DvrSpec, n: int) -> Matrix:
        return cls(spec, n, n, _ident(spec, n))

    def __getitem__(self, ij) -> DvrElement:
        i, j = ij
        return DvrElement(self.spec, self.data[i][j])

    def column(self, j: int) -> list:
        return [r[j] for r in self.data]

    def columns(self) -> list[list]:
        return [self.column(j) for j in range(self.cols)]

    def transpose(self) -> Matrix:
        return Matrix(self.spec, self.cols, self.rows,
                      [list(c) for c in zip(*self.data)] if self.rows else
                      [[] for _ in range(self.cols)])

    T = property(transpose)

    def __matmul__(self, other: Matrix) -> Matrix:
        if self.spec != other.spec:
            raise SpecMismatch(f"{self.spec} vs {other.spec}")
        if self.cols != other.rows:
            raise DimensionMismatch(f"{self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        return Matrix(self.spec, self.rows, other.cols,
                      matmul_raw(self.spec, self.data, other.data, other.cols))

    def apply(self, vec) -> list:
        if len(vec) != self.cols:
            raise DimensionMismatch("vector length")
        z = self.spec.zero
        out = []
        for r in self.data:
            s = z
            for a, b in zip(r, vec):
                if a and b:
                    s = s + a * b
            out.append(s)
        return out

    def hstack(self, other: Matrix) -> Matrix:
        if self.rows != other.rows:
            raise DimensionMismatch("hstack row counts")
        return Matrix(self.spec, self.rows, self.cols + other.cols,
                      [a + b for a, b in zip(self.data, other.data)])

    def vstack(self, other: Matrix) -> Matrix:
        if self.cols != other.cols:
            raise DimensionMismatch("vstack column counts")
        return Matrix(self.spec, self.rows + other.rows, self.cols,
                      [list(r) for r in self.data] + [list(r) for r in other.data])

    def select_columns(self, idx) -> Matrix:
        idx = list(idx)
        return Matrix(self.spec, self.rows, len(idx), [[r[j] for j in idx] for r in self.data])

    def select_rows(self, idx) -> Matrix:
        idx = list(idx)
        return Matrix(self.spec, len(idx), self.cols, [list(self.data[i]) for i in idx])

    def scale(self, c) -> Matrix:
        c = self.spec.coerce(c)
        return Matrix(self.spec, self.rows, self.cols, [[c * x for x in r] for r in self.data])

    def __add__(self, other: Matrix) -> Matrix:
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DimensionMismatch("shape")
        return Matrix(self.spec, self.rows, self.cols,
                      [[a + b for a, b in zip(r, s)] for r, s in zip(self.data, other.data)])

    def __sub__(self, other: Matrix) -> Matrix:
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DimensionMismatch("shape")
        return Matrix(self.spec, self.rows, self.cols,
                      [[a - b for a, b in zip(r, s)] for r, s in zip(self.data, other.data)])

    def __neg__(self) -> Matrix:
        return Matrix(self.spec, self.rows, self.cols, [[-a for a in r] for r in self.data])

    def __eq__(self, other) -> bool:
        return (isinstance(other, Matrix) and self.spec == other.spec
                and self.rows == other.rows and self.cols == other.cols
                and self.data == other.data)

    __hash__ = None

    def is_zero(self) -> bool:
        return not any(x for r in self.data for x in r)

    def min_valuation(self):
        val = self.spec.val
        return min((val(x) for r in self.data for x in r if x), default=INFINITY)

    def to_text(self) -> list:
        enc = self.spec.encode
        return [[enc(x) for x in r] for r in self.data]

    def __repr__(self) -> str:
        show = self.spec.show
        body = "; ".join(" ".join(show(x) for x in r) for r in self.data)
        return f"Matrix({self.rows}x{self.cols}, [{body}])"


def _ident(spec: DvrSpec, n: int) -> list[list]:
    z, o = spec.zero, spec.one
    return [[o if i == j else z for j in range(n)] for i in range(n)]


def matmul_raw(spec: DvrSpec, a: list, b: list, bcols: int) -> list:
    """Product of raw row-lists; large ZLocal products go through flint."""
    if spec.is_zlocal and len(a) * bcols * len(b) > 30000:
        return _flint_matmul(a, b, bcols)
    z = spec.zero
    bt = [list(c) for c in zip(*b)] if b else [[] for _ in range(bcols)]
    out = []
    for r in a:
        nz = [(k, x) for k, x in enumerate(r) if x]
        row = []
        for c in bt:
            s = z
            for k, x in nz:
                y = c[k]
                if y:
                    s = s + x * y
            row.append(s)
        out.append(row)
    return out


def _flint_matmul(a: list, b: list, bcols: int) -> list:
    from flint import fmpq, fmpq_mat

    m, k = len(a), len(b)
    fa = fmpq_mat(m, k, [fmpq(int(x.numerator), int(x.denominator)) for r in a for x in r])
    fb = fmpq_mat(k, bcols, [fmpq(int(x.numerator), int(x.denominator)) for r in b for x in r])
    prod = fa * fb
    mpq = gmpy2.mpq
    flat = [mpq(int(e.p), int(e.q)) for e in prod.entries()]
    return [flat[i * bcols:(i + 1) * bcols] for i in range(m)]


@dataclass(frozen=True)
class SnfResult:
    """U·A·V = D with U, V invertible over O and D = diag(ϖ^v) sorted."""

    U: Matrix
    D: Matrix
    V: Matrix
    diagonal_valuations: tuple

    @property
    def rank(self) -> int:
        return sum(1 for v in self.diagonal_valuations if v != INFINITY)


def snf(A: Matrix) -> SnfResult:
    """Smith normal form by minimal-valuation pivoting with (row, col) tie-break."""
    spec = A.spec
    if spec.is_zlocal and max(A.rows, A.cols) >= FAST_THRESHOLD:
        from ._fastsnf import fast_snf

        res = fast_snf(A)
        if res is not None:
            return res
    U, Dd, V, vals = _snf_generic(spec, A.rows, A.cols, A.data)
    return SnfResult(Matrix(spec, A.rows, A.rows, U), Matrix(spec, A.rows, A.cols, Dd),
                     Matrix(spec, A.cols, A.cols, V), tuple(vals))


def _snf_generic(spec: DvrSpec, m: int, n: int, data):
    M = [list(r) for r in data]
    U = _ident(spec, m)
    V = _ident(spec, n)
    val, split, inv, div = spec.val, spec.split, spec.inv, spec.div
    z = spec.zero
    vals = []
    for k in range(min(m, n)):
        best, bi, bj = INFINITY, -1, -1
        for i in range(k, m):
            row = M[i]
            for j in range(k, n):
                x = row[j]
                if x:
                    v = val(x)
                    if v < best:
                        best, bi, bj = v, i, j
                        if v == 0:
                            break
            if best == 0:
                break
        if bi < 0:
            break
        if bi != k:
            M[k], M[bi] = M[bi], M[k]
            U[k], U[bi] = U[bi], U[k]
        if bj != k:
            for r in M:
                r[k], r[bj] = r[bj], r[k]
            for r in V:
                r[k], r[bj] = r[bj], r[k]
        unit, v = split(M[k][k])
        if v != best:
            raise AssertionError("pivot valuation drift")
        if unit != spec.one:
            ui = inv(unit)
            M[k] = [x * ui if x else x for x in M[k]]
            U[k] = [x * ui if x else x for x in U[k]]
        piv = M[k][k]
        rowk, urowk = M[k], U[k]
        for i in range(k + 1, m):
            x = M[i][k]
            if x:
                f = div(x, piv)
                ri = M[i]
                for j in range(k, n):
                    y = rowk[j]
                    if y:
                        ri[j] = ri[j] - f * y
                ui_ = U[i]
                for j in range(m):
                    y = urowk[j]
                    if y:
                        ui_[j] = ui_[j] - f * y
        for j in range(k + 1, n):
            x = rowk[j]
            if x:
                f = div(x, piv)
                rowk[j] = z
                for r in V:
                    y = r[k]
                    if y:
                        r[j] = r[j] - f * y
        vals.append(v)
    vals.extend([INFINITY] * (min(m, n) - len(vals)))
    D = [[z] * n for _ in range(m)]
    for i, v in enumerate(vals):
        if v != INFINITY:
            D[i][i] = spec.pi_pow(v)
    return U, D, V, vals


def verify_snf(A: Matrix, res: SnfResult) -> bool:
    """Check every SnfResult invariant exactly; raises AssertionError on failure."""
    spec = A.spec
    D, U, V = res.D, res.U, res.V
    vals = list(res.diagonal_valuations)
    assert len(vals) == min(A.rows, A.cols)
    finite = [v for v in vals if v != INFINITY]
    assert vals == finite + [INFINITY] * (len(vals) - len(finite)), "zeros must trail"
    assert finite == sorted(finite), "valuations must be non-decreasing"
    for i in range(D.rows):
        for j in range(D.cols):
            x = D.data[i][j]
            if i == j and i < len(vals) and vals[i] != INFINITY:
                assert x == spec.pi_pow(vals[i]), "diagonal not normalized"
            else:
                assert not x, "D not diagonal"
    for X in (U, V):
        for r in X.data:
            for x in r:
                spec.residue(x)  # raises if an entry is not in O
        assert det_residue(X) != 0, "transform not invertible over O"
    assert (U @ A) @ V == D, "U·A·V != D"
    return True


def det_residue(A: Matrix) -> int:
    """det(A) mod ϖ, computed over the residue field."""
    p = A.spec.p
    if A.rows != A.cols:
        raise DimensionMismatch("determinant of a non-square matrix")
    res = A.spec.residue
    if A.rows == 0:
        return 1
    from flint import nmod_mat

    return int(nmod_mat([[res(x) for x in r] for r in A.data], p).det())


def kernel_basis(A: Matrix) -> Matrix:
    """Columns form an O-basis of {x : A·x = 0}."""
    res = snf(A)
    r = res.rank
    return res.V.select_columns(range(r, A.cols))


def solve(A: Matrix, b) -> list | None:
    """Some x with A·x = b over O, or None."""
    spec = A.spec
    b = [spec.coerce(x) for x in b]
    if len(b) != A.rows:
        raise DimensionMismatch(f"b has length {len(b)}, expected {A.rows}")
    res = snf(A)
    return _solve_with(res, spec, A.cols, b)


def _solve_with(res: SnfResult, spec: DvrSpec, ncols: int, b) -> list | None:
    ub = res.U.apply(b)
    vals = res.diagonal_valuations
    y = [spec.zero] * ncols
    for i, c in enumerate(ub):
        v = vals[i] if i < len(vals) else INFINITY
        if v == INFINITY:
            if c:
                return None
            continue
        if c and spec.val(c) < v:
            return None
        y[i] = spec.div(c, spec.pi_pow(v)) if c else spec.zero
    return res.V.apply(y)


class Solver:
    """Reusable solver: one SNF, many right-hand sides."""

    def __init__(self, A: Matrix):
        self.A = A
        self.res = snf(A)

    def __call__(self, b) -> list | None:
        spec = self.A.spec
        b = [spec.coerce(x) for x in b]
        if len(b) != self.A.rows:
            raise DimensionMismatch("right-hand side length")
        return _solve_with(self.res, spec, self.A.cols, b)


def cokernel_invariants(A: Matrix) -> tuple[int, list]:
    """coker(A: O^cols -> O^rows) = O^free ⊕ ⊕ O/ϖ^v; generators are rows."""
    vals = snf(A).diagonal_valuations
    finite = [v for v in vals if v != INFINITY]
    free = A.rows - len(finite)
    return free, [v for v in finite if v > 0]


def rank(A: Matrix) -> int:
    return snf(A).rank


def det(A: Matrix):
    """Exact determinant (raw value)."""
    if A.rows != A.cols:
        raise DimensionMismatch("determinant of a non-square matrix")
    spec = A.spec
    if spec.is_zlocal:
        from flint import fmpq, fmpq_mat

        if A.rows == 0:
            return spec.one
        d = fmpq_mat(A.rows, A.cols,
                     [fmpq(int(x.numerator), int(x.denominator)) for r in A.data for x in r]).det()
        return gmpy2.mpq(int(d.p), int(d.q))
    M = [list(r) for r in A.data]
    n = A.rows
    acc = spec.one
    for k in range(n):
        best, bi, bj = INFINITY, -1, -1
        for i in range(k, n):
            for j in range(k, n):
                x = M[i][j]
                if x and spec.val(x) < best:
                    best, bi, bj = spec.val(x), i, j
        if bi < 0:
            return spec.zero
        if bi != k:
            M[k], M[bi] = M[bi], M[k]
            acc = -acc
        if bj != k:
            for r in M:
                r[k], r[bj] = r[bj], r[k]
            acc = -acc
        piv = M[k][k]
        acc = acc * piv
        for i in range(k + 1, n):
            if M[i][k]:
                f = spec.div(M[i][k], piv)
                M[i] = [a - f * b for a, b in zip(M[i], M[k])]
    return acc
