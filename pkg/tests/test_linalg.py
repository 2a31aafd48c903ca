import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from congruence.dvr import INFINITY, RatFuncLocal, ZLocal
from congruence.linalg import (
    Matrix,
    Solver,
    _snf_generic,
    cokernel_invariants,
    det,
    kernel_basis,
    snf,
    solve,
    verify_snf,
)

Z5 = ZLocal(5)


def M(rows, spec=Z5):
    return Matrix.from_rows(spec, rows)


@pytest.mark.parametrize("rows,vals", [
    ([[5, 0], [0, 1]], (0, 1)),
    ([[5, 5], [5, 10]], (1, 1)),
    ([[0, 0, 0], [0, 0, 0]], (INFINITY, INFINITY)),
    ([[25]], (2,)),
    ([[1, 2], [2, 4]], (0, INFINITY)),
])
def test_snf_examples(rows, vals):
    A = M(rows)
    res = snf(A)
    assert res.diagonal_valuations == vals
    assert verify_snf(A, res)


def test_kernel_examples():
    assert kernel_basis(M([[1, 0]])) == M([[0], [1]])
    assert kernel_basis(M([[5]])).cols == 0
    K = kernel_basis(M([[1, 1], [1, 1]]))
    assert K.cols == 1
    a, b = K.column(0)
    assert a == -b and Z5.val(a) == 0


def test_solve_examples():
    assert solve(M([[5]]), [10]) == [2]
    assert solve(M([[5]]), [1]) is None
    b = [Z5.coerce(x) for x in (3, Fraction(1, 7), -4)]
    assert solve(Matrix.identity(Z5, 3), b) == b


def test_cokernel_examples():
    pi = Z5.pi_pow(1)
    rel = Matrix(Z5, 5, 3, [[0, 0, 0], [0, 0, 0], [pi, 0, 0], [0, pi, 0], [0, 0, pi]])
    assert cokernel_invariants(rel.transpose()) == (0, [1, 1, 1])
    assert cokernel_invariants(M([[25]])) == (0, [2])
    assert cokernel_invariants(Matrix.zeros(Z5, 2, 1)) == (2, [])


def test_ratfunc_snf():
    F = RatFuncLocal(3)
    t = F.pi_pow(1)
    A = Matrix(F, 2, 2, [[t * t, t], [t, F.zero]])
    res = snf(A)
    assert res.diagonal_valuations == (1, 1)
    assert verify_snf(A, res)


def random_matrix(spec, m, n, rng, vmax=3, zero_rate=0.0, dmax=1000):
    rows = []
    for _ in range(m):
        row = []
        for _ in range(n):
            if rng.random() < zero_rate:
                row.append(0)
                continue
            u = rng.randrange(1, 10**6)
            while u % spec.p == 0:
                u = rng.randrange(1, 10**6)
            d = rng.randrange(1, dmax)
            while d % spec.p == 0:
                d = rng.randrange(1, dmax)
            row.append(Fraction(rng.choice([-1, 1]) * u * spec.p ** rng.randint(0, vmax), d))
        rows.append(row)
    return Matrix.from_rows(spec, rows)


@pytest.mark.parametrize("seed", range(2))
def test_fast_path_matches_generic(seed):
    rng = random.Random(seed)
    A = random_matrix(Z5, 40, 40, rng, dmax=2)
    fast = snf(A)
    assert verify_snf(A, fast)
    _, _, _, vals = _snf_generic(Z5, A.rows, A.cols, A.data)
    assert list(fast.diagonal_valuations) == vals


def test_fast_path_rank_deficient():
    rng = random.Random(7)
    B = random_matrix(Z5, 40, 12, rng, dmax=2)
    C = random_matrix(Z5, 12, 40, rng, dmax=2)
    A = B @ C
    res = snf(A)
    assert verify_snf(A, res)
    assert res.rank <= 20
    _, _, _, vals = _snf_generic(Z5, A.rows, A.cols, A.data)
    assert list(res.diagonal_valuations) == vals


def test_fast_path_high_valuation():
    rng = random.Random(3)
    A = random_matrix(Z5, 40, 40, rng, vmax=12, dmax=2)
    res = snf(A)
    assert verify_snf(A, res)
    _, _, _, vals = _snf_generic(Z5, A.rows, A.cols, A.data)
    assert list(res.diagonal_valuations) == vals


small = st.lists(st.lists(st.integers(-30, 30), min_size=3, max_size=3), min_size=1, max_size=4)


@given(small)
@settings(max_examples=60, deadline=None)
def test_snf_invariants_random(rows):
    A = M(rows)
    assert verify_snf(A, snf(A))


@given(small)
@settings(max_examples=60, deadline=None)
def test_det_matches_valuations(rows):
    A = M(rows)
    if A.rows != A.cols:
        return
    vals = snf(A).diagonal_valuations
    d = det(A)
    if INFINITY in vals:
        assert not d
    else:
        assert Z5.val(d) == sum(vals)


@given(small, st.lists(st.integers(-10, 10), min_size=3, max_size=3))
@settings(max_examples=60, deadline=None)
def test_solver_solution_checks(rows, x):
    A = M(rows)
    b = A.apply([Z5.coerce(v) for v in x])
    y = Solver(A)(b)
    assert y is not None and A.apply(y) == b
    for c in kernel_basis(A).columns():
        assert not any(A.apply(c))
