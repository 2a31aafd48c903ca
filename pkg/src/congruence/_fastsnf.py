"""Smith normal form for large ZLocal matrices.

The plan:

1. Clear row denominators (units) to get an integer matrix.
2. Run the minimal-valuation elimination modulo p^N in numpy.  Modulo p^N
   the elimination tracks the exact one entry for entry, so it finds the same
   row/column permutations, the rank r and the pivot valuations v_i, as long
   as every v_i < N.  It also yields the unit upper triangular column
   transform R modulo p^N.
3. With Â = P·A·Q split into blocks (A11 is r×r) put
       V = [[R11, -A11⁻¹A12], [0, I]],
       U = [[D11·W⁻¹, 0], [-A21·A11⁻¹, I]],    W = A11·R11.
   Then U·Â·V = D exactly.  Because R11 agrees with the true column
   transform modulo p^N and N exceeds every v_i, D11·W⁻¹ lies in GL_r(O).
4. W⁻¹ comes from a q-adic (Dixon) lifting on float64 BLAS, which is exact
   because every product stays below 2^53.

If an exactness check fails (Schur complement not zero, so some invariant is
at least N), N is doubled and the run repeats.
"""
from __future__ import annotations

import math

import gmpy2
import numpy as np
from flint import fmpz_mat, nmod_mat

from .dvr import INFINITY, is_prime

_Q_START = 1048573  # largest prime below 2^20
_LIMB = 24


def fast_snf(A):
    from .linalg import Matrix, SnfResult

    spec = A.spec
    p = spec.p
    m, n = A.rows, A.cols
    scale, aint = [], []
    for row in A.data:
        den = 1
        for x in row:
            den = gmpy2.lcm(den, x.denominator)
        scale.append(gmpy2.mpq(den))
        aint.append([int(x.numerator * (den // x.denominator)) for x in row])
    N = max(2, int(20 / math.log2(p)) if p < 2 ** 20 else 1)
    while True:
        rowperm, colperm, vals, R = _mod_pivots(aint, m, n, p, N)
        built = _exact_transforms(aint, m, n, p, N, rowperm, colperm, vals, R)
        if built is not None:
            break
        N *= 2
    Ub, Vb = built
    r = len(vals)
    zero = spec.zero
    U = [[zero] * m for _ in range(m)]
    for i in range(m):
        Ui, Ubi = U[i], Ub[i]
        for c in range(m):
            x = Ubi[c]
            if x:
                Ui[rowperm[c]] = x * scale[rowperm[c]]
    V = [None] * n
    for i in range(n):
        V[colperm[i]] = Vb[i]
    D = [[zero] * n for _ in range(m)]
    for i, v in enumerate(vals):
        D[i][i] = spec.pi_pow(v)
    allvals = tuple(vals) + (INFINITY,) * (min(m, n) - r)
    return SnfResult(Matrix(spec, m, m, U), Matrix(spec, m, n, D), Matrix(spec, n, n, V), allvals)


def _mod_pivots(aint, m, n, p, N):
    q = p ** N
    dt = np.int64 if q < 2 ** 31 else object
    M = np.array([[x % q for x in r] for r in aint], dtype=dt).reshape(m, n)
    V = np.eye(n, dtype=dt) if dt is np.int64 else np.array(
        [[1 if i == j else 0 for j in range(n)] for i in range(n)], dtype=object).reshape(n, n)
    rowperm, colperm = list(range(m)), list(range(n))
    vals = []
    for k in range(min(m, n)):
        sub = M[k:, k:]
        if not sub.any():
            break
        pe, found = 1, None
        for e in range(N):
            pe *= p
            cand = (sub % pe) != 0
            if cand.any():
                flat = int(np.argmax(cand.ravel()))
                found = (e, *divmod(flat, n - k))
                break
        if found is None:
            break
        v, i, j = found
        i += k
        j += k
        if i != k:
            M[[k, i]] = M[[i, k]]
            rowperm[k], rowperm[i] = rowperm[i], rowperm[k]
        if j != k:
            M[:, [k, j]] = M[:, [j, k]]
            V[:, [k, j]] = V[:, [j, k]]
            colperm[k], colperm[j] = colperm[j], colperm[k]
        pv = p ** v
        u = int(M[k, k]) // pv
        uinv = pow(u, -1, q)
        M[k, k:] = (M[k, k:] * uinv) % q
        f = M[k + 1:, k] // pv
        if f.any():
            M[k + 1:, k:] = (M[k + 1:, k:] - np.outer(f, M[k, k:]) % q) % q
        g = M[k, k + 1:] // pv
        if g.any():
            V[:, k + 1:] = (V[:, k + 1:] - np.outer(V[:, k], g) % q) % q
        M[k, k + 1:] = 0
        vals.append(v)
    R = V[colperm, :]
    return rowperm, colperm, vals, R


def _balanced(x: int, q: int) -> int:
    x = int(x) % q
    return x - q if x > q // 2 else x


def _exact_transforms(aint, m, n, p, N, rowperm, colperm, vals, R):
    r = len(vals)
    q = p ** N
    if r == 0:
        if any(x for row in aint for x in row):
            return None
        one, zero = gmpy2.mpq(1), gmpy2.mpq(0)
        return ([[one if i == j else zero for j in range(m)] for i in range(m)],
                [[one if i == j else zero for j in range(n)] for i in range(n)])
    if max(vals) >= N:
        return None
    ah = [[aint[rowperm[i]][colperm[j]] for j in range(n)] for i in range(m)]
    # R11 is only needed modulo p^(v_max - v_min); small lifts keep W small
    qs = p ** (vals[-1] - vals[0])
    R11 = [[_balanced(R[i, j], qs) if qs > 1 else int(i == j) for j in range(r)]
           for i in range(r)]
    for i in range(r):
        if R11[i][i] != 1 or any(R11[i][j] for j in range(i)):
            raise AssertionError("column transform is not unit upper triangular")
    same = qs == 1
    A11 = fmpz_mat([row[:r] for row in ah[:r]])
    V11 = fmpz_mat(r, r, [int(i == j) for i in range(r) for j in range(r)]) if same \
        else fmpz_mat(R11)
    W = A11 if same else A11 * V11
    inv = adjugate(W)
    if inv is None:
        return None
    adj, d = inv
    mpq = gmpy2.mpq
    adjm = fmpz_mat([[int(a) for a in row] for row in adj]) if r < n or r < m else None
    X12 = Y21 = None
    if r < n:
        A12 = fmpz_mat([row[r:] for row in ah[:r]])
        X12 = V11 * (adjm * A12)
    if r < m:
        A21 = fmpz_mat([row[:r] for row in ah[r:]])
        Y21 = (A21 * V11) * adjm
    if r < m and r < n:
        A22 = fmpz_mat([row[r:] for row in ah[r:]])
        if A22 * d != A21 * X12:
            return None
    zero, one = mpq(0), mpq(1)
    dz = gmpy2.mpz(d)
    U = []
    for i in range(r):
        pv = gmpy2.mpz(p) ** vals[i]
        row = [mpq(pv * a, dz) for a in adj[i]]
        for x in row:
            if x.denominator % p == 0:
                raise AssertionError("D11·W⁻¹ left O")
        U.append(row + [zero] * (m - r))
    if r < m:
        ylist = Y21.tolist()
        for i in range(m - r):
            row = [mpq(-int(a), d) for a in ylist[i]] + [zero] * (m - r)
            row[r + i] = one
            U.append(row)
    V = []
    v11 = V11.tolist()
    xlist = X12.tolist() if X12 is not None else [[] for _ in range(r)]
    for i in range(r):
        V.append([mpq(int(a)) for a in v11[i]] + [mpq(-int(a), d) for a in xlist[i]])
    for i in range(n - r):
        row = [zero] * n
        row[r + i] = one
        V.append(row)
    for row in V[:r]:
        for x in row:
            if x.denominator % p == 0:
                raise AssertionError("A11⁻¹A12 left O")
    return U, V


def _signed64(x: int) -> int:
    x &= (1 << 64) - 1
    return x - (1 << 64) if x >= 1 << 63 else x


def adjugate(W: fmpz_mat):
    """(adj(W) as nested int lists, det(W)), or None when W is singular."""
    n = W.nrows()
    d = int(W.det())
    if d == 0:
        return None
    rows = [[int(x) for x in r] for r in W.tolist()]
    bits = max((abs(x).bit_length() for r in rows for x in r), default=0)
    # the Dixon residuals stay below n·max|W|, which must fit in int64
    if bits + n.bit_length() + 2 > 62 or n > 512:
        adjq = W.inv() * d
        return [[int(x.p) for x in r] for r in adjq.tolist()], d
    return _dixon_adjugate(rows, n, d), d


def _dixon_adjugate(rows, n, d):
    q = _Q_START
    while not (is_prime(q) and d % q):
        q -= 2
    Wi = np.array(rows, dtype=np.int64).reshape(n, n)
    C = np.array([[int(x) for x in r] for r in nmod_mat([[x % q for x in r] for r in rows], q).inv().tolist()],
                 dtype=np.float64).reshape(n, n)
    # W = sum_k limbs[k]·2^(LIMB·k); each limb times X stays below 2^53 in float64
    limbs = []
    rest = Wi
    mask = (1 << _LIMB) - 1
    while ((rest < -(1 << _LIMB)) | (rest >= (1 << _LIMB))).any():
        limbs.append((rest & mask).astype(np.float64))
        rest = rest >> _LIMB
    limbs.append(rest.astype(np.float64))
    qinv = np.int64(_signed64(pow(q, -1, 1 << 64)))
    # Hadamard bound on the entries of adj(W)
    hb = sum(math.log2(math.sqrt(sum(x * x for x in r)) + 1) for r in rows)
    K = int((hb + 3) / math.log2(q)) + 2
    K += (-K) % 3
    Rm = np.eye(n, dtype=np.int64)
    words = []
    acc = None
    with np.errstate(over="ignore"):
        for s in range(K):
            # float products are exact; the int64 update wraps modulo 2^64, and the
            # exact quotient (Rm - W·X)/q fits in int64, so multiplying by q⁻¹ recovers it
            Xi = (C @ (Rm % q).astype(np.float64)).astype(np.int64) % q
            X = Xi.astype(np.float64)
            WX = np.zeros((n, n), dtype=np.int64)
            for k, L in enumerate(limbs):
                WX += (L @ X).astype(np.int64) << np.int64(_LIMB * k)
            Rm = (Rm - WX) * qinv
            if s % 3 == 0:
                acc = Xi
            else:
                acc = acc + Xi * (q ** (s % 3))
            if s % 3 == 2:
                words.append(acc)
    # Z = sum_j words[j] * (q^3)^j, one fmpz_mat product against the power column
    L = len(words)
    base = q ** 3
    stacked = np.stack(words).reshape(L, n * n).T
    Zm = fmpz_mat(n * n, L, stacked.ravel().tolist()) * fmpz_mat(L, 1, [base ** j for j in range(L)])
    qk = gmpy2.mpz(q) ** K
    half = qk // 2
    dz = gmpy2.mpz(d)
    adj = []
    for x in Zm.entries():
        a = (gmpy2.mpz(int(x)) * dz) % qk
        adj.append(a - qk if a > half else a)
    return [adj[i * n:(i + 1) * n] for i in range(n)]
