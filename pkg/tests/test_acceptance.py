"""Acceptance criteria 1-9.

Run under pytest, or directly with ``python3 tests/test_acceptance.py``;
either way one PASS/FAIL line per criterion is printed.
"""
import json
import random
import subprocess
import sys
import time

import pytest

from congruence import corpus
from congruence.amodule import (
    direct_sum,
    free_module,
    ideal_as_module,
    lambda_module,
    wiles_defect,
)
from congruence.criteria import (
    ArtinianAlgebra,
    Conclusion,
    ci_test,
    direct_freeness_oracle,
    freeness_prediamond,
    gorenstein_test,
    multiplicity,
    wiebe_module_test,
)
from congruence.dvr import ZLocal
from congruence.linalg import Matrix, snf, verify_snf
from congruence.omodule import intersect
from congruence.properties import check_algebra, check_module
from congruence.amodule import residue_module
from congruence.venkatesh import gorsum_check, venkatesh_check

Z5 = ZLocal(5)


def criterion_1():
    t = time.perf_counter()
    A = corpus.gor_not_ci(Z5)
    assert A.rank == 5
    assert A.conormal.length() == 3
    assert gorenstein_test(A).conclusion == Conclusion.GORENSTEIN
    assert ci_test(A).conclusion == Conclusion.NOT_CI
    assert A.congruence_valuation == 2
    assert wiles_defect(free_module(A, 1)).delta == 1
    assert multiplicity(A).e == 5
    assert time.perf_counter() - t < 1.0


def criterion_2():
    t = time.perf_counter()
    A = corpus.depth0(Z5)
    pi, x = [Z5.pi_pow(1), Z5.zero], A.basis_vector(1)
    I, p = A.dualizing_ideal, A.augmentation_ideal
    assert I.same_as(A.ideal([pi, x]))
    assert p.same_as(A.ideal([x]))
    assert intersect(I.as_subquotient(), p.as_subquotient()).same_numerator(p.as_subquotient())
    assert time.perf_counter() - t < 1.0


def thm33_pairs():
    algs = [corpus.glue(Z5, m) for m in (1, 2, 3)]
    algs += [corpus.build(corpus.FamilySpec("MonogenicCI", Z5)),
             corpus.monogenic_ci(Z5, [Z5.pi_pow(1), Z5.pi_pow(2), Z5.one]),
             corpus.multi_glue(Z5, 3), corpus.multi_glue(Z5, 4), corpus.gor_not_ci(Z5)]
    seed = 0
    while True:
        for A in algs:
            yield A, corpus.random_module(A, seed, 1 + seed % 3)
            seed += 1


def criterion_3():
    t = time.perf_counter()
    n = 0
    for A, M in thm33_pairs():
        if not M.depth_ok:
            continue
        rep = wiles_defect(M)
        assert rep.delta == rep.d * (rep.ell_phi - rep.ell_psi_A) + rep.ell_gap
        assert rep.delta >= 0
        n += 1
        if n >= 200:
            break
    assert time.perf_counter() - t < 60.0


def criterion_4():
    for A in corpus.all_algebras(Z5).values():
        check_algebra(A)
        for M in corpus.canonical_modules(A).values():
            check_module(M)
        for s in range(4):
            check_module(corpus.random_module(A, s, 2))


def criterion_5():
    gor = [A for A in corpus.all_algebras(Z5).values()
           if A.depth_at_least_one and gorenstein_test(A).conclusion == Conclusion.GORENSTEIN]
    pairs = []
    glue = corpus.glue(Z5, 1)
    pairs += [(glue, lambda_module(glue)), (glue, ideal_as_module(glue, glue.dualizing_ideal))]
    for A in gor:
        pairs += [(A, M) for M in corpus.canonical_modules(A).values()]
        pairs.append((A, direct_sum(free_module(A, 1), lambda_module(A))))
    seed = 0
    while len(pairs) < 120:
        A = gor[seed % len(gor)]
        M = corpus.random_module(A, 1000 + seed, 1 + seed % 3)
        if M.depth_ok:
            pairs.append((A, M))
        seed += 1
    verdicts = set()
    for A, M in pairs:
        if not M.depth_ok:
            continue
        v = freeness_prediamond(A, M).conclusion
        assert v == direct_freeness_oracle(A, M).conclusion
        verdicts.add(v)
    assert verdicts == {Conclusion.FREE, Conclusion.NOT_FREE}


def criterion_6():
    t = time.perf_counter()
    rep = venkatesh_check(corpus.depth0_presentation(Z5, 1))
    assert (rep.ell_I, rep.ell_J, rep.aq1, rep.aq2, rep.delta_B, rep.minimal) == (1, 1, 1, 1, 1, True)
    for A in corpus.all_algebras(Z5).values():
        if ci_test(A).conclusion != Conclusion.CI:
            continue
        z = venkatesh_check(corpus.identity_presentation(A))
        assert (z.ell_I, z.ell_J, z.aq1, z.aq2, z.delta_B) == (0, 0, 0, 0, 0)
    from congruence.algebra import quotient_by_ideal, quotient_map
    for A in corpus.all_algebras(Z5).values():
        if gorenstein_test(A).conclusion != Conclusion.GORENSTEIN:
            continue
        for B in (A, quotient_by_ideal(A, A.augmentation_ideal)):
            gorsum_check(A, quotient_map(A, B))
    P = corpus.depth0_presentation(Z5, 1)
    gorsum_check(P.C, P.map)
    assert time.perf_counter() - t < 5.0


def criterion_7():
    T = corpus.trivial(Z5)
    R = ArtinianAlgebra(T, T.ideal([[Z5.pi_pow(3)]]))
    v = wiebe_module_test(R, R.regular)
    assert v.conclusion == Conclusion.FREE and v.certificate["ci"]
    assert wiebe_module_test(R, residue_module(T)).conclusion == Conclusion.INCONCLUSIVE


def snf_matrix(seed=2024):
    # entries u·5^v with 0 < |u| < 10^6 prime to 5 and v <= 3
    rng = random.Random(seed)

    def entry():
        u = rng.randrange(1, 10**6)
        while u % 5 == 0:
            u = rng.randrange(1, 10**6)
        return rng.choice([-1, 1]) * u * 5 ** rng.randint(0, 3)

    return Matrix.from_rows(Z5, [[entry() for _ in range(200)] for _ in range(200)])


def criterion_8():
    A = snf_matrix()
    t = time.perf_counter()
    res = snf(A)
    elapsed = time.perf_counter() - t
    assert verify_snf(A, res)
    assert elapsed < 10.0, f"SNF took {elapsed:.2f} s"


def criterion_9():
    cmd = [sys.executable, "-m", "congruence.cli", "selftest", "--seed", "3", "--json"]
    a = subprocess.run(cmd, capture_output=True)
    b = subprocess.run(cmd, capture_output=True)
    assert a.returncode == 0 and b.returncode == 0
    assert a.stdout == b.stdout
    assert json.loads(a.stdout)["results"]["seed"] == 3


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
            criterion_6, criterion_7, criterion_8, criterion_9]


@pytest.mark.parametrize("n", range(1, 10))
def test_criterion(n):
    CRITERIA[n - 1]()


if __name__ == "__main__":
    failed = 0
    for n, fn in enumerate(CRITERIA, 1):
        t = time.perf_counter()
        try:
            fn()
            status = "PASS"
        except AssertionError as ex:
            status, failed = f"FAIL ({ex})", failed + 1
        print(f"criterion {n}: {status}  [{time.perf_counter() - t:.2f} s]")
    sys.exit(1 if failed else 0)
