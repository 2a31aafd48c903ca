import pytest
from hypothesis import given, settings, strategies as st

from congruence import corpus, selftest
from congruence.dvr import RatFuncLocal, ZLocal
from congruence.errors import InternalInvariantViolation
from congruence.properties import check_algebra, check_module

SPECS = [ZLocal(5), RatFuncLocal(3), ZLocal(2)]
CASES = [(str(s), n, A) for s in SPECS for n, A in corpus.all_algebras(s).items()]


@pytest.mark.parametrize("label,name,A", CASES, ids=[f"{c[0]}-{c[1]}" for c in CASES])
def test_structural_identities(label, name, A):
    assert check_algebra(A) >= 3
    for M in corpus.canonical_modules(A).values():
        check_module(M)


@given(st.sampled_from(range(len(CASES))), st.integers(0, 10**6), st.integers(1, 3))
@settings(max_examples=40, deadline=None)
def test_module_identities_random(i, seed, size):
    A = CASES[i][2]
    check_module(corpus.random_module(A, seed, size))


@pytest.mark.parametrize("fault", ["defect-decomposition", "prediamond-freeness", "venkatesh-formula",
                                   "gorenstein-sum", "wiebe"])
def test_fault_injection_names_identity(monkeypatch, fault):
    monkeypatch.setenv(selftest.FAULT_ENV, fault)
    with pytest.raises(InternalInvariantViolation) as info:
        selftest.run(seed=0, count=12)
    assert info.value.lemma == fault


def test_selftest_counts_are_deterministic():
    a = selftest.run(seed=5, count=10)
    assert a == selftest.run(seed=5, count=10)
    assert a["checks"]["wiebe"] == 1
