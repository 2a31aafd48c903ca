import pytest
from hypothesis import given, settings, strategies as st

from congruence import corpus
from congruence.amodule import AModule, direct_sum, free_module, wiles_defect
from congruence.criteria import Conclusion, ci_test, gorenstein_test, multiplicity
from congruence.dvr import ZLocal
from congruence.fileformat import module_block

Z5 = ZLocal(5)


def test_glue_one_profile(spec):
    A = corpus.glue(spec, 1)
    assert (A.conormal.length(), A.congruence_valuation) == (1, 1)
    assert multiplicity(A).e == 2
    assert gorenstein_test(A).conclusion == Conclusion.GORENSTEIN
    assert ci_test(A).conclusion == Conclusion.CI


def test_depth0_profile(spec):
    A = corpus.depth0(spec)
    assert A.augmentation_ideal.as_subquotient().is_subset_of(A.dualizing_ideal.as_subquotient())
    assert not A.depth_at_least_one


def test_gor_not_ci_profile(spec):
    A = corpus.gor_not_ci(spec)
    assert A.rank == 5 and A.conormal.length() == 3
    assert gorenstein_test(A).conclusion == Conclusion.GORENSTEIN
    assert ci_test(A).conclusion == Conclusion.NOT_CI


@pytest.mark.parametrize("text,family,params", [
    ("Glue(2)", "Glue", (2,)),
    ("MultiGlue(3)", "MultiGlue", (3,)),
    ("RandomMonogenic(7,3)", "RandomMonogenic", (7, 3)),
    ("GorNotCI", "GorNotCI", ()),
])
def test_parse_family(text, family, params):
    fs = corpus.parse_family(text, Z5)
    assert (fs.family, fs.params) == (family, params)
    corpus.build(fs)


@pytest.mark.parametrize("text", ["Nope", "Glue(2", "Glue(x)"])
def test_parse_family_rejects(text):
    with pytest.raises(ValueError):
        corpus.parse_family(text, Z5)


def test_all_algebras_validate(spec):
    algs = corpus.all_algebras(spec)
    assert len(algs) >= 10
    for A in algs.values():
        assert A.conormal.length() >= A.congruence_valuation


@pytest.mark.parametrize("seed", range(6))
def test_random_monogenic_is_ci(seed):
    A = corpus.random_monogenic(Z5, seed, 3)
    assert ci_test(A).conclusion == Conclusion.CI


NAMES = sorted(corpus.all_algebras(Z5))
ALGS = corpus.all_algebras(Z5)


@given(st.sampled_from(NAMES), st.integers(0, 10**6), st.integers(1, 3))
@settings(max_examples=30, deadline=None)
def test_random_module_seed_stable(name, seed, size):
    A = ALGS[name]
    a, b = corpus.random_module(A, seed, size), corpus.random_module(A, seed, size)
    assert module_block(a) == module_block(b)


@given(st.sampled_from(["Glue(1)", "Glue(2)", "Glue(3)"]), st.integers(0, 10**6))
@settings(max_examples=30, deadline=None)
def test_random_glue_modules_decompose(name, seed):
    M = direct_sum(corpus.random_module(ALGS[name], seed, 2), free_module(ALGS[name], 1))
    AModule(M.algebra, M.n, M.o_relations, M.action)
    rep = wiles_defect(M)
    assert rep.decomposition_checked
    assert rep.delta == rep.d * (rep.ell_phi - rep.ell_psi_A) + rep.ell_gap
