import pytest
from hypothesis import given, settings, strategies as st

from congruence import corpus
from congruence.algebra import AlgebraMap, identity_map, quotient_by_ideal, quotient_map
from congruence.amodule import direct_sum, free_module, ideal_as_module, lambda_module, residue_module
from congruence.criteria import (
    ArtinianAlgebra,
    Conclusion,
    ci_test,
    diamond_test,
    direct_freeness_oracle,
    fitting_ideal,
    freeness_prediamond,
    gorenstein_test,
    iso_criteria,
    multiplicity,
    wiebe_module_test,
    wiles_criterion,
    zero_dim_gorenstein_free_test,
)
from congruence.dvr import ZLocal
from congruence.errors import NotGorensteinInput, PreconditionFailed

Z5 = ZLocal(5)
C = Conclusion


def test_multiplicity_examples(spec):
    assert multiplicity(corpus.trivial(spec)).e == 1
    g = multiplicity(corpus.glue(spec, 1))
    assert g.e == 2 and g.superficial_crosscheck == 2
    assert multiplicity(corpus.gor_not_ci(spec)).e == 5


@pytest.mark.parametrize("r", [2, 3, 4])
def test_multiplicity_multi_glue(r):
    assert multiplicity(corpus.multi_glue(Z5, r)).e == r


def test_multiplicity_depth0_has_no_crosscheck():
    res = multiplicity(corpus.depth0(Z5))
    assert res.e == 1
    assert res.superficial_crosscheck is None


def test_zero_dim_free_test(spec):
    A = corpus.glue(spec, 1)
    R = ArtinianAlgebra.mod_pi(A)
    assert zero_dim_gorenstein_free_test(R, R.regular).conclusion == C.FREE
    assert zero_dim_gorenstein_free_test(R, residue_module(A)).conclusion == C.NOT_FREE
    assert zero_dim_gorenstein_free_test(R, direct_sum(R.regular, R.regular)).conclusion == C.FREE


def test_zero_dim_free_test_needs_gorenstein():
    R = ArtinianAlgebra.mod_pi(corpus.multi_glue(Z5, 3))
    with pytest.raises(NotGorensteinInput):
        zero_dim_gorenstein_free_test(R, R.regular)


def test_gorenstein_examples(spec):
    assert gorenstein_test(corpus.glue(spec, 1)).conclusion == C.GORENSTEIN
    v = gorenstein_test(corpus.gor_not_ci(spec))
    assert v.conclusion == C.GORENSTEIN and v.certificate["socleIsIR"]
    v = gorenstein_test(corpus.multi_glue(spec, 3))
    assert v.conclusion == C.NOT_GORENSTEIN and v.certificate["socleLength"] == 2


def test_ci_examples(spec):
    assert ci_test(corpus.glue(spec, 1)).conclusion == C.CI
    assert ci_test(corpus.gor_not_ci(spec)).conclusion == C.NOT_CI
    assert ci_test(corpus.trivial(spec)).conclusion == C.CI
    assert ci_test(corpus.depth0(spec)).conclusion == C.NOT_CI


def test_prediamond_examples(spec):
    A = corpus.glue(spec, 1)
    assert freeness_prediamond(A, free_module(A, 1)).conclusion == C.FREE
    v = freeness_prediamond(A, lambda_module(A))
    assert v.conclusion == C.NOT_FREE and v.certificate["delta"] == 1
    G = corpus.gor_not_ci(spec)
    I = ideal_as_module(G, G.dualizing_ideal)
    assert freeness_prediamond(G, I).conclusion == direct_freeness_oracle(G, I).conclusion


def test_prediamond_preconditions():
    with pytest.raises(PreconditionFailed):
        freeness_prediamond(corpus.multi_glue(Z5, 3), free_module(corpus.multi_glue(Z5, 3), 1))
    A = corpus.glue(Z5, 1)
    with pytest.raises(PreconditionFailed):
        freeness_prediamond(A, residue_module(A))


def test_diamond_examples(spec):
    A = corpus.glue(spec, 1)
    v = diamond_test(A, free_module(A, 2))
    assert v.conclusion == C.FREE and v.certificate["ci"]
    assert diamond_test(A, lambda_module(A)).conclusion == C.INCONCLUSIVE
    G = corpus.gor_not_ci(spec)
    assert diamond_test(G, free_module(G, 1)).conclusion == C.INCONCLUSIVE


def test_oracle_examples(spec):
    A = corpus.glue(spec, 1)
    v = direct_freeness_oracle(A, free_module(A, 3))
    assert v.conclusion == C.FREE
    assert direct_freeness_oracle(A, residue_module(A)).conclusion == C.NOT_FREE
    assert direct_freeness_oracle(A, ideal_as_module(A, A.dualizing_ideal)).conclusion == C.NOT_FREE


def test_fitting_examples(spec):
    A = corpus.glue(spec, 1)
    # one generator, no relations: the 1×1 minors of an empty matrix vanish
    assert fitting_ideal(A, free_module(A, 1)).is_zero()
    assert fitting_ideal(A, ideal_as_module(A, A.zero_ideal())).same_as(A.unit_ideal())
    J = A.ideal([[spec.pi_pow(2), spec.one]])
    from congruence.amodule import quotient_module
    assert fitting_ideal(A, quotient_module(free_module(A, 1), J.generators)).same_as(J)
    K = A.ideal([[spec.zero, spec.pi_pow(1)]])
    F = fitting_ideal(A, ideal_as_module(A, K))
    assert F.same_as(A.ideal([[-spec.pi_pow(1), spec.one]]))


def test_iso_criteria_examples(spec):
    A = corpus.glue(spec, 1)
    assert iso_criteria(identity_map(A)).conclusion == C.ISOMORPHISM
    O = quotient_by_ideal(A, A.augmentation_ideal)
    v = iso_criteria(quotient_map(A, O))
    assert v.conclusion == C.INCONCLUSIVE and v.certificate["ellPsiA"] == 1
    D = quotient_by_ideal(A, A.ideal([[spec.zero, spec.pi_pow(1)]]))
    with pytest.raises(PreconditionFailed):
        iso_criteria(quotient_map(A, D))


def test_wiles_criterion_examples(spec):
    A = corpus.glue(spec, 1)
    v = wiles_criterion(identity_map(A))
    assert v.conclusion == C.ISOMORPHISM and v.certificate["ci"]
    O = quotient_by_ideal(A, A.augmentation_ideal)
    v = wiles_criterion(quotient_map(A, O))
    assert v.conclusion == C.INCONCLUSIVE and v.certificate["delta"] == 1
    D = corpus.depth0(spec)
    B = quotient_by_ideal(D, D.torsion_ideal)
    assert wiles_criterion(quotient_map(D, B)).certificate["delta"] == 1


def test_wiebe_examples(spec):
    T = corpus.trivial(spec)
    R = ArtinianAlgebra(T, T.ideal([[spec.pi_pow(3)]]))
    v = wiebe_module_test(R, R.regular)
    assert v.conclusion == C.FREE and v.certificate["ci"]
    k = residue_module(T)
    assert wiebe_module_test(R, k).conclusion == C.INCONCLUSIVE
    S = ArtinianAlgebra.mod_pi(corpus.multi_glue(spec, 3))
    v = wiebe_module_test(S, S.regular)
    assert v.conclusion == C.INCONCLUSIVE and v.certificate["fittZero"]


GOR = {k: v for k, v in corpus.all_algebras(Z5).items()
       if v.depth_at_least_one and gorenstein_test(v).conclusion == C.GORENSTEIN}


@given(st.sampled_from(sorted(GOR)), st.integers(0, 10**6), st.integers(1, 3))
@settings(max_examples=30, deadline=None)
def test_prediamond_agrees_with_oracle(name, seed, size):
    A = GOR[name]
    M = corpus.random_module(A, seed, size)
    if not M.depth_ok:
        return
    assert freeness_prediamond(A, M).conclusion == direct_freeness_oracle(A, M).conclusion


@given(st.integers(1, 3), st.integers(1, 3))
@settings(max_examples=9, deadline=None)
def test_free_modules_over_mod_pi_powers(n, k):
    T = corpus.trivial(Z5)
    R = ArtinianAlgebra.mod_pi(T, n)
    assert R.length() == n
    assert zero_dim_gorenstein_free_test(R, R.free_module(k)).conclusion == C.FREE
