import pytest

from congruence import corpus
from congruence.algebra import (
    AlgebraMap,
    cm_quotient,
    compile_monomial,
    conormal_from_presentation,
    identity_map,
    quotient_by_ideal,
    quotient_map,
    validate,
)
from congruence.dvr import ZLocal
from congruence.errors import (
    AugmentationNotInduced,
    ConormalInfinite,
    LambdaNotMultiplicative,
    LambdaNotUnital,
    NotAlgebraMap,
    NotAssociative,
    NotCommutative,
    NotLocal,
    NotUnital,
    NotWellDefined,
)
from congruence.linalg import Matrix

Z5 = ZLocal(5)


def two_dim(xx, lam_x=0, one=(1, 0), rels=()):
    return validate(Z5, ["1", "x"], list(rels), {"1*1": [1, 0], "1*x": [0, 1], "x*x": xx},
                    list(one), [1, lam_x])


def test_trivial_and_glue_validate(spec):
    assert corpus.trivial(spec).s == 1
    A = corpus.glue(spec, 1)
    assert A.rank == 2


@pytest.mark.parametrize("build,err", [
    (lambda: two_dim([0, 0]), ConormalInfinite),
    (lambda: two_dim([0, 1]), NotLocal),
    (lambda: two_dim([0, 5], lam_x=1), LambdaNotMultiplicative),
    (lambda: two_dim([0, 5], one=(0, 1)), NotUnital),
    (lambda: two_dim([0, 0], lam_x=1, rels=[[0, 5]]), NotWellDefined),
    (lambda: validate(Z5, ["1"], [], [[[1]]], [1], [2]), LambdaNotUnital),
])
def test_axiom_failures(build, err):
    with pytest.raises(err):
        build()


def test_not_commutative():
    e = [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
    z = [0, 0, 0]
    mult = [[e[0], e[1], e[2]], [e[1], z, e[2]], [e[2], z, z]]
    with pytest.raises(NotCommutative) as info:
        validate(Z5, ["1", "x", "y"], [], mult, e[0], [1, 0, 0])
    assert info.value.witness == ("x", "y")


def test_not_associative_has_witness_triple():
    mult = {"1*1": [1, 0, 0], "1*x": [0, 1, 0], "1*y": [0, 0, 1],
            "x*x": [0, 0, 1], "x*y": [0, 0, 0], "y*y": [0, 0, 1]}
    with pytest.raises(NotAssociative) as info:
        validate(Z5, ["1", "x", "y"], [], mult, [1, 0, 0], [1, 0, 0])
    assert len(info.value.witness) == 3


def test_glue_ideals(spec):
    A = corpus.glue(spec, 1)
    pi = spec.pi_pow(1)
    x = A.basis_vector(1)
    assert A.augmentation_ideal.same_as(A.ideal([x]))
    assert A.dualizing_ideal.same_as(A.ideal([[-pi, spec.one]]))
    assert A.conormal.length() == 1
    assert A.congruence_valuation == 1
    assert A.depth_at_least_one and A.torsion_ideal.is_zero()
    assert cm_quotient(A) is A


def test_depth0_ideals(spec):
    A = corpus.depth0(spec)
    pi = spec.pi_pow(1)
    x = A.basis_vector(1)
    assert A.augmentation_ideal.same_as(A.ideal([x]))
    assert A.dualizing_ideal.same_as(A.ideal([[pi, spec.zero], x]))
    assert not A.depth_at_least_one
    assert A.torsion_ideal.same_as(A.ideal([x]))
    B = cm_quotient(A)
    assert B.rank == 1 and B.conormal.length() == 0


def test_gor_not_ci_ideals(spec):
    A = corpus.gor_not_ci(spec)
    z, one = spec.zero, spec.one
    assert A.rank == 5
    assert A.augmentation_ideal.same_as(A.ideal([A.basis_vector(i) for i in range(1, 5)]))
    assert A.dualizing_ideal.same_as(A.ideal([[-spec.pi_pow(2), z, z, z, one]]))
    assert A.conormal.length() == 3
    assert A.congruence_valuation == 2


def test_trivial_has_no_congruences(spec):
    A = corpus.trivial(spec)
    assert A.augmentation_ideal.is_zero()
    assert A.conormal.length() == 0
    assert A.congruence_valuation == 0


def test_quotient_glue_to_depth0(spec):
    A = corpus.glue(spec, 1)
    J = A.ideal([[spec.zero, spec.pi_pow(1)]])
    B = quotient_by_ideal(A, J)
    assert not B.depth_at_least_one
    assert B.is_zero(B.mul(B.basis_vector(1), B.basis_vector(1)))
    f = quotient_map(A, B)
    assert f.kernel.same_as(J)


def test_quotient_by_augmentation_is_O(spec):
    A = corpus.gor_not_ci(spec)
    B = quotient_by_ideal(A, A.augmentation_ideal)
    assert B.rank == 1 and B.augmentation_ideal.is_zero()
    assert quotient_by_ideal(A, A.zero_ideal()).rank == 5


def test_quotient_requires_lambda_vanishing():
    A = corpus.glue(Z5, 1)
    with pytest.raises(AugmentationNotInduced):
        quotient_by_ideal(A, A.unit_ideal())


def test_conormal_from_presentation():
    pi = Z5.pi_pow(1)
    z = Z5.zero
    rows = [[z, z, z], [z, z, z], [pi, z, z], [z, pi, z], [z, z, pi]]
    assert conormal_from_presentation(Matrix(Z5, 5, 3, rows)).length() == 3
    assert conormal_from_presentation(Matrix.identity(Z5, 4)).length() == 0
    d = Matrix(Z5, 2, 2, [[pi, z], [z, pi]])
    assert conormal_from_presentation(d).length() == 2


def test_maps():
    A = corpus.glue(Z5, 1)
    assert identity_map(A).kernel_is_zero()
    bad = Matrix.from_rows(Z5, [[1, 1], [0, 0]])
    with pytest.raises(NotAlgebraMap):
        AlgebraMap(A, A, bad)


def test_compile_monomial_matches_glue():
    # O[x]/(x² − ϖx) from the rewriting rule x² -> ϖx
    A = compile_monomial(Z5, ["x"], [(0,), (1,)], {(0, (1,)): [0, 5]}, [0])
    B = corpus.glue(Z5, 1)
    assert A.mult == B.mult


@pytest.mark.parametrize("m", [1, 2, 3])
def test_glue_lengths(spec, m):
    A = corpus.glue(spec, m)
    assert A.conormal.length() == m
    assert A.congruence_valuation == m


@pytest.mark.parametrize("r", [2, 3, 4])
def test_multi_glue_lengths(r):
    A = corpus.multi_glue(Z5, r)
    assert A.rank == r
    assert A.conormal.length() >= A.congruence_valuation
