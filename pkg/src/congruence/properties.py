"""Executable structural identities, shared by the selftest and the test suite.

Each check raises InternalInvariantViolation naming the identity on failure
and returns the number of elementary comparisons it made.
"""
from __future__ import annotations

from .algebra import FiniteOAlgebra
from .amodule import AModule, torsion_submodule
from .errors import InternalInvariantViolation
from .linalg import Matrix
from .omodule import Subquotient, intersect


def _fail(name: str, msg: str):
    raise InternalInvariantViolation(name, msg)


def check_algebra(A: FiniteOAlgebra) -> int:
    p, I = A.augmentation_ideal, A.dualizing_ideal
    if not A.annihilator(I).same_as(p):
        _fail("annihilator-of-dualizing", "A[I_A] != p_A")
    if I.as_subquotient().free_rank() != 1:
        _fail("dualizing-rank", f"rank I_A = {I.as_subquotient().free_rank()}")
    phi, psi = A.conormal.length(), A.congruence_valuation
    if phi < psi:
        _fail("conormal-bound", f"ℓΦ = {phi} < ℓΨ = {psi}")
    n = 3
    if A.depth_at_least_one:
        if not any(A.ideal([g]).same_as(I) for g in I.vectors):
            _fail("dualizing-principal", "I_A is not generated by one of its O-generators")
        I2 = A.ideal_product(I, I)
        q = Subquotient(A.underlying, I.generators, I2.generators, check=False).length()
        if q != psi:
            _fail("dualizing-conormal", f"ℓ(I/I²) = {q} != ℓΨ = {psi}")
        n += 2
    return n


def check_module(M: AModule) -> int:
    """Torsion-free module identities; returns 0 when M has depth 0."""
    if not M.depth_ok:
        return 0
    spec = M.spec
    Mp, MI = M.torsion_p, M.torsion_I
    if not intersect(Mp, MI).is_zero():
        _fail("torsion-intersection", "M[p] ∩ M[I] != 0")
    quo = Subquotient(M.underlying, Matrix.identity(spec, M.n), MI.numerator, check=False)
    free, tors = quo.invariants
    if tors or free != Mp.free_rank():
        _fail("free-equal-rank", f"M/M[I] has invariants {free}, {tors}; rank M[p] = {Mp.free_rank()}")
    pi = spec.pi_pow(1)
    piM = Subquotient(M.underlying, Matrix.identity(spec, M.n).scale(pi), check=False)
    for J in (M.algebra.augmentation_ideal, M.algebra.dualizing_ideal):
        MJ = torsion_submodule(M, J)
        lhs = intersect(piM, MJ)
        rhs = Subquotient(M.underlying, MJ.numerator.scale(pi), check=False)
        if not lhs.same_numerator(rhs):
            _fail("pi-torsion-intersection", "ϖM ∩ M[J] != ϖ·M[J]")
    return 4
