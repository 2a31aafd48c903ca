"""Deterministic property run over the corpus and seeded random modules.

Setting CONGRUENCE_FAULT to a comma-separated list of identity names perturbs
the corresponding comparison, so the run must fail naming that identity.
This hook exists for testing the failure path only.
"""
from __future__ import annotations

import os

from . import corpus
from .amodule import wiles_defect
from .criteria import (
    ArtinianAlgebra,
    Conclusion,
    direct_freeness_oracle,
    freeness_prediamond,
    gorenstein_test,
    wiebe_module_test,
)
from .dvr import RatFuncLocal, ZLocal
from .errors import InternalInvariantViolation
from .properties import check_algebra, check_module
from .venkatesh import gorsum_check, venkatesh_check

FAULT_ENV = "CONGRUENCE_FAULT"


def _faults() -> set[str]:
    return {f.strip() for f in os.environ.get(FAULT_ENV, "").split(",") if f.strip()}


def run(seed: int = 0, count: int = 40) -> dict:
    """Run every identity; returns counts per identity name."""
    faults = _faults()
    counts: dict[str, int] = {}

    def bump(name, k=1):
        counts[name] = counts.get(name, 0) + k

    specs = [ZLocal(5), RatFuncLocal(3)]
    suite = []
    for spec in specs:
        algs = corpus.all_algebras(spec)
        for name, A in algs.items():
            bump("structure", check_algebra(A))
            suite.append((f"{spec}:{name}", A))

    for k in range(count):
        name, A = suite[(seed + k) % len(suite)]
        M = corpus.random_module(A, seed * 100003 + k, 1 + k % 3)
        bump("module-structure", check_module(M))
        rep = wiles_defect(M)
        if rep.depth_ok:
            rhs = rep.d * (rep.ell_phi - rep.ell_psi_A) + rep.ell_gap
            if "defect-decomposition" in faults:
                rhs += 1
            if rep.delta != rhs or rep.delta < 0:
                raise InternalInvariantViolation("defect-decomposition",
                                                 f"{name}, module seed {seed * 100003 + k}")
            bump("defect-decomposition")
        if rep.depth_ok and gorenstein_test(A).conclusion == Conclusion.GORENSTEIN:
            verdict = freeness_prediamond(A, M).conclusion
            oracle = direct_freeness_oracle(A, M).conclusion
            if "prediamond-freeness" in faults:
                oracle = Conclusion.FREE if oracle == Conclusion.NOT_FREE else Conclusion.NOT_FREE
            if verdict != oracle:
                raise InternalInvariantViolation("prediamond-freeness",
                                                 f"{name}, module seed {seed * 100003 + k}")
            bump("prediamond-freeness")

    spec = specs[0]
    pres = [corpus.depth0_presentation(spec, 1), corpus.depth0_presentation(spec, 2),
            corpus.identity_presentation(corpus.glue(spec, 1)), corpus.gor_not_ci_presentation(spec)]
    for P in pres:
        rep = venkatesh_check(P)
        lhs = rep.delta_B + (1 if "venkatesh-formula" in faults else 0)
        if lhs != rep.aq2 - rep.ell_I_over_J:
            raise InternalInvariantViolation("venkatesh-formula", "presentation report")
        bump("venkatesh-formula")
        g = gorsum_check(P.C, P.map)
        if "gorenstein-sum" in faults or g.ell_psi_C != g.ell_psi_B + g.ell_I:
            raise InternalInvariantViolation("gorenstein-sum", "presentation report")
        bump("gorenstein-sum")

    triv = corpus.trivial(spec)
    R = ArtinianAlgebra(triv, triv.ideal([[spec.pi_pow(3)]]))
    v = wiebe_module_test(R, R.regular)
    if "wiebe" in faults or v.conclusion != Conclusion.FREE:
        raise InternalInvariantViolation("wiebe", "O/ϖ³ is not reported free")
    bump("wiebe")
    return {"seed": seed, "count": count, "checks": dict(sorted(counts.items()))}
