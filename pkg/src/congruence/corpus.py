"""Built-in algebras and random modules used by tests, selftest and the CLI."""
from __future__ import annotations

import random
from dataclasses import dataclass, field

from .algebra import FiniteOAlgebra, compile_monomial, validate
from .amodule import (
    AModule,
    direct_sum,
    free_module,
    ideal_as_module,
    lambda_module,
    quotient_module,
)
from .dvr import DvrSpec, ZLocal

FAMILIES = ("Trivial", "Glue", "Depth0Example", "GorNotCI", "MonogenicCI", "MultiGlue",
            "RandomMonogenic")


def _e(spec, s, i):
    return [spec.one if k == i else spec.zero for k in range(s)]


def _sc(c, v):
    return [c * x for x in v]


def trivial(spec: DvrSpec) -> FiniteOAlgebra:
    return validate(spec, ["1"], [], [[[spec.one]]], [spec.one], [spec.one])


def glue(spec: DvrSpec, m: int = 1) -> FiniteOAlgebra:
    """O[x]/(x² − ϖᵐx), λ(x) = 0."""
    pi_m = spec.pi_pow(m)
    e = lambda i: _e(spec, 2, i)
    mult = [[e(0), e(1)], [e(1), _sc(pi_m, e(1))]]
    return validate(spec, ["1", "x"], [], mult, e(0), [spec.one, spec.zero])


def depth0(spec: DvrSpec) -> FiniteOAlgebra:
    """O[x]/(ϖx, x²)."""
    e = lambda i: _e(spec, 2, i)
    mult = [[e(0), e(1)], [e(1), [spec.zero, spec.zero]]]
    return validate(spec, ["1", "x"], [_sc(spec.pi_pow(1), e(1))], mult, e(0),
                    [spec.one, spec.zero])


def gor_not_ci(spec: DvrSpec) -> FiniteOAlgebra:
    """O[x,y,z]/(x²−y², x²−z², ϖx−yz, ϖy−xz, ϖz−xy) on the basis 1, x, y, z, w = x²."""
    pi, pi2 = spec.pi_pow(1), spec.pi_pow(2)
    e = lambda i: _e(spec, 5, i)
    M = [[None] * 5 for _ in range(5)]
    for i in range(5):
        M[0][i] = M[i][0] = e(i)
    M[1][1] = M[2][2] = M[3][3] = e(4)
    M[1][2] = M[2][1] = _sc(pi, e(3))
    M[1][3] = M[3][1] = _sc(pi, e(2))
    M[2][3] = M[3][2] = _sc(pi, e(1))
    for i in range(1, 5):
        M[4][i] = M[i][4] = _sc(pi2, e(i))
    lam = [spec.one] + [spec.zero] * 4
    return validate(spec, ["1", "x", "y", "z", "w"], [], M, e(0), lam)


def monogenic_ci(spec: DvrSpec, g) -> FiniteOAlgebra:
    """O[x]/(x·g(x)) for monic g with non-leading coefficients in ϖO.

    ``g`` lists coefficients from the constant term up; g(0) = ϖᵐ·unit gives
    ℓΦ = ℓΨ = m.
    """
    g = [spec.coerce(c) for c in g]
    n = len(g) - 1
    if n < 0 or g[-1] != spec.one:
        raise ValueError("g must be monic")
    deg = n + 1
    basis = [(k,) for k in range(deg)]
    # x·x^(deg-1) = x^deg = −Σ_{i<n} g_i x^(i+1)
    top = [spec.zero] * deg
    for i in range(n):
        top[i + 1] = -g[i]
    rules = {(0, (deg - 1,)): top}
    return compile_monomial(spec, ["x"], basis, rules, [spec.zero])


def multi_glue(spec: DvrSpec, r: int = 3) -> FiniteOAlgebra:
    """r copies of O glued along k: basis 1, f_i = ϖe_i (i < r), f_i·f_j = δ_ij ϖ f_i."""
    s = r
    pi = spec.pi_pow(1)
    e = lambda i: _e(spec, s, i)
    M = [[None] * s for _ in range(s)]
    for i in range(s):
        M[0][i] = M[i][0] = e(i)
    for i in range(1, s):
        for j in range(1, s):
            M[i][j] = _sc(pi, e(i)) if i == j else [spec.zero] * s
    names = ["1"] + [f"f{i}" for i in range(1, s)]
    return validate(spec, names, [], M, e(0), [spec.one] + [spec.zero] * (s - 1))


def random_monogenic(spec: DvrSpec, seed: int, degree: int = 2) -> FiniteOAlgebra:
    """MonogenicCI with a seeded random g of the given degree."""
    rng = random.Random(seed)
    m = rng.randint(1, 3)
    pi = spec.pi_pow(1)
    g = [spec.pi_pow(m) * spec.from_int(rng.randint(1, spec.p - 1))]
    for _ in range(1, degree):
        g.append(pi * spec.from_int(rng.randint(-5, 5)))
    g.append(spec.one)
    return monogenic_ci(spec, g)


# C = O[x,y,z]/(ϖx − yz, ϖy − xz + x² − z², ϖz − xy + x² − y²), a complete
# intersection mapping onto GorNotCI.  The rules give v·m on the monomial basis
# below, each coordinate a polynomial in ϖ listed from the constant term up.
_COVER_BASIS = [(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 0, 1), (0, 2, 0), (0, 0, 2), (0, 0, 3)]
_COVER_RULES = {
    (0, (1, 0, 0)): [[0], [0], [0, -1], [0], [1], [0], [1], [0]],
    (0, (0, 1, 0)): [[0], [0], [0, -1], [0, 1], [1], [-1], [1], [0]],
    (0, (1, 0, 1)): [[0], [0], [0, 0, -2], [0, 0, 1], [0, 2], [0, -1], [0, 1], [0]],
    (0, (0, 2, 0)): [[0], [0, 0, 1], [0, 0, -2], [0, 0, 1], [0, 2], [0], [0], [-1]],
    (0, (0, 0, 2)): [[0], [0, 0, 1], [0, 0, -2], [0, 0, 1], [0, 2], [0, -1], [0, 1], [-1]],
    (0, (0, 0, 3)): [[0], [0], [0], [0, 0, 0, -1], [0, 0, 1], [0], [0], [0, 1]],
    (1, (1, 0, 0)): [[0], [0], [0, -1], [0, 1], [1], [-1], [1], [0]],
    (1, (0, 0, 1)): [[0], [0, 1], [0], [0], [0], [0], [0], [0]],
    (1, (1, 0, 1)): [[0], [0], [0, 0, -1], [0], [0, 1], [0], [0, 1], [0]],
    (1, (0, 2, 0)): [[0], [0], [0, 0, 1], [0, 0, -1], [0], [0, -1], [0, 1], [1]],
    (1, (0, 0, 2)): [[0], [0], [0], [0], [0, 1], [0], [0], [0]],
    (1, (0, 0, 3)): [[0], [0, 0, 0, 1], [0, 0, 0, -2], [0, 0, 0, 1], [0, 0, 2], [0, 0, -1],
                     [0, 0, 1], [0, -1]],
    (2, (0, 1, 0)): [[0], [0, 1], [0], [0], [0], [0], [0], [0]],
    (2, (1, 0, 1)): [[0], [0, 0, 1], [0, 0, -2], [0, 0, 1], [0, 2], [0, -1], [0, 1], [-1]],
    (2, (0, 2, 0)): [[0], [0], [0, 0, -1], [0, 0, 1], [0, 1], [0, -1], [0, 1], [0]],
    (2, (0, 0, 3)): [[0], [0], [0, 0, 0, -3], [0, 0, 0, 2], [0, 0, 3], [0, 0, -1], [0, 0, 2],
                     [0, -2]],
}


def _pi_poly(spec: DvrSpec, coeffs):
    out = spec.zero
    for k, c in enumerate(coeffs):
        if c:
            out = out + spec.from_int(c) * spec.pi_pow(k)
    return out


def gor_not_ci_cover(spec: DvrSpec) -> FiniteOAlgebra:
    rules = {key: [_pi_poly(spec, c) for c in coords] for key, coords in _COVER_RULES.items()}
    return compile_monomial(spec, ["x", "y", "z"], _COVER_BASIS, rules, [0, 0, 0])


def gor_not_ci_presentation(spec: DvrSpec):
    from .linalg import Matrix
    from .venkatesh import CIPresentation, map_from_variable_images

    C, A = gor_not_ci_cover(spec), gor_not_ci(spec)
    e = lambda i: _e(spec, 5, i)
    alpha = map_from_variable_images(C, _COVER_BASIS, [e(1), e(2), e(3)], A)
    pi = spec.pi_pow(1)
    lin = Matrix.from_rows(spec, [[pi, 0, 0], [0, pi, 0], [0, 0, pi]])
    return CIPresentation(C, A, alpha, lin)


def depth0_presentation(spec: DvrSpec, m: int = 1):
    """Glue(m) ↠ Depth0Example, x ↦ x; minimal exactly when m = 1."""
    from .linalg import Matrix
    from .venkatesh import CIPresentation

    return CIPresentation(glue(spec, m), depth0(spec), Matrix.identity(spec, 2))


def identity_presentation(A: FiniteOAlgebra):
    from .linalg import Matrix
    from .venkatesh import CIPresentation

    return CIPresentation(A, A, Matrix.identity(A.spec, A.s))


@dataclass(frozen=True)
class FamilySpec:
    family: str
    dvr: DvrSpec = field(default_factory=lambda: ZLocal(5))
    params: tuple = ()


def build(fs: FamilySpec) -> FiniteOAlgebra:
    f, spec, a = fs.family, fs.dvr, fs.params
    if f == "Trivial":
        return trivial(spec)
    if f == "Glue":
        return glue(spec, *a)
    if f == "Depth0Example":
        return depth0(spec)
    if f == "GorNotCI":
        return gor_not_ci(spec)
    if f == "MonogenicCI":
        if a:
            return monogenic_ci(spec, list(a))
        return monogenic_ci(spec, [spec.pi_pow(2), spec.pi_pow(1), spec.one])
    if f == "MultiGlue":
        return multi_glue(spec, *a)
    if f == "RandomMonogenic":
        return random_monogenic(spec, *a) if a else random_monogenic(spec, 0)
    raise ValueError(f"unknown family {f!r}")


def parse_family(text: str, spec: DvrSpec) -> FamilySpec:
    """'Glue(2)', 'MultiGlue(3)', 'RandomMonogenic(7,3)' and so on."""
    text = text.strip()
    name, _, rest = text.partition("(")
    params = ()
    if rest:
        if not rest.endswith(")"):
            raise ValueError(f"bad family {text!r}")
        inner = rest[:-1].strip()
        params = tuple(int(x) for x in inner.split(",")) if inner else ()
    if name not in FAMILIES:
        raise ValueError(f"unknown family {name!r}")
    return FamilySpec(name, spec, params)


def canonical_modules(A: FiniteOAlgebra) -> dict[str, AModule]:
    """regular, O via λ, I_A and p_A as A-modules."""
    return {
        "regular": free_module(A, 1),
        "lambda": lambda_module(A),
        "I_A": ideal_as_module(A, A.dualizing_ideal),
        "p_A": ideal_as_module(A, A.augmentation_ideal),
    }


def _random_element(A: FiniteOAlgebra, rng: random.Random, lo=-3, hi=3):
    spec = A.spec
    return [spec.from_int(rng.randint(lo, hi)) for _ in range(A.s)]


def random_module(A: FiniteOAlgebra, seed: int, size: int = 2) -> AModule:
    """A seeded module assembled from free modules, ideals, λ and quotients."""
    rng = random.Random(seed)
    parts = []
    for _ in range(max(1, size)):
        kind = rng.choice(["free", "lambda", "I", "p", "ideal", "quotient"])
        if kind == "free":
            parts.append(free_module(A, 1))
        elif kind == "lambda":
            parts.append(lambda_module(A))
        elif kind == "I":
            parts.append(ideal_as_module(A, A.dualizing_ideal))
        elif kind == "p":
            parts.append(ideal_as_module(A, A.augmentation_ideal))
        elif kind == "ideal":
            gens = [_random_element(A, rng) for _ in range(rng.randint(1, 2))]
            J = A.ideal(gens)
            if J.is_zero():
                J = A.unit_ideal()
            parts.append(ideal_as_module(A, J))
        else:
            J = A.ideal([_random_element(A, rng)])
            parts.append(quotient_module(free_module(A, 1), J.generators))
    M = parts[0]
    for N in parts[1:]:
        M = direct_sum(M, N)
    return M


def all_algebras(spec: DvrSpec | None = None) -> dict[str, FiniteOAlgebra]:
    """The standard corpus list, keyed by family string."""
    spec = spec or ZLocal(5)
    out = {
        "Trivial": trivial(spec),
        "Glue(1)": glue(spec, 1),
        "Glue(2)": glue(spec, 2),
        "Glue(3)": glue(spec, 3),
        "Depth0Example": depth0(spec),
        "GorNotCI": gor_not_ci(spec),
        "MonogenicCI": build(FamilySpec("MonogenicCI", spec)),
        "MultiGlue(3)": multi_glue(spec, 3),
        "MultiGlue(4)": multi_glue(spec, 4),
    }
    for seed in range(3):
        out[f"RandomMonogenic({seed},2)"] = random_monogenic(spec, seed, 2)
    return out
