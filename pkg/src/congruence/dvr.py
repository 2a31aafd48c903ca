"""The base discrete valuation ring O.

Two concrete rings share one interface:

* ``ZLocal(p)``: the integers localized at p, uniformizer p.
* ``RatFuncLocal(p)``: F_p[t] localized at (t), uniformizer t.

Elements come in two flavours.  ``DvrElement`` is the public immutable value
type.  Internally the linear algebra works on *raw* values (``gmpy2.mpq`` for
ZLocal, :class:`RatFunc` for RatFuncLocal) and calls the ring helpers on
``DvrSpec`` directly, which avoids a wrapper allocation per arithmetic step.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from fractions import Fraction

import gmpy2
from flint import nmod_poly

from .errors import NotAUnit, ParseError, SpecMismatch, ZeroElement

INFINITY = math.inf

Z_LOCAL = "ZLocal"
RATFUNC_LOCAL = "RatFuncLocal"

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)


def is_prime(n: int) -> bool:
    """Deterministic primality test for n < 3.3e24."""
    if n < 2:
        return False
    for q in _MR_BASES:
        if n % q == 0:
            return n == q
    if n >= 3317044064679887385961981:
        raise ValueError("prime too large for the deterministic test")
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _poly_val(poly: nmod_poly) -> int:
    """t-adic valuation of a nonzero polynomial."""
    for i, c in enumerate(poly.coeffs()):
        if int(c):
            return i
    raise ZeroElement("valuation of zero polynomial")


class RatFunc:
    """Element of F_p[t]_(t): num/den with gcd 1 and den(0) = 1."""

    __slots__ = ("num", "den")

    def __init__(self, num: nmod_poly, den: nmod_poly, _canonical: bool = False):
        if not _canonical:
            if den.is_zero():
                raise ZeroDivisionError("zero denominator")
            if num.is_zero():
                den = nmod_poly([1], den.modulus())
            else:
                g = num.gcd(den)
                if not g.is_one():
                    num, den = num // g, den // g
                c = int(den[0])
                if c == 0:
                    raise NotAUnit("denominator is not a unit of O")
                if c != 1:
                    inv = pow(c, -1, den.modulus())
                    num, den = num * inv, den * inv
        self.num = num
        self.den = den

    def __add__(self, o: RatFunc) -> RatFunc:
        if self.den == o.den:
            return RatFunc(self.num + o.num, self.den)
        return RatFunc(self.num * o.den + o.num * self.den, self.den * o.den)

    def __sub__(self, o: RatFunc) -> RatFunc:
        if self.den == o.den:
            return RatFunc(self.num - o.num, self.den)
        return RatFunc(self.num * o.den - o.num * self.den, self.den * o.den)

    def __mul__(self, o: RatFunc) -> RatFunc:
        return RatFunc(self.num * o.num, self.den * o.den)

    def __neg__(self) -> RatFunc:
        return RatFunc(-self.num, self.den, True)

    def __eq__(self, o) -> bool:
        return isinstance(o, RatFunc) and self.num == o.num and self.den == o.den

    def __hash__(self) -> int:
        return hash((tuple(int(c) for c in self.num.coeffs()),
                     tuple(int(c) for c in self.den.coeffs())))

    def __bool__(self) -> bool:
        return not self.num.is_zero()

    def __repr__(self) -> str:
        return f"RatFunc({self.num}, {self.den})"


@dataclass(frozen=True)
class DvrSpec:
    kind: str
    p: int
    _zero: object = field(init=False, repr=False, compare=False)
    _one: object = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.kind not in (Z_LOCAL, RATFUNC_LOCAL):
            raise ValueError(f"unknown DVR kind {self.kind!r}")
        if not isinstance(self.p, int) or not is_prime(self.p):
            raise ValueError(f"{self.p!r} is not prime")
        if self.kind == Z_LOCAL:
            zero, one = gmpy2.mpq(0), gmpy2.mpq(1)
        else:
            zero = RatFunc(nmod_poly([], self.p), nmod_poly([1], self.p), True)
            one = RatFunc(nmod_poly([1], self.p), nmod_poly([1], self.p), True)
        object.__setattr__(self, "_zero", zero)
        object.__setattr__(self, "_one", one)

    def __str__(self) -> str:
        return f"{self.kind}({self.p})"

    @property
    def is_zlocal(self) -> bool:
        return self.kind == Z_LOCAL

    # raw helpers -----------------------------------------------------------

    @property
    def zero(self):
        return self._zero

    @property
    def one(self):
        return self._one

    def from_int(self, n: int):
        if self.kind == Z_LOCAL:
            return gmpy2.mpq(n)
        return RatFunc(nmod_poly([n % self.p], self.p), self._one.den, True)

    def pi_pow(self, n: int):
        """Raw ϖⁿ."""
        if self.kind == Z_LOCAL:
            return gmpy2.mpq(self.p ** n)
        return RatFunc(nmod_poly([0] * n + [1], self.p), self._one.den, True)

    def val(self, r) -> float | int:
        if not r:
            return INFINITY
        if self.kind == Z_LOCAL:
            return gmpy2.remove(r.numerator, self.p)[1]
        return _poly_val(r.num)

    def split(self, r):
        """Return (unit, v) with r = unit·ϖᵛ."""
        if not r:
            raise ZeroElement("normalize of zero")
        if self.kind == Z_LOCAL:
            num, v = gmpy2.remove(r.numerator, self.p)
            return gmpy2.mpq(num, r.denominator), int(v)
        v = _poly_val(r.num)
        return RatFunc(r.num.right_shift(v), r.den, True), v

    def inv(self, r):
        """Inverse of a raw unit."""
        if not r or self.val(r) != 0:
            raise NotAUnit(f"{self.show(r)} is not a unit")
        if self.kind == Z_LOCAL:
            return 1 / r
        return RatFunc(r.den, r.num)

    def div(self, a, b):
        """Exact quotient a/b in O; requires val(a) >= val(b)."""
        if not a:
            return self._zero
        if self.kind == Z_LOCAL:
            q = a / b
            if q.denominator % self.p == 0:
                raise NotAUnit("quotient leaves O")
            return q
        ub, vb = self.split(b)
        va = _poly_val(a.num)
        if va < vb:
            raise NotAUnit("quotient leaves O")
        return RatFunc(a.num.right_shift(vb) * ub.den, a.den * ub.num)

    def residue(self, r) -> int:
        if self.kind == Z_LOCAL:
            return int(r.numerator * pow(int(r.denominator), -1, self.p) % self.p)
        return int(r.num[0])

    def lift(self, c: int):
        """Lift a residue class to O."""
        return self.from_int(c % self.p)

    def mod_pow(self, r, n: int):
        """Canonical representative of r modulo ϖⁿ (used for HNF reduction)."""
        if self.kind == Z_LOCAL:
            q = self.p ** n
            return gmpy2.mpq(int(r.numerator * pow(int(r.denominator), -1, q) % q))
        if n <= 0:
            return self._zero
        inv = r.den.inverse_series_trunc(n)
        return RatFunc((r.num * inv).truncate(n), self._one.den, True)

    def coerce(self, x):
        """Convert int, Fraction, str, DvrElement or raw to a raw value of O."""
        if isinstance(x, DvrElement):
            if x.spec != self:
                raise SpecMismatch(f"{x.spec} vs {self}")
            return x.raw
        if self.kind == Z_LOCAL:
            if isinstance(x, str):
                return self.parse(x)
            if isinstance(x, bool):
                raise TypeError("bool is not a ring element")
            if isinstance(x, (int, Fraction)) or type(x) is type(self._zero):
                q = gmpy2.mpq(x)
                if q.denominator % self.p == 0:
                    raise NotAUnit(f"{x} is not in O (denominator divisible by {self.p})")
                return q
            if isinstance(x, type(gmpy2.mpz(0))):
                return gmpy2.mpq(x)
            raise TypeError(f"cannot coerce {x!r} into {self}")
        if isinstance(x, RatFunc):
            return x
        if isinstance(x, bool):
            raise TypeError("bool is not a ring element")
        if isinstance(x, int):
            return self.from_int(x)
        if isinstance(x, str):
            return self.parse(x)
        if isinstance(x, (list, tuple)):
            return self.decode(x)
        raise TypeError(f"cannot coerce {x!r} into {self}")

    # text encoding -----------------------------------------------------------

    def encode(self, r):
        """JSON-ready encoding: "num/den" strings, or [num, den] coefficient arrays."""
        if self.kind == Z_LOCAL:
            if r.denominator == 1:
                return str(r.numerator)
            return f"{r.numerator}/{r.denominator}"
        return [[int(c) for c in r.num.coeffs()], [int(c) for c in r.den.coeffs()]]

    def show(self, r) -> str:
        if self.kind == Z_LOCAL:
            return self.encode(r)
        num = _poly_str(r.num)
        if r.den.is_one():
            return num
        return f"({num})/({_poly_str(r.den)})"

    _ZRE = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+)\s*)?$")

    def parse(self, s: str):
        if self.kind != Z_LOCAL:
            raise ParseError(f"string elements are only accepted for ZLocal, got {s!r}")
        m = self._ZRE.match(s)
        if not m:
            raise ParseError(f"malformed element {s!r}")
        num, den = int(m.group(1)), int(m.group(2) or 1)
        if den == 0:
            raise ParseError(f"zero denominator in {s!r}")
        if den % self.p == 0:
            raise ParseError(f"{s!r} is not in O: denominator divisible by {self.p}")
        return gmpy2.mpq(num, den)

    def decode(self, obj):
        if self.kind == Z_LOCAL:
            if isinstance(obj, bool):
                raise ParseError("bool is not an element")
            if isinstance(obj, int):
                return gmpy2.mpq(obj)
            if isinstance(obj, str):
                return self.parse(obj)
            raise ParseError(f"malformed ZLocal element {obj!r}")
        if isinstance(obj, bool):
            raise ParseError("bool is not an element")
        if isinstance(obj, int):
            return self.from_int(obj)
        if not isinstance(obj, (list, tuple)):
            raise ParseError(f"malformed RatFuncLocal element {obj!r}")
        if obj and all(isinstance(c, (list, tuple)) for c in obj):
            if len(obj) != 2:
                raise ParseError(f"expected [num, den] arrays, got {obj!r}")
            num, den = obj
        else:
            num, den = obj, [1]
        for c in list(num) + list(den):
            if isinstance(c, bool) or not isinstance(c, int):
                raise ParseError(f"coefficient {c!r} is not an integer")
        if not den or den[0] % self.p == 0:
            raise ParseError(f"denominator {den!r} must have nonzero constant term")
        return RatFunc(nmod_poly([c % self.p for c in num], self.p),
                       nmod_poly([c % self.p for c in den], self.p))

    # public element constructors ---------------------------------------------

    def element(self, x) -> DvrElement:
        return DvrElement(self, self.coerce(x))

    def uniformizer(self) -> DvrElement:
        return DvrElement(self, self.pi_pow(1))

    def t(self) -> DvrElement:
        if self.kind != RATFUNC_LOCAL:
            raise SpecMismatch("t only exists in RatFuncLocal")
        return self.uniformizer()


def _poly_str(poly: nmod_poly) -> str:
    return str(poly).replace("x", "t")


def ZLocal(p: int) -> DvrSpec:
    return DvrSpec(Z_LOCAL, p)


def RatFuncLocal(p: int) -> DvrSpec:
    return DvrSpec(RATFUNC_LOCAL, p)


class DvrElement:
    """Immutable element of O in canonical reduced form."""

    __slots__ = ("spec", "raw")

    def __init__(self, spec: DvrSpec, raw):
        object.__setattr__(self, "spec", spec)
        object.__setattr__(self, "raw", raw)

    def __setattr__(self, name, value):
        raise AttributeError("DvrElement is immutable")

    def _other(self, o):
        if isinstance(o, DvrElement):
            if o.spec != self.spec:
                raise SpecMismatch(f"{self.spec} vs {o.spec}")
            return o.raw
        return self.spec.coerce(o)

    def __add__(self, o):
        return DvrElement(self.spec, self.raw + self._other(o))

    __radd__ = __add__

    def __sub__(self, o):
        return DvrElement(self.spec, self.raw - self._other(o))

    def __rsub__(self, o):
        return DvrElement(self.spec, self._other(o) - self.raw)

    def __mul__(self, o):
        return DvrElement(self.spec, self.raw * self._other(o))

    __rmul__ = __mul__

    def __neg__(self):
        return DvrElement(self.spec, -self.raw)

    def __eq__(self, o):
        if isinstance(o, DvrElement):
            return self.spec == o.spec and self.raw == o.raw
        try:
            return self.raw == self.spec.coerce(o)
        except Exception:
            return False

    def __hash__(self):
        return hash((self.spec, self.raw))

    def __bool__(self):
        return bool(self.raw)

    def __repr__(self):
        return f"DvrElement({self.spec}, {self.spec.show(self.raw)})"

    def __str__(self):
        return self.spec.show(self.raw)

    def valuation(self):
        return self.spec.val(self.raw)

    def invert_unit(self) -> DvrElement:
        return DvrElement(self.spec, self.spec.inv(self.raw))

    def normalize(self) -> tuple[DvrElement, int]:
        u, v = self.spec.split(self.raw)
        return DvrElement(self.spec, u), v

    def residue(self) -> int:
        return self.spec.residue(self.raw)

    def to_text(self):
        return self.spec.encode(self.raw)


def add(a: DvrElement, b: DvrElement) -> DvrElement:
    _same(a, b)
    return a + b


def mul(a: DvrElement, b: DvrElement) -> DvrElement:
    _same(a, b)
    return a * b


def neg(a: DvrElement) -> DvrElement:
    return -a


def valuation(a: DvrElement):
    return a.valuation()


def invert_unit(a: DvrElement) -> DvrElement:
    return a.invert_unit()


def normalize(a: DvrElement) -> tuple[DvrElement, int]:
    return a.normalize()


def residue(a: DvrElement) -> int:
    return a.residue()


def _same(a: DvrElement, b: DvrElement) -> None:
    if a.spec != b.spec:
        raise SpecMismatch(f"{a.spec} vs {b.spec}")
