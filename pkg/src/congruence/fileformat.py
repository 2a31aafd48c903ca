"""JSON documents holding an algebra, named modules and named presentations.

Top-level keys::

    dvr            {"kind": "ZLocal" | "RatFuncLocal", "p": prime}
    basis          ["1", "x", ...]
    module_relations  [[elt, ...], ...]      relation vectors over the basis
    mult           {"x*x": [elt, ...], ...}  one entry per unordered pair
    one            [elt, ...]
    lambda         [elt, ...]
    modules        {name: module}            optional
    presentations  {name: presentation}      optional

A module is either {"builtin": "regular" | "lambda" | "residue" | "I_A" |
"p_A" | "free:n"} or {"generators": n, "o_relations": [[elt]], "action":
{basis name: n×n rows}}.  A presentation is {"source": algebra block (the
algebra keys above without dvr), "alpha": rows, "linear_part": rows}; its
target is the document's algebra.

Elements: ZLocal takes integers or "num/den" strings; RatFuncLocal takes
integers, coefficient arrays (constant term first) or [num, den] pairs.
Unknown keys are rejected.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field

from .algebra import FiniteOAlgebra, validate
from .amodule import (
    AModule,
    free_module,
    ideal_as_module,
    lambda_module,
    residue_module,
)
from .dvr import RATFUNC_LOCAL, Z_LOCAL, DvrSpec
from .errors import ParseError
from .linalg import Matrix

ALGEBRA_KEYS = {"basis", "module_relations", "mult", "one", "lambda"}
TOP_KEYS = ALGEBRA_KEYS | {"dvr", "modules", "presentations"}
MODULE_KEYS = {"generators", "o_relations", "action"}
PRESENTATION_KEYS = {"source", "alpha", "linear_part"}


@dataclass
class Document:
    spec: DvrSpec
    algebra: FiniteOAlgebra
    modules: dict = field(default_factory=dict)        # name -> raw block
    presentations: dict = field(default_factory=dict)  # name -> raw block

    def module(self, name: str) -> AModule:
        if name not in self.modules:
            raise ParseError(f"no module named {name!r}")
        return parse_module(self.spec, self.algebra, self.modules[name])

    def presentation(self, name: str | None = None):
        if not self.presentations:
            raise ParseError("document has no presentations")
        if name is None:
            name = sorted(self.presentations)[0]
        if name not in self.presentations:
            raise ParseError(f"no presentation named {name!r}")
        return parse_presentation(self.spec, self.algebra, self.presentations[name])


def _keys(obj, allowed, required, where):
    if not isinstance(obj, dict):
        raise ParseError(f"{where} must be an object")
    extra = set(obj) - allowed
    if extra:
        raise ParseError(f"unknown keys in {where}: {sorted(extra)}")
    missing = set(required) - set(obj)
    if missing:
        raise ParseError(f"missing keys in {where}: {sorted(missing)}")


def parse_dvr(obj) -> DvrSpec:
    _keys(obj, {"kind", "p"}, {"kind", "p"}, "dvr")
    kind, p = obj["kind"], obj["p"]
    if kind not in (Z_LOCAL, RATFUNC_LOCAL) or isinstance(p, bool) or not isinstance(p, int):
        raise ParseError(f"bad dvr {obj!r}")
    try:
        return DvrSpec(kind, p)
    except ValueError as ex:
        raise ParseError(str(ex)) from None


def _elt(spec: DvrSpec, x):
    try:
        return spec.decode(x)
    except ParseError:
        raise
    except Exception as ex:
        raise ParseError(f"malformed element {x!r}: {ex}") from None


def _vector(spec, v, n, where):
    if not isinstance(v, list) or len(v) != n:
        raise ParseError(f"{where} must be a list of {n} elements")
    return [_elt(spec, x) for x in v]


def _rows(spec, rows, nrows, ncols, where) -> Matrix:
    if not isinstance(rows, list) or len(rows) != nrows:
        raise ParseError(f"{where} must have {nrows} rows")
    return Matrix(spec, nrows, ncols, [_vector(spec, r, ncols, f"row of {where}") for r in rows])


def parse_algebra(spec: DvrSpec, obj, where="algebra") -> FiniteOAlgebra:
    basis = obj.get("basis")
    if not isinstance(basis, list) or not basis or not all(isinstance(b, str) for b in basis):
        raise ParseError(f"{where}: basis must be a nonempty list of names")
    s = len(basis)
    rels = obj.get("module_relations", [])
    if not isinstance(rels, list):
        raise ParseError(f"{where}: module_relations must be a list")
    rels = [_vector(spec, r, s, "module relation") for r in rels]
    mult = obj["mult"]
    if not isinstance(mult, dict):
        raise ParseError(f"{where}: mult must be an object")
    mult = {k: _vector(spec, v, s, f"mult[{k}]") for k, v in mult.items()}
    one = _vector(spec, obj["one"], s, "one")
    lam = _vector(spec, obj["lambda"], s, "lambda")
    return validate(spec, basis, rels, mult, one, lam)


def parse_module(spec: DvrSpec, A: FiniteOAlgebra, obj) -> AModule:
    if isinstance(obj, dict) and "builtin" in obj:
        _keys(obj, {"builtin"}, {"builtin"}, "module")
        b = obj["builtin"]
        if b == "regular":
            return free_module(A, 1)
        if b == "lambda":
            return lambda_module(A)
        if b == "residue":
            return residue_module(A)
        if b == "I_A":
            return ideal_as_module(A, A.dualizing_ideal)
        if b == "p_A":
            return ideal_as_module(A, A.augmentation_ideal)
        if isinstance(b, str) and b.startswith("free:") and b[5:].isdigit():
            return free_module(A, int(b[5:]))
        raise ParseError(f"unknown builtin module {b!r}")
    _keys(obj, MODULE_KEYS, {"generators", "action"}, "module")
    n = obj["generators"]
    if isinstance(n, bool) or not isinstance(n, int) or n < 0:
        raise ParseError("generators must be a nonnegative integer")
    rels = obj.get("o_relations", [])
    if not isinstance(rels, list):
        raise ParseError("o_relations must be a list")
    rels = [_vector(spec, r, n, "o_relation") for r in rels]
    R = Matrix.from_columns(spec, rels, n) if rels else Matrix.zeros(spec, n, 0)
    action = obj["action"]
    if not isinstance(action, dict) or set(action) != set(A.names):
        raise ParseError(f"action must give one matrix per basis name {A.names}")
    acts = [_rows(spec, action[name], n, n, f"action[{name}]") for name in A.names]
    return AModule(A, n, R, acts)


def parse_presentation(spec: DvrSpec, A: FiniteOAlgebra, obj):
    from .venkatesh import CIPresentation

    _keys(obj, PRESENTATION_KEYS, {"source", "alpha"}, "presentation")
    src = obj["source"]
    _keys(src, ALGEBRA_KEYS, {"basis", "mult", "one", "lambda"}, "presentation source")
    C = parse_algebra(spec, src, "presentation source")
    alpha = _rows(spec, obj["alpha"], A.s, C.s, "alpha")
    lin = None
    if "linear_part" in obj:
        lp = obj["linear_part"]
        if not isinstance(lp, list) or not lp or not isinstance(lp[0], list):
            raise ParseError("linear_part must be a nonempty matrix")
        lin = _rows(spec, lp, len(lp), len(lp[0]), "linear_part")
    return CIPresentation(C, A, alpha, lin)


def loads(text: str) -> Document:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as ex:
        raise ParseError(f"invalid JSON: {ex}") from None
    _keys(obj, TOP_KEYS, {"dvr", "basis", "mult", "one", "lambda"}, "document")
    spec = parse_dvr(obj["dvr"])
    A = parse_algebra(spec, obj)
    modules = obj.get("modules", {})
    presentations = obj.get("presentations", {})
    if not isinstance(modules, dict) or not isinstance(presentations, dict):
        raise ParseError("modules and presentations must be objects")
    return Document(spec, A, modules, presentations)


def loads_bytes(data: bytes) -> Document:
    try:
        text = data.decode("utf-8")
    except UnicodeDecodeError:
        raise ParseError("file is not UTF-8") from None
    return loads(text)


def load(path: str) -> tuple[Document, bytes]:
    with open(path, "rb") as fh:
        data = fh.read()
    return loads_bytes(data), data


# ---------------------------------------------------------------------------
# emission


def encode_vector(spec: DvrSpec, v) -> list:
    return [spec.encode(x) for x in v]


def encode_matrix_rows(M: Matrix) -> list:
    return [encode_vector(M.spec, r) for r in M.data]


def algebra_block(A: FiniteOAlgebra) -> dict:
    spec = A.spec
    mult = {}
    for i in range(A.s):
        for j in range(i, A.s):
            mult[f"{A.names[i]}*{A.names[j]}"] = encode_vector(spec, A.mult[i][j])
    return {
        "basis": list(A.names),
        "module_relations": [encode_vector(spec, c) for c in A.module_relations.columns()],
        "mult": mult,
        "one": encode_vector(spec, A.one),
        "lambda": encode_vector(spec, A.lam),
    }


def module_block(M: AModule) -> dict:
    return {
        "generators": M.n,
        "o_relations": [encode_vector(M.spec, c) for c in M.o_relations.columns()],
        "action": {name: encode_matrix_rows(act) for name, act in zip(M.algebra.names, M.action)},
    }


def presentation_block(pres) -> dict:
    out = {"source": algebra_block(pres.C), "alpha": encode_matrix_rows(pres.alpha)}
    if pres.linear_part is not None:
        out["linear_part"] = encode_matrix_rows(pres.linear_part)
    return out


def document(A: FiniteOAlgebra, modules=None, presentations=None) -> dict:
    doc = {"dvr": {"kind": A.spec.kind, "p": A.spec.p}}
    doc.update(algebra_block(A))
    if modules:
        doc["modules"] = {k: (v if isinstance(v, dict) else module_block(v)) for k, v in modules.items()}
    if presentations:
        doc["presentations"] = {k: presentation_block(v) for k, v in presentations.items()}
    return doc


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"
