"""Command-line front end.

Exit codes: 0 success, 1 internal invariant violation, 2 validation failure,
3 parse error, 4 precondition failure.
"""
from __future__ import annotations

import argparse
import hashlib
import sys

from . import __version__, corpus, fileformat, selftest
from .amodule import wiles_defect
from .criteria import (
    ci_test,
    diamond_test,
    direct_freeness_oracle,
    freeness_prediamond,
    gorenstein_test,
    multiplicity,
)
from .dvr import DvrSpec
from .errors import (
    CongruenceError,
    InternalInvariantViolation,
    ParseError,
    PreconditionFailed,
    ValidationError,
)
from .venkatesh import venkatesh_check

EXIT_OK, EXIT_INTERNAL, EXIT_VALIDATION, EXIT_PARSE, EXIT_PRECONDITION = 0, 1, 2, 3, 4


def _report(command: str, digest: str | None, results: dict, diagnostics=None) -> dict:
    return {
        "tool": "congruence",
        "version": __version__,
        "command": command,
        "inputDigest": digest,
        "results": results,
        "diagnostics": diagnostics or [],
    }


def _digest(data: bytes) -> str:
    return "sha256:" + hashlib.sha256(data).hexdigest()


def _defect_results(rep) -> dict:
    return {
        "d": rep.d,
        "ellPhi": rep.ell_phi,
        "ellPsi": rep.ell_psi_A,
        "ellPsiM": rep.ell_psi_M,
        "ellPsiBar": rep.ell_psi_bar,
        "gap": rep.ell_gap,
        "delta": rep.delta,
        "depthOk": rep.depth_ok,
        "decompositionChecked": rep.decomposition_checked,
    }


def cmd_validate(doc) -> dict:
    A = doc.algebra
    return {"valid": True, "basisSize": A.s, "modules": sorted(doc.modules),
            "presentations": sorted(doc.presentations)}


def cmd_invariants(doc) -> tuple[dict, list]:
    A = doc.algebra
    diags = []
    phi, psi = A.conormal.length(), A.congruence_valuation
    try:
        e = multiplicity(A).e
    except CongruenceError as ex:
        e = None
        diags.append({"error": type(ex).__name__, "message": str(ex)})
    res = {
        "ellPhi": phi,
        "ellPsi": psi,
        "delta": phi - psi,
        "IGenerators": [fileformat.encode_vector(A.spec, v) for v in A.dualizing_ideal.vectors],
        "depthAtLeastOne": A.depth_at_least_one,
        "rank": A.rank,
        "e": e,
        "gorenstein": gorenstein_test(A).conclusion.value == "Gorenstein",
        "ci": ci_test(A).conclusion.value == "CompleteIntersection",
    }
    return res, diags


def cmd_defect(doc, module: str) -> dict:
    return _defect_results(wiles_defect(doc.module(module)))


def cmd_freeness(doc, module: str, criterion: str) -> dict:
    A, M = doc.algebra, doc.module(module)
    if criterion == "prediamond":
        v = freeness_prediamond(A, M)
    elif criterion == "diamond":
        v = diamond_test(A, M)
    else:
        v = direct_freeness_oracle(A, M)
    return {"criterion": criterion, **v.as_dict()}


def cmd_venkatesh(doc, name: str | None) -> dict:
    rep = venkatesh_check(doc.presentation(name))
    return {
        "ellI": rep.ell_I,
        "ellJ": rep.ell_J,
        "ellIOverJ": rep.ell_I_over_J,
        "aq1": rep.aq1,
        "aq2": rep.aq2,
        "deltaB": rep.delta_B,
        "minimal": rep.minimal,
        "ellPhiA": rep.ell_phi_A,
        "ellPhiC": rep.ell_phi_C,
    }


def _parse_dvr_arg(text: str) -> DvrSpec:
    kind, _, p = text.partition(":")
    try:
        return DvrSpec(kind, int(p))
    except ValueError as ex:
        raise ParseError(f"bad --dvr {text!r}: {ex}") from None


def cmd_corpus_emit(family: str, dvr: str) -> dict:
    spec = _parse_dvr_arg(dvr)
    try:
        fs = corpus.parse_family(family, spec)
    except ValueError as ex:
        raise ParseError(str(ex)) from None
    A = corpus.build(fs)
    modules = {name: {"builtin": name} for name in ("regular", "lambda", "I_A", "p_A")}
    pres = {}
    if fs.family == "GorNotCI":
        pres["ci_cover"] = corpus.gor_not_ci_presentation(spec)
    elif fs.family == "Depth0Example":
        pres["glue"] = corpus.depth0_presentation(spec, 1)
        pres["glue2"] = corpus.depth0_presentation(spec, 2)
    return fileformat.document(A, modules, pres)


def _human(report: dict) -> str:
    lines = [f"{report['command']}  ({report['inputDigest'] or 'no input'})"]

    def walk(prefix, obj):
        if isinstance(obj, dict):
            for k in sorted(obj):
                walk(f"{prefix}{k}." if isinstance(obj[k], dict) else f"{prefix}{k}", obj[k])
        else:
            lines.append(f"  {prefix:<28} {obj}")

    walk("", report["results"])
    for d in report["diagnostics"]:
        lines.append(f"  ! {d.get('error')}: {d.get('message')}")
    return "\n".join(lines) + "\n"


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="congruence", description="Invariants of finite augmented O-algebras and their modules")
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="command", required=True)

    def with_json(p):
        p.add_argument("--json", action="store_true", help="machine-readable report")
        return p

    with_json(sub.add_parser("validate", help="check the algebra axioms")).add_argument("file")
    with_json(sub.add_parser("invariants", help="ℓΦ, ℓΨ, δ, e, Gorenstein and CI")).add_argument("file")
    p = with_json(sub.add_parser("defect", help="Wiles defect of a module"))
    p.add_argument("file")
    p.add_argument("--module", required=True)
    p = with_json(sub.add_parser("freeness", help="freeness criteria"))
    p.add_argument("file")
    p.add_argument("--module", required=True)
    p.add_argument("--criterion", choices=["prediamond", "diamond", "oracle"], default="prediamond")
    p = with_json(sub.add_parser("venkatesh", help="AQ lengths and the defect of the CM quotient"))
    p.add_argument("file")
    p.add_argument("--presentation")
    p = with_json(sub.add_parser("selftest", help="run the property suite"))
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=40)
    p = sub.add_parser("corpus", help="built-in examples")
    csub = p.add_subparsers(dest="corpus_command", required=True)
    csub.add_parser("list")
    e = csub.add_parser("emit")
    e.add_argument("family")
    e.add_argument("--dvr", default="ZLocal:5")
    return ap


def _read(path: str) -> bytes:
    try:
        with open(path, "rb") as fh:
            return fh.read()
    except OSError as ex:
        raise ParseError(f"cannot read {path}: {ex.strerror}") from None


def _run(args, data: bytes | None) -> dict:
    diags: list = []
    cmd = args.command
    if cmd == "selftest":
        return _report(cmd, None, selftest.run(args.seed, args.count))
    digest = _digest(data)
    doc = fileformat.loads_bytes(data)
    if cmd == "validate":
        res = cmd_validate(doc)
    elif cmd == "invariants":
        res, diags = cmd_invariants(doc)
    elif cmd == "defect":
        res = cmd_defect(doc, args.module)
    elif cmd == "freeness":
        res = cmd_freeness(doc, args.module, args.criterion)
    else:
        res = cmd_venkatesh(doc, args.presentation)
    return _report(cmd, digest, res, diags)


def _error_code(ex: Exception) -> int:
    if isinstance(ex, InternalInvariantViolation):
        return EXIT_INTERNAL
    if isinstance(ex, ValidationError):
        return EXIT_VALIDATION
    if isinstance(ex, PreconditionFailed):
        return EXIT_PRECONDITION
    return EXIT_PARSE


def _diagnostic(ex: Exception) -> dict:
    d = {"error": getattr(ex, "axiom", type(ex).__name__), "message": str(ex)}
    if isinstance(ex, ValidationError) and ex.witness is not None:
        d["witness"] = [str(w) for w in ex.witness]
    if isinstance(ex, InternalInvariantViolation):
        d["lemma"] = ex.lemma
    return d


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    out = sys.stdout
    if args.command == "corpus":
        try:
            if args.corpus_command == "list":
                out.write("\n".join(corpus.FAMILIES) + "\n")
            else:
                out.write(fileformat.dumps(cmd_corpus_emit(args.family, args.dvr)))
            return EXIT_OK
        except CongruenceError as ex:
            sys.stderr.write(f"error: {ex}\n")
            return _error_code(ex)
    data, code = None, EXIT_OK
    try:
        if args.command != "selftest":
            data = _read(args.file)
        report = _run(args, data)
    except CongruenceError as ex:
        code = _error_code(ex)
        digest = _digest(data) if data is not None else None
        report = _report(args.command, digest, {}, [_diagnostic(ex)])
    if getattr(args, "json", False):
        out.write(fileformat.dumps(report))
    else:
        if code:
            d = report["diagnostics"][0]
            w = f" witness {d['witness']}" if "witness" in d else ""
            sys.stderr.write(f"{d['error']}: {d['message']}{w}\n")
        else:
            out.write(_human(report))
    return code


if __name__ == "__main__":
    sys.exit(main())
