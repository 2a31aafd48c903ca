import json

import pytest

from congruence import corpus
from congruence.amodule import wiles_defect
from congruence.dvr import RatFuncLocal, ZLocal
from congruence.errors import ConormalInfinite, NotAssociative, ParseError
from congruence.fileformat import document, dumps, loads
from congruence.venkatesh import venkatesh_check

Z5 = ZLocal(5)


def glue_doc():
    return document(corpus.glue(Z5, 1), {"regular": {"builtin": "regular"}})


def test_round_trip_algebra(spec):
    for name, A in corpus.all_algebras(spec).items():
        text = dumps(document(A))
        B = loads(text).algebra
        assert dumps(document(B)) == text, name


def test_round_trip_modules(spec):
    A = corpus.gor_not_ci(spec)
    M = corpus.random_module(A, 11, 2)
    doc = loads(dumps(document(A, {"m": M, "lam": {"builtin": "lambda"}})))
    assert wiles_defect(doc.module("m")) == wiles_defect(M)
    assert wiles_defect(doc.module("lam")).delta == A.conormal.length() == 3


def test_round_trip_presentation():
    P = corpus.gor_not_ci_presentation(Z5)
    doc = loads(dumps(document(P.A, None, {"cover": P})))
    assert venkatesh_check(doc.presentation("cover")) == venkatesh_check(P)


def test_ratfunc_elements():
    F = RatFuncLocal(3)
    d = document(corpus.glue(F, 2))
    assert d["mult"]["x*x"][1] == [[0, 0, 1], [1]]
    assert loads(dumps(d)).algebra.conormal.length() == 2


def test_unknown_key_rejected():
    d = glue_doc()
    d["extra"] = 1
    with pytest.raises(ParseError):
        loads(json.dumps(d))


def test_malformed_element_rejected():
    d = glue_doc()
    d["one"] = ["1.5", "0"]
    with pytest.raises(ParseError):
        loads(json.dumps(d))


def test_invalid_json():
    with pytest.raises(ParseError):
        loads("{")


def test_axiom_failure_surfaces():
    d = glue_doc()
    d["mult"]["x*x"] = ["0", "0"]
    with pytest.raises(ConormalInfinite):
        loads(json.dumps(d))


def test_non_associative_document():
    d = {"dvr": {"kind": "ZLocal", "p": 5}, "basis": ["1", "x", "y"],
         "mult": {"1*1": [1, 0, 0], "1*x": [0, 1, 0], "1*y": [0, 0, 1],
                  "x*x": [0, 0, 1], "x*y": [0, 0, 0], "y*y": [0, 0, 1]},
         "one": [1, 0, 0], "lambda": [1, 0, 0]}
    with pytest.raises(NotAssociative):
        loads(json.dumps(d))


def test_missing_module_name():
    with pytest.raises(ParseError):
        loads(dumps(glue_doc())).module("nope")
