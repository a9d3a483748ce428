import copy
import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import CORPUS, spec
from halg import random_instances as ri
from halg.specfile import (
    ParseError, ValidationError, dump_cocycles, dump_spec, load_cocycles, parse_spec, spec_from_algebra,
    spec_to_dict,
)

EXAM32 = json.loads((CORPUS / "exam32.halg").read_text())


def test_exam32_loads():
    s = spec("exam32")
    assert s.super_basis.names == ("x1", "x2", "y")
    assert list(s.products) == ["circ"] and list(s.maps) == ["alpha"]


@pytest.mark.parametrize("path", sorted(CORPUS.glob("*.halg")), ids=lambda p: p.stem)
def test_corpus_round_trip(path):
    s = parse_spec(path.read_text())
    again = parse_spec(dump_spec(s))
    assert spec_to_dict(again) == spec_to_dict(s)


def test_empty_basis():
    doc = copy.deepcopy(EXAM32)
    doc["basis"], doc["products"], doc["maps"] = [], {}, {}
    with pytest.raises(ValidationError):
        parse_spec(doc)


def test_parity_violation_names_the_entry():
    doc = copy.deepcopy(EXAM32)
    doc["products"]["circ"][0] = ["x1", "x1", [["y", "1"]]]
    with pytest.raises(ValidationError) as exc:
        parse_spec(doc)
    assert exc.value.path.startswith("products.circ[0]")
    assert "x1" in str(exc.value)


@pytest.mark.parametrize(
    "mutate, error",
    [
        (lambda d: d["products"]["circ"].append(["x1", "q", [["x2", "1"]]]), ValidationError),
        (lambda d: d["products"]["circ"].append(["x1", "x2", [["x2", "1+"]]]), ParseError),
        (lambda d: d["products"]["circ"].append(["x1"]), ParseError),
        (lambda d: d.update(schema=7), ValidationError),
        (lambda d: d.update(colour="red"), ValidationError),
        (lambda d: d["basis"].append(["x1", 0]), ValidationError),
        (lambda d: d["basis"].append(["z", 2]), ValidationError),
    ],
)
def test_bad_documents(mutate, error):
    doc = copy.deepcopy(EXAM32)
    mutate(doc)
    with pytest.raises(error):
        parse_spec(doc)


def test_syntax_error_is_parse_error():
    with pytest.raises(ParseError):
        parse_spec("{ not json")


def test_unknown_parameter_in_literal():
    doc = copy.deepcopy(EXAM32)
    doc["maps"]["alpha"][0] = ["x1", [["x2", "t"]]]
    with pytest.raises(ParseError):
        parse_spec(doc)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6))
def test_random_algebras_round_trip(seed):
    import random
    rng = random.Random(seed)
    B = ri.random_basis(rng)
    from halg.superalgebra import SuperAlgebra
    A = SuperAlgebra(B, {"circ": ri.random_table(rng, B), "bracket": ri.random_skew_table(rng, B)},
                     {"alpha": ri.random_map(rng, B)})
    s = spec_from_algebra(A, "r")
    back = parse_spec(dump_spec(s)).to_algebra()
    assert back.product("circ") == A.product("circ")
    assert back.product("bracket") == A.product("bracket")
    assert back.map("alpha") == A.map("alpha")


def test_cocycle_file_round_trip(tmp_path):
    s = spec("virasoro")
    (f,) = load_cocycles(CORPUS / "virasoro-lambda3.cocycle", s)
    assert str(f.poly(0, 0)) == "Lm^3"
    out = tmp_path / "x.cocycle"
    out.write_text(dump_cocycles([f], s.super_basis))
    (g,) = load_cocycles(out, s)
    assert g.polys() == f.polys()
