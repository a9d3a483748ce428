import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import spec
from halg.constructions import (
    PreconditionFailed, derivation_construction, poisson_construction, star_constructions,
    supercommutator_gd, yau_twist,
)
from halg.exactalg import Scalar, parse_scalar
from halg.properties import construction_suite
from halg.superalgebra import EvenMap, ProductTable, SuperAlgebra, SuperBasis, check_gd


def table_of(A, name):
    """{(left, right): {target: str(coef)}} by basis names."""
    B = A.basis
    return {
        (B.names[i], B.names[j]): {B.names[k]: str(c) for k, c in v.items()}
        for (i, j), v in A.product(name).entries.items()
    }


def test_exam32_supercommutator_exact():
    G = supercommutator_gd(spec("exam32").to_algebra())
    br = table_of(G.algebra, "bracket")
    assert br == {
        ("x1", "y"): {"y": "1"}, ("y", "x1"): {"y": "-1"},
        ("x2", "y"): {"y": "1"}, ("y", "x2"): {"y": "-1"},
    }
    assert G.certified


def test_exam33_twist_table_and_brackets():
    A = spec("exam33").to_algebra()
    T = yau_twist(A, ["circ"], kind="novikov")
    assert T.certificate.passed
    ci = table_of(T.algebra, "circ")
    assert ci == {
        ("x1", "x2"): {"x1": "1/2*lam^2"},
        ("x2", "x1"): {"x1": "-1/2*lam^2"},
        ("x2", "x2"): {"x2": "1/2"},
        ("y", "x2"): {"y": "1/2*lam"},
        ("y", "y"): {"x1": "1/2*lam^2"},
    }
    G = supercommutator_gd(T.algebra)
    br = table_of(G.algebra, "bracket")
    assert br[("x1", "x2")] == {"x1": "lam^2"}
    assert br[("x2", "y")] == {"y": "-1/2*lam"}
    # the odd square is symmetric under the supercommutator
    assert br[("y", "y")] == {"x1": "lam^2"}
    assert G.certified


def test_exam33_printed_bracket_fails_compat():
    rep = check_gd(spec("exam33-printed").to_algebra())
    assert ("gd-compatibility", ("x2", "y", "y")) in {(w.axiom, w.args) for w in rep.witnesses}


def test_twist_precondition_alpha_must_be_endomorphism():
    B = SuperBasis.of([("x", 0), ("z", 0)])
    A = SuperAlgebra(B, {"circ": ProductTable(B, {(0, 0): {1: 1}})}, {"alpha": EvenMap(B, {0: {0: 1}})})
    with pytest.raises(PreconditionFailed):
        yau_twist(A, ["circ"])


def test_supercommutator_precondition():
    A = spec("exam32").to_algebra()
    with pytest.raises(PreconditionFailed):
        supercommutator_gd(A.with_map("alpha", EvenMap.identity(A.basis)))


def test_exam35_derivation_construction():
    A = spec("exam35-doubled").to_algebra()
    s = Scalar.param("s", A.params)
    G = derivation_construction(A, shift=s)
    assert G.certified
    ci = table_of(G.algebra, "circ")
    assert ci[("u0", "u0")] == {"u0": "s"}
    assert ci[("u0", "v0")] == {"v0": str(parse_scalar("a*s+a", A.params))}
    assert table_of(G.algebra, "bracket")[("u0", "v0")] == {"v0": "a"}


def test_poisson_literal_and_repaired():
    with pytest.raises(PreconditionFailed) as exc:
        poisson_construction(spec("poisson-example").to_algebra(), shift=0)
    assert not exc.value.report.passed
    R = spec("poisson-example-repaired").to_algebra()
    G = poisson_construction(R)
    assert G.certified
    ci = table_of(G.algebra, "circ")
    assert ci[("e2", "e2")] == {"e1": "a*b"}
    assert ci[("e2", "e3")] == {"e3": "mu*c"}
    assert ci[("e2", "e1")] == {"e1": "a^2*b-a*b"}


def test_star_on_exam32_with_alpha_as_f():
    A = spec("exam32-gd").to_algebra()
    A = A.with_map("f", A.map("alpha"))
    res = star_constructions(A, f="f")
    assert res.star.consistent and res.star_prime.consistent
    assert res.star.direct.passed
    assert not res.star_prime.direct.passed


@pytest.mark.parametrize("kind", ["supercommutator", "yau-twist", "derivation", "poisson", "star"])
def test_construction_then_verify_small(kind):
    r = construction_suite(kind, count=12, seed=11)
    assert r.passed, r.failures[:3]
    assert r.trials == 12


@settings(max_examples=10, deadline=None)
@given(st.integers(0, 10**6))
def test_construction_then_verify_hypothesis_seeds(seed):
    assert construction_suite("supercommutator", count=2, seed=seed).passed
