import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracle
from conftest import spec
from halg.conformal import (
    ConformalAlgebra, ConformalError, NotQuadratic, check_conformal_axioms, current_conformal, gd_from_quadratic,
    jacobi_residual, quadratic_from_gd, sesquilinearity_residuals, skew_residual, solve_alpha,
)
from halg.constructions import GDStructure, PreconditionFailed
from halg.exactalg import FormalPoly, parse_formal
from halg.properties import conformal_iff_suite, random_gd, random_quadratic_candidate
from halg.superalgebra import SuperBasis, check_gd


def entries(R):
    B = R.generators
    return {(B.names[i], B.names[j]): {B.names[k]: str(p) for k, p in v.items()} for (i, j), v in R.bracket.items()}


def gd(name):
    return GDStructure(spec(name).to_algebra())


def test_exam32_quadratic_table():
    R = quadratic_from_gd(gd("exam32-gd"))
    t = entries(R)
    assert t[("x1", "x1")] == {"x2": "D+2*Lm"}
    assert t[("x1", "y")] == {"y": "Lm-1"}
    assert t[("y", "x2")] == {"y": "D+Lm+1"}
    assert ("y", "y") not in t
    assert check_conformal_axioms(R).passed


def test_exam32_matches_corpus_and_round_trips():
    G = gd("exam32-gd")
    R = quadratic_from_gd(G)
    assert entries(R) == entries(spec("quadratic-from-exam32").to_conformal())
    back = gd_from_quadratic(R)
    for name in ("bracket", "circ"):
        assert back.algebra.product(name) == G.algebra.product(name)
    assert back.algebra.map("alpha") == G.algebra.map("alpha")


def _sympy_elem(x, params=()):
    return {k: oracle.to_sympy(p, params) for k, p in x.items()}


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10**6))
def test_jacobi_and_skew_match_sympy_oracle(seed):
    rng = random.Random(seed)
    G = random_gd(rng) if rng.random() < 0.4 else random_quadratic_candidate(rng)
    R = quadratic_from_gd(G)
    O = oracle.lambda_oracle(R)
    n = R.rank
    for a in range(n):
        for b in range(n):
            assert _sympy_elem(skew_residual(R, a, b)) == O.skew(a, b)
            for c in range(n):
                assert _sympy_elem(jacobi_residual(R, a, b, c)) == O.jacobi(a, b, c)


def test_oracle_on_virasoro_with_differential_alpha():
    # nonconstant α exercises the ∂-linear extension
    R = spec("virasoro").to_conformal()
    R = R.with_alpha({0: {0: parse_formal("1+D")}})
    O = oracle.lambda_oracle(R)
    assert _sympy_elem(jacobi_residual(R, 0, 0, 0)) == O.jacobi(0, 0, 0)


def test_conformal_verdict_equals_gd_verdict_small():
    r = conformal_iff_suite(count=30, seed=3)
    assert r.passed, r.failures[:2]


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10**6))
def test_conformal_iff_gd_hypothesis(seed):
    G = random_quadratic_candidate(random.Random(seed))
    assert check_gd(G.algebra).passed == check_conformal_axioms(quadratic_from_gd(G)).passed


def test_sesquilinearity_holds():
    R = quadratic_from_gd(gd("exam32-gd"))
    x = {0: parse_formal("D^2+1"), 2: parse_formal("D")}
    y = {1: parse_formal("2*D")}
    first, second = sesquilinearity_residuals(R, x, y)
    assert not first and not second


def test_virasoro_skew_and_jacobi():
    R = spec("virasoro").to_conformal()
    assert check_conformal_axioms(R).passed
    bad = ConformalAlgebra(R.generators, {(0, 0): {0: parse_formal("D+3*Lm")}}, R.alpha)
    rep = check_conformal_axioms(bad)
    assert "skew-symmetry" in rep.axioms_failed()


def test_gd_from_quadratic_rejects_non_affine_and_inconsistent():
    B = SuperBasis.of([("L", 0)])
    R = ConformalAlgebra(B, {(0, 0): {0: parse_formal("Lm^3")}}, {0: {0: FormalPoly.const(1)}})
    with pytest.raises(NotQuadratic):
        gd_from_quadratic(R)
    # D+3λ reads L∘L as 1 from the D part and as 2 from the λ part
    R2 = ConformalAlgebra(B, {(0, 0): {0: parse_formal("D+3*Lm")}}, {0: {0: FormalPoly.const(1)}})
    with pytest.raises(NotQuadratic) as exc:
        gd_from_quadratic(R2)
    assert exc.value.entry == ("L", "L")


def test_alpha_validation():
    B = SuperBasis.of([("L", 0)])
    with pytest.raises(ConformalError):
        ConformalAlgebra(B, {}, {0: {0: parse_formal("Lm")}})


def test_current_conformal():
    L = gd("exam32-gd").algebra
    R = current_conformal(L)
    assert check_conformal_axioms(R).passed
    assert entries(R) == entries(spec("current-from-exam32").to_conformal())
    # a non-skew table is not a Hom-Lie bracket
    with pytest.raises(PreconditionFailed):
        current_conformal(L.with_product("bracket", L.product("circ")))


def test_svir_alpha_space_is_identity_line():
    sol = solve_alpha(spec("svir").to_conformal(), degree_bound=2)
    assert sol.dimension == 1
    (m,) = sol.basis
    names = spec("svir").to_conformal().generators.names
    got = {(names[i], names[k]): str(p) for i, row in m.items() for k, p in row.items()}
    assert got == {(n, n): "1" for n in names}


def test_solve_alpha_vectors_satisfy_jacobi():
    R = spec("virasoro").to_conformal()
    sol = solve_alpha(R, degree_bound=2)
    for m in sol.basis:
        S = R.with_alpha(m)
        assert not jacobi_residual(S, 0, 0, 0)


def test_solve_alpha_with_torsion_generator():
    from halg.cext import Cocycle, extend
    R = spec("virasoro").to_conformal()
    E = extend(R, Cocycle.from_polys(R.generators, {(0, 0): parse_formal("Lm^3")})).algebra
    sol = solve_alpha(E, degree_bound=2)
    names = E.generators.names
    got = sorted(tuple(sorted((names[i], names[k], str(p)) for i, r in m.items() for k, p in r.items())) for m in sol.basis)
    # c is central, so α(c) is free and α(L) may pick up a c component
    assert got == [(("L", "L", "1"),), (("L", "c", "1"),), (("c", "c", "1"),)]
    # a torsion target never carries a ∂ power
    assert all(d == 0 for (_, k, d) in sol.unknowns if k in E.torsion)
