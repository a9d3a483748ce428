import random
from itertools import product as cart

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import spec
from halg.affinization import (
    LoopElement, WindowedBracket, apply_phi, bracket_sums, check_affine_hom_jacobi, format_sum,
    fresh_index_names, loop_bracket,
)
from halg.constructions import GDStructure
from halg.exactalg import Scalar
from halg.properties import random_gd, random_quadratic_candidate


def gd(name):
    return GDStructure(spec(name).to_algebra())


def sg(k):
    return -1 if k % 2 else 1


def jacobi_oracle(G, lo=-2, hi=2):
    """Cyclic Hom-Jacobi on loop elements, summed from loop_bracket outputs
    with the super signs taken from the base parities."""
    p = G.algebra.basis.parities
    n = G.algebra.dim
    bad = []
    for (x, y, z), (m1, m2, m3) in cart(cart(range(n), repeat=3), cart(range(lo, hi + 1), repeat=3)):
        X, Y, Z = LoopElement(x, m1), LoopElement(y, m2), LoopElement(z, m3)
        acc = {}
        for (a, A_), (b, B_), (c, C_), s in (
            ((x, X), (y, Y), (z, Z), sg(p[x] * p[z])),
            ((y, Y), (z, Z), (x, X), sg(p[y] * p[x])),
            ((z, Z), (x, X), (y, Y), sg(p[z] * p[y])),
        ):
            inner = loop_bracket(G, B_, C_)
            for key, v in bracket_sums(G, apply_phi(G, A_), inner).items():
                acc[key] = acc.get(key, 0) + s * v
        if any(not Scalar._coerce(v).is_zero() for v in acc.values()):
            bad.append((x, y, z, m1, m2, m3))
    return bad


def test_exam32_delta_and_window_pass():
    G = gd("exam32-gd")
    assert check_affine_hom_jacobi(G, "delta").passed
    assert check_affine_hom_jacobi(WindowedBracket(G, (-3, 3)), "direct").passed
    assert not jacobi_oracle(G)


def test_perturbation_fails_in_delta3_class():
    G = gd("exam32-perturbed")
    d = check_affine_hom_jacobi(G, "delta")
    w = check_affine_hom_jacobi(WindowedBracket(G, (-3, 3)), "direct")
    assert not d.passed and not w.passed
    assert d.axioms_failed() == {"delta3"} == w.axioms_failed()
    assert jacobi_oracle(G)


def test_exam32_loop_bracket_formula():
    G = gd("exam32-gd")
    x1 = G.basis.index("x1")
    for m, n in cart(range(-3, 4), repeat=2):
        got = {k: v for k, v in loop_bracket(G, LoopElement(x1, m), LoopElement(x1, n)).items() if v}
        assert got == ({} if m == n else {(G.basis.index("x2"), m + n - 1): m - n})
    assert format_sum(G, loop_bracket(G, LoopElement(x1, 2), LoopElement(x1, 0))) == "2*x2[1]"


def test_exam33_odd_bracket_formula():
    G = gd("exam33-gd")
    y, x1 = G.basis.index("y"), G.basis.index("x1")
    lam = Scalar.param("lam", G.algebra.params)
    for m, k in cart(range(-2, 3), repeat=2):
        got = loop_bracket(G, LoopElement(y, m), LoopElement(y, k))
        assert got.get((x1, m + k), Scalar(0)) == (m + k + 1) * lam**2 / 2
        assert got.get((x1, m + k + 1), Scalar(0)) == lam**2
    P = gd("exam33-printed")
    for m, k in cart(range(-2, 3), repeat=2):
        got = {key: v for key, v in loop_bracket(P, LoopElement(y, m), LoopElement(y, k)).items() if v}
        want = {(x1, m + k): (m + k + 1) * lam**2 / 2}
        assert {kk: v for kk, v in got.items()} == {kk: v for kk, v in want.items() if v}


def test_fresh_index_names_avoid_params():
    names = fresh_index_names(("m", "lam"))
    assert "m" not in names and len(set(names)) == 3


def test_empty_window_rejected():
    with pytest.raises(ValueError):
        WindowedBracket(gd("exam32-gd"), (2, 1))


@settings(max_examples=12, deadline=None)
@given(st.integers(0, 10**6))
def test_delta_verdict_equals_window_verdict(seed):
    rng = random.Random(seed)
    G = random_gd(rng) if rng.random() < 0.5 else random_quadratic_candidate(rng)
    d = check_affine_hom_jacobi(G, "delta").passed
    w = check_affine_hom_jacobi(WindowedBracket(G, (-1, 2)), "direct").passed
    assert d == w
