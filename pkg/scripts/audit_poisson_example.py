"""Audit the three-dimensional candidate Hom-Poisson data.

1. Run the checkers on the literal data (corpus/poisson-example.halg).
2. Keep α, D and the shape of the product, leave the e1-coefficient p of
   e2·e2 and every even super-skew bracket constant unknown, and solve the
   polynomial system (commutative Hom-associativity, Hom-Jacobi, Leibniz, D a
   derivation) for generic a, μ, b, c.
3. Run the Poisson construction on the repaired file.

Usage: python3 scripts/audit_poisson_example.py
"""
from itertools import product as cart
from pathlib import Path

import sympy as sp

from halg.constructions import poisson_construction
from halg.specfile import load_spec
from halg.superalgebra import check_hom_poisson, check_map_property, Derivation

CORPUS = Path(__file__).resolve().parent.parent / "corpus"

a, mu, b, c = sp.symbols("a mu b c")
p, x1, x2, z1, z2, w1, w2 = sp.symbols("p x1 x2 z1 z2 w1 w2")
PAR = (0, 0, 1)
N = 3


def sg(k):
    return -1 if k % 2 else 1


def tensor(entries):
    T = [[[0] * N for _ in range(N)] for _ in range(N)]
    for (i, j), row in entries.items():
        for k, v in row.items():
            T[i][j][k] = v
    return T


def mul(T, x, y):
    return [sp.expand(sum(x[i] * y[j] * T[i][j][k] for i in range(N) for j in range(N))) for k in range(N)]


def app(M, x):
    return [sp.expand(sum(x[i] * M[i][k] for i in range(N))) for k in range(N)]


def e(i):
    return [1 if k == i else 0 for k in range(N)]


MUL = tensor({(0, 1): {0: a}, (1, 0): {0: a}, (1, 1): {0: p, 1: 1}, (1, 2): {2: mu}, (2, 1): {2: mu}})
BR = tensor({(0, 1): {0: x1, 1: x2}, (1, 0): {0: -x1, 1: -x2}, (2, 2): {0: z1, 1: z2},
             (0, 2): {2: w1}, (2, 0): {2: -w1}, (1, 2): {2: w2}, (2, 1): {2: -w2}})
ALPHA = [[a, 0, 0], [1, 1, 0], [0, 0, mu]]
D = [[(a - 1) * b, 0, 0], [b, 0, 0], [0, 0, c]]


def equations():
    eqs = []
    for i, j, k in cart(range(N), repeat=3):
        X, Y, Z = e(i), e(j), e(k)
        aX, aY, aZ = app(ALPHA, X), app(ALPHA, Y), app(ALPHA, Z)
        eqs += [u - v for u, v in zip(mul(MUL, aX, mul(MUL, Y, Z)), mul(MUL, mul(MUL, X, Y), aZ))]
        jac = [0] * N
        for (A_, s1), (B_, C_) in (
            ((aX, PAR[i] * PAR[k]), (Y, Z)), ((aY, PAR[j] * PAR[i]), (Z, X)), ((aZ, PAR[k] * PAR[j]), (X, Y))
        ):
            jac = [u + sg(s1) * v for u, v in zip(jac, mul(BR, A_, mul(BR, B_, C_)))]
        eqs += jac
        lhs = mul(BR, aX, mul(MUL, Y, Z))
        r1 = mul(MUL, aY, mul(BR, X, Z))
        r2 = mul(MUL, aZ, mul(BR, X, Y))
        eqs += [u - sg(PAR[i] * PAR[j]) * v - sg(PAR[k] * (PAR[i] + PAR[j])) * w for u, v, w in zip(lhs, r1, r2)]
    for i, j in cart(range(N), repeat=2):
        X, Y = e(i), e(j)
        eqs += [u - v - w for u, v, w in zip(app(D, mul(MUL, X, Y)), mul(MUL, app(D, X), Y), mul(MUL, X, app(D, Y)))]
    return [q for q in {sp.factor(q) for q in eqs} if q != 0]


def main():
    P = load_spec(CORPUS / "poisson-example.halg").to_algebra()
    print("literal data:")
    print(check_hom_poisson(P).summary(5))
    print(check_map_property(P, "D", Derivation("mul")).summary(5))
    eqs = equations()
    sols = sp.solve(eqs, [p, x1, x2, z1, z2, w1, w2], dict=True)
    print(f"\nsearch: {len(eqs)} distinct equations, {len(sols)} solution families")
    for s in sols:
        print("  ", {str(k): sp.simplify(v) for k, v in s.items()})
    R = load_spec(CORPUS / "poisson-example-repaired.halg").to_algebra()
    G = poisson_construction(R)
    print("\nrepaired file, construction certified:", G.certified)
    for (i, j), row in sorted(G.algebra.product("circ").entries.items()):
        names = R.basis.names
        print(f"  {names[i]} ∘ {names[j]} =", R.basis.format(row))


if __name__ == "__main__":
    main()
