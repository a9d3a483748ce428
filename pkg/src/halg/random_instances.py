"""Seeded generators of small random instances for the property suites.

Two sources are mixed.  Rejection sampling draws structure constants from a
small integer grid and keeps instances passing the relevant checker.
Structured sampling starts from small graded commutative superalgebras, where
grading maps are endomorphisms, and hides the grading by a random change of
basis.
"""
from __future__ import annotations

import random
from fractions import Fraction
from typing import Sequence

from .exactalg import Scalar
from .superalgebra import (
    EvenMap,
    ProductTable,
    SuperAlgebra,
    SuperBasis,
    check_hom_associative,
    check_hom_lie_super,
    check_hom_novikov_super,
    sign,
)

GRID = (-2, -1, 1, 2)
EIGEN = (0, 1, -1, 2)


def random_basis(rng: random.Random, dims: Sequence[int] = (2, 3), odd: bool | None = None) -> SuperBasis:
    n = rng.choice(list(dims))
    if odd is None:
        n_odd = rng.randint(0, n - 1)
    else:
        n_odd = rng.randint(1, n - 1) if odd else 0
    return SuperBasis.of([(f"e{i + 1}", 0) for i in range(n - n_odd)] + [(f"o{i + 1}", 1) for i in range(n_odd)])


def random_table(rng: random.Random, B: SuperBasis, density: float = 0.35, grid=GRID) -> ProductTable:
    n = len(B)
    entries = {}
    for i in range(n):
        for j in range(n):
            targets = [k for k in range(n) if B.parities[k] == (B.parities[i] + B.parities[j]) % 2]
            v = {k: rng.choice(grid) for k in targets if rng.random() < density}
            if v:
                entries[(i, j)] = v
    return ProductTable(B, entries)


def random_skew_table(rng: random.Random, B: SuperBasis, density: float = 0.35, grid=GRID) -> ProductTable:
    n = len(B)
    p = B.parities
    entries: dict = {}
    for i in range(n):
        for j in range(i, n):
            if i == j and p[i] == 0:
                continue
            targets = [k for k in range(n) if p[k] == (p[i] + p[j]) % 2]
            v = {k: rng.choice(grid) for k in targets if rng.random() < density}
            if not v:
                continue
            entries[(i, j)] = v
            if i != j:
                s = -sign(p[i] * p[j])
                entries[(j, i)] = {k: c * s for k, c in v.items()}
    return ProductTable(B, entries)


def random_map(rng: random.Random, B: SuperBasis, density: float = 0.5, grid=GRID) -> EvenMap:
    n = len(B)
    entries = {}
    for i in range(n):
        v = {k: rng.choice(grid) for k in range(n) if B.parities[k] == B.parities[i] and rng.random() < density}
        if v:
            entries[i] = v
    return EvenMap(B, entries)


def diagonal(B: SuperBasis, values: Sequence[int]) -> EvenMap:
    return EvenMap(B, {i: {i: v} for i, v in enumerate(values)})


def random_diagonal(rng: random.Random, B: SuperBasis, choices=EIGEN) -> list[int]:
    return [rng.choice(choices) for _ in range(len(B))]


def make_multiplicative(table: ProductTable, d: Sequence[int]) -> ProductTable:
    """Drop entries (i,j)->k with d_k != d_i d_j, so diag(d) is an endomorphism."""
    kept = {}
    for (i, j), v in table.entries.items():
        w = {k: c for k, c in v.items() if d[k] == d[i] * d[j]}
        if w:
            kept[(i, j)] = w
    return ProductTable(table.basis, kept)


def commuting_map(rng: random.Random, B: SuperBasis, d: Sequence[int], density: float = 0.6, grid=GRID) -> EvenMap:
    """Random even map commuting with diag(d): block diagonal on eigenspaces."""
    n = len(B)
    entries = {}
    for i in range(n):
        v = {
            k: rng.choice(grid)
            for k in range(n)
            if B.parities[k] == B.parities[i] and d[k] == d[i] and rng.random() < density
        }
        if v:
            entries[i] = v
    return EvenMap(B, entries)


# -- axiom-carrying instances ----------------------------------------------------

def rejection_novikov(rng: random.Random, tries: int = 4000, dims=(2, 3)) -> SuperAlgebra:
    """A classical Novikov superalgebra (α = id) with a nonzero product, by rejection."""
    for _ in range(tries):
        B = random_basis(rng, dims)
        t = random_table(rng, B, density=rng.choice((0.2, 0.3, 0.4)), grid=(-1, 1, 2))
        if t.is_zero():
            continue
        A = SuperAlgebra(B, {"circ": t}, {"alpha": EvenMap.identity(B)})
        if check_hom_novikov_super(A).passed:
            return A
    raise RuntimeError("no Novikov instance found")


def rejection_hom_novikov(rng: random.Random) -> SuperAlgebra:
    """Yau twist of a rejection-sampled Novikov superalgebra by a diagonal map,
    after dropping the entries the map would not preserve."""
    from .constructions import twist_table

    A = rejection_novikov(rng)
    d = random_diagonal(rng, A.basis)
    t = make_multiplicative(A.product("circ"), d)
    A = SuperAlgebra(A.basis, {"circ": t}, {"alpha": diagonal(A.basis, d)})
    return A.with_product("circ", twist_table(A, "circ", "alpha"))


def rejection_hom_lie(rng: random.Random, tries: int = 4000, dims=(2, 3)) -> SuperAlgebra:
    """Hom-Lie superalgebra: skew random bracket twisted along a diagonal α,
    accepted when the twisted Jacobi identity holds."""
    for _ in range(tries):
        B = random_basis(rng, dims)
        d = random_diagonal(rng, B)
        t = make_multiplicative(random_skew_table(rng, B, density=rng.choice((0.3, 0.5))), d)
        A = SuperAlgebra(B, {"bracket": t}, {"alpha": diagonal(B, d)})
        if check_hom_lie_super(A).passed:
            return A
    raise RuntimeError("no Hom-Lie instance found")


def rejection_commutative_hom_assoc(rng: random.Random, tries: int = 4000, dims=(2, 3)) -> SuperAlgebra:
    for _ in range(tries):
        B = random_basis(rng, dims)
        n = len(B)
        p = B.parities
        d = random_diagonal(rng, B)
        entries: dict = {}
        for i in range(n):
            for j in range(i, n):
                if i == j and p[i] == 1:
                    continue
                targets = [k for k in range(n) if p[k] == (p[i] + p[j]) % 2]
                v = {k: rng.choice((-1, 1, 2)) for k in targets if rng.random() < 0.35}
                if v:
                    entries[(i, j)] = v
                    if i != j:
                        s = sign(p[i] * p[j])
                        entries[(j, i)] = {k: c * s for k, c in v.items()}
        t = make_multiplicative(ProductTable(B, entries), d)
        if t.is_zero():
            continue
        A = SuperAlgebra(B, {"mul": t}, {"alpha": diagonal(B, d)})
        if check_hom_associative(A, require_commutative=True).passed:
            return A
    raise RuntimeError("no commutative Hom-associative instance found")


def scalar_grid(rng: random.Random, grid=GRID) -> Scalar:
    return Scalar(rng.choice(grid))


# -- structured instances -------------------------------------------------------------
# Graded commutative superalgebras written in a monomial basis, with the degree
# of each basis element.  Grading maps x -> q^deg(x) x are endomorphisms of every
# graded product, so they serve as twist maps; a random unimodular change of
# basis then hides the structure and fills in the tables.

def _graded_library():
    """(basis pairs, degrees, product entries) for a few small algebras."""
    lib = []
    # k[t]/(t^3), unital
    lib.append(([("one", 0), ("t", 0), ("t2", 0)], [0, 1, 2],
                {(0, 0): {0: 1}, (0, 1): {1: 1}, (1, 0): {1: 1}, (0, 2): {2: 1}, (2, 0): {2: 1}, (1, 1): {2: 1}}))
    # k[t]/(t^2), unital
    lib.append(([("one", 0), ("t", 0)], [0, 1], {(0, 0): {0: 1}, (0, 1): {1: 1}, (1, 0): {1: 1}}))
    # t k[t]/(t^4): t, t^2, t^3
    lib.append(([("t", 0), ("t2", 0), ("t3", 0)], [1, 2, 3],
                {(0, 0): {1: 1}, (0, 1): {2: 1}, (1, 0): {2: 1}}))
    # Λ(θ), unital
    lib.append(([("one", 0), ("th", 1)], [0, 1], {(0, 0): {0: 1}, (0, 1): {1: 1}, (1, 0): {1: 1}}))
    # k[t]/(t^2) ⊗ Λ(θ) truncated to 1, t, θ (tθ = 0 quotient)
    lib.append(([("one", 0), ("t", 0), ("th", 1)], [0, 1, 1],
                {(0, 0): {0: 1}, (0, 1): {1: 1}, (1, 0): {1: 1}, (0, 2): {2: 1}, (2, 0): {2: 1}}))
    # k[t]/(t^2) ⊗ Λ(θ): 1, t, θ, tθ
    lib.append(([("one", 0), ("t", 0), ("th", 1), ("tth", 1)], [0, 1, 1, 2],
                {(0, 0): {0: 1}, (0, 1): {1: 1}, (1, 0): {1: 1}, (0, 2): {2: 1}, (2, 0): {2: 1},
                 (0, 3): {3: 1}, (3, 0): {3: 1}, (1, 2): {3: 1}, (2, 1): {3: 1}}))
    lib.append(_grassmann2()[:3])
    return lib


def _grassmann2():
    """Λ(θ1, θ2): basis 1, θ1, θ2, ω = θ1θ2, with degrees."""
    pairs = [("one", 0), ("w", 0), ("th1", 1), ("th2", 1)]
    degs = [0, 2, 1, 1]
    mul = {(0, 0): {0: 1}, (0, 1): {1: 1}, (1, 0): {1: 1}, (0, 2): {2: 1}, (2, 0): {2: 1},
           (0, 3): {3: 1}, (3, 0): {3: 1}, (2, 3): {1: 1}, (3, 2): {1: -1}}
    return pairs, degs, mul


def grassmann_poisson_bracket(g11, g12, g22) -> dict:
    """Even super-Poisson bracket on Λ(θ1, θ2) with {θi, θj} = g_ij·1, extended by Leibniz."""
    g = {(2, 2): g11, (2, 3): g12, (3, 2): g12, (3, 3): g22}
    br: dict = {}
    for (i, j), c in g.items():
        if c:
            br[(i, j)] = {0: c}
    # {θi, ω} = g_i1 θ2 - g_i2 θ1 and {ω, θi} = -{θi, ω}
    for i in (2, 3):
        v = {k: c for k, c in ((3, g[(i, 2)]), (2, -g[(i, 3)])) if c}
        if v:
            br[(i, 1)] = v
            br[(1, i)] = {k: -c for k, c in v.items()}
    return br


def unimodular(rng: random.Random, B: SuperBasis, grid=(-1, 1, 2)) -> list[list[int]]:
    """Random parity-preserving integer matrix with integer inverse (L·U, unit diagonals)."""
    n = len(B)
    L = [[int(i == j) for j in range(n)] for i in range(n)]
    U = [[int(i == j) for j in range(n)] for i in range(n)]
    for i in range(n):
        for j in range(n):
            if B.parities[i] != B.parities[j] or i == j:
                continue
            if rng.random() < 0.5:
                (L if i > j else U)[i][j] = rng.choice(grid)
    return [[sum(L[i][k] * U[k][j] for k in range(n)) for j in range(n)] for i in range(n)]


def _inverse(P: list[list[int]]) -> list[list[Scalar]]:
    from sympy import Matrix

    inv = Matrix(P).inv()
    n = len(P)
    return [[Scalar(int(inv[i, j])) if inv[i, j].is_integer else Scalar(Fraction(int(inv[i, j].p), int(inv[i, j].q)))
             for j in range(n)] for i in range(n)]


def transport(A: SuperAlgebra, P: list[list[int]]) -> SuperAlgebra:
    """Rewrite every table in the basis f_j = Σ_k P[k][j] e_k."""
    n = A.dim
    Pi = _inverse(P)
    col = [{k: Scalar(P[k][j]) for k in range(n) if P[k][j]} for j in range(n)]

    def back(v):
        out: dict = {}
        for k, c in v.items():
            for i in range(n):
                if not Pi[i][k].is_zero():
                    out[i] = out.get(i, Scalar(0)) + Pi[i][k] * c
        return {i: c for i, c in out.items() if not c.is_zero()}

    products = {
        name: ProductTable(A.basis, {(i, j): back(t.apply(col[i], col[j])) for i in range(n) for j in range(n)})
        for name, t in A.products.items()
    }
    maps = {name: EvenMap(A.basis, {i: back(m.apply(col[i])) for i in range(n)}) for name, m in A.maps.items()}
    return SuperAlgebra(A.basis, products, maps, A.params)


def grading_map(B: SuperBasis, degrees: Sequence[int], q: int) -> EvenMap:
    return EvenMap(B, {i: {i: q ** d} for i, d in enumerate(degrees) if q ** d != 0})


def random_graded_commutative(rng: random.Random, max_dim: int = 4):
    """(A with product "mul", degrees) from the library, restricted to dim ≤ max_dim."""
    choices = [e for e in _graded_library() if len(e[0]) <= max_dim]
    pairs, degs, mul = rng.choice(choices)
    B = SuperBasis.of(pairs)
    return SuperAlgebra(B, {"mul": ProductTable(B, mul)}, {}), list(degs)


def _degree_zero_derivation(rng: random.Random, A: SuperAlgebra, degs) -> EvenMap:
    """Random derivation of "mul" preserving the grading."""
    from .exactalg import solve_linear

    B = A.basis
    n = A.dim
    mu = A.product("mul")
    unknowns = [(i, k) for i in range(n) for k in range(n) if B.parities[i] == B.parities[k] and degs[i] == degs[k]]
    rows: dict = {}
    for (i0, k0) in unknowns:
        def Dm(v):
            c = v.get(i0)
            return {k0: c} if c is not None else {}
        for i in range(n):
            for j in range(n):
                ei, ej = {i: Scalar(1)}, {j: Scalar(1)}
                res = dict(Dm(mu(i, j)))
                for part in (mu.apply(Dm(ei), ej), mu.apply(ei, Dm(ej))):
                    for k, c in part.items():
                        res[k] = res.get(k, Scalar(0)) - c
                for k, c in res.items():
                    if not c.is_zero():
                        rows.setdefault((i, j, k), {})[(i0, k0)] = c
    space = solve_linear([(r, 0) for r in rows.values()], unknowns)
    entries: dict = {}
    for kv in space.kernel:
        c = rng.choice((0,) + GRID)
        for (i, k), x in kv.items():
            entries.setdefault(i, {})
            entries[i][k] = entries[i].get(k, Scalar(0)) + x * c
    return EvenMap(B, entries)


def structured_novikov(rng: random.Random, max_dim: int = 4) -> tuple[SuperAlgebra, list[int]]:
    """Classical Novikov product x∘y = x·D(y) + s x·y from a graded commutative
    algebra and a degree-zero derivation; returned in the monomial basis."""
    A, degs = random_graded_commutative(rng, max_dim)
    Dm = _degree_zero_derivation(rng, A, degs)
    mu = A.product("mul")
    s = rng.choice((0, 0, 1, -1, 2))
    n = A.dim
    circ = {}
    for i in range(n):
        for j in range(n):
            v = dict(mu.apply({i: Scalar(1)}, Dm(j)))
            for k, c in mu(i, j).items():
                v[k] = v.get(k, Scalar(0)) + c * s
            circ[(i, j)] = v
    B = A.basis
    return SuperAlgebra(B, {"circ": ProductTable(B, circ)}, {"alpha": EvenMap.identity(B)}), degs


def structured_hom_novikov(rng: random.Random, max_dim: int = 4) -> SuperAlgebra:
    """Yau twist of a structured Novikov superalgebra by a grading map, in a random basis."""
    A, degs = structured_novikov(rng, max_dim)
    q = rng.choice(EIGEN)
    A = A.with_map("alpha", grading_map(A.basis, degs, q))
    t, al = A.product("circ"), A.map("alpha")
    n = A.dim
    twisted = ProductTable(A.basis, {(i, j): t.apply(al(i), al(j)) for i in range(n) for j in range(n)})
    return transport(A.with_product("circ", twisted), unimodular(rng, A.basis))


def structured_commutative_hom_assoc(rng: random.Random, max_dim: int = 4) -> SuperAlgebra:
    A, degs = random_graded_commutative(rng, max_dim)
    al = grading_map(A.basis, degs, rng.choice(EIGEN))
    mu = A.product("mul")
    n = A.dim
    twisted = ProductTable(A.basis, {(i, j): mu.apply(al(i), al(j)) for i in range(n) for j in range(n)})
    A = SuperAlgebra(A.basis, {"mul": twisted}, {"alpha": al})
    return transport(A, unimodular(rng, A.basis))


def structured_hom_poisson(rng: random.Random) -> SuperAlgebra:
    """Twisted Grassmann Poisson superalgebra on Λ(θ1, θ2) in a random basis."""
    pairs, degs, mul = _grassmann2()
    B = SuperBasis.of(pairs)
    g = [rng.choice((0, 1, -1, 2)) for _ in range(3)]
    al = grading_map(B, degs, rng.choice((1, -1)))
    A = SuperAlgebra(B, {"mul": ProductTable(B, mul), "bracket": ProductTable(B, grassmann_poisson_bracket(*g))}, {"alpha": al})
    n = A.dim
    for name in ("mul", "bracket"):
        t = A.product(name)
        A = A.with_product(name, ProductTable(B, {(i, j): t.apply(al(i), al(j)) for i in range(n) for j in range(n)}))
    return transport(A, unimodular(rng, B))


# -- mixed front ends ---------------------------------------------------------------------

def random_novikov(rng: random.Random, max_dim: int = 3) -> SuperAlgebra:
    """Classical Novikov superalgebra with nonzero product."""
    if rng.random() < 0.3:
        return rejection_novikov(rng, dims=tuple(range(2, max_dim + 1)))
    while True:
        A, _ = structured_novikov(rng, max_dim)
        if not A.product("circ").is_zero():
            return transport(A, unimodular(rng, A.basis))


def random_hom_novikov(rng: random.Random, max_dim: int = 3) -> SuperAlgebra:
    if rng.random() < 0.3:
        return rejection_hom_novikov(rng)
    return structured_hom_novikov(rng, max_dim)


def random_hom_lie(rng: random.Random, max_dim: int = 3) -> SuperAlgebra:
    """Either rejection-sampled or the supercommutator of a structured Hom-Novikov algebra."""
    if rng.random() < 0.4:
        return rejection_hom_lie(rng, dims=tuple(range(2, max_dim + 1)))
    while True:
        A = structured_hom_novikov(rng, max_dim)
        br = _supercommutator(A.product("circ"))
        if not br.is_zero():
            return SuperAlgebra(A.basis, {"bracket": br}, {"alpha": A.map("alpha")})


def _supercommutator(t: ProductTable) -> ProductTable:
    B = t.basis
    n = len(B)
    out = {}
    for i in range(n):
        for j in range(n):
            v = dict(t(i, j))
            s = sign(B.parities[i] * B.parities[j])
            for k, c in t(j, i).items():
                v[k] = v.get(k, Scalar(0)) - c * s
            out[(i, j)] = v
    return ProductTable(B, out)


def random_commutative_hom_assoc(rng: random.Random, max_dim: int = 4) -> SuperAlgebra:
    if rng.random() < 0.3:
        return rejection_commutative_hom_assoc(rng)
    return structured_commutative_hom_assoc(rng, max_dim)
