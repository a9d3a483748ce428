"""Seeded randomized property suites.

Each suite draws instances from `halg.random_instances`, discards those that
fail the construction's hypotheses, and records how the remaining ones fare.
The CLI `property` command, the test suite and the scripts all call these.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field

from .cext import Cocycle, _extended, cocycle_report, solve_cocycle_space, verify_theorem51
from .conformal import check_conformal_axioms, quadratic_from_gd
from .constructions import (
    GDStructure,
    PreconditionFailed,
    derivation_construction,
    poisson_construction,
    star_constructions,
    supercommutator_gd,
    supercommutator_table,
    yau_twist,
)
from .exactalg import LAM, Dp, FormalPoly, Inconsistent, Lp, Scalar, residuals, solve_linear
from .random_instances import (
    EIGEN,
    GRID,
    diagonal,
    make_multiplicative,
    random_basis,
    random_commutative_hom_assoc,
    random_diagonal,
    random_hom_lie,
    random_hom_novikov,
    random_novikov,
    random_skew_table,
    random_table,
    grading_map,
    rejection_commutative_hom_assoc,
    structured_hom_poisson,
    structured_novikov,
    transport,
    unimodular,
)
from .superalgebra import EvenMap, ProductTable, SuperAlgebra, basis_vector, check_gd, check_hom_poisson, sign, vadd


@dataclass
class PropertyResult:
    name: str
    seed: int
    trials: int = 0
    holds: int = 0
    failures: list[str] = field(default_factory=list)
    stats: dict[str, int] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not self.failures

    def bump(self, key: str, by: int = 1):
        self.stats[key] = self.stats.get(key, 0) + by

    def as_dict(self) -> dict:
        return {
            "name": self.name,
            "seed": self.seed,
            "trials": self.trials,
            "holds": self.holds,
            "verdict": "pass" if self.passed else "fail",
            "failures": self.failures,
            "stats": dict(sorted(self.stats.items())),
        }

    def summary(self) -> str:
        extra = ", ".join(f"{k}={v}" for k, v in sorted(self.stats.items()))
        head = f"{self.name} (seed {self.seed}): {'PASS' if self.passed else 'FAIL'} {self.holds}/{self.trials}"
        lines = [head + (f" [{extra}]" if extra else "")]
        lines += [f"  {f}" for f in self.failures[:10]]
        return "\n".join(lines)


# -- linear map spaces ------------------------------------------------------------

def solve_map_space(A: SuperAlgebra, derivation_of=(), commuting_with=(), twisted: tuple[str, Scalar] | None = None):
    """Even maps D with D a derivation of each product in `derivation_of`,
    Dα = αD for each map in `commuting_with`, and optionally
    D[x,y] = [Dx,y] + [x,Dy] + shift[x,y].  Returns a SolutionSpace over
    unknowns (i, k) meaning the coefficient of e_k in D(e_i)."""
    B = A.basis
    n = A.dim
    unknowns = [(i, k) for i in range(n) for k in range(n) if B.parities[i] == B.parities[k]]
    rows: dict[tuple, dict] = {}
    rhs: dict[tuple, Scalar] = {}

    def add(key, u, c):
        if not c.is_zero():
            row = rows.setdefault(key, {})
            row[u] = row.get(u, Scalar(0)) + c

    for u in unknowns:
        i0, k0 = u
        # D = E_{k0 i0}: sends e_{i0} to e_{k0}
        def Dm(v):
            c = v.get(i0)
            return {k0: c} if c is not None else {}

        for pname in derivation_of:
            t = A.product(pname)
            for i, j in itertools.product(range(n), repeat=2):
                res = vadd(Dm(t(i, j)), {k: -c for k, c in t.apply(Dm(basis_vector(i)), basis_vector(j)).items()},
                           {k: -c for k, c in t.apply(basis_vector(i), Dm(basis_vector(j))).items()})
                for k, c in res.items():
                    add(("der", pname, i, j, k), u, c)
        for mname in commuting_with:
            g = A.map(mname)
            for i in range(n):
                res = vadd(Dm(g(i)), {k: -c for k, c in g.apply(Dm(basis_vector(i))).items()})
                for k, c in res.items():
                    add(("com", mname, i, k), u, c)
        if twisted is not None:
            bname, _ = twisted
            t = A.product(bname)
            for i, j in itertools.product(range(n), repeat=2):
                res = vadd(Dm(t(i, j)), {k: -c for k, c in t.apply(Dm(basis_vector(i)), basis_vector(j)).items()},
                           {k: -c for k, c in t.apply(basis_vector(i), Dm(basis_vector(j))).items()})
                for k, c in res.items():
                    add(("tw", i, j, k), u, c)
    if twisted is not None:
        bname, shift = twisted
        t = A.product(bname)
        for i, j in itertools.product(range(n), repeat=2):
            for k, c in t(i, j).items():
                key = ("tw", i, j, k)
                rows.setdefault(key, {})
                rhs[key] = c * shift
    eqs = [(row, rhs.get(key, 0)) for key, row in rows.items()]
    return solve_linear(eqs, unknowns)


def _random_point(rng: random.Random, space, grid=GRID) -> dict:
    vec = dict(space.particular)
    for kv in space.kernel:
        c = rng.choice((0,) + tuple(grid))
        for u, x in kv.items():
            vec[u] = vec.get(u, Scalar(0)) + x * c
    return vec


def _map_from(A: SuperAlgebra, vec: dict) -> EvenMap:
    entries: dict = {}
    for (i, k), c in vec.items():
        if not Scalar._coerce(c).is_zero():
            entries.setdefault(i, {})[k] = c
    return EvenMap(A.basis, entries)


# -- instance builders ------------------------------------------------------------------

def random_gd(rng: random.Random) -> GDStructure:
    """Certified GD structure: supercommutator of a random Hom-Novikov superalgebra."""
    return supercommutator_gd(random_hom_novikov(rng))


def random_classical_gd_with_twist(rng: random.Random) -> SuperAlgebra:
    """Classical GD (circ Novikov, bracket its supercommutator) with an α that is
    an endomorphism of both products but not yet twisted in."""
    if rng.random() < 0.3:
        A = random_novikov(rng)
        d = random_diagonal(rng, A.basis)
        circ = make_multiplicative(A.product("circ"), d)
        A = SuperAlgebra(A.basis, {"circ": circ}, {"alpha": diagonal(A.basis, d)})
    else:
        A, degs = structured_novikov(rng, 3)
        A = A.with_map("alpha", grading_map(A.basis, degs, rng.choice(EIGEN)))
        A = transport(A, unimodular(rng, A.basis))
    return A.with_product("bracket", supercommutator_table(A, "circ"))


def random_derivation_instance(rng: random.Random) -> tuple[SuperAlgebra, Scalar]:
    A = random_commutative_hom_assoc(rng)
    space = solve_map_space(A, derivation_of=("mul",), commuting_with=("alpha",))
    Dmap = _map_from(A, _random_point(rng, space))
    return A.with_map("D", Dmap), Scalar(rng.choice((0,) + GRID))


def random_poisson_instance(rng: random.Random, tries: int = 60) -> tuple[SuperAlgebra, Scalar]:
    """Commutative Hom-associative product plus a Hom-Lie bracket satisfying
    the Leibniz rule (zero if none is found quickly), with a derivation D that
    also satisfies the shifted rule on the bracket."""
    if rng.random() < 0.5:
        P = structured_hom_poisson(rng)
        return _with_twisted_derivation(rng, P)
    A = rejection_commutative_hom_assoc(rng)
    d = [A.map("alpha")(i).get(i, Scalar(0)) for i in range(A.dim)]
    d = [int(x.constant_value()) for x in d]
    P = A.with_product("bracket", ProductTable(A.basis, {}))
    for _ in range(tries):
        br = make_multiplicative(random_skew_table(rng, A.basis, density=0.4), d)
        if br.is_zero():
            continue
        cand = A.with_product("bracket", br)
        if check_hom_poisson(cand).passed:
            P = cand
            break
    return _with_twisted_derivation(rng, P)


def _with_twisted_derivation(rng: random.Random, P: SuperAlgebra) -> tuple[SuperAlgebra, Scalar]:
    for shift in (Scalar(rng.choice(GRID)), Scalar(0)):
        try:
            space = solve_map_space(P, ("mul",), ("alpha",), ("bracket", shift))
        except Inconsistent:
            continue
        return P.with_map("D", _map_from(P, _random_point(rng, space))), shift
    raise AssertionError("zero map always solves the homogeneous system")


def random_star_instance(rng: random.Random) -> SuperAlgebra:
    L = random_hom_lie(rng)
    space = solve_map_space(L, commuting_with=("alpha",))
    return L.with_map("f", _map_from(L, _random_point(rng, space, grid=(-1, 1, 2))))


# -- suites -------------------------------------------------------------------------------

CONSTRUCTIONS = ("supercommutator", "yau-twist", "derivation", "poisson", "star")


def construction_suite(kind: str, count: int = 100, seed: int = 0) -> PropertyResult:
    """Build `count` instances passing the hypotheses and check every output certifies."""
    if kind not in CONSTRUCTIONS:
        raise ValueError(f"unknown construction {kind!r}")
    rng = random.Random(seed)
    res = PropertyResult(f"construct-then-verify[{kind}]", seed)
    guard = 0
    while res.trials < count:
        guard += 1
        if guard > 20 * count:
            res.failures.append(f"only {res.trials} instances passed the hypotheses")
            break
        try:
            if kind == "supercommutator":
                A = random_hom_novikov(rng)
                G = supercommutator_gd(A)
                ok = G.certified
                res.bump("nonzero-bracket", int(not G.algebra.product("bracket").is_zero()))
            elif kind == "yau-twist":
                A = random_classical_gd_with_twist(rng)
                out = yau_twist(A, ["circ", "bracket"], kind="gd")
                ok = out.certificate.passed
                res.bump("nonzero-circ", int(not out.algebra.product("circ").is_zero()))
            elif kind == "derivation":
                A, shift = random_derivation_instance(rng)
                G = derivation_construction(A, shift=shift)
                ok = G.certified
                res.bump("nonzero-D", int(bool(A.map("D").entries)))
            elif kind == "poisson":
                P, shift = random_poisson_instance(rng)
                G = poisson_construction(P, shift=shift)
                ok = G.certified
                res.bump("nonzero-bracket", int(not P.product("bracket").is_zero()))
                res.bump("nonzero-D", int(bool(P.map("D").entries)))
            else:
                L = random_star_instance(rng)
                r = star_constructions(L)
                # the construction's claim: conditions hold => output is GD
                ok = all(c.direct.passed for c in (r.star, r.star_prime) if c.conditions.passed)
                res.bump("conditions-hold", sum(c.conditions.passed for c in (r.star, r.star_prime)))
        except PreconditionFailed:
            res.bump("discarded")
            continue
        res.trials += 1
        if ok:
            res.holds += 1
        else:
            res.failures.append(f"instance {res.trials} (draw {guard}) produced an uncertified output")
    return res


def star_iff_suite(count: int = 100, seed: int = 0) -> PropertyResult:
    rng = random.Random(seed)
    res = PropertyResult("star-iff", seed)
    while res.trials < count:
        L = random_star_instance(rng)
        r = star_constructions(L)
        res.trials += 1
        good = True
        for c in (r.star, r.star_prime):
            res.bump(f"{c.name}-{'gd' if c.direct.passed else 'not-gd'}")
            if not c.consistent:
                good = False
                res.failures.append(
                    f"instance {res.trials}: {c.name} conditions {c.conditions.verdict}, direct {c.direct.verdict}"
                )
        res.holds += good
    return res


def random_quadratic_candidate(rng: random.Random) -> GDStructure:
    """Half genuine GD structures, half perturbed or unstructured tables."""
    roll = rng.random()
    if roll < 0.5:
        return random_gd(rng)
    if roll < 0.8:
        G = random_gd(rng)
        A = G.algebra
        B = A.basis
        n = A.dim
        name = rng.choice(("circ", "bracket"))
        t = dict(A.product(name).entries)
        i, j = rng.randrange(n), rng.randrange(n)
        k = rng.choice([k for k in range(n) if B.parities[k] == (B.parities[i] + B.parities[j]) % 2])
        row = dict(t.get((i, j), {}))
        row[k] = row.get(k, Scalar(0)) + rng.choice(GRID)
        t[(i, j)] = row
        if name == "bracket" and (i != j or B.parities[i]):
            s = -sign(B.parities[i] * B.parities[j])
            # keep the bracket super-skew so the failure is not merely skew-symmetry
            other = dict(t.get((j, i), {}))
            other[k] = row[k] * s
            t[(j, i)] = other
        return GDStructure(A.with_product(name, ProductTable(B, t)))
    B = random_basis(rng)
    d = random_diagonal(rng, B)
    A = SuperAlgebra(
        B,
        {
            "circ": make_multiplicative(random_table(rng, B, density=0.3), d),
            "bracket": make_multiplicative(random_skew_table(rng, B, density=0.3), d),
        },
        {"alpha": diagonal(B, d)},
    )
    return GDStructure(A)


def conformal_iff_suite(count: int = 200, seed: int = 0) -> PropertyResult:
    """GD verdict of (A, [,], ∘, α) equals the conformal verdict of its quadratic algebra."""
    rng = random.Random(seed)
    res = PropertyResult("gd-iff-conformal", seed)
    for _ in range(count):
        G = random_quadratic_candidate(rng)
        gd = check_gd(G.algebra, G.bracket, G.circ, G.alpha).passed
        conf = check_conformal_axioms(quadratic_from_gd(G)).passed
        res.trials += 1
        res.bump("gd-pass" if gd else "gd-fail")
        if gd == conf:
            res.holds += 1
        else:
            res.failures.append(f"instance {res.trials}: GD {gd}, conformal {conf}")
    return res


def random_form(rng: random.Random, B, degree: int = 3, density: float = 0.3) -> Cocycle:
    n = len(B)
    comps = []
    for _ in range(degree + 1):
        comps.append({
            (u, v): Scalar(rng.choice(GRID))
            for u in range(n) for v in range(n)
            if B.parities[u] == B.parities[v] and rng.random() < density
        })
    return Cocycle(B, comps)


def cocycle_iff_suite(count: int = 60, seed: int = 0, degree: int = 3) -> PropertyResult:
    """f satisfies the cocycle conditions iff the extended bracket satisfies the axioms."""
    rng = random.Random(seed)
    res = PropertyResult("cocycle-iff-extension", seed)
    spaces: dict[int, tuple] = {}
    for t in range(count):
        if t % 10 == 0 or not spaces:
            G = random_gd(rng)
            R = quadratic_from_gd(G)
            space = solve_cocycle_space(R, degree)
            spaces = {0: (R, space)}
        R, space = spaces[0]
        if space.basis and rng.random() < 0.5:
            f = Cocycle(R.generators, [])
            for b in space.basis:
                f = _add_cocycles(f, b.scaled(rng.choice((0,) + GRID)))
        else:
            f = random_form(rng, R.generators, degree)
        cond = cocycle_report(R, f).passed
        ext = check_conformal_axioms(_extended(R, f)).passed
        res.trials += 1
        res.bump("cocycle" if cond else "not-cocycle")
        if cond == ext:
            res.holds += 1
        else:
            res.failures.append(f"trial {t}: conditions {cond}, extension axioms {ext}")
    return res


def _add_cocycles(f: Cocycle, g: Cocycle) -> Cocycle:
    m = max(len(f.components), len(g.components))
    comps = []
    for i in range(m):
        row = dict(f.component(i))
        for k, c in g.component(i).items():
            row[k] = row.get(k, Scalar(0)) + c
        comps.append(row)
    return Cocycle(f.basis, comps)


def cocycle_relations_suite(count: int = 15, seed: int = 0, max_degree: int = 5) -> PropertyResult:
    """Every solved cocycle (basis and random combinations) satisfies the relation suite."""
    rng = random.Random(seed)
    res = PropertyResult(f"cocycle-relations[max_degree={max_degree}]", seed)
    for _ in range(count):
        G = random_gd(rng)
        space = solve_cocycle_space(quadratic_from_gd(G), max_degree)
        cands = list(space.basis)
        if space.basis:
            f = Cocycle(G.basis, [])
            for b in space.basis:
                f = _add_cocycles(f, b.scaled(rng.choice(GRID)))
            cands.append(f)
        for f in cands:
            res.trials += 1
            res.bump(f"degree-{f.degree}")
            rep = verify_theorem51(G, f)
            if rep.passed:
                res.holds += 1
            else:
                res.failures.append(f"{f.format()}: {rep.witnesses[0]}")
    return res


def random_formal(rng: random.Random, params=(), terms: int = 4, max_exp: int = 3) -> FormalPoly:
    out = FormalPoly()
    for _ in range(rng.randint(0, terms)):
        e = tuple(rng.randint(0, max_exp) for _ in range(3))
        out = out + FormalPoly({e: rng.randint(-5, 5)})
    return out


def skew_involution_suite(count: int = 1000, seed: int = 0) -> PropertyResult:
    """λ -> -λ-∂ applied twice is the identity."""
    rng = random.Random(seed)
    res = PropertyResult("skew-involution", seed)
    flip = {LAM: -Lp - Dp}
    for t in range(count):
        p = random_formal(rng)
        res.trials += 1
        if p.substitute(flip).substitute(flip) == p:
            res.holds += 1
        else:
            res.failures.append(f"{p}")
    return res


def linsolve_suite(count: int = 100, seed: int = 0) -> PropertyResult:
    """Particular solution plus random kernel combinations re-satisfy the system."""
    rng = random.Random(seed)
    res = PropertyResult("linsolve-resatisfy", seed)
    for t in range(count):
        nvar = rng.randint(1, 6)
        neq = rng.randint(1, 7)
        unknowns = [f"x{i}" for i in range(nvar)]
        # plant a solution so most systems are consistent
        planted = {u: Scalar(rng.randint(-3, 3)) for u in unknowns}
        eqs = []
        for _ in range(neq):
            row = {u: Scalar(rng.randint(-3, 3)) for u in unknowns if rng.random() < 0.6}
            rhs = sum((c * planted[u] for u, c in row.items()), Scalar(0))
            if rng.random() < 0.1:
                rhs = rhs + 1
            eqs.append((row, rhs))
        res.trials += 1
        try:
            space = solve_linear(eqs, unknowns)
        except Inconsistent:
            res.bump("inconsistent")
            # the planted point must then violate some equation
            if all((sum((c * planted[u] for u, c in row.items()), Scalar(0)) - r).is_zero() for row, r in eqs):
                res.failures.append(f"system {t}: reported inconsistent but planted point solves it")
            else:
                res.holds += 1
            continue
        ok = True
        for _ in range(3):
            point = _random_point(rng, space, grid=(-2, -1, 1, 2, 3))
            full = {u: point.get(u, Scalar(0)) for u in unknowns}
            if any(not r.is_zero() for r in residuals(eqs, full)):
                ok = False
        if ok:
            res.holds += 1
        else:
            res.failures.append(f"system {t}: solution does not satisfy the equations")
    return res


SUITES = {
    "constructions": lambda count, seed: [construction_suite(k, count, seed) for k in CONSTRUCTIONS],
    "star-iff": lambda count, seed: [star_iff_suite(count, seed)],
    "conformal-iff": lambda count, seed: [conformal_iff_suite(count, seed)],
    "cocycle-iff": lambda count, seed: [cocycle_iff_suite(count, seed)],
    "cocycle-relations": lambda count, seed: [cocycle_relations_suite(count, seed)],
    "skew-involution": lambda count, seed: [skew_involution_suite(count, seed)],
    "linsolve": lambda count, seed: [linsolve_suite(count, seed)],
}

DEFAULT_COUNTS = {
    "constructions": 100,
    "star-iff": 100,
    "conformal-iff": 200,
    "cocycle-iff": 60,
    "cocycle-relations": 15,
    "skew-involution": 1000,
    "linsolve": 100,
}
