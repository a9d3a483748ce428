"""One-dimensional central extensions of quadratic Hom-Lie conformal superalgebras.

A cocycle f_λ(u,v) = Σ λ^i f_i(u,v) is stored by its scalar components on
generator pairs.  The extension adjoins an even generator c with ∂c = 0 and
adds f_λ(u,v)c to each bracket.  Cocycle conditions are read off as the
c-components of the extension's skew-symmetry and Hom-Jacobi residuals; both
are linear in f because c is central.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .conformal import (
    ConformalAlgebra,
    ConformalError,
    PolyMap,
    check_conformal_axioms,
    jacobi_residual,
    quadratic_from_gd,
    skew_residual,
)
from .constructions import GDStructure
from .exactalg import FormalPoly, LAM, Scalar, solve_linear
from .exactalg.linsolve import SolutionSpace
from .superalgebra import CheckReport, SuperBasis, Witness, basis_vector, sign

Pair = tuple[int, int]


class HypothesisFailed(ValueError):
    def __init__(self, message: str, report: CheckReport):
        super().__init__(message)
        self.report = report


class NotACocycle(ValueError):
    def __init__(self, message: str, report: CheckReport):
        super().__init__(message)
        self.report = report


@dataclass
class Cocycle:
    """components[i][(u, v)] = f_i(u, v); only even pairs may be nonzero."""

    basis: SuperBasis
    components: list[dict[Pair, Scalar]] = field(default_factory=list)

    def __post_init__(self):
        clean = []
        for comp in self.components:
            row = {}
            for (u, v), c in comp.items():
                c = Scalar._coerce(c)
                if c.is_zero():
                    continue
                if (self.basis.parities[u] + self.basis.parities[v]) % 2:
                    names = self.basis.names
                    raise ConformalError(f"f({names[u]}, {names[v]}) pairs elements of different parity")
                row[(u, v)] = c
            clean.append(row)
        while clean and not clean[-1]:
            clean.pop()
        self.components = clean

    @classmethod
    def from_polys(cls, basis: SuperBasis, entries: Mapping[Pair, FormalPoly]) -> "Cocycle":
        comps: list[dict[Pair, Scalar]] = []
        for key, poly in entries.items():
            poly = FormalPoly._coerce(poly)
            if poly.uses() - {LAM}:
                raise ConformalError("cocycle values are polynomials in Lm only")
            for (_, i, _), c in poly.items():
                while len(comps) <= i:
                    comps.append({})
                comps[i][key] = c
        return cls(basis, comps)

    @property
    def degree(self) -> int:
        return max(len(self.components) - 1, 0)

    def is_zero(self) -> bool:
        return not self.components

    def component(self, i: int) -> dict[Pair, Scalar]:
        return self.components[i] if 0 <= i < len(self.components) else {}

    def f(self, i: int, x: Mapping[int, Scalar], y: Mapping[int, Scalar]) -> Scalar:
        """f_i on vectors, bilinearly."""
        comp = self.component(i)
        acc = Scalar(0)
        for u, a in x.items():
            for v, b in y.items():
                c = comp.get((u, v))
                if c is not None:
                    acc = acc + a * b * c
        return acc

    def poly(self, u: int, v: int) -> FormalPoly:
        return FormalPoly({(0, i, 0): comp[(u, v)] for i, comp in enumerate(self.components) if (u, v) in comp})

    def polys(self) -> dict[Pair, FormalPoly]:
        keys = {k for comp in self.components for k in comp}
        return {k: self.poly(*k) for k in sorted(keys)}

    def scaled(self, s) -> "Cocycle":
        s = Scalar._coerce(s)
        return Cocycle(self.basis, [{k: c * s for k, c in comp.items()} for comp in self.components])

    def format(self) -> str:
        names = self.basis.names
        lines = [f"f_λ({names[u]}, {names[v]}) = {p}" for (u, v), p in self.polys().items()]
        return "\n".join(lines) if lines else "f = 0"


@dataclass
class CentralExtension:
    base: ConformalAlgebra
    cocycle: Cocycle
    algebra: ConformalAlgebra
    center: str
    certificate: CheckReport | None = None


def _center_name(names: Iterable[str], wanted: str = "c") -> str:
    taken = set(names)
    name = wanted
    while name in taken:
        name += "_"
    return name


def _extended(R: ConformalAlgebra, f: Cocycle, center: str = "c", alpha_c=1) -> ConformalAlgebra:
    if R.torsion:
        raise ConformalError("base algebra already has torsion generators")
    B = R.generators
    c = len(B)
    names = list(B.names) + [_center_name(B.names, center)]
    E = SuperBasis(tuple(names), tuple(B.parities) + (0,))
    table = {k: dict(v) for k, v in R.bracket.items()}
    for key, poly in f.polys().items():
        table.setdefault(key, {})[c] = poly
    alpha: PolyMap | None = None
    if R.alpha is not None:
        alpha = {i: dict(v) for i, v in R.alpha.items()}
        alpha[c] = {c: FormalPoly.const(alpha_c)}
    return ConformalAlgebra(E, table, alpha, frozenset({c}), R.params)


# -- constraints --------------------------------------------------------------------

@dataclass
class CocycleSystem:
    algebra: ConformalAlgebra
    max_degree: int
    unknowns: list[tuple[int, int, int]]
    equations: list[tuple[dict, int]]
    labels: list[tuple[str, tuple[int, ...], tuple[int, int, int]]]

    def unknown_label(self, u: tuple[int, int, int]) -> str:
        i, a, b = u
        names = self.algebra.generators.names
        return f"f{i}({names[a]},{names[b]})"


def _even_pairs(B: SuperBasis) -> list[Pair]:
    n = len(B)
    return [(u, v) for u in range(n) for v in range(n) if B.parities[u] == B.parities[v]]


def _unit(B: SuperBasis, u: tuple[int, int, int]) -> Cocycle:
    i, a, b = u
    comps = [{} for _ in range(i + 1)]
    comps[i][(a, b)] = Scalar(1)
    return Cocycle(B, comps)


def _center_parts(R: ConformalAlgebra, f: Cocycle):
    """Yield (axiom, args, polynomial) for the c-components of every axiom instance."""
    E = _extended(R, f)
    c = len(R.generators)
    n = R.rank
    for u in range(n):
        for v in range(u, n):
            yield "skew-symmetry", (u, v), skew_residual(E, u, v).get(c)
    if E.alpha is None:
        raise ConformalError("algebra has no α")
    for t in itertools.product(range(n), repeat=3):
        yield "hom-jacobi", t, jacobi_residual(E, *t).get(c)


def cocycle_constraints(R: ConformalAlgebra, max_degree: int = 3) -> CocycleSystem:
    """Linear conditions on the unknowns f_i(u, v), i ≤ max_degree, one per
    (axiom instance, monomial in λ, μ)."""
    if max_degree < 0:
        raise ValueError("max_degree must be nonnegative")
    B = R.generators
    unknowns = [(i, a, b) for i in range(max_degree + 1) for a, b in _even_pairs(B)]
    rows: dict[tuple, dict] = {}
    for u in unknowns:
        for axiom, args, poly in _center_parts(R, _unit(B, u)):
            if poly is None:
                continue
            for mono, coef in poly.items():
                rows.setdefault((axiom, args, mono), {})[u] = coef
    keys = list(rows)
    return CocycleSystem(R, max_degree, unknowns, [(rows[k], 0) for k in keys], keys)


def cocycle_report(R: ConformalAlgebra, f: Cocycle) -> CheckReport:
    """Evaluate the cocycle conditions on f directly."""
    report = CheckReport("cocycle-conditions")
    names = R.generators.names
    for axiom, args, poly in _center_parts(R, f):
        report.checked += 1
        if poly:
            report.witnesses.append(Witness(axiom, tuple(names[a] for a in args), (("c", str(poly)),)))
    return report


@dataclass
class CocycleSpace:
    system: CocycleSystem
    space: SolutionSpace
    basis: list[Cocycle]

    @property
    def dimension(self) -> int:
        return self.space.dimension


def solve_cocycle_space(R: ConformalAlgebra, max_degree: int = 3) -> CocycleSpace:
    system = cocycle_constraints(R, max_degree)
    space = solve_linear(system.equations, system.unknowns)
    B = R.generators
    basis = []
    for vec in space.kernel:
        comps = [{} for _ in range(max_degree + 1)]
        for (i, a, b), c in vec.items():
            comps[i][(a, b)] = c
        basis.append(Cocycle(B, comps))
    return CocycleSpace(system, space, basis)


def extend(R: ConformalAlgebra, f: Cocycle, center: str = "c", alpha_c=1) -> CentralExtension:
    """Adjoin c with [u_λ v]^ = [u_λ v] + f_λ(u,v)c; α(c) = alpha_c·c."""
    rep = cocycle_report(R, f)
    if not rep.passed:
        raise NotACocycle("the form violates the cocycle conditions", rep)
    E = _extended(R, f, center, alpha_c)
    return CentralExtension(R, f, E, E.generators.names[-1], check_conformal_axioms(E))


# -- the relation suite for quadratic algebras ---------------------------------------------

def quadratic_cocycle_relations(G: GDStructure, f: Cocycle) -> CheckReport:
    """Relations satisfied by a cocycle of the quadratic algebra of G.

    For top degree n > 3 only f_n(u∘v, α(w)) = 0 is asserted.  For n ≤ 3 the
    symmetry of each f_i is checked together with the seven relations linking
    consecutive components, in the order the top component is consumed.
    """
    A = G.algebra
    br, ci, al = A.product(G.bracket), A.product(G.circ), A.map(G.alpha)
    p = A.basis.parities
    names = A.basis.names
    n = A.dim
    e = basis_vector
    report = CheckReport("cocycle-relations")

    def rec(axiom, args, value):
        report.checked += 1
        if not value.is_zero():
            report.witnesses.append(Witness(axiom, tuple(names[a] for a in args), (("value", str(value)),)))

    top = f.degree
    if top > 3:
        for u, v, w in itertools.product(range(n), repeat=3):
            rec(f"top-circ-vanishing(f{top})", (u, v, w), f.f(top, ci(u, v), al(w)))
        return report

    for i in range(4):
        for u in range(n):
            for v in range(n):
                if p[u] != p[v]:
                    continue
                val = f.f(i, e(u), e(v)) - sign(p[u] * p[v] + i + 1) * f.f(i, e(v), e(u))
                rec(f"symmetry(f{i})", (u, v), val)

    def F(i, x, y):
        return f.f(i, x, y)

    def plus(x, y, s=1):
        out = dict(x)
        for k, c in y.items():
            out[k] = out.get(k, Scalar(0)) + c * s
        return out

    for u, v, w in itertools.product(range(n), repeat=3):
        suv, svw, suw = sign(p[u] * p[v]), sign(p[v] * p[w]), sign(p[u] * p[w])
        au, av, aw = al(u), al(v), al(w)
        uv, vu, wv, wu, vw, uw = ci(u, v), ci(v, u), ci(w, v), ci(w, u), ci(v, w), ci(u, w)
        bvu, bwv, bwu = br(v, u), br(w, v), br(w, u)
        wv_sym = plus(wv, vw, svw)
        wu_sym = plus(wu, uw, suw)
        t = (u, v, w)
        rec("f3-circ-left", t, F(3, au, wv) - suv * F(3, uv, aw))
        rec("f3-circ-right", t, F(3, vu, aw) - suv * F(3, uv, aw))
        rec("f3-f2-bracket", t, F(3, bvu, aw) + suv * F(2, uv, aw) - F(3, au, bwv) - F(2, au, wv))
        rec(
            "f3-f2-circ",
            t,
            3 * F(3, bvu, aw) - 2 * F(2, vu, aw) + suv * F(2, uv, aw) + suv * F(2, av, wu_sym),
        )
        rec("f2-f1-bracket", t, F(2, bvu, aw) + suv * F(1, uv, aw) - F(2, au, bwv) - F(1, au, wv))
        rec(
            "f2-f1-circ",
            t,
            F(1, au, wv_sym) - suv * F(1, av, wu_sym) - 2 * F(2, bvu, aw) + F(1, vu, aw) - suv * F(1, uv, aw),
        )
        rec(
            "f1-f0",
            t,
            F(1, au, bwv) + F(0, au, wv) - suv * F(0, av, wu_sym) - F(1, bvu, aw) - suv * F(0, uv, aw),
        )
        rec("f0-bracket", t, F(0, au, bwv) - suv * F(0, av, bwu) - F(0, bvu, aw))
    return report


def verify_theorem51(G: GDStructure, f: Cocycle) -> CheckReport:
    R = quadratic_from_gd(G)
    hyp = cocycle_report(R, f)
    if not hyp.passed:
        raise HypothesisFailed("the form is not a cocycle of the quadratic algebra", hyp)
    return quadratic_cocycle_relations(G, f)
