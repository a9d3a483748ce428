"""Hom-Lie conformal superalgebras on free C[∂]-modules.

λ-brackets are stored on generators only, as polynomials in D (for ∂) and Lm
(for λ).  Brackets of general elements follow the sesquilinear extension rule
[f(∂)a_ν g(∂)b] = f(-ν) g(∂+ν) [a_ν b]; ν may be any polynomial in Lm and Mu,
which is how the nested brackets of the Hom-Jacobi identity are formed.

Generators listed in `torsion` are killed by ∂ (a central element c with
∂c = 0); their coefficients are reduced by setting D = 0 after every operation.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .constructions import GDStructure, PreconditionFailed
from .exactalg import D, LAM, MU, Dp, FormalPoly, Lp, Mp, Scalar, solve_linear
from .exactalg.linsolve import SolutionSpace
from .superalgebra import (
    CheckReport,
    EvenMap,
    ProductTable,
    SuperAlgebra,
    SuperBasis,
    Witness,
    check_hom_lie_super,
    sign,
)

Element = dict[int, FormalPoly]
PolyTable = dict[tuple[int, int], Element]
PolyMap = dict[int, Element]


class ConformalError(ValueError):
    pass


class NotQuadratic(ConformalError):
    def __init__(self, message: str, entry=None):
        super().__init__(message)
        self.entry = entry


def _clean(v: Mapping[int, object]) -> Element:
    out = {}
    for k, p in v.items():
        p = FormalPoly._coerce(p)
        if not p.is_zero():
            out[k] = p
    return out


@dataclass
class ConformalAlgebra:
    generators: SuperBasis
    bracket: PolyTable
    alpha: PolyMap | None = None
    torsion: frozenset[int] = frozenset()
    params: tuple[str, ...] = ()

    def __post_init__(self):
        B = self.generators
        n = len(B)
        clean: PolyTable = {}
        for (i, j), v in self.bracket.items():
            if not (0 <= i < n and 0 <= j < n):
                raise ConformalError(f"bracket entry ({i}, {j}) out of range")
            v = _clean(v)
            for k, p in v.items():
                if B.parities[k] != (B.parities[i] + B.parities[j]) % 2:
                    raise ConformalError(
                        f"[{B.names[i]}_λ {B.names[j]}] has a {B.names[k]} component of the wrong parity"
                    )
                if p.degree(MU) > 0:
                    raise ConformalError("bracket entries may only use D and Lm")
            v = self._reduce(v)
            if v:
                clean[(i, j)] = v
        self.bracket = clean
        if self.alpha is not None:
            self.alpha = self._checked_map(self.alpha)
        self.torsion = frozenset(self.torsion)

    def _checked_map(self, m: PolyMap) -> PolyMap:
        B = self.generators
        out: PolyMap = {}
        for i, v in m.items():
            v = _clean(v)
            for k, p in v.items():
                if B.parities[k] != B.parities[i]:
                    raise ConformalError(f"α({B.names[i]}) has a {B.names[k]} component of the wrong parity")
                if p.degree(LAM) > 0 or p.degree(MU) > 0:
                    raise ConformalError("α entries may only use D")
            if v:
                out[i] = v
        return out

    def with_alpha(self, alpha: PolyMap | None) -> "ConformalAlgebra":
        return ConformalAlgebra(self.generators, dict(self.bracket), alpha, self.torsion, self.params)

    @property
    def rank(self) -> int:
        return len(self.generators)

    def entry(self, i: int, j: int) -> Element:
        return self.bracket.get((i, j), {})

    def _reduce(self, x: Element) -> Element:
        if not self.torsion:
            return x
        out = {}
        for k, p in x.items():
            if k in self.torsion:
                p = p.drop_var(D)
            if not p.is_zero():
                out[k] = p
        return out

    def reduce(self, x: Mapping[int, FormalPoly]) -> Element:
        return self._reduce(_clean(x))

    def generator(self, i: int) -> Element:
        return {i: FormalPoly.const(1)}

    def format(self, x: Mapping[int, FormalPoly]) -> str:
        return format_element(self.generators, x)


def format_element(B: SuperBasis, x: Mapping[int, FormalPoly]) -> str:
    if not x:
        return "0"
    parts = []
    for k in sorted(x):
        p = x[k]
        s = str(p)
        if p == 1:
            parts.append(B.names[k])
        elif p == -1:
            parts.append(f"-{B.names[k]}")
        elif len(p.terms) == 1 and not s.startswith("(") and "/" not in s:
            parts.append(f"{s}*{B.names[k]}")
        else:
            parts.append(f"({s})*{B.names[k]}")
    return "+".join(parts).replace("+-", "-")


# -- element arithmetic -----------------------------------------------------------

def combine(*parts: tuple[object, Mapping[int, FormalPoly]]) -> Element:
    acc: Element = {}
    for coef, x in parts:
        coef = FormalPoly._coerce(coef)
        for k, p in x.items():
            acc[k] = acc.get(k, FormalPoly()) + coef * p
    return {k: p for k, p in acc.items() if not p.is_zero()}


def apply_alpha(R: ConformalAlgebra, x: Mapping[int, FormalPoly], alpha: PolyMap | None = None) -> Element:
    """α(Σ f_i(∂) e_i) = Σ f_i(∂) α(e_i)."""
    al = R.alpha if alpha is None else alpha
    if al is None:
        raise ConformalError("algebra has no α")
    acc: Element = {}
    for i, f in x.items():
        for k, q in al.get(i, {}).items():
            acc[k] = acc.get(k, FormalPoly()) + f * q
    return R.reduce(acc)


def bracket(R: ConformalAlgebra, x: Mapping[int, FormalPoly], y: Mapping[int, FormalPoly], spectral: FormalPoly) -> Element:
    """[x_ν y] for ν = `spectral` (a polynomial in Lm, Mu)."""
    spectral = FormalPoly._coerce(spectral)
    to_left = {D: -spectral}
    to_right = {D: Dp + spectral}
    on_entry = {LAM: spectral}
    acc: Element = {}
    shifted: dict[int, FormalPoly] = {}
    for i, f in x.items():
        fx = f.substitute(to_left)
        if fx.is_zero():
            continue
        for j, g in y.items():
            e = R.bracket.get((i, j))
            if not e:
                continue
            if j not in shifted:
                shifted[j] = g.substitute(to_right)
            factor = fx * shifted[j]
            for k, p in e.items():
                acc[k] = acc.get(k, FormalPoly()) + factor * p.substitute(on_entry)
    return R.reduce(acc)


def lambda_bracket(R: ConformalAlgebra, x: Mapping[int, FormalPoly], y: Mapping[int, FormalPoly]) -> Element:
    return bracket(R, x, y, Lp)


# -- axioms -------------------------------------------------------------------------

def _witness(R: ConformalAlgebra, axiom: str, args: Sequence[int], residual: Element) -> Witness:
    names = R.generators.names
    items = tuple(sorted((names[k], str(p)) for k, p in residual.items()))
    return Witness(axiom, tuple(names[a] for a in args), items)


def skew_residual(R: ConformalAlgebra, i: int, j: int) -> Element:
    """[a_λ b] + (-1)^{|a||b|}[b_{-λ-∂} a]; the ∂ in the spectral argument acts
    on the result, so it is substituted as the formal variable D."""
    p = R.generators.parities
    flipped = {k: q.substitute({LAM: -Lp - Dp}) for k, q in R.entry(j, i).items()}
    return R.reduce(combine((1, R.entry(i, j)), (sign(p[i] * p[j]), flipped)))


def jacobi_residual(R: ConformalAlgebra, a: int, b: int, c: int, alpha: PolyMap | None = None) -> Element:
    """[α(a)_λ[b_μ c]] - [[a_λ b]_{λ+μ} α(c)] - (-1)^{|a||b|}[α(b)_μ[a_λ c]]."""
    p = R.generators.parities
    ea, eb, ec = R.generator(a), R.generator(b), R.generator(c)
    lhs = bracket(R, apply_alpha(R, ea, alpha), bracket(R, eb, ec, Mp), Lp)
    r1 = bracket(R, bracket(R, ea, eb, Lp), apply_alpha(R, ec, alpha), Lp + Mp)
    r2 = bracket(R, apply_alpha(R, eb, alpha), bracket(R, ea, ec, Lp), Mp)
    return combine((1, lhs), (-1, r1), (-sign(p[a] * p[b]), r2))


def check_conformal_axioms(R: ConformalAlgebra) -> CheckReport:
    if R.alpha is None:
        raise ConformalError("algebra has no α; use solve_alpha to find one")
    report = CheckReport("hom-lie-conformal")
    n = R.rank
    for i in range(n):
        for j in range(i, n):
            report.checked += 1
            res = skew_residual(R, i, j)
            if res:
                report.witnesses.append(_witness(R, "skew-symmetry", (i, j), res))
    for a, b, c in itertools.product(range(n), repeat=3):
        report.checked += 1
        res = jacobi_residual(R, a, b, c)
        if res:
            report.witnesses.append(_witness(R, "hom-jacobi", (a, b, c), res))
    return report


def sesquilinearity_residuals(R: ConformalAlgebra, x: Element, y: Element) -> tuple[Element, Element]:
    """([∂x_λ y] + λ[x_λ y], [x_λ ∂y] - (∂+λ)[x_λ y]); both vanish by construction."""
    xy = lambda_bracket(R, x, y)
    dx = R.reduce({k: Dp * f for k, f in x.items()})
    dy = R.reduce({k: Dp * f for k, f in y.items()})
    first = combine((1, lambda_bracket(R, dx, y)), (Lp, xy))
    second = combine((1, lambda_bracket(R, x, dy)), (-(Dp + Lp), xy))
    return R.reduce(first), R.reduce(second)


# -- the GD correspondence -----------------------------------------------------------

def quadratic_from_gd(G: GDStructure) -> ConformalAlgebra:
    """[u_λ v] = [v,u] + (∂+λ)(v∘u) + (-1)^{|u||v|} λ (u∘v); α extended ∂-linearly."""
    A = G.algebra
    br, ci, al = A.product(G.bracket), A.product(G.circ), A.map(G.alpha)
    p = A.basis.parities
    n = A.dim
    table: PolyTable = {}
    for u in range(n):
        for v in range(n):
            s = sign(p[u] * p[v])
            acc: Element = {}
            for k, c in br(v, u).items():
                acc[k] = acc.get(k, FormalPoly()) + FormalPoly.const(c)
            for k, c in ci(v, u).items():
                acc[k] = acc.get(k, FormalPoly()) + (Dp + Lp).scale(c)
            for k, c in ci(u, v).items():
                acc[k] = acc.get(k, FormalPoly()) + Lp.scale(c * s)
            table[(u, v)] = acc
    alpha = {i: {k: FormalPoly.const(c) for k, c in al(i).items()} for i in range(n)}
    return ConformalAlgebra(A.basis, table, alpha, frozenset(), tuple(A.params))


_AFFINE = {(0, 0, 0), (1, 0, 0), (0, 1, 0)}


def gd_from_quadratic(
    R: ConformalAlgebra, bracket_name: str = "bracket", circ: str = "circ", alpha_name: str = "alpha"
) -> GDStructure:
    """Read [u_λ v] = ∂A + λB + C as v∘u = A, u∘v = (-1)^{|u||v|}(B - A), [v,u] = C."""
    B = R.generators
    names = B.names
    p = B.parities
    n = R.rank
    if R.torsion:
        raise NotQuadratic("torsion generators are not part of a free module")
    circ_entries: dict[tuple[int, int], dict[int, Scalar]] = {}
    seen: dict[tuple[int, int], str] = {}
    br_entries: dict[tuple[int, int], dict[int, Scalar]] = {}

    def put(table, key, k, c, source):
        row = table.setdefault(key, {})
        old = row.get(k, Scalar(0))
        if key in seen and seen[key] != source and old != c:
            raise NotQuadratic(
                f"{names[key[0]]}∘{names[key[1]]} read two ways ({old} vs {c}); the bracket is not of the quadratic form",
                (names[key[0]], names[key[1]]),
            )
        row[k] = c

    readings: dict[tuple[int, int], list[tuple[str, dict[int, Scalar]]]] = {}
    for u in range(n):
        for v in range(n):
            e = R.entry(u, v)
            Acoef: dict[int, Scalar] = {}
            Bcoef: dict[int, Scalar] = {}
            for k, poly in e.items():
                bad = set(poly.terms) - _AFFINE
                if bad:
                    raise NotQuadratic(
                        f"[{names[u]}_λ {names[v]}] has a non-affine {names[k]} coefficient {poly}",
                        (names[u], names[v]),
                    )
                Acoef[k] = poly.coeff(1, 0, 0)
                Bcoef[k] = poly.coeff(0, 1, 0)
                c = poly.coeff(0, 0, 0)
                if not c.is_zero():
                    br_entries.setdefault((v, u), {})[k] = c
            s = sign(p[u] * p[v])
            readings.setdefault((v, u), []).append(
                (f"[{names[u]}_λ {names[v]}] D-part", {k: c for k, c in Acoef.items() if not c.is_zero()})
            )
            ks = set(Acoef) | set(Bcoef)
            uv = {k: (Bcoef.get(k, Scalar(0)) - Acoef.get(k, Scalar(0))) * s for k in ks}
            readings.setdefault((u, v), []).append(
                (f"[{names[u]}_λ {names[v]}] Lm-part", {k: c for k, c in uv.items() if not c.is_zero()})
            )
    for key, rs in readings.items():
        (src0, v0), (src1, v1) = rs
        if v0.keys() != v1.keys() or any(v0[k] != v1[k] for k in v0):
            raise NotQuadratic(
                f"{names[key[0]]}∘{names[key[1]]} is read as {format_element(B, {k: FormalPoly.const(c) for k, c in v0.items()})} "
                f"from {src0} but as {format_element(B, {k: FormalPoly.const(c) for k, c in v1.items()})} from {src1}",
                (names[key[0]], names[key[1]]),
            )
        if v0:
            circ_entries[key] = v0
    alpha_entries: dict[int, dict[int, Scalar]] = {}
    for i, row in (R.alpha or {}).items():
        for k, q in row.items():
            if not q.is_constant():
                raise NotQuadratic(f"α({names[i]}) is not ∂-free", (names[i],))
            alpha_entries.setdefault(i, {})[k] = q.constant_term()
    A = SuperAlgebra(
        B,
        {bracket_name: ProductTable(B, br_entries), circ: ProductTable(B, circ_entries)},
        {alpha_name: EvenMap(B, alpha_entries)},
        tuple(R.params),
    )
    return GDStructure(A, bracket_name, circ, alpha_name)


def current_conformal(L: SuperAlgebra, bracket_name: str = "bracket", alpha: str = "alpha") -> ConformalAlgebra:
    """[u_λ v] = [u,v] on generators."""
    rep = check_hom_lie_super(L, bracket_name, alpha)
    if not rep.passed:
        raise PreconditionFailed("input is not Hom-Lie super", rep)
    br, al = L.product(bracket_name), L.map(alpha)
    table = {key: {k: FormalPoly.const(c) for k, c in v.items()} for key, v in br.entries.items()}
    amap = {i: {k: FormalPoly.const(c) for k, c in v.items()} for i, v in al.entries.items()}
    return ConformalAlgebra(L.basis, table, amap, frozenset(), tuple(L.params))


# -- admissible twist maps ----------------------------------------------------------

@dataclass
class AlphaSolution:
    algebra: ConformalAlgebra
    degree_bound: int
    unknowns: list[tuple[int, int, int]]
    space: SolutionSpace
    basis: list[PolyMap] = field(default_factory=list)

    @property
    def dimension(self) -> int:
        return self.space.dimension

    def unknown_label(self, u: tuple[int, int, int]) -> str:
        i, k, d = u
        names = self.algebra.generators.names
        return f"alpha({names[i]})[{names[k]}]*D^{d}"


def default_degree_bound(R: ConformalAlgebra) -> int:
    deg = max((p.degree(D) for e in R.bracket.values() for p in e.values()), default=0)
    return max(deg, 0) + 1


def _unit_alpha(u: tuple[int, int, int]) -> PolyMap:
    i, k, d = u
    return {i: {k: Dp ** d}}


def solve_alpha(R: ConformalAlgebra, degree_bound: int | None = None) -> AlphaSolution:
    """All even α, with entries of ∂-degree at most `degree_bound`, making
    the bracket Hom-Jacobi.  α enters every term of the identity exactly
    once, so the conditions are linear in α's coefficients."""
    if degree_bound is None:
        degree_bound = default_degree_bound(R)
    if degree_bound < 0:
        raise ValueError("degree bound must be nonnegative")
    B = R.generators
    n = R.rank
    base = R.with_alpha(None)
    skew = [(i, j) for i in range(n) for j in range(i, n) if skew_residual(base, i, j)]
    if skew:
        i, j = skew[0]
        raise ConformalError(f"bracket fails skew-symmetry at ({B.names[i]}, {B.names[j]})")
    unknowns = [
        (i, k, d)
        for i in range(n)
        for k in range(n)
        if B.parities[i] == B.parities[k]
        for d in range(degree_bound + 1)
        if not (k in R.torsion and d > 0)
    ]
    rows: dict[tuple, dict] = {}
    for a, b, c in itertools.product(range(n), repeat=3):
        for u in unknowns:
            res = jacobi_residual(base, a, b, c, _unit_alpha(u))
            for k, poly in res.items():
                for mono, coef in poly.terms.items():
                    rows.setdefault((a, b, c, k, mono), {})[u] = coef
    eqs = [(coeffs, 0) for coeffs in rows.values()]
    space = solve_linear(eqs, unknowns)
    basis = []
    for vec in space.kernel:
        m: PolyMap = {}
        for (i, k, d), c in vec.items():
            row = m.setdefault(i, {})
            row[k] = row.get(k, FormalPoly()) + (Dp ** d).scale(c)
        basis.append(m)
    return AlphaSolution(R, degree_bound, unknowns, space, basis)
