"""Ways of building super Hom-GD bialgebras out of simpler data.

Every builder checks its hypotheses first, raising `PreconditionFailed` with the
failing report, then re-verifies its output with the checkers of
`halg.superalgebra` and attaches that report as a certificate.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .exactalg import Scalar
from .superalgebra import (
    CheckReport,
    CommutesWith,
    Derivation,
    Endomorphism,
    EvenMap,
    ProductTable,
    SuperAlgebra,
    TwistedDerivation,
    Vector,
    _Checker,
    basis_vector,
    centralizer_of_alpha_image,
    check_gd,
    check_hom_associative,
    check_hom_lie_super,
    check_hom_novikov_super,
    check_hom_poisson,
    check_map_property,
    in_span,
    sign,
    vadd,
    vscale,
    vsub,
)


class PreconditionFailed(ValueError):
    def __init__(self, message: str, report: CheckReport):
        super().__init__(message)
        self.report = report


def _require(report: CheckReport, what: str) -> CheckReport:
    if not report.passed:
        raise PreconditionFailed(f"precondition failed: {what}", report)
    return report


@dataclass
class GDStructure:
    algebra: SuperAlgebra
    bracket: str = "bracket"
    circ: str = "circ"
    alpha: str = "alpha"
    certificate: CheckReport | None = None

    def __post_init__(self):
        self.algebra.product(self.bracket)
        self.algebra.product(self.circ)
        self.algebra.map(self.alpha)

    @property
    def basis(self):
        return self.algebra.basis

    def check(self) -> CheckReport:
        return check_gd(self.algebra, self.bracket, self.circ, self.alpha)

    def certify(self) -> "GDStructure":
        self.certificate = self.check()
        return self

    @property
    def certified(self) -> bool:
        return self.certificate is not None and self.certificate.passed


def _table_from(A: SuperAlgebra, rule) -> ProductTable:
    n = A.dim
    return ProductTable(A.basis, {(i, j): rule(i, j) for i in range(n) for j in range(n)})


def supercommutator_table(A: SuperAlgebra, circ: str) -> ProductTable:
    ci = A.product(circ)
    p = A.basis.parities
    return _table_from(A, lambda i, j: vsub(ci(i, j), vscale(ci(j, i), sign(p[i] * p[j]))))


def supercommutator_gd(
    A: SuperAlgebra, circ: str = "circ", alpha: str = "alpha", bracket: str = "bracket"
) -> GDStructure:
    """[x,y] = x∘y - (-1)^{|x||y|} y∘x on a Hom-Novikov superalgebra."""
    _require(check_hom_novikov_super(A, circ, alpha), "input is not Hom-Novikov super")
    B = A.with_product(bracket, supercommutator_table(A, circ))
    return GDStructure(B, bracket, circ, alpha).certify()


@dataclass
class TwistResult:
    algebra: SuperAlgebra
    certificate: CheckReport | None


_TWIST_KINDS = ("novikov", "gd", "lie", "assoc", "commutative-assoc", None)


def twist_table(A: SuperAlgebra, product: str, alpha: str) -> ProductTable:
    t, al = A.product(product), A.map(alpha)
    return _table_from(A, lambda i, j: t.apply(al(i), al(j)))


def yau_twist(
    A: SuperAlgebra,
    products: Sequence[str],
    alpha: str = "alpha",
    kind: str | None = None,
    bracket: str = "bracket",
    circ: str = "circ",
) -> TwistResult:
    """Replace each listed product by α(x)·α(y).

    `kind` names the classical structure the input is supposed to carry
    ("novikov", "gd", "lie", "assoc", "commutative-assoc"); it is checked with
    α = id before twisting and the Hom version is certified afterwards.
    """
    if kind not in _TWIST_KINDS:
        raise ValueError(f"unknown twist kind {kind!r}")
    _require(check_map_property(A, alpha, Endomorphism(tuple(products))), f"{alpha} is not an endomorphism")
    if kind is not None:
        classical = A.with_map("_id", EvenMap.identity(A.basis))
        _require(_structure_report(classical, kind, "_id", bracket, circ, products), f"input is not {kind}")
    B = A
    for name in products:
        B = B.with_product(name, twist_table(A, name, alpha))
    cert = _structure_report(B, kind, alpha, bracket, circ, products) if kind else None
    return TwistResult(B, cert)


def _structure_report(A, kind, alpha, bracket, circ, products) -> CheckReport:
    if kind == "novikov":
        return check_hom_novikov_super(A, products[0] if len(products) == 1 else circ, alpha)
    if kind == "gd":
        return check_gd(A, bracket, circ, alpha)
    if kind == "lie":
        return check_hom_lie_super(A, products[0] if len(products) == 1 else bracket, alpha)
    mul = products[0]
    return check_hom_associative(A, mul, alpha, require_commutative=(kind == "commutative-assoc"))


def _derived_products(A: SuperAlgebra, mul: str, D: str, shift: Scalar) -> tuple[ProductTable, ProductTable]:
    mu, d = A.product(mul), A.map(D)
    p = A.basis.parities

    def circ(i, j):
        return vadd(mu.apply(basis_vector(i), d(j)), vscale(mu(i, j), shift))

    def bracket(i, j):
        return vsub(mu.apply(basis_vector(i), d(j)), vscale(mu.apply(basis_vector(j), d(i)), sign(p[i] * p[j])))

    return _table_from(A, circ), _table_from(A, bracket)


def derivation_construction(
    A: SuperAlgebra,
    mul: str = "mul",
    alpha: str = "alpha",
    D: str = "D",
    shift=0,
    bracket: str = "bracket",
    circ: str = "circ",
) -> GDStructure:
    """x∘y = x·D(y) + shift·x·y and [x,y] = x·D(y) - (-1)^{|x||y|} y·D(x)."""
    shift = Scalar._coerce(shift)
    _require(check_hom_associative(A, mul, alpha, require_commutative=True), "not commutative Hom-associative")
    _require(check_map_property(A, D, Derivation(mul)), f"{D} is not a derivation of {mul}")
    _require(check_map_property(A, D, CommutesWith(alpha)), f"{D} does not commute with {alpha}")
    ci, br = _derived_products(A, mul, D, shift)
    B = A.with_product(circ, ci).with_product(bracket, br)
    return GDStructure(B, bracket, circ, alpha).certify()


def poisson_construction(
    P: SuperAlgebra,
    mul: str = "mul",
    bracket: str = "bracket",
    alpha: str = "alpha",
    D: str = "D",
    shift=0,
    circ: str = "circ",
) -> GDStructure:
    """Keep the Poisson bracket, take x∘y = x·D(y) + shift·x·y."""
    shift = Scalar._coerce(shift)
    _require(check_hom_poisson(P, mul, bracket, alpha), "not Hom-Poisson")
    _require(check_map_property(P, D, Derivation(mul)), f"{D} is not a derivation of {mul}")
    _require(check_map_property(P, D, CommutesWith(alpha)), f"{D} does not commute with {alpha}")
    _require(
        check_map_property(P, D, TwistedDerivation(bracket, shift)),
        f"{D} does not satisfy the shifted derivation rule on {bracket}",
    )
    ci, _ = _derived_products(P, mul, D, shift)
    B = P.with_product(circ, ci)
    return GDStructure(B, bracket, circ, alpha).certify()


# -- star products -------------------------------------------------------------

@dataclass
class StarCandidate:
    name: str
    structure: GDStructure
    conditions: CheckReport
    direct: CheckReport

    @property
    def consistent(self) -> bool:
        """Condition verdict agrees with the direct GD verdict."""
        return self.conditions.passed == self.direct.passed


@dataclass
class StarResult:
    star: StarCandidate
    star_prime: StarCandidate
    centralizer: list[Vector] = field(default_factory=list)


def star_constructions(
    L: SuperAlgebra, bracket: str = "bracket", alpha: str = "alpha", f: str = "f"
) -> StarResult:
    """x⋆y = [f(x),y] and x⋆'y = [x,f(y)], with the closed-form conditions
    for each to give a super Hom-GD bialgebra evaluated next to the direct
    verdict."""
    _require(check_hom_lie_super(L, bracket, alpha), "not Hom-Lie super")
    _require(check_map_property(L, f, CommutesWith(alpha)), f"{f} does not commute with {alpha}")
    br, al, fm = L.product(bracket), L.map(alpha), L.map(f)
    n = L.dim
    p = L.basis.parities
    Z = centralizer_of_alpha_image(L, bracket, alpha)
    e = basis_vector

    star = _table_from(L, lambda i, j: br.apply(fm(i), e(j)))
    star_p = _table_from(L, lambda i, j: br.apply(e(i), fm(j)))

    def bra(u, v):
        return br.apply(u, v)

    def fa(u):
        return fm.apply(u)

    # conditions for ⋆
    c1 = _Checker("star-conditions", L)
    for x in range(n):
        for y in range(n):
            w = vsub(fa(vadd(bra(fm(x), e(y)), bra(e(x), fm(y)))), bra(fm(x), fm(y)))
            c1.record("centralizer:f([fx,y]+[x,fy])-[fx,fy]", (x, y), {} if in_span(w, Z) else w)
    for x in range(n):
        for y in range(n):
            for z in range(n):
                r = vsub(
                    bra(fa(bra(fm(x), e(y))), al(z)),
                    vscale(bra(fa(bra(fm(x), e(z))), al(y)), sign(p[y] * p[z])),
                )
                c1.record("[f([fx,y]),az]-sym", (x, y, z), r)

    # conditions for ⋆'
    c2 = _Checker("star-prime-conditions", L)
    for x in range(n):
        for y in range(n):
            for z in range(n):
                r = vadd(
                    bra(vadd(bra(e(x), fm(y)), bra(fm(x), e(y))), fa(al(z))),
                    vscale(bra(al(x), fa(bra(e(y), fm(z)))), -1),
                    vscale(bra(al(y), fa(bra(e(x), fm(z)))), sign(p[x] * p[y])),
                )
                c2.record("[[x,fy]+[fx,y],f(az)]-...", (x, y, z), r)
    for y in range(n):
        for z in range(n):
            w = bra(fm(y), fm(z))
            c2.record("centralizer:[fy,fz]", (y, z), {} if in_span(w, Z) else w)
            w = vsub(vadd(bra(e(y), fm(z)), bra(fm(y), e(z))), fa(bra(e(y), e(z))))
            c2.record("centralizer:[y,fz]+[fy,z]-f([y,z])", (y, z), {} if in_span(w, Z) else w)

    s1 = GDStructure(L.with_product("star", star), bracket, "star", alpha).certify()
    s2 = GDStructure(L.with_product("star_prime", star_p), bracket, "star_prime", alpha).certify()
    return StarResult(
        StarCandidate("star", s1, c1.report, s1.certificate),
        StarCandidate("star_prime", s2, c2.report, s2.certificate),
        Z,
    )
