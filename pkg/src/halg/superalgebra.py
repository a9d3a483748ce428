"""Finite-dimensional Z2-graded algebras given by structure constants, and
checkers for the Hom-type axiom systems on them.

Vectors are sparse dicts ``{basis index: Scalar}``.  Every identity checked
here is multilinear, so running over homogeneous basis elements is exhaustive.
Residuals are reported as left side minus right side of the identity as it is
usually displayed, e.g. ``(x∘y)∘α(z) - (-1)^{|y||z|}(x∘z)∘α(y)``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .exactalg import Scalar, solve_linear

Vector = dict[int, Scalar]


class AlgebraError(ValueError):
    pass


class ParityError(AlgebraError):
    pass


class UnknownProduct(KeyError):
    pass


class UnknownMap(KeyError):
    pass


def sign(*exponents: int) -> int:
    return -1 if sum(exponents) % 2 else 1


# -- vectors -----------------------------------------------------------------

def vadd(*vs: Mapping[int, Scalar]) -> Vector:
    out: Vector = {}
    for v in vs:
        for k, c in v.items():
            if k in out:
                s = out[k] + c
                if s.is_zero():
                    del out[k]
                else:
                    out[k] = s
            elif not c.is_zero():
                out[k] = c
    return out


def vscale(v: Mapping[int, Scalar], s) -> Vector:
    s = Scalar._coerce(s)
    if s.is_zero():
        return {}
    return {k: c * s for k, c in v.items()}


def vsub(a: Mapping[int, Scalar], b: Mapping[int, Scalar]) -> Vector:
    return vadd(a, vscale(b, -1))


def basis_vector(i: int) -> Vector:
    return {i: Scalar(1)}


# -- data --------------------------------------------------------------------

@dataclass(frozen=True)
class SuperBasis:
    names: tuple[str, ...]
    parities: tuple[int, ...]

    def __post_init__(self):
        if not self.names:
            raise AlgebraError("a basis needs at least one element")
        if len(set(self.names)) != len(self.names):
            raise AlgebraError(f"duplicate basis names in {self.names}")
        if len(self.names) != len(self.parities):
            raise AlgebraError("names and parities differ in length")
        if any(p not in (0, 1) for p in self.parities):
            raise AlgebraError("parities must be 0 or 1")

    @classmethod
    def of(cls, pairs: Iterable[tuple[str, int]]) -> "SuperBasis":
        pairs = list(pairs)
        return cls(tuple(n for n, _ in pairs), tuple(int(p) for _, p in pairs))

    def __len__(self):
        return len(self.names)

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise AlgebraError(f"unknown basis element {name!r}") from None

    def parity(self, i: int) -> int:
        return self.parities[i]

    def vector_parity(self, v: Mapping[int, Scalar]) -> int | None:
        """Parity of a homogeneous vector, None for 0 or mixed."""
        ps = {self.parities[k] for k in v}
        return ps.pop() if len(ps) == 1 else None

    def format(self, v: Mapping[int, Scalar]) -> str:
        if not v:
            return "0"
        parts = []
        for k in sorted(v):
            c = v[k]
            cs = str(c)
            if c == 1:
                parts.append(self.names[k])
            elif c == -1:
                parts.append(f"-{self.names[k]}")
            elif c.is_constant() or cs.startswith("("):
                parts.append(f"{cs}*{self.names[k]}")
            else:
                parts.append(f"({cs})*{self.names[k]}")
        return "+".join(parts).replace("+-", "-")


def _clean(v: Mapping[int, object]) -> Vector:
    out = {}
    for k, c in v.items():
        c = Scalar._coerce(c)
        if not c.is_zero():
            out[k] = c
    return out


class ProductTable:
    """Even bilinear map by structure constants: (i, j) -> {k: c}."""

    __slots__ = ("basis", "entries")

    def __init__(self, basis: SuperBasis, entries: Mapping[tuple[int, int], Mapping[int, object]] = ()):
        self.basis = basis
        clean: dict[tuple[int, int], Vector] = {}
        n = len(basis)
        for (i, j), v in dict(entries).items():
            if not (0 <= i < n and 0 <= j < n):
                raise AlgebraError(f"product entry ({i}, {j}) out of range")
            v = _clean(v)
            for k in v:
                if not 0 <= k < n:
                    raise AlgebraError(f"product value index {k} out of range")
                if basis.parities[k] != (basis.parities[i] + basis.parities[j]) % 2:
                    raise ParityError(
                        f"entry {basis.names[i]}*{basis.names[j]} -> {basis.names[k]} is not even"
                    )
            if v:
                clean[(i, j)] = v
        self.entries = clean

    def __call__(self, i: int, j: int) -> Vector:
        return self.entries.get((i, j), {})

    def apply(self, x: Mapping[int, Scalar], y: Mapping[int, Scalar]) -> Vector:
        acc: Vector = {}
        for i, a in x.items():
            for j, b in y.items():
                e = self.entries.get((i, j))
                if e:
                    acc = vadd(acc, vscale(e, a * b))
        return acc

    def is_zero(self) -> bool:
        return not self.entries

    def __eq__(self, other):
        return isinstance(other, ProductTable) and _tables_equal(self.entries, other.entries)

    __hash__ = None

    def __repr__(self):
        items = ", ".join(
            f"{self.basis.names[i]}*{self.basis.names[j]}={self.basis.format(v)}"
            for (i, j), v in sorted(self.entries.items())
        )
        return f"ProductTable({items})"


class EvenMap:
    """Parity-preserving linear map: i -> {k: c}."""

    __slots__ = ("basis", "entries")

    def __init__(self, basis: SuperBasis, entries: Mapping[int, Mapping[int, object]] = ()):
        self.basis = basis
        clean: dict[int, Vector] = {}
        n = len(basis)
        for i, v in dict(entries).items():
            if not 0 <= i < n:
                raise AlgebraError(f"map entry {i} out of range")
            v = _clean(v)
            for k in v:
                if not 0 <= k < n:
                    raise AlgebraError(f"map value index {k} out of range")
                if basis.parities[k] != basis.parities[i]:
                    raise ParityError(f"map entry {basis.names[i]} -> {basis.names[k]} is not even")
            if v:
                clean[i] = v
        self.entries = clean

    @classmethod
    def identity(cls, basis: SuperBasis) -> "EvenMap":
        return cls(basis, {i: {i: 1} for i in range(len(basis))})

    @classmethod
    def zero(cls, basis: SuperBasis) -> "EvenMap":
        return cls(basis, {})

    def __call__(self, i: int) -> Vector:
        return self.entries.get(i, {})

    def apply(self, x: Mapping[int, Scalar]) -> Vector:
        acc: Vector = {}
        for i, a in x.items():
            e = self.entries.get(i)
            if e:
                acc = vadd(acc, vscale(e, a))
        return acc

    def compose(self, other: "EvenMap") -> "EvenMap":
        """self after other."""
        return EvenMap(self.basis, {i: self.apply(other(i)) for i in range(len(self.basis))})

    def __eq__(self, other):
        return isinstance(other, EvenMap) and _tables_equal(self.entries, other.entries)

    __hash__ = None

    def __repr__(self):
        items = ", ".join(
            f"{self.basis.names[i]}->{self.basis.format(v)}" for i, v in sorted(self.entries.items())
        )
        return f"EvenMap({items})"


def _tables_equal(a: Mapping, b: Mapping) -> bool:
    if a.keys() != b.keys():
        return False
    for key in a:
        va, vb = a[key], b[key]
        if va.keys() != vb.keys() or any(va[k] != vb[k] for k in va):
            return False
    return True


@dataclass(frozen=True)
class SuperAlgebra:
    basis: SuperBasis
    products: Mapping[str, ProductTable] = field(default_factory=dict)
    maps: Mapping[str, EvenMap] = field(default_factory=dict)
    params: tuple[str, ...] = ()

    def __post_init__(self):
        for name, t in self.products.items():
            if t.basis != self.basis:
                raise AlgebraError(f"product {name!r} is over a different basis")
        for name, m in self.maps.items():
            if m.basis != self.basis:
                raise AlgebraError(f"map {name!r} is over a different basis")

    @property
    def dim(self) -> int:
        return len(self.basis)

    def product(self, name: str) -> ProductTable:
        try:
            return self.products[name]
        except KeyError:
            raise UnknownProduct(name) from None

    def map(self, name: str) -> EvenMap:
        try:
            return self.maps[name]
        except KeyError:
            raise UnknownMap(name) from None

    def with_product(self, name: str, table: ProductTable) -> "SuperAlgebra":
        return SuperAlgebra(self.basis, {**self.products, name: table}, dict(self.maps), self.params)

    def with_map(self, name: str, m: EvenMap) -> "SuperAlgebra":
        return SuperAlgebra(self.basis, dict(self.products), {**self.maps, name: m}, self.params)

    def parity(self, i: int) -> int:
        return self.basis.parities[i]

    def table(self, entries: Mapping[tuple[int, int], Mapping[int, object]]) -> ProductTable:
        return ProductTable(self.basis, entries)


def apply_product(A: SuperAlgebra, product: str, x: Mapping[int, Scalar], y: Mapping[int, Scalar]) -> Vector:
    return A.product(product).apply(x, y)


# -- reports -----------------------------------------------------------------

@dataclass(frozen=True)
class Witness:
    axiom: str
    args: tuple[str, ...]
    residual: tuple[tuple[str, str], ...]

    def key(self):
        return (self.axiom, self.args, self.residual)

    def as_dict(self) -> dict:
        return {"axiom": self.axiom, "args": list(self.args), "residual": dict(self.residual)}

    def __str__(self):
        return f"{self.axiom} at ({', '.join(self.args)}): residual {format_terms(self.residual)}"


def format_terms(terms: Iterable[tuple[str, object]]) -> str:
    """Render (label, coefficient) pairs as a signed sum."""
    parts = []
    for label, c in terms:
        cs = str(c)
        if label == "value":
            parts.append(cs if _atomic(cs) else f"({cs})")
        elif cs == "1":
            parts.append(label)
        elif cs == "-1":
            parts.append(f"-{label}")
        elif _atomic(cs):
            parts.append(f"{cs}*{label}")
        else:
            parts.append(f"({cs})*{label}")
    return "+".join(parts).replace("+-", "-") if parts else "0"


def _atomic(cs: str) -> bool:
    body = cs[1:] if cs.startswith("-") else cs
    return body.replace("_", "").isalnum()


def make_witness(axiom: str, args: Sequence[str], residual: Mapping, names: Sequence[str] | None = None) -> Witness:
    """`residual` maps labels (or basis indices when `names` is given) to
    coefficient objects with a meaningful str()."""
    items = []
    for k, c in residual.items():
        label = names[k] if names is not None else str(k)
        items.append((label, str(c)))
    items.sort()
    return Witness(axiom, tuple(args), tuple(items))


@dataclass
class CheckReport:
    title: str
    witnesses: list[Witness] = field(default_factory=list)
    checked: int = 0
    parts: list["CheckReport"] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.witnesses

    @property
    def verdict(self) -> str:
        return "pass" if self.passed else "fail"

    def witness_set(self) -> set:
        return {w.key() for w in self.witnesses}

    def axioms_failed(self) -> set[str]:
        return {w.axiom for w in self.witnesses}

    @classmethod
    def combine(cls, title: str, *reports: "CheckReport") -> "CheckReport":
        out = cls(title)
        for r in reports:
            out.witnesses.extend(r.witnesses)
            out.checked += r.checked
            out.parts.append(r)
        return out

    def as_dict(self) -> dict:
        d = {
            "title": self.title,
            "verdict": self.verdict,
            "checked": self.checked,
            "witnesses": [w.as_dict() for w in self.witnesses],
        }
        if self.parts:
            d["parts"] = [{"title": p.title, "verdict": p.verdict} for p in self.parts]
        return d

    def summary(self, limit: int = 10) -> str:
        lines = [f"{self.title}: {self.verdict.upper()} ({self.checked} instances checked)"]
        for w in self.witnesses[:limit]:
            lines.append(f"  {w}")
        if len(self.witnesses) > limit:
            lines.append(f"  ... {len(self.witnesses) - limit} more witnesses")
        return "\n".join(lines)


class _Checker:
    """Accumulates residuals over basis tuples."""

    def __init__(self, title: str, A: SuperAlgebra):
        self.report = CheckReport(title)
        self.names = A.basis.names

    def record(self, axiom: str, args: Sequence[int], residual: Vector):
        self.report.checked += 1
        if residual:
            self.report.witnesses.append(
                make_witness(axiom, [self.names[i] for i in args], residual, self.names)
            )


def _triples(n: int):
    return itertools.product(range(n), repeat=3)


def _pairs(n: int):
    return itertools.product(range(n), repeat=2)


# -- axiom checkers ------------------------------------------------------------

def _skew_residual(A, br, i, j) -> Vector:
    p = A.basis.parities
    return vadd(br(i, j), vscale(br(j, i), sign(p[i] * p[j])))


def hom_jacobi_residual(A: SuperAlgebra, br: ProductTable, al: EvenMap, x: int, y: int, z: int) -> Vector:
    p = A.basis.parities
    X, Y, Z = (basis_vector(t) for t in (x, y, z))
    return vadd(
        vscale(br.apply(br(x, y), al(z)), sign(p[x] * p[z])),
        vscale(br.apply(br(y, z), al(x)), sign(p[x] * p[y])),
        vscale(br.apply(br(z, x), al(y)), sign(p[y] * p[z])),
    )


def check_hom_lie_super(A: SuperAlgebra, bracket: str = "bracket", alpha: str = "alpha") -> CheckReport:
    br, al = A.product(bracket), A.map(alpha)
    c = _Checker(f"hom-lie-super[{bracket},{alpha}]", A)
    n = A.dim
    for i in range(n):
        for j in range(i, n):
            c.record("skew-symmetry", (i, j), _skew_residual(A, br, i, j))
    for x, y, z in _triples(n):
        c.record("hom-jacobi", (x, y, z), hom_jacobi_residual(A, br, al, x, y, z))
    return c.report


def novikov_residuals(A: SuperAlgebra, ci: ProductTable, al: EvenMap, x: int, y: int, z: int) -> tuple[Vector, Vector]:
    """Residuals of the Hom-Novikov pair: left-symmetry type and
    right-commutativity type identities."""
    p = A.basis.parities
    xy_az = ci.apply(ci(x, y), al(z))
    ax_yz = ci.apply(al(x), ci(y, z))
    yx_az = ci.apply(ci(y, x), al(z))
    ay_xz = ci.apply(al(y), ci(x, z))
    xz_ay = ci.apply(ci(x, z), al(y))
    left_sym = vsub(vsub(xy_az, ax_yz), vscale(vsub(yx_az, ay_xz), sign(p[x] * p[y])))
    right_comm = vsub(xy_az, vscale(xz_ay, sign(p[y] * p[z])))
    return left_sym, right_comm


def check_hom_novikov_super(A: SuperAlgebra, circ: str = "circ", alpha: str = "alpha") -> CheckReport:
    ci, al = A.product(circ), A.map(alpha)
    c = _Checker(f"hom-novikov-super[{circ},{alpha}]", A)
    for x, y, z in _triples(A.dim):
        left_sym, right_comm = novikov_residuals(A, ci, al, x, y, z)
        c.record("hom-left-symmetry", (x, y, z), left_sym)
        c.record("hom-right-commutativity", (x, y, z), right_comm)
    return c.report


def check_hom_associative(
    A: SuperAlgebra, mul: str = "mul", alpha: str = "alpha", require_commutative: bool = False
) -> CheckReport:
    mu, al = A.product(mul), A.map(alpha)
    title = f"{'commutative ' if require_commutative else ''}hom-associative[{mul},{alpha}]"
    c = _Checker(title, A)
    p = A.basis.parities
    n = A.dim
    if require_commutative:
        for i in range(n):
            for j in range(i, n):
                c.record("supercommutativity", (i, j), vsub(mu(i, j), vscale(mu(j, i), sign(p[i] * p[j]))))
    for x, y, z in _triples(n):
        c.record("hom-associativity", (x, y, z), vsub(mu.apply(al(x), mu(y, z)), mu.apply(mu(x, y), al(z))))
    return c.report


def gd_compatibility_residual(A, br, ci, al, x, y, z) -> Vector:
    p = A.basis.parities
    s = sign(p[y] * p[z])
    return vadd(
        br.apply(ci(x, y), al(z)),
        vscale(br.apply(ci(x, z), al(y)), -s),
        ci.apply(br(x, y), al(z)),
        vscale(ci.apply(br(x, z), al(y)), -s),
        vscale(ci.apply(al(x), br(y, z)), -1),
    )


def check_gd_compatibility(
    A: SuperAlgebra, bracket: str = "bracket", circ: str = "circ", alpha: str = "alpha"
) -> CheckReport:
    br, ci, al = A.product(bracket), A.product(circ), A.map(alpha)
    c = _Checker(f"gd-compatibility[{bracket},{circ},{alpha}]", A)
    for x, y, z in _triples(A.dim):
        c.record("gd-compatibility", (x, y, z), gd_compatibility_residual(A, br, ci, al, x, y, z))
    return c.report


def check_gd(A: SuperAlgebra, bracket: str = "bracket", circ: str = "circ", alpha: str = "alpha") -> CheckReport:
    """Full super Hom-GD bialgebra verdict: Hom-Lie super, Hom-Novikov super
    and the compatibility identity."""
    return CheckReport.combine(
        f"super-hom-gd[{bracket},{circ},{alpha}]",
        check_hom_lie_super(A, bracket, alpha),
        check_hom_novikov_super(A, circ, alpha),
        check_gd_compatibility(A, bracket, circ, alpha),
    )


def check_hom_poisson(A: SuperAlgebra, mul: str = "mul", bracket: str = "bracket", alpha: str = "alpha") -> CheckReport:
    mu, br, al = A.product(mul), A.product(bracket), A.map(alpha)
    c = _Checker("hom-poisson-compatibility", A)
    p = A.basis.parities
    for x, y, z in _triples(A.dim):
        lhs = br.apply(al(x), mu(y, z))
        rhs = vadd(
            vscale(mu.apply(al(y), br(x, z)), sign(p[x] * p[y])),
            vscale(mu.apply(al(z), br(x, y)), sign(p[z] * (p[x] + p[y]))),
        )
        c.record("hom-poisson-leibniz", (x, y, z), vsub(lhs, rhs))
    return CheckReport.combine(
        f"hom-poisson[{mul},{bracket},{alpha}]",
        check_hom_associative(A, mul, alpha, require_commutative=True),
        check_hom_lie_super(A, bracket, alpha),
        c.report,
    )


# -- map properties --------------------------------------------------------------

@dataclass(frozen=True)
class Endomorphism:
    products: tuple[str, ...]


@dataclass(frozen=True)
class Derivation:
    product: str


@dataclass(frozen=True)
class CommutesWith:
    other: str


@dataclass(frozen=True)
class TwistedDerivation:
    bracket: str
    shift: Scalar


def check_map_property(A: SuperAlgebra, m: str, prop) -> CheckReport:
    f = A.map(m)
    n = A.dim
    if isinstance(prop, Endomorphism):
        c = _Checker(f"endomorphism[{m}; {','.join(prop.products)}]", A)
        for name in prop.products:
            t = A.product(name)
            for i, j in _pairs(n):
                c.record(f"endomorphism:{name}", (i, j), vsub(f.apply(t(i, j)), t.apply(f(i), f(j))))
        return c.report
    if isinstance(prop, Derivation):
        t = A.product(prop.product)
        c = _Checker(f"derivation[{m}; {prop.product}]", A)
        for i, j in _pairs(n):
            rhs = vadd(t.apply(f(i), basis_vector(j)), t.apply(basis_vector(i), f(j)))
            c.record(f"derivation:{prop.product}", (i, j), vsub(f.apply(t(i, j)), rhs))
        return c.report
    if isinstance(prop, CommutesWith):
        g = A.map(prop.other)
        c = _Checker(f"commutes[{m}; {prop.other}]", A)
        for i in range(n):
            c.record(f"commutes-with:{prop.other}", (i,), vsub(f.apply(g(i)), g.apply(f(i))))
        return c.report
    if isinstance(prop, TwistedDerivation):
        t = A.product(prop.bracket)
        c = _Checker(f"twisted-derivation[{m}; {prop.bracket}, shift={prop.shift}]", A)
        for i, j in _pairs(n):
            rhs = vadd(
                t.apply(f(i), basis_vector(j)),
                t.apply(basis_vector(i), f(j)),
                vscale(t(i, j), prop.shift),
            )
            c.record(f"twisted-derivation:{prop.bracket}", (i, j), vsub(f.apply(t(i, j)), rhs))
        return c.report
    raise TypeError(f"unknown map property {prop!r}")


# -- subspaces -----------------------------------------------------------------

def centralizer_of_alpha_image(A: SuperAlgebra, bracket: str = "bracket", alpha: str = "alpha") -> list[Vector]:
    """Basis of {x : [x, alpha(y)] = 0 for all y}, homogeneous elements first
    even then odd."""
    br, al = A.product(bracket), A.map(alpha)
    images = [al(j) for j in range(A.dim)]
    out: list[Vector] = []
    for parity in (0, 1):
        cols = [i for i in range(A.dim) if A.parity(i) == parity]
        if not cols:
            continue
        eqs = []
        for j, img in enumerate(images):
            rows: dict[int, dict[int, Scalar]] = {}
            for i in cols:
                for k, c in br.apply(basis_vector(i), img).items():
                    rows.setdefault(k, {})[i] = c
            eqs.extend((coeffs, 0) for coeffs in rows.values())
        sol = solve_linear(eqs, unknowns=cols)
        out.extend(sol.kernel)
    return out


def in_span(v: Mapping[int, Scalar], basis: Sequence[Mapping[int, Scalar]]) -> bool:
    if not v:
        return True
    unknowns = list(range(len(basis)))
    keys = set(v)
    for b in basis:
        keys.update(b)
    eqs = []
    for k in keys:
        coeffs = {t: b[k] for t, b in enumerate(basis) if k in b}
        eqs.append((coeffs, v.get(k, Scalar(0))))
    try:
        solve_linear(eqs, unknowns=unknowns)
    except Exception as exc:  # Inconsistent
        from .exactalg import Inconsistent

        if isinstance(exc, Inconsistent):
            return False
        raise
    return True
