"""JSON algebra files (`*.halg`).

Layout (schema 1):

    {
      "schema": 1,
      "name": "exam32",
      "params": ["lam"],
      "basis": [["x1", 0], ["x2", 0], ["y", 1]],
      "products": {"circ": [["x1", "x1", [["x2", "1"]]], ...]},
      "maps": {"alpha": [["x1", [["x2", "1"]]], ...]},
      "conformal": {
        "bracket": [["x1", "x1", [["x2", "D+2*Lm"]]], ...],
        "alpha": [["x1", [["x2", "1"]]]],
        "torsion": []
      }
    }

Entries refer to basis elements by name.  Coefficients are literals in the
parameters; conformal coefficients may also use D (for ∂) and Lm (for λ).
Cocycle files carry {"schema": 1, "kind": "cocycle", "cocycles": [[["u", "v", "Lm^3"], ...], ...]}.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from .exactalg import LiteralError, parse_formal, parse_scalar
from .superalgebra import AlgebraError, EvenMap, ProductTable, SuperAlgebra, SuperBasis

SCHEMA = 1


class SpecError(ValueError):
    def __init__(self, message: str, path: str = ""):
        super().__init__(f"{path}: {message}" if path else message)
        self.path = path


class ParseError(SpecError):
    """Malformed document: bad JSON, wrong shapes, unparsable literals."""


class ValidationError(SpecError):
    """Well-formed document violating names, parities or schema rules."""


Terms = tuple[tuple[str, Any], ...]


@dataclass
class ConformalSpec:
    bracket: dict[tuple[str, str], Terms] = field(default_factory=dict)
    alpha: dict[str, Terms] | None = None
    torsion: tuple[str, ...] = ()


@dataclass
class AlgebraSpec:
    basis: tuple[tuple[str, int], ...]
    params: tuple[str, ...] = ()
    products: dict[str, dict[tuple[str, str], Terms]] = field(default_factory=dict)
    maps: dict[str, dict[str, Terms]] = field(default_factory=dict)
    conformal: ConformalSpec | None = None
    name: str = ""
    notes: str = ""

    @property
    def super_basis(self) -> SuperBasis:
        return SuperBasis.of(self.basis)

    def to_algebra(self) -> SuperAlgebra:
        B = self.super_basis
        idx = B.index
        products = {
            name: ProductTable(B, {(idx(a), idx(b)): {idx(k): c for k, c in terms} for (a, b), terms in t.items()})
            for name, t in self.products.items()
        }
        maps = {
            name: EvenMap(B, {idx(a): {idx(k): c for k, c in terms} for a, terms in m.items()})
            for name, m in self.maps.items()
        }
        return SuperAlgebra(B, products, maps, self.params)

    def to_conformal(self):
        from .conformal import ConformalAlgebra

        if self.conformal is None:
            raise ValidationError("file has no conformal section", "conformal")
        B = self.super_basis
        idx = B.index
        cs = self.conformal
        table = {(idx(a), idx(b)): {idx(k): p for k, p in terms} for (a, b), terms in cs.bracket.items()}
        alpha = None
        if cs.alpha is not None:
            alpha = {idx(a): {idx(k): p for k, p in terms} for a, terms in cs.alpha.items()}
        return ConformalAlgebra(B, table, alpha, frozenset(idx(t) for t in cs.torsion), self.params)


# -- building specs from objects ------------------------------------------------------

def _terms(B: SuperBasis, v) -> Terms:
    return tuple((B.names[k], v[k]) for k in sorted(v))


def spec_from_algebra(A: SuperAlgebra, name: str = "") -> AlgebraSpec:
    B = A.basis
    products = {
        pname: {(B.names[i], B.names[j]): _terms(B, v) for (i, j), v in sorted(t.entries.items()) if v}
        for pname, t in A.products.items()
    }
    maps = {mname: {B.names[i]: _terms(B, v) for i, v in sorted(m.entries.items()) if v} for mname, m in A.maps.items()}
    return AlgebraSpec(tuple(zip(B.names, B.parities)), tuple(A.params), products, maps, None, name)


def spec_from_conformal(R, name: str = "") -> AlgebraSpec:
    B = R.generators
    cs = ConformalSpec(
        {(B.names[i], B.names[j]): _terms(B, v) for (i, j), v in sorted(R.bracket.items())},
        None if R.alpha is None else {B.names[i]: _terms(B, v) for i, v in sorted(R.alpha.items())},
        tuple(B.names[t] for t in sorted(R.torsion)),
    )
    return AlgebraSpec(tuple(zip(B.names, B.parities)), tuple(R.params), {}, {}, cs, name)


# -- parsing ----------------------------------------------------------------------------

def _expect(cond: bool, msg: str, path: str):
    if not cond:
        raise ParseError(msg, path)


def _parse_terms(raw, path: str, names: dict[str, int], parse, parity: int | None, what: str) -> Terms:
    _expect(isinstance(raw, list), "expected a list of [name, coefficient] pairs", path)
    out = []
    seen = set()
    for n, item in enumerate(raw):
        p = f"{path}[{n}]"
        _expect(isinstance(item, list) and len(item) == 2, "expected [name, coefficient]", p)
        k, lit = item
        _expect(isinstance(k, str), "basis name must be a string", p)
        if k not in names:
            raise ValidationError(f"unknown basis element {k!r}", p)
        if k in seen:
            raise ValidationError(f"{k!r} listed twice", p)
        seen.add(k)
        if isinstance(lit, (int,)) and not isinstance(lit, bool):
            lit = str(lit)
        _expect(isinstance(lit, str), "coefficient must be a string literal or integer", p)
        try:
            c = parse(lit)
        except LiteralError as e:
            raise ParseError(f"bad coefficient {lit!r}: {e}", p) from None
        if parity is not None and names[k] != parity:
            raise ValidationError(f"{what} has a component {k!r} of the wrong parity", p)
        out.append((k, c))
    return tuple(out)


def parse_spec(document: str | dict) -> AlgebraSpec:
    if isinstance(document, str):
        try:
            doc = json.loads(document)
        except json.JSONDecodeError as e:
            raise ParseError(f"invalid JSON: {e.msg} (line {e.lineno}, column {e.colno})") from None
    else:
        doc = document
    _expect(isinstance(doc, dict), "top level must be an object", "")
    schema = doc.get("schema", SCHEMA)
    if schema != SCHEMA:
        raise ValidationError(f"unsupported schema {schema!r}", "schema")
    known = {"schema", "name", "params", "basis", "products", "maps", "conformal", "notes"}
    extra = set(doc) - known
    if extra:
        raise ValidationError(f"unknown keys {sorted(extra)}", "")

    params = doc.get("params", [])
    _expect(isinstance(params, list) and all(isinstance(p, str) for p in params), "params must be a list of names", "params")
    for n, p in enumerate(params):
        if not p.isidentifier() or p in ("D", "Lm", "Mu"):
            raise ValidationError(f"bad parameter name {p!r}", f"params[{n}]")
    params = tuple(params)
    if len(set(params)) != len(params):
        raise ValidationError("duplicate parameter names", "params")

    raw_basis = doc.get("basis")
    _expect(isinstance(raw_basis, list), "basis must be a list of [name, parity]", "basis")
    if not raw_basis:
        raise ValidationError("basis is empty", "basis")
    basis = []
    for n, item in enumerate(raw_basis):
        p = f"basis[{n}]"
        _expect(isinstance(item, list) and len(item) == 2, "expected [name, parity]", p)
        name, par = item
        _expect(isinstance(name, str), "basis name must be a string", p)
        if not name or not name.replace("_", "").isalnum() or name in params:
            raise ValidationError(f"bad basis name {name!r}", p)
        if par not in (0, 1) or isinstance(par, bool):
            raise ValidationError(f"parity must be 0 or 1, got {par!r}", p)
        basis.append((name, par))
    names = {}
    for n, (name, par) in enumerate(basis):
        if name in names:
            raise ValidationError(f"duplicate basis name {name!r}", f"basis[{n}]")
        names[name] = par

    def scalar(lit):
        return parse_scalar(lit, params)

    def formal(lit):
        return parse_formal(lit, params)

    def d_only(lit):
        p = parse_formal(lit, params)
        if p.uses() - {"D"}:
            raise LiteralError("only D may appear here")
        return p

    def bilinear(raw, path, parse, what):
        _expect(isinstance(raw, list), "expected a list of [left, right, terms]", path)
        out: dict[tuple[str, str], Terms] = {}
        for n, item in enumerate(raw):
            p = f"{path}[{n}]"
            _expect(isinstance(item, list) and len(item) == 3, "expected [left, right, terms]", p)
            a, b, terms = item
            for x in (a, b):
                if x not in names:
                    raise ValidationError(f"unknown basis element {x!r}", p)
            if (a, b) in out:
                raise ValidationError(f"entry ({a}, {b}) given twice", p)
            out[(a, b)] = _parse_terms(terms, f"{p}[2]", names, parse, (names[a] + names[b]) % 2, f"{what}({a}, {b})")
        return out

    def linear(raw, path, parse, what):
        _expect(isinstance(raw, list), "expected a list of [source, terms]", path)
        out: dict[str, Terms] = {}
        for n, item in enumerate(raw):
            p = f"{path}[{n}]"
            _expect(isinstance(item, list) and len(item) == 2, "expected [source, terms]", p)
            a, terms = item
            if a not in names:
                raise ValidationError(f"unknown basis element {a!r}", p)
            if a in out:
                raise ValidationError(f"entry {a!r} given twice", p)
            out[a] = _parse_terms(terms, f"{p}[1]", names, parse, names[a], f"{what}({a})")
        return out

    products = doc.get("products", {})
    _expect(isinstance(products, dict), "products must be an object", "products")
    prods = {k: bilinear(v, f"products.{k}", scalar, k) for k, v in products.items()}
    maps = doc.get("maps", {})
    _expect(isinstance(maps, dict), "maps must be an object", "maps")
    mps = {k: linear(v, f"maps.{k}", scalar, k) for k, v in maps.items()}

    conformal = None
    if "conformal" in doc:
        c = doc["conformal"]
        _expect(isinstance(c, dict), "conformal must be an object", "conformal")
        extra = set(c) - {"bracket", "alpha", "torsion"}
        if extra:
            raise ValidationError(f"unknown keys {sorted(extra)}", "conformal")
        br = bilinear(c.get("bracket", []), "conformal.bracket", formal, "bracket")
        for key, terms in br.items():
            for k, p in terms:
                if p.degree("Mu") > 0:
                    raise ValidationError("bracket coefficients may use D and Lm only", f"conformal.bracket {key}")
        al = linear(c["alpha"], "conformal.alpha", d_only, "alpha") if "alpha" in c else None
        tor = c.get("torsion", [])
        _expect(isinstance(tor, list), "torsion must be a list of names", "conformal.torsion")
        for n, t in enumerate(tor):
            if t not in names:
                raise ValidationError(f"unknown basis element {t!r}", f"conformal.torsion[{n}]")
        conformal = ConformalSpec(br, al, tuple(tor))

    notes = doc.get("notes", "")
    _expect(isinstance(notes, str), "notes must be a string", "notes")
    spec = AlgebraSpec(tuple(basis), params, prods, mps, conformal, doc.get("name", ""), notes)
    try:
        spec.to_algebra()
        if conformal is not None:
            spec.to_conformal()
    except (AlgebraError, ValueError) as e:
        raise ValidationError(str(e)) from None
    return spec


def load_spec(path: str | Path) -> AlgebraSpec:
    try:
        text = Path(path).read_text()
    except OSError as e:
        raise ParseError(f"cannot read {path}: {e.strerror}") from None
    return parse_spec(text)


# -- serialization -----------------------------------------------------------------------

def _lit(c) -> str:
    return str(c)


def _terms_out(terms: Terms) -> list:
    return [[k, _lit(c)] for k, c in terms]


def spec_to_dict(spec: AlgebraSpec) -> dict:
    d: dict[str, Any] = {"schema": SCHEMA}
    if spec.name:
        d["name"] = spec.name
    if spec.notes:
        d["notes"] = spec.notes
    if spec.params:
        d["params"] = list(spec.params)
    d["basis"] = [[n, p] for n, p in spec.basis]
    if spec.products:
        d["products"] = {
            name: [[a, b, _terms_out(t)] for (a, b), t in table.items()] for name, table in spec.products.items()
        }
    if spec.maps:
        d["maps"] = {name: [[a, _terms_out(t)] for a, t in m.items()] for name, m in spec.maps.items()}
    if spec.conformal is not None:
        c = spec.conformal
        cd: dict[str, Any] = {"bracket": [[a, b, _terms_out(t)] for (a, b), t in c.bracket.items()]}
        if c.alpha is not None:
            cd["alpha"] = [[a, _terms_out(t)] for a, t in c.alpha.items()]
        if c.torsion:
            cd["torsion"] = list(c.torsion)
        d["conformal"] = cd
    return d


def dump_spec(spec: AlgebraSpec) -> str:
    """Pretty JSON with one table entry per line."""
    d = spec_to_dict(spec)
    lines = ["{"]
    keys = list(d)
    for n, key in enumerate(keys):
        comma = "," if n < len(keys) - 1 else ""
        val = d[key]
        if key in ("products", "maps"):
            lines.append(f'  "{key}": {{')
            sub = list(val.items())
            for m, (name, entries) in enumerate(sub):
                lines.append(f'    {json.dumps(name)}: ' + _entry_list(entries, 6) + ("," if m < len(sub) - 1 else ""))
            lines.append("  }" + comma)
        elif key == "conformal":
            lines.append('  "conformal": {')
            sub = list(val.items())
            for m, (name, entries) in enumerate(sub):
                body = _entry_list(entries, 6) if name != "torsion" else json.dumps(entries, ensure_ascii=False)
                lines.append(f'    "{name}": ' + body + ("," if m < len(sub) - 1 else ""))
            lines.append("  }" + comma)
        elif key == "basis":
            lines.append(f'  "basis": {json.dumps(val)}{comma}')
        else:
            lines.append(f"  {json.dumps(key)}: {json.dumps(val, ensure_ascii=False)}{comma}")
    lines.append("}")
    return "\n".join(lines) + "\n"


def _entry_list(entries: list, indent: int) -> str:
    if not entries:
        return "[]"
    pad = " " * indent
    inner = (",\n").join(pad + json.dumps(e, ensure_ascii=False) for e in entries)
    return "[\n" + inner + "\n" + " " * (indent - 2) + "]"


def write_spec(spec: AlgebraSpec, path: str | Path) -> None:
    Path(path).write_text(dump_spec(spec))


# -- cocycle files -------------------------------------------------------------------------

def parse_cocycles(document: str | dict, spec: AlgebraSpec) -> list:
    """Parse a cocycle file against the algebra it refers to."""
    from .cext import Cocycle

    if isinstance(document, str):
        try:
            doc = json.loads(document)
        except json.JSONDecodeError as e:
            raise ParseError(f"invalid JSON: {e.msg} (line {e.lineno}, column {e.colno})") from None
    else:
        doc = document
    _expect(isinstance(doc, dict) and doc.get("kind") == "cocycle", 'expected an object with "kind": "cocycle"', "")
    if doc.get("schema", SCHEMA) != SCHEMA:
        raise ValidationError(f"unsupported schema {doc.get('schema')!r}", "schema")
    raw = doc.get("cocycles")
    _expect(isinstance(raw, list), "cocycles must be a list", "cocycles")
    B = spec.super_basis
    out = []
    for n, entries in enumerate(raw):
        path = f"cocycles[{n}]"
        _expect(isinstance(entries, list), "expected a list of [left, right, polynomial]", path)
        polys = {}
        for m, item in enumerate(entries):
            p = f"{path}[{m}]"
            _expect(isinstance(item, list) and len(item) == 3, "expected [left, right, polynomial]", p)
            a, b, lit = item
            for x in (a, b):
                if x not in B.names:
                    raise ValidationError(f"unknown basis element {x!r}", p)
            if isinstance(lit, int) and not isinstance(lit, bool):
                lit = str(lit)
            _expect(isinstance(lit, str), "value must be a polynomial literal in Lm", p)
            try:
                poly = parse_formal(lit, spec.params)
            except LiteralError as e:
                raise ParseError(f"bad polynomial {lit!r}: {e}", p) from None
            if poly.uses() - {"Lm"}:
                raise ValidationError("cocycle values are polynomials in Lm only", p)
            key = (B.index(a), B.index(b))
            if key in polys:
                raise ValidationError(f"entry ({a}, {b}) given twice", p)
            polys[key] = poly
        try:
            out.append(Cocycle.from_polys(B, polys))
        except ValueError as e:
            raise ValidationError(str(e), path) from None
    return out


def dump_cocycles(cocycles, basis: SuperBasis) -> str:
    body = []
    for f in cocycles:
        body.append([[basis.names[u], basis.names[v], str(p)] for (u, v), p in f.polys().items()])
    lines = ['{', '  "schema": 1,', '  "kind": "cocycle",', '  "cocycles": [']
    for n, entries in enumerate(body):
        lines.append("    " + json.dumps(entries, ensure_ascii=False) + ("," if n < len(body) - 1 else ""))
    lines += ["  ]", "}"]
    return "\n".join(lines) + "\n"


def load_cocycles(path: str | Path, spec: AlgebraSpec) -> list:
    try:
        text = Path(path).read_text()
    except OSError as e:
        raise ParseError(f"cannot read {path}: {e.strerror}") from None
    return parse_cocycles(text, spec)
