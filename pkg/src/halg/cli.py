"""Command-line front end: `halg <command> ...`.

Exit codes: 0 success or pass, 1 mathematical failure (witnesses reported),
2 usage or parse error, 3 validation error in an input file.
"""
from __future__ import annotations

import argparse
import json
import re
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Sequence

from . import __version__
from .affinization import LoopElement, WindowedBracket, check_affine_hom_jacobi, format_sum, fresh_index_names, loop_bracket
from .cext import HypothesisFailed, NotACocycle, extend, solve_cocycle_space, verify_theorem51
from .conformal import (
    ConformalAlgebra,
    ConformalError,
    NotQuadratic,
    check_conformal_axioms,
    current_conformal,
    format_element,
    gd_from_quadratic,
    quadratic_from_gd,
    solve_alpha,
)
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
from .exactalg import FormalPoly, LiteralError, Scalar, parse_scalar
from .superalgebra import (
    AlgebraError,
    CheckReport,
    EvenMap,
    SuperAlgebra,
    UnknownMap,
    UnknownProduct,
    check_gd,
    check_hom_associative,
    check_hom_lie_super,
    check_hom_novikov_super,
    check_hom_poisson,
)
from .specfile import (
    AlgebraSpec,
    ParseError,
    ValidationError,
    dump_cocycles,
    load_cocycles,
    load_spec,
    spec_from_algebra,
    spec_from_conformal,
    write_spec,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_INVALID = 0, 1, 2, 3

STRUCTURES = ("hom-lie-super", "hom-novikov-super", "hom-assoc", "gd", "hom-poisson", "hom-lie-conformal")
# untwisted names: same checker with alpha forced to the identity
CLASSICAL_ALIASES = {"lie-super": "hom-lie-super", "novikov-super": "hom-novikov-super", "assoc": "hom-assoc"}
CONSTRUCTS = ("supercommutator", "yau-twist", "derivation", "poisson", "star")


class UsageError(Exception):
    pass


@dataclass
class Report:
    command: str
    verdict: str = "ok"
    checks: list[CheckReport] = field(default_factory=list)
    tables: dict[str, list[str]] = field(default_factory=dict)
    data: dict[str, Any] = field(default_factory=dict)
    notes: list[str] = field(default_factory=list)
    error: str | None = None
    elapsed: float = 0.0
    format: str = "text"

    def fail(self):
        self.verdict = "fail"

    def add_check(self, rep: CheckReport):
        self.checks.append(rep)
        if not rep.passed:
            self.fail()

    def as_dict(self) -> dict:
        d: dict[str, Any] = {"schema": 1, "command": self.command, "verdict": self.verdict}
        if self.error:
            d["error"] = self.error
        if self.checks:
            d["checks"] = [c.as_dict() for c in self.checks]
        if self.tables:
            d["tables"] = self.tables
        if self.data:
            d["data"] = self.data
        if self.notes:
            d["notes"] = self.notes
        d["elapsed_seconds"] = round(self.elapsed, 4)
        return d

    def text(self, witness_limit: int = 20) -> str:
        lines = [f"$ halg {self.command}", f"verdict: {self.verdict.upper()}"]
        if self.error:
            lines.append(f"error: {self.error}")
        for c in self.checks:
            lines.append(c.summary(witness_limit))
        for title, rows in self.tables.items():
            lines.append(f"{title}:")
            lines += [f"  {r}" for r in rows] or ["  (empty)"]
        for k, v in self.data.items():
            if isinstance(v, list):
                lines.append(f"{k}:")
                lines += [f"  {x}" for x in v] or ["  (none)"]
            else:
                lines.append(f"{k}: {v}")
        lines += [f"note: {n}" for n in self.notes]
        lines.append(f"time: {self.elapsed:.3f}s")
        return "\n".join(lines)


# -- helpers ------------------------------------------------------------------------------

def _table_rows(A: SuperAlgebra, name: str, symbol: str) -> list[str]:
    t = A.product(name)
    B = A.basis
    rows = []
    for (i, j), v in sorted(t.entries.items()):
        if not v:
            continue
        lhs = f"[{B.names[i]}, {B.names[j]}]" if symbol == "[]" else f"{B.names[i]} {symbol} {B.names[j]}"
        rows.append(f"{lhs} = {B.format(v)}")
    return rows


def _map_rows(A: SuperAlgebra, name: str) -> list[str]:
    m = A.map(name)
    B = A.basis
    return [f"{name}({B.names[i]}) = {B.format(v)}" for i, v in sorted(m.entries.items()) if v]


def _conformal_rows(R: ConformalAlgebra) -> list[str]:
    B = R.generators
    return [
        f"[{B.names[i]} λ {B.names[j]}] = {format_element(B, v)}".replace("D", "∂").replace("Lm", "λ")
        for (i, j), v in sorted(R.bracket.items())
    ]


def _alpha_rows(B, alpha) -> list[str]:
    return [f"alpha({B.names[i]}) = {format_element(B, v)}".replace("D", "∂") for i, v in sorted(alpha.items())]


def _with_bracket(A: SuperAlgebra, args, report: Report | None) -> SuperAlgebra:
    """A file holding only a Novikov-type product stands for the GD structure
    whose bracket is its supercommutator."""
    if args.bracket in A.products or args.circ not in A.products:
        return A
    if report is not None:
        report.notes.append(f"no {args.bracket!r} product: using the supercommutator of {args.circ!r}")
    return A.with_product(args.bracket, supercommutator_table(A, args.circ))


def _gd_from_file(spec: AlgebraSpec, args, report: Report | None = None) -> GDStructure:
    if spec.conformal is not None and not spec.products:
        return gd_from_quadratic(spec.to_conformal())
    return GDStructure(_with_bracket(spec.to_algebra(), args, report), args.bracket, args.circ, args.alpha)


def _conformal_from_file(spec: AlgebraSpec, args, report: Report | None = None) -> ConformalAlgebra:
    if spec.conformal is not None:
        return spec.to_conformal()
    return quadratic_from_gd(_gd_from_file(spec, args, report))


def _write_output(args, spec: AlgebraSpec, report: Report):
    if getattr(args, "output", None):
        write_spec(spec, args.output)
        report.data["written"] = str(args.output)


def _algebra_tables(report: Report, A: SuperAlgebra, products: dict[str, str]):
    for name, sym in products.items():
        if name in A.products:
            report.tables[f"{name} table"] = _table_rows(A, name, sym)


# -- commands -------------------------------------------------------------------------------

def cmd_check(args, report: Report):
    spec = load_spec(args.file)
    if args.structure in CLASSICAL_ALIASES:
        args.structure, args.classical = CLASSICAL_ALIASES[args.structure], True
    if args.structure == "hom-lie-conformal":
        R = spec.to_conformal()
        if args.classical:
            R = R.with_alpha({i: {i: FormalPoly.const(1)} for i in range(R.rank)})
        report.add_check(check_conformal_axioms(R))
        return
    A = spec.to_algebra()
    if args.classical:
        A = A.with_map(args.alpha, EvenMap.identity(A.basis))
        report.notes.append(f"classical mode: {args.alpha} replaced by the identity")
    s = args.structure
    if s == "hom-lie-super":
        rep = check_hom_lie_super(A, args.bracket, args.alpha)
    elif s == "hom-novikov-super":
        rep = check_hom_novikov_super(A, args.circ, args.alpha)
    elif s == "hom-assoc":
        rep = check_hom_associative(A, args.mul, args.alpha, require_commutative=args.commutative)
    elif s == "gd":
        A = _with_bracket(A, args, report)
        rep = check_gd(A, args.bracket, args.circ, args.alpha)
    else:
        rep = check_hom_poisson(A, args.mul, args.bracket, args.alpha)
    report.add_check(rep)


def cmd_construct(args, report: Report):
    spec = load_spec(args.file)
    A = spec.to_algebra()
    shift = parse_scalar(args.shift, spec.params) if args.shift is not None else Scalar(0)
    name = args.name or f"{spec.name or Path(args.file).stem}-{args.construction}"
    kind = args.construction
    if kind == "supercommutator":
        G = supercommutator_gd(A, args.circ, args.alpha, args.bracket)
        out = G.algebra
        report.add_check(G.certificate)
        _algebra_tables(report, out, {args.bracket: "[]", args.circ: "∘"})
    elif kind == "yau-twist":
        products = args.products.split(",") if args.products else sorted(A.products)
        twist_kind = args.kind
        if twist_kind == "auto":
            has = set(A.products)
            if {args.bracket, args.circ} <= set(products) and {args.bracket, args.circ} <= has:
                twist_kind = "gd"
            elif products == [args.circ]:
                twist_kind = "novikov"
            elif products == [args.bracket]:
                twist_kind = "lie"
            elif products == [args.mul]:
                twist_kind = "commutative-assoc"
            else:
                twist_kind = None
        elif twist_kind == "none":
            twist_kind = None
        res = yau_twist(A, products, args.map or args.alpha, twist_kind, args.bracket, args.circ)
        out = res.algebra
        if res.certificate is not None:
            report.add_check(res.certificate)
        else:
            report.notes.append("no structure named; output not certified")
        _algebra_tables(report, out, {p: "·" for p in products})
    elif kind == "derivation":
        G = derivation_construction(A, args.mul, args.alpha, args.map or "D", shift, args.bracket, args.circ)
        out = G.algebra
        report.add_check(G.certificate)
        _algebra_tables(report, out, {args.bracket: "[]", args.circ: "∘"})
    elif kind == "poisson":
        G = poisson_construction(A, args.mul, args.bracket, args.alpha, args.map or "D", shift, args.circ)
        out = G.algebra
        report.add_check(G.certificate)
        _algebra_tables(report, out, {args.bracket: "[]", args.circ: "∘"})
    else:
        res = star_constructions(A, args.bracket, args.alpha, args.map or "f")
        out = A.with_product("star", res.star.structure.algebra.product("star")).with_product(
            "star_prime", res.star_prime.structure.algebra.product("star_prime")
        )
        for cand in (res.star, res.star_prime):
            report.checks.append(cand.conditions)
            report.checks.append(cand.direct)
            report.data[f"{cand.name} conditions"] = cand.conditions.verdict
            report.data[f"{cand.name} direct GD check"] = cand.direct.verdict
            if not cand.consistent:
                report.fail()
                report.notes.append(f"{cand.name}: condition verdict differs from the direct check")
        report.data["centralizer dimension"] = len(res.centralizer)
        _algebra_tables(report, out, {"star": "⋆", "star_prime": "⋆'"})
    _write_output(args, spec_from_algebra(out, name), report)


def _parse_window(text: str) -> tuple[int, int]:
    m = re.fullmatch(r"\s*(-?\d+)\s*\.\.\s*(-?\d+)\s*", text)
    if not m:
        raise UsageError(f"window must look like lo..hi, got {text!r}")
    lo, hi = int(m.group(1)), int(m.group(2))
    if lo > hi:
        raise UsageError(f"empty window {text!r}")
    return lo, hi


def cmd_affinize(args, report: Report):
    spec = load_spec(args.file)
    G = _gd_from_file(spec, args, report)
    if args.window is not None:
        W = WindowedBracket(G, _parse_window(args.window))
        rep = check_affine_hom_jacobi(W, mode="direct")
    else:
        rep = check_affine_hom_jacobi(G, mode="delta")
    report.add_check(rep)
    if args.show_brackets:
        A = G.algebra
        im, in_ = fresh_index_names(A.params, ("m", "n"))
        params = tuple(A.params) + (im, in_)
        m, n = Scalar.param(im, params), Scalar.param(in_, params)
        names = A.basis.names
        rows = []
        for u in range(A.dim):
            for v in range(A.dim):
                s = loop_bracket(G, LoopElement(u, m), LoopElement(v, n))
                rows.append(f"[{names[u]}[{im}], {names[v]}[{in_}]] = {format_sum(G, s)}")
        report.tables["loop brackets"] = rows


def cmd_conformalize(args, report: Report):
    spec = load_spec(args.file)
    A = spec.to_algebra()
    if args.current:
        R = current_conformal(A, args.bracket, args.alpha)
    else:
        G = GDStructure(_with_bracket(A, args, report), args.bracket, args.circ, args.alpha)
        gd = G.check()
        report.data["input GD check"] = gd.verdict
        R = quadratic_from_gd(G)
    report.add_check(check_conformal_axioms(R))
    report.tables["λ-brackets"] = _conformal_rows(R)
    report.tables["alpha"] = _alpha_rows(R.generators, R.alpha or {})
    _write_output(args, spec_from_conformal(R, args.name or f"{spec.name or Path(args.file).stem}-conformal"), report)


def cmd_gd_extract(args, report: Report):
    spec = load_spec(args.file)
    R = spec.to_conformal()
    G = gd_from_quadratic(R, args.bracket, args.circ, args.alpha)
    report.add_check(G.check())
    _algebra_tables(report, G.algebra, {args.bracket: "[]", args.circ: "∘"})
    report.tables["alpha"] = _map_rows(G.algebra, args.alpha)
    _write_output(args, spec_from_algebra(G.algebra, args.name or f"{spec.name or Path(args.file).stem}-gd"), report)


def cmd_solve_alpha(args, report: Report):
    spec = load_spec(args.file)
    R = spec.to_conformal()
    sol = solve_alpha(R, args.degree)
    B = R.generators
    report.data["degree bound"] = sol.degree_bound
    report.data["unknowns"] = len(sol.unknowns)
    report.data["solution dimension"] = sol.dimension
    report.data["basis"] = [
        "; ".join(_alpha_rows(B, m)) for m in sol.basis
    ]
    # same maps as [source, target, literal] triples, in the spec-file syntax
    report.data["basis entries"] = [
        [[B.names[i], B.names[k], str(p)] for i, row in sorted(m.items()) for k, p in sorted(row.items())]
        for m in sol.basis
    ]
    if sol.dimension == 0:
        report.notes.append("only the zero map makes the bracket Hom-Jacobi at this degree bound")


def cmd_cocycles(args, report: Report):
    spec = load_spec(args.file)
    R = _conformal_from_file(spec, args, report)
    space = solve_cocycle_space(R, args.max_degree)
    report.data["max degree"] = args.max_degree
    report.data["unknowns"] = len(space.system.unknowns)
    report.data["equations"] = len(space.system.equations)
    report.data["solution dimension"] = space.dimension
    report.data["basis"] = [f.format().replace("\n", "; ").replace("Lm", "λ") for f in space.basis]
    report.data["basis entries"] = [
        [[R.generators.names[u], R.generators.names[v], str(p)] for (u, v), p in f.polys().items()]
        for f in space.basis
    ]
    if args.output:
        Path(args.output).write_text(dump_cocycles(space.basis, R.generators))
        report.data["written"] = str(args.output)


def _select(cocycles: list, index: int | None) -> list[tuple[int, Any]]:
    if index is None:
        return list(enumerate(cocycles))
    if not 0 <= index < len(cocycles):
        raise UsageError(f"--index {index} out of range (file has {len(cocycles)} cocycles)")
    return [(index, cocycles[index])]


def cmd_extend(args, report: Report):
    spec = load_spec(args.file)
    R = _conformal_from_file(spec, args, report)
    cocycles = load_cocycles(args.cocycle, spec)
    chosen = _select(cocycles, args.index)
    if args.output and len(chosen) != 1:
        raise UsageError("-o needs exactly one cocycle; pass --index")
    alpha_c = parse_scalar(args.alpha_c, spec.params)
    for i, f in chosen:
        try:
            ext = extend(R, f, args.center, alpha_c)
        except NotACocycle as e:
            e.report.title = f"cocycle {i}: {e.report.title}"
            report.add_check(e.report)
            continue
        ext.certificate.title = f"cocycle {i}: extension {ext.certificate.title}"
        report.add_check(ext.certificate)
        report.tables[f"extension by cocycle {i}"] = _conformal_rows(ext.algebra)
        if args.output:
            _write_output(args, spec_from_conformal(ext.algebra, args.name or f"{spec.name}-extended"), report)


def cmd_verify_thm51(args, report: Report):
    spec = load_spec(args.file)
    G = _gd_from_file(spec, args, report)
    cocycles = load_cocycles(args.cocycle, spec)
    for i, f in _select(cocycles, args.index):
        try:
            rep = verify_theorem51(G, f)
        except HypothesisFailed as e:
            e.report.title = f"cocycle {i}: hypothesis {e.report.title}"
            report.add_check(e.report)
            continue
        rep.title = f"cocycle {i} (degree {f.degree}): {rep.title}"
        report.add_check(rep)


def cmd_property(args, report: Report):
    from .properties import DEFAULT_COUNTS, SUITES

    names = list(SUITES) if args.suite == "all" else [args.suite]
    report.data["seed"] = args.seed
    results = []
    for name in names:
        count = args.count if args.count is not None else DEFAULT_COUNTS[name]
        for r in SUITES[name](count, args.seed):
            results.append(r)
            if not r.passed:
                report.fail()
    report.data["suites"] = [r.summary() for r in results]
    if args.format == "json":
        report.data["results"] = [r.as_dict() for r in results]


COMMANDS = {
    "check": cmd_check,
    "construct": cmd_construct,
    "affinize": cmd_affinize,
    "conformalize": cmd_conformalize,
    "gd-extract": cmd_gd_extract,
    "solve-alpha": cmd_solve_alpha,
    "cocycles": cmd_cocycles,
    "extend": cmd_extend,
    "verify-thm51": cmd_verify_thm51,
    "property": cmd_property,
}


# -- argument parsing ---------------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default=argparse.SUPPRESS, help="report format")
    names = _Parser(add_help=False)
    names.add_argument("--bracket", default="bracket", help="name of the bracket product")
    names.add_argument("--circ", default="circ", help="name of the Novikov product")
    names.add_argument("--mul", default="mul", help="name of the commutative product")
    names.add_argument("--alpha", default="alpha", help="name of the twisting map")

    p = _Parser(prog="halg", description="Exact checks and constructions for Z2-graded Hom-algebras.")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--version", action="version", version=f"halg {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("check", parents=[common, names], help="verify an axiom system")
    c.add_argument("file")
    c.add_argument("--structure", required=True, choices=STRUCTURES + tuple(CLASSICAL_ALIASES))
    c.add_argument("--classical", action="store_true", help="replace alpha by the identity first")
    c.add_argument("--commutative", action="store_true", help="hom-assoc: also require supercommutativity")

    c = sub.add_parser("construct", parents=[common, names], help="run a construction")
    c.add_argument("construction", choices=CONSTRUCTS)
    c.add_argument("file")
    c.add_argument("--shift", help="scalar literal for the shifted products (default 0)")
    c.add_argument("--map", help="map used by the construction (D, f, or the twist map)")
    c.add_argument("--products", help="yau-twist: comma-separated products to twist (default all)")
    c.add_argument("--kind", default="auto", choices=("auto", "novikov", "gd", "lie", "assoc", "commutative-assoc", "none"))
    c.add_argument("--name", help="name recorded in the output file")
    c.add_argument("-o", "--output")

    c = sub.add_parser("affinize", parents=[common, names], help="check the loop algebra of a GD structure")
    c.add_argument("file")
    g = c.add_mutually_exclusive_group(required=True)
    g.add_argument("--delta", action="store_true", help="formal indices, split by t-offset")
    g.add_argument("--window", help="all modes in lo..hi")
    c.add_argument("--show-brackets", action="store_true", help="print [u[m], v[n]] for all basis pairs")

    c = sub.add_parser("conformalize", parents=[common, names], help="GD structure to quadratic λ-brackets")
    c.add_argument("file")
    c.add_argument("--current", action="store_true", help="current algebra [u_λ v] = [u,v] of a Hom-Lie superalgebra")
    c.add_argument("--name")
    c.add_argument("-o", "--output")

    c = sub.add_parser("gd-extract", parents=[common, names], help="quadratic λ-brackets to GD structure")
    c.add_argument("file")
    c.add_argument("--name")
    c.add_argument("-o", "--output")

    c = sub.add_parser("solve-alpha", parents=[common], help="all twist maps making a λ-bracket Hom-Jacobi")
    c.add_argument("file")
    c.add_argument("--degree", type=int, default=None, help="bound on the ∂-degree of alpha entries")

    c = sub.add_parser("cocycles", parents=[common, names], help="solve for 2-cocycles")
    c.add_argument("file")
    c.add_argument("--max-degree", type=int, default=3)
    c.add_argument("-o", "--output", help="write the basis as a cocycle file")

    c = sub.add_parser("extend", parents=[common, names], help="central extension by a cocycle")
    c.add_argument("file")
    c.add_argument("--cocycle", required=True)
    c.add_argument("--index", type=int)
    c.add_argument("--center", default="c")
    c.add_argument("--alpha-c", default="1", help="alpha(c) = alpha_c * c")
    c.add_argument("--name")
    c.add_argument("-o", "--output")

    c = sub.add_parser("verify-thm51", parents=[common, names], help="relations satisfied by cocycles of a GD structure")
    c.add_argument("file")
    c.add_argument("--cocycle", required=True)
    c.add_argument("--index", type=int)

    from .properties import SUITES

    c = sub.add_parser("property", parents=[common], help="run a seeded randomized property suite")
    c.add_argument("suite", choices=("all",) + tuple(SUITES))
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--count", type=int)
    return p


_VALUE_OPTIONS = {"--window", "--shift", "--alpha-c"}


def _join_negative_values(argv: Sequence[str]) -> list[str]:
    """`--window -3..3` would be read as an option; glue such values on with '='."""
    out: list[str] = []
    it = iter(argv)
    for a in it:
        if a in _VALUE_OPTIONS:
            nxt = next(it, None)
            if nxt is None:
                out.append(a)
            else:
                out.append(f"{a}={nxt}")
        else:
            out.append(a)
    return out


def run(argv: Sequence[str]) -> tuple[Report, int]:
    argv = list(argv)
    report = Report(" ".join(argv))
    # known before parsing so that usage errors honour it too
    if "--format=json" in argv or any(a == "--format" and b == "json" for a, b in zip(argv, argv[1:])):
        report.format = "json"
    start = time.perf_counter()
    try:
        args = build_parser().parse_args(_join_negative_values(argv))
        report.format = args.format
        COMMANDS[args.command](args, report)
        if report.verdict == "ok" and report.checks:
            report.verdict = "pass"
        code = EXIT_OK if report.verdict != "fail" else EXIT_FAIL
    except UsageError as e:
        report.verdict, report.error, code = "error", f"usage: {e}", EXIT_USAGE
    except (ParseError, LiteralError) as e:
        report.verdict, report.error, code = "error", f"parse error: {e}", EXIT_USAGE
    except (ValidationError, UnknownProduct, UnknownMap, AlgebraError) as e:
        if isinstance(e, (UnknownProduct, UnknownMap)):
            kind = "product" if isinstance(e, UnknownProduct) else "map"
            msg = f"no {kind} named {e.args[0]!r} in the file"
        else:
            msg = str(e)
        report.verdict, report.error, code = "error", f"invalid input: {msg}", EXIT_INVALID
    except PreconditionFailed as e:
        report.verdict, report.error, code = "fail", str(e), EXIT_FAIL
        report.checks.append(e.report)
    except NotQuadratic as e:
        report.verdict, report.error, code = "fail", f"not quadratic: {e}", EXIT_FAIL
    except ConformalError as e:
        report.verdict, report.error, code = "error", f"invalid input: {e}", EXIT_INVALID
    report.elapsed = time.perf_counter() - start
    return report, code


def main(argv: Sequence[str] | None = None) -> int:
    report, code = run(sys.argv[1:] if argv is None else argv)
    if report.format == "json":
        print(json.dumps(report.as_dict(), ensure_ascii=False, indent=2))
    else:
        print(report.text())
    return code


if __name__ == "__main__":
    sys.exit(main())
