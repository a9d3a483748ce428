"""Loop-type Hom-Lie superalgebra built on a GD structure.

An element u[m] stands for u ⊗ t^{m + |u|/2}.  Modes are Scalars, so they may
be concrete integers or polynomials in formal indices adjoined as extra
parameters.  The t-exponent itself is never stored; `LoopElement.degree2`
gives the doubled exponent 2m + |u| when needed.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Mapping

from .constructions import GDStructure
from .exactalg import Scalar
from .superalgebra import CheckReport, Witness, format_terms, sign

HALF = Scalar(1) / 2


@dataclass(frozen=True)
class LoopElement:
    base: int
    mode: Scalar

    def __init__(self, base: int, mode):
        object.__setattr__(self, "base", base)
        object.__setattr__(self, "mode", Scalar._coerce(mode))

    def degree2(self, parity: int) -> Scalar:
        return 2 * self.mode + parity


LoopSum = dict[tuple[int, Scalar], Scalar]


def _add_into(acc: LoopSum, key, c: Scalar):
    if c.is_zero():
        return
    if key in acc:
        s = acc[key] + c
        if s.is_zero():
            del acc[key]
        else:
            acc[key] = s
    else:
        acc[key] = c


def _combine(*parts: tuple[Scalar | int, Mapping]) -> LoopSum:
    acc: LoopSum = {}
    for coef, s in parts:
        coef = Scalar._coerce(coef)
        for key, c in s.items():
            _add_into(acc, key, c * coef)
    return acc


def element(e: LoopElement) -> LoopSum:
    return {(e.base, e.mode): Scalar(1)}


def loop_bracket(G: GDStructure, e1: LoopElement, e2: LoopElement) -> LoopSum:
    """[u[m], v[n]] = [u,v]⊗t^E + (m+|u|/2) u∘v⊗t^{E-1} - (-1)^{|u||v|}(n+|v|/2) v∘u⊗t^{E-1},
    E = m + n + (|u|+|v|)/2."""
    A = G.algebra
    p = A.basis.parities
    br, ci = A.product(G.bracket), A.product(G.circ)
    u, v = e1.base, e2.base
    pu, pv = p[u], p[v]
    # a result of parity pw at exponent E - j has mode m + n + (pu+pv-pw)/2 - j,
    # and pw = pu+pv mod 2, so (pu+pv-pw)/2 is 1 exactly when both are odd
    top = e1.mode + e2.mode + (1 if pu and pv else 0)
    out: LoopSum = {}
    for k, c in br(u, v).items():
        _add_into(out, (k, top), c)
    cu = e1.mode + HALF * pu
    cv = (e2.mode + HALF * pv) * (-sign(pu * pv))
    for k, c in ci(u, v).items():
        _add_into(out, (k, top - 1), c * cu)
    for k, c in ci(v, u).items():
        _add_into(out, (k, top - 1), c * cv)
    return out


def bracket_sums(G: GDStructure, x: Mapping, y: Mapping) -> LoopSum:
    acc: LoopSum = {}
    for (i, mi), a in x.items():
        for (j, mj), b in y.items():
            for key, c in loop_bracket(G, LoopElement(i, mi), LoopElement(j, mj)).items():
                _add_into(acc, key, c * a * b)
    return acc


def apply_phi(G: GDStructure, e: LoopElement | Mapping) -> LoopSum:
    """φ(u[m]) = α(u)[m]."""
    al = G.algebra.map(G.alpha)
    src = element(e) if isinstance(e, LoopElement) else e
    acc: LoopSum = {}
    for (i, m), a in src.items():
        for k, c in al(i).items():
            _add_into(acc, (k, m), c * a)
    return acc


def format_sum(G: GDStructure, s: Mapping) -> str:
    names = G.algebra.basis.names
    items = sorted(s.items(), key=lambda kv: (kv[0][0], str(kv[0][1])))
    return format_terms((f"{names[k]}[{m}]", c) for (k, m), c in items)


@dataclass(frozen=True)
class WindowedBracket:
    gd: GDStructure
    window: tuple[int, int] = (-3, 3)

    def __post_init__(self):
        lo, hi = self.window
        if lo > hi:
            raise ValueError(f"empty window {self.window}")

    def modes(self) -> range:
        return range(self.window[0], self.window[1] + 1)


def fresh_index_names(params: Iterable[str], wanted=("m", "n", "k")) -> tuple[str, ...]:
    taken = set(params)
    out = []
    for w in wanted:
        name = w
        while name in taken:
            name += "_"
        taken.add(name)
        out.append(name)
    return tuple(out)


def _jacobi(G: GDStructure, U: LoopElement, V: LoopElement, W: LoopElement) -> LoopSum:
    p = G.algebra.basis.parities
    pu, pv, pw = p[U.base], p[V.base], p[W.base]
    eu, ev, ew = element(U), element(V), element(W)
    return _combine(
        (sign(pu * pw), bracket_sums(G, bracket_sums(G, eu, ev), apply_phi(G, W))),
        (sign(pv * pu), bracket_sums(G, bracket_sums(G, ev, ew), apply_phi(G, U))),
        (sign(pw * pv), bracket_sums(G, bracket_sums(G, ew, eu), apply_phi(G, V))),
    )


def _skew(G: GDStructure, U: LoopElement, V: LoopElement) -> LoopSum:
    p = G.algebra.basis.parities
    return _combine(
        (1, loop_bracket(G, U, V)),
        (sign(p[U.base] * p[V.base]), loop_bracket(G, V, U)),
    )


def split_by_offset(G: GDStructure, s: Mapping, top2: Scalar) -> dict[int, dict[int, Scalar]]:
    """Group a loop sum by j, where a term sits at t-exponent (top2/2) - j.
    Returns {j: {base: coefficient}}; modes are dropped once j is known."""
    p = G.algebra.basis.parities
    out: dict[int, dict[int, Scalar]] = {}
    for (k, m), c in s.items():
        j2 = top2 - (2 * m + p[k])
        if not j2.is_constant() or j2.constant_value().denominator != 1 or int(j2.constant_value()) % 2:
            raise AssertionError(f"term {k}[{m}] is not at an integral offset")
        j = int(j2.constant_value()) // 2
        bucket = out.setdefault(j, {})
        bucket[k] = bucket.get(k, Scalar(0)) + c
    return {j: {k: c for k, c in b.items() if not c.is_zero()} for j, b in out.items()}


def _record(report: CheckReport, G, axiom_prefix, args, pieces, numbered=True):
    names = G.algebra.basis.names
    report.checked += 1
    for j in sorted(pieces):
        res = pieces[j]
        if res:
            items = tuple(sorted((names[k], str(c)) for k, c in res.items()))
            axiom = f"{axiom_prefix}{j + 1}" if numbered else axiom_prefix
            report.witnesses.append(Witness(axiom, tuple(args), items))


def check_affine_hom_jacobi(W: WindowedBracket | GDStructure, mode: str = "delta") -> CheckReport:
    """Skew-symmetry and Hom-Jacobi on the loop algebra.

    mode "delta": m, n, k are formal, and the cyclic sum is split by t-offset
    into the classes Δ1 (top degree), Δ2, Δ3; each class must vanish
    identically.  mode "direct": every triple of modes in the window.
    Witness axiom ids are "delta1", "delta2", "delta3" and "skew" in both modes.
    """
    G = W.gd if isinstance(W, WindowedBracket) else W
    A = G.algebra
    p = A.basis.parities
    names = A.basis.names
    n = A.dim
    if mode == "delta":
        report = CheckReport("affinization-hom-jacobi[delta]")
        im, in_, ik = fresh_index_names(A.params)
        params = tuple(A.params) + (im, in_, ik)
        m, nn, k = (Scalar.param(s, params) for s in (im, in_, ik))
        for u, v in itertools.product(range(n), repeat=2):
            U, V = LoopElement(u, m), LoopElement(v, nn)
            s = _skew(G, U, V)
            top2 = 2 * (m + nn) + p[u] + p[v]
            _record(report, G, "skew", (f"{names[u]}[{im}]", f"{names[v]}[{in_}]"), split_by_offset(G, s, top2), numbered=False)
        for u, v, w in itertools.product(range(n), repeat=3):
            U, V, Wl = LoopElement(u, m), LoopElement(v, nn), LoopElement(w, k)
            s = _jacobi(G, U, V, Wl)
            top2 = 2 * (m + nn + k) + p[u] + p[v] + p[w]
            args = (f"{names[u]}[{im}]", f"{names[v]}[{in_}]", f"{names[w]}[{ik}]")
            _record(report, G, "delta", args, split_by_offset(G, s, top2))
        return report
    if mode != "direct":
        raise ValueError(f"unknown mode {mode!r}")
    if not isinstance(W, WindowedBracket):
        W = WindowedBracket(G)
    report = CheckReport(f"affinization-hom-jacobi[direct {W.window[0]}..{W.window[1]}]")
    modes = list(W.modes())
    for u, v in itertools.product(range(n), repeat=2):
        for a, b in itertools.product(modes, repeat=2):
            s = _skew(G, LoopElement(u, a), LoopElement(v, b))
            top2 = Scalar(2 * (a + b) + p[u] + p[v])
            _record(report, G, "skew", (f"{names[u]}[{a}]", f"{names[v]}[{b}]"), split_by_offset(G, s, top2), numbered=False)
    for u, v, w in itertools.product(range(n), repeat=3):
        for a, b, c in itertools.product(modes, repeat=3):
            s = _jacobi(G, LoopElement(u, a), LoopElement(v, b), LoopElement(w, c))
            top2 = Scalar(2 * (a + b + c) + p[u] + p[v] + p[w])
            args = (f"{names[u]}[{a}]", f"{names[v]}[{b}]", f"{names[w]}[{c}]")
            _record(report, G, "delta", args, split_by_offset(G, s, top2))
    return report

