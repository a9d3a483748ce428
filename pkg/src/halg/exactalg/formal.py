"""Polynomials in the formal variables D (the derivation), Lm and Mu (spectral
parameters) with `Scalar` coefficients."""
from __future__ import annotations

from typing import Iterable, Mapping

from .scalar import Scalar

D, LAM, MU = "D", "Lm", "Mu"
VARS = (D, LAM, MU)
_POS = {D: 0, LAM: 1, MU: 2}

Exp = tuple[int, int, int]


class FormalPoly:
    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Exp, Scalar] | None = None):
        self.terms: dict[Exp, Scalar] = {}
        if terms:
            for e, c in terms.items():
                c = Scalar._coerce(c)
                if not c.is_zero():
                    self.terms[e] = c

    @classmethod
    def _raw(cls, terms: dict[Exp, Scalar]) -> "FormalPoly":
        p = object.__new__(cls)
        p.terms = terms
        return p

    @classmethod
    def const(cls, c) -> "FormalPoly":
        return cls({(0, 0, 0): c})

    @classmethod
    def var(cls, name: str) -> "FormalPoly":
        e = [0, 0, 0]
        e[_POS[name]] = 1
        return cls._raw({tuple(e): Scalar(1)})

    # queries ------------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def degree(self, name: str) -> int:
        i = _POS[name]
        return max((e[i] for e in self.terms), default=-1)

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def coeff(self, d: int = 0, l: int = 0, m: int = 0) -> Scalar:
        return self.terms.get((d, l, m), Scalar(0))

    def uses(self) -> set[str]:
        return {v for v in VARS if self.degree(v) > 0}

    def is_constant(self) -> bool:
        return all(e == (0, 0, 0) for e in self.terms)

    def constant_term(self) -> Scalar:
        return self.coeff(0, 0, 0)

    def items(self):
        return self.terms.items()

    # arithmetic -----------------------------------------------------------
    @staticmethod
    def _coerce(x) -> "FormalPoly":
        if isinstance(x, FormalPoly):
            return x
        s = Scalar._coerce(x)
        if s is NotImplemented:
            return NotImplemented
        return FormalPoly.const(s)

    def __add__(self, other):
        other = FormalPoly._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for e, c in other.terms.items():
            if e in out:
                s = out[e] + c
                if s.is_zero():
                    del out[e]
                else:
                    out[e] = s
            else:
                out[e] = c
        return FormalPoly._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return FormalPoly._raw({e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = FormalPoly._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = FormalPoly._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def scale(self, s) -> "FormalPoly":
        s = Scalar._coerce(s)
        if s.is_zero():
            return FormalPoly._raw({})
        return FormalPoly._raw({e: c * s for e, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (Scalar, int)):
            return self.scale(other)
        other = FormalPoly._coerce(other)
        if other is NotImplemented:
            return other
        out: dict[Exp, Scalar] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = (e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2])
                v = c1 * c2
                if e in out:
                    out[e] = out[e] + v
                else:
                    out[e] = v
        return FormalPoly._raw({e: c for e, c in out.items() if not c.is_zero()})

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = FormalPoly.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other):
        other = FormalPoly._coerce(other)
        if other is NotImplemented:
            return False
        if self.terms.keys() != other.terms.keys():
            return False
        return all(self.terms[e] == other.terms[e] for e in self.terms)

    __hash__ = None

    # substitution ---------------------------------------------------------
    def substitute(self, bindings: Mapping[str, "FormalPoly"]) -> "FormalPoly":
        """Simultaneously replace formal variables by polynomials."""
        if not bindings:
            return self
        bad = set(bindings) - set(VARS)
        if bad:
            raise KeyError(f"not formal variables: {sorted(bad)}")
        images = [FormalPoly._coerce(bindings[v]) if v in bindings else None for v in VARS]
        powers: list[dict[int, FormalPoly]] = [{0: FormalPoly.const(1)} for _ in VARS]

        def power(i: int, k: int) -> FormalPoly:
            cache = powers[i]
            if k not in cache:
                cache[k] = power(i, k - 1) * images[i]
            return cache[k]

        out = FormalPoly._raw({})
        for e, c in self.terms.items():
            kept = [0, 0, 0]
            term = FormalPoly._raw({})
            factor = None
            for i in range(3):
                if images[i] is None:
                    kept[i] = e[i]
                elif e[i]:
                    p = power(i, e[i])
                    factor = p if factor is None else factor * p
            mono = FormalPoly._raw({tuple(kept): c})
            term = mono if factor is None else mono * factor
            out = out + term
        return out

    def drop_var(self, name: str) -> "FormalPoly":
        """Set `name` to zero."""
        i = _POS[name]
        return FormalPoly._raw({e: c for e, c in self.terms.items() if e[i] == 0})

    def subs_params(self, values: Mapping[str, object]) -> "FormalPoly":
        return FormalPoly({e: c.subs(values) for e, c in self.terms.items()})

    def map_coeffs(self, fn) -> "FormalPoly":
        return FormalPoly({e: fn(c) for e, c in self.terms.items()})

    # display --------------------------------------------------------------
    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, key=lambda e: (-sum(e), tuple(-x for x in e))):
            c = self.terms[e]
            mono = "*".join(
                (v if k == 1 else f"{v}^{k}") for v, k in zip(VARS, e) if k
            )
            cs = str(c)
            if not mono:
                parts.append(cs if len(cs) == 1 or cs.lstrip("-").isdigit() else f"({cs})")
                continue
            if c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append(f"-{mono}")
            elif c.is_constant() and "/" not in cs:
                parts.append(f"{cs}*{mono}")
            else:
                parts.append(f"({cs})*{mono}")
        text = "+".join(parts)
        return text.replace("+-", "-")

    def __repr__(self):
        return f"FormalPoly({str(self)!r})"


def sum_polys(polys: Iterable[FormalPoly]) -> FormalPoly:
    out = FormalPoly._raw({})
    for p in polys:
        out = out + p
    return out


def substitute(p: FormalPoly, bindings: Mapping[str, FormalPoly]) -> FormalPoly:
    return p.substitute(bindings)


Dp = FormalPoly.var(D)
Lp = FormalPoly.var(LAM)
Mp = FormalPoly.var(MU)
