"""Exact rational functions over QQ in a finite, ordered set of parameters.

A `Scalar` is kept in canonical form: numerator and denominator coprime, and
the denominator monic with respect to graded-lex order on the parameters in
declaration order.  Parameter-free values take a fast path backed by plain
rationals.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from sympy import QQ
from sympy.polys.orderings import grlex
from sympy.polys.rings import PolyElement, ring

_mpq = type(QQ(1, 2))


class ZeroDenominator(ZeroDivisionError):
    pass


@lru_cache(maxsize=None)
def poly_ring(params: tuple[str, ...]):
    return ring(list(params), QQ, grlex)[0]


def _as_q(x) -> object:
    if isinstance(x, _mpq):
        return x
    if isinstance(x, Fraction):
        return QQ(x.numerator, x.denominator)
    return QQ(x)


def _merge_params(p: tuple[str, ...], q: tuple[str, ...]) -> tuple[str, ...]:
    if p == q or not q:
        return p
    if not p:
        return q
    return p + tuple(name for name in q if name not in p)


class Scalar:
    """Element of QQ(params).

    Instances are immutable.  Arithmetic between scalars declared over
    different parameter tuples works over the union of the parameters, the
    left operand's names first.
    """

    __slots__ = ("params", "_q", "_num", "_den")

    def __init__(self, value=0, params: Sequence[str] = ()):
        self.params = tuple(params)
        if isinstance(value, Scalar):
            other = value.lift(self.params) if self.params else value
            self.params = other.params
            self._q, self._num, self._den = other._q, other._num, other._den
            return
        if not self.params:
            self._q = _as_q(value)
            self._num = self._den = None
        else:
            R = poly_ring(self.params)
            self._q = None
            self._num = R(_as_q(value))
            self._den = R.one

    # construction -----------------------------------------------------
    @classmethod
    def _const(cls, q) -> "Scalar":
        s = object.__new__(cls)
        s.params = ()
        s._q = q
        s._num = s._den = None
        return s

    @classmethod
    def _frac(cls, params: tuple[str, ...], num: PolyElement, den: PolyElement) -> "Scalar":
        s = object.__new__(cls)
        s.params = params
        s._q = None
        s._num = num
        s._den = den
        return s

    @classmethod
    def param(cls, name: str, params: Sequence[str] | None = None) -> "Scalar":
        params = tuple(params) if params else (name,)
        if name not in params:
            raise ValueError(f"parameter {name!r} not declared in {params}")
        R = poly_ring(params)
        return cls._frac(params, R.gens[params.index(name)], R.one)

    @classmethod
    def fraction(cls, num: PolyElement, den: PolyElement, params: Sequence[str]) -> "Scalar":
        """Build num/den from polynomials of `poly_ring(params)` and normalize."""
        return normalize(num, den, tuple(params))

    # introspection ----------------------------------------------------
    @property
    def numerator(self) -> PolyElement:
        if self._q is not None:
            return poly_ring(("_",))(QQ(self._q.numerator))
        return self._num

    @property
    def denominator(self) -> PolyElement:
        if self._q is not None:
            return poly_ring(("_",))(QQ(self._q.denominator))
        return self._den

    def is_zero(self) -> bool:
        if self._q is not None:
            return self._q == 0
        return not self._num

    def __bool__(self) -> bool:
        return not self.is_zero()

    def is_constant(self) -> bool:
        if self._q is not None:
            return True
        return self._num.is_ground and self._den.is_ground

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} depends on parameters")
        q = self._q if self._q is not None else self._num.LC
        return Fraction(int(q.numerator), int(q.denominator))

    def free_params(self) -> frozenset[str]:
        if self._q is not None:
            return frozenset()
        used = set()
        for poly in (self._num, self._den):
            for monom in poly.itermonoms():
                used.update(name for name, e in zip(self.params, monom) if e)
        return frozenset(used)

    # coercion ---------------------------------------------------------
    def lift(self, params: tuple[str, ...]) -> "Scalar":
        """Re-express over `params`, which must contain every parameter in use."""
        if params == self.params:
            return self
        if not params:
            if not self.is_constant():
                raise ValueError(f"cannot drop parameters from {self}")
            return Scalar._const(_as_q(self.constant_value()))
        R = poly_ring(params)
        if self._q is not None:
            return Scalar._frac(params, R(self._q), R.one)
        missing = self.free_params() - set(params)
        if missing:
            raise ValueError(f"parameters {sorted(missing)} not in {params}")
        num = _move(self._num, self.params, params)
        den = _move(self._den, self.params, params)
        if den.is_ground:
            return Scalar._frac(params, num, den)
        return _monic(params, num, den)

    @staticmethod
    def _coerce(x) -> "Scalar":
        if isinstance(x, Scalar):
            return x
        if isinstance(x, (int, Fraction, _mpq)):
            return Scalar._const(_as_q(x))
        return NotImplemented

    @staticmethod
    def _unify(a: "Scalar", b: "Scalar"):
        if a.params == b.params:
            return a.params, a, b
        if a._q is not None and b._q is not None:
            return (), a, b
        params = _merge_params(a.params, b.params)
        return params, a.lift(params), b.lift(params)

    # arithmetic -------------------------------------------------------
    def __add__(self, other):
        other = Scalar._coerce(other)
        if other is NotImplemented:
            return other
        if self._q is not None and other._q is not None:
            return Scalar._const(self._q + other._q)
        params, a, b = Scalar._unify(self, other)
        if a._q is not None:
            return Scalar._const(a._q + b._q)
        if a._den == b._den:
            num, den = a._num + b._num, a._den
            if den.is_ground:
                return Scalar._frac(params, num, den)
            return normalize(num, den, params)
        return normalize(a._num * b._den + b._num * a._den, a._den * b._den, params)

    __radd__ = __add__

    def __neg__(self):
        if self._q is not None:
            return Scalar._const(-self._q)
        return Scalar._frac(self.params, -self._num, self._den)

    def __sub__(self, other):
        other = Scalar._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = Scalar._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = Scalar._coerce(other)
        if other is NotImplemented:
            return other
        if self._q is not None and other._q is not None:
            return Scalar._const(self._q * other._q)
        params, a, b = Scalar._unify(self, other)
        if a._q is not None:
            return Scalar._const(a._q * b._q)
        if a._den.is_ground and b._den.is_ground:
            return Scalar._frac(params, a._num * b._num, a._den)
        return normalize(a._num * b._num, a._den * b._den, params)

    __rmul__ = __mul__

    def inverse(self) -> "Scalar":
        if self.is_zero():
            raise ZeroDenominator("inverse of zero")
        if self._q is not None:
            return Scalar._const(1 / self._q)
        return normalize(self._den, self._num, self.params)

    def __truediv__(self, other):
        other = Scalar._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = Scalar._coerce(other)
        if other is NotImplemented:
            return other
        return other * self.inverse()

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        if self._q is not None:
            return Scalar._const(self._q**n)
        return Scalar._frac(self.params, self._num**n, self._den**n)

    # comparison -------------------------------------------------------
    def __eq__(self, other):
        other = Scalar._coerce(other)
        if other is NotImplemented:
            return False
        if self._q is not None and other._q is not None:
            return self._q == other._q
        if self.is_constant() and other.is_constant():
            return self.constant_value() == other.constant_value()
        try:
            _, a, b = Scalar._unify(self, other)
        except ValueError:
            return False
        return a._num * b._den == b._num * a._den

    def __hash__(self):
        if self.is_constant():
            return hash(self.constant_value())
        return hash(("Scalar", self.free_params()))

    # substitution -----------------------------------------------------
    def subs(self, values: dict[str, "Scalar | int | Fraction"]) -> "Scalar":
        """Substitute scalar values for parameters."""
        if self._q is not None or not values:
            return self
        num = _eval_poly(self._num, self.params, values)
        den = _eval_poly(self._den, self.params, values)
        if den.is_zero():
            raise ZeroDenominator(f"denominator of {self} vanishes at {values}")
        return num / den

    # display ----------------------------------------------------------
    def __str__(self):
        if self._q is not None:
            return _fmt_q(self._q)
        num = _fmt_poly(self._num)
        if self._den == 1:
            return num
        den = _fmt_poly(self._den)
        if len(self._num) > 1:
            num = f"({num})"
        if len(self._den) > 1 or not self._den.is_ground:
            den = f"({den})"
        return f"{num}/{den}"

    def __repr__(self):
        return f"Scalar({str(self)!r}, params={self.params})"


def _fmt_q(q) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def _fmt_poly(p: PolyElement) -> str:
    return str(p).replace("**", "^").replace(" ", "")


def _move(p: PolyElement, src: tuple[str, ...], dst: tuple[str, ...]) -> PolyElement:
    R = poly_ring(dst)
    index = [dst.index(name) if name in dst else None for name in src]
    terms = {}
    for monom, c in p.iterterms():
        new = [0] * len(dst)
        for e, j in zip(monom, index):
            if e:
                new[j] = e
        terms[tuple(new)] = c
    return R.from_dict(terms) if terms else R.zero


def _eval_poly(p: PolyElement, params, values) -> Scalar:
    total = Scalar(0)
    for monom, c in p.iterterms():
        term = Scalar._const(c)
        for name, e in zip(params, monom):
            if not e:
                continue
            if name in values:
                term = term * Scalar._coerce(values[name]) ** e
            else:
                term = term * Scalar.param(name, params) ** e
        total = total + term
    return total


def _monic(params, num, den) -> Scalar:
    lc = den.LC
    if lc != 1:
        num = num.quo_ground(lc)
        den = den.quo_ground(lc)
    return Scalar._frac(params, num, den)


def normalize(num: PolyElement, den: PolyElement, params: tuple[str, ...]) -> Scalar:
    """Canonical form of num/den: coprime, denominator monic in grlex order."""
    if not den:
        raise ZeroDenominator("zero denominator")
    if not num:
        R = poly_ring(params)
        return Scalar._frac(params, R.zero, R.one)
    if not den.is_ground:
        g = num.gcd(den)
        if not g.is_ground:
            num = num.exquo(g)
            den = den.exquo(g)
    return _monic(params, num, den)


def scalar_params(values: Iterable[Scalar]) -> tuple[str, ...]:
    params: tuple[str, ...] = ()
    for v in values:
        params = _merge_params(params, v.params)
    return params


ZERO = Scalar(0)
ONE = Scalar(1)
