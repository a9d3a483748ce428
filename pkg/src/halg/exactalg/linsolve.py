"""Gauss-Jordan elimination over QQ(params) on sparse rows."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Hashable, Iterable, Mapping, Sequence

from .scalar import Scalar

Unknown = Hashable


@dataclass(frozen=True)
class LinearEquation:
    coeffs: Mapping[Unknown, Scalar]
    rhs: Scalar = field(default_factory=lambda: Scalar(0))
    label: object = None


class Inconsistent(ValueError):
    """The system has no solution; `equation` is a label of a violated row."""

    def __init__(self, message: str, equation=None):
        super().__init__(message)
        self.equation = equation


@dataclass
class SolutionSpace:
    unknowns: list[Unknown]
    particular: dict[Unknown, Scalar]
    kernel: list[dict[Unknown, Scalar]]
    rank: int = 0

    @property
    def dimension(self) -> int:
        return len(self.kernel)

    def vector(self, free_values: Sequence[Scalar | int] = ()) -> dict[Unknown, Scalar]:
        """The solution particular + sum(t_i * kernel_i)."""
        out = dict(self.particular)
        for t, k in zip(free_values, self.kernel):
            for u, c in k.items():
                out[u] = out.get(u, Scalar(0)) + c * t
        return {u: c for u, c in out.items() if not c.is_zero()}


def _as_equation(eq) -> LinearEquation:
    if isinstance(eq, LinearEquation):
        return eq
    coeffs, rhs = eq
    return LinearEquation(coeffs, Scalar._coerce(rhs))


def solve_linear(
    equations: Iterable[LinearEquation | tuple[Mapping[Unknown, Scalar], Scalar]],
    unknowns: Sequence[Unknown] | None = None,
) -> SolutionSpace:
    """Full affine solution set of a linear system.

    Unknown order (given, or first-appearance order) decides pivot choice, so
    the kernel basis is the canonical one read off the reduced echelon form:
    each basis vector has a 1 at its free unknown and 0 at the other free
    unknowns.  Raises `Inconsistent` when some equation reduces to 0 = c != 0.
    """
    eqs = [_as_equation(e) for e in equations]
    if unknowns is None:
        order: dict[Unknown, int] = {}
        for e in eqs:
            for u in e.coeffs:
                order.setdefault(u, len(order))
        unknowns = list(order)
    else:
        unknowns = list(unknowns)
        order = {u: i for i, u in enumerate(unknowns)}
        for e in eqs:
            for u in e.coeffs:
                if u not in order:
                    raise KeyError(f"equation mentions undeclared unknown {u!r}")

    # rows: dict column-index -> Scalar, plus rhs under key -1
    pivots: dict[int, dict[int, Scalar]] = {}
    for e in eqs:
        row = {order[u]: Scalar._coerce(c) for u, c in e.coeffs.items() if not Scalar._coerce(c).is_zero()}
        rhs = Scalar._coerce(e.rhs)
        if not rhs.is_zero():
            row[-1] = rhs
        row = _reduce(row, pivots)
        cols = [c for c in row if c >= 0]
        if not cols:
            if -1 in row:
                raise Inconsistent(f"equation {e.label!r} reduces to 0 = {row[-1]}", e.label)
            continue
        p = min(cols)
        inv = row[p].inverse()
        row = {c: v * inv for c, v in row.items()}
        row[p] = Scalar(1)
        # back-substitute into existing pivot rows to keep them reduced
        for q, other in pivots.items():
            f = other.get(p)
            if f is not None:
                pivots[q] = _axpy(other, row, -f)
        pivots[p] = row

    n = len(unknowns)
    particular = {}
    for p, row in pivots.items():
        if -1 in row:
            particular[unknowns[p]] = row[-1]
    kernel = []
    free = [c for c in range(n) if c not in pivots]
    for f in free:
        vec = {unknowns[f]: Scalar(1)}
        for p, row in pivots.items():
            v = row.get(f)
            if v is not None:
                vec[unknowns[p]] = -v
        kernel.append(dict(sorted(vec.items(), key=lambda kv: order[kv[0]])))
    return SolutionSpace(unknowns, particular, kernel, rank=len(pivots))


def _axpy(x: dict[int, Scalar], y: dict[int, Scalar], a: Scalar) -> dict[int, Scalar]:
    out = dict(x)
    for c, v in y.items():
        if c in out:
            s = out[c] + a * v
            if s.is_zero():
                del out[c]
            else:
                out[c] = s
        else:
            out[c] = a * v
    return out


def _reduce(row: dict[int, Scalar], pivots: dict[int, dict[int, Scalar]]) -> dict[int, Scalar]:
    for p in sorted(c for c in row if c in pivots):
        f = row.get(p)
        if f is not None:
            row = _axpy(row, pivots[p], -f)
    return row


def residuals(
    equations: Iterable[LinearEquation | tuple[Mapping[Unknown, Scalar], Scalar]],
    values: Mapping[Unknown, Scalar],
) -> list[tuple[object, Scalar]]:
    """Nonzero (label, lhs - rhs) for equations violated by `values`."""
    bad = []
    for e in map(_as_equation, equations):
        s = -Scalar._coerce(e.rhs)
        for u, c in e.coeffs.items():
            v = values.get(u)
            if v is not None:
                s = s + Scalar._coerce(c) * v
        if not s.is_zero():
            bad.append((e.label, s))
    return bad
