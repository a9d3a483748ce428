"""Dense reference evaluators written straight from the defining identities.

Products are n×n×n Fraction tensors T[i][j][k] (coefficient of e_k in
e_i·e_j), maps are n×n matrices M[i][k] (coefficient of e_k in α(e_i)).
Nothing here imports halg arithmetic; the tests compare verdicts and
residual vectors with the library checkers.
"""
from fractions import Fraction
from itertools import product as cart


def dense_table(A, name):
    n = A.dim
    t = A.product(name)
    T = [[[Fraction(0)] * n for _ in range(n)] for _ in range(n)]
    for (i, j), v in t.entries.items():
        for k, c in v.items():
            T[i][j][k] = c.constant_value()
    return T


def dense_map(A, name):
    n = A.dim
    m = A.map(name)
    M = [[Fraction(0)] * n for _ in range(n)]
    for i, v in m.entries.items():
        for k, c in v.items():
            M[i][k] = c.constant_value()
    return M


def mul(T, x, y):
    n = len(T)
    out = [Fraction(0)] * n
    for i, j in cart(range(n), range(n)):
        if x[i] and y[j]:
            for k in range(n):
                out[k] += x[i] * y[j] * T[i][j][k]
    return out


def app(M, x):
    n = len(M)
    return [sum((x[i] * M[i][k] for i in range(n)), Fraction(0)) for k in range(n)]


def e(n, i):
    v = [Fraction(0)] * n
    v[i] = Fraction(1)
    return v


def lin(*terms):
    n = len(terms[0][1])
    return [sum((c * v[k] for c, v in terms), Fraction(0)) for k in range(n)]


def sg(k):
    return -1 if k % 2 else 1


def hom_lie(T, M, par):
    """All residuals of super skew-symmetry and the cyclic Hom-Jacobi sum."""
    n = len(T)
    out = {}
    for x, y in cart(range(n), repeat=2):
        out[("skew", x, y)] = lin((1, mul(T, e(n, x), e(n, y))), (sg(par[x] * par[y]), mul(T, e(n, y), e(n, x))))
    for x, y, z in cart(range(n), repeat=3):
        X, Y, Z = e(n, x), e(n, y), e(n, z)
        out[("jacobi", x, y, z)] = lin(
            (sg(par[x] * par[z]), mul(T, app(M, X), mul(T, Y, Z))),
            (sg(par[y] * par[x]), mul(T, app(M, Y), mul(T, Z, X))),
            (sg(par[z] * par[y]), mul(T, app(M, Z), mul(T, X, Y))),
        )
    return out


def hom_novikov(C, M, par):
    n = len(C)
    out = {}
    for x, y, z in cart(range(n), repeat=3):
        X, Y, Z = e(n, x), e(n, y), e(n, z)
        assoc_xy = lin((1, mul(C, mul(C, X, Y), app(M, Z))), (-1, mul(C, app(M, X), mul(C, Y, Z))))
        assoc_yx = lin((1, mul(C, mul(C, Y, X), app(M, Z))), (-1, mul(C, app(M, Y), mul(C, X, Z))))
        out[("left", x, y, z)] = lin((1, assoc_xy), (-sg(par[x] * par[y]), assoc_yx))
        out[("right", x, y, z)] = lin(
            (1, mul(C, mul(C, X, Y), app(M, Z))), (-sg(par[y] * par[z]), mul(C, mul(C, X, Z), app(M, Y)))
        )
    return out


def gd_compat(B, C, M, par):
    n = len(B)
    out = {}
    for x, y, z in cart(range(n), repeat=3):
        X, Y, Z = e(n, x), e(n, y), e(n, z)
        s = sg(par[y] * par[z])
        out[("compat", x, y, z)] = lin(
            (1, mul(B, mul(C, X, Y), app(M, Z))),
            (-s, mul(B, mul(C, X, Z), app(M, Y))),
            (1, mul(C, mul(B, X, Y), app(M, Z))),
            (-s, mul(C, mul(B, X, Z), app(M, Y))),
            (-1, mul(C, app(M, X), mul(B, Y, Z))),
        )
    return out


def is_zero_family(res):
    return all(not any(v) for v in res.values())


# -- λ-brackets through sympy ------------------------------------------------

import sympy

d_, lam_, mu_ = sympy.symbols("D Lm Mu")


def to_sympy(p, params=()):
    syms = {"D": d_, "Lm": lam_, "Mu": mu_}
    syms.update({q: sympy.Symbol(q) for q in params})
    return sympy.sympify(str(p).replace("^", "**"), locals=syms)


class LambdaOracle:
    """table[(i, j)] = {k: expr(D, Lm)}, alpha[i] = {k: expr(D)}; parities par."""

    def __init__(self, table, alpha, par):
        self.table, self.alpha, self.par = table, alpha, par

    def gen_bracket(self, i, j, nu):
        return {k: sympy.expand(p.subs(lam_, nu, simultaneous=True)) for k, p in self.table.get((i, j), {}).items()}

    def bracket(self, x, y, nu):
        """[x_ν y] for x, y dicts gen -> expr in D (and spectator symbols)."""
        out = {}
        for a, f in x.items():
            for b, g in y.items():
                fa = f.subs(d_, -nu, simultaneous=True)
                gb = g.subs(d_, d_ + nu, simultaneous=True)
                for k, p in self.gen_bracket(a, b, nu).items():
                    out[k] = sympy.expand(out.get(k, 0) + fa * gb * p)
        return out

    def apply_alpha(self, x):
        out = {}
        for a, f in x.items():
            for k, p in self.alpha.get(a, {}).items():
                out[k] = sympy.expand(out.get(k, 0) + f * p)
        return out

    def jacobi(self, a, b, c):
        A, B, C = ({a: sympy.Integer(1)}, {b: sympy.Integer(1)}, {c: sympy.Integer(1)})
        s = -1 if self.par[a] * self.par[b] % 2 else 1
        t1 = self.bracket(self.apply_alpha(A), self.bracket(B, C, mu_), lam_)
        t2 = self.bracket(self.bracket(A, B, lam_), self.apply_alpha(C), lam_ + mu_)
        t3 = self.bracket(self.apply_alpha(B), self.bracket(A, C, lam_), mu_)
        keys = set(t1) | set(t2) | set(t3)
        out = {k: sympy.expand(t1.get(k, 0) - t2.get(k, 0) - s * t3.get(k, 0)) for k in keys}
        return {k: v for k, v in out.items() if v != 0}

    def skew(self, a, b):
        s = -1 if self.par[a] * self.par[b] % 2 else 1
        first = self.gen_bracket(a, b, lam_)
        second = {k: sympy.expand(p.subs(lam_, -lam_ - d_, simultaneous=True)) for k, p in self.gen_bracket(b, a, lam_).items()}
        keys = set(first) | set(second)
        out = {k: sympy.expand(first.get(k, 0) + s * second.get(k, 0)) for k in keys}
        return {k: v for k, v in out.items() if v != 0}


def lambda_oracle(R):
    tab = {key: {k: to_sympy(p, R.params) for k, p in v.items()} for key, v in R.bracket.items()}
    al = {i: {k: to_sympy(p, R.params) for k, p in v.items()} for i, v in (R.alpha or {}).items()}
    if R.alpha is None:
        al = {i: {i: sympy.Integer(1)} for i in range(R.rank)}
    return LambdaOracle(tab, al, R.generators.parities)


def cocycle_oracle(G, fpolys):
    """Nonzero residuals of the skew relation (with ∂c = 0) and the expanded
    cocycle identity for f on the quadratic algebra of G.

    fpolys: {(u, v): sympy expr in Lm}; G: GDStructure with constant scalars
    or parameters (converted through str)."""
    A = G.algebra
    n, par = A.dim, A.basis.parities
    br, ci, al = A.product(G.bracket), A.product(G.circ), A.map(G.alpha)

    def vec(v):
        return {k: sympy.sympify(str(c).replace("^", "**")) for k, c in v.items()}

    def unit(i):
        return {i: sympy.Integer(1)}

    def f(nu, x, y):
        acc = sympy.Integer(0)
        for u, a in x.items():
            for v, b in y.items():
                p = fpolys.get((u, v))
                if p is not None:
                    acc += a * b * p.subs(lam_, nu, simultaneous=True)
        return acc

    def add(*terms):
        out = {}
        for c, v in terms:
            for k, x in v.items():
                out[k] = out.get(k, 0) + c * x
        return out

    def prod(t, x, y):
        return add(*((a * b, vec(t(i, j))) for i, a in x.items() for j, b in y.items()))

    def sg(k):
        return -1 if k % 2 else 1

    bad = []
    L, M = lam_, mu_
    for u in range(n):
        for v in range(n):
            s = sg(par[u] * par[v])
            lhs = fpolys.get((u, v), 0)
            rhs = -s * fpolys.get((v, u), sympy.Integer(0)).subs(lam_, -lam_) if (v, u) in fpolys else 0
            if sympy.expand(lhs - rhs) != 0:
                bad.append(("skew", u, v))
            for w in range(n):
                U, V, W = unit(u), unit(v), unit(w)
                aU, aV, aW = vec(al(u)), vec(al(v)), vec(al(w))
                left = (
                    f(L + M, prod(br, V, U), aW)
                    - M * f(L + M, prod(ci, V, U), aW)
                    + s * L * f(L + M, prod(ci, U, V), aW)
                )
                right = (
                    f(L, aU, prod(br, W, V))
                    + L * f(L, aU, prod(ci, W, V))
                    + M * f(L, aU, add((1, prod(ci, W, V)), (sg(par[v] * par[w]), prod(ci, V, W))))
                    - s * (
                        f(M, aV, prod(br, W, U))
                        + (M + L) * f(M, aV, prod(ci, W, U))
                        + sg(par[u] * par[w]) * L * f(M, aV, prod(ci, U, W))
                    )
                )
                if sympy.expand(left - right) != 0:
                    bad.append(("cocycle", u, v, w))
    return bad
