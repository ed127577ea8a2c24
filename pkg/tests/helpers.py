"""Independent oracles and random generators shared by the test modules.

The oracles here deliberately avoid the package's own sign bookkeeping:
forms are evaluated on vectors through explicit determinants, derivatives
go through sympy, and CE differentials are evaluated from the defining sum.
"""

import random
from fractions import Fraction
from itertools import combinations, permutations

import sympy

from comoment.bicomplex import Bigraded, Total
from comoment.cartan import EuclideanSpace, InvariantModel


def perm_parity(p):
    inv = sum(1 for a in range(len(p)) for b in range(a + 1, len(p)) if p[a] > p[b])
    return -1 if inv % 2 else 1


def det(rows):
    n = len(rows)
    if n == 0:
        return Fraction(1)
    total = Fraction(0)
    for p in permutations(range(n)):
        term = Fraction(perm_parity(p))
        for i in range(n):
            term *= rows[i][p[i]]
            if not term:
                break
        total += term
    return total


def mono_value(alpha, point):
    out = Fraction(1)
    for a, x in zip(alpha, point):
        out *= Fraction(x) ** a
    return out


def eval_form(form, point, vectors):
    """Value of a euclidean form at ``point`` on constant ``vectors``."""
    total = Fraction(0)
    for (J, alpha), c in form.terms.items():
        rows = [[Fraction(v[j]) for j in J] for v in vectors]
        total += c * mono_value(alpha, point) * det(rows)
    return total


def eval_field(v, point):
    return [sum((c * mono_value(a, point) for a, c in comp.items()), Fraction(0)) for comp in v.comps]


def sym_vars(m):
    return sympy.symbols(f"x0:{m}")


def sym_poly(p, xs):
    return sum((sympy.Rational(c.numerator, c.denominator) * sympy.prod([x ** a for x, a in zip(xs, alpha)])
                for alpha, c in p.items()), sympy.Integer(0))


def sym_coeffs(form, xs):
    """``{J: sympy expression}``."""
    out = {}
    for (J, alpha), c in form.terms.items():
        out[J] = out.get(J, 0) + sympy.Rational(c.numerator, c.denominator) * sympy.prod(
            [x ** a for x, a in zip(xs, alpha)])
    return out


def sym_eval_form(coeffs, xs, vectors):
    total = sympy.Integer(0)
    for J, expr in coeffs.items():
        rows = [[Fraction(v[j]) for j in J] for v in vectors]
        d = det(rows)
        if d:
            total += expr * sympy.Rational(d.numerator, d.denominator)
    return total


def oracle_d_value(form, point, vectors):
    """``(d a)(v_0..v_k)`` at a point for constant vectors, via sympy derivatives."""
    m = form.space.m
    xs = sym_vars(m)
    coeffs = sym_coeffs(form, xs)
    total = sympy.Integer(0)
    for i, v in enumerate(vectors):
        rest = vectors[:i] + vectors[i + 1:]
        expr = sym_eval_form(coeffs, xs, rest)
        deriv = sum((sympy.diff(expr, xs[j]) * sympy.Rational(Fraction(v[j]).numerator, Fraction(v[j]).denominator)
                     for j in range(m) if v[j]), sympy.Integer(0))
        total += (-1) ** i * deriv
    val = total.subs({x: sympy.Rational(Fraction(p).numerator, Fraction(p).denominator) for x, p in zip(xs, point)})
    return Fraction(int(sympy.numer(val)), int(sympy.denom(val)))


def oracle_bracket(v, w):
    """Component polynomials of [v, w] = v(w) - w(v), through sympy, as sympy expressions."""
    m = v.space.m
    xs = sym_vars(m)
    V = [sym_poly(p, xs) for p in v.comps]
    W = [sym_poly(p, xs) for p in w.comps]
    return [sympy.expand(sum(V[j] * sympy.diff(W[k], xs[j]) - W[j] * sympy.diff(V[k], xs[j]) for j in range(m)))
            for k in range(m)]


def field_as_sympy(v):
    xs = sym_vars(v.space.m)
    return [sympy.expand(sym_poly(p, xs)) for p in v.comps]


# -- CE oracle ----------------------------------------------------------------

def bracket_vec(L, x, y):
    out = [Fraction(0)] * L.dim
    for i, a in enumerate(x):
        for j, b in enumerate(y):
            if a and b:
                for k, c in L.bracket_basis(i, j).items():
                    out[k] += a * b * c
    return out


def eval_cochain(L, cochain, vectors):
    """Alternating multilinear evaluation of ``{I: c}`` on vectors of g."""
    total = Fraction(0)
    for I, c in cochain.items():
        total += c * det([[Fraction(v[i]) for i in I] for v in vectors])
    return total


def oracle_delta(L, cochain, k):
    """delta f on basis (k+1)-tuples from the defining sum."""
    out = {}
    basis = [[Fraction(int(i == j)) for j in range(L.dim)] for i in range(L.dim)]
    for I in combinations(range(L.dim), k + 1):
        X = [basis[i] for i in I]
        val = Fraction(0)
        for a in range(k + 1):
            for b in range(a + 1, k + 1):
                rest = [X[t] for t in range(k + 1) if t not in (a, b)]
                val += (-1) ** (a + b) * eval_cochain(L, cochain, [bracket_vec(L, X[a], X[b])] + rest)
        if val:
            out[I] = val
    return out


# -- random data --------------------------------------------------------------

def rand_q(rng, span=3, dens=(1, 1, 1, 2)):
    return Fraction(rng.randint(-span, span), rng.choice(dens))


def random_poly(rng, m, maxdeg, nterms=3):
    p = {}
    for _ in range(nterms):
        alpha = [0] * m
        for _ in range(rng.randint(0, maxdeg)):
            alpha[rng.randrange(m)] += 1
        c = rand_q(rng)
        if c:
            p[tuple(alpha)] = p.get(tuple(alpha), 0) + c
    return {a: c for a, c in p.items() if c}


def random_polyform(rng, E, degree, maxdeg=3, nterms=4):
    terms = {}
    for _ in range(nterms):
        J = tuple(sorted(rng.sample(range(E.m), degree)))
        alpha = [0] * E.m
        for _ in range(rng.randint(0, maxdeg)):
            alpha[rng.randrange(E.m)] += 1
        terms[(J, tuple(alpha))] = rand_q(rng)
    return E.form(degree, terms)


def random_polyfield(rng, E, maxdeg=2):
    return E.field([random_poly(rng, E.m, maxdeg) for _ in range(E.m)])


def random_algform(rng, M, degree, nterms=3):
    basis = M.h.ce_basis(degree)
    terms = {}
    for _ in range(nterms):
        terms[rng.choice(basis)] = rand_q(rng)
    return M.form(degree, terms)


def random_algfield(rng, M):
    return M.field([rand_q(rng) for _ in range(M.top)])


def random_form(rng, space, degree):
    if isinstance(space, EuclideanSpace):
        return random_polyform(rng, space, degree)
    return random_algform(rng, space, degree)


def random_field(rng, space):
    if isinstance(space, EuclideanSpace):
        return random_polyfield(rng, space)
    return random_algfield(rng, space)


def top_form_pair(rng, omega, degree_alpha, maxdeg=2):
    """Random observable pair for omega = c * (top volume): v is read off -d(alpha)."""
    sp = omega.space
    (vol_key, c), = omega.terms.items()
    alpha = random_form(rng, sp, degree_alpha)
    da = -sp.d(alpha)
    m = sp.top
    comps = []
    for k in range(m):
        # i_{e_k} omega = c (-1)^k (volume with slot k removed)
        sign = -1 if k % 2 else 1
        if isinstance(sp, EuclideanSpace):
            rest = tuple(i for i in range(m) if i != k)
            comps.append({alpha_: val * sign / c for (J, alpha_), val in da.terms.items() if J == rest})
        else:
            rest = tuple(i for i in range(m) if i != k)
            comps.append(da.terms.get(rest, Fraction(0)) * sign / c)
    v = sp.field(comps)
    return v, alpha


def seeded(seed):
    return random.Random(seed)


EUCLIDEAN_SPACES = [EuclideanSpace(1), EuclideanSpace(2), EuclideanSpace(3), EuclideanSpace(4),
                    EuclideanSpace(2, (Fraction(1), Fraction(-2)))]


def invariant_spaces():
    from comoment.liealg import LieAlgebra, abelian, aff1, so3
    return [InvariantModel(so3()), InvariantModel(aff1()), InvariantModel(abelian(2)),
            InvariantModel(LieAlgebra.from_records(3, [(1, 2, 3, 1)], name="heis3"))]


def oracle_D(n, x):
    """D from its definition, with delta taken from the defining sum term by term."""
    L, sp = x.algebra, x.space
    parts = []
    for b in x.parts.values():
        if b.i < L.dim:
            keys = {key for f in b.comps.values() for key in f.terms}
            comps = {}
            for key in keys:
                scalar = {I: f.terms[key] for I, f in b.comps.items() if key in f.terms}
                for J, c in oracle_delta(L, scalar, b.i).items():
                    comps.setdefault(J, {})
                    comps[J][key] = comps[J].get(key, 0) + c
            parts.append(Bigraded(L, sp, b.i + 1, b.j, {J: sp.form(b.j, t) for J, t in comps.items()}))
        if b.j < sp.top:
            sign = (-1) ** (n + b.i + b.j)
            parts.append(Bigraded(L, sp, b.i, b.j + 1, {I: sp.d(f) * sign for I, f in b.comps.items()}))
    return Total(L, sp, x.degree + 1, parts)


# -- random volume-preserving actions -------------------------------------------

def _matmul(A, B):
    return [[sum(A[i][k] * B[k][j] for k in range(len(B))) for j in range(len(B[0]))] for i in range(len(A))]


def unimodular_pair(rng, m, steps=4):
    """S and S^-1 as products of elementary shears, so no inversion is needed."""
    ident = [[Fraction(int(i == j)) for j in range(m)] for i in range(m)]
    S, Sinv = ident, ident
    for _ in range(steps):
        i, j = rng.sample(range(m), 2)
        c = rng.randint(-2, 2)
        E = [row[:] for row in ident]
        Einv = [row[:] for row in ident]
        E[i][j] = Fraction(c)
        Einv[i][j] = Fraction(-c)
        S = _matmul(S, E)
        Sinv = _matmul(Einv, Sinv)
    return S, Sinv


def random_commuting_action(rng, m, r):
    """r commuting traceless linear fields on R^m: S diag(d) S^-1 with sum(d) = 0.

    Linear fields x -> A x bracket as [A, B] -> -(AB - BA), so commuting
    matrices give an action of the abelian algebra.
    """
    from comoment.liealg import abelian
    from comoment.moment import InfinitesimalAction
    E = EuclideanSpace(m)
    S, Sinv = unimodular_pair(rng, m)
    images = []
    for _ in range(r):
        dvals = [Fraction(rng.randint(-3, 3)) for _ in range(m - 1)]
        dvals.append(-sum(dvals))
        D = [[dvals[i] if i == j else Fraction(0) for j in range(m)] for i in range(m)]
        images.append(E.linear_field(_matmul(_matmul(S, D), Sinv)))
    return InfinitesimalAction(abelian(r), E, images), E.dx(*range(m))
