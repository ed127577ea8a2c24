"""Sparse multivariate polynomials with rational coefficients.

A polynomial is a dict mapping exponent tuples to nonzero Fractions.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product
from math import comb


def clean(p: dict) -> dict:
    return {a: c for a, c in p.items() if c}


def const(m: int, c) -> dict:
    c = Fraction(c)
    return {(0,) * m: c} if c else {}


def monomial(alpha, c=1) -> dict:
    c = Fraction(c)
    return {tuple(alpha): c} if c else {}


def variable(m: int, k: int) -> dict:
    return {tuple(int(i == k) for i in range(m)): Fraction(1)}


def add(p: dict, q: dict, s=1) -> dict:
    out = dict(p)
    for a, c in q.items():
        v = out.get(a, 0) + s * c
        if v:
            out[a] = v
        else:
            out.pop(a, None)
    return out


def scale(p: dict, s) -> dict:
    if not s:
        return {}
    return {a: c * s for a, c in p.items()}


def mul(p: dict, q: dict) -> dict:
    out: dict = {}
    for a, c in p.items():
        for b, e in q.items():
            k = tuple(x + y for x, y in zip(a, b))
            out[k] = out.get(k, 0) + c * e
    return clean(out)


def diff(p: dict, k: int) -> dict:
    out = {}
    for a, c in p.items():
        if a[k]:
            b = a[:k] + (a[k] - 1,) + a[k + 1:]
            out[b] = c * a[k]
    return out


def evaluate(p: dict, point) -> Fraction:
    total = Fraction(0)
    for a, c in p.items():
        term = c
        for x, e in zip(point, a):
            if e:
                term *= Fraction(x) ** e
        total += term
    return total


def shift(p: dict, b) -> dict:
    """The polynomial ``y -> p(y + b)``."""
    if not any(b):
        return dict(p)
    out: dict = {}
    for a, c in p.items():
        ranges = [range(e + 1) for e in a]
        for sub in product(*ranges):
            coeff = c
            for e, s, bi in zip(a, sub, b):
                if s < e:
                    coeff *= comb(e, s) * Fraction(bi) ** (e - s)
            if coeff:
                out[sub] = out.get(sub, 0) + coeff
    return clean(out)


def degree(p: dict) -> int:
    """Total degree; -1 for the zero polynomial."""
    return max((sum(a) for a in p), default=-1)


def monomials(m: int, max_degree: int) -> list:
    """Exponent tuples of total degree <= max_degree, graded then lexicographic."""
    out = []
    for d in range(max_degree + 1):
        out.extend(sorted((a for a in product(range(d + 1), repeat=m) if sum(a) == d), reverse=True))
    return out


def to_str(p: dict, names=None) -> str:
    if not p:
        return "0"
    m = len(next(iter(p)))
    names = names or (["x", "y", "z"] if m <= 3 else [f"x{i + 1}" for i in range(m)])
    parts = []
    for a in sorted(p, key=lambda a: (-sum(a), tuple(-x for x in a))):
        c = p[a]
        mono = "*".join(n if e == 1 else f"{n}^{e}" for n, e in zip(names, a) if e)
        if not mono:
            parts.append(str(c))
        elif c == 1:
            parts.append(mono)
        elif c == -1:
            parts.append("-" + mono)
        else:
            parts.append(f"{c}*{mono}")
    return " + ".join(parts).replace("+ -", "- ")
