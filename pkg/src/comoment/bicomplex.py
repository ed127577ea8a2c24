"""The double complex Lambda^i g* (x) Omega^j and its total complex.

A :class:`Bigraded` element of bidegree ``(i, j)`` is a dict from increasing
g-index tuples of length ``i`` to forms of degree ``j``; the value at ``I``
is the form obtained by evaluating on ``(e_{I_1}, ..., e_{I_i})``.
"""

from __future__ import annotations

from fractions import Fraction

from .cartan import Form
from .foundation import Echelon, index_sets
from .liealg import LieAlgebra, ce_cohomology


class Bigraded:
    __slots__ = ("algebra", "space", "i", "j", "comps")

    def __init__(self, algebra: LieAlgebra, space, i: int, j: int, comps=None):
        self.algebra = algebra
        self.space = space
        self.i = i
        self.j = j
        clean = {}
        for I, form in (comps or {}).items():
            I = tuple(I)
            if len(I) != i:
                raise ValueError(f"index set {I} does not have length {i}")
            if form.degree != j:
                raise ValueError(f"component at {I} has degree {form.degree}, expected {j}")
            if not form.is_zero():
                clean[I] = form
        self.comps = clean

    @property
    def bidegree(self) -> tuple:
        return (self.i, self.j)

    def _like(self, comps):
        return Bigraded(self.algebra, self.space, self.i, self.j, comps)

    def __add__(self, other):
        if isinstance(other, int) and other == 0:
            return self
        if other.bidegree != self.bidegree:
            raise ValueError(f"bidegree mismatch {self.bidegree} vs {other.bidegree}")
        out = dict(self.comps)
        for I, f in other.comps.items():
            out[I] = out[I] + f if I in out else f
        return self._like(out)

    __radd__ = __add__

    def __neg__(self):
        return self._like({I: -f for I, f in self.comps.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, s):
        s = Fraction(s)
        return self._like({I: f * s for I, f in self.comps.items()} if s else {})

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, int) and other == 0:
            return not self.comps
        return isinstance(other, Bigraded) and self.bidegree == other.bidegree and self.comps == other.comps

    def __hash__(self):
        return hash((self.i, self.j, frozenset(self.comps.items())))

    def is_zero(self) -> bool:
        return not self.comps

    def __getitem__(self, I) -> Form:
        I = tuple(I)
        if I in self.comps:
            return self.comps[I]
        return self.space.form_class(self.space, self.j, {})

    def delta(self) -> "Bigraded":
        """CE differential on the Lambda g* factor."""
        if self.i >= self.algebra.dim:
            return Bigraded(self.algebra, self.space, self.i + 1, self.j)
        return Bigraded(self.algebra, self.space, self.i + 1, self.j, self.algebra.delta(self.comps, self.i))

    def d(self) -> "Bigraded":
        """de Rham differential on the form factor."""
        if self.j >= self.space.top:
            return Bigraded(self.algebra, self.space, self.i, self.j + 1)
        return Bigraded(self.algebra, self.space, self.i, self.j + 1,
                        {I: self.space.d(f) for I, f in self.comps.items()})

    def coordinates(self) -> dict:
        return {(I, key): c for I, f in self.comps.items() for key, c in f.terms.items()}

    def coefficient_degree(self) -> int:
        return max((self.space.coefficient_degree(f) for f in self.comps.values()), default=-1)

    def __repr__(self):
        body = ", ".join(f"{I}: {self.space.form_str(f)}" for I, f in sorted(self.comps.items()))
        return f"Bigraded({self.i}, {self.j}; {{{body}}})"


class Total:
    """Element of the total complex C^k, stored by CE degree ``i``."""

    __slots__ = ("algebra", "space", "degree", "parts")

    def __init__(self, algebra: LieAlgebra, space, degree: int, parts=None):
        self.algebra = algebra
        self.space = space
        self.degree = degree
        clean = {}
        for b in (parts.values() if isinstance(parts, dict) else parts or ()):
            if b.i + b.j != degree:
                raise ValueError(f"bidegree {b.bidegree} does not have total degree {degree}")
            if b.is_zero():
                continue
            clean[b.i] = clean[b.i] + b if b.i in clean else b
        self.parts = {i: b for i, b in clean.items() if not b.is_zero()}

    def component(self, i: int) -> Bigraded:
        return self.parts.get(i) or Bigraded(self.algebra, self.space, i, self.degree - i)

    def _like(self, parts):
        return Total(self.algebra, self.space, self.degree, parts)

    def __add__(self, other):
        if isinstance(other, int) and other == 0:
            return self
        if other.degree != self.degree:
            raise ValueError("total degree mismatch")
        return self._like(list(self.parts.values()) + list(other.parts.values()))

    __radd__ = __add__

    def __neg__(self):
        return self._like([-b for b in self.parts.values()])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, s):
        return self._like([b * s for b in self.parts.values()])

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, int) and other == 0:
            return not self.parts
        return isinstance(other, Total) and self.degree == other.degree and self.parts == other.parts

    def __hash__(self):
        return hash((self.degree, frozenset(self.parts.items())))

    def is_zero(self) -> bool:
        return not self.parts

    def coordinates(self) -> dict:
        return {(i,) + k: c for i, b in self.parts.items() for k, c in b.coordinates().items()}

    def __repr__(self):
        return f"Total(degree={self.degree}, parts={list(self.parts.values())!r})"


def total_differential(n: int, x: Total) -> Total:
    """``D = delta + (-1)^n (-1)^{i+j} d`` on the (i, j) component."""
    out = []
    for b in x.parts.values():
        out.append(b.delta())
        sign = -1 if (n + b.i + b.j) % 2 else 1
        out.append(b.d() * sign)
    parts = [b for b in out if b.i <= x.algebra.dim and b.j <= x.space.top]
    return Total(x.algebra, x.space, x.degree + 1, parts)


def unit(algebra: LieAlgebra, space, I, key, j: int) -> Bigraded:
    return Bigraded(algebra, space, len(I), j, {tuple(I): space.form_class(space, j, {key: Fraction(1)})})


def bigraded_from_coordinates(algebra, space, i: int, j: int, coords: dict) -> Bigraded:
    comps: dict = {}
    for (I, key), c in coords.items():
        comps.setdefault(I, {})[key] = c
    return Bigraded(algebra, space, i, j, {I: space.form_class(space, j, t) for I, t in comps.items()})


def all_index_sets(algebra: LieAlgebra, i: int) -> list:
    return index_sets(algebra.dim, i)


def _delta_echelon(algebra: LieAlgebra, i: int) -> Echelon:
    ech = Echelon()
    for I in algebra.ce_basis(i):
        ech.add(I, algebra.delta({I: Fraction(1)}, i))
    return ech


def delta_potential(b: Bigraded) -> Bigraded | None:
    """Some ``x`` with ``delta x = b``, solved form-term by form-term; None if b is not delta-exact."""
    L, sp = b.algebra, b.space
    if b.i == 0:
        return Bigraded(L, sp, 0, b.j) if b.is_zero() else None
    by_key: dict = {}
    for I, form in b.comps.items():
        for key, c in form.terms.items():
            by_key.setdefault(key, {})[I] = c
    ech = _delta_echelon(L, b.i - 1)
    coords = {}
    for key in sorted(by_key):
        x = ech.express(by_key[key])
        if x is None:
            return None
        for I, c in x.items():
            coords[(I, key)] = c
    return bigraded_from_coordinates(L, sp, b.i - 1, b.j, coords)


def ce_class_parts(b: Bigraded) -> list:
    """``[phi_s(b)]``: the H^i(g) coordinates of b as forms (zero forms where empty)."""
    L, sp = b.algebra, b.space
    if b.i > L.dim:
        return []
    vals = ce_cohomology(L, b.i).coordinates(b.comps)
    return [sp.zero(b.j) if v is None else v for v in vals]


def ce_representatives(algebra: LieAlgebra, i: int) -> list:
    if i > algebra.dim:
        return []
    return ce_cohomology(algebra, i).representatives


def tensor(algebra: LieAlgebra, space, i: int, cochain: dict, form: Form) -> Bigraded:
    """``cochain (x) form`` as a bigraded element of bidegree (i, deg form)."""
    return Bigraded(algebra, space, i, form.degree, {I: form * c for I, c in cochain.items()})
