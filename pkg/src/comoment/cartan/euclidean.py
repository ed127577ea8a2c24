"""Polynomial differential forms on R^m.

A form term is keyed by ``(J, alpha)``: ``x^alpha dx_J`` with ``J`` an
increasing tuple of 0-based coordinate indices.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from ..foundation import sort_sign, to_q
from . import polynomial as poly
from .base import CartanBackend, Form, PotentialResult


class PolyForm(Form):
    __slots__ = ()


class PolyVectorField:
    """``sum_k comps[k] d/dx_k`` with polynomial components."""

    __slots__ = ("space", "comps")

    def __init__(self, space: "EuclideanSpace", comps):
        comps = [poly.clean({tuple(a): to_q(c) for a, c in p.items()}) for p in comps]
        if len(comps) != space.m:
            raise ValueError(f"vector field needs {space.m} components, got {len(comps)}")
        self.space = space
        self.comps = tuple(comps)

    def __add__(self, other):
        if isinstance(other, int) and other == 0:
            return self
        return PolyVectorField(self.space, [poly.add(p, q) for p, q in zip(self.comps, other.comps)])

    __radd__ = __add__

    def __neg__(self):
        return PolyVectorField(self.space, [poly.scale(p, -1) for p in self.comps])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, s):
        return PolyVectorField(self.space, [poly.scale(p, Fraction(s)) for p in self.comps])

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, PolyVectorField) and self.space == other.space and self.comps == other.comps

    def __hash__(self):
        return hash(tuple(frozenset(p.items()) for p in self.comps))

    def is_zero(self) -> bool:
        return not any(self.comps)

    def __bool__(self):
        return not self.is_zero()

    def apply(self, f: dict) -> dict:
        """Derivative of a polynomial along the field."""
        out: dict = {}
        for k, p in enumerate(self.comps):
            if p:
                out = poly.add(out, poly.mul(p, poly.diff(f, k)))
        return out

    def coefficient_degree(self) -> int:
        return max((poly.degree(p) for p in self.comps), default=-1)

    def __repr__(self):
        names = self.space.names
        parts = [f"({poly.to_str(p, names)})*d/d{names[k]}" for k, p in enumerate(self.comps) if p]
        return "PolyVectorField(" + (" + ".join(parts) or "0") + ")"


class EuclideanDeRham:
    """de Rham cohomology of R^m: constants in degree 0, nothing above.

    The degree-0 functional is evaluation at the base point.
    """

    def __init__(self, space: "EuclideanSpace", degree: int):
        self.space = space
        self.degree = degree
        self.representatives = [space.constant(1)] if degree == 0 else []

    @property
    def dim(self) -> int:
        return len(self.representatives)

    def coordinates(self, a: Form) -> list:
        if self.degree != 0:
            return []
        return [self.space.evaluate_at(a, None).get((), Fraction(0))]


@dataclass(frozen=True)
class EuclideanSpace(CartanBackend):
    m: int
    base_point: tuple = ()

    kind = "euclidean"
    form_class = PolyForm

    def __post_init__(self):
        bp = tuple(to_q(x) for x in self.base_point) if self.base_point else (Fraction(0),) * self.m
        if len(bp) != self.m:
            raise ValueError(f"base point has {len(bp)} coordinates, expected {self.m}")
        object.__setattr__(self, "base_point", bp)

    @property
    def top(self) -> int:
        return self.m

    @property
    def names(self) -> list:
        return ["x", "y", "z"][:self.m] if self.m <= 3 else [f"x{i + 1}" for i in range(self.m)]

    # -- construction helpers ---------------------------------------------

    def polyform(self, degree: int, terms) -> PolyForm:
        """Build from ``{(J, alpha): c}`` with J and alpha given as sequences."""
        return self.form(degree, {(tuple(J), tuple(a)): c for (J, a), c in terms.items()})

    def constant(self, c) -> PolyForm:
        return self.form(0, {((), (0,) * self.m): c})

    def function(self, p: dict) -> PolyForm:
        return self.form(0, {((), a): c for a, c in p.items()})

    def dx(self, *idx) -> PolyForm:
        s, J = sort_sign(idx)
        return self.form(len(idx), {(J, (0,) * self.m): s} if s else {})

    def coordinate(self, k: int) -> PolyForm:
        return self.function(poly.variable(self.m, k))

    def coefficient(self, a: Form, J) -> dict:
        J = tuple(J)
        return {alpha: c for (K, alpha), c in a.terms.items() if K == J}

    def field(self, comps) -> PolyVectorField:
        return PolyVectorField(self, comps)

    def zero_field(self) -> PolyVectorField:
        return PolyVectorField(self, [{} for _ in range(self.m)])

    def unit_field(self, k: int) -> PolyVectorField:
        return PolyVectorField(self, [poly.const(self.m, 1) if i == k else {} for i in range(self.m)])

    def linear_field(self, matrix) -> PolyVectorField:
        """The field ``x -> A x``."""
        comps = []
        for row in matrix:
            p = {}
            for j, a in enumerate(row):
                p = poly.add(p, poly.scale(poly.variable(self.m, j), to_q(a)))
            comps.append(p)
        return PolyVectorField(self, comps)

    # -- Cartan calculus ----------------------------------------------------

    def d(self, a: Form) -> PolyForm:
        if a.degree >= self.m:
            return self.form_class(self, a.degree + 1, {})
        out: dict = {}
        for (J, alpha), c in a.terms.items():
            for k in range(self.m):
                if not alpha[k] or k in J:
                    continue
                s, K = sort_sign((k,) + J)
                beta = alpha[:k] + (alpha[k] - 1,) + alpha[k + 1:]
                key = (K, beta)
                out[key] = out.get(key, 0) + s * c * alpha[k]
        return self.form(a.degree + 1, out)

    def _wedge_terms(self, a: Form, b: Form) -> dict:
        out: dict = {}
        for (J, alpha), c in a.terms.items():
            for (K, beta), e in b.terms.items():
                s, L = sort_sign(J + K)
                if not s:
                    continue
                key = (L, tuple(x + y for x, y in zip(alpha, beta)))
                out[key] = out.get(key, 0) + s * c * e
        return out

    def contract(self, v: PolyVectorField, a: Form) -> PolyForm:
        if a.degree == 0:
            raise ValueError("cannot contract a vector field with a 0-form")
        out: dict = {}
        for (J, alpha), c in a.terms.items():
            for r, k in enumerate(J):
                vk = v.comps[k]
                if not vk:
                    continue
                sign = -1 if r % 2 else 1
                rest = J[:r] + J[r + 1:]
                for beta, e in vk.items():
                    key = (rest, tuple(x + y for x, y in zip(alpha, beta)))
                    out[key] = out.get(key, 0) + sign * c * e
        return self.form(a.degree - 1, out)

    def bracket(self, v: PolyVectorField, w: PolyVectorField) -> PolyVectorField:
        return PolyVectorField(self, [poly.add(v.apply(wk), w.apply(vk), -1)
                                      for vk, wk in zip(v.comps, w.comps)])

    def homotopy(self, a: Form) -> PolyForm:
        """Poincare contracting homotopy centred at the base point.

        On ``y^alpha dy_J`` (``y = x - base``) with ``|J| = k >= 1`` it returns
        ``1/(|alpha|+k) * sum_r (-1)^r y_{J_r} y^alpha dy_{J minus J_r}``.
        """
        if a.degree == 0:
            raise ValueError("the homotopy operator lowers degree; 0-forms have no image")
        b = self.base_point
        shifted: dict = {}
        for (J, alpha), c in a.terms.items():
            for beta, e in poly.shift({alpha: c}, b).items():
                key = (J, beta)
                shifted[key] = shifted.get(key, 0) + e
        out: dict = {}
        for (J, alpha), c in shifted.items():
            if not c:
                continue
            weight = sum(alpha) + len(J)
            for r, k in enumerate(J):
                sign = -1 if r % 2 else 1
                beta = alpha[:k] + (alpha[k] + 1,) + alpha[k + 1:]
                key = (J[:r] + J[r + 1:], beta)
                out[key] = out.get(key, 0) + Fraction(sign, weight) * c
        back: dict = {}
        neg = tuple(-x for x in b)
        for (J, alpha), c in out.items():
            if not c:
                continue
            for beta, e in poly.shift({alpha: c}, neg).items():
                key = (J, beta)
                back[key] = back.get(key, 0) + e
        return self.form(a.degree - 1, back)

    def find_potential(self, a: Form) -> PotentialResult:
        if a.degree == 0:
            raise ValueError("0-forms have no potential")
        if not self.is_closed(a):
            raise ValueError("input form is not closed")
        return PotentialResult(self.homotopy(a))

    def evaluate_at(self, a: Form, point=None) -> dict:
        pt = self.base_point if point is None else tuple(to_q(x) for x in point)
        if len(pt) != self.m:
            raise ValueError(f"point has {len(pt)} coordinates, expected {self.m}")
        out: dict = {}
        for (J, alpha), c in a.terms.items():
            out[J] = out.get(J, 0) + poly.evaluate({alpha: c}, pt)
        return {J: v for J, v in out.items() if v}

    def de_rham(self, degree: int) -> EuclideanDeRham:
        return EuclideanDeRham(self, degree)

    # -- solver support ------------------------------------------------------

    def stratum(self, key) -> tuple:
        J, alpha = key
        return tuple(a + (1 if i in J else 0) for i, a in enumerate(alpha))

    def split_strata(self, a: Form) -> dict:
        out: dict = {}
        for key, c in a.terms.items():
            out.setdefault(self.stratum(key), {})[key] = c
        return out

    def stratum_keys(self, degree: int, stratum, max_degree: int | None = None) -> list:
        """Term keys of the given form degree lying in a multidegree stratum."""
        support = [i for i, b in enumerate(stratum) if b]
        keys = []
        for J in combinations(support, degree):
            alpha = tuple(b - (1 if i in J else 0) for i, b in enumerate(stratum))
            if max_degree is not None and sum(alpha) > max_degree:
                continue
            keys.append((J, alpha))
        return keys

    def coefficient_degree(self, a: Form) -> int:
        return max((sum(alpha) for (_, alpha) in a.terms), default=-1)

    def form_str(self, a: Form) -> str:
        if not a.terms:
            return "0"
        by_J: dict = {}
        for (J, alpha), c in a.terms.items():
            by_J.setdefault(J, {})[alpha] = c
        names = self.names
        parts = []
        for J in sorted(by_J):
            coeff = poly.to_str(by_J[J], names)
            basis = "^".join(f"d{names[k]}" for k in J)
            if not basis:
                parts.append(coeff)
            elif coeff == "1":
                parts.append(basis)
            else:
                parts.append(f"({coeff})*{basis}")
        return " + ".join(parts)
