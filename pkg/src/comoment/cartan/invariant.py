"""Invariant-forms model: forms are CE cochains of a Lie algebra h.

Vector fields are elements of h, ``d`` is the CE differential of h and the
contraction is insertion into the first slot.  This is the finite dgca of
left-invariant forms on a group with Lie algebra h, evaluated at the identity.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ..foundation import Echelon, sort_sign, to_q
from ..liealg import Cohomology, LieAlgebra, ce_cohomology
from .base import CartanBackend, Form, PotentialResult


class AlgForm(Form):
    __slots__ = ()


class AlgVectorField:
    """An element of h acting as an invariant vector field."""

    __slots__ = ("space", "coeffs")

    def __init__(self, space: "InvariantModel", coeffs):
        coeffs = tuple(to_q(c) for c in coeffs)
        if len(coeffs) != space.top:
            raise ValueError(f"element of h needs {space.top} coordinates, got {len(coeffs)}")
        self.space = space
        self.coeffs = coeffs

    def __add__(self, other):
        if isinstance(other, int) and other == 0:
            return self
        return AlgVectorField(self.space, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return AlgVectorField(self.space, [-a for a in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, s):
        s = Fraction(s)
        return AlgVectorField(self.space, [a * s for a in self.coeffs])

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, AlgVectorField) and self.space == other.space and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __bool__(self):
        return not self.is_zero()

    def coefficient_degree(self) -> int:
        return 0 if any(self.coeffs) else -1

    def __repr__(self):
        parts = [f"{c}*e{i + 1}" for i, c in enumerate(self.coeffs) if c]
        return "AlgVectorField(" + (" + ".join(parts) or "0") + ")"


class InvariantDeRham:
    def __init__(self, space: "InvariantModel", cohomology: Cohomology, degree: int):
        self.space = space
        self.degree = degree
        self.cohomology = cohomology
        self.representatives = [space.form(degree, r) for r in cohomology.representatives]

    @property
    def dim(self) -> int:
        return self.cohomology.dim

    def coordinates(self, a: Form) -> list:
        return [c if c is not None else Fraction(0) for c in self.cohomology.coordinates(a.terms)]


@dataclass(frozen=True)
class InvariantModel(CartanBackend):
    h: LieAlgebra

    kind = "invariant"
    form_class = AlgForm

    @property
    def top(self) -> int:
        return self.h.dim

    def algform(self, degree: int, terms) -> AlgForm:
        return self.form(degree, {tuple(I): c for I, c in terms.items()})

    def eps(self, *idx) -> AlgForm:
        s, I = sort_sign(idx)
        return self.form(len(idx), {I: s} if s else {})

    def constant(self, c) -> AlgForm:
        return self.form(0, {(): c})

    def field(self, coeffs) -> AlgVectorField:
        return AlgVectorField(self, coeffs)

    def zero_field(self) -> AlgVectorField:
        return AlgVectorField(self, [0] * self.top)

    def unit_field(self, k: int) -> AlgVectorField:
        return AlgVectorField(self, self.h.basis_vector(k))

    # -- Cartan calculus ----------------------------------------------------

    def d(self, a: Form) -> AlgForm:
        if a.degree >= self.top:
            return self.form_class(self, a.degree + 1, {})
        return self.form(a.degree + 1, self.h.delta(a.terms, a.degree))

    def _wedge_terms(self, a: Form, b: Form) -> dict:
        out: dict = {}
        for I, c in a.terms.items():
            for J, e in b.terms.items():
                s, K = sort_sign(I + J)
                if s:
                    out[K] = out.get(K, 0) + s * c * e
        return out

    def contract(self, v: AlgVectorField, a: Form) -> AlgForm:
        if a.degree == 0:
            raise ValueError("cannot contract a vector field with a 0-form")
        out: dict = {}
        for I, c in a.terms.items():
            for r, k in enumerate(I):
                x = v.coeffs[k]
                if x:
                    rest = I[:r] + I[r + 1:]
                    out[rest] = out.get(rest, 0) + (-1 if r % 2 else 1) * x * c
        return self.form(a.degree - 1, out)

    def bracket(self, v: AlgVectorField, w: AlgVectorField) -> AlgVectorField:
        return AlgVectorField(self, self.h.bracket(v.coeffs, w.coeffs))

    def find_potential(self, a: Form) -> PotentialResult:
        if a.degree == 0:
            raise ValueError("0-forms have no potential")
        if not self.is_closed(a):
            raise ValueError("input form is not closed")
        ech = Echelon()
        for I in self.h.ce_basis(a.degree - 1):
            ech.add(I, self.h.delta({I: Fraction(1)}, a.degree - 1))
        sol = ech.express(a.terms)
        if sol is not None:
            return PotentialResult(self.form(a.degree - 1, sol))
        return PotentialResult(None, self.de_rham(a.degree).coordinates(a))

    def evaluate_at(self, a: Form, point=None) -> dict:
        return dict(a.terms)

    def de_rham(self, degree: int) -> InvariantDeRham:
        return InvariantDeRham(self, ce_cohomology(self.h, degree), degree)

    # -- solver support ------------------------------------------------------

    def stratum(self, key):
        return None

    def split_strata(self, a: Form) -> dict:
        return {None: dict(a.terms)} if a.terms else {}

    def stratum_keys(self, degree: int, stratum=None, max_degree: int | None = None) -> list:
        return self.h.ce_basis(degree)

    def coefficient_degree(self, a: Form) -> int:
        return 0 if a.terms else -1

    def form_str(self, a: Form) -> str:
        if not a.terms:
            return "0"
        parts = []
        for I in sorted(a.terms):
            c = a.terms[I]
            basis = "^".join(f"e{i + 1}" for i in I) or "1"
            parts.append(f"{c}*{basis}")
        return " + ".join(parts)
