"""Backend-independent pieces of the Cartan calculus.

A backend ("space") owns the concrete representation of forms and vector
fields.  Forms are :class:`Form` objects: a degree plus a sparse dict of
basis-term coefficients whose keys the backend defines.  The free functions
at the bottom dispatch to the form's backend.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from ..foundation import RationalMatrix


class Form:
    __slots__ = ("space", "degree", "terms", "overflow")

    def __init__(self, space, degree: int, terms=None, overflow: bool = False):
        self.space = space
        self.degree = degree
        self.terms = {k: Fraction(v) for k, v in (terms or {}).items() if v}
        self.overflow = overflow

    def _check(self, other: "Form"):
        if not isinstance(other, Form):
            raise TypeError(f"cannot combine a form with {type(other).__name__}")
        if other.space != self.space or other.degree != self.degree:
            raise ValueError(f"incompatible forms: degree {self.degree} vs {other.degree}")

    def __add__(self, other):
        if isinstance(other, int) and other == 0:
            return self
        self._check(other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            nv = out.get(k, 0) + v
            if nv:
                out[k] = nv
            else:
                out.pop(k, None)
        return type(self)(self.space, self.degree, out)

    __radd__ = __add__

    def __neg__(self):
        return type(self)(self.space, self.degree, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, s):
        if isinstance(s, Form):
            return self.space.wedge(self, s)
        s = Fraction(s)
        return type(self)(self.space, self.degree, {k: v * s for k, v in self.terms.items()} if s else {})

    __rmul__ = __mul__

    def __xor__(self, other):
        return self.space.wedge(self, other)

    def __eq__(self, other):
        if isinstance(other, int) and other == 0:
            return not self.terms
        return (isinstance(other, Form) and self.space == other.space
                and self.degree == other.degree and self.terms == other.terms)

    def __hash__(self):
        return hash((self.degree, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __repr__(self):
        return f"{type(self).__name__}({self.space.form_str(self)})"


@dataclass
class PotentialResult:
    """Outcome of a potential search.

    ``potential`` is set on success; otherwise ``obstruction`` holds the
    coordinates of the class of the input in the backend's cohomology.
    """
    potential: Form | None
    obstruction: list = field(default_factory=list)

    @property
    def found(self) -> bool:
        return self.potential is not None


@dataclass
class NondegeneracyVerdict:
    point: tuple
    rank: int
    nondegenerate: bool


class CartanBackend:
    """Interface shared by the euclidean and invariant models."""

    top: int  # dimension of the model; forms have degree 0..top
    kind: str

    form_class = Form

    def form(self, degree: int, terms=None) -> Form:
        if not 0 <= degree <= self.top:
            raise ValueError(f"form degree {degree} outside 0..{self.top}")
        return self.form_class(self, degree, terms)

    def zero(self, degree: int) -> Form:
        return self.form_class(self, degree, {})

    def lie_derivative(self, v, a: Form) -> Form:
        out = self.contract(v, self.d(a)) if a.degree < self.top else self.zero(a.degree)
        if a.degree >= 1:
            out = out + self.d(self.contract(v, a))
        return out

    def wedge(self, a: Form, b: Form) -> Form:
        if a.degree + b.degree > self.top:
            return self.form_class(self, self.top, {}, overflow=True)
        return self.form(a.degree + b.degree, self._wedge_terms(a, b))

    def is_closed(self, a: Form) -> bool:
        return a.degree == self.top or self.d(a).is_zero()

    def de_rham_dims(self, up_to: int | None = None) -> list:
        up_to = self.top if up_to is None else up_to
        return [self.de_rham(j).dim for j in range(up_to + 1)]

    def nondegeneracy_check(self, omega: Form, points=None) -> list:
        n = omega.degree - 1
        points = [None] if points is None else points
        verdicts = []
        for pt in points:
            rows = []
            for k in range(self.top):
                val = self.evaluate_at(self.contract(self.unit_field(k), omega), pt) if n >= 0 else {}
                rows.append(val)
            keys = sorted({I for r in rows for I in r})
            mat = RationalMatrix.from_rows([[r.get(I, 0) for I in keys] for r in rows], len(keys))
            rank = mat.rank() if keys else 0
            verdicts.append(NondegeneracyVerdict(tuple(pt) if pt is not None else (), rank, rank == self.top))
        return verdicts


# -- free-function surface -------------------------------------------------

def d(a: Form) -> Form:
    return a.space.d(a)


def wedge(a: Form, b: Form) -> Form:
    return a.space.wedge(a, b)


def contract(v, a: Form) -> Form:
    return a.space.contract(v, a)


def lie_derivative(v, a: Form) -> Form:
    return a.space.lie_derivative(v, a)


def find_potential(a: Form) -> PotentialResult:
    return a.space.find_potential(a)


def evaluate_at(a: Form, point=None) -> dict:
    return a.space.evaluate_at(a, point)


def de_rham_dims(space, up_to: int | None = None) -> list:
    return space.de_rham_dims(up_to)


def nondegeneracy_check(omega: Form, points=None) -> list:
    return omega.space.nondegeneracy_check(omega, points)
