"""The Lie n-algebra of observables of a pre-n-plectic model.

Degree 0 holds pairs ``(v, alpha)`` with ``d alpha = -i_v omega``; degree
``-i`` (``0 < i < n``) holds forms of degree ``n - 1 - i``.  Brackets:

* ``l1`` is ``d`` (landing in pairs ``(0, d alpha)`` from degree -1), zero on pairs;
* ``l2((v, a), (w, b)) = ([v, w], i_w i_v omega)``;
* ``lk = -(-1)^{k(k+1)/2} i_{v_k} ... i_{v_1} omega`` for ``3 <= k <= n + 1``;

and every ``lk`` with ``k > 1`` vanishes unless all arguments have degree 0.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .cartan import Form
from .foundation import koszul_sign, perm_sign, permute, unshuffles


class PairingError(ValueError):
    """Raised when ``d alpha + i_v omega`` is not zero; carries the residual form."""

    def __init__(self, residual: Form):
        super().__init__(f"d(alpha) + i_v(omega) = {residual!r} is not zero")
        self.residual = residual


class TrivialArityWarning(UserWarning):
    pass


@dataclass(frozen=True, eq=False)
class ObservablePair:
    v: object
    alpha: Form

    def __add__(self, other):
        if isinstance(other, int) and other == 0:
            return self
        return ObservablePair(self.v + other.v, self.alpha + other.alpha)

    __radd__ = __add__

    def __neg__(self):
        return ObservablePair(-self.v, -self.alpha)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, s):
        return ObservablePair(self.v * s, self.alpha * s)

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, ObservablePair) and self.v == other.v and self.alpha == other.alpha

    def __hash__(self):
        return hash((self.v, self.alpha))

    def is_zero(self) -> bool:
        return self.v.is_zero() and self.alpha.is_zero()

    def hamiltonian_form(self) -> Form:
        return self.alpha


def pairing_residual(v, alpha: Form, omega: Form) -> Form:
    return omega.space.d(alpha) + omega.space.contract(v, omega)


def make_observable(v, alpha: Form, omega: Form) -> ObservablePair:
    if alpha.degree != omega.degree - 2:
        raise ValueError(f"alpha must have degree {omega.degree - 2}, got {alpha.degree}")
    res = pairing_residual(v, alpha, omega)
    if not res.is_zero():
        raise PairingError(res)
    return ObservablePair(v, alpha)


class Observable:
    """Homogeneous element of L(M, omega); ``payload is None`` encodes zero."""

    __slots__ = ("degree", "payload")

    def __init__(self, degree: int, payload=None):
        if payload is not None and payload.is_zero():
            payload = None
        self.degree = degree
        self.payload = payload

    def is_zero(self) -> bool:
        return self.payload is None

    def __add__(self, other):
        if isinstance(other, int) and other == 0:
            return self
        if other.degree != self.degree:
            raise ValueError(f"cannot add observables of degree {self.degree} and {other.degree}")
        if self.payload is None:
            return other
        if other.payload is None:
            return self
        return Observable(self.degree, self.payload + other.payload)

    __radd__ = __add__

    def __mul__(self, s):
        if self.payload is None or not s:
            return Observable(self.degree)
        return Observable(self.degree, self.payload * s)

    __rmul__ = __mul__

    def __neg__(self):
        return self * -1

    def __eq__(self, other):
        if not isinstance(other, Observable) or other.degree != self.degree:
            return False
        if self.payload is None or other.payload is None:
            return self.payload is None and other.payload is None
        return self.payload == other.payload

    def __repr__(self):
        return f"Observable(degree={self.degree}, {self.payload!r})"


class BracketTable:
    """Brackets l_1 .. l_{n+1} for a fixed closed (n+1)-form."""

    def __init__(self, omega: Form):
        if omega.degree < 2:
            raise ValueError("omega must have degree n + 1 >= 2")
        if not omega.space.is_closed(omega):
            raise ValueError("omega is not closed")
        self.omega = omega
        self.space = omega.space
        self.n = omega.degree - 1

    # -- element constructors ------------------------------------------------

    def pair(self, v, alpha: Form) -> Observable:
        return Observable(0, make_observable(v, alpha, self.omega))

    def form_element(self, alpha: Form) -> Observable:
        deg = alpha.degree - (self.n - 1)
        if not -self.n + 1 <= deg < 0:
            raise ValueError(f"a {alpha.degree}-form is not a negative-degree observable for n={self.n}")
        return Observable(deg, alpha)

    # -- brackets --------------------------------------------------------------

    def l1(self, x: Observable) -> Observable:
        if x.degree == 0 or x.payload is None:
            return Observable(x.degree + 1)
        da = self.space.d(x.payload)
        if x.degree == -1:
            return Observable(0, ObservablePair(self.space.zero_field(), da))
        return Observable(x.degree + 1, da)

    def l2(self, x: ObservablePair, y: ObservablePair) -> ObservablePair:
        if not isinstance(x, ObservablePair) or not isinstance(y, ObservablePair):
            raise TypeError("l2 is defined on degree-0 pairs only")
        sp = self.space
        return ObservablePair(sp.bracket(x.v, y.v), sp.contract(y.v, sp.contract(x.v, self.omega)))

    def lk(self, *pairs: ObservablePair) -> Form:
        k = len(pairs)
        if not 3 <= k <= self.n + 1:
            raise ValueError(f"l_{k} is only defined for 3 <= k <= n + 1 = {self.n + 1}")
        form = self.omega
        for p in pairs:
            form = self.space.contract(p.v, form)
        sign = -1 if (k * (k + 1) // 2) % 2 == 0 else 1
        return form * sign

    def bracket(self, *xs: Observable) -> Observable:
        """Graded, grounded evaluation of l_k on homogeneous elements."""
        k = len(xs)
        if k == 1:
            return self.l1(xs[0])
        deg = sum(x.degree for x in xs) + 2 - k
        if k > self.n + 1 or any(x.degree != 0 or x.payload is None for x in xs):
            return Observable(deg)
        if k == 2:
            return Observable(0, self.l2(xs[0].payload, xs[1].payload))
        return Observable(deg, self.lk(*(x.payload for x in xs)))

    def linfty_identity_residual(self, xs: Sequence[Observable]) -> Observable:
        """Left-hand side of the generalized Jacobi identity of arity len(xs)."""
        N = len(xs)
        if N > self.n + 2:
            warnings.warn(f"arity {N} exceeds n + 2 = {self.n + 2}; the identity holds trivially",
                          TrivialArityWarning, stacklevel=2)
        degrees = [x.degree for x in xs]
        total = Observable(sum(degrees) + 3 - N)
        for i in range(1, N + 1):
            j = N + 1 - i
            outer = -1 if (i * (j + 1)) % 2 else 1
            for sigma in unshuffles(i, N - i):
                sign = outer * perm_sign(sigma) * koszul_sign(sigma, degrees)
                ys = permute(xs, sigma)
                inner = self.bracket(*ys[:i])
                term = self.bracket(inner, *ys[i:])
                if not term.is_zero():
                    total = total + term * sign
        return total


def bracket_l1(table: BracketTable, x: Observable) -> Observable:
    return table.l1(x)


def bracket_l2(table: BracketTable, x: ObservablePair, y: ObservablePair) -> ObservablePair:
    return table.l2(x, y)


def bracket_lk(table: BracketTable, *pairs: ObservablePair) -> Form:
    return table.lk(*pairs)


def linfty_identity_residual(table: BracketTable, *xs: Observable) -> Observable:
    return table.linfty_identity_residual(xs)
