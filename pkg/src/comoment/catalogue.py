"""Ready-made problems used by the demos, the CLI fixtures and the tests."""

from __future__ import annotations

from fractions import Fraction

from .cartan import EuclideanSpace, InvariantModel
from .cartan import polynomial as poly
from .liealg import LieAlgebra, abelian, aff1, cartan_three_cocycle, so3
from .moment import InfinitesimalAction
from .problem import Problem


def _var(m, k, c=1):
    return poly.scale(poly.variable(m, k), Fraction(c))


def rotation_fields(E: EuclideanSpace) -> list:
    """zeta(e1) = z d/dy - y d/dz, zeta(e2) = x d/dz - z d/dx, zeta(e3) = y d/dx - x d/dy."""
    x, y, z = (_var(3, k) for k in range(3))
    neg = lambda p: poly.scale(p, -1)  # noqa: E731
    return [E.field([{}, z, neg(y)]), E.field([neg(z), {}, x]), E.field([y, neg(x), {}])]


def so3_r3_volume(base_point=None) -> Problem:
    E = EuclideanSpace(3, tuple(base_point) if base_point else ())
    L = so3()
    return Problem(L, E, 2, E.dx(0, 1, 2), InfinitesimalAction(L, E, rotation_fields(E)),
                   name="so3_r3_volume")


def so3_invariant_eta() -> Problem:
    """The rotation problem together with eta = (x dy^dz + y dz^dx + z dx^dy)/3."""
    P = so3_r3_volume()
    E = P.space
    eta = E.polyform(2, {((1, 2), (1, 0, 0)): 1, ((0, 2), (0, 1, 0)): -1, ((0, 1), (0, 0, 1)): 1}) * Fraction(1, 3)
    P.eta = eta
    P.name = "so3_r3_exact"
    return P


def translations_r2() -> Problem:
    E = EuclideanSpace(2)
    L = abelian(2)
    return Problem(L, E, 1, E.dx(0, 1), InfinitesimalAction(L, E, [E.unit_field(0), E.unit_field(1)]),
                   name="translations_r2")


def translations_r3() -> Problem:
    E = EuclideanSpace(3)
    L = abelian(3)
    return Problem(L, E, 2, E.dx(0, 1, 2), InfinitesimalAction(L, E, [E.unit_field(k) for k in range(3)]),
                   name="translations_r3")


def rotation_translation_r3() -> Problem:
    """Abelian span(e1, e2) acting by d/dz and x d/dy - y d/dx on (R^3, vol)."""
    E = EuclideanSpace(3)
    L = abelian(2)
    x, y = _var(3, 0), _var(3, 1)
    rot = E.field([poly.scale(y, -1), x, {}])
    return Problem(L, E, 2, E.dx(0, 1, 2), InfinitesimalAction(L, E, [E.unit_field(2), rot]),
                   name="rotation_translation_r3")


def cartan_so3() -> Problem:
    """so(3) acting on its own invariant model by zeta = id, omega = omega_e."""
    L = so3()
    M = InvariantModel(so3())
    omega = M.algform(3, cartan_three_cocycle(L))
    return Problem(L, M, 2, omega, InfinitesimalAction(L, M, [M.unit_field(i) for i in range(3)]),
                   name="cartan_so3")


def aff1_r3(a=1, t=1) -> Problem:
    """aff(1) by zeta(e1) = diag(a, a+1, -2a-1) x and zeta(e2) = t y d/dx; traceless, so vol is preserved."""
    a, t = Fraction(a), Fraction(t)
    E = EuclideanSpace(3)
    L = aff1()
    e1 = E.linear_field([[a, 0, 0], [0, a + 1, 0], [0, 0, -2 * a - 1]])
    e2 = E.field([_var(3, 1, t), {}, {}])
    return Problem(L, E, 2, E.dx(0, 1, 2), InfinitesimalAction(L, E, [e1, e2]), name="aff1_r3")


def translations_r4() -> Problem:
    """Translations of R^4 with the 3-plectic volume form (n = 3)."""
    E = EuclideanSpace(4)
    L = abelian(4)
    return Problem(L, E, 3, E.dx(0, 1, 2, 3), InfinitesimalAction(L, E, [E.unit_field(k) for k in range(4)]),
                   name="translations_r4")


def rotations_r4() -> Problem:
    """Two commuting rotations of R^4 (in the x1x2 and x3x4 planes) with vol, n = 3."""
    E = EuclideanSpace(4)
    L = abelian(2)
    r12 = E.linear_field([[0, -1, 0, 0], [1, 0, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0]])
    r34 = E.linear_field([[0, 0, 0, 0], [0, 0, 0, 0], [0, 0, 0, -1], [0, 0, 1, 0]])
    return Problem(L, E, 3, E.dx(0, 1, 2, 3), InfinitesimalAction(L, E, [r12, r34]), name="rotations_r4")


def heisenberg_invariant() -> Problem:
    """Heisenberg algebra ([e1, e2] = e3) on its own invariant model, omega = eps^1^eps^2, n = 1."""
    H = LieAlgebra.from_records(3, [(1, 2, 3, 1)], name="heis3")
    M = InvariantModel(H)
    omega = M.eps(0, 1)
    return Problem(H, M, 1, omega, InfinitesimalAction(H, M, [M.unit_field(i) for i in range(3)]),
                   name="heisenberg_invariant")


CATALOGUE = {
    "so3_r3_volume": so3_r3_volume,
    "so3_r3_exact": so3_invariant_eta,
    "translations_r2": translations_r2,
    "translations_r3": translations_r3,
    "rotation_translation_r3": rotation_translation_r3,
    "cartan_so3": cartan_so3,
    "aff1_r3": aff1_r3,
    "translations_r4": translations_r4,
    "rotations_r4": rotations_r4,
    "heisenberg_invariant": heisenberg_invariant,
}
