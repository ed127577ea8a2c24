from fractions import Fraction

import pytest

from comoment import catalogue as cat
from comoment.applications import (
    MultiMomentMap, PotentialError, StaircaseFailure, WeakComoment, covariant_momentum,
    covariant_obstruction, exact_comoment, iterate_full_comoment, multimoment_construct,
    multimoment_verify, universal_momentum_report, weak_comoment,
)
from comoment.cartan import EuclideanSpace, InvariantModel
from comoment.cartan import polynomial as poly
from comoment.liealg import P_g, abelian, ce_cohomology, so3
from comoment.moment import (
    InfinitesimalAction, build_g, decompose_obstruction, gauge_check, solve_comoment,
    validate_action, verify_morphism, zero_action,
)

from helpers import eval_field, eval_form, rand_q, random_commuting_action, seeded

SOLVABLE = ["so3_r3_volume", "rotation_translation_r3", "aff1_r3", "rotations_r4"]


def problem(name, *args):
    return cat.CATALOGUE[name](*args)


# -- weak co-moments --------------------------------------------------------------------

def test_weak_translations_r2():
    P = problem("translations_r2")
    j = weak_comoment(P.action, P.omega)
    assert isinstance(j, WeakComoment)
    E = P.space
    assert j.forms[0] == -E.coordinate(1)
    assert j.residuals() == []


def test_weak_so3_e3():
    P = problem("so3_r3_volume")
    E = P.space
    j = weak_comoment(P.action, P.omega)
    assert E.d(j.forms[2]) == -E.contract(P.action.images[2], P.omega)
    assert j.forms[2] == -E.homotopy(E.contract(P.action.images[2], P.omega))


def test_weak_invariant_so3():
    P = problem("cartan_so3")
    j = weak_comoment(P.action, P.omega)
    assert j.exists
    assert j.residuals() == []


def test_weak_obstructed_heisenberg():
    # g_1(e_3) = i_{e3}(eps^12) = 0 but i_{e1} eps^12 = eps^2 is closed and not exact
    P = problem("heisenberg_invariant")
    j = weak_comoment(P.action, P.omega)
    assert not j.exists
    assert any(any(row) for row in j.classes)


@pytest.mark.parametrize("name", sorted(set(cat.CATALOGUE) - {"heisenberg_invariant"}))
def test_weak_residuals_vanish(name):
    P = problem(name)
    j = weak_comoment(P.action, P.omega)
    assert j.exists
    sp = P.space
    for v, f in zip(P.action.images, j.forms):
        assert sp.d(f) + sp.contract(v, P.omega) == 0


def test_weak_is_linear():
    P = problem("so3_r3_volume")
    j = weak_comoment(P.action, P.omega)
    assert j([1, 2, 0]) == j.forms[0] + 2 * j.forms[1]


# -- exact case --------------------------------------------------------------------------

def test_exact_so3():
    P = problem("so3_r3_exact")
    F = exact_comoment(P.action, P.eta, P.omega)
    assert verify_morphism(F).ok
    E = P.space
    # f_1(X) = (zeta X, i_{zeta X} eta), f_2 = (+1) i i eta
    for i in range(3):
        assert F.f1(i).alpha == E.contract(P.action.images[i], P.eta)
    G = solve_comoment(P.action, P.omega)
    assert gauge_check(F, G).ok


def test_exact_f2_pointwise():
    P = problem("so3_r3_exact")
    F = exact_comoment(P.action, P.eta)
    E = P.space
    rng = seeded(4)
    for _ in range(5):
        pt = [rand_q(rng) for _ in range(3)]
        for I in [(0, 1), (0, 2), (1, 2)]:
            vs = [eval_field(P.action.images[i], pt) for i in I]
            # (-1)^2 (-1)^3 eta(zeta X1, zeta X2)
            assert eval_form(F.f(2)[I], pt, []) == -eval_form(P.eta, pt, vs)


def test_exact_rejects_non_invariant():
    P = problem("so3_r3_volume")
    E = P.space
    eta = E.polyform(2, {((1, 2), (1, 0, 0)): 1})  # x dy^dz
    assert E.d(eta) == P.omega
    with pytest.raises(PotentialError) as err:
        exact_comoment(P.action, eta, P.omega)
    assert err.value.generator in (1, 2)
    assert not err.value.residual.is_zero()


def test_exact_rejects_non_potential():
    P = problem("so3_r3_exact")
    with pytest.raises(PotentialError):
        exact_comoment(P.action, P.eta * 2, P.omega)


def test_exact_zero_action():
    E = EuclideanSpace(3)
    eta = E.polyform(2, {((1, 2), (1, 0, 0)): 1})
    F = exact_comoment(zero_action(so3(), E), eta)
    assert all(F.f1(i).is_zero() for i in range(3))
    assert F.f(2).is_zero()


def test_universal_report():
    P = problem("so3_r3_exact")
    E = P.space
    F = exact_comoment(P.action, P.eta)
    entries = universal_momentum_report(P.eta, P.action.images, F)
    assert all(e.invariant and e.matches for e in entries)
    assert entries[2].J == E.contract(P.action.images[2], P.eta)
    stretch = E.linear_field([[1, 0, 0], [0, 0, 0], [0, 0, 0]])
    (e,) = universal_momentum_report(P.eta, [stretch])
    assert not e.invariant and e.matches is None
    (z,) = universal_momentum_report(P.eta, [E.zero_field()])
    assert z.J.is_zero() and z.invariant


# -- covariant momentum ----------------------------------------------------------------

@pytest.mark.parametrize("name", SOLVABLE + ["so3_r3_exact"])
def test_covariant_momentum_sign(name):
    # J := -pi_Omega f_1 satisfies d J(X) = +i_{zeta X} omega
    P = problem(name)
    F = solve_comoment(P.action, P.omega)
    sp = P.space
    for i, J in enumerate(covariant_momentum(F)):
        assert sp.d(J) == sp.contract(P.action.images[i], P.omega)
        assert sp.d(F.f1(i).alpha) == -sp.d(J)


def test_covariant_translations_r2():
    P = problem("translations_r2")
    j = weak_comoment(P.action, P.omega)
    cov = covariant_obstruction(P.action, P.omega, j)
    assert cov.c[(0, 1)] == P.space.constant(1)
    assert not cov.exists
    h2 = decompose_obstruction(build_g(P.action, P.omega)).entry(2).matrix
    assert cov.h2 == h2


def test_covariant_euclidean_higher_n():
    for name in ("so3_r3_volume", "translations_r3", "rotations_r4"):
        P = problem(name)
        cov = covariant_obstruction(P.action, P.omega, weak_comoment(P.action, P.omega))
        assert cov.exists


def test_covariant_cartan():
    P = problem("cartan_so3")
    cov = covariant_obstruction(P.action, P.omega, weak_comoment(P.action, P.omega))
    assert cov.exists
    assert ce_cohomology(so3(), 2).dim == 0


def test_weak_obstruction_matches_h1():
    # abelian-2 on its own invariant model with eps^1 ^ eps^2, n = 1: [g_1] lives in g* (x) H^1
    L = abelian(2)
    M = InvariantModel(L)
    act = InfinitesimalAction(L, M, [M.unit_field(0), M.unit_field(1)])
    omega = M.eps(0, 1)
    j = weak_comoment(act, omega)
    assert not j.exists  # i_{e1} omega = eps^2 is closed, not exact
    h = decompose_obstruction(build_g(act, omega))
    assert h.entry(1).zero is False


# -- multi-moment maps -------------------------------------------------------------------

def test_multimoment_abelian_example():
    P = problem("rotation_translation_r3")
    E = P.space
    vbar = multimoment_construct(P.action, P.omega)
    assert isinstance(vbar, MultiMomentMap)
    assert vbar.basis == P_g(P.algebra, 2) == [{(0, 1): 1}]
    want = E.function({(2, 0, 0): Fraction(-1, 2), (0, 2, 0): Fraction(-1, 2)})
    assert vbar.values == [want]
    assert vbar({(0, 1): 2}) == 2 * want
    assert multimoment_verify(vbar).ok


def test_multimoment_condition_i_by_hand():
    # i_{zeta e2} i_{zeta e1} vol = -x dx - y dy
    P = problem("rotation_translation_r3")
    E = P.space
    contracted = E.contract(P.action.images[1], E.contract(P.action.images[0], P.omega))
    assert contracted == E.polyform(1, {((0,), (1, 0, 0)): -1, ((1,), (0, 1, 0)): -1})
    vbar = multimoment_construct(P.action, P.omega)
    assert E.d(vbar.values[0]) == contracted


def test_multimoment_perturbations():
    P = problem("rotation_translation_r3")
    E = P.space
    vbar = multimoment_construct(P.action, P.omega)
    bumped = MultiMomentMap(vbar.action, vbar.omega, vbar.n, vbar.basis, [vbar.values[0] + E.coordinate(2)])
    rep = multimoment_verify(bumped)
    assert rep.condition_i and not rep.ok
    shifted = MultiMomentMap(vbar.action, vbar.omega, vbar.n, vbar.basis, [vbar.values[0] + E.constant(5)])
    assert multimoment_verify(shifted).ok


def test_multimoment_so3_vacuous():
    P = problem("so3_r3_volume")
    vbar = multimoment_construct(P.action, P.omega)
    assert vbar.exists and vbar.basis == [] and vbar.values == []
    assert vbar.f_n is not None
    assert multimoment_verify(vbar).ok


def test_multimoment_translations_r3_fails():
    P = problem("translations_r3")
    res = multimoment_construct(P.action, P.omega)
    assert isinstance(res, StaircaseFailure)
    assert res.k == 3
    h3 = decompose_obstruction(build_g(P.action, P.omega)).entry(3).matrix
    assert res.classes == h3 and any(any(r) for r in h3)


@pytest.mark.parametrize("a,t", [(1, 1), (2, -1), (Fraction(1, 2), 3), (-3, Fraction(2, 3))])
def test_multimoment_aff1(a, t):
    P = problem("aff1_r3", a, t)
    L = P.algebra
    # H^2 = 0 and H^3 vanishes for dimension reasons
    assert ce_cohomology(L, 2).dim == 0 and L.dim == 2
    vbar = multimoment_construct(P.action, P.omega)
    assert vbar.exists
    assert multimoment_verify(vbar).ok


def test_multimoment_aff1_random():
    rng = seeded(10)
    for _ in range(10):
        a = rand_q(rng) or Fraction(1)
        t = rand_q(rng) or Fraction(1)
        P = problem("aff1_r3", a, t)
        vbar = multimoment_construct(P.action, P.omega)
        assert vbar.exists and multimoment_verify(vbar).ok


def test_multimoment_rotations_r4():
    P = problem("rotations_r4")
    vbar = multimoment_construct(P.action, P.omega)
    # n = 3 > dim g = 2, so P_g is zero
    assert vbar.exists and vbar.basis == []


def test_multimoment_n1_plane():
    # n = 1: P_g = ker of delta* on g itself; abelian-1 rotation of the plane
    L = abelian(1)
    E = EuclideanSpace(2)
    rot = E.linear_field([[0, -1], [1, 0]])
    act = InfinitesimalAction(L, E, [rot])
    vbar = multimoment_construct(act, E.dx(0, 1))
    assert vbar.exists and vbar.basis == [{(0,): 1}]
    assert multimoment_verify(vbar).ok
    assert E.d(vbar.values[0]) == E.contract(rot, E.dx(0, 1))


# -- iterate -------------------------------------------------------------------------------

@pytest.mark.parametrize("name", SOLVABLE)
def test_iterate_success(name):
    P = problem(name)
    F = iterate_full_comoment(P.action, P.omega)
    assert verify_morphism(F).ok
    G = solve_comoment(P.action, P.omega)
    assert gauge_check(F, G).ok


def test_iterate_cartan_fails_at_3():
    P = problem("cartan_so3")
    res = iterate_full_comoment(P.action, P.omega)
    assert isinstance(res, StaircaseFailure) and res.k == 3


@pytest.mark.parametrize("name,k", [("translations_r2", 2), ("translations_r3", 3), ("translations_r4", 4),
                                    ("heisenberg_invariant", 1)])
def test_iterate_failures(name, k):
    P = problem(name)
    res = iterate_full_comoment(P.action, P.omega)
    assert not res.exists and res.k == k


def test_iterate_zero_action():
    E = EuclideanSpace(3)
    act = zero_action(so3(), E)
    F = iterate_full_comoment(act, E.dx(0, 1, 2))
    assert F.potential.is_zero()


def test_iterate_random_actions():
    rng = seeded(12)
    for _ in range(6):
        action, omega = random_commuting_action(rng, 3, 2)
        res = iterate_full_comoment(action, omega)
        sol = solve_comoment(action, omega)
        assert res.exists == sol.exists
        if res.exists:
            assert gauge_check(res, sol).ok


def test_noncommuting_fields_rejected():
    # [d/dx, x^2 d/dy] = 2x d/dy, so this is not an action of the abelian algebra
    E = EuclideanSpace(2)
    act = InfinitesimalAction(abelian(2), E, [E.unit_field(0), E.field([{}, poly.monomial((2, 0))])])
    rep = validate_action(act, E.dx(0, 1))
    assert not rep.ok and not rep.lie_residuals
    (i, j, res), = rep.bracket_residuals
    assert res == E.field([{}, poly.monomial((1, 0), 2)])
