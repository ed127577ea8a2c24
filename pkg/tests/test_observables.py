import warnings
from fractions import Fraction

import pytest

from comoment.cartan import EuclideanSpace, InvariantModel
from comoment.cartan import polynomial as poly
from comoment.catalogue import rotation_fields
from comoment.liealg import cartan_three_cocycle, so3
from comoment.observables import (
    BracketTable, Observable, ObservablePair, PairingError, TrivialArityWarning, bracket_l1,
    bracket_l2, bracket_lk, linfty_identity_residual, make_observable, pairing_residual,
)

from helpers import eval_field, eval_form, random_form, seeded, top_form_pair


def plane():
    E = EuclideanSpace(2)
    return E, E.dx(0, 1)


def y_fn(E):
    return E.coordinate(1)


# -- make_observable ----------------------------------------------------------------

def test_make_observable_examples():
    E, omega = plane()
    p = make_observable(E.unit_field(0), -y_fn(E), omega)
    assert p.v == E.unit_field(0)
    # zero field with a closed form
    make_observable(E.zero_field(), E.constant(7), omega)
    with pytest.raises(PairingError) as err:
        make_observable(E.unit_field(0), y_fn(E), omega)
    assert err.value.residual == 2 * E.dx(1)


def test_make_observable_degree_check():
    E, omega = plane()
    with pytest.raises(ValueError):
        make_observable(E.unit_field(0), E.dx(0), omega)


def test_pairing_residual_zero_for_valid_pair():
    E, omega = plane()
    assert pairing_residual(E.unit_field(1), E.coordinate(0), omega).is_zero()


# -- brackets --------------------------------------------------------------------------

def test_l1_examples():
    E = EuclideanSpace(3)
    T = BracketTable(E.dx(0, 1, 2))
    rng = seeded(1)
    v, a = top_form_pair(rng, T.omega, 1)
    assert bracket_l1(T, Observable(0, make_observable(v, a, T.omega))).is_zero()
    out = bracket_l1(T, T.form_element(E.coordinate(0)))
    assert out.degree == 0
    assert out.payload == ObservablePair(E.zero_field(), E.dx(0))
    E4 = EuclideanSpace(4)
    T4 = BracketTable(E4.dx(0, 1, 2, 3))
    f = T4.form_element(E4.coordinate(2))
    assert f.degree == -2
    assert bracket_l1(T4, f) == Observable(-1, E4.dx(2))


def test_l2_examples():
    E, omega = plane()
    T = BracketTable(omega)
    x = make_observable(E.unit_field(0), -y_fn(E), omega)
    y = make_observable(E.unit_field(1), E.coordinate(0), omega)
    out = bracket_l2(T, x, y)
    assert out.v.is_zero()
    assert out.alpha == E.constant(1)
    same = bracket_l2(T, x, x)
    assert same.is_zero()


def test_l2_rotation_fields():
    E = EuclideanSpace(3)
    omega = E.dx(0, 1, 2)
    T = BracketTable(omega)
    z1, z2, z3 = rotation_fields(E)
    # Hamiltonian 1-forms for the rotations: i_zeta vol is exact
    a1 = -E.homotopy(E.contract(z1, omega))
    a2 = -E.homotopy(E.contract(z2, omega))
    out = bracket_l2(T, make_observable(z1, a1, omega), make_observable(z2, a2, omega))
    assert out.v == z3
    make_observable(out.v, out.alpha, omega)


def test_l2_rejects_non_pairs():
    E, omega = plane()
    T = BracketTable(omega)
    with pytest.raises(TypeError):
        T.l2(E.dx(0), E.dx(1))


def test_l3_example():
    E = EuclideanSpace(3)
    omega = E.dx(0, 1, 2)
    T = BracketTable(omega)
    pairs = [ObservablePair(E.unit_field(k), E.zero(1)) for k in range(3)]
    assert bracket_lk(T, *pairs) == E.constant(-1)
    rep = [pairs[0], pairs[0], pairs[1]]
    assert bracket_lk(T, *rep).is_zero()
    with pytest.raises(ValueError):
        bracket_lk(T, *(pairs + pairs[:1]))
    with pytest.raises(ValueError):
        bracket_lk(T, *pairs[:2])


def test_lk_sign_table():
    # -(-1)^{k(k+1)/2} for k = 3, 4, 5 on the unit cube form
    for m, want in ((3, -1), (4, -1), (5, 1)):
        E = EuclideanSpace(m)
        T = BracketTable(E.dx(*range(m)))
        pairs = [ObservablePair(E.unit_field(k), E.zero(m - 2)) for k in range(m)]
        # i_{e_1} peels dx_1 off the front first, so the full contraction is +1
        assert bracket_lk(T, *pairs) == E.constant(want)


def test_table_requires_closed_form():
    E = EuclideanSpace(3)
    with pytest.raises(ValueError):
        BracketTable(E.polyform(2, {((0, 1), (0, 0, 1)): 1}))
    with pytest.raises(ValueError):
        BracketTable(E.dx(0))


# -- groundedness and the L-infinity identities --------------------------------------------

def test_grounded():
    E = EuclideanSpace(3)
    T = BracketTable(E.dx(0, 1, 2))
    rng = seeded(2)
    v, a = top_form_pair(rng, T.omega, 1)
    x = Observable(0, make_observable(v, a, T.omega))
    f = T.form_element(E.coordinate(0) + E.constant(2))
    assert T.bracket(x, f).is_zero()
    assert T.bracket(f, f).is_zero()
    assert T.bracket(x, x, f).is_zero()


def pick_elements(rng, T, count):
    """Random homogeneous elements: mostly degree 0 pairs, sometimes forms."""
    out = []
    for _ in range(count):
        deg = rng.choice([0, 0, 0] + list(range(-T.n + 1, 0)))
        if deg == 0:
            v, a = top_form_pair(rng, T.omega, T.n - 1)
            out.append(Observable(0, make_observable(v, a, T.omega)))
        else:
            out.append(T.form_element(random_form(rng, T.space, T.n - 1 + deg)))
    return out


def top_models():
    out = []
    for m in (2, 3, 4):
        E = EuclideanSpace(m)
        out.append(BracketTable(E.dx(*range(m))))
    M = InvariantModel(so3())
    out.append(BracketTable(M.algform(3, cartan_three_cocycle(so3()))))
    return out


@pytest.mark.parametrize("T", top_models(), ids=["R2", "R3", "R4", "so3"])
def test_linfty_identities_random(T):
    rng = seeded(40 + T.space.top)
    for arity in range(1, T.n + 3):
        for _ in range(12):
            xs = pick_elements(rng, T, arity)
            assert linfty_identity_residual(T, *xs).is_zero()


def test_arity_one_and_two_examples():
    E = EuclideanSpace(3)
    T = BracketTable(E.dx(0, 1, 2))
    f = T.form_element(E.function({(1, 1, 0): 1}))
    assert linfty_identity_residual(T, f).is_zero()
    rng = seeded(3)
    v, a = top_form_pair(rng, T.omega, 1)
    x = Observable(0, make_observable(v, a, T.omega))
    assert linfty_identity_residual(T, x, f).is_zero()


def test_arity_three_jacobiator_is_compensated():
    # on the volume of R^3 the Jacobiator of l2 is nonzero; l1 l3 cancels it
    E = EuclideanSpace(3)
    omega = E.dx(0, 1, 2)
    T = BracketTable(omega)
    v1 = E.field([{}, poly.variable(3, 0), {}])  # x d/dy
    pairs = []
    for v in (v1, E.unit_field(2), E.unit_field(0)):
        alpha = -E.homotopy(E.contract(v, omega))
        pairs.append(Observable(0, make_observable(v, alpha, omega)))
    jac = Observable(0)
    for a, b, c in ((0, 1, 2), (1, 2, 0), (2, 0, 1)):
        inner = T.bracket(pairs[a], pairs[b])
        jac = jac + T.bracket(inner, pairs[c])
    assert not jac.is_zero()
    assert linfty_identity_residual(T, *pairs).is_zero()


def test_trivial_arity_warns():
    E, omega = plane()
    T = BracketTable(omega)
    x = Observable(0, make_observable(E.unit_field(0), -y_fn(E), omega))
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        res = linfty_identity_residual(T, x, x, x, x)
    assert res.is_zero()
    assert any(issubclass(w.category, TrivialArityWarning) for w in caught)


def test_l2_output_is_observable():
    for T in top_models():
        rng = seeded(77 + T.space.top)
        for _ in range(20):
            (x, y) = [e.payload for e in pick_elements_pairs(rng, T, 2)]
            out = T.l2(x, y)
            make_observable(out.v, out.alpha, T.omega)


def pick_elements_pairs(rng, T, count):
    out = []
    for _ in range(count):
        v, a = top_form_pair(rng, T.omega, T.n - 1)
        out.append(Observable(0, make_observable(v, a, T.omega)))
    return out


def test_l3_matches_pointwise_evaluation():
    E = EuclideanSpace(3)
    omega = E.polyform(3, {((0, 1, 2), (0, 0, 0)): 2})
    T = BracketTable(omega)
    rng = seeded(9)
    pairs = [p.payload for p in pick_elements_pairs(rng, T, 3)]
    pt = (Fraction(1, 2), -1, 2)
    vals = [eval_field(p.v, pt) for p in pairs]
    # l3 = -(-1)^6 omega(v1, v2, v3)
    want = -eval_form(omega, pt, vals)
    assert eval_form(T.lk(*pairs), pt, []) == want


def test_observable_arithmetic():
    E, omega = plane()
    assert Observable(0).is_zero()
    assert Observable(-1, E.zero(0)).is_zero()
    with pytest.raises(ValueError):
        Observable(0, ObservablePair(E.unit_field(0), -y_fn(E))) + Observable(-1, E.constant(1))
    x = Observable(0, ObservablePair(E.unit_field(0), -y_fn(E)))
    assert (x + (-x)).is_zero()
    assert 2 * x == x + x
